//! Canonical forms of configurations, used to compare normal forms up to
//! renaming of names, equation order and equation orientation.
//!
//! Names are numbered in traversal order: the interface left to right, then
//! the equations one at a time. At every step the equation (in either
//! orientation) with the smallest key under the current numbering is taken
//! next; agents sort before names, numbered names before unnumbered ones.
//! When several candidates tie and still contain unnumbered names, every
//! choice is explored and the smallest complete result wins, up to a fixed
//! exploration budget.

use std::collections::HashMap;
use std::fmt;

use crate::name::Name;
use crate::term::{checked_occurrences, Configuration, Equation, OccurrenceViolation, Term};

const BRANCH_BUDGET: usize = 2048;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Tok<'a> {
    Agent(&'a str, usize),
    Bound(u32),
    Open(u32),
    Sep,
}

/// A configuration with names renumbered `0..` and equations oriented and
/// ordered canonically. Structural equality is equality up to renaming.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalConfiguration(Configuration);

impl CanonicalConfiguration {
    pub fn as_configuration(&self) -> &Configuration {
        &self.0
    }

    pub fn into_configuration(self) -> Configuration {
        self.0
    }
}

impl fmt::Display for CanonicalConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render_configuration(&self.0))
    }
}

/// Canonical form of a well-formed configuration.
pub fn canonicalize(config: &Configuration) -> Result<CanonicalConfiguration, OccurrenceViolation> {
    checked_occurrences(config)?;
    Ok(canonicalize_unchecked(config))
}

/// Canonical form without the occurrence check. Useful for comparing
/// equation multisets that are fragments of a larger net.
pub fn canonicalize_unchecked(config: &Configuration) -> CanonicalConfiguration {
    let mut assigned: HashMap<u64, u32> = HashMap::new();
    let mut next = 0u32;
    for t in &config.interface {
        t.for_each_name(&mut |n| {
            assigned.entry(n.id()).or_insert_with(|| {
                next += 1;
                next - 1
            });
        });
    }
    let start = State {
        assigned,
        next,
        order: Vec::new(),
        remaining: (0..config.equations.len()).collect(),
    };
    let mut search = Search {
        equations: &config.equations,
        budget: BRANCH_BUDGET,
    };
    let (_, done) = search.explore(start);

    let rename = |t: &Term| rename_term(t, &done.assigned);
    let interface = config.interface.iter().map(rename).collect();
    let equations = done
        .order
        .iter()
        .map(|&(i, flip)| {
            let eq = &config.equations[i];
            let (l, r) = if flip {
                (&eq.right, &eq.left)
            } else {
                (&eq.left, &eq.right)
            };
            Equation::new(rename(l), rename(r))
        })
        .collect();
    CanonicalConfiguration(Configuration::new(interface, equations))
}

/// Canonical form of an equation multiset in which `pinned` names keep their
/// identity (numbered first, in the given order) and all other names are
/// compared up to renaming.
pub fn canonical_equations(pinned: &[Name], equations: &[Equation]) -> CanonicalConfiguration {
    let config = Configuration::new(pinned.iter().cloned().map(Term::Name).collect(), equations.to_vec());
    canonicalize_unchecked(&config)
}

fn rename_term(t: &Term, assigned: &HashMap<u64, u32>) -> Term {
    match t {
        Term::Name(n) => {
            let k = assigned[&n.id()];
            Term::Name(Name::new(u64::from(k), format!("v{k}")))
        }
        Term::Agent(s, args) => Term::Agent(s.clone(), args.iter().map(|a| rename_term(a, assigned)).collect()),
    }
}

#[derive(Clone)]
struct State {
    assigned: HashMap<u64, u32>,
    next: u32,
    order: Vec<(usize, bool)>,
    remaining: Vec<usize>,
}

impl State {
    fn take(&mut self, equations: &[Equation], pos: usize, flip: bool) {
        let i = self.remaining.remove(pos);
        let eq = &equations[i];
        let (l, r) = if flip {
            (&eq.right, &eq.left)
        } else {
            (&eq.left, &eq.right)
        };
        for side in [l, r] {
            side.for_each_name(&mut |n| {
                if !self.assigned.contains_key(&n.id()) {
                    self.assigned.insert(n.id(), self.next);
                    self.next += 1;
                }
            });
        }
        self.order.push((i, flip));
    }
}

struct Search<'c> {
    equations: &'c [Equation],
    budget: usize,
}

impl<'c> Search<'c> {
    fn explore(&mut self, mut st: State) -> (Vec<Tok<'c>>, State) {
        loop {
            if st.remaining.is_empty() {
                return (self.leaf_key(&st), st);
            }
            let mut best: Option<Vec<Tok<'c>>> = None;
            let mut ties: Vec<(usize, bool)> = Vec::new();
            for pos in 0..st.remaining.len() {
                let eq = &self.equations[st.remaining[pos]];
                for flip in [false, true] {
                    let key = equation_key(eq, flip, &st.assigned);
                    match &best {
                        Some(b) if key > *b => {}
                        Some(b) if key == *b => ties.push((pos, flip)),
                        _ => {
                            best = Some(key);
                            ties.clear();
                            ties.push((pos, flip));
                        }
                    }
                }
            }
            let open = best
                .as_ref()
                .is_some_and(|k| k.iter().any(|t| matches!(t, Tok::Open(_))));
            if ties.len() == 1 || !open || self.budget == 0 {
                let (pos, flip) = ties[0];
                st.take(self.equations, pos, flip);
                continue;
            }
            let mut winner: Option<(Vec<Tok<'c>>, State)> = None;
            for (pos, flip) in ties {
                self.budget = self.budget.saturating_sub(1);
                let mut branch = st.clone();
                branch.take(self.equations, pos, flip);
                let result = self.explore(branch);
                if winner.as_ref().is_none_or(|(k, _)| result.0 < *k) {
                    winner = Some(result);
                }
            }
            return winner.expect("at least one tie");
        }
    }

    fn leaf_key(&self, st: &State) -> Vec<Tok<'c>> {
        let mut out = Vec::new();
        for &(i, flip) in &st.order {
            let mut local = HashMap::new();
            push_equation(&self.equations[i], flip, &st.assigned, &mut local, &mut out);
        }
        out
    }
}

fn equation_key<'c>(eq: &'c Equation, flip: bool, assigned: &HashMap<u64, u32>) -> Vec<Tok<'c>> {
    let mut out = Vec::new();
    let mut local = HashMap::new();
    push_equation(eq, flip, assigned, &mut local, &mut out);
    out
}

fn push_equation<'c>(
    eq: &'c Equation,
    flip: bool,
    assigned: &HashMap<u64, u32>,
    local: &mut HashMap<u64, u32>,
    out: &mut Vec<Tok<'c>>,
) {
    let (l, r) = if flip {
        (&eq.right, &eq.left)
    } else {
        (&eq.left, &eq.right)
    };
    push_term(l, assigned, local, out);
    out.push(Tok::Sep);
    push_term(r, assigned, local, out);
    out.push(Tok::Sep);
}

fn push_term<'c>(t: &'c Term, assigned: &HashMap<u64, u32>, local: &mut HashMap<u64, u32>, out: &mut Vec<Tok<'c>>) {
    match t {
        Term::Agent(s, args) => {
            out.push(Tok::Agent(s.name(), s.arity()));
            for a in args {
                push_term(a, assigned, local, out);
            }
        }
        Term::Name(n) => match assigned.get(&n.id()) {
            Some(&k) => out.push(Tok::Bound(k)),
            None => {
                let fresh = local.len() as u32;
                let k = *local.entry(n.id()).or_insert(fresh);
                out.push(Tok::Open(k));
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Symbol;

    fn z() -> Term {
        Term::agent(Symbol::new("Z", 0), vec![])
    }
    fn s(t: Term) -> Term {
        Term::agent(Symbol::new("S", 1), vec![t])
    }
    fn v(id: u64, d: &str) -> Term {
        Term::Name(Name::new(id, d))
    }
    fn eq(l: Term, r: Term) -> Equation {
        Equation::new(l, r)
    }

    #[test]
    fn renaming_and_flip_agree() {
        // ⟨ r | x=Z, r=S(x) ⟩ and ⟨ r | r=S(y), Z=y ⟩
        let a = Configuration::new(vec![v(0, "r")], vec![eq(v(1, "x"), z()), eq(v(0, "r"), s(v(1, "x")))]);
        let b = Configuration::new(vec![v(10, "r")], vec![eq(v(10, "r"), s(v(7, "y"))), eq(z(), v(7, "y"))]);
        assert_eq!(canonicalize(&a).unwrap(), canonicalize(&b).unwrap());
    }

    #[test]
    fn closed_term_is_fixed() {
        let c = Configuration::new(vec![s(z())], vec![]);
        assert_eq!(canonicalize(&c).unwrap().as_configuration(), &c);
    }

    #[test]
    fn orientation_of_name_equations() {
        let a = Configuration::new(vec![v(0, "a"), v(1, "b")], vec![eq(v(0, "a"), v(1, "b"))]);
        let b = Configuration::new(vec![v(0, "a"), v(1, "b")], vec![eq(v(1, "b"), v(0, "a"))]);
        assert_eq!(canonicalize(&a).unwrap(), canonicalize(&b).unwrap());
    }

    #[test]
    fn interface_order_matters() {
        let a = Configuration::new(vec![v(0, "a"), v(1, "b")], vec![eq(v(0, "a"), s(v(1, "b")))]);
        let b = Configuration::new(vec![v(1, "b"), v(0, "a")], vec![eq(v(0, "a"), s(v(1, "b")))]);
        assert_ne!(canonicalize(&a).unwrap(), canonicalize(&b).unwrap());
    }

    #[test]
    fn rejects_overused_names() {
        let c = Configuration::new(vec![v(0, "x")], vec![eq(v(0, "x"), z()), eq(v(0, "x"), z())]);
        assert!(canonicalize(&c).is_err());
    }

    #[test]
    fn symmetric_disconnected_components() {
        // S(a)=S(b) with a wired through c to S(Z) and b attached to Z
        let a = Configuration::new(
            vec![],
            vec![
                eq(s(v(0, "a")), s(v(1, "b"))),
                eq(v(0, "a"), v(2, "c")),
                eq(v(1, "b"), z()),
                eq(v(2, "c"), s(z())),
            ],
        );
        let same = |left_first: bool| {
            let pair = if left_first {
                eq(s(v(4, "o")), s(v(5, "q")))
            } else {
                eq(s(v(5, "q")), s(v(4, "o")))
            };
            Configuration::new(
                vec![],
                vec![
                    eq(s(z()), v(6, "p")),
                    eq(z(), v(5, "q")),
                    eq(v(6, "p"), v(4, "o")),
                    pair,
                ],
            )
        };
        assert_eq!(canonicalize(&a).unwrap(), canonicalize(&same(true)).unwrap());
        assert_eq!(canonicalize(&a).unwrap(), canonicalize(&same(false)).unwrap());
        // the wire now leads to Z instead of S(Z)
        let other = Configuration::new(
            vec![],
            vec![
                eq(s(z()), v(5, "q")),
                eq(z(), v(6, "p")),
                eq(v(6, "p"), v(4, "o")),
                eq(s(v(4, "o")), s(v(5, "q"))),
            ],
        );
        assert_ne!(canonicalize(&a).unwrap(), canonicalize(&other).unwrap());
    }
}
