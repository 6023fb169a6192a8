//! The four reduction rules as direct operations on a [`Configuration`].
//!
//! These functions scan the whole configuration and are meant for small
//! inputs and for checking the indexed [`crate::machine::Machine`]. Equation
//! positions play the role of queue order: new equations are appended and a
//! substitution leaves its target where it is.

use std::fmt;

use crate::instantiate::{apply_match, InstantiateError};
use crate::name::{Name, NameSupply};
use crate::rule::Side;
use crate::table::RuleTable;
use crate::term::{Configuration, Equation, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Communication,
    Substitution,
    Collect,
    Interaction,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Communication => "communication",
            StepKind::Substitution => "substitution",
            StepKind::Collect => "collect",
            StepKind::Interaction => "interaction",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            StepKind::Communication => "com",
            StepKind::Substitution => "sub",
            StepKind::Collect => "col",
            StepKind::Interaction => "int",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One applied reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub kind: StepKind,
    /// Present exactly for interactions.
    pub rule_id: Option<String>,
    /// The selected equation.
    pub before: Equation,
    /// Equations added or rewritten by the step. Empty for collect.
    pub after: Vec<Equation>,
    pub fresh: Vec<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
}

fn invariant(msg: impl Into<String>) -> EngineError {
    EngineError::Invariant(msg.into())
}

/// A reduction applicable to one equation, located by position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    /// The name on `side` of `eq` is a whole side of `partner`.
    Communication {
        eq: usize,
        side: Side,
        partner: usize,
    },
    /// The name on `side` of `eq` occurs inside an agent side of `target`.
    Substitution {
        eq: usize,
        side: Side,
        target: usize,
    },
    /// The name on `side` of `eq` occurs in interface entry `slot`.
    Collect {
        eq: usize,
        side: Side,
        slot: usize,
    },
    Interaction {
        eq: usize,
    },
}

impl Redex {
    pub fn kind(&self) -> StepKind {
        match self {
            Redex::Communication { .. } => StepKind::Communication,
            Redex::Substitution { .. } => StepKind::Substitution,
            Redex::Collect { .. } => StepKind::Collect,
            Redex::Interaction { .. } => StepKind::Interaction,
        }
    }

    pub fn eq(&self) -> usize {
        match *self {
            Redex::Communication { eq, .. }
            | Redex::Substitution { eq, .. }
            | Redex::Collect { eq, .. }
            | Redex::Interaction { eq } => eq,
        }
    }
}

pub(crate) fn side_term(eq: &Equation, side: Side) -> &Term {
    match side {
        Side::Left => &eq.left,
        Side::Right => &eq.right,
    }
}

pub(crate) fn split_side(eq: Equation, side: Side) -> (Term, Term) {
    match side {
        Side::Left => (eq.left, eq.right),
        Side::Right => (eq.right, eq.left),
    }
}

enum Elsewhere {
    Side(usize),
    Inside(usize),
    Interface(usize),
}

fn locate(config: &Configuration, eq: usize, side: Side, x: &Name) -> Option<Elsewhere> {
    let here = &config.equations[eq];
    if side_term(here, side.other()).contains_name(x) {
        return None;
    }
    for (j, e) in config.equations.iter().enumerate() {
        if j == eq {
            continue;
        }
        for t in e.sides() {
            match t {
                Term::Name(n) if n == x => return Some(Elsewhere::Side(j)),
                Term::Agent(..) if t.contains_name(x) => return Some(Elsewhere::Inside(j)),
                _ => {}
            }
        }
    }
    config
        .interface
        .iter()
        .position(|t| t.contains_name(x))
        .map(Elsewhere::Interface)
}

/// The reduction that applies to equation `eq`, if any. Agent pairs
/// interact only when the table has a rule for them. For name sides the
/// preference is communication, then substitution, then collect, and the
/// left side before the right.
pub fn classify(config: &Configuration, eq: usize, table: &RuleTable) -> Option<Redex> {
    let e = &config.equations[eq];
    if let (Term::Agent(a, _), Term::Agent(b, _)) = (&e.left, &e.right) {
        return (!table.lookup(a, b).is_none()).then_some(Redex::Interaction { eq });
    }
    let mut best: Option<Redex> = None;
    for side in [Side::Left, Side::Right] {
        let Term::Name(x) = side_term(e, side) else { continue };
        let found = match locate(config, eq, side, x) {
            Some(Elsewhere::Side(partner)) => Redex::Communication { eq, side, partner },
            Some(Elsewhere::Inside(target)) => Redex::Substitution { eq, side, target },
            Some(Elsewhere::Interface(slot)) => Redex::Collect { eq, side, slot },
            None => continue,
        };
        if best.is_none_or(|b| found.kind() < b.kind()) {
            best = Some(found);
        }
    }
    best
}

fn name_on(eq: &Equation, side: Side) -> Result<Name, EngineError> {
    side_term(eq, side)
        .as_name()
        .cloned()
        .ok_or_else(|| invariant("selected side is not a name"))
}

/// `x=t, x=u ↪ t=u`. The result is appended.
pub fn step_communication(
    config: &mut Configuration,
    eq: usize,
    side: Side,
    partner: usize,
) -> Result<StepResult, EngineError> {
    if eq == partner || partner >= config.equations.len() {
        return Err(invariant("communication needs two equations"));
    }
    let x = name_on(&config.equations[eq], side)?;
    let p = &config.equations[partner];
    let partner_side = if p.left.as_name() == Some(&x) {
        Side::Left
    } else if p.right.as_name() == Some(&x) {
        Side::Right
    } else {
        return Err(invariant("communication partner does not hold the name as a side"));
    };
    let before = config.equations[eq].clone();
    let (hi, lo) = if eq > partner { (eq, partner) } else { (partner, eq) };
    let e_hi = config.equations.remove(hi);
    let e_lo = config.equations.remove(lo);
    let (e, p) = if eq == hi { (e_hi, e_lo) } else { (e_lo, e_hi) };
    let (_, t) = split_side(e, side);
    let (_, u) = split_side(p, partner_side);
    let out = Equation::new(t, u);
    config.equations.push(out.clone());
    Ok(StepResult {
        kind: StepKind::Communication,
        rule_id: None,
        before,
        after: vec![out],
        fresh: Vec::new(),
    })
}

/// `x=t, u=s ↪ u[t/x]=s` where `u` is an agent containing `x`. The target
/// keeps its position.
pub fn step_substitution(
    config: &mut Configuration,
    eq: usize,
    side: Side,
    target: usize,
) -> Result<StepResult, EngineError> {
    if eq == target || target >= config.equations.len() {
        return Err(invariant("substitution needs two equations"));
    }
    let x = name_on(&config.equations[eq], side)?;
    let before = config.equations.remove(eq);
    let target = if target > eq { target - 1 } else { target };
    let (_, t) = split_side(before.clone(), side);
    let goal = &mut config.equations[target];
    let into = if goal.left.is_agent() && goal.left.contains_name(&x) {
        &mut goal.left
    } else if goal.right.is_agent() && goal.right.contains_name(&x) {
        &mut goal.right
    } else {
        return Err(invariant(
            "substitution target does not contain the name inside an agent",
        ));
    };
    into.replace_name(&x, t)
        .map_err(|_| invariant("substitution target lost the name"))?;
    Ok(StepResult {
        kind: StepKind::Substitution,
        rule_id: None,
        before,
        after: vec![goal.clone()],
        fresh: Vec::new(),
    })
}

/// `⟨ ..x.. | x=t ⟩ ↪ ⟨ ..t.. | ⟩`.
pub fn step_collect(config: &mut Configuration, eq: usize, side: Side, slot: usize) -> Result<StepResult, EngineError> {
    let x = name_on(&config.equations[eq], side)?;
    if slot >= config.interface.len() || !config.interface[slot].contains_name(&x) {
        return Err(invariant("collected name is not in the interface entry"));
    }
    let before = config.equations.remove(eq);
    let (_, t) = split_side(before.clone(), side);
    config.interface[slot]
        .replace_name(&x, t)
        .map_err(|_| invariant("interface entry lost the name"))?;
    Ok(StepResult {
        kind: StepKind::Collect,
        rule_id: None,
        before,
        after: Vec::new(),
        fresh: Vec::new(),
    })
}

/// Replaces the active pair at `eq` by the instantiated RHS of its rule.
pub fn step_interaction(
    config: &mut Configuration,
    eq: usize,
    table: &RuleTable,
    supply: &mut NameSupply,
) -> Result<StepResult, EngineError> {
    let e = &config.equations[eq];
    let (Some(a), Some(b)) = (e.left.symbol(), e.right.symbol()) else {
        return Err(invariant("interaction on a non-active pair"));
    };
    let m = table.lookup(a, b);
    let rule_id = m
        .rule()
        .map(|r| r.id.clone())
        .ok_or_else(|| invariant("interaction without a rule"))?;
    let before = config.equations.remove(eq);
    let inst = apply_match(m, before.clone(), supply)?;
    config.equations.extend(inst.equations.iter().cloned());
    Ok(StepResult {
        kind: StepKind::Interaction,
        rule_id: Some(rule_id),
        before,
        after: inst.equations,
        fresh: inst.fresh,
    })
}

pub fn apply_redex(
    config: &mut Configuration,
    redex: Redex,
    table: &RuleTable,
    supply: &mut NameSupply,
) -> Result<StepResult, EngineError> {
    match redex {
        Redex::Communication { eq, side, partner } => step_communication(config, eq, side, partner),
        Redex::Substitution { eq, side, target } => step_substitution(config, eq, side, target),
        Redex::Collect { eq, side, slot } => step_collect(config, eq, side, slot),
        Redex::Interaction { eq } => step_interaction(config, eq, table, supply),
    }
}

/// Every reducible equation, in position order.
pub fn redexes(config: &Configuration, table: &RuleTable) -> Vec<Redex> {
    (0..config.equations.len())
        .filter_map(|i| classify(config, i, table))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Symbol;

    fn a(name: &str, args: Vec<Term>) -> Term {
        Term::agent(Symbol::new(name, args.len()), args)
    }
    fn v(n: &Name) -> Term {
        Term::Name(n.clone())
    }
    fn eq(l: Term, r: Term) -> Equation {
        Equation::new(l, r)
    }

    #[test]
    fn communication_joins_the_other_sides() {
        let (x, y, r) = (Name::new(0, "x"), Name::new(1, "y"), Name::new(2, "r"));
        let mut c = Configuration::new(
            vec![v(&y), v(&r)],
            vec![eq(v(&x), a("Z", vec![])), eq(v(&x), a("Add", vec![v(&y), v(&r)]))],
        );
        let t = RuleTable::empty();
        let redex = classify(&c, 0, &t).unwrap();
        assert_eq!(
            redex,
            Redex::Communication {
                eq: 0,
                side: Side::Left,
                partner: 1
            }
        );
        let mut supply = NameSupply::above(c.names());
        apply_redex(&mut c, redex, &t, &mut supply).unwrap();
        assert_eq!(c.equations, vec![eq(a("Z", vec![]), a("Add", vec![v(&y), v(&r)]))]);
    }

    #[test]
    fn communication_of_two_wires() {
        let (p, q, s) = (Name::new(0, "a"), Name::new(1, "b"), Name::new(2, "c"));
        let mut c = Configuration::new(vec![v(&q), v(&s)], vec![eq(v(&p), v(&q)), eq(v(&p), v(&s))]);
        step_communication(&mut c, 0, Side::Left, 1).unwrap();
        assert_eq!(c.equations, vec![eq(v(&q), v(&s))]);
    }

    #[test]
    fn substitution_examples() {
        let (w, r) = (Name::new(0, "w"), Name::new(1, "r"));
        let sz = a("S", vec![a("Z", vec![])]);
        let mut c = Configuration::new(vec![], vec![eq(v(&w), sz.clone()), eq(v(&r), a("S", vec![v(&w)]))]);
        let t = RuleTable::empty();
        let redex = classify(&c, 0, &t).unwrap();
        assert_eq!(redex.kind(), StepKind::Substitution);
        apply_redex(&mut c, redex, &t, &mut NameSupply::new()).unwrap();
        assert_eq!(c.equations, vec![eq(v(&r), a("S", vec![sz]))]);

        let (x, y) = (Name::new(0, "x"), Name::new(1, "y"));
        let mut c = Configuration::new(vec![], vec![eq(v(&x), a("Z", vec![])), eq(a("S", vec![v(&x)]), v(&y))]);
        step_substitution(&mut c, 0, Side::Left, 1).unwrap();
        assert_eq!(c.equations, vec![eq(a("S", vec![a("Z", vec![])]), v(&y))]);
    }

    #[test]
    fn collect_keeps_other_entries() {
        let (p, x) = (Name::new(0, "a"), Name::new(1, "x"));
        let mut c = Configuration::new(vec![v(&p), v(&x)], vec![eq(v(&x), a("Z", vec![]))]);
        let t = RuleTable::empty();
        assert_eq!(classify(&c, 0, &t).unwrap().kind(), StepKind::Collect);
        step_collect(&mut c, 0, Side::Left, 1).unwrap();
        assert_eq!(c.interface, vec![v(&p), a("Z", vec![])]);
        assert!(c.equations.is_empty());
    }

    #[test]
    fn collect_from_the_right() {
        let r = Name::new(0, "r");
        let mut c = Configuration::new(vec![v(&r)], vec![eq(a("No", vec![]), v(&r))]);
        let t = RuleTable::empty();
        let redex = classify(&c, 0, &t).unwrap();
        apply_redex(&mut c, redex, &t, &mut NameSupply::new()).unwrap();
        assert_eq!(c, Configuration::new(vec![a("No", vec![])], vec![]));
    }

    #[test]
    fn loops_dangling_names_and_unknown_pairs_are_irreducible() {
        let (x, y) = (Name::new(0, "x"), Name::new(1, "y"));
        let t = RuleTable::empty();
        let c = Configuration::new(vec![], vec![eq(v(&x), v(&x))]);
        assert_eq!(classify(&c, 0, &t), None);
        let c = Configuration::new(vec![], vec![eq(v(&y), a("S", vec![v(&y)]))]);
        assert_eq!(classify(&c, 0, &t), None);
        let c = Configuration::new(vec![], vec![eq(v(&x), a("Z", vec![]))]);
        assert_eq!(classify(&c, 0, &t), None);
        let c = Configuration::new(vec![], vec![eq(a("A", vec![]), a("B", vec![]))]);
        assert_eq!(classify(&c, 0, &t), None);
    }

    #[test]
    fn communication_beats_collect() {
        let (x, y) = (Name::new(0, "x"), Name::new(1, "y"));
        let c = Configuration::new(vec![v(&x)], vec![eq(v(&x), v(&y)), eq(v(&y), a("Z", vec![]))]);
        let redex = classify(&c, 0, &RuleTable::empty()).unwrap();
        assert_eq!(
            redex,
            Redex::Communication {
                eq: 0,
                side: Side::Right,
                partner: 1
            }
        );
    }
}
