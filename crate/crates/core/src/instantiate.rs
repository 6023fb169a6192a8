//! Building the right-hand side of an interaction: binding LHS parameters
//! to the arguments of the active pair, freshening bound names, and (for
//! generic rules) replacing the generic agent by the actual partner symbol.

use std::collections::HashMap;

use crate::name::{Name, NameSupply};
use crate::rule::{Head, RangeName, RhsTerm, Rule, RuleKind, Side};
use crate::table::Match;
use crate::term::{Equation, Symbol, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instantiation {
    pub equations: Vec<Equation>,
    /// Names created for the rule's bound names, in creation order.
    pub fresh: Vec<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InstantiateError {
    #[error("equation is not an active pair")]
    NotActivePair,
    #[error("rule {rule} does not match {left} >< {right}")]
    NoMatch { rule: String, left: String, right: String },
    #[error("E_ARITY_UNDER: rule {rule} needs a partner with at least {needed} ports, {partner} has {actual}")]
    ArityUnder {
        rule: String,
        partner: String,
        needed: usize,
        actual: usize,
    },
    #[error("rule {rule} is malformed: {reason}")]
    Malformed { rule: String, reason: String },
}

fn malformed(rule: &Rule, reason: impl Into<String>) -> InstantiateError {
    InstantiateError::Malformed {
        rule: rule.id.clone(),
        reason: reason.into(),
    }
}

fn split_pair(eq: Equation) -> Result<(Symbol, Vec<Term>, Symbol, Vec<Term>), InstantiateError> {
    match (eq.left, eq.right) {
        (Term::Agent(a, xs), Term::Agent(b, ys)) => Ok((a, xs, b, ys)),
        _ => Err(InstantiateError::NotActivePair),
    }
}

fn no_match(rule: &Rule, a: &Symbol, b: &Symbol) -> InstantiateError {
    InstantiateError::NoMatch {
        rule: rule.id.clone(),
        left: a.name().to_string(),
        right: b.name().to_string(),
    }
}

/// Applies an ordinary rule to an active pair written in either orientation.
pub fn instantiate_ordinary(
    rule: &Rule,
    eq: &Equation,
    supply: &mut NameSupply,
) -> Result<Instantiation, InstantiateError> {
    let (a, xs, b, ys) = split_pair(eq.clone())?;
    let (Some(ra), Some(rb)) = (rule.left.symbol(), rule.right.symbol()) else {
        return Err(no_match(rule, &a, &b));
    };
    let flipped = if *ra == a && *rb == b {
        false
    } else if *ra == b && *rb == a {
        true
    } else {
        return Err(no_match(rule, &a, &b));
    };
    ordinary_with_args(rule, xs, ys, flipped, supply)
}

fn ordinary_with_args(
    rule: &Rule,
    left_args: Vec<Term>,
    right_args: Vec<Term>,
    flipped: bool,
    supply: &mut NameSupply,
) -> Result<Instantiation, InstantiateError> {
    let (for_left, for_right) = if flipped {
        (right_args, left_args)
    } else {
        (left_args, right_args)
    };
    let mut env = Bindings::new(rule);
    env.bind(rule.left.params(), for_left)?;
    env.bind(rule.right.params(), for_right)?;
    env.build_plain(None, supply)
}

/// Applies a fixed generic rule `A(x..) >< ANY(y..)` to `α(..) = β(..)`.
/// When both orientations could match (the rule's own agent against
/// itself) the left term takes the generic position, as in lookup.
pub fn instantiate_fixed_generic(
    rule: &Rule,
    eq: &Equation,
    supply: &mut NameSupply,
) -> Result<Instantiation, InstantiateError> {
    let g = rule
        .generic_view()
        .filter(|_| rule.kind() == RuleKind::FixedGeneric)
        .ok_or_else(|| malformed(rule, "not a fixed generic rule"))?;
    let (a, xs, b, ys) = split_pair(eq.clone())?;
    let n = g.fixed_arity();
    let generic_side = if b == *g.agent && a.arity() == n {
        Side::Left
    } else if a == *g.agent && b.arity() == n {
        Side::Right
    } else {
        return Err(no_match(rule, &a, &b));
    };
    fixed_generic_with_args(rule, a, xs, b, ys, generic_side, supply)
}

fn fixed_generic_with_args(
    rule: &Rule,
    a: Symbol,
    xs: Vec<Term>,
    b: Symbol,
    ys: Vec<Term>,
    generic_side: Side,
    supply: &mut NameSupply,
) -> Result<Instantiation, InstantiateError> {
    let g = rule.generic_view().ok_or_else(|| malformed(rule, "not generic"))?;
    let (partner, partner_args, agent_args) = match generic_side {
        Side::Left => (a, xs, ys),
        Side::Right => (b, ys, xs),
    };
    let mut env = Bindings::new(rule);
    env.bind(g.agent_params, agent_args)?;
    env.bind(g.fixed, partner_args)?;
    env.build_plain(Some(&partner), supply)
}

/// Applies a variadic rule directly, without going through expansion. The
/// partner's first ports bind the rule's fixed ports in order; the remaining
/// ports form the range.
pub fn instantiate_variadic(
    rule: &Rule,
    eq: &Equation,
    supply: &mut NameSupply,
) -> Result<Instantiation, InstantiateError> {
    let g = rule
        .generic_view()
        .filter(|_| rule.kind() == RuleKind::Variadic)
        .ok_or_else(|| malformed(rule, "not a variadic rule"))?;
    let (a, xs, b, ys) = split_pair(eq.clone())?;
    let f = g.fixed_arity();
    let (partner, partner_args, agent_args) = if b == *g.agent {
        (a, xs, ys)
    } else if a == *g.agent {
        (b, ys, xs)
    } else {
        return Err(no_match(rule, &a, &b));
    };
    let n = partner.arity();
    if n < f {
        return Err(InstantiateError::ArityUnder {
            rule: rule.id.clone(),
            partner: partner.name().to_string(),
            needed: f,
            actual: n,
        });
    }
    let k = n - f;
    let lhs_range = g.range.expect("variadic").clone();

    let mut partner_args = partner_args;
    let range_args: Vec<Option<Term>> = partner_args.split_off(f).into_iter().map(Some).collect();
    let mut env = Bindings::new(rule);
    env.bind(g.agent_params, agent_args)?;
    env.bind(g.fixed, partner_args)?;

    let mut v = Variadic {
        env,
        lhs_range,
        range_args,
        rhs_ranges: HashMap::new(),
        partner,
        ports: k,
    };
    let mut equations = Vec::new();
    for eq in &rule.rhs {
        if eq.has_variadic_name() {
            for i in 0..k {
                let l = v.term(&eq.left, Some(i), supply)?;
                let r = v.term(&eq.right, Some(i), supply)?;
                equations.push(Equation::new(l, r));
            }
        } else {
            let l = v.term(&eq.left, None, supply)?;
            let r = v.term(&eq.right, None, supply)?;
            equations.push(Equation::new(l, r));
        }
    }
    v.env.finish()?;
    Ok(Instantiation {
        equations,
        fresh: v.env.fresh_order,
    })
}

/// Applies the rule chosen by [`crate::table::RuleTable::lookup`] to the
/// (moved) active pair.
pub fn apply_match(m: Match<'_>, eq: Equation, supply: &mut NameSupply) -> Result<Instantiation, InstantiateError> {
    let (a, xs, b, ys) = split_pair(eq)?;
    match m {
        Match::Ordinary { rule, flipped } => ordinary_with_args(rule, xs, ys, flipped, supply),
        Match::Generic { rule, generic_side } => fixed_generic_with_args(rule, a, xs, b, ys, generic_side, supply),
        Match::None => Err(InstantiateError::NoMatch {
            rule: String::new(),
            left: a.name().to_string(),
            right: b.name().to_string(),
        }),
    }
}

struct Bindings<'r> {
    rule: &'r Rule,
    params: HashMap<Name, Option<Term>>,
    fresh: HashMap<Name, Name>,
    fresh_order: Vec<Name>,
}

impl<'r> Bindings<'r> {
    fn new(rule: &'r Rule) -> Self {
        Bindings {
            rule,
            params: HashMap::new(),
            fresh: HashMap::new(),
            fresh_order: Vec::new(),
        }
    }

    fn bind(&mut self, params: &[Name], args: Vec<Term>) -> Result<(), InstantiateError> {
        if params.len() != args.len() {
            return Err(malformed(
                self.rule,
                format!("{} parameters bound to {} arguments", params.len(), args.len()),
            ));
        }
        for (p, a) in params.iter().zip(args) {
            self.params.insert(p.clone(), Some(a));
        }
        Ok(())
    }

    fn name(&mut self, n: &Name, supply: &mut NameSupply) -> Result<Term, InstantiateError> {
        if let Some(slot) = self.params.get_mut(n) {
            return slot
                .take()
                .ok_or_else(|| malformed(self.rule, format!("parameter `{}` used twice", n.display())));
        }
        let fresh = match self.fresh.get(n) {
            Some(f) => f.clone(),
            None => {
                let f = supply.fresh_like(n);
                self.fresh.insert(n.clone(), f.clone());
                self.fresh_order.push(f.clone());
                f
            }
        };
        Ok(Term::Name(fresh))
    }

    fn plain(
        &mut self,
        t: &RhsTerm,
        partner: Option<&Symbol>,
        supply: &mut NameSupply,
    ) -> Result<Term, InstantiateError> {
        match t {
            RhsTerm::Name(n) => self.name(n, supply),
            RhsTerm::Variadic(_) => Err(malformed(self.rule, "variadic name in a fixed rule")),
            RhsTerm::Agent { range: Some(_), .. } => Err(malformed(self.rule, "range in a fixed rule")),
            RhsTerm::Agent {
                head,
                args,
                range: None,
            } => {
                let symbol = match head {
                    Head::Symbol(s) => s.clone(),
                    Head::Generic => partner
                        .cloned()
                        .ok_or_else(|| malformed(self.rule, "ANY in an ordinary rule"))?,
                };
                let args = args
                    .iter()
                    .map(|a| self.plain(a, partner, supply))
                    .collect::<Result<Vec<_>, _>>()?;
                checked_agent(self.rule, symbol, args)
            }
        }
    }

    fn build_plain(
        mut self,
        partner: Option<&Symbol>,
        supply: &mut NameSupply,
    ) -> Result<Instantiation, InstantiateError> {
        let mut equations = Vec::with_capacity(self.rule.rhs.len());
        for eq in &self.rule.rhs {
            let l = self.plain(&eq.left, partner, supply)?;
            let r = self.plain(&eq.right, partner, supply)?;
            equations.push(Equation::new(l, r));
        }
        self.finish()?;
        Ok(Instantiation {
            equations,
            fresh: self.fresh_order,
        })
    }

    fn finish(&self) -> Result<(), InstantiateError> {
        match self.params.iter().find(|(_, t)| t.is_some()) {
            Some((p, _)) => Err(malformed(
                self.rule,
                format!("parameter `{}` is never used", p.display()),
            )),
            None => Ok(()),
        }
    }
}

fn checked_agent(rule: &Rule, symbol: Symbol, args: Vec<Term>) -> Result<Term, InstantiateError> {
    if symbol.arity() != args.len() {
        return Err(malformed(
            rule,
            format!("{} built with {} ports", symbol.name(), args.len()),
        ));
    }
    Ok(Term::Agent(symbol, args))
}

struct Variadic<'r> {
    env: Bindings<'r>,
    lhs_range: RangeName,
    range_args: Vec<Option<Term>>,
    rhs_ranges: HashMap<RangeName, Vec<Name>>,
    partner: Symbol,
    ports: usize,
}

impl<'r> Variadic<'r> {
    fn range_names(&mut self, r: &RangeName, supply: &mut NameSupply) -> &[Name] {
        let ports = self.ports;
        self.rhs_ranges.entry(r.clone()).or_insert_with(|| {
            (1..=ports)
                .map(|i| supply.fresh(&format!("{}{i}", r.as_str())))
                .collect()
        })
    }

    fn port(&mut self, r: &RangeName, i: usize, supply: &mut NameSupply) -> Result<Term, InstantiateError> {
        if *r == self.lhs_range {
            return self.range_args[i]
                .take()
                .ok_or_else(|| malformed(self.env.rule, format!("port {i} of [{}] used twice", r.as_str())));
        }
        let is_new = !self.rhs_ranges.contains_key(r);
        let name = self.range_names(r, supply)[i].clone();
        if is_new {
            let all = self.rhs_ranges[r].clone();
            self.env.fresh_order.extend(all);
        }
        Ok(Term::Name(name))
    }

    fn term(&mut self, t: &RhsTerm, copy: Option<usize>, supply: &mut NameSupply) -> Result<Term, InstantiateError> {
        match t {
            RhsTerm::Name(n) => self.env.name(n, supply),
            RhsTerm::Variadic(r) => {
                let i = copy.ok_or_else(|| malformed(self.env.rule, "variadic name outside a replicated equation"))?;
                self.port(r, i, supply)
            }
            RhsTerm::Agent { head, args, range } => {
                let symbol = match head {
                    Head::Symbol(s) => s.clone(),
                    Head::Generic => self.partner.clone(),
                };
                let mut built = args
                    .iter()
                    .map(|a| self.term(a, copy, supply))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(r) = range {
                    for i in 0..self.ports {
                        built.push(self.port(r, i, supply)?);
                    }
                }
                checked_agent(self.env.rule, symbol, built)
            }
        }
    }
}
