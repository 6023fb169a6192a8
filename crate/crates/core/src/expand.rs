//! Translation of variadic rules into fixed generic rules, one per arity.

use std::collections::HashMap;

use crate::diag::{Code, Diagnostic};
use crate::name::{Name, NameSupply};
use crate::rule::{Origin, Pattern, RangeName, RhsEquation, RhsTerm, Rule, RuleKind, Side};

pub const DEFAULT_ARITY_CAP: usize = 64;

/// Expands a variadic rule into fixed generic rules for every total arity
/// from its number of fixed ports up to `max_arity`. Other rules come back
/// unchanged as a single-element vector.
pub fn expand_variadic(rule: &Rule, max_arity: usize, cap: usize) -> Result<Vec<Rule>, Diagnostic> {
    if rule.kind() != RuleKind::Variadic {
        return Ok(vec![rule.clone()]);
    }
    if max_arity > cap {
        return Err(Diagnostic::new(
            Code::ExpandOverflow,
            format!(
                "rule {}: expanding up to arity {max_arity} exceeds the cap of {cap}",
                rule.id
            ),
        )
        .at(rule.span())
        .with_rules([rule.id.clone()]));
    }
    let g = rule
        .generic_view()
        .expect("variadic rules have exactly one generic side");
    let lhs_range = g.range.expect("variadic rule has a range").clone();
    let fixed_ports = g.fixed.len();
    let generic_side = g.generic_side;

    let mut rhs_ranges: Vec<RangeName> = Vec::new();
    for eq in &rule.rhs {
        eq.for_each_range(&mut |r, _| {
            if *r != lhs_range && !rhs_ranges.contains(r) {
                rhs_ranges.push(r.clone());
            }
        });
    }

    let mut supply = NameSupply::above(rule.names());
    let mut out = Vec::new();
    for arity in fixed_ports..=max_arity {
        let ports = arity - fixed_ports;
        let mut ranges: HashMap<RangeName, Vec<Name>> = HashMap::new();
        for r in std::iter::once(&lhs_range).chain(&rhs_ranges) {
            let names = (1..=ports)
                .map(|i| supply.fresh(&format!("{}{i}", r.as_str())))
                .collect();
            ranges.insert(r.clone(), names);
        }

        let mut rhs = Vec::new();
        for eq in &rule.rhs {
            if eq.has_variadic_name() {
                for i in 0..ports {
                    rhs.push(unfold_equation(eq, &ranges, Some(i)));
                }
            } else {
                rhs.push(unfold_equation(eq, &ranges, None));
            }
        }

        let mut fixed = g.fixed.to_vec();
        fixed.extend(ranges[&lhs_range].iter().cloned());
        let generic = Pattern::Generic { fixed, range: None };
        let agent = rule.side(generic_side.other()).clone();
        let (left, right) = match generic_side {
            Side::Left => (generic, agent),
            Side::Right => (agent, generic),
        };
        out.push(
            Rule::new(format!("{}/{arity}", rule.id), left, right, rhs).with_origin(Origin::Expanded {
                from: rule.id.clone(),
                arity,
            }),
        );
    }
    Ok(out)
}

fn unfold_equation(eq: &RhsEquation, ranges: &HashMap<RangeName, Vec<Name>>, copy: Option<usize>) -> RhsEquation {
    RhsEquation::new(
        unfold_term(&eq.left, ranges, copy),
        unfold_term(&eq.right, ranges, copy),
    )
}

fn unfold_term(t: &RhsTerm, ranges: &HashMap<RangeName, Vec<Name>>, copy: Option<usize>) -> RhsTerm {
    match t {
        RhsTerm::Name(n) => RhsTerm::Name(n.clone()),
        RhsTerm::Variadic(r) => {
            let i = copy.expect("variadic name outside a replicated equation");
            RhsTerm::Name(ranges[r][i].clone())
        }
        RhsTerm::Agent { head, args, range } => {
            let mut new_args: Vec<RhsTerm> = args.iter().map(|a| unfold_term(a, ranges, copy)).collect();
            if let Some(r) = range {
                new_args.extend(ranges[r].iter().cloned().map(RhsTerm::Name));
            }
            RhsTerm::Agent {
                head: head.clone(),
                args: new_args,
                range: None,
            }
        }
    }
}
