//! Static checks on rule sets: per-rule shape and linearity, no-ambiguity,
//! and the generic rule constraint.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::canonical::canonical_equations;
use crate::diag::{Code, Diagnostic};
use crate::name::Name;
use crate::rule::{Head, RangeName, RhsEquation, Rule, RuleKind};
use crate::term::{Configuration, Equation, Symbol, Term};

/// Shape and linearity diagnostics for a single rule.
pub fn validate_rule(rule: &Rule) -> Vec<Diagnostic> {
    let mut out = validate_shape(rule);
    out.extend(validate_linearity(rule));
    out
}

/// Structural well-formedness: where generic agents, ranges and variadic
/// names may appear and how many ports generic agents carry.
pub fn validate_shape(rule: &Rule) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let span = rule.span();
    let err = |code: Code, msg: String| {
        Diagnostic::new(code, format!("rule {}: {msg}", rule.id))
            .at(span)
            .with_rules([rule.id.clone()])
    };

    if rule.left.is_generic() && rule.right.is_generic() {
        out.push(err(
            Code::GenericShape,
            "both sides of the active pair are generic".into(),
        ));
        return out;
    }
    let kind = rule.kind();
    let (fixed_len, has_range) = match rule.generic_view() {
        Some(g) => (g.fixed.len(), g.range.is_some()),
        None => (0, false),
    };

    for (i, eq) in rule.rhs.iter().enumerate() {
        let n = i + 1;
        if eq.has_range() && eq.has_variadic_name() {
            out.push(err(
                Code::Mixed,
                format!("equation {n} has both a variadic range and a variadic name"),
            ));
        }
        if kind != RuleKind::Variadic && (eq.has_range() || eq.has_variadic_name()) {
            out.push(err(
                Code::GenericShape,
                format!("equation {n} uses a range or variadic name outside a variadic rule"),
            ));
        }
        if kind == RuleKind::Variadic && eq.has_variadic_name() {
            let mut plain = Vec::new();
            eq.for_each_name(&mut |x| plain.push(x.display().to_string()));
            if !plain.is_empty() {
                out.push(err(
                    Code::LinDup,
                    format!(
                        "equation {n} is replicated per port but mentions plain names {}",
                        plain.join(", ")
                    ),
                ));
            }
        }
        for side in [&eq.left, &eq.right] {
            side.for_each_agent(&mut |head, nargs, range| match head {
                Head::Symbol(s) => {
                    if range.is_some() {
                        out.push(err(
                            Code::GenericShape,
                            format!("range passed to concrete agent {}", s.name()),
                        ));
                    }
                }
                Head::Generic => match kind {
                    RuleKind::Ordinary => out.push(err(
                        Code::GenericShape,
                        format!("equation {n} uses ANY in an ordinary rule"),
                    )),
                    RuleKind::FixedGeneric => {
                        if nargs != fixed_len || range.is_some() {
                            out.push(err(
                                Code::GenericShape,
                                format!(
                                    "ANY has arity {fixed_len} in this rule but equation {n} gives it {nargs} ports{}",
                                    if range.is_some() { " and a range" } else { "" }
                                ),
                            ));
                        }
                    }
                    RuleKind::Variadic => {
                        if nargs != fixed_len || range.is_none() {
                            out.push(err(
                                Code::GenericShape,
                                format!("ANY needs {fixed_len} fixed ports and a range in equation {n}"),
                            ));
                        }
                    }
                },
            });
        }
    }
    debug_assert!(kind != RuleKind::Variadic || has_range);
    out
}

/// Ports may be neither erased nor duplicated: every LHS parameter occurs
/// exactly once in the RHS and every other RHS name exactly twice. Ranges
/// follow the same discipline, counting `[x]` and `x'` together.
pub fn validate_linearity(rule: &Rule) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let span = rule.span();
    let diag = |code: Code, msg: String| {
        Diagnostic::new(code, format!("rule {}: {msg}", rule.id))
            .at(span)
            .with_rules([rule.id.clone()])
    };

    let mut lhs_seen: HashSet<&Name> = HashSet::new();
    let mut lhs_order: Vec<&Name> = Vec::new();
    for p in rule.lhs_params() {
        if lhs_seen.insert(p) {
            lhs_order.push(p);
        } else {
            out.push(diag(
                Code::LinDup,
                format!("parameter `{}` appears twice on the left-hand side", p.display()),
            ));
        }
    }

    let mut counts: HashMap<&Name, usize> = HashMap::new();
    let mut rhs_order: Vec<&Name> = Vec::new();
    for eq in &rule.rhs {
        eq.for_each_name(&mut |n| {
            let c = counts.entry(n).or_default();
            if *c == 0 {
                rhs_order.push(n);
            }
            *c += 1;
        });
    }

    for p in &lhs_order {
        match counts.get(p).copied().unwrap_or(0) {
            1 => {}
            0 => out.push(diag(
                Code::LinErased,
                format!("parameter `{}` is not used on the right-hand side", p.display()),
            )),
            c => out.push(diag(
                Code::LinDup,
                format!("parameter `{}` is used {c} times on the right-hand side", p.display()),
            )),
        }
    }
    for n in rhs_order.iter().filter(|n| !lhs_seen.contains(*n)) {
        match counts[n] {
            2 => {}
            1 => out.push(diag(
                Code::LinDangling,
                format!("name `{}` occurs only once", n.display()),
            )),
            c => out.push(diag(Code::LinDup, format!("name `{}` occurs {c} times", n.display()))),
        }
    }

    let lhs_ranges: Vec<&RangeName> = rule.lhs_ranges().collect();
    let mut range_counts: BTreeMap<&RangeName, usize> = BTreeMap::new();
    for eq in &rule.rhs {
        eq.for_each_range(&mut |r, _| *range_counts.entry(r).or_default() += 1);
    }
    for r in &lhs_ranges {
        match range_counts.get(r).copied().unwrap_or(0) {
            1 => {}
            0 => out.push(diag(
                Code::LinErased,
                format!("range [{}] is not used on the right-hand side", r.as_str()),
            )),
            c => out.push(diag(
                Code::LinDup,
                format!("range [{}] is used {c} times on the right-hand side", r.as_str()),
            )),
        }
    }
    for (r, c) in range_counts.iter().filter(|(r, _)| !lhs_ranges.contains(r)) {
        match c {
            2 => {}
            1 => out.push(diag(
                Code::LinDangling,
                format!("range [{}] occurs only once", r.as_str()),
            )),
            _ => out.push(diag(Code::LinDup, format!("range [{}] occurs {c} times", r.as_str()))),
        }
    }
    out
}

fn unordered(a: &Symbol, b: &Symbol) -> (String, String) {
    if a.name() <= b.name() {
        (a.name().to_string(), b.name().to_string())
    } else {
        (b.name().to_string(), a.name().to_string())
    }
}

/// No two ordinary rules share an active pair, self-rules are symmetric, and
/// no two generic rules fill the same (arity, agent) slot. Expects variadic
/// rules to be expanded already for the slot check.
pub fn check_no_ambiguity(rules: &[Rule]) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    let mut pairs: HashMap<(String, String), &Rule> = HashMap::new();
    for rule in rules.iter().filter(|r| r.kind() == RuleKind::Ordinary) {
        let (Some(a), Some(b)) = (rule.left.symbol(), rule.right.symbol()) else {
            continue;
        };
        let key = unordered(a, b);
        if let Some(first) = pairs.get(&key) {
            out.push(
                Diagnostic::new(
                    Code::DupPair,
                    format!("rules {} and {} both rewrite {} >< {}", first.id, rule.id, key.0, key.1),
                )
                .at(rule.span())
                .with_rules([first.id.clone(), rule.id.clone()]),
            );
        } else {
            pairs.insert(key, rule);
        }
        if a == b && !self_rule_is_symmetric(rule) {
            out.push(
                Diagnostic::new(
                    Code::SelfAsym,
                    format!(
                        "rule {}: swapping the two {} agents changes the right-hand side",
                        rule.id,
                        a.name()
                    ),
                )
                .at(rule.span())
                .with_rules([rule.id.clone()]),
            );
        }
    }

    // (arity, agent) -> first rule; duplicates are grouped per pair of
    // source rules so one variadic clash is reported once.
    let mut slots: HashMap<(usize, String), &Rule> = HashMap::new();
    let mut clashes: BTreeMap<(usize, usize), (String, String, Vec<usize>)> = BTreeMap::new();
    let position: HashMap<&str, usize> = rules
        .iter()
        .enumerate()
        .rev()
        .map(|(i, r)| (r.source_id(), i))
        .collect();
    for rule in rules.iter().filter(|r| r.kind() == RuleKind::FixedGeneric) {
        let Some(g) = rule.generic_view() else { continue };
        let key = (g.fixed_arity(), g.agent.name().to_string());
        if let Some(first) = slots.get(&key) {
            let ids = (position[first.source_id()], position[rule.source_id()]);
            let entry = clashes
                .entry(ids)
                .or_insert_with(|| (first.source_id().to_string(), rule.source_id().to_string(), Vec::new()));
            entry.2.push(key.0);
        } else {
            slots.insert(key, rule);
        }
    }
    for ((_, second), (a, b, arities)) in clashes {
        let list: Vec<String> = arities.iter().map(usize::to_string).collect();
        let agent = rules[second]
            .generic_view()
            .map(|g| g.agent.name().to_string())
            .unwrap_or_default();
        out.push(
            Diagnostic::new(
                Code::DupGeneric,
                format!(
                    "generic rules {a} and {b} both handle {agent} against generic agents of arity {}",
                    list.join(", ")
                ),
            )
            .at(rules[second].span())
            .with_rules([a, b]),
        );
    }
    out
}

fn self_rule_is_symmetric(rule: &Rule) -> bool {
    let xs = rule.left.params();
    let ys = rule.right.params();
    let swap: HashMap<&Name, &Name> = xs.iter().zip(ys).chain(ys.iter().zip(xs)).collect();
    let Some(theta): Option<Vec<Equation>> = rule.rhs.iter().map(RhsEquation::to_equation).collect() else {
        return false;
    };
    let delta: Vec<Equation> = theta
        .iter()
        .map(|eq| Equation::new(swap_names(&eq.left, &swap), swap_names(&eq.right, &swap)))
        .collect();
    let pinned: Vec<Name> = xs.iter().chain(ys).cloned().collect();
    canonical_equations(&pinned, &theta) == canonical_equations(&pinned, &delta)
}

fn swap_names(t: &Term, swap: &HashMap<&Name, &Name>) -> Term {
    match t {
        Term::Name(n) => Term::Name(swap.get(n).map_or_else(|| n.clone(), |m| (*m).clone())),
        Term::Agent(s, args) => Term::Agent(s.clone(), args.iter().map(|a| swap_names(a, swap)).collect()),
    }
}

/// Generic rule constraint: whenever two generic rules `A >< ANY_m` and
/// `B >< ANY_n` with `arity(A) = n` and `arity(B) = m` both match the pair
/// `(A, B)`, an ordinary rule for `(A, B)` must exist. Runs on expanded
/// rules, where every generic rule has a fixed arity.
pub fn check_grc(rules: &[Rule]) -> Vec<Diagnostic> {
    let ordinary: HashSet<(String, String)> = rules
        .iter()
        .filter(|r| r.kind() == RuleKind::Ordinary)
        .filter_map(|r| Some(unordered(r.left.symbol()?, r.right.symbol()?)))
        .collect();

    let generic: Vec<(usize, &Rule, &Symbol, usize)> = rules
        .iter()
        .enumerate()
        .filter(|(_, r)| r.kind() == RuleKind::FixedGeneric)
        .filter_map(|(i, r)| {
            let g = r.generic_view()?;
            Some((i, r, g.agent, g.fixed_arity()))
        })
        .collect();
    let mut by_slot: HashMap<(usize, &str), (usize, &Rule)> = HashMap::new();
    for &(i, r, agent, m) in &generic {
        by_slot.entry((m, agent.name())).or_insert((i, r));
    }

    let mut out = Vec::new();
    let mut reported: HashSet<(String, String)> = HashSet::new();
    for &(i, r1, a, m) in &generic {
        // every B of arity m that has a rule against ANY_{arity(A)}
        for &(j, r2, b, n) in &generic {
            if n != a.arity() || b.arity() != m || a.name() == b.name() {
                continue;
            }
            if by_slot.get(&(m, a.name())).map(|e| e.0) != Some(i)
                || by_slot.get(&(n, b.name())).map(|e| e.0) != Some(j)
            {
                continue;
            }
            let key = unordered(a, b);
            if ordinary.contains(&key) || !reported.insert(key) {
                continue;
            }
            let (first, second) = if i <= j { (r1, r2) } else { (r2, r1) };
            let (fa, fb) = if i <= j { (a, b) } else { (b, a) };
            out.push(
                Diagnostic::new(
                    Code::GrcOverlap,
                    format!(
                        "generic rule overlap: {} ({} >< ANY/{}) and {} ({} >< ANY/{}) both match {} >< {} and no ordinary rule for that pair exists",
                        first.source_id(),
                        fa.name(),
                        fb.arity(),
                        second.source_id(),
                        fb.name(),
                        fa.arity(),
                        fa.name(),
                        fb.name()
                    ),
                )
                .at(second.span().or(first.span()))
                .with_rules([first.source_id().to_string(), second.source_id().to_string()]),
            );
        }
    }
    out
}

/// Warns about generic rules whose generic side can match the rule's own
/// agent. Reported once per source rule.
pub fn check_self_generic(rules: &[Rule]) -> Vec<Diagnostic> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rule in rules {
        let Some(g) = rule.generic_view() else { continue };
        let matches_self = match g.range {
            None => g.agent.arity() == g.fixed_arity(),
            Some(_) => g.agent.arity() >= g.fixed_arity(),
        };
        if matches_self && seen.insert(rule.source_id().to_string()) {
            out.push(
                Diagnostic::new(
                    Code::SelfGeneric,
                    format!(
                        "rule {} also matches {} >< {}; the binding follows lookup order",
                        rule.source_id(),
                        g.agent.name(),
                        g.agent.name()
                    ),
                )
                .at(rule.span())
                .with_rules([rule.source_id().to_string()]),
            );
        }
    }
    out
}

/// Largest arity among all symbols of the rules and the net.
pub fn max_arity<'a>(
    rules: impl IntoIterator<Item = &'a Rule>,
    net: Option<&Configuration>,
    declared: impl IntoIterator<Item = &'a Symbol>,
) -> usize {
    let mut max = 0;
    for s in declared {
        max = max.max(s.arity());
    }
    for rule in rules {
        rule.for_each_symbol(&mut |s| max = max.max(s.arity()));
    }
    if let Some(net) = net {
        let mut visit = |s: &Symbol| max = max.max(s.arity());
        net.interface.iter().for_each(|t| t.for_each_symbol(&mut visit));
        for eq in &net.equations {
            eq.left.for_each_symbol(&mut visit);
            eq.right.for_each_symbol(&mut visit);
        }
    }
    max
}
