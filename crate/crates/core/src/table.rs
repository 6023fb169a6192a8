use std::collections::HashMap;
use std::sync::Arc;

use crate::diag::{Code, Diagnostic};
use crate::rule::{Rule, RuleKind, Side};
use crate::term::Symbol;
use crate::validate::{check_grc, check_no_ambiguity};

/// Result of looking up the rule for an active pair `(a, b)`.
#[derive(Clone, Copy, Debug)]
pub enum Match<'t> {
    /// `flipped` is set when `a` corresponds to the rule's right side.
    Ordinary {
        rule: &'t Rule,
        flipped: bool,
    },
    /// `generic_side` says which of `a` (left) and `b` (right) plays the
    /// generic agent.
    Generic {
        rule: &'t Rule,
        generic_side: Side,
    },
    None,
}

impl<'t> Match<'t> {
    pub fn rule(&self) -> Option<&'t Rule> {
        match self {
            Match::Ordinary { rule, .. } | Match::Generic { rule, .. } => Some(rule),
            Match::None => None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Match::None)
    }
}

/// Maps active pairs to rules. Ordinary rules are stored under an unordered
/// key; fixed generic rules under (generic arity, agent).
#[derive(Clone, Debug, Default)]
pub struct RuleTable {
    rules: Vec<Rule>,
    symbols: HashMap<Arc<str>, u32>,
    ordinary: HashMap<(u32, u32), (usize, bool)>,
    generic: HashMap<(usize, u32), usize>,
}

impl RuleTable {
    pub fn empty() -> Self {
        RuleTable::default()
    }

    /// Builds a table from ordinary and fixed generic rules, rejecting the
    /// set if it is ambiguous or violates the generic rule constraint.
    pub fn build(rules: Vec<Rule>) -> Result<Self, Vec<Diagnostic>> {
        let mut errors: Vec<Diagnostic> = unexpanded(&rules);
        errors.extend(check_no_ambiguity(&rules));
        errors.extend(check_grc(&rules));
        errors.retain(Diagnostic::is_error);
        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(Self::build_unchecked(rules))
    }

    /// Builds a table without any checks. When two rules compete for a key
    /// the first one wins, so lookups stay deterministic even for rule sets
    /// that [`RuleTable::build`] would reject. Variadic rules are skipped.
    pub fn build_unchecked(rules: Vec<Rule>) -> Self {
        let mut table = RuleTable::default();
        for (idx, rule) in rules.iter().enumerate() {
            match rule.kind() {
                RuleKind::Ordinary => {
                    let (Some(a), Some(b)) = (rule.left.symbol(), rule.right.symbol()) else {
                        continue;
                    };
                    let ia = table.intern(a);
                    let ib = table.intern(b);
                    let (key, left_is_first) = if ia <= ib { ((ia, ib), true) } else { ((ib, ia), false) };
                    table.ordinary.entry(key).or_insert((idx, left_is_first));
                }
                RuleKind::FixedGeneric => {
                    let Some(g) = rule.generic_view() else { continue };
                    let agent = g.agent.clone();
                    let arity = g.fixed_arity();
                    let ia = table.intern(&agent);
                    table.generic.entry((arity, ia)).or_insert(idx);
                }
                RuleKind::Variadic => {}
            }
        }
        table.rules = rules;
        table
    }

    fn intern(&mut self, s: &Symbol) -> u32 {
        let next = self.symbols.len() as u32;
        *self.symbols.entry(Arc::from(s.name())).or_insert(next)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.ordinary.is_empty() && self.generic.is_empty()
    }

    pub fn ordinary_len(&self) -> usize {
        self.ordinary.len()
    }

    pub fn generic_len(&self) -> usize {
        self.generic.len()
    }

    /// The ordinary rule for the pair, if any.
    pub fn ordinary_rule(&self, a: &Symbol, b: &Symbol) -> Option<(&Rule, bool)> {
        let ia = *self.symbols.get(a.name())?;
        let ib = *self.symbols.get(b.name())?;
        let (key, a_first) = if ia <= ib { ((ia, ib), true) } else { ((ib, ia), false) };
        let &(idx, left_is_first) = self.ordinary.get(&key)?;
        let rule = &self.rules[idx];
        // for a self-pair both orientations agree
        let flipped = ia != ib && (a_first != left_is_first);
        Some((rule, flipped))
    }

    /// The generic rule `agent >< ANY_arity`, if any.
    pub fn generic_rule(&self, arity: usize, agent: &Symbol) -> Option<&Rule> {
        let ia = *self.symbols.get(agent.name())?;
        self.generic.get(&(arity, ia)).map(|&i| &self.rules[i])
    }

    /// Ordinary rules first; then `b >< ANY_{arity(a)}` with `a` in the
    /// generic position; then `a >< ANY_{arity(b)}`.
    pub fn lookup(&self, a: &Symbol, b: &Symbol) -> Match<'_> {
        if let Some((rule, flipped)) = self.ordinary_rule(a, b) {
            return Match::Ordinary { rule, flipped };
        }
        if let Some(rule) = self.generic_rule(a.arity(), b) {
            return Match::Generic {
                rule,
                generic_side: Side::Left,
            };
        }
        if let Some(rule) = self.generic_rule(b.arity(), a) {
            return Match::Generic {
                rule,
                generic_side: Side::Right,
            };
        }
        Match::None
    }
}

fn unexpanded(rules: &[Rule]) -> Vec<Diagnostic> {
    rules
        .iter()
        .filter(|r| r.kind() == RuleKind::Variadic)
        .map(|r| {
            Diagnostic::new(
                Code::GenericShape,
                format!("rule {} is variadic and must be expanded first", r.id),
            )
            .at(r.span())
            .with_rules([r.id.clone()])
        })
        .collect()
}
