//! Indexed reducer. Every name maps to the places it occurs, so each step
//! costs time proportional to the terms it touches rather than to the size
//! of the whole configuration.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instantiate::apply_match;
use crate::name::{Name, NameSupply};
use crate::rule::Side;
use crate::steps::{split_side, EngineError, StepKind, StepResult};
use crate::table::RuleTable;
use crate::term::{checked_occurrences, Configuration, Equation, Term};

/// Which reducible equation is chosen next. Equations carry a sequence
/// number: initial equations are numbered in order, new ones are numbered
/// on creation, and a substitution target keeps its number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Oldest first.
    #[default]
    Fifo,
    /// Newest first.
    Lifo,
    /// Uniformly random, from a generator seeded with the value.
    Seeded(u64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Fifo => f.write_str("fifo"),
            Strategy::Lifo => f.write_str("lifo"),
            Strategy::Seeded(s) => write!(f, "seed:{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown strategy `{0}` (expected fifo, lifo or seed:N)")]
pub struct StrategyParseError(String);

impl FromStr for Strategy {
    type Err = StrategyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fifo" => Ok(Strategy::Fifo),
            "lifo" => Ok(Strategy::Lifo),
            other => other
                .strip_prefix("seed:")
                .and_then(|n| n.parse().ok())
                .map(Strategy::Seeded)
                .ok_or_else(|| StrategyParseError(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    NormalForm,
    /// Agent pairs without a rule, and closed loops `x = x`.
    Stuck(Vec<Equation>),
    BudgetExhausted,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::NormalForm => "normal form",
            Status::Stuck(_) => "stuck",
            Status::BudgetExhausted => "budget exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeOutcome {
    pub status: Status,
    pub final_config: Configuration,
    pub steps: usize,
    pub trace: Option<Vec<StepResult>>,
}

type EqId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Site {
    Interface(usize),
    Eq(EqId),
}

/// The (at most two) places a name occurs.
#[derive(Clone, Copy, Debug, Default)]
struct Occ([Option<Site>; 2]);

impl Occ {
    fn push(&mut self, site: Site) -> Result<(), EngineError> {
        match self.0.iter_mut().find(|s| s.is_none()) {
            Some(slot) => {
                *slot = Some(site);
                Ok(())
            }
            None => Err(EngineError::Invariant("a name occurs more than twice".into())),
        }
    }

    fn replace(&mut self, from: Site, to: Site) -> bool {
        match self.0.iter_mut().find(|s| **s == Some(from)) {
            Some(slot) => {
                *slot = Some(to);
                true
            }
            None => false,
        }
    }

    /// The occurrence left after discounting one at `here`.
    fn other_than(&self, here: Site) -> Option<Site> {
        match self.0 {
            [Some(a), b] if a == here => b,
            [a, Some(b)] if b == here => a,
            _ => None,
        }
    }
}

struct Slot {
    eq: Equation,
    seq: u64,
}

enum Agenda {
    Ordered {
        by_seq: BTreeMap<u64, EqId>,
        newest_first: bool,
    },
    Random {
        items: Vec<EqId>,
        pos: HashMap<EqId, usize>,
        rng: Box<ChaCha8Rng>,
    },
}

impl Agenda {
    fn new(strategy: Strategy) -> Self {
        match strategy {
            Strategy::Fifo | Strategy::Lifo => Agenda::Ordered {
                by_seq: BTreeMap::new(),
                newest_first: strategy == Strategy::Lifo,
            },
            Strategy::Seeded(seed) => Agenda::Random {
                items: Vec::new(),
                pos: HashMap::new(),
                rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
            },
        }
    }

    fn insert(&mut self, id: EqId, seq: u64) {
        match self {
            Agenda::Ordered { by_seq, .. } => {
                by_seq.insert(seq, id);
            }
            Agenda::Random { items, pos, .. } => {
                if let Entry::Vacant(e) = pos.entry(id) {
                    e.insert(items.len());
                    items.push(id);
                }
            }
        }
    }

    fn remove(&mut self, id: EqId, seq: u64) {
        match self {
            Agenda::Ordered { by_seq, .. } => {
                by_seq.remove(&seq);
            }
            Agenda::Random { items, pos, .. } => {
                if let Some(i) = pos.remove(&id) {
                    items.swap_remove(i);
                    if let Some(&moved) = items.get(i) {
                        pos.insert(moved, i);
                    }
                }
            }
        }
    }

    fn pop(&mut self) -> Option<EqId> {
        match self {
            Agenda::Ordered { by_seq, newest_first } => {
                let entry = if *newest_first {
                    by_seq.pop_last()
                } else {
                    by_seq.pop_first()
                };
                entry.map(|(_, id)| id)
            }
            Agenda::Random { items, pos, rng } => {
                if items.is_empty() {
                    return None;
                }
                let i = rng.gen_range(0..items.len());
                let id = items.swap_remove(i);
                pos.remove(&id);
                if let Some(&moved) = items.get(i) {
                    pos.insert(moved, i);
                }
                Some(id)
            }
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Agenda::Ordered { by_seq, .. } => by_seq.is_empty(),
            Agenda::Random { items, .. } => items.is_empty(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Action {
    Communication { side: Side, partner: EqId },
    Substitution { side: Side, target: EqId },
    Collect { side: Side, slot: usize },
    Interaction,
}

impl Action {
    fn kind(self) -> StepKind {
        match self {
            Action::Communication { .. } => StepKind::Communication,
            Action::Substitution { .. } => StepKind::Substitution,
            Action::Collect { .. } => StepKind::Collect,
            Action::Interaction => StepKind::Interaction,
        }
    }
}

/// A configuration under reduction.
pub struct Machine<'t> {
    table: &'t RuleTable,
    interface: Vec<Term>,
    slots: Vec<Option<Slot>>,
    free: Vec<EqId>,
    released: Vec<EqId>,
    index: HashMap<Name, Occ>,
    agenda: Agenda,
    next_seq: u64,
    supply: NameSupply,
    steps: usize,
}

impl<'t> Machine<'t> {
    pub fn new(config: &Configuration, table: &'t RuleTable, strategy: Strategy) -> Result<Self, EngineError> {
        checked_occurrences(config).map_err(|v| EngineError::Invariant(v.to_string()))?;
        let supply = NameSupply::above(config.names());
        let mut m = Machine {
            table,
            interface: config.interface.clone(),
            slots: Vec::with_capacity(config.equations.len()),
            free: Vec::new(),
            released: Vec::new(),
            index: HashMap::new(),
            agenda: Agenda::new(strategy),
            next_seq: 0,
            supply,
            steps: 0,
        };
        for (i, t) in config.interface.iter().enumerate() {
            let mut res = Ok(());
            t.for_each_name(&mut |n| {
                if res.is_ok() {
                    res = m.index.entry(n.clone()).or_default().push(Site::Interface(i));
                }
            });
            res?;
        }
        let ids: Vec<EqId> = config
            .equations
            .iter()
            .map(|e| {
                let id = m.alloc(e.clone());
                m.index_new(id, None).map(|_| id)
            })
            .collect::<Result<_, _>>()?;
        for id in ids {
            m.schedule(id);
        }
        Ok(m)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn is_exhausted(&self) -> bool {
        self.agenda.is_empty()
    }

    /// The current configuration, equations in sequence order.
    pub fn configuration(&self) -> Configuration {
        let mut eqs: Vec<&Slot> = self.slots.iter().flatten().collect();
        eqs.sort_by_key(|s| s.seq);
        Configuration::new(self.interface.clone(), eqs.into_iter().map(|s| s.eq.clone()).collect())
    }

    pub fn into_configuration(self) -> Configuration {
        let mut eqs: Vec<Slot> = self.slots.into_iter().flatten().collect();
        eqs.sort_by_key(|s| s.seq);
        Configuration::new(self.interface, eqs.into_iter().map(|s| s.eq).collect())
    }

    /// Equations no rule will ever apply to: agent pairs without a rule and
    /// closed loops.
    pub fn stuck_equations(&self) -> Vec<Equation> {
        let mut eqs: Vec<&Slot> = self
            .slots
            .iter()
            .flatten()
            .filter(|s| s.eq.is_degenerate_loop() || s.eq.is_active_pair())
            .collect();
        eqs.sort_by_key(|s| s.seq);
        eqs.into_iter().map(|s| s.eq.clone()).collect()
    }

    /// Applies one reduction, or returns `None` when nothing is reducible.
    pub fn step(&mut self) -> Result<Option<StepResult>, EngineError> {
        Ok(self.advance(true)?.flatten())
    }

    fn alloc(&mut self, eq: Equation) -> EqId {
        let slot = Slot { eq, seq: self.next_seq };
        self.next_seq += 1;
        match self.free.pop() {
            Some(id) => {
                self.slots[id] = Some(slot);
                id
            }
            None => {
                self.slots.push(Some(slot));
                self.slots.len() - 1
            }
        }
    }

    fn slot(&self, id: EqId) -> &Slot {
        self.slots[id].as_ref().expect("live equation")
    }

    fn release(&mut self, id: EqId) -> Slot {
        let slot = self.slots[id].take().expect("live equation");
        self.agenda.remove(id, slot.seq);
        // reused only after the step, so sites of the old equation stay unambiguous
        self.released.push(id);
        slot
    }

    /// Registers the names of a new equation. Names with an occurrence at
    /// `moved_from` are moved, others are added.
    fn index_new(&mut self, id: EqId, moved_from: Option<Site>) -> Result<(), EngineError> {
        let slot = self.slots[id].as_ref().expect("live equation");
        let index = &mut self.index;
        let mut res = Ok(());
        slot.eq.for_each_name(&mut |n| {
            if res.is_err() {
                return;
            }
            let occ = index.entry(n.clone()).or_default();
            if !moved_from.is_some_and(|from| occ.replace(from, Site::Eq(id))) {
                res = occ.push(Site::Eq(id));
            }
        });
        res
    }

    fn move_names(&mut self, t: &Term, from: Site, to: Site) -> Result<(), EngineError> {
        let mut res = Ok(());
        t.for_each_name(&mut |n| {
            if res.is_ok() && !self.index.get_mut(n).is_some_and(|o| o.replace(from, to)) {
                res = Err(EngineError::Invariant(format!("index lost `{}`", n.display())));
            }
        });
        res
    }

    fn schedule(&mut self, id: EqId) {
        if self.classify(id).is_some() {
            let seq = self.slot(id).seq;
            self.agenda.insert(id, seq);
        }
    }

    fn classify(&self, id: EqId) -> Option<Action> {
        let eq = &self.slot(id).eq;
        if let (Term::Agent(a, _), Term::Agent(b, _)) = (&eq.left, &eq.right) {
            return (!self.table.lookup(a, b).is_none()).then_some(Action::Interaction);
        }
        let mut best: Option<Action> = None;
        for side in [Side::Left, Side::Right] {
            let t = match side {
                Side::Left => &eq.left,
                Side::Right => &eq.right,
            };
            let Term::Name(x) = t else { continue };
            let found = match self.index.get(x).and_then(|o| o.other_than(Site::Eq(id))) {
                None => continue,
                Some(Site::Eq(j)) if j == id => continue,
                Some(Site::Eq(j)) => {
                    let other = &self.slot(j).eq;
                    if other.left.as_name() == Some(x) || other.right.as_name() == Some(x) {
                        Action::Communication { side, partner: j }
                    } else {
                        Action::Substitution { side, target: j }
                    }
                }
                Some(Site::Interface(slot)) => Action::Collect { side, slot },
            };
            if best.is_none_or(|b| found.kind() < b.kind()) {
                best = Some(found);
            }
        }
        best
    }

    /// `Ok(None)` when exhausted; otherwise the step, recorded if asked.
    fn advance(&mut self, record: bool) -> Result<Option<Option<StepResult>>, EngineError> {
        let Some(id) = self.agenda.pop() else {
            return Ok(None);
        };
        let action = self
            .classify(id)
            .ok_or_else(|| EngineError::Invariant("scheduled equation is not reducible".into()))?;
        let result = match action {
            Action::Communication { side, partner } => self.communicate(id, side, partner, record)?,
            Action::Substitution { side, target } => self.substitute(id, side, target, record)?,
            Action::Collect { side, slot } => self.collect(id, side, slot, record)?,
            Action::Interaction => self.interact(id, record)?,
        };
        self.free.append(&mut self.released);
        self.steps += 1;
        Ok(Some(result))
    }

    fn take_name(&mut self, eq: &Equation, side: Side) -> Result<Name, EngineError> {
        let x = match side {
            Side::Left => eq.left.as_name(),
            Side::Right => eq.right.as_name(),
        }
        .cloned()
        .ok_or_else(|| EngineError::Invariant("selected side is not a name".into()))?;
        self.index.remove(&x);
        Ok(x)
    }

    fn communicate(
        &mut self,
        id: EqId,
        side: Side,
        partner: EqId,
        record: bool,
    ) -> Result<Option<StepResult>, EngineError> {
        let e = self.release(id).eq;
        let p = self.release(partner).eq;
        let before = record.then(|| e.clone());
        let x = self.take_name(&e, side)?;
        let partner_side = if p.left.as_name() == Some(&x) {
            Side::Left
        } else {
            Side::Right
        };
        let (_, t) = split_side(e, side);
        let (_, u) = split_side(p, partner_side);
        let new = self.alloc(Equation::new(t, u));
        let eq = &self.slot(new).eq;
        let (t, u) = (eq.left.clone(), eq.right.clone());
        self.move_names(&t, Site::Eq(id), Site::Eq(new))?;
        self.move_names(&u, Site::Eq(partner), Site::Eq(new))?;
        self.schedule(new);
        Ok(before.map(|before| StepResult {
            kind: StepKind::Communication,
            rule_id: None,
            before,
            after: vec![self.slot(new).eq.clone()],
            fresh: Vec::new(),
        }))
    }

    fn substitute(
        &mut self,
        id: EqId,
        side: Side,
        target: EqId,
        record: bool,
    ) -> Result<Option<StepResult>, EngineError> {
        let e = self.release(id).eq;
        let before = record.then(|| e.clone());
        let x = self.take_name(&e, side)?;
        let (_, t) = split_side(e, side);
        self.move_names(&t, Site::Eq(id), Site::Eq(target))?;
        let seq = self.slot(target).seq;
        self.agenda.remove(target, seq);
        let goal = &mut self.slots[target].as_mut().expect("live equation").eq;
        let into = if goal.left.is_agent() && goal.left.contains_name(&x) {
            &mut goal.left
        } else {
            &mut goal.right
        };
        into.replace_name(&x, t)
            .map_err(|_| EngineError::Invariant("substitution target lost the name".into()))?;
        self.schedule(target);
        Ok(before.map(|before| StepResult {
            kind: StepKind::Substitution,
            rule_id: None,
            before,
            after: vec![self.slot(target).eq.clone()],
            fresh: Vec::new(),
        }))
    }

    fn collect(&mut self, id: EqId, side: Side, slot: usize, record: bool) -> Result<Option<StepResult>, EngineError> {
        let e = self.release(id).eq;
        let before = record.then(|| e.clone());
        let x = self.take_name(&e, side)?;
        let (_, t) = split_side(e, side);
        self.move_names(&t, Site::Eq(id), Site::Interface(slot))?;
        self.interface[slot]
            .replace_name(&x, t)
            .map_err(|_| EngineError::Invariant("interface entry lost the name".into()))?;
        Ok(before.map(|before| StepResult {
            kind: StepKind::Collect,
            rule_id: None,
            before,
            after: Vec::new(),
            fresh: Vec::new(),
        }))
    }

    fn interact(&mut self, id: EqId, record: bool) -> Result<Option<StepResult>, EngineError> {
        let e = self.release(id).eq;
        let before = record.then(|| e.clone());
        let (Some(a), Some(b)) = (e.left.symbol(), e.right.symbol()) else {
            return Err(EngineError::Invariant("interaction on a non-active pair".into()));
        };
        let m = self.table.lookup(a, b);
        let rule_id = m
            .rule()
            .map(|r| r.id.clone())
            .ok_or_else(|| EngineError::Invariant("interaction without a rule".into()))?;
        let inst = apply_match(m, e, &mut self.supply)?;
        let after = record.then(|| inst.equations.clone());
        let mut ids = Vec::with_capacity(inst.equations.len());
        for eq in inst.equations {
            let new = self.alloc(eq);
            self.index_new(new, Some(Site::Eq(id)))?;
            ids.push(new);
        }
        for new in ids {
            self.schedule(new);
        }
        Ok(before.map(|before| StepResult {
            kind: StepKind::Interaction,
            rule_id: Some(rule_id),
            before,
            after: after.unwrap_or_default(),
            fresh: inst.fresh,
        }))
    }

    /// Runs until nothing is reducible or `budget` steps have been applied.
    pub fn run(&mut self, budget: usize, trace: Option<&mut Vec<StepResult>>) -> Result<(), EngineError> {
        let mut trace = trace;
        while self.steps < budget {
            match self.advance(trace.is_some())? {
                None => break,
                Some(step) => {
                    if let (Some(t), Some(s)) = (trace.as_deref_mut(), step) {
                        t.push(s);
                    }
                }
            }
        }
        Ok(())
    }

    fn status(&self) -> Status {
        if !self.agenda.is_empty() {
            return Status::BudgetExhausted;
        }
        let stuck = self.stuck_equations();
        if stuck.is_empty() {
            Status::NormalForm
        } else {
            Status::Stuck(stuck)
        }
    }
}

/// Reduces `config` until no rule applies or `budget` steps have been taken.
pub fn normalize(
    config: &Configuration,
    table: &RuleTable,
    strategy: Strategy,
    budget: usize,
    trace: bool,
) -> Result<NormalizeOutcome, EngineError> {
    let mut m = Machine::new(config, table, strategy)?;
    let mut steps = trace.then(Vec::new);
    m.run(budget, steps.as_mut())?;
    let status = m.status();
    let n = m.steps();
    Ok(NormalizeOutcome {
        status,
        final_config: m.into_configuration(),
        steps: n,
        trace: steps,
    })
}

/// One step from `config` under `strategy`, with the resulting
/// configuration. `None` when nothing is reducible.
pub fn reduce_once(
    config: &Configuration,
    table: &RuleTable,
    strategy: Strategy,
) -> Result<Option<(StepResult, Configuration)>, EngineError> {
    let mut m = Machine::new(config, table, strategy)?;
    Ok(m.step()?.map(|s| (s, m.into_configuration())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::{Pattern, RhsEquation, RhsTerm, Rule};
    use crate::term::Symbol;

    fn sym(n: &str, k: usize) -> Symbol {
        Symbol::new(n, k)
    }
    fn a(n: &str, args: Vec<Term>) -> Term {
        Term::agent(sym(n, args.len()), args)
    }
    fn v(n: &Name) -> Term {
        Term::Name(n.clone())
    }
    fn rv(n: &Name) -> RhsTerm {
        RhsTerm::Name(n.clone())
    }

    /// Add(r,y) >< S(x) => r~S(w), x~Add(w,y); Add(r,y) >< Z => r~y;
    fn addition() -> RuleTable {
        let (r, y, x, w) = (
            Name::new(0, "r"),
            Name::new(1, "y"),
            Name::new(2, "x"),
            Name::new(3, "w"),
        );
        let add = |p: Vec<Name>| Pattern::Agent {
            symbol: sym("Add", 2),
            params: p,
        };
        let succ = Rule::new(
            "1",
            add(vec![r.clone(), y.clone()]),
            Pattern::Agent {
                symbol: sym("S", 1),
                params: vec![x.clone()],
            },
            vec![
                RhsEquation::new(rv(&r), RhsTerm::symbol(sym("S", 1), vec![rv(&w)])),
                RhsEquation::new(rv(&x), RhsTerm::symbol(sym("Add", 2), vec![rv(&w), rv(&y)])),
            ],
        );
        let zero = Rule::new(
            "2",
            add(vec![r.clone(), y.clone()]),
            Pattern::Agent {
                symbol: sym("Z", 0),
                params: vec![],
            },
            vec![RhsEquation::new(rv(&r), rv(&y))],
        );
        RuleTable::build(vec![succ, zero]).unwrap()
    }

    fn num(k: usize) -> Term {
        (0..k).fold(a("Z", vec![]), |t, _| a("S", vec![t]))
    }

    fn sum(x: usize, y: usize) -> Configuration {
        let r = Name::new(100, "r");
        Configuration::new(vec![v(&r)], vec![Equation::new(num(x), a("Add", vec![v(&r), num(y)]))])
    }

    #[test]
    fn one_plus_one() {
        let table = addition();
        let out = normalize(&sum(1, 1), &table, Strategy::Fifo, 100, true).unwrap();
        assert_eq!(out.status, Status::NormalForm);
        assert_eq!(out.final_config, Configuration::new(vec![num(2)], vec![]));
        assert_eq!(out.steps, 4);
        let kinds: Vec<_> = out.trace.unwrap().iter().map(|s| s.kind).collect();
        assert_eq!(kinds[0], StepKind::Interaction);
        assert_eq!(*kinds.last().unwrap(), StepKind::Collect);
    }

    #[test]
    fn strategies_agree_on_addition() {
        let table = addition();
        let c = sum(3, 2);
        let fifo = normalize(&c, &table, Strategy::Fifo, 1000, false).unwrap();
        for s in [Strategy::Lifo, Strategy::Seeded(1), Strategy::Seeded(99)] {
            let out = normalize(&c, &table, s, 1000, false).unwrap();
            assert_eq!(out.final_config, fifo.final_config);
            assert_eq!(out.steps, fifo.steps);
        }
        assert_eq!(fifo.final_config.interface, vec![num(5)]);
    }

    #[test]
    fn free_name_is_already_normal() {
        let x = Name::new(0, "x");
        let c = Configuration::new(vec![v(&x)], vec![]);
        let out = normalize(&c, &RuleTable::empty(), Strategy::Fifo, 10, false).unwrap();
        assert_eq!(out.status, Status::NormalForm);
        assert_eq!(out.steps, 0);
        assert_eq!(out.final_config, c);
    }

    #[test]
    fn unmatched_pair_is_stuck() {
        let r = Name::new(0, "r");
        let pair = Equation::new(a("A", vec![]), a("B", vec![]));
        let c = Configuration::new(vec![v(&r)], vec![pair.clone()]);
        let table = RuleTable::empty();
        assert!(reduce_once(&c, &table, Strategy::Fifo).unwrap().is_none());
        let out = normalize(&c, &table, Strategy::Fifo, 10, false).unwrap();
        assert_eq!(out.status, Status::Stuck(vec![pair]));
    }

    #[test]
    fn loop_is_stuck() {
        let x = Name::new(0, "x");
        let c = Configuration::new(vec![], vec![Equation::new(v(&x), v(&x))]);
        let out = normalize(&c, &RuleTable::empty(), Strategy::Fifo, 10, false).unwrap();
        assert!(matches!(out.status, Status::Stuck(ref e) if e.len() == 1));
    }

    #[test]
    fn budget_is_respected() {
        let out = normalize(&sum(1, 1), &addition(), Strategy::Fifo, 1, true).unwrap();
        assert_eq!(out.status, Status::BudgetExhausted);
        assert_eq!(out.steps, 1);
        assert_eq!(out.trace.unwrap().len(), 1);
    }

    #[test]
    fn strategy_round_trips_through_text() {
        for s in [Strategy::Fifo, Strategy::Lifo, Strategy::Seeded(42)] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("random".parse::<Strategy>().is_err());
    }

    #[test]
    fn rejects_overused_names() {
        let x = Name::new(0, "x");
        let c = Configuration::new(vec![v(&x), v(&x)], vec![Equation::new(v(&x), num(0))]);
        assert!(Machine::new(&c, &RuleTable::empty(), Strategy::Fifo).is_err());
    }
}
