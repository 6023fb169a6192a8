//! Runs one net under many strategies and compares the results.

use rayon::prelude::*;

use crate::canonical::{canonicalize_unchecked, CanonicalConfiguration};
use crate::machine::{normalize, Status, Strategy};
use crate::steps::{EngineError, StepResult};
use crate::table::RuleTable;
use crate::term::Configuration;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub strategy: Strategy,
    pub status: Status,
    pub steps: usize,
    pub canonical: CanonicalConfiguration,
}

impl RunSummary {
    pub fn terminated(&self) -> bool {
        self.status != Status::BudgetExhausted
    }

    fn agrees_with(&self, other: &RunSummary) -> bool {
        self.steps == other.steps
            && self.canonical == other.canonical
            && std::mem::discriminant(&self.status) == std::mem::discriminant(&other.status)
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub first: RunSummary,
    pub second: RunSummary,
    pub first_trace: Vec<StepResult>,
    pub second_trace: Vec<StepResult>,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub runs: Vec<RunSummary>,
    pub counterexample: Option<Counterexample>,
}

impl ConfluenceReport {
    /// All terminating runs reached the same canonical result in the same
    /// number of steps.
    pub fn is_consistent(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn terminated(&self) -> usize {
        self.runs.iter().filter(|r| r.terminated()).count()
    }

    pub fn exhausted(&self) -> usize {
        self.runs.len() - self.terminated()
    }
}

/// FIFO, LIFO, and `seeds` seeded strategies numbered from zero.
pub fn standard_strategies(seeds: usize) -> Vec<Strategy> {
    let mut out = vec![Strategy::Fifo, Strategy::Lifo];
    out.extend((0..seeds as u64).map(Strategy::Seeded));
    out
}

pub fn confluence_probe(
    config: &Configuration,
    table: &RuleTable,
    strategies: &[Strategy],
    budget: usize,
) -> Result<ConfluenceReport, EngineError> {
    let runs = strategies
        .par_iter()
        .map(|&strategy| {
            let out = normalize(config, table, strategy, budget, false)?;
            Ok(RunSummary {
                strategy,
                canonical: canonicalize_unchecked(&out.final_config),
                status: out.status,
                steps: out.steps,
            })
        })
        .collect::<Result<Vec<_>, EngineError>>()?;

    let mut terminated = runs.iter().filter(|r| r.terminated());
    let divergent = terminated
        .next()
        .and_then(|first| terminated.find(|r| !r.agrees_with(first)).map(|r| (first, r)));
    let counterexample = match divergent {
        None => None,
        Some((first, second)) => {
            let trace_of = |s: Strategy| -> Result<Vec<StepResult>, EngineError> {
                Ok(normalize(config, table, s, budget, true)?.trace.unwrap_or_default())
            };
            Some(Counterexample {
                first_trace: trace_of(first.strategy)?,
                second_trace: trace_of(second.strategy)?,
                first: first.clone(),
                second: second.clone(),
            })
        }
    };
    Ok(ConfluenceReport { runs, counterexample })
}
