//! Interaction nets in equational form, with generic and variadic rules.
//!
//! A program is parsed with [`syntax::parse_program`], checked and expanded
//! with [`program::compile`], and its net reduced with
//! [`machine::normalize`].

pub mod canonical;
pub mod confluence;
pub mod diag;
pub mod expand;
pub mod instantiate;
pub mod machine;
pub mod name;
pub mod program;
pub mod rule;
pub mod steps;
pub mod syntax;
pub mod table;
pub mod term;
pub mod validate;

pub use canonical::{canonicalize, CanonicalConfiguration};
pub use diag::{Code, Diagnostic, Severity, Span};
pub use machine::{normalize, reduce_once, Machine, NormalizeOutcome, Status, Strategy};
pub use name::{Name, NameSupply};
pub use program::{compile, load, Compiled, Options};
pub use rule::Rule;
pub use steps::{EngineError, StepKind, StepResult};
pub use table::RuleTable;
pub use term::{Configuration, Equation, Symbol, Term};
