//! Adaptive interrogation strategies.
//!
//! A strategy is a decision tree whose branches are keyed by observation
//! labels, so it can only react to what a language-ignorant interrogator
//! actually perceives.

mod builtin;
mod format;
mod run;
mod tree;
mod validate;

pub use builtin::{builtin_strategy, UnknownStrategy, BUILTIN_STRATEGIES};
pub use format::{parse_strategy, render_strategy, FormatError};
pub use run::{run_strategy, RunError, RunResult};
pub use tree::{AskNode, StrategyTree, MAX_DEPTH};
pub use validate::{
    possible_next_labels, validate_strategy, validate_strategy_for, Finding, FindingKind, ValidationReport,
};
