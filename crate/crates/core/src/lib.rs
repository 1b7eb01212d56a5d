//! Model checking for the three gods puzzle when the interrogator knows
//! nothing of the gods' language.
//!
//! The crate verifies interrogation strategies against every world and coin
//! outcome, and decides by exhaustive search whether any three-question
//! strategy exists when Random's words are truly random and the only handle
//! on the language is the sort order of its two words.

pub mod impossibility;
pub mod question;
pub mod strategy;
pub mod verifier;
pub mod world;

pub use impossibility::{
    prove_puzzle2_unsolvable, search_adaptive_solution, ChannelModel, FeasibilityResult, TheoremCertificate,
};
pub use question::{answer_question, parse_question, QuestionAst, TokenExpr, Transcript};
pub use strategy::{builtin_strategy, run_strategy, validate_strategy, StrategyTree};
pub use verifier::{verify_strategy, VerificationReport};
pub use world::{
    canonicalize, enumerate_worlds, observation_classes, Answer, Coin, GodId, GodOrder, ObservationLabel,
    ParadoxPolicy, RandomMode, Role, RunConfig, Token, World,
};
