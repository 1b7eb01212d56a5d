//! Why three questions are not enough once Random is truly random and the
//! interrogator only knows how the two words sort.

mod cases;
mod certificate;
mod channel;
mod search;

pub use cases::{enumerate_cases, Case};
pub use certificate::{
    pigeonhole_summary, prove_puzzle2_unsolvable, same_target_deficit, ControlExperiment, DeficitSummary, DemandRow,
    PatternCertificate, PigeonholeSummary, PrefixOccupancy, TheoremCertificate, SCOPE_QUOTE,
};
pub use channel::{class_swap_symmetric, ChannelModel};
pub use search::{
    forced_prefixes, minimal_sets, order_class_options, search_adaptive_solution, search_restricted, search_space,
    solve_plan, ClassIndex, ClassSet, FeasibilityResult, SearchSpace, SearchStats, TargetPlan, Witness, QUESTIONS,
};
