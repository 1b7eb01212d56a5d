use std::collections::BTreeMap;

use crate::question::QuestionAst;
use crate::world::{GodId, GodOrder, ObservationLabel};

/// Questions per interrogation.
pub const MAX_DEPTH: usize = 3;

/// An adaptive interrogation plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyTree {
    Ask(AskNode),
    /// Final identification of all three gods.
    Guess(GodOrder),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AskNode {
    pub target: GodId,
    pub question: QuestionAst,
    /// Keyed by the label the answer to this question receives.
    pub branches: BTreeMap<ObservationLabel, StrategyTree>,
}

impl StrategyTree {
    pub fn ask(
        target: GodId,
        question: QuestionAst,
        branches: impl IntoIterator<Item = (ObservationLabel, StrategyTree)>,
    ) -> StrategyTree {
        StrategyTree::Ask(AskNode {
            target,
            question,
            branches: branches.into_iter().collect(),
        })
    }

    pub fn guess(order: GodOrder) -> StrategyTree {
        StrategyTree::Guess(order)
    }

    /// Longest number of questions along any path.
    pub fn depth(&self) -> usize {
        match self {
            StrategyTree::Guess(_) => 0,
            StrategyTree::Ask(node) => 1 + node.branches.values().map(|t| t.depth()).max().unwrap_or(0),
        }
    }

    /// Follows `labels` from the root; `None` if a branch is missing.
    pub fn subtree(&self, labels: &[ObservationLabel]) -> Option<&StrategyTree> {
        match (labels.split_first(), self) {
            (None, _) => Some(self),
            (Some((first, rest)), StrategyTree::Ask(node)) => node.branches.get(first)?.subtree(rest),
            (Some(_), StrategyTree::Guess(_)) => None,
        }
    }
}
