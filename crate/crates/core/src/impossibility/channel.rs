use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::world::{all_token_sequences, canonicalize_tokens, swap_tokens, ObservationLabel, Token};

/// What the interrogator can distinguish about the words it hears.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelModel {
    /// Only sameness, plus ranks once both words have been heard.
    SortRank,
    /// Each word is recognised from its first occurrence. Control channel.
    AbsoluteToken,
}

impl ChannelModel {
    pub fn labels(self, tokens: &[Token]) -> Vec<ObservationLabel> {
        match self {
            ChannelModel::SortRank => canonicalize_tokens(tokens),
            ChannelModel::AbsoluteToken => tokens
                .iter()
                .map(|t| match t {
                    Token::First => ObservationLabel::First,
                    Token::Second => ObservationLabel::Second,
                })
                .collect(),
        }
    }

    /// Label sequences of length `depth` realised by some raw sequence, sorted.
    pub fn classes(self, depth: usize) -> Vec<Vec<ObservationLabel>> {
        let set: BTreeSet<_> = all_token_sequences(depth).iter().map(|s| self.labels(s)).collect();
        set.into_iter().collect()
    }

    /// True if two raw sequences that are global word swaps of each other
    /// both land in `class`.
    pub fn swap_symmetric(self, class: &[ObservationLabel]) -> bool {
        all_token_sequences(class.len())
            .iter()
            .any(|s| self.labels(s) == class && self.labels(&swap_tokens(s)) == class)
    }
}

impl fmt::Display for ChannelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelModel::SortRank => "sort-rank",
            ChannelModel::AbsoluteToken => "absolute-token",
        })
    }
}

/// Whether some pair of mutually swapped raw sequences both canonicalize to
/// `labels` under the sorting-rule channel.
pub fn class_swap_symmetric(labels: &[ObservationLabel]) -> bool {
    ChannelModel::SortRank.swap_symmetric(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ObservationLabel::*;

    #[test]
    fn symmetric_classes() {
        assert!(class_swap_symmetric(&[Opaque, Same, Same]));
        assert!(!class_swap_symmetric(&[Opaque, First, First]));
        let symmetric: Vec<_> = ChannelModel::SortRank
            .classes(3)
            .into_iter()
            .filter(|c| class_swap_symmetric(c))
            .collect();
        assert_eq!(symmetric, vec![vec![Opaque, Same, Same]]);
        assert!(ChannelModel::AbsoluteToken
            .classes(3)
            .iter()
            .all(|c| !ChannelModel::AbsoluteToken.swap_symmetric(c)));
    }

    #[test]
    fn class_counts_by_channel() {
        assert_eq!(ChannelModel::SortRank.classes(1).len(), 1);
        assert_eq!(ChannelModel::AbsoluteToken.classes(1).len(), 2);
        assert_eq!(ChannelModel::SortRank.classes(3).len(), 7);
        assert_eq!(ChannelModel::AbsoluteToken.classes(3).len(), 8);
    }
}
