use std::fmt;

use serde::{Deserialize, Serialize};

use crate::world::{GodId, GodOrder, Role, Token};

/// A god order together with the words Random is forced to utter at the
/// positions among the first two questions where it is asked.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Case {
    pub order: GodOrder,
    /// `(question position, word)`; positions are 1-based.
    pub forced_coins: Vec<(usize, Token)>,
}

impl Case {
    pub fn is_split(&self) -> bool {
        !self.forced_coins.is_empty()
    }
}

/// Writes e.g. `R(first)TF` for Random at A answering the First word.
impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for god in GodId::ALL {
            let role = self.order.role_of(god);
            write!(f, "{}", role.initial())?;
            if role == Role::RandomGod && self.is_split() {
                let words: Vec<&str> = self.forced_coins.iter().map(|(_, t)| t.keyword()).collect();
                write!(f, "({})", words.join(","))?;
            }
        }
        Ok(())
    }
}

/// One case per god order and per combination of Random's words over the
/// first two questions, addressed to `q1_target` and `q2_target`.
pub fn enumerate_cases(q1_target: GodId, q2_target: GodId) -> Vec<Case> {
    let mut out = Vec::new();
    for order in GodOrder::all() {
        let random = order.random_god();
        let positions: Vec<usize> = [(1, q1_target), (2, q2_target)]
            .into_iter()
            .filter(|&(_, g)| g == random)
            .map(|(p, _)| p)
            .collect();
        for bits in 0..1usize << positions.len() {
            let forced_coins = positions
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let word = if bits >> (positions.len() - 1 - i) & 1 == 0 {
                        Token::First
                    } else {
                        Token::Second
                    };
                    (p, word)
                })
                .collect();
            out.push(Case { order, forced_coins });
        }
    }
    out
}
