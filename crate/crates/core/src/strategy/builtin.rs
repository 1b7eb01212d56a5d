use thiserror::Error;

use super::tree::StrategyTree;
use crate::question::builtin_question;
use crate::world::{GodId, GodOrder, ObservationLabel};

pub const BUILTIN_STRATEGIES: [&str; 2] = ["puzzle1", "puzzle3"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown builtin strategy `{0}` (expected puzzle1 or puzzle3)")]
pub struct UnknownStrategy(pub String);

fn order(code: &str) -> GodOrder {
    code.parse().expect("builtin order code")
}

fn q(name: &str) -> crate::question::QuestionAst {
    builtin_question(name).expect("builtin question")
}

/// The scripted solutions.
///
/// `puzzle1` (Boolos-coin Random, no paradoxes) finds Random with two
/// embedded questions, then asks a known non-Random god whether it is True.
/// `puzzle3` (token-coin Random, exploding heads) needs only two questions.
pub fn builtin_strategy(name: &str) -> Result<StrategyTree, UnknownStrategy> {
    use ObservationLabel::*;
    use StrategyTree as S;
    match name {
        "puzzle1" => {
            let leaf = |code| S::guess(order(code));
            // After `same`, only one word has been heard and B is Random.
            let b_random = S::ask(
                GodId::A,
                q("p1.q3"),
                [(Same, leaf("TRF")), (First, leaf("FRT")), (Second, leaf("FRT"))],
            );
            // After `second`, A is Random and B's reply to q2 ranked Second.
            let a_random = S::ask(GodId::B, q("p1.q3"), [(Second, leaf("RTF")), (First, leaf("RFT"))]);
            // After `first`, C is Random and B's reply to q2 ranked First.
            let c_random = S::ask(GodId::B, q("p1.q3"), [(First, leaf("FTR")), (Second, leaf("TFR"))]);
            Ok(S::ask(
                GodId::A,
                q("p1.q1"),
                [(
                    Opaque,
                    S::ask(
                        GodId::B,
                        q("p1.q2"),
                        [(Same, b_random), (Second, a_random), (First, c_random)],
                    ),
                )],
            ))
        }
        "puzzle3" => {
            let leaf = |code| S::guess(order(code));
            let after_boom = S::ask(GodId::C, q("p3.q2boom"), [(Boom, leaf("FRT")), (Opaque, leaf("TRF"))]);
            let after_word = S::ask(
                GodId::B,
                q("p3.q2tok"),
                [
                    (Boom, leaf("RTF")),
                    (Same, leaf("RFT")),
                    (First, leaf("TFR")),
                    (Second, leaf("FTR")),
                ],
            );
            Ok(S::ask(GodId::A, q("p3.q1"), [(Boom, after_boom), (Opaque, after_word)]))
        }
        other => Err(UnknownStrategy(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn puzzle3_shape() {
        let t = builtin_strategy("puzzle3").unwrap();
        assert_eq!(t.depth(), 2);
        let StrategyTree::Ask(boom) = t.subtree(&[ObservationLabel::Boom]).unwrap() else {
            panic!("expected a question after an explosion");
        };
        assert_eq!(boom.target, GodId::C);
        assert_eq!(
            t.subtree(&[ObservationLabel::Opaque, ObservationLabel::Second]),
            Some(&StrategyTree::guess(order("FTR")))
        );
    }

    #[test]
    fn puzzle1_shape() {
        let t = builtin_strategy("puzzle1").unwrap();
        assert_eq!(t.depth(), 3);
        use ObservationLabel::*;
        assert_eq!(
            t.subtree(&[Opaque, Same, Same]),
            Some(&StrategyTree::guess(order("TRF")))
        );
        assert!(builtin_strategy("puzzle2").is_err());
    }
}
