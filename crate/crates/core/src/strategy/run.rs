use thiserror::Error;

use super::tree::{StrategyTree, MAX_DEPTH};
use crate::question::{answer_question, EvalError, Transcript};
use crate::world::{render_labels, Coin, GodId, GodOrder, ObservationLabel, Role, RunConfig, World};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub transcript: Transcript,
    pub labels: Vec<ObservationLabel>,
    pub guess: GodOrder,
    /// One per question put to Random, in order.
    pub coins_used: Vec<Coin>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("no branch for labels `{}`", render_labels(.labels))]
    MissingBranch { labels: Vec<ObservationLabel> },
    #[error("coin source exhausted at question {position}")]
    CoinsExhausted { position: usize },
    #[error("strategy asks exploded god {god}")]
    AskedExplodedGod { god: GodId },
    #[error("strategy asks more than {MAX_DEPTH} questions")]
    TooDeep,
    #[error("question {position}: {source}")]
    Eval { position: usize, source: EvalError },
}

/// Plays `tree` against `world`, drawing a coin each time Random is asked.
pub fn run_strategy(
    tree: &StrategyTree,
    world: &World,
    coins: impl IntoIterator<Item = Coin>,
    config: RunConfig,
) -> Result<RunResult, RunError> {
    let mut coins = coins.into_iter();
    let mut transcript = Transcript::new();
    let mut coins_used = Vec::new();
    let mut node = tree;
    loop {
        let ask = match node {
            StrategyTree::Guess(guess) => {
                return Ok(RunResult {
                    labels: transcript.labels(),
                    transcript,
                    guess: *guess,
                    coins_used,
                })
            }
            StrategyTree::Ask(ask) => ask,
        };
        let position = transcript.len() + 1;
        if position > MAX_DEPTH {
            return Err(RunError::TooDeep);
        }
        if transcript.has_exploded(ask.target) {
            return Err(RunError::AskedExplodedGod { god: ask.target });
        }
        let coin = if world.role_of(ask.target) == Role::RandomGod {
            let c = coins.next().ok_or(RunError::CoinsExhausted { position })?;
            coins_used.push(c);
            Some(c)
        } else {
            None
        };
        let answer = answer_question(&ask.question, world, ask.target, coin, config, &transcript)
            .map_err(|source| RunError::Eval { position, source })?;
        transcript.push(ask.target, answer);
        let labels = transcript.labels();
        let label = *labels.last().expect("just answered");
        node = ask.branches.get(&label).ok_or(RunError::MissingBranch { labels })?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::builtin_strategy;
    use crate::world::{ParadoxPolicy, RandomMode};
    use ObservationLabel::*;

    fn world(code: &str, yif: bool) -> World {
        World::new(code.parse().unwrap(), yif)
    }

    const BOOLOS: RunConfig = RunConfig {
        random_mode: RandomMode::BoolosCoin,
        paradox_policy: ParadoxPolicy::AnswerNo,
    };
    const COIN_EXPLODE: RunConfig = RunConfig {
        random_mode: RandomMode::TokenCoin,
        paradox_policy: ParadoxPolicy::Explode,
    };

    #[test]
    fn puzzle3_b_random() {
        let tree = builtin_strategy("puzzle3").unwrap();
        for yif in [false, true] {
            let w = world("TRF", yif);
            let run = run_strategy(&tree, &w, [], COIN_EXPLODE).unwrap();
            assert_eq!(run.labels, vec![Boom, Opaque]);
            assert_eq!(run.guess, w.order);
            assert!(run.coins_used.is_empty());
        }
    }

    #[test]
    fn puzzle1_a_random_boolos() {
        let tree = builtin_strategy("puzzle1").unwrap();
        for code in ["RTF", "RFT"] {
            for yif in [false, true] {
                for coin in Coin::ALL {
                    let run = run_strategy(&tree, &world(code, yif), [coin], BOOLOS).unwrap();
                    assert_eq!(run.guess.role_of(GodId::A), Role::RandomGod);
                    assert_eq!(run.coins_used, vec![coin]);
                }
            }
        }
    }

    #[test]
    fn puzzle1_c_random_labels() {
        let tree = builtin_strategy("puzzle1").unwrap();
        for yif in [false, true] {
            let w = world("TFR", yif);
            let run = run_strategy(&tree, &w, [], BOOLOS).unwrap();
            assert_eq!(run.labels, vec![Opaque, First, Second]);
            assert_eq!(run.guess, w.order);
        }
    }

    #[test]
    fn coin_exhaustion_and_missing_branch() {
        let tree = builtin_strategy("puzzle1").unwrap();
        assert_eq!(
            run_strategy(&tree, &world("RTF", true), [], BOOLOS),
            Err(RunError::CoinsExhausted { position: 1 })
        );
        let tree = StrategyTree::ask(
            GodId::A,
            crate::question::parse_question("is(A,true)").unwrap(),
            [(Same, StrategyTree::guess(world("TFR", true).order))],
        );
        assert_eq!(
            run_strategy(&tree, &world("TFR", true), [], BOOLOS),
            Err(RunError::MissingBranch { labels: vec![Opaque] })
        );
    }
}
