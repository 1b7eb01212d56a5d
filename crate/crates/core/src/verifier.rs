//! Exhaustive verification of a strategy over all worlds and coin outcomes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::strategy::{run_strategy, validate_strategy_for, RunError, StrategyTree, ValidationReport};
use crate::world::{enumerate_worlds, render_coins, render_labels, Coin, GodOrder, ObservationLabel, RunConfig, World};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    pub world: World,
    pub coins: Vec<Coin>,
    pub labels: Vec<ObservationLabel>,
    /// `None` when the run failed; see `error`.
    pub guess: Option<GodOrder>,
    pub correct: bool,
    pub error: Option<RunError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub config: RunConfig,
    pub solved: bool,
    /// Ordered by world (enumeration order), then coin sequence.
    pub runs: Vec<RunRecord>,
    pub class_table: BTreeMap<Vec<ObservationLabel>, BTreeSet<GodOrder>>,
}

impl VerificationReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &RunRecord> {
        self.runs.iter().filter(|r| !r.correct)
    }

    /// Groups runs by their label sequence.
    pub fn outcome_table(&self) -> OutcomeTable {
        OutcomeTable::from_runs(&self.runs, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("strategy is invalid:\n{0}")]
pub struct InvalidStrategy(pub ValidationReport);

/// Every (world, coin sequence) pair the tree can meet: whenever Random is
/// asked both coin values are explored, and nothing else is.
pub fn enumerate_runs(tree: &StrategyTree, config: RunConfig) -> Vec<(World, Vec<Coin>)> {
    let mut out = Vec::new();
    for world in enumerate_worlds() {
        let mut pending = vec![Vec::new()];
        let mut done = Vec::new();
        while let Some(coins) = pending.pop() {
            match run_strategy(tree, &world, coins.clone(), config) {
                Err(RunError::CoinsExhausted { .. }) => {
                    for c in Coin::ALL.into_iter().rev() {
                        let mut more = coins.clone();
                        more.push(c);
                        pending.push(more);
                    }
                }
                _ => done.push(coins),
            }
        }
        done.sort();
        out.extend(done.into_iter().map(|c| (world, c)));
    }
    out
}

pub fn verify_strategy(tree: &StrategyTree, config: RunConfig) -> Result<VerificationReport, InvalidStrategy> {
    let validation = validate_strategy_for(tree, config);
    if !validation.is_valid() {
        return Err(InvalidStrategy(validation));
    }
    let runs: Vec<RunRecord> = enumerate_runs(tree, config)
        .into_iter()
        .map(
            |(world, coins)| match run_strategy(tree, &world, coins.clone(), config) {
                Ok(run) => RunRecord {
                    world,
                    correct: run.guess == world.order,
                    coins: run.coins_used,
                    labels: run.labels,
                    guess: Some(run.guess),
                    error: None,
                },
                Err(e) => RunRecord {
                    world,
                    labels: match &e {
                        RunError::MissingBranch { labels } => labels.clone(),
                        _ => Vec::new(),
                    },
                    coins,
                    guess: None,
                    correct: false,
                    error: Some(e),
                },
            },
        )
        .collect();
    let mut class_table: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
    for run in &runs {
        class_table
            .entry(run.labels.clone())
            .or_default()
            .insert(run.world.order);
    }
    Ok(VerificationReport {
        config,
        solved: runs.iter().all(|r| r.correct),
        runs,
        class_table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeRow {
    pub labels: Vec<ObservationLabel>,
    pub orders: BTreeSet<GodOrder>,
    /// Guesses of the runs in this row; empty at a truncated depth where no
    /// guess has been made yet.
    pub guesses: BTreeSet<GodOrder>,
    pub runs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeTable {
    pub depth: Option<usize>,
    pub rows: Vec<OutcomeRow>,
}

impl OutcomeTable {
    /// Groups runs by label sequence, or by its first `depth` labels.
    pub fn from_runs(runs: &[RunRecord], depth: Option<usize>) -> OutcomeTable {
        let mut rows: BTreeMap<Vec<ObservationLabel>, OutcomeRow> = BTreeMap::new();
        for run in runs {
            let key: Vec<_> = match depth {
                Some(d) => run.labels.iter().take(d).copied().collect(),
                None => run.labels.clone(),
            };
            let complete = depth.is_none_or(|d| run.labels.len() <= d);
            let row = rows.entry(key.clone()).or_insert_with(|| OutcomeRow {
                labels: key,
                orders: BTreeSet::new(),
                guesses: BTreeSet::new(),
                runs: 0,
            });
            row.orders.insert(run.world.order);
            row.runs += 1;
            if let (true, Some(g)) = (complete, run.guess) {
                row.guesses.insert(g);
            }
        }
        OutcomeTable {
            depth,
            rows: rows.into_values().collect(),
        }
    }
}

/// Outcome table of `tree`, optionally truncated to the first `depth` answers.
pub fn outcome_table(
    tree: &StrategyTree,
    config: RunConfig,
    depth: Option<usize>,
) -> Result<OutcomeTable, InvalidStrategy> {
    let report = verify_strategy(tree, config)?;
    Ok(OutcomeTable::from_runs(&report.runs, depth))
}

fn join_orders(orders: &BTreeSet<GodOrder>) -> String {
    orders.iter().map(|o| o.code()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for OutcomeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            write!(
                f,
                "{:<24} runs={:<2} orders: {}",
                render_labels(&row.labels),
                row.runs,
                join_orders(&row.orders)
            )?;
            if !row.guesses.is_empty() {
                write!(f, "  guess: {}", join_orders(&row.guesses))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for RunRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coins = if self.coins.is_empty() {
            "-".to_string()
        } else {
            render_coins(&self.coins)
        };
        write!(
            f,
            "{} coins={} labels={}",
            self.world,
            coins,
            render_labels(&self.labels)
        )?;
        match (&self.guess, &self.error) {
            (Some(g), _) => write!(f, " guess={} {}", g.code(), if self.correct { "ok" } else { "WRONG" }),
            (None, Some(e)) => write!(f, " error: {e}"),
            (None, None) => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::builtin_strategy;
    use crate::world::{ParadoxPolicy, RandomMode, Role};
    use crate::GodId;

    fn cfg(mode: RandomMode, policy: ParadoxPolicy) -> RunConfig {
        RunConfig::new(mode, policy)
    }

    #[test]
    fn run_counts() {
        let p3 = builtin_strategy("puzzle3").unwrap();
        let runs = enumerate_runs(&p3, cfg(RandomMode::TokenCoin, ParadoxPolicy::Explode));
        for world in enumerate_worlds() {
            let n = runs.iter().filter(|(w, _)| *w == world).count();
            let expected = if world.role_of(GodId::A) == Role::RandomGod {
                2
            } else {
                1
            };
            assert_eq!(n, expected, "{world}");
        }
        let p1 = builtin_strategy("puzzle1").unwrap();
        let runs = enumerate_runs(&p1, cfg(RandomMode::BoolosCoin, ParadoxPolicy::AnswerNo));
        assert_eq!(runs.len(), 20);
        let distinct: BTreeSet<_> = runs.iter().cloned().collect();
        assert_eq!(distinct.len(), runs.len());
    }

    #[test]
    fn builtin_solutions_verify() {
        let p1 = builtin_strategy("puzzle1").unwrap();
        let report = verify_strategy(&p1, cfg(RandomMode::BoolosCoin, ParadoxPolicy::AnswerNo)).unwrap();
        assert!(report.solved);
        let p3 = builtin_strategy("puzzle3").unwrap();
        let report = verify_strategy(&p3, cfg(RandomMode::TokenCoin, ParadoxPolicy::Explode)).unwrap();
        assert!(report.solved);
        assert_eq!(report.counterexamples().count(), 0);
    }

    #[test]
    fn puzzle1_fails_with_token_coin() {
        let p1 = builtin_strategy("puzzle1").unwrap();
        let report = verify_strategy(&p1, cfg(RandomMode::TokenCoin, ParadoxPolicy::AnswerNo)).unwrap();
        assert!(!report.solved);
        assert!(report
            .counterexamples()
            .any(|r| { r.world.role_of(GodId::A) == Role::RandomGod && r.coins == vec![Coin::Tails] }));
    }

    #[test]
    fn invalid_tree_is_rejected() {
        let q = crate::question::parse_question("is(A,true)").unwrap();
        let tree = StrategyTree::ask(GodId::A, q, []);
        let err = verify_strategy(&tree, cfg(RandomMode::TokenCoin, ParadoxPolicy::AnswerNo)).unwrap_err();
        assert!(err.to_string().contains("missing branch"));
    }
}
