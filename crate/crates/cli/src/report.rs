//! JSON shapes for command output. Field order here is the key order on
//! the wire, so serializing a parsed report reproduces it byte for byte.

use serde::{Deserialize, Serialize};
use threegods_core::verifier::{RunRecord, VerificationReport};
use threegods_core::world::{render_coins, render_labels, Answer, GodOrder, ObservationLabel, Role, World};
use threegods_core::RunConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorldJson {
    #[serde(rename = "A")]
    pub a: Role,
    #[serde(rename = "B")]
    pub b: Role,
    #[serde(rename = "C")]
    pub c: Role,
    pub yes_is_first: bool,
}

impl From<&World> for WorldJson {
    fn from(w: &World) -> WorldJson {
        let [a, b, c] = w.order.roles();
        WorldJson {
            a,
            b,
            c,
            yes_is_first: w.yes_is_first,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessJson {
    #[serde(rename = "A")]
    pub a: Role,
    #[serde(rename = "B")]
    pub b: Role,
    #[serde(rename = "C")]
    pub c: Role,
}

impl From<GodOrder> for GuessJson {
    fn from(o: GodOrder) -> GuessJson {
        let [a, b, c] = o.roles();
        GuessJson { a, b, c }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunJson {
    pub world: WorldJson,
    /// Coin outcomes consumed, e.g. `"HT"`; empty when Random was never asked.
    pub coins: String,
    pub labels: Vec<ObservationLabel>,
    pub guess: Option<GuessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub correct: bool,
}

impl From<&RunRecord> for RunJson {
    fn from(r: &RunRecord) -> RunJson {
        RunJson {
            world: WorldJson::from(&r.world),
            coins: render_coins(&r.coins),
            labels: r.labels.clone(),
            guess: r.guess.map(GuessJson::from),
            error: r.error.as_ref().map(|e| e.to_string()),
            correct: r.correct,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    /// The strategy reference as given on the command line.
    pub puzzle: String,
    pub config: RunConfig,
    pub solved: bool,
    pub counterexamples: usize,
    pub runs: Vec<RunJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl ReportJson {
    pub fn new(puzzle: &str, report: &VerificationReport, elapsed_ms: Option<f64>) -> ReportJson {
        ReportJson {
            puzzle: puzzle.to_string(),
            config: report.config,
            solved: report.solved,
            counterexamples: report.counterexamples().count(),
            runs: report.runs.iter().map(RunJson::from).collect(),
            elapsed_ms,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "strategy {}: {} runs, {} counterexamples\n",
            self.puzzle,
            self.runs.len(),
            self.counterexamples
        );
        for run in &self.runs {
            let w = &run.world;
            let coins = if run.coins.is_empty() { "-" } else { &run.coins };
            out.push_str(&format!(
                "  A={},B={},C={},yif={} coins={} labels={} ",
                w.a.keyword(),
                w.b.keyword(),
                w.c.keyword(),
                u8::from(w.yes_is_first),
                coins,
                render_labels(&run.labels)
            ));
            match (&run.guess, &run.error) {
                (Some(g), _) => out.push_str(&format!(
                    "guess={}{}{} {}\n",
                    g.a.initial(),
                    g.b.initial(),
                    g.c.initial(),
                    if run.correct { "ok" } else { "WRONG" }
                )),
                (None, Some(e)) => out.push_str(&format!("error: {e}\n")),
                (None, None) => out.push('\n'),
            }
        }
        out.push_str(if self.solved {
            "verdict: solved\n"
        } else {
            "verdict: NOT solved\n"
        });
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms:.1} ms\n"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesJson {
    pub depth: usize,
    pub classes: Vec<Vec<ObservationLabel>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalJson {
    pub answer: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<ObservationLabel>,
}
