//! Command implementations behind the `threegods` binary.
//!
//! Every command returns its rendered output and exit code instead of
//! printing, so tests can drive them without spawning a process.

pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use threegods_core::question::{answer_question, question_from_ref, Transcript};
use threegods_core::strategy::{builtin_strategy, parse_strategy, StrategyTree};
use threegods_core::world::{canonicalize, observation_classes, render_labels, Answer, Coin, GodId, World};
use threegods_core::{
    enumerate_worlds, prove_puzzle2_unsolvable, verify_strategy, ParadoxPolicy, RandomMode, RunConfig,
};

use report::{ClassesJson, EvalJson, ReportJson, WorldJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "threegods", version, about = "Model checker for the three gods puzzle")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Random picks a truthful or lying persona per question.
    Boolos,
    /// Random utters the coin's word.
    Coin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    AnswerNo,
    Explode,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long, value_enum, default_value_t = Mode::Coin)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Policy::AnswerNo)]
    pub policy: Policy,
}

impl ConfigArgs {
    pub fn config(&self) -> RunConfig {
        let mode = match self.mode {
            Mode::Boolos => RandomMode::BoolosCoin,
            Mode::Coin => RandomMode::TokenCoin,
        };
        let policy = match self.policy {
            Policy::AnswerNo => ParadoxPolicy::AnswerNo,
            Policy::Explode => ParadoxPolicy::Explode,
        };
        RunConfig::new(mode, policy)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the twelve worlds.
    Worlds,
    /// List the observation classes of a given length.
    Classes {
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Ask one god one question in one world.
    Eval {
        /// Question in the DSL, or `builtin:NAME`.
        #[arg(long)]
        question: String,
        /// e.g. `A=true,B=random,C=false,yif=1`
        #[arg(long)]
        world: String,
        #[arg(long)]
        to: String,
        /// Random's coin for this question: H or T.
        #[arg(long)]
        coin: Option<String>,
        #[command(flatten)]
        config: ConfigArgs,
        /// Earlier answers, one `<god> <first|second|boom>` per line.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Check a strategy against every world and coin outcome.
    Verify {
        /// `builtin:NAME` or a strategy file.
        #[arg(
            value_name = "STRATEGY",
            required_unless_present = "strategy",
            conflicts_with = "strategy"
        )]
        positional: Option<String>,
        #[arg(long)]
        strategy: Option<String>,
        #[command(flatten)]
        config: ConfigArgs,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Decide solvability by exhaustive search and print the certificate.
    Prove {
        #[arg(long)]
        puzzle: u8,
        #[arg(long)]
        timing: bool,
    },
}

/// Rendered output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output { stdout, code: EXIT_OK }
    }
}

/// A problem with the invocation itself; always exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Output, UsageError> {
    match &cli.command {
        Command::Worlds => Ok(cmd_worlds(cli.format)),
        Command::Classes { depth } => cmd_classes(*depth, cli.format),
        Command::Eval {
            question,
            world,
            to,
            coin,
            config,
            transcript,
        } => {
            let history = match transcript {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    Some(parse_transcript(&text)?)
                }
                None => None,
            };
            cmd_eval(
                question,
                world,
                to,
                coin.as_deref(),
                config.config(),
                history,
                cli.format,
            )
        }
        Command::Verify {
            positional,
            strategy,
            config,
            timing,
        } => {
            let reference = strategy.as_ref().or(positional.as_ref()).expect("clap requires one");
            cmd_verify(reference, config.config(), *timing, cli.format)
        }
        Command::Prove { puzzle, timing } => cmd_prove(*puzzle, *timing, cli.format),
    }
}

pub fn cmd_worlds(format: Format) -> Output {
    let worlds = enumerate_worlds();
    Output::ok(match format {
        Format::Text => worlds.iter().map(|w| format!("{}\n", w.spec())).collect(),
        Format::Json => to_json(&worlds.iter().map(WorldJson::from).collect::<Vec<_>>()),
    })
}

pub fn cmd_classes(depth: usize, format: Format) -> Result<Output, UsageError> {
    if depth == 0 || depth > 3 {
        return Err(usage(format!("depth must be 1, 2 or 3, got {depth}")));
    }
    let classes = observation_classes(depth);
    Ok(Output::ok(match format {
        Format::Text => classes.iter().map(|c| format!("{}\n", render_labels(c))).collect(),
        Format::Json => to_json(&ClassesJson { depth, classes }),
    }))
}

/// Parses `<god> <first|second|boom>` lines; blank lines and `#` comments
/// are skipped.
pub fn parse_transcript(text: &str) -> Result<Transcript, UsageError> {
    let mut transcript = Transcript::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || {
            usage(format!(
                "transcript line {}: expected `<god> <first|second|boom>`",
                n + 1
            ))
        };
        let mut words = line.split_whitespace();
        let (Some(god), Some(answer), None) = (words.next(), words.next(), words.next()) else {
            return Err(bad());
        };
        let god: GodId = god.parse().map_err(|_| bad())?;
        let answer: Answer = answer.parse().map_err(|_| bad())?;
        transcript.push(god, answer);
    }
    Ok(transcript)
}

fn parse_coin(text: &str) -> Result<Coin, UsageError> {
    let mut chars = text.trim().chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Coin::from_symbol(c.to_ascii_uppercase()),
        _ => None,
    }
    .ok_or_else(|| usage(format!("coin must be H or T, got `{text}`")))
}

pub fn cmd_eval(
    question: &str,
    world: &str,
    to: &str,
    coin: Option<&str>,
    config: RunConfig,
    transcript: Option<Transcript>,
    format: Format,
) -> Result<Output, UsageError> {
    let ast = question_from_ref(question).map_err(usage)?;
    let world: World = world.parse().map_err(usage)?;
    let respondent: GodId = to.parse().map_err(usage)?;
    let coin = coin.map(parse_coin).transpose()?;
    let history = transcript.clone().unwrap_or_default();
    let answer = answer_question(&ast, &world, respondent, coin, config, &history).map_err(usage)?;
    let label = transcript.map(|mut t| {
        t.push(respondent, answer);
        *canonicalize(&t.answers()).last().expect("just pushed")
    });
    Ok(Output::ok(match format {
        Format::Text => match label {
            Some(l) => format!("{}\nlabel: {}\n", answer.keyword(), l.keyword()),
            None => format!("{}\n", answer.keyword()),
        },
        Format::Json => to_json(&EvalJson { answer, label }),
    }))
}

pub fn load_strategy(reference: &str) -> Result<StrategyTree, UsageError> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return builtin_strategy(name).map_err(usage);
    }
    let text = std::fs::read_to_string(reference).map_err(|e| usage(format!("{reference}: {e}")))?;
    parse_strategy(&text).map_err(|e| usage(format!("{reference}: {e}")))
}

pub fn cmd_verify(reference: &str, config: RunConfig, timing: bool, format: Format) -> Result<Output, UsageError> {
    let tree = load_strategy(reference)?;
    let start = Instant::now();
    let report = verify_strategy(&tree, config).map_err(usage)?;
    let elapsed_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let json = ReportJson::new(reference, &report, elapsed_ms);
    let stdout = match format {
        Format::Text => json.to_text(),
        Format::Json => to_json(&json),
    };
    Ok(Output {
        stdout,
        code: if report.solved { EXIT_OK } else { EXIT_FAILED },
    })
}

pub fn cmd_prove(puzzle: u8, timing: bool, format: Format) -> Result<Output, UsageError> {
    if puzzle != 2 {
        return Err(usage(format!("no impossibility claim for puzzle {puzzle}")));
    }
    let start = Instant::now();
    let cert = prove_puzzle2_unsolvable();
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut stdout = match format {
        Format::Text => cert.to_string(),
        Format::Json => to_json(&cert),
    };
    if timing {
        match format {
            Format::Text => stdout.push_str(&format!("elapsed: {elapsed_ms:.1} ms\n")),
            Format::Json => {
                let mut value = serde_json::to_value(&cert).expect("certificate serializes");
                value["elapsed_ms"] = serde_json::json!(elapsed_ms);
                stdout = to_json(&value);
            }
        }
    }
    Ok(Output {
        stdout,
        code: if cert.confirms_unsolvable() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
    })
}
