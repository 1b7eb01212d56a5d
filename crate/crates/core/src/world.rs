//! Worlds, answer tokens, and the observation channel the interrogator sees.
//!
//! The two answer words of the gods' language are never modelled as strings.
//! Any two distinct words can be put in a fixed order by a universal sorting
//! rule, so a word is identified with its rank under that rule.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the three gods, named by position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GodId {
    A,
    B,
    C,
}

impl GodId {
    pub const ALL: [GodId; 3] = [GodId::A, GodId::B, GodId::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            GodId::A => "A",
            GodId::B => "B",
            GodId::C => "C",
        }
    }
}

impl fmt::Display for GodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GodId {
    type Err = WorldParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(GodId::A),
            "B" => Ok(GodId::B),
            "C" => Ok(GodId::C),
            other => Err(WorldParseError::UnknownGod(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "true")]
    TrueGod,
    #[serde(rename = "false")]
    FalseGod,
    #[serde(rename = "random")]
    RandomGod,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::TrueGod, Role::FalseGod, Role::RandomGod];

    /// Keyword used by the question DSL, world specs and strategy files.
    pub fn keyword(self) -> &'static str {
        match self {
            Role::TrueGod => "true",
            Role::FalseGod => "false",
            Role::RandomGod => "random",
        }
    }

    pub fn initial(self) -> char {
        match self {
            Role::TrueGod => 'T',
            Role::FalseGod => 'F',
            Role::RandomGod => 'R',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Role {
    type Err = WorldParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" => Ok(Role::TrueGod),
            "false" => Ok(Role::FalseGod),
            "random" => Ok(Role::RandomGod),
            other => Err(WorldParseError::UnknownRole(other.to_string())),
        }
    }
}

/// An answer word, identified by its rank under the universal sorting rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Token {
    First,
    Second,
}

impl Token {
    pub const ALL: [Token; 2] = [Token::First, Token::Second];

    pub fn other(self) -> Token {
        match self {
            Token::First => Token::Second,
            Token::Second => Token::First,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Token::First => "first",
            Token::Second => "second",
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A bijection from gods to roles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodOrder([Role; 3]);

impl GodOrder {
    /// All six orders, lexicographic in `Role` order (TFR, TRF, FTR, FRT, RTF, RFT).
    pub fn all() -> [GodOrder; 6] {
        use Role::*;
        [
            GodOrder([TrueGod, FalseGod, RandomGod]),
            GodOrder([TrueGod, RandomGod, FalseGod]),
            GodOrder([FalseGod, TrueGod, RandomGod]),
            GodOrder([FalseGod, RandomGod, TrueGod]),
            GodOrder([RandomGod, TrueGod, FalseGod]),
            GodOrder([RandomGod, FalseGod, TrueGod]),
        ]
    }

    /// Builds an order from the roles of A, B and C; `None` unless bijective.
    pub fn new(roles: [Role; 3]) -> Option<GodOrder> {
        let distinct: BTreeSet<Role> = roles.iter().copied().collect();
        (distinct.len() == 3).then_some(GodOrder(roles))
    }

    pub fn roles(&self) -> [Role; 3] {
        self.0
    }

    pub fn role_of(&self, god: GodId) -> Role {
        self.0[god.index()]
    }

    pub fn god_with(&self, role: Role) -> GodId {
        GodId::ALL
            .into_iter()
            .find(|&g| self.role_of(g) == role)
            .expect("god order is a bijection")
    }

    pub fn random_god(&self) -> GodId {
        self.god_with(Role::RandomGod)
    }

    /// Position in [`GodOrder::all`].
    pub fn index(&self) -> usize {
        GodOrder::all()
            .iter()
            .position(|o| o == self)
            .expect("every order is enumerated")
    }

    /// Three-letter code such as `RTF` (A is Random, B True, C False).
    pub fn code(&self) -> String {
        self.0.iter().map(|r| r.initial()).collect()
    }

    /// Renders as `A=true,B=false,C=random`.
    pub fn spec(&self) -> String {
        GodId::ALL
            .iter()
            .map(|g| format!("{}={}", g, self.role_of(*g)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for GodOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for GodOrder {
    type Err = WorldParseError;

    /// Accepts either a three-letter code (`RTF`) or `A=<role>,B=<role>,C=<role>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.len() == 3 && s.chars().all(|c| matches!(c, 'T' | 'F' | 'R')) {
            let mut roles = [Role::TrueGod; 3];
            for (slot, c) in roles.iter_mut().zip(s.chars()) {
                *slot = match c {
                    'T' => Role::TrueGod,
                    'F' => Role::FalseGod,
                    _ => Role::RandomGod,
                };
            }
            return GodOrder::new(roles).ok_or(WorldParseError::NotBijective);
        }
        let mut roles: [Option<Role>; 3] = [None; 3];
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| WorldParseError::Malformed(part.trim().to_string()))?;
            let god: GodId = key.trim().parse()?;
            let slot = &mut roles[god.index()];
            if slot.is_some() {
                return Err(WorldParseError::Duplicate(god.to_string()));
            }
            *slot = Some(value.trim().parse()?);
        }
        let mut out = [Role::TrueGod; 3];
        for god in GodId::ALL {
            out[god.index()] = roles[god.index()].ok_or_else(|| WorldParseError::Missing(god.to_string()))?;
        }
        GodOrder::new(out).ok_or(WorldParseError::NotBijective)
    }
}

impl Serialize for GodOrder {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.code())
    }
}

impl<'de> Deserialize<'de> for GodOrder {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let code = String::deserialize(deserializer)?;
        code.parse().map_err(serde::de::Error::custom)
    }
}

/// A complete hidden state: who is who, and which word means "yes".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World {
    pub order: GodOrder,
    /// True iff the First-ranked word means "yes".
    pub yes_is_first: bool,
}

impl World {
    pub fn new(order: GodOrder, yes_is_first: bool) -> World {
        World { order, yes_is_first }
    }

    pub fn role_of(&self, god: GodId) -> Role {
        self.order.role_of(god)
    }

    pub fn yes_token(&self) -> Token {
        if self.yes_is_first {
            Token::First
        } else {
            Token::Second
        }
    }

    pub fn no_token(&self) -> Token {
        self.yes_token().other()
    }

    /// The word a god uses to assert `truth`.
    pub fn token_for(&self, truth: bool) -> Token {
        if truth {
            self.yes_token()
        } else {
            self.no_token()
        }
    }

    /// Renders in the CLI world-spec syntax, e.g. `A=true,B=random,C=false,yif=1`.
    pub fn spec(&self) -> String {
        format!("{},yif={}", self.order.spec(), u8::from(self.yes_is_first))
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl FromStr for World {
    type Err = WorldParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut order_parts = Vec::new();
        let mut yif = None;
        for part in s.split(',') {
            match part.trim().split_once('=') {
                Some(("yif", v)) => {
                    yif = Some(match v.trim() {
                        "1" | "true" => true,
                        "0" | "false" => false,
                        other => return Err(WorldParseError::BadLexicon(other.to_string())),
                    })
                }
                _ => order_parts.push(part),
            }
        }
        let order: GodOrder = order_parts.join(",").parse()?;
        let yes_is_first = yif.ok_or_else(|| WorldParseError::Missing("yif".to_string()))?;
        Ok(World { order, yes_is_first })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorldParseError {
    #[error("unknown god `{0}` (expected A, B or C)")]
    UnknownGod(String),
    #[error("unknown role `{0}` (expected true, false or random)")]
    UnknownRole(String),
    #[error("malformed world entry `{0}`")]
    Malformed(String),
    #[error("`{0}` given more than once")]
    Duplicate(String),
    #[error("missing `{0}`")]
    Missing(String),
    #[error("roles must be a bijection")]
    NotBijective,
    #[error("bad lexicon bit `{0}` (expected 0 or 1)")]
    BadLexicon(String),
}

/// Every world exactly once: orders in [`GodOrder::all`] order, then
/// `yes_is_first = false` before `true`.
pub fn enumerate_worlds() -> Vec<World> {
    GodOrder::all()
        .into_iter()
        .flat_map(|order| [false, true].map(|yes_is_first| World { order, yes_is_first }))
        .collect()
}

/// A god's reply: a word, or an exploding head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Token(Token),
    Boom,
}

impl Answer {
    pub fn token(self) -> Option<Token> {
        match self {
            Answer::Token(t) => Some(t),
            Answer::Boom => None,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Answer::Token(t) => t.keyword(),
            Answer::Boom => "boom",
        }
    }
}

impl From<Token> for Answer {
    fn from(t: Token) -> Self {
        Answer::Token(t)
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Answer {
    type Err = WorldParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "first" => Ok(Answer::Token(Token::First)),
            "second" => Ok(Answer::Token(Token::Second)),
            "boom" => Ok(Answer::Boom),
            other => Err(WorldParseError::Malformed(other.to_string())),
        }
    }
}

/// What a language-ignorant observer can tell about one answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObservationLabel {
    /// A word, but the first one heard: its rank is unknown.
    Opaque,
    /// The same word as every word heard so far.
    Same,
    First,
    Second,
    Boom,
}

impl ObservationLabel {
    pub const ALL: [ObservationLabel; 5] = [
        ObservationLabel::Opaque,
        ObservationLabel::Same,
        ObservationLabel::First,
        ObservationLabel::Second,
        ObservationLabel::Boom,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            ObservationLabel::Opaque => "opaque",
            ObservationLabel::Same => "same",
            ObservationLabel::First => "first",
            ObservationLabel::Second => "second",
            ObservationLabel::Boom => "boom",
        }
    }

    fn from_rank(t: Token) -> ObservationLabel {
        match t {
            Token::First => ObservationLabel::First,
            Token::Second => ObservationLabel::Second,
        }
    }
}

impl fmt::Display for ObservationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for ObservationLabel {
    type Err = WorldParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ObservationLabel::ALL
            .into_iter()
            .find(|l| l.keyword() == s.trim())
            .ok_or_else(|| WorldParseError::Malformed(s.trim().to_string()))
    }
}

/// Joins labels with `-`, e.g. `opaque-same-first`.
pub fn render_labels(labels: &[ObservationLabel]) -> String {
    labels.iter().map(|l| l.keyword()).collect::<Vec<_>>().join("-")
}

/// Labels each answer using only what was observable up to and including it.
///
/// Explosions carry no word and never count as a heard token. Once a second
/// distinct word is heard both ranks are known, so that answer and every later
/// one is labelled by rank. Earlier labels are never rewritten.
pub fn canonicalize(answers: &[Answer]) -> Vec<ObservationLabel> {
    let mut heard: Option<Token> = None;
    let mut ranks_known = false;
    answers
        .iter()
        .map(|answer| match *answer {
            Answer::Boom => ObservationLabel::Boom,
            Answer::Token(t) if ranks_known => ObservationLabel::from_rank(t),
            Answer::Token(t) => match heard {
                None => {
                    heard = Some(t);
                    ObservationLabel::Opaque
                }
                Some(h) if h == t => ObservationLabel::Same,
                Some(_) => {
                    ranks_known = true;
                    ObservationLabel::from_rank(t)
                }
            },
        })
        .collect()
}

/// Convenience wrapper over [`canonicalize`] for explosion-free sequences.
pub fn canonicalize_tokens(tokens: &[Token]) -> Vec<ObservationLabel> {
    let answers: Vec<Answer> = tokens.iter().map(|&t| Answer::Token(t)).collect();
    canonicalize(&answers)
}

/// All `2^len` raw token sequences, in lexicographic order.
pub fn all_token_sequences(len: usize) -> Vec<Vec<Token>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 0 {
                        Token::First
                    } else {
                        Token::Second
                    }
                })
                .collect()
        })
        .collect()
}

/// Every explosion-free label sequence of length `depth` that some raw token
/// sequence produces, sorted.
pub fn observation_classes(depth: usize) -> Vec<Vec<ObservationLabel>> {
    let classes: BTreeSet<Vec<ObservationLabel>> = all_token_sequences(depth)
        .iter()
        .map(|s| canonicalize_tokens(s))
        .collect();
    classes.into_iter().collect()
}

/// Exchanges the two words everywhere in the sequence.
pub fn swap_tokens(tokens: &[Token]) -> Vec<Token> {
    tokens.iter().map(|t| t.other()).collect()
}

/// How Random decides what to say.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomMode {
    /// A hidden coin picks a truthful or lying persona for the whole question.
    BoolosCoin,
    /// A hidden coin picks the word itself; the question is ignored.
    TokenCoin,
}

/// What a non-Random god does with a question it cannot answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParadoxPolicy {
    /// Reply with the word meaning "no".
    AnswerNo,
    /// The head explodes.
    Explode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunConfig {
    pub random_mode: RandomMode,
    pub paradox_policy: ParadoxPolicy,
}

impl RunConfig {
    pub fn new(random_mode: RandomMode, paradox_policy: ParadoxPolicy) -> RunConfig {
        RunConfig {
            random_mode,
            paradox_policy,
        }
    }
}

/// Outcome of Random's hidden coin. Heads means a truthful persona under
/// [`RandomMode::BoolosCoin`] and the First-ranked word under
/// [`RandomMode::TokenCoin`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Coin {
    Heads,
    Tails,
}

impl Coin {
    pub const ALL: [Coin; 2] = [Coin::Heads, Coin::Tails];

    pub fn symbol(self) -> char {
        match self {
            Coin::Heads => 'H',
            Coin::Tails => 'T',
        }
    }

    pub fn from_symbol(c: char) -> Option<Coin> {
        match c {
            'H' | 'h' => Some(Coin::Heads),
            'T' | 't' => Some(Coin::Tails),
            _ => None,
        }
    }

    /// The word a token-coin Random utters on this flip.
    pub fn token(self) -> Token {
        match self {
            Coin::Heads => Token::First,
            Coin::Tails => Token::Second,
        }
    }
}

/// Renders coins as a string over `{H, T}`.
pub fn render_coins(coins: &[Coin]) -> String {
    coins.iter().map(|c| c.symbol()).collect()
}
