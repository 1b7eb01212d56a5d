use thiserror::Error;

use super::ast::{QuestionAst, TokenExpr};
use super::parse::{parse_question, ParseError};
use crate::world::{GodId, Role};

pub const BUILTIN_QUESTIONS: [&str; 6] = ["p1.q1", "p1.q2", "p1.q3", "p3.q1", "p3.q2boom", "p3.q2tok"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuestionRefError {
    #[error("unknown builtin question `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// The questions of the two scripted strategies.
///
/// * `p1.*` use only the sorting-rule rank and embedded questions.
/// * `p3.q1` explodes a non-Random A exactly when B is Random.
/// * `p3.q2boom` explodes True and not False.
/// * `p3.q2tok` explodes True when A is Random, and otherwise makes the
///   respondent echo or contradict the previous word.
pub fn builtin_question(name: &str) -> Result<QuestionAst, QuestionRefError> {
    use QuestionAst as Q;
    use Role::*;
    use TokenExpr::*;
    Ok(match name {
        "p1.q1" => Q::would(RankFirst, Q::is_self(RandomGod)),
        "p1.q2" => Q::would(Prev(1), Q::is_self(RandomGod)),
        "p1.q3" => Q::would(Prev(1), Q::is_self(TrueGod)),
        "p3.q1" => Q::would(
            RankFirst,
            Q::Or(vec![
                Q::And(vec![Q::not(Q::is(GodId::B, RandomGod)), Q::is_self(FalseGod)]),
                Q::And(vec![Q::is(GodId::B, RandomGod), Q::SelfWould(RankSecond)]),
            ]),
        ),
        "p3.q2boom" => Q::would(RankFirst, Q::And(vec![Q::is_self(TrueGod), Q::SelfWould(RankSecond)])),
        "p3.q2tok" => Q::would(
            Prev(1),
            Q::Or(vec![
                Q::And(vec![
                    Q::is(GodId::A, RandomGod),
                    Q::is_self(TrueGod),
                    Q::SelfWould(OppPrev(1)),
                ]),
                Q::And(vec![Q::is(GodId::A, RandomGod), Q::is_self(FalseGod)]),
            ]),
        ),
        other => return Err(QuestionRefError::UnknownBuiltin(other.to_string())),
    })
}

/// Resolves `builtin:<name>` or parses the text as DSL.
pub fn question_from_ref(text: &str) -> Result<QuestionAst, QuestionRefError> {
    match text.trim().strip_prefix("builtin:") {
        Some(name) => builtin_question(name.trim()),
        None => Ok(parse_question(text)?),
    }
}
