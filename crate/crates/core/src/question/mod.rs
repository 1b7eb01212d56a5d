//! The question DSL: syntax, parsing, and the gods' answer function.

mod ast;
mod builtin;
mod eval;
mod parse;

pub use ast::{QuestionAst, Subject, TokenExpr};
pub use builtin::{builtin_question, question_from_ref, QuestionRefError, BUILTIN_QUESTIONS};
pub use eval::{answer_question, consistent_answers, eval_proposition, resolve_token, EvalError, Persona, Transcript};
pub use parse::{parse_question, ParseError, ParseErrorKind};
