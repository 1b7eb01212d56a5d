//! Recursive-descent parser for the question DSL.
//!
//! ```text
//! expr  := 'is(' god ',' role ')' | 'not(' expr ')'
//!        | 'and(' expr (',' expr)+ ')' | 'or(' expr (',' expr)+ ')'
//!        | 'iff(' expr ',' expr ')' | 'would(' token ',' expr ')'
//!        | 'self_would(' token ')'
//! god   := 'A' | 'B' | 'C' | 'self'
//! role  := 'true' | 'false' | 'random'
//! token := 'first' | 'second' | 'prev(' int ')' | 'opp_prev(' int ')'
//! ```

use thiserror::Error;

use super::ast::{QuestionAst, Subject, TokenExpr};
use crate::world::{GodId, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("`{0}` needs at least two operands")]
    Arity(&'static str),
    #[error("unknown god `{0}`")]
    UnknownGod(String),
    #[error("unknown role `{0}`")]
    UnknownRole(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("history index must be at least 1")]
    ZeroIndex,
    #[error("trailing input")]
    Trailing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lexeme<'a> {
    Ident(&'a str),
    Int(usize),
    LParen,
    RParen,
    Comma,
    End,
}

impl Lexeme<'_> {
    fn describe(&self) -> String {
        match self {
            Lexeme::Ident(s) => format!("`{s}`"),
            Lexeme::Int(n) => format!("`{n}`"),
            Lexeme::LParen => "`(`".into(),
            Lexeme::RParen => "`)`".into(),
            Lexeme::Comma => "`,`".into(),
            Lexeme::End => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next lexeme and its start offset without consuming it.
    fn peek(&mut self) -> Result<(usize, Lexeme<'a>, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((start, Lexeme::End, start));
        };
        let (lex, len) = match c {
            '(' => (Lexeme::LParen, 1),
            ')' => (Lexeme::RParen, 1),
            ',' => (Lexeme::Comma, 1),
            c if c.is_ascii_digit() => {
                let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                let n = rest[..len].parse().map_err(|_| ParseError {
                    pos: start,
                    kind: ParseErrorKind::Unexpected {
                        expected: "an integer".into(),
                        found: format!("`{}`", &rest[..len]),
                    },
                })?;
                (Lexeme::Int(n), len)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(rest.len());
                (Lexeme::Ident(&rest[..len]), len)
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    kind: ParseErrorKind::Unexpected {
                        expected: "a keyword".into(),
                        found: format!("`{other}`"),
                    },
                })
            }
        };
        Ok((start, lex, start + len))
    }

    fn next(&mut self) -> Result<(usize, Lexeme<'a>), ParseError> {
        let (start, lex, end) = self.peek()?;
        self.pos = end;
        Ok((start, lex))
    }

    fn expect(&mut self, want: Lexeme<'static>) -> Result<(), ParseError> {
        let (pos, got) = self.next()?;
        if got == want {
            Ok(())
        } else {
            Err(ParseError {
                pos,
                kind: ParseErrorKind::Unexpected {
                    expected: want.describe(),
                    found: got.describe(),
                },
            })
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(usize, &'a str), ParseError> {
        match self.next()? {
            (pos, Lexeme::Ident(s)) => Ok((pos, s)),
            (pos, other) => Err(ParseError {
                pos,
                kind: ParseErrorKind::Unexpected {
                    expected: expected.into(),
                    found: other.describe(),
                },
            }),
        }
    }

    fn expr(&mut self) -> Result<QuestionAst, ParseError> {
        let (pos, head) = self.ident("a connective")?;
        self.expect(Lexeme::LParen)?;
        let ast = match head {
            "is" => {
                let subject = self.subject()?;
                self.expect(Lexeme::Comma)?;
                let role = self.role()?;
                QuestionAst::IsRole(subject, role)
            }
            "not" => QuestionAst::not(self.expr()?),
            "and" | "or" => {
                let mut items = vec![self.expr()?];
                while let (_, Lexeme::Comma, end) = self.peek()? {
                    self.pos = end;
                    items.push(self.expr()?);
                }
                if items.len() < 2 {
                    let name = if head == "and" { "and" } else { "or" };
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::Arity(name),
                    });
                }
                if head == "and" {
                    QuestionAst::And(items)
                } else {
                    QuestionAst::Or(items)
                }
            }
            "iff" => {
                let left = self.expr()?;
                self.expect(Lexeme::Comma)?;
                let right = self.expr()?;
                QuestionAst::iff(left, right)
            }
            "would" => {
                let target = self.token()?;
                self.expect(Lexeme::Comma)?;
                QuestionAst::would(target, self.expr()?)
            }
            "self_would" => QuestionAst::SelfWould(self.token()?),
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownConnective(other.to_string()),
                })
            }
        };
        self.expect(Lexeme::RParen)?;
        Ok(ast)
    }

    fn subject(&mut self) -> Result<Subject, ParseError> {
        let (pos, name) = self.ident("a god")?;
        match name {
            "self" => Ok(Subject::Respondent),
            other => other.parse::<GodId>().map(Subject::God).map_err(|_| ParseError {
                pos,
                kind: ParseErrorKind::UnknownGod(other.to_string()),
            }),
        }
    }

    fn role(&mut self) -> Result<Role, ParseError> {
        let (pos, name) = self.ident("a role")?;
        name.parse().map_err(|_| ParseError {
            pos,
            kind: ParseErrorKind::UnknownRole(name.to_string()),
        })
    }

    fn token(&mut self) -> Result<TokenExpr, ParseError> {
        let (pos, name) = self.ident("a token")?;
        match name {
            "first" => Ok(TokenExpr::RankFirst),
            "second" => Ok(TokenExpr::RankSecond),
            "prev" | "opp_prev" => {
                self.expect(Lexeme::LParen)?;
                let k = match self.next()? {
                    (p, Lexeme::Int(0)) => {
                        return Err(ParseError {
                            pos: p,
                            kind: ParseErrorKind::ZeroIndex,
                        })
                    }
                    (_, Lexeme::Int(k)) => k,
                    (p, other) => {
                        return Err(ParseError {
                            pos: p,
                            kind: ParseErrorKind::Unexpected {
                                expected: "an integer".into(),
                                found: other.describe(),
                            },
                        })
                    }
                };
                self.expect(Lexeme::RParen)?;
                Ok(if name == "prev" {
                    TokenExpr::Prev(k)
                } else {
                    TokenExpr::OppPrev(k)
                })
            }
            other => Err(ParseError {
                pos,
                kind: ParseErrorKind::UnknownToken(other.to_string()),
            }),
        }
    }
}

pub fn parse_question(text: &str) -> Result<QuestionAst, ParseError> {
    let mut parser = Parser { src: text, pos: 0 };
    let ast = parser.expr()?;
    match parser.peek()? {
        (_, Lexeme::End, _) => Ok(ast),
        (pos, _, _) => Err(ParseError {
            pos,
            kind: ParseErrorKind::Trailing,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_nesting() {
        assert_eq!(
            parse_question("is(B,random)").unwrap(),
            QuestionAst::is(GodId::B, Role::RandomGod)
        );
        assert_eq!(
            parse_question("would(first, is(self,random))").unwrap(),
            QuestionAst::would(TokenExpr::RankFirst, QuestionAst::is_self(Role::RandomGod))
        );
        assert_eq!(
            parse_question("  self_would( opp_prev( 2 ) ) ").unwrap(),
            QuestionAst::SelfWould(TokenExpr::OppPrev(2))
        );
    }

    #[test]
    fn rejects_unknown_names() {
        let err = parse_question("is(D,true)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownGod("D".into()));
        assert_eq!(err.pos, 3);
        assert!(matches!(
            parse_question("is(A,liar)").unwrap_err().kind,
            ParseErrorKind::UnknownRole(_)
        ));
        assert!(matches!(
            parse_question("would(third,is(A,true))").unwrap_err().kind,
            ParseErrorKind::UnknownToken(_)
        ));
        assert!(matches!(
            parse_question("xor(is(A,true),is(B,true))").unwrap_err().kind,
            ParseErrorKind::UnknownConnective(_)
        ));
    }

    #[test]
    fn arity_and_syntax_errors() {
        assert_eq!(
            parse_question("and(is(A,true))").unwrap_err().kind,
            ParseErrorKind::Arity("and")
        );
        assert_eq!(
            parse_question("or(is(A,true))").unwrap_err().kind,
            ParseErrorKind::Arity("or")
        );
        assert_eq!(
            parse_question("self_would(prev(0))").unwrap_err().kind,
            ParseErrorKind::ZeroIndex
        );
        assert_eq!(
            parse_question("is(A,true) x").unwrap_err().kind,
            ParseErrorKind::Trailing
        );
        let err = parse_question("is(A true)").unwrap_err();
        assert_eq!(err.pos, 5);
        assert!(parse_question("").is_err());
        assert!(parse_question("IS(A,true)").is_err());
    }
}
