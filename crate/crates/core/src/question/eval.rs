//! Question semantics.
//!
//! A non-Random god answers a question with the word `a` only if `a` is
//! consistent: the word it would utter, given that its own answer is `a`,
//! is `a` itself. Questions that never mention their own answer have
//! exactly one consistent word. Self-referential ones may have none or two,
//! and then the god cannot answer.

use thiserror::Error;

use super::ast::{QuestionAst, Subject, TokenExpr};
use crate::world::{Answer, Coin, GodId, ObservationLabel, ParadoxPolicy, RandomMode, Role, RunConfig, Token, World};

/// The ordered record of who was asked and what they replied.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Transcript {
    entries: Vec<(GodId, Answer)>,
}

impl Transcript {
    pub fn new() -> Transcript {
        Transcript::default()
    }

    pub fn push(&mut self, target: GodId, answer: Answer) {
        self.entries.push((target, answer));
    }

    pub fn entries(&self) -> &[(GodId, Answer)] {
        &self.entries
    }

    pub fn answers(&self) -> Vec<Answer> {
        self.entries.iter().map(|&(_, a)| a).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<ObservationLabel> {
        crate::world::canonicalize(&self.answers())
    }

    /// True if `god` has exploded at some point in this transcript.
    pub fn has_exploded(&self, god: GodId) -> bool {
        self.entries.iter().any(|&(g, a)| g == god && a == Answer::Boom)
    }
}

impl FromIterator<(GodId, Answer)> for Transcript {
    fn from_iter<I: IntoIterator<Item = (GodId, Answer)>>(iter: I) -> Self {
        Transcript {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Persona {
    Truthful,
    Lying,
}

impl Persona {
    /// The word this persona utters when the honest reply is `truth`.
    pub fn utter(self, world: &World, truth: bool) -> Token {
        match self {
            Persona::Truthful => world.token_for(truth),
            Persona::Lying => world.token_for(!truth),
        }
    }

    pub fn from_coin(coin: Coin) -> Persona {
        match coin {
            Coin::Heads => Persona::Truthful,
            Coin::Tails => Persona::Lying,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("question refers to answer {k} back but only {len} answers exist")]
    HistoryOutOfRange { k: usize, len: usize },
    #[error("question refers to answer {k} back, which was an explosion")]
    ExplodedReference { k: usize },
    #[error("{0} is Random and needs a coin")]
    MissingCoin(GodId),
    #[error("{0} is not Random; no coin may be supplied")]
    UnexpectedCoin(GodId),
    #[error("a token-coin Random has no persona")]
    NoPersona,
}

pub fn resolve_token(expr: TokenExpr, transcript: &Transcript) -> Result<Token, EvalError> {
    let back = |k: usize| -> Result<Token, EvalError> {
        let len = transcript.len();
        if k == 0 || k > len {
            return Err(EvalError::HistoryOutOfRange { k, len });
        }
        transcript.entries[len - k]
            .1
            .token()
            .ok_or(EvalError::ExplodedReference { k })
    };
    match expr {
        TokenExpr::RankFirst => Ok(Token::First),
        TokenExpr::RankSecond => Ok(Token::Second),
        TokenExpr::Prev(k) => back(k),
        TokenExpr::OppPrev(k) => back(k).map(Token::other),
    }
}

/// Truth value of `ast` for `respondent`, assuming its answer to the question
/// being asked is `self_answer`.
///
/// `Would` nodes compute the respondent's hypothetical reply to the inner
/// question under the same persona and the same `self_answer` binding.
pub fn eval_proposition(
    ast: &QuestionAst,
    world: &World,
    respondent: GodId,
    persona: Persona,
    transcript: &Transcript,
    self_answer: Token,
) -> Result<bool, EvalError> {
    let eval = |q: &QuestionAst| eval_proposition(q, world, respondent, persona, transcript, self_answer);
    Ok(match ast {
        QuestionAst::IsRole(subject, role) => {
            let god = match subject {
                Subject::God(g) => *g,
                Subject::Respondent => respondent,
            };
            world.role_of(god) == *role
        }
        QuestionAst::Not(q) => !eval(q)?,
        QuestionAst::And(qs) => {
            for q in qs {
                if !eval(q)? {
                    return Ok(false);
                }
            }
            true
        }
        QuestionAst::Or(qs) => {
            for q in qs {
                if eval(q)? {
                    return Ok(true);
                }
            }
            false
        }
        QuestionAst::Iff(l, r) => eval(l)? == eval(r)?,
        QuestionAst::Would(target, inner) => {
            let hypothetical = persona.utter(world, eval(inner)?);
            hypothetical == resolve_token(*target, transcript)?
        }
        QuestionAst::SelfWould(target) => resolve_token(*target, transcript)? == self_answer,
    })
}

/// The words a god with a fixed persona could consistently give.
pub fn consistent_answers(
    ast: &QuestionAst,
    world: &World,
    respondent: GodId,
    persona: Persona,
    transcript: &Transcript,
) -> Result<Vec<Token>, EvalError> {
    let mut out = Vec::with_capacity(2);
    for candidate in Token::ALL {
        let truth = eval_proposition(ast, world, respondent, persona, transcript, candidate)?;
        if persona.utter(world, truth) == candidate {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// The reply of `respondent` to `ast`.
///
/// `coin` must be present exactly when the respondent is Random.
pub fn answer_question(
    ast: &QuestionAst,
    world: &World,
    respondent: GodId,
    coin: Option<Coin>,
    config: RunConfig,
    transcript: &Transcript,
) -> Result<Answer, EvalError> {
    let role = world.role_of(respondent);
    let persona = match (role, coin) {
        (Role::RandomGod, None) => return Err(EvalError::MissingCoin(respondent)),
        (Role::RandomGod, Some(c)) => match config.random_mode {
            RandomMode::TokenCoin => {
                // History references are still checked so malformed questions fail uniformly.
                check_references(ast, transcript)?;
                return Ok(Answer::Token(c.token()));
            }
            RandomMode::BoolosCoin => Persona::from_coin(c),
        },
        (_, Some(_)) => return Err(EvalError::UnexpectedCoin(respondent)),
        (Role::TrueGod, None) => Persona::Truthful,
        (Role::FalseGod, None) => Persona::Lying,
    };
    let consistent = consistent_answers(ast, world, respondent, persona, transcript)?;
    Ok(match consistent.as_slice() {
        [only] => Answer::Token(*only),
        _ => match config.paradox_policy {
            ParadoxPolicy::AnswerNo => Answer::Token(world.no_token()),
            ParadoxPolicy::Explode => Answer::Boom,
        },
    })
}

fn check_references(ast: &QuestionAst, transcript: &Transcript) -> Result<(), EvalError> {
    fn walk(ast: &QuestionAst, transcript: &Transcript) -> Result<(), EvalError> {
        match ast {
            QuestionAst::IsRole(..) => Ok(()),
            QuestionAst::Not(q) => walk(q, transcript),
            QuestionAst::And(qs) | QuestionAst::Or(qs) => qs.iter().try_for_each(|q| walk(q, transcript)),
            QuestionAst::Iff(l, r) => walk(l, transcript).and(walk(r, transcript)),
            QuestionAst::Would(t, q) => resolve_token(*t, transcript).and(walk(q, transcript)),
            QuestionAst::SelfWould(t) => resolve_token(*t, transcript).map(|_| ()),
        }
    }
    walk(ast, transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::question::parse_question;
    use crate::world::GodOrder;

    fn world(code: &str, yif: bool) -> World {
        World::new(code.parse::<GodOrder>().unwrap(), yif)
    }

    const NO_COIN_CFG: RunConfig = RunConfig {
        random_mode: RandomMode::TokenCoin,
        paradox_policy: ParadoxPolicy::AnswerNo,
    };

    #[test]
    fn resolve_history() {
        let t: Transcript = [(GodId::A, Answer::Token(Token::First))].into_iter().collect();
        assert_eq!(resolve_token(TokenExpr::Prev(1), &t), Ok(Token::First));
        assert_eq!(resolve_token(TokenExpr::OppPrev(1), &t), Ok(Token::Second));
        assert_eq!(
            resolve_token(TokenExpr::Prev(2), &t),
            Err(EvalError::HistoryOutOfRange { k: 2, len: 1 })
        );
        let boom: Transcript = [(GodId::A, Answer::Boom)].into_iter().collect();
        assert_eq!(
            resolve_token(TokenExpr::Prev(1), &boom),
            Err(EvalError::ExplodedReference { k: 1 })
        );
    }

    #[test]
    fn proposition_atoms() {
        let w = world("TFR", true);
        let t = Transcript::new();
        let q = parse_question("is(self,true)").unwrap();
        assert!(eval_proposition(&q, &w, GodId::A, Persona::Truthful, &t, Token::First).unwrap());
        let q = parse_question("would(first,is(self,random))").unwrap();
        assert!(!eval_proposition(&q, &w, GodId::A, Persona::Truthful, &t, Token::First).unwrap());
        let q = parse_question("self_would(second)").unwrap();
        assert!(eval_proposition(&q, &w, GodId::A, Persona::Truthful, &t, Token::Second).unwrap());
        assert!(!eval_proposition(&q, &w, GodId::A, Persona::Truthful, &t, Token::First).unwrap());
    }

    #[test]
    fn indeterminate_question_gets_no() {
        let q = parse_question("would(second, self_would(second))").unwrap();
        for yif in [false, true] {
            let w = world("TFR", yif);
            let got = answer_question(&q, &w, GodId::A, None, NO_COIN_CFG, &Transcript::new()).unwrap();
            assert_eq!(got, Answer::Token(w.no_token()));
            let explode = RunConfig::new(RandomMode::TokenCoin, ParadoxPolicy::Explode);
            let got = answer_question(&q, &w, GodId::A, None, explode, &Transcript::new()).unwrap();
            assert_eq!(got, Answer::Boom);
        }
    }

    #[test]
    fn coin_preconditions() {
        let q = parse_question("is(A,true)").unwrap();
        let w = world("TFR", true);
        let t = Transcript::new();
        assert_eq!(
            answer_question(&q, &w, GodId::C, None, NO_COIN_CFG, &t),
            Err(EvalError::MissingCoin(GodId::C))
        );
        assert_eq!(
            answer_question(&q, &w, GodId::A, Some(Coin::Heads), NO_COIN_CFG, &t),
            Err(EvalError::UnexpectedCoin(GodId::A))
        );
        let selfref = parse_question("would(first, self_would(first))").unwrap();
        let explode = RunConfig::new(RandomMode::TokenCoin, ParadoxPolicy::Explode);
        for coin in Coin::ALL {
            let got = answer_question(&selfref, &w, GodId::C, Some(coin), explode, &t).unwrap();
            assert_eq!(got, Answer::Token(coin.token()));
        }
    }

    #[test]
    fn token_coin_random_still_checks_history() {
        let q = parse_question("would(prev(1), is(self,random))").unwrap();
        let w = world("TFR", true);
        let err = answer_question(&q, &w, GodId::C, Some(Coin::Heads), NO_COIN_CFG, &Transcript::new());
        assert_eq!(err, Err(EvalError::HistoryOutOfRange { k: 1, len: 0 }));
    }

    #[test]
    fn truthful_atom_answers_yes() {
        let q = parse_question("is(A,true)").unwrap();
        for yif in [false, true] {
            let w = world("TFR", yif);
            let got = answer_question(&q, &w, GodId::B, None, NO_COIN_CFG, &Transcript::new()).unwrap();
            // B is False and lies about a true statement.
            assert_eq!(got, Answer::Token(w.no_token()));
            let got = answer_question(&q, &w, GodId::A, None, NO_COIN_CFG, &Transcript::new()).unwrap();
            assert_eq!(got, Answer::Token(w.yes_token()));
        }
    }
}
