use std::fmt;

use crate::world::{GodId, Role};

/// Reference to an answer word, either by rank or by transcript position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenExpr {
    RankFirst,
    RankSecond,
    /// The answer to the k-th most recent question (k >= 1).
    Prev(usize),
    /// The word other than the answer to the k-th most recent question.
    OppPrev(usize),
}

/// Who an `IsRole` atom talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    God(GodId),
    /// The god being asked.
    Respondent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuestionAst {
    IsRole(Subject, Role),
    Not(Box<QuestionAst>),
    And(Vec<QuestionAst>),
    Or(Vec<QuestionAst>),
    Iff(Box<QuestionAst>, Box<QuestionAst>),
    /// "Would you answer `target` if asked `inner`?"
    Would(TokenExpr, Box<QuestionAst>),
    /// "Is your answer to this very question `target`?"
    SelfWould(TokenExpr),
}

impl QuestionAst {
    pub fn is(god: GodId, role: Role) -> QuestionAst {
        QuestionAst::IsRole(Subject::God(god), role)
    }

    pub fn is_self(role: Role) -> QuestionAst {
        QuestionAst::IsRole(Subject::Respondent, role)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: QuestionAst) -> QuestionAst {
        QuestionAst::Not(Box::new(inner))
    }

    pub fn would(target: TokenExpr, inner: QuestionAst) -> QuestionAst {
        QuestionAst::Would(target, Box::new(inner))
    }

    pub fn iff(left: QuestionAst, right: QuestionAst) -> QuestionAst {
        QuestionAst::Iff(Box::new(left), Box::new(right))
    }

    /// True if a `SelfWould` node occurs anywhere in the tree.
    pub fn is_self_referential(&self) -> bool {
        match self {
            QuestionAst::SelfWould(_) => true,
            QuestionAst::IsRole(..) => false,
            QuestionAst::Not(q) | QuestionAst::Would(_, q) => q.is_self_referential(),
            QuestionAst::And(qs) | QuestionAst::Or(qs) => qs.iter().any(|q| q.is_self_referential()),
            QuestionAst::Iff(l, r) => l.is_self_referential() || r.is_self_referential(),
        }
    }

    /// Largest `k` among `Prev(k)` / `OppPrev(k)` references, or 0.
    pub fn max_history_reference(&self) -> usize {
        fn token(t: &TokenExpr) -> usize {
            match *t {
                TokenExpr::Prev(k) | TokenExpr::OppPrev(k) => k,
                _ => 0,
            }
        }
        match self {
            QuestionAst::SelfWould(t) => token(t),
            QuestionAst::IsRole(..) => 0,
            QuestionAst::Not(q) => q.max_history_reference(),
            QuestionAst::Would(t, q) => token(t).max(q.max_history_reference()),
            QuestionAst::And(qs) | QuestionAst::Or(qs) => {
                qs.iter().map(|q| q.max_history_reference()).max().unwrap_or(0)
            }
            QuestionAst::Iff(l, r) => l.max_history_reference().max(r.max_history_reference()),
        }
    }
}

impl fmt::Display for TokenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenExpr::RankFirst => f.write_str("first"),
            TokenExpr::RankSecond => f.write_str("second"),
            TokenExpr::Prev(k) => write!(f, "prev({k})"),
            TokenExpr::OppPrev(k) => write!(f, "opp_prev({k})"),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::God(g) => write!(f, "{g}"),
            Subject::Respondent => f.write_str("self"),
        }
    }
}

/// Renders in the DSL's canonical compact form, which `parse_question` accepts.
impl fmt::Display for QuestionAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, qs: &[QuestionAst]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, q) in qs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{q}")?;
            }
            f.write_str(")")
        }
        match self {
            QuestionAst::IsRole(s, r) => write!(f, "is({s},{r})"),
            QuestionAst::Not(q) => write!(f, "not({q})"),
            QuestionAst::And(qs) => list(f, "and", qs),
            QuestionAst::Or(qs) => list(f, "or", qs),
            QuestionAst::Iff(l, r) => write!(f, "iff({l},{r})"),
            QuestionAst::Would(t, q) => write!(f, "would({t},{q})"),
            QuestionAst::SelfWould(t) => write!(f, "self_would({t})"),
        }
    }
}
