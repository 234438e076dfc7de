use thiserror::Error;

use crate::braid::BraidElement;

/// Errors reported by the token and factorization-file parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: unknown token `{token}`")]
    UnknownToken { token: String, line: usize },
    #[error("line {line}: token `{token}` is not allowed in {context}")]
    Disallowed { token: String, line: usize, context: &'static str },
    #[error("line {line}: expected `conjugator : atom`")]
    MissingSeparator { line: usize },
    #[error("line {line}: factor atom must be a single plain letter, found `{found}`")]
    BadAtom { found: String, line: usize },
    #[error("line {line}: `target:` may only appear before the first factor")]
    LateTarget { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("braid {0} is not positive")]
    NotPositive(BraidElement),
    #[error("primed part {0} is not a positive power of delta")]
    NotDeltaPower(BraidElement),
    #[error("cyclic shift of the empty word")]
    EmptyWord,
    #[error("normal form has p = {0} < 0; the Hurwitz action has a single orbit")]
    NegativeExponent(i64),
    #[error("vertical edges start at weight >= 1")]
    WeightZero,
    #[error("move index {index} out of range for {len} factors")]
    MoveOutOfRange { index: usize, len: usize },
    #[error("word is not a vertex of the graph of {0}")]
    NotAVertex(BraidElement),
    #[error("edge of kind {0} carries no move certificate")]
    NoCertificate(&'static str),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
