use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("substituted value involves the variable `{0}`")]
    SubstitutionInvolvesVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("`{divisor}` does not divide `{dividend}`")]
    NotDivisible { dividend: String, divisor: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant `{0}` is not a nonzero constant")]
    NotUnimodular(String),
    #[error("minor order {order} outside 1..={max}")]
    MinorOrder { order: usize, max: usize },
    #[error("target is not a member of the ideal")]
    NotInIdeal,
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("matrix has {rows} rows and {cols} columns; factorization needs rows <= columns")]
    MoreRowsThanColumns { rows: usize, cols: usize },
    #[error("matrix does not have full row rank")]
    NotFullRowRank,
    #[error("substituted matrix has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("vector components do not generate the unit ideal (reduced basis: {basis})")]
    NotZlp { basis: String },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("no unimodular completion found among {} syzygy generators", generators.len())]
    CompletionFailed { generators: Vec<String> },
    #[error("internal verification failure: {0}")]
    Internal(String),
}

impl Error {
    /// Failures caused by the input not meeting the factorization hypotheses.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis(_)
                | Error::NotFullRowRank
                | Error::RankMismatch { .. }
                | Error::NotZlp { .. }
                | Error::MoreRowsThanColumns { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
