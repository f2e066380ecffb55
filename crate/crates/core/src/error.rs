use thiserror::Error;

/// Errors across the whole library.
///
/// Validation failures (bad inputs, preconditions) are separate from
/// `TheoremViolation`/`Inconsistency`, which indicate that a fact the
/// algorithms rely on failed to hold at runtime; the latter are bugs,
/// not user errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow during exact arithmetic")]
    Overflow,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("operation needs positive rank")]
    ZeroRank,

    #[error("not weakly unimodular: submatrix rows {rows:?} cols {cols:?} has determinant {det}")]
    NotUnimodular {
        /// 1-based row indices of the offending square submatrix.
        rows: Vec<usize>,
        /// 1-based column indices of the offending square submatrix.
        cols: Vec<usize>,
        det: i64,
    },

    #[error("columns {cols:?} do not form a basis")]
    NotABasis { cols: Vec<usize> },

    #[error("matrix is not in standard form [I | D]")]
    NotStandardForm,

    #[error("representation has parallel or zero columns; simplify it first")]
    MustSimplify,

    #[error("representation has a zero column")]
    ZeroColumn,

    #[error("facet certificates missing; compute facets first")]
    NeedsFacets,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no consistent row/column signing exists")]
    SigningInfeasible,

    #[error("correspondence is not a matroid isomorphism: {0}")]
    InvalidCorrespondence(String),

    #[error("ground set too large for exhaustive search ({size} > {limit})")]
    SizeLimit { size: usize, limit: usize },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("independent computation routes disagree: {0}")]
    Inconsistency(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
