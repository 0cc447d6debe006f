use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition token {0:?}")]
    Parse(String),
    #[error("partition is not weakly increasing at position {0}")]
    NotWeaklyIncreasing(usize),
    #[error("row {row} has length {part} < {row}; the board is empty")]
    InvalidBoard { row: usize, part: u32 },
    #[error("operation needs a nonempty partition")]
    EmptyPartition,
    #[error("partition is decomposable (row {0} has length {0})")]
    Decomposable(usize),
    #[error("core needs at least {needed} rows, got {rows}")]
    CoreUndefined { rows: usize, needed: usize },
    #[error("row counts differ ({0} vs {1}); compare rook numbers instead")]
    RowCountMismatch(usize, usize),
    #[error("invalid rook placement: {0}")]
    InvalidPlacement(String),
    #[error("permutation size {size} is smaller than the longest row {longest}")]
    PermutationTooSmall { size: usize, longest: u32 },
    #[error("ambient variable counts differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("bad variable range {start}..={end} in {nvars} variables")]
    BadRange { start: usize, end: usize, nvars: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("basis is not certified as a Gröbner basis")]
    NotCertified,
    #[error("no monic marking: {0}")]
    NotMonic(String),
    #[error("quotient has infinite rank")]
    InfiniteRank,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("linear form {0} is not primitive")]
    NonPrimitive(String),
    #[error("quotient is not a free module in degree {0}")]
    QuotientNotFree(usize),
    #[error("f^{0} is nonzero past the top degree; presentation is corrupted")]
    NilpotenceBound(usize),
    #[error("no {k}-nilpotent linear form within box radius {radius}")]
    NoNilpotent { k: usize, radius: i64 },
    #[error("majority rule failed: {0}")]
    MajorityTie(String),
    #[error("recursion depth {0} exceeded")]
    RecursionDepth(usize),
    #[error("division by 2 is undefined in characteristic 2")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("empty list")]
    EmptyList,
}

pub type Result<T> = std::result::Result<T, Error>;
