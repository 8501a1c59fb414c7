use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation: rank must be at least 1")]
    EmptyPermutation,
    #[error("value {value} at position {position} is out of range 1..={n}")]
    ValueOutOfRange { position: usize, value: u32, n: usize },
    #[error("not a bijection: value {value} repeats at position {position}")]
    NotABijection { position: usize, value: u32 },
    #[error("letter {letter} at position {position} is out of range 1..{n}")]
    LetterOutOfRange { position: usize, letter: u32, n: usize },
    #[error("not fully commutative: {0} contains a 321 pattern")]
    NotFullyCommutative(String),
    #[error("not an involution: {0}")]
    NotAnInvolution(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator index {i} out of range for rank {n}")]
    GeneratorOutOfRange { i: usize, n: usize },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("matching is not planar: pairs {0:?} and {1:?} interleave")]
    NotPlanar((usize, usize), (usize, usize)),
    #[error("invalid special factor sigma({i},{j}) in rank {n}")]
    InvalidSpecialFactor { i: usize, j: usize, n: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cell computation: {0}")]
    Cell(String),
}

pub type Result<T> = std::result::Result<T, Error>;
