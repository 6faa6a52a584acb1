use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector is not in the span of the given space")]
    NotInSpan,
    #[error("fixed-space projection infeasible: {0}")]
    NotSemisimple(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid Frobenius form: {0}")]
    InvalidFrobenius(String),
    #[error("not a graded algebra automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid bicharacter: {0}")]
    InvalidBicharacter(String),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("cochain is not fixed by T*")]
    NotInvariant,
    #[error("operator is undefined on level 0")]
    LevelZero,
    #[error("cochain is not homogeneous")]
    NotHomogeneous,
    #[error("incompatible coefficients: {0}")]
    Coefficients(String),
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("estimated size {estimated} exceeds cap {cap}")]
    TooLarge { estimated: u128, cap: u128 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
