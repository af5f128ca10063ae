//! Exact-arithmetic kernel for the deformed phase space `U(g) # S(g*)` of a
//! finite-dimensional Lie algebra, truncated at a tracked precision, together
//! with mechanical checks of its Hopf algebroid structure.
//!
//! Indices are 0-based in code. Rendered names (`x1`, `y1`, `d1`) are 1-based.

pub mod algebroid;
pub mod arith;
pub mod cli;
pub mod dual;
pub mod expr;
pub mod lie;
pub mod pbw;
pub mod phase;
pub mod report;
pub mod series;
pub mod weyl;

pub use arith::{bernoulli, int, multiindex_binomial, rat, MultiIndex, Rational};
pub use lie::LieAlgebra;
pub use pbw::{UElem, UEnv};

pub use phase::{HElem, PhaseSpace, RElem};
pub use series::{MatrixSeries, Series};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("insufficient precision: need {needed}, have {have}")]
    Precision { needed: i64, have: i64 },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid Lie algebra: {0}")]
    Invalid(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precision(needed: i64, have: i64) -> Self {
        Error::Precision { needed, have }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
