use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported ambient space P^{0} (only P^2 and P^3 are supported)")]
    UnsupportedAmbient(u8),

    #[error("cohomology classes live on different ambient spaces (P^{left} vs P^{right})")]
    AmbientMismatch { left: u8, right: u8 },

    #[error("unsupported diagonal arity {0}")]
    UnsupportedArity(usize),

    #[error("invalid degree {0}")]
    InvalidDegree(i64),

    #[error("basis exponent {exponent} out of range for P^{ambient}")]
    ExponentOutOfRange { ambient: u8, exponent: u8 },

    #[error("degree-0 invariants need exactly 3 insertions, got {0}")]
    DegreeZeroArity(usize),

    #[error("unbalanced constraints: {0}")]
    Unbalanced(String),

    #[error("monomial of degree {found} cannot be paired with a space of dimension {expected}")]
    MonomialDegree { expected: u32, found: u32 },

    #[error("invalid node decoration h^{0} (expected h^0 or h^2)")]
    InvalidDecoration(u8),

    #[error("unsupported query: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
