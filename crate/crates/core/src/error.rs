use thiserror::Error;

/// Errors raised by the algebra, FI-set and spectral routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("group too large: order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("orbit too large: exceeds the cap of {cap} points")]
    OrbitTooLarge { cap: usize },

    #[error("degree {n} exceeds the conjugacy-class cap of {cap}")]
    ClassCapExceeded { n: usize, cap: usize },

    #[error("set too large at degree {n}: {size} elements exceeds the cap of {cap}")]
    SetTooLarge { n: usize, size: usize, cap: usize },

    #[error("matrix too large at degree {n}: dimension {size} exceeds the cap of {cap}")]
    MatrixTooLarge { n: usize, size: usize, cap: usize },

    #[error("not a group action: {0}")]
    NotAnAction(String),

    #[error("invalid FI-set specification: {0}")]
    InvalidSpec(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid injection: {0}")]
    InvalidInjection(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("predicate is not equivariant: {x} ~ {y} differs from its image under {sigma} at degree {n}")]
    NotEquivariant {
        n: usize,
        x: String,
        y: String,
        sigma: String,
    },

    #[error("predicate is not persistent: pattern {x} ~ {y} true at degree {from} but false at degree {to}")]
    NotPersistent {
        from: usize,
        to: usize,
        x: String,
        y: String,
    },

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("not in stable range or bound too small: verification failed at degree {degree}")]
    InterpolationFailed { degree: usize },

    #[error("root matching ambiguous across sample degrees {0:?}; more samples needed")]
    AmbiguousRoots(Vec<usize>),

    #[error("stable range not detected up to degree {0}")]
    Unstable(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
