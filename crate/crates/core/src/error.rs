use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("no modulus table entry for F_{{{p}^{l}}}")]
    NoModulus { p: u32, l: u32 },
    #[error("field size {size} exceeds the bound {bound}")]
    FieldTooLarge { size: u64, bound: u64 },
    #[error("subspace dimension {m} exceeds ambient dimension {n}")]
    DimensionTooLarge { m: usize, n: usize },
    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("invalid Dynkin graph {family}{rank}")]
    InvalidGraph { family: char, rank: usize },
    #[error("weight is not in the lattice image of kappa")]
    NotInLattice,
    #[error("weight is not concentrated at vertex 1")]
    NotConcentrated,
    #[error("sequence {0:?} is not an ordered partition")]
    NotAPartition(Vec<i64>),
    #[error("graph is not of type A")]
    NotTypeA,
    #[error("vector has length {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("highest weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight is not positive-integrable")]
    NotPositiveIntegrable,
    #[error("size mismatch: total {total} but factors sum to {parts}")]
    SizeMismatch { total: String, parts: String },

    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("datum is not flat")]
    NotFlat,
    #[error("datum is not stable")]
    NotStable,
    #[error("subspace is not a subrepresentation")]
    NotSubrep,
    #[error("word is not a composable path")]
    NotComposable,
    #[error("raw count {raw} is not divisible by group order {order}")]
    InexactOrbitCount { raw: String, order: String },

    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error("held-out check failed at q={q}: observed {observed}, fit predicts {predicted}")]
    ValidationFailed {
        q: String,
        observed: String,
        predicted: String,
    },
    #[error("insufficient sample points: need {need}, have {have}")]
    InsufficientPoints { need: usize, have: usize },
    #[error("estimated cost {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("cross-check mismatch at q={q}: quiver side {quiver}, Hall side {hall}")]
    CrossCheckMismatch {
        q: u32,
        quiver: String,
        hall: String,
    },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
