use thiserror::Error;

/// Which admissibility clause a candidate fix- or dep-vector violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityClause {
    /// The components must sum to `k - 1`.
    FixSum { expected: u64, found: u64 },
    /// The last component `n_q` must be at least 1.
    FixLastZero,
    /// `n_i >= sig_i` must hold componentwise; `index` is the first violation (1-based).
    FixBelowSignature { index: usize },
    /// Deployment components must be non-decreasing; `index` is the first violation (1-based).
    DepNotMonotone { index: usize },
    /// The last deployment component must equal `q`.
    DepLastNotQ { found: u64, q: u64 },
    /// A deployment component exceeds `q`.
    DepOutOfRange { index: usize },
    /// A marked interval index of the signature is missing from the components.
    DepMissingMarked { index: usize },
}

impl std::fmt::Display for AdmissibilityClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::FixSum { expected, found } => {
                write!(f, "components must sum to k-1 = {expected}, got {found}")
            }
            Self::FixLastZero => write!(f, "last component n_q must be >= 1"),
            Self::FixBelowSignature { index } => {
                write!(f, "n_{index} is below the signature bit at index {index}")
            }
            Self::DepNotMonotone { index } => {
                write!(f, "components must be non-decreasing (violated at w_{index})")
            }
            Self::DepLastNotQ { found, q } => {
                write!(f, "last component must equal q = {q}, got {found}")
            }
            Self::DepOutOfRange { index } => write!(f, "w_{index} exceeds q"),
            Self::DepMissingMarked { index } => {
                write!(f, "marked interval index {index} does not appear among the components")
            }
        }
    }
}

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),

    #[error("malformed vector: {0}")]
    MalformedVector(String),

    #[error("rotation power {p} is not coprime to {q}; rho^{p} is not a {q}-cycle")]
    NotCoprime { q: usize, p: usize },

    #[error("q = {q} exceeds the enumeration bound {bound}")]
    EnumerationBound { q: usize, bound: usize },

    #[error("winding components must be non-negative (component {index} is {value})")]
    NegativeWinding { index: usize, value: i64 },

    #[error(
        "matrix column sum is 1 (rotation cycle): the stationary system is not applicable; \
         realize the cycle under m_k with k >= 2 instead"
    )]
    ColumnSumOne,

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("cycle is not realizable under m_d: the signature does not end in 1")]
    NotRealizable,

    #[error(
        "cycle is a rotation cycle (descent 1): there is no minimal realization under m_1; \
         pass a degree k >= 2 and a fix- or dep-vector"
    )]
    RotationCycle,

    #[error("vector is not admissible: {0}")]
    NotAdmissible(AdmissibilityClause),

    #[error("shift {shift} is out of range: must satisfy 0 <= shift < n_q = {n_q}")]
    ShiftOutOfRange { shift: u64, n_q: u64 },

    #[error("degree k = {k} is too small: need k >= {min} for this cycle")]
    DegreeTooSmall { k: u32, min: u32 },

    #[error("enumeration budget exceeded: k^q = {needed} > budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
