use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} is not supported (need even n with 4 <= n <= 24)")]
    UnsupportedDegree(u32),
    #[error("auxiliary field degree {0} is out of range (need 1 <= l <= 24)")]
    UnsupportedAuxDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { modulus: u64, n: u32 },
    #[error("modulus {0:#x} is not a primitive polynomial")]
    NotPrimitive(u64),
    #[error("element {value:#x} is not in GF(2^{n})")]
    OutOfField { value: u32, n: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{i} does not divide {j}")]
    NotDivisor { i: u32, j: u32 },
    #[error("element {value:#x} does not lie in the subfield GF(2^{degree})")]
    NotInSubfield { value: u32, degree: u32 },
    #[error("invalid parameters n={n}, k={k}: {reason}")]
    InvalidParams { n: u32, k: u32, reason: &'static str },
    #[error("the pair (alpha, beta) = (0, 0) has no associated rank")]
    ZeroPair,
    #[error("psi is only defined for alpha * beta != 0")]
    DegeneratePsi,
    #[error("operation requires d' = 2d (m/d and k/d both odd)")]
    RequiresBothOdd,
    #[error("row '{row}' of {table} has a non-integral multiplicity {value}")]
    NonIntegral { table: String, row: String, value: String },
    #[error("row '{row}' of {table} has a negative multiplicity {value}")]
    NegativeMultiplicity { table: String, row: String, value: String },
    #[error("{check}: expected {expected}, found {found}")]
    Verification { check: String, expected: String, found: String },
    #[error("sequences have different periods ({0} vs {1})")]
    PeriodMismatch(usize, usize),
    #[error("shift {tau} out of range for period {period}")]
    ShiftOutOfRange { tau: usize, period: usize },
    #[error("{what} at n={n} exceeds the sweep budget (n <= {limit}); pass --budget-override")]
    BudgetExceeded { what: &'static str, n: u32, limit: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
