use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid discriminant {0}: must be congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(i64),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("discriminant {0} is not positive")]
    NonPositiveDiscriminant(String),

    #[error("form {0} is not reduced")]
    NotReduced(String),

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(String),

    #[error("discriminant {0} is not a perfect square")]
    NonSquareDiscriminant(String),

    #[error("reduction of {form} did not terminate within {steps} steps")]
    ReductionDidNotTerminate { form: String, steps: usize },

    #[error("no represented value coprime to {d1} found for {form} within |x|,|y| <= {bound}")]
    RepresentativeNotFound { d1: i64, form: String, bound: i64 },

    #[error("{d1} does not split discriminant {disc} into two discriminants")]
    InvalidGenusSplit { d1: i64, disc: String },

    #[error("series is not invertible: leading coefficient is zero")]
    NotInvertible,

    #[error("coefficient q^{requested} requested but series is only known up to q^{truncation}")]
    TruncationExceeded { requested: i64, truncation: i64 },

    #[error("no echelon basis element q^-{order} + ... exists in weight {weight}")]
    NoSuchBasisElement { weight: i64, order: i64 },

    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: i64, found: i64 },

    #[error("series has no weight tag")]
    MissingWeight,

    #[error("series has a non-zero constant term")]
    ConstantTermPresent,

    #[error("twist d = {d} is not invertible modulo c = {c}")]
    NonInvertibleTwist { c: i64, d: i64 },

    #[error("incomplete gamma order {0} is not supported")]
    UnsupportedOrder(i64),

    #[error("incomplete gamma Γ(0, x) has a pole at x = 0")]
    GammaPole,

    #[error("{what}: gap {gap:e} exceeds tolerance {tolerance:e}")]
    ToleranceNotMet { what: String, gap: f64, tolerance: f64 },

    #[error("index m = {m} is not admissible for k = {k}")]
    InvalidIndex { m: i64, k: i64 },

    #[error("delta = {delta} is not admissible for k = {k}")]
    InvalidDelta { delta: i64, k: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
