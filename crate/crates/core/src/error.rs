use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("points {0} and {1} are not strictly ordered")]
    NotStrictlyOrdered(usize, usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("thresholds must satisfy a < b, got a = {a}, b = {b}")]
    BadThresholds { a: f64, b: f64 },
    #[error("bad indices: {0}")]
    BadIndices(String),
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("family is empty")]
    EmptyFamily,
    #[error("tolerance must be positive, got {0}")]
    ToleranceNonPositive(f64),
    #[error("epsilon must be positive, got {0}")]
    EpsilonNonPositive(f64),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("member {member} decreases between points {at} and {}", at + 1)]
    NotMonotone { member: usize, at: usize },
    #[error("member {member} is not increasing into the target poset between points {lower} and {upper}")]
    NotIncreasing { member: usize, lower: usize, upper: usize },
    #[error("member {member} has variation {variation}, above the radius {radius}")]
    NotBVr { member: usize, variation: f64, radius: f64 },
    #[error("members do not share the target space (member {0})")]
    TargetMismatch(usize),
    #[error("draw budget of {draws} exhausted at stage {stage}")]
    BudgetExhausted { stage: usize, draws: usize },
    #[error("chain points {0} and {1} share all family values")]
    NotSeparating(usize, usize),
    #[error("ground set of size {size} exceeds the exhaustive bound {max}")]
    GroundTooLarge { size: usize, max: usize },
    #[error("member {0} is not fragmented at the required scale")]
    NotFragmented(usize),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("grid point {0} hits a zero of the sine")]
    GridHitsZero(usize),
    #[error("parameter too large: {0}")]
    TooLarge(String),
    #[error("linear program failed: {0}")]
    Lp(String),
}
