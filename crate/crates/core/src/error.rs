use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid radius profile: {0}")]
    InvalidProfile(String),
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("zero value raised to a non-positive power")]
    ZeroPower,
    #[error("operation undefined on the zero value")]
    ZeroInput,
    #[error("exponent {exponent} has a denominator that is not a power of {p}")]
    NotPAdicExponent { exponent: String, p: u32 },
    #[error("exponent {exponent} exceeds the denominator cap p^{cap}")]
    DenominatorCap { exponent: String, cap: u32 },
    #[error("element has no terms above its floor")]
    BelowFloor,
    #[error("leading term is not unique: {0}")]
    LeadingTie(String),
    #[error("floor too coarse: {0}")]
    FloorTooCoarse(String),
    #[error("requested precision cannot be reached: {0}")]
    FloorUnderflow(String),
    #[error("homomorphism image {index} is not power-bounded")]
    NotPowerBounded { index: usize },
    #[error("norm window violated: {0}")]
    NormWindow(String),
    #[error("oracle failure at q = {q}: {reason}")]
    Oracle { q: String, reason: String },
    #[error("schedule depth {depth} does not reach index {index}")]
    DepthInsufficient { depth: usize, index: usize },
    #[error("nesting violated: {0}")]
    NestingViolated(String),
    #[error("malformed tower: {0}")]
    MalformedTower(String),
    #[error("field descriptors are not nested: {0}")]
    NonNested(String),
    #[error("representation is not unique: {0}")]
    NonUniqueRepresentation(String),
    #[error("empty window: {0}")]
    WindowEmpty(String),
    #[error("step {m} failed verification: {reason}")]
    CertificateFailed { m: usize, reason: String },
    #[error("floor exhausted at division step {step}")]
    FloorExhausted { step: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}
