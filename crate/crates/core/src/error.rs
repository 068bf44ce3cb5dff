use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state vectors must have dimension at least 1")]
    ZeroDimension,

    #[error("invalid metric parameters: {0}")]
    InvalidParams(String),

    #[error("probability {name} = {value} outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("components {first} and {second} are separated by {distance}, not more than the cutoff {cutoff}")]
    InsufficientSeparation {
        first: usize,
        second: usize,
        distance: f64,
        cutoff: f64,
    },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for {len} components")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("detection requested for a component that is not observed")]
    DetectionWithoutObservation,

    #[error("outcome has zero probability (existence {existence}, detection probability {detection_probability})")]
    ImpossibleOutcome {
        existence: f64,
        detection_probability: f64,
    },

    #[error("enumeration over {n} components exceeds the limit of {limit}")]
    EnumerationLimit { n: usize, limit: usize },

    #[error("cost matrix entry ({row}, {col}) is not finite")]
    NonFiniteCost { row: usize, col: usize },

    #[error("invalid sensing cost {0}: must be non-negative")]
    InvalidSensingCost(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
