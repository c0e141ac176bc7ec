use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    /// The conditioning event has probability zero under the given parameters.
    #[error("{quantity} is undefined: {event} outcome is impossible under these parameters")]
    UndefinedPosterior {
        quantity: &'static str,
        event: &'static str,
    },

    #[error("target ppv {target} is unreachable: {reason}")]
    UnreachableTarget { target: f64, reason: &'static str },

    #[error("no positive verdicts were drawn; ppv estimate is undefined")]
    NoPositives,

    #[error("grid has {cells} cells, above the cap of {cap}")]
    GridTooLarge { cells: u128, cap: u64 },

    #[error("invalid grid axis: {0}")]
    InvalidGrid(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("ambiguous scenario: {0}")]
    AmbiguousScenario(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}
