use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} is out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("telemetry needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("telemetry has no channels")]
    NoChannels,

    #[error("channel {channel} has {found} samples, expected {expected}")]
    RaggedChannels {
        channel: String,
        expected: usize,
        found: usize,
    },

    #[error(
        "channel {channel}: max_abs {max_abs} is below the largest sample magnitude {observed}"
    )]
    MaxAbsTooSmall {
        channel: String,
        max_abs: f64,
        observed: f64,
    },

    #[error("channel {channel} contains a non-finite sample at index {index}")]
    NonFiniteSample { channel: String, index: usize },

    #[error("duplicate channel {0}")]
    DuplicateChannel(String),

    #[error("unknown channel {0}")]
    UnknownChannel(String),

    #[error(
        "lag of {lag_steps} samples on {channel} is not shorter than the {length}-sample telemetry"
    )]
    LagTooLong {
        channel: String,
        lag_steps: usize,
        length: usize,
    },

    #[error("lag on {0} must be at least one sample")]
    ZeroLag(String),

    #[error("embedding needs at least one axis")]
    NoAxes,

    #[error("channel {channel}: signal maximum {max_abs} is below its resolution {error}")]
    BelowResolution {
        channel: String,
        max_abs: f64,
        error: f64,
    },

    #[error("point series is empty")]
    EmptySeries,

    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("characteristic points {first} and {second} are closer than r0 (squared distance {distance})")]
    SelectionViolated {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("column {column} of the transition matrix sums to {sum}")]
    NotStochastic { column: usize, sum: f64 },

    #[error("matrix entry ({row}, {column}) = {value} is not a probability")]
    InvalidProbability {
        row: usize,
        column: usize,
        value: f64,
    },

    #[error("distribution sums to {0} instead of 1")]
    NotNormalized(f64),

    #[error("distribution has an invalid entry {value} at {index}")]
    InvalidDistributionEntry { index: usize, value: f64 },

    #[error("sparsification count {m} must lie in 1..={states}")]
    InvalidSparsify { m: usize, states: usize },

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("Perron check failed: leading eigenvalue {re}{im:+}i is not a unit real eigenvalue")]
    PerronViolation { re: f64, im: f64 },

    #[error("no eigenvalue within 1e-6 of one; the matrix is not stochastic")]
    NoUnitEigenvalue,

    #[error("stationary residual {0} exceeds tolerance")]
    StationaryResidual(f64),

    #[error("mode with eigenvalue {re}{im:+}i does not oscillate")]
    NonOscillatory { re: f64, im: f64 },

    #[error("index {index} is out of range for {len} states")]
    StateIndex { index: usize, len: usize },

    #[error("matrix is singular")]
    Singular,
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}
