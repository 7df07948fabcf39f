//! Error type shared across the toolkit.
//!
//! Every fallible operation returns [`Error`]. Each variant carries enough
//! context to diagnose the failure from the message alone, and maps to a
//! stable machine-readable category string used by the command-line
//! interface on exit.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input was NaN or infinite where a finite value is required.
    #[error("non-finite value in {context}")]
    NonFinite { context: String },

    /// Conversion to dBm of a power that is zero or negative.
    #[error("cannot express {value_mw} mW in dBm (power must be positive)")]
    NonPositivePower { value_mw: f64 },

    /// An aggregate was requested over an empty set of channels or values.
    #[error("empty selection: {context}")]
    EmptySelection { context: String },

    /// Two objects that must share a frequency grid do not.
    #[error("grid mismatch: {context}")]
    GridMismatch { context: String },

    /// Channel masks disagree where identical masks are required.
    #[error("mask mismatch: {context}")]
    MaskMismatch { context: String },

    /// The adaptive integrator shrank its step below the resolvable minimum.
    #[error("integrator step underflow at z = {z} m (step {step} m); parameters are stiff or unphysical")]
    IntegratorUnderflow { z: f64, step: f64 },

    /// The control loop cannot reach the requested setpoint within pump limits.
    #[error("setpoint unreachable: {context}")]
    SetpointUnreachable { context: String },

    /// Too few inputs for a structural verification that needs several.
    #[error("need at least {required} inputs, got {actual}")]
    InsufficientInputs { required: usize, actual: usize },

    /// A dataset protocol that can never load a channel.
    #[error("protocol has no loadable channels")]
    ProtocolNoChannels,

    /// Too few samples to fit a model.
    #[error("fit requires at least {required} samples, got {actual}")]
    FitInsufficientSamples { required: usize, actual: usize },

    /// A channel whose fitted gain swing is not positive, contradicting the
    /// monotone one-variable family the model assumes.
    #[error("channel {channel} ({frequency_thz} THz) has non-positive gain swing {delta_g_db} dB")]
    FitNonPositiveSwing {
        channel: usize,
        frequency_thz: f64,
        delta_g_db: f64,
    },

    /// Root solve target outside what the search bracket can produce.
    #[error("target {target} unattainable for x in [{lo}, {hi}] (attainable range [{f_lo}, {f_hi}])")]
    TargetOutOfBracket {
        target: f64,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// A file carries a schema or version id other than the expected one.
    #[error("schema mismatch: expected {expected:?}, found {found:?}")]
    SchemaMismatch { expected: String, found: String },

    /// Malformed text where a structured record was expected.
    #[error("parse error at {location}: {reason}")]
    Parse { location: String, reason: String },

    /// Interpolated noise at or above the measured output on a loaded channel.
    #[error("channel {channel} ({frequency_thz} THz): output {output_mw} mW does not exceed interpolated noise {noise_mw} mW")]
    NoiseExceedsSignal {
        channel: usize,
        frequency_thz: f64,
        output_mw: f64,
        noise_mw: f64,
    },

    /// ASE subtraction without any reference (even-index) channels.
    #[error("no noise reference channels available for interpolation")]
    NoReferenceChannels,

    /// A dataset split where one side came out empty.
    #[error("split produced an empty {side} side")]
    EmptySplit { side: String },

    /// Training loss became NaN.
    #[error("training diverged at epoch {epoch}: loss is NaN (check learning rate and input normalization)")]
    TrainingDiverged { epoch: usize },

    /// An experiment plan that cannot be run on the given dataset.
    #[error("infeasible experiment: {context}")]
    InfeasibleExperiment { context: String },

    /// Invalid configuration contents.
    #[error("invalid config {path}: {reason}")]
    Config { path: String, reason: String },

    /// Filesystem failure wrapping the underlying cause.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable machine-parseable category for command-line consumers.
    pub fn category(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NON_FINITE",
            Error::NonPositivePower { .. } => "NON_POSITIVE_POWER",
            Error::EmptySelection { .. } => "EMPTY_SELECTION",
            Error::GridMismatch { .. } => "GRID_MISMATCH",
            Error::MaskMismatch { .. } => "MASK_MISMATCH",
            Error::IntegratorUnderflow { .. } => "INTEGRATOR_UNDERFLOW",
            Error::SetpointUnreachable { .. } => "SETPOINT_UNREACHABLE",
            Error::InsufficientInputs { .. } => "INSUFFICIENT_INPUTS",
            Error::ProtocolNoChannels => "PROTOCOL_NO_CHANNELS",
            Error::FitInsufficientSamples { .. } => "FIT_INSUFFICIENT_SAMPLES",
            Error::FitNonPositiveSwing { .. } => "FIT_NON_POSITIVE_SWING",
            Error::TargetOutOfBracket { .. } => "TARGET_OUT_OF_BRACKET",
            Error::SchemaMismatch { .. } => "SCHEMA_MISMATCH",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::NoiseExceedsSignal { .. } => "NOISE_EXCEEDS_SIGNAL",
            Error::NoReferenceChannels => "NO_REFERENCE_CHANNELS",
            Error::EmptySplit { .. } => "EMPTY_SPLIT",
            Error::TrainingDiverged { .. } => "TRAINING_DIVERGED",
            Error::InfeasibleExperiment { .. } => "INFEASIBLE_EXPERIMENT",
            Error::Config { .. } => "CONFIG_ERROR",
            Error::Io { .. } => "IO_ERROR",
        }
    }

    /// Helper for wrapping io errors with the offending path.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_are_upper_snake() {
        let samples = [
            Error::NonFinite {
                context: "x".into(),
            },
            Error::FitInsufficientSamples {
                required: 4,
                actual: 1,
            },
            Error::GridMismatch {
                context: "y".into(),
            },
        ];
        for e in &samples {
            let cat = e.category();
            assert!(!cat.is_empty());
            assert!(cat
                .chars()
                .all(|c| c.is_ascii_uppercase() || c == '_'));
        }
    }

    #[test]
    fn fit_category_matches_cli_contract() {
        let e = Error::FitInsufficientSamples {
            required: 4,
            actual: 1,
        };
        assert_eq!(e.category(), "FIT_INSUFFICIENT_SAMPLES");
        let e = Error::GridMismatch {
            context: "model has 80 channels, query has 83".into(),
        };
        assert_eq!(e.category(), "GRID_MISMATCH");
    }
}
