//! Amplifier operating settings: control mode plus setpoint.
//!
//! An EDFA runs either in automatic gain control (constant total gain) or
//! automatic power control (constant total output power). A setting is the
//! pair (mode, setpoint); datasets, models and simulator configs all carry
//! one so that data fitted under one setting is never silently mixed with
//! another.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pump control strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ControlMode {
    /// Hold total gain (dB) at the setpoint.
    #[serde(rename = "AGC", alias = "agc")]
    Agc,
    /// Hold total output power (dBm) at the setpoint.
    #[serde(rename = "APC", alias = "apc")]
    Apc,
}

impl ControlMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ControlMode::Agc => "AGC",
            ControlMode::Apc => "APC",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "AGC" | "agc" => Ok(ControlMode::Agc),
            "APC" | "apc" => Ok(ControlMode::Apc),
            other => Err(Error::Parse {
                location: "control mode".into(),
                reason: format!("expected AGC or APC, found {other:?}"),
            }),
        }
    }
}

impl std::fmt::Display for ControlMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A control mode with its numeric setpoint: gain in dB for AGC, total
/// output power in dBm for APC.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub mode: ControlMode,
    pub setpoint: f64,
}

impl OperatingPoint {
    pub fn agc(gain_db: f64) -> Self {
        OperatingPoint {
            mode: ControlMode::Agc,
            setpoint: gain_db,
        }
    }

    pub fn apc(power_dbm: f64) -> Self {
        OperatingPoint {
            mode: ControlMode::Apc,
            setpoint: power_dbm,
        }
    }

    /// The total output power (dBm) this setting demands for a given total
    /// input power. Under AGC that is input + gain; under APC it is the
    /// setpoint itself.
    pub fn target_output_dbm(&self, total_input_dbm: f64) -> f64 {
        match self.mode {
            ControlMode::Agc => total_input_dbm + self.setpoint,
            ControlMode::Apc => self.setpoint,
        }
    }
}

impl std::fmt::Display for OperatingPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let unit = match self.mode {
            ControlMode::Agc => "dB",
            ControlMode::Apc => "dBm",
        };
        write!(f, "{} {} {}", self.mode, self.setpoint, unit)
    }
}
