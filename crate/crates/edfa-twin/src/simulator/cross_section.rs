//! Parametric erbium cross-section spectra.
//!
//! Absorption and emission cross sections enter the propagation equation
//! only through their values at the channel and pump frequencies. The
//! toolkit ships smooth C-band shapes built from a few Gaussian terms —
//! magnitudes of order 1e-25 m², absorption peaking near 195.6 THz with
//! emission red-shifted — which is all the gain model requires: any
//! smooth positive spectra produce a realistic few-dB gain ripple. The
//! parameters live in the amplifier config file, so alternative shapes
//! (e.g. digitized vendor curves) drop in without code changes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One Gaussian component of a cross-section spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianTerm {
    /// Relative weight of this component (dimensionless).
    pub weight: f64,
    /// Center frequency (THz).
    pub center_thz: f64,
    /// 1/e half-width (THz).
    pub width_thz: f64,
}

/// A cross-section spectrum: scale × sum of Gaussian terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionModel {
    /// Overall scale (m²).
    pub scale_m2: f64,
    pub terms: Vec<GaussianTerm>,
}

impl CrossSectionModel {
    pub fn validate(&self) -> Result<()> {
        let ok = self.scale_m2.is_finite()
            && self.scale_m2 >= 0.0
            && self.terms.iter().all(|t| {
                t.weight.is_finite()
                    && t.weight >= 0.0
                    && t.center_thz.is_finite()
                    && t.center_thz > 0.0
                    && t.width_thz.is_finite()
                    && t.width_thz > 0.0
            });
        if ok {
            Ok(())
        } else {
            Err(Error::Config {
                path: "cross section".into(),
                reason: "scale and weights must be ≥ 0, centers and widths > 0".into(),
            })
        }
    }

    /// Cross section (m²) at a frequency (THz).
    pub fn value_at(&self, freq_thz: f64) -> f64 {
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                let u = (freq_thz - t.center_thz) / t.width_thz;
                t.weight * (-u * u).exp()
            })
            .sum();
        self.scale_m2 * sum
    }

    /// Evaluates the spectrum on a list of frequencies.
    pub fn sample(&self, freqs_thz: &[f64]) -> Vec<f64> {
        freqs_thz.iter().map(|f| self.value_at(*f)).collect()
    }
}
