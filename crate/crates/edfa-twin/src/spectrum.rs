//! Channel grids and per-channel spectra.
//!
//! Everything downstream — simulator, models, metrics — works on fixed
//! WDM channel grids. A [`ChannelGrid`] lists channel center frequencies;
//! [`PowerSpectrum`] and [`GainSpectrum`] attach per-channel values plus a
//! boolean mask to a shared grid. Spectra are immutable after construction
//! so they can be shared freely across threads; derived spectra are new
//! values.
//!
//! Public-facing powers are always dBm and gains dB. Linear milliwatts
//! appear only transiently inside operations.

use std::sync::Arc;

use crate::error::{Error, Result};

/// A fixed set of WDM channel center frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelGrid {
    frequencies_thz: Vec<f64>,
    channel_bandwidth_ghz: f64,
}

impl ChannelGrid {
    /// Builds a grid from explicit center frequencies (THz).
    ///
    /// Frequencies must be strictly increasing, positive, and non-empty.
    pub fn new(frequencies_thz: Vec<f64>, channel_bandwidth_ghz: f64) -> Result<Self> {
        if frequencies_thz.is_empty() {
            return Err(Error::EmptySelection {
                context: "channel grid must contain at least one channel".into(),
            });
        }
        if !frequencies_thz.iter().all(|f| f.is_finite() && *f > 0.0) {
            return Err(Error::NonFinite {
                context: "channel grid frequencies".into(),
            });
        }
        if !frequencies_thz.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config {
                path: "channel grid".into(),
                reason: "frequencies must be strictly increasing".into(),
            });
        }
        if !(channel_bandwidth_ghz.is_finite() && channel_bandwidth_ghz > 0.0) {
            return Err(Error::Config {
                path: "channel grid".into(),
                reason: "channel bandwidth must be positive".into(),
            });
        }
        Ok(ChannelGrid {
            frequencies_thz,
            channel_bandwidth_ghz,
        })
    }

    /// Builds an evenly spaced grid: `count` channels starting at
    /// `start_thz` with `spacing_ghz` between centers.
    pub fn uniform(
        start_thz: f64,
        spacing_ghz: f64,
        count: usize,
        channel_bandwidth_ghz: f64,
    ) -> Result<Self> {
        let freqs = (0..count)
            .map(|i| start_thz + i as f64 * spacing_ghz * 1e-3)
            .collect();
        ChannelGrid::new(freqs, channel_bandwidth_ghz)
    }

    pub fn len(&self) -> usize {
        self.frequencies_thz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies_thz.is_empty()
    }

    pub fn frequencies_thz(&self) -> &[f64] {
        &self.frequencies_thz
    }

    pub fn channel_bandwidth_ghz(&self) -> f64 {
        self.channel_bandwidth_ghz
    }

    /// Whether two grids describe the same channels to within `tol_thz`.
    pub fn approx_eq(&self, other: &ChannelGrid, tol_thz: f64) -> bool {
        self.frequencies_thz.len() == other.frequencies_thz.len()
            && self
                .frequencies_thz
                .iter()
                .zip(&other.frequencies_thz)
                .all(|(a, b)| (a - b).abs() <= tol_thz)
            && (self.channel_bandwidth_ghz - other.channel_bandwidth_ghz).abs() <= tol_thz * 1e3
    }
}

/// Default tolerance when checking that two grids match (THz).
pub const GRID_TOLERANCE_THZ: f64 = 1e-6;

/// Errors unless the two grids agree within [`GRID_TOLERANCE_THZ`].
pub fn ensure_same_grid(a: &ChannelGrid, b: &ChannelGrid, context: &str) -> Result<()> {
    if a.approx_eq(b, GRID_TOLERANCE_THZ) {
        Ok(())
    } else if a.len() != b.len() {
        Err(Error::GridMismatch {
            context: format!("{context}: {} channels vs {}", a.len(), b.len()),
        })
    } else {
        Err(Error::GridMismatch {
            context: format!("{context}: same length but different frequencies"),
        })
    }
}

/// Per-channel power levels (dBm) with a loaded/unloaded mask.
///
/// Unloaded channels carry their measured residual power — a small finite
/// value, never negative infinity. The mask, not a sentinel power, encodes
/// loading.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    grid: Arc<ChannelGrid>,
    values_dbm: Vec<f64>,
    loaded: Vec<bool>,
}

impl PowerSpectrum {
    pub fn new(grid: Arc<ChannelGrid>, values_dbm: Vec<f64>, loaded: Vec<bool>) -> Result<Self> {
        if values_dbm.len() != grid.len() || loaded.len() != grid.len() {
            return Err(Error::GridMismatch {
                context: format!(
                    "power spectrum with {} values / {} mask entries on a {}-channel grid",
                    values_dbm.len(),
                    loaded.len(),
                    grid.len()
                ),
            });
        }
        if !values_dbm.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "power spectrum values".into(),
            });
        }
        Ok(PowerSpectrum {
            grid,
            values_dbm,
            loaded,
        })
    }

    pub fn grid(&self) -> &Arc<ChannelGrid> {
        &self.grid
    }

    pub fn values_dbm(&self) -> &[f64] {
        &self.values_dbm
    }

    pub fn loaded(&self) -> &[bool] {
        &self.loaded
    }

    pub fn loaded_count(&self) -> usize {
        self.loaded.iter().filter(|l| **l).count()
    }
}

/// Per-channel gain (dB) with a validity mask.
///
/// Gain is only defined where a channel was loaded, so values on invalid
/// channels are meaningless (conventionally NaN) and excluded from every
/// computation by the mask.
#[derive(Debug, Clone, PartialEq)]
pub struct GainSpectrum {
    grid: Arc<ChannelGrid>,
    values_db: Vec<f64>,
    valid: Vec<bool>,
}

impl GainSpectrum {
    pub fn new(grid: Arc<ChannelGrid>, values_db: Vec<f64>, valid: Vec<bool>) -> Result<Self> {
        if values_db.len() != grid.len() || valid.len() != grid.len() {
            return Err(Error::GridMismatch {
                context: format!(
                    "gain spectrum with {} values / {} mask entries on a {}-channel grid",
                    values_db.len(),
                    valid.len(),
                    grid.len()
                ),
            });
        }
        for (i, (v, ok)) in values_db.iter().zip(&valid).enumerate() {
            if *ok && !v.is_finite() {
                return Err(Error::NonFinite {
                    context: format!("gain spectrum value on valid channel {i}"),
                });
            }
        }
        Ok(GainSpectrum {
            grid,
            values_db,
            valid,
        })
    }

    pub fn grid(&self) -> &Arc<ChannelGrid> {
        &self.grid
    }

    pub fn values_db(&self) -> &[f64] {
        &self.values_db
    }

    pub fn valid(&self) -> &[bool] {
        &self.valid
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }
}

/// Which channels participate in an aggregate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskPolicy {
    /// Every channel, loaded or not.
    All,
    /// Only channels flagged as loaded.
    LoadedOnly,
}

/// dBm → mW. Errors on non-finite input.
pub fn dbm_to_mw(p_dbm: f64) -> Result<f64> {
    if !p_dbm.is_finite() {
        return Err(Error::NonFinite {
            context: "dbm_to_mw input".into(),
        });
    }
    Ok(10f64.powf(p_dbm / 10.0))
}

/// mW → dBm. Errors on p ≤ 0 (an empty channel has no dBm value).
pub fn mw_to_dbm(p_mw: f64) -> Result<f64> {
    if !(p_mw.is_finite() && p_mw > 0.0) {
        return Err(Error::NonPositivePower { value_mw: p_mw });
    }
    Ok(10.0 * p_mw.log10())
}

/// Total power (dBm) of the linear sum over the selected channels.
pub fn total_power(s: &PowerSpectrum, policy: MaskPolicy) -> Result<f64> {
    let mut sum_mw = 0.0;
    let mut selected = 0usize;
    for (value, loaded) in s.values_dbm().iter().zip(s.loaded()) {
        let include = match policy {
            MaskPolicy::All => true,
            MaskPolicy::LoadedOnly => *loaded,
        };
        if include {
            sum_mw += dbm_to_mw(*value)?;
            selected += 1;
        }
    }
    if selected == 0 {
        return Err(Error::EmptySelection {
            context: "total_power over zero channels".into(),
        });
    }
    mw_to_dbm(sum_mw)
}
