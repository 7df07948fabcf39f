//! Dataset types, loading protocols, preprocessing and splits.
//!
//! A [`Dataset`] is a list of measurement records sharing one channel grid
//! and one amplifier setting. Records arrive either from the simulator,
//! from the native on-disk format ([`format`]), or from public measurement
//! files ([`public`]). Preprocessing ([`subtract_ase`]) turns raw output
//! spectra into gain; [`split`] implements the train/test strategies used
//! by the experiments, including the generalizability splits by
//! loaded-channel count and by total input power.

pub mod format;
pub mod public;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::setting::OperatingPoint;
use crate::spectrum::{
    dbm_to_mw, ensure_same_grid, mw_to_dbm, total_power, ChannelGrid, GainSpectrum, MaskPolicy,
    PowerSpectrum,
};

/// Bookkeeping attached to every record.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    /// Where the record came from (e.g. `simulator`, `public:file.csv`).
    pub source: String,
    /// Stable identifier within the source.
    pub id: String,
    /// Number of loaded channels in the input.
    pub loaded_count: usize,
    /// Total input power over loaded channels (dBm).
    pub total_input_dbm: f64,
}

/// One measurement: input spectrum, optional raw output, optional gain.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub input: PowerSpectrum,
    /// Output spectrum as measured, before any noise subtraction.
    pub output_raw: Option<PowerSpectrum>,
    /// Gain, present after preprocessing or direct ingestion.
    pub gain: Option<GainSpectrum>,
    pub setting: OperatingPoint,
    pub meta: SampleMeta,
}

impl SampleRecord {
    /// Checks the record's internal consistency against a dataset grid.
    fn validate(&self, grid: &ChannelGrid, setting: &OperatingPoint) -> Result<()> {
        ensure_same_grid(self.input.grid(), grid, "record input")?;
        if let Some(out) = &self.output_raw {
            ensure_same_grid(out.grid(), grid, "record output")?;
        }
        if let Some(gain) = &self.gain {
            ensure_same_grid(gain.grid(), grid, "record gain")?;
        }
        if self.output_raw.is_none() && self.gain.is_none() {
            return Err(Error::Config {
                path: format!("record {}", self.meta.id),
                reason: "record carries neither raw output nor gain".into(),
            });
        }
        if self.setting != *setting {
            return Err(Error::Config {
                path: format!("record {}", self.meta.id),
                reason: format!(
                    "record setting {} differs from dataset setting {}",
                    self.setting, setting
                ),
            });
        }
        if self.meta.loaded_count != self.input.loaded_count() {
            return Err(Error::Config {
                path: format!("record {}", self.meta.id),
                reason: format!(
                    "meta says {} loaded channels, mask says {}",
                    self.meta.loaded_count,
                    self.input.loaded_count()
                ),
            });
        }
        Ok(())
    }
}

/// A collection of records sharing a grid and a setting.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub grid: Arc<ChannelGrid>,
    pub setting: OperatingPoint,
    pub records: Vec<SampleRecord>,
    /// Free-form origin tag: simulator config hash or file source.
    pub provenance: String,
}

impl Dataset {
    pub fn new(
        grid: Arc<ChannelGrid>,
        setting: OperatingPoint,
        records: Vec<SampleRecord>,
        provenance: String,
    ) -> Result<Self> {
        for record in &records {
            record.validate(&grid, &setting)?;
        }
        Ok(Dataset {
            grid,
            setting,
            records,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// A new dataset holding the records at `indices`, in that order.
    pub fn subset(&self, indices: &[usize], note: &str) -> Result<Dataset> {
        let records = indices
            .iter()
            .map(|&i| {
                self.records.get(i).cloned().ok_or(Error::InfeasibleExperiment {
                    context: format!("record index {i} out of range ({} records)", self.len()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(
            self.grid.clone(),
            self.setting,
            records,
            format!("{} | {}", self.provenance, note),
        )
    }

    /// (input, gain) pairs for fitting; errors if any record lacks gain.
    pub fn training_pairs(&self) -> Result<Vec<(PowerSpectrum, GainSpectrum)>> {
        self.records
            .iter()
            .map(|r| {
                let gain = r.gain.clone().ok_or(Error::Config {
                    path: format!("record {}", r.meta.id),
                    reason: "record has no gain (run ASE subtraction first?)".into(),
                })?;
                Ok((r.input.clone(), gain))
            })
            .collect()
    }
}

/// How the channel-loading generator draws random inputs.
///
/// Mirrors the measurement campaign configuration: which channels may
/// carry signal, how likely each is to be loaded, the per-sample average
/// power band, the residual power on unloaded channels, the per-channel
/// power perturbation, and an optional linear spectral tilt whose
/// peak-to-peak extent is drawn per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetProtocol {
    /// Which channels may carry signal.
    pub loadable: Vec<bool>,
    /// Probability that a loadable channel is loaded in a given sample.
    pub load_probability: f64,
    /// Per-sample average loaded-channel power is uniform in this range (dBm).
    pub avg_power_range_dbm: (f64, f64),
    /// Residual power on unloaded channels (dBm).
    pub unloaded_power_dbm: f64,
    /// Per-channel power perturbation, uniform in this range (dB).
    pub perturbation_range_db: (f64, f64),
    /// Peak-to-peak linear tilt across the band, drawn uniform in
    /// [−tilt_range_db, +tilt_range_db] per sample; 0 disables tilt.
    pub tilt_range_db: f64,
}

impl DatasetProtocol {
    pub fn validate(&self) -> Result<()> {
        if !self.loadable.iter().any(|l| *l) {
            return Err(Error::ProtocolNoChannels);
        }
        let ordered = self.avg_power_range_dbm.0 <= self.avg_power_range_dbm.1
            && self.perturbation_range_db.0 <= self.perturbation_range_db.1;
        let prob_ok = (0.0..=1.0).contains(&self.load_probability);
        if !ordered || !prob_ok || self.tilt_range_db < 0.0 {
            return Err(Error::Config {
                path: "protocol".into(),
                reason: "ranges must be ordered, probability in [0,1], tilt ≥ 0".into(),
            });
        }
        Ok(())
    }
}

/// Which 1-based channel numbers carry signal under the alternating
/// load/leave-empty measurement convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelParity {
    /// Channels 1, 3, 5, … carry signal (indices 0, 2, 4, …).
    OddNumbered,
    /// Channels 2, 4, 6, … carry signal (indices 1, 3, 5, …).
    EvenNumbered,
}

impl ChannelParity {
    /// Whether 0-based channel `index` belongs to the signal set.
    pub fn is_signal(&self, index: usize) -> bool {
        match self {
            ChannelParity::OddNumbered => index % 2 == 0,
            ChannelParity::EvenNumbered => index % 2 == 1,
        }
    }
}

/// On-disk protocol description.
#[derive(Debug, Deserialize)]
struct ProtocolFile {
    schema: String,
    /// "odd" | "even" | "all" (1-based channel numbering).
    loadable: String,
    load_probability: f64,
    avg_power_range_dbm: [f64; 2],
    unloaded_power_dbm: f64,
    perturbation_range_db: [f64; 2],
    #[serde(default)]
    tilt_range_db: f64,
}

pub const PROTOCOL_SCHEMA: &str = "edfa-protocol/v1";

impl DatasetProtocol {
    /// Parses a protocol config and realizes the loadable mask onto a grid.
    pub fn from_toml_str(text: &str, grid: &ChannelGrid) -> Result<Self> {
        let file: ProtocolFile = toml::from_str(text).map_err(|e| Error::Config {
            path: "protocol".into(),
            reason: e.to_string(),
        })?;
        if file.schema != PROTOCOL_SCHEMA {
            return Err(Error::SchemaMismatch {
                expected: PROTOCOL_SCHEMA.into(),
                found: file.schema,
            });
        }
        let loadable: Vec<bool> = match file.loadable.as_str() {
            "odd" => (0..grid.len())
                .map(|i| ChannelParity::OddNumbered.is_signal(i))
                .collect(),
            "even" => (0..grid.len())
                .map(|i| ChannelParity::EvenNumbered.is_signal(i))
                .collect(),
            "all" => vec![true; grid.len()],
            other => {
                return Err(Error::Config {
                    path: "protocol".into(),
                    reason: format!("loadable must be odd|even|all, found {other:?}"),
                })
            }
        };
        let protocol = DatasetProtocol {
            loadable,
            load_probability: file.load_probability,
            avg_power_range_dbm: (file.avg_power_range_dbm[0], file.avg_power_range_dbm[1]),
            unloaded_power_dbm: file.unloaded_power_dbm,
            perturbation_range_db: (file.perturbation_range_db[0], file.perturbation_range_db[1]),
            tilt_range_db: file.tilt_range_db,
        };
        protocol.validate()?;
        Ok(protocol)
    }

    pub fn from_toml_file(path: &std::path::Path, grid: &ChannelGrid) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        DatasetProtocol::from_toml_str(&text, grid)
    }
}

/// Replaces a record's raw output with gain by removing the amplified
/// spontaneous emission floor.
///
/// Deliberately empty neighbor channels sample the noise floor; their
/// output powers are interpolated linearly in milliwatts over frequency
/// (noise adds linearly — interpolating in dB would bias low) to estimate
/// the noise under each signal channel, which is subtracted before the
/// gain ratio is taken. Outside the outermost reference channels the
/// nearest reference value is used. Reference channels are marked invalid
/// in the resulting gain.
pub fn subtract_ase(record: &SampleRecord, signal_parity: ChannelParity) -> Result<SampleRecord> {
    let output = record.output_raw.as_ref().ok_or(Error::Config {
        path: format!("record {}", record.meta.id),
        reason: "ASE subtraction needs a raw output spectrum".into(),
    })?;
    let grid = record.input.grid();
    let freqs = grid.frequencies_thz();
    let n = grid.len();

    // Reference channels must be empty: a loaded reference would put
    // signal power into the interpolated noise floor.
    for i in 0..n {
        if !signal_parity.is_signal(i) && record.input.loaded()[i] {
            return Err(Error::MaskMismatch {
                context: format!("noise reference channel {i} is loaded"),
            });
        }
    }

    let refs: Vec<(f64, f64)> = (0..n)
        .filter(|i| !signal_parity.is_signal(*i))
        .map(|i| Ok((freqs[i], dbm_to_mw(output.values_dbm()[i])?)))
        .collect::<Result<Vec<_>>>()?;
    if refs.is_empty() {
        return Err(Error::NoReferenceChannels);
    }

    let noise_at = |f: f64| -> f64 {
        if f <= refs[0].0 {
            return refs[0].1;
        }
        if f >= refs[refs.len() - 1].0 {
            return refs[refs.len() - 1].1;
        }
        // refs are frequency-sorted because the grid is.
        let hi = refs.partition_point(|(rf, _)| *rf < f);
        let (f0, p0) = refs[hi - 1];
        let (f1, p1) = refs[hi];
        if f1 == f0 {
            return p0;
        }
        p0 + (p1 - p0) * (f - f0) / (f1 - f0)
    };

    let mut gain_db = vec![f64::NAN; n];
    let mut valid = vec![false; n];
    for i in 0..n {
        if !(signal_parity.is_signal(i) && record.input.loaded()[i]) {
            continue;
        }
        let p_out = dbm_to_mw(output.values_dbm()[i])?;
        let p_noise = noise_at(freqs[i]);
        if p_out <= p_noise {
            return Err(Error::NoiseExceedsSignal {
                channel: i,
                frequency_thz: freqs[i],
                output_mw: p_out,
                noise_mw: p_noise,
            });
        }
        gain_db[i] = mw_to_dbm(p_out - p_noise)? - record.input.values_dbm()[i];
        valid[i] = true;
    }

    let gain = GainSpectrum::new(grid.clone(), gain_db, valid)?;
    Ok(SampleRecord {
        input: record.input.clone(),
        output_raw: record.output_raw.clone(),
        gain: Some(gain),
        setting: record.setting,
        meta: record.meta.clone(),
    })
}

/// Applies [`subtract_ase`] to every record of a dataset.
pub fn subtract_ase_dataset(dataset: &Dataset, signal_parity: ChannelParity) -> Result<Dataset> {
    let records = dataset
        .records
        .iter()
        .map(|r| subtract_ase(r, signal_parity))
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(
        dataset.grid.clone(),
        dataset.setting,
        records,
        format!("{} | ase-subtracted", dataset.provenance),
    )
}

/// Train/test partition strategies.
#[derive(Debug, Clone, PartialEq)]
pub enum SplitStrategy {
    /// Seeded random draw of disjoint train and test records.
    Random {
        n_train: usize,
        n_test: usize,
        seed: u64,
    },
    /// Train on records with more loaded channels than the threshold, test
    /// on records with fewer; records exactly at the threshold are dropped.
    ByLoadedCount { threshold: usize },
    /// Partition by total input power (dBm), inclusive ranges.
    ByTotalPower {
        train_range_dbm: (f64, f64),
        test_range_dbm: (f64, f64),
    },
}

/// Splits a dataset into disjoint (train, test) parts.
pub fn split(dataset: &Dataset, strategy: &SplitStrategy) -> Result<(Dataset, Dataset)> {
    let (train_idx, test_idx, note) = match strategy {
        SplitStrategy::Random {
            n_train,
            n_test,
            seed,
        } => {
            if n_train + n_test > dataset.len() {
                return Err(Error::InfeasibleExperiment {
                    context: format!(
                        "random split wants {}+{} records, dataset has {}",
                        n_train,
                        n_test,
                        dataset.len()
                    ),
                });
            }
            let mut indices: Vec<usize> = (0..dataset.len()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            indices.shuffle(&mut rng);
            let train: Vec<usize> = indices[..*n_train].to_vec();
            let test: Vec<usize> = indices[*n_train..*n_train + *n_test].to_vec();
            (train, test, format!("split=random({n_train},{n_test},seed {seed})"))
        }
        SplitStrategy::ByLoadedCount { threshold } => {
            let train: Vec<usize> = (0..dataset.len())
                .filter(|&i| dataset.records[i].meta.loaded_count > *threshold)
                .collect();
            let test: Vec<usize> = (0..dataset.len())
                .filter(|&i| dataset.records[i].meta.loaded_count < *threshold)
                .collect();
            (train, test, format!("split=by_loaded_count({threshold})"))
        }
        SplitStrategy::ByTotalPower {
            train_range_dbm,
            test_range_dbm,
        } => {
            let within = |i: usize, range: (f64, f64)| {
                let p = dataset.records[i].meta.total_input_dbm;
                p >= range.0 && p <= range.1
            };
            let train: Vec<usize> = (0..dataset.len())
                .filter(|&i| within(i, *train_range_dbm))
                .collect();
            let test: Vec<usize> = (0..dataset.len())
                .filter(|&i| within(i, *test_range_dbm))
                .collect();
            (
                train,
                test,
                format!(
                    "split=by_total_power(train [{}, {}], test [{}, {}])",
                    train_range_dbm.0, train_range_dbm.1, test_range_dbm.0, test_range_dbm.1
                ),
            )
        }
    };

    if train_idx.is_empty() {
        return Err(Error::EmptySplit {
            side: "train".into(),
        });
    }
    if test_idx.is_empty() {
        return Err(Error::EmptySplit {
            side: "test".into(),
        });
    }
    let train = dataset.subset(&train_idx, &format!("{note} train"))?;
    let test = dataset.subset(&test_idx, &format!("{note} test"))?;
    Ok((train, test))
}

/// Convenience constructor used by generators and ingestion.
pub fn make_meta(source: &str, id: String, input: &PowerSpectrum) -> Result<SampleMeta> {
    let total = total_power(input, MaskPolicy::LoadedOnly)?;
    Ok(SampleMeta {
        source: source.to_string(),
        id,
        loaded_count: input.loaded_count(),
        total_input_dbm: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid(n: usize) -> Arc<ChannelGrid> {
        Arc::new(ChannelGrid::uniform(192.1, 50.0, n, 50.0).unwrap())
    }

    fn record_with_gain(
        grid: &Arc<ChannelGrid>,
        loaded: Vec<bool>,
        setting: OperatingPoint,
        id: &str,
    ) -> SampleRecord {
        let n = grid.len();
        let input =
            PowerSpectrum::new(grid.clone(), vec![-16.0; n], loaded.clone()).unwrap();
        let gain_values: Vec<f64> = loaded
            .iter()
            .map(|l| if *l { 18.0 } else { f64::NAN })
            .collect();
        let gain = GainSpectrum::new(grid.clone(), gain_values, loaded).unwrap();
        let meta = make_meta("test", id.to_string(), &input).unwrap();
        SampleRecord {
            input,
            output_raw: None,
            gain: Some(gain),
            setting,
            meta,
        }
    }

    #[test]
    fn dataset_rejects_mixed_settings() {
        let g = grid(4);
        let setting = OperatingPoint::agc(18.0);
        let mut r1 = record_with_gain(&g, vec![true, false, true, false], setting, "a");
        let r2 = record_with_gain(&g, vec![true, true, true, false], setting, "b");
        assert!(Dataset::new(g.clone(), setting, vec![r1.clone(), r2.clone()], "t".into()).is_ok());
        r1.setting = OperatingPoint::apc(15.0);
        assert!(Dataset::new(g, setting, vec![r1, r2], "t".into()).is_err());
    }

    #[test]
    fn dataset_rejects_wrong_loaded_count() {
        let g = grid(4);
        let setting = OperatingPoint::agc(18.0);
        let mut r = record_with_gain(&g, vec![true, false, true, false], setting, "a");
        r.meta.loaded_count = 3;
        assert!(Dataset::new(g, setting, vec![r], "t".into()).is_err());
    }

    fn ase_record(
        grid: &Arc<ChannelGrid>,
        input_dbm: Vec<f64>,
        loaded: Vec<bool>,
        output_dbm: Vec<f64>,
    ) -> SampleRecord {
        let input = PowerSpectrum::new(grid.clone(), input_dbm, loaded.clone()).unwrap();
        let output = PowerSpectrum::new(grid.clone(), output_dbm, loaded).unwrap();
        let meta = make_meta("test", "r0".into(), &input).unwrap();
        SampleRecord {
            input,
            output_raw: Some(output),
            gain: None,
            setting: OperatingPoint::agc(18.0),
            meta,
        }
    }

    #[test]
    fn ase_subtraction_hand_example() {
        // Signal channel flanked by two noise references at −20 dBm; the
        // interpolated noise under the signal is −20 dBm. Output −5 dBm:
        // gain = 10·log10(10^(−0.5) − 10^(−2)) − (−20) = 14.860 dB.
        let g = grid(3);
        let record = ase_record(
            &g,
            vec![-28.0, -20.0, -28.0],
            vec![false, true, false],
            vec![-20.0, -5.0, -20.0],
        );
        let done = subtract_ase(&record, ChannelParity::EvenNumbered).unwrap();
        let gain = done.gain.unwrap();
        assert!(gain.valid()[1]);
        assert!(!gain.valid()[0] && !gain.valid()[2]);
        assert_abs_diff_eq!(gain.values_db()[1], 14.860, epsilon = 1e-3);
    }

    #[test]
    fn ase_subtraction_zero_floor_is_identity() {
        // Noise references 75+ dB below signal: gain comes out within
        // 1e-3 dB of plain output − input.
        let g = grid(5);
        let record = ase_record(
            &g,
            vec![-20.0, -28.0, -20.0, -28.0, -20.0],
            vec![true, false, true, false, true],
            vec![-5.0, -90.0, -5.0, -90.0, -5.0],
        );
        let done = subtract_ase(&record, ChannelParity::OddNumbered).unwrap();
        let gain = done.gain.unwrap();
        for i in [0usize, 2, 4] {
            assert_abs_diff_eq!(gain.values_db()[i], 15.0, epsilon = 1e-3);
        }
    }

    #[test]
    fn ase_subtraction_rejects_output_below_noise() {
        let g = grid(3);
        let record = ase_record(
            &g,
            vec![-28.0, -20.0, -28.0],
            vec![false, true, false],
            vec![-4.0, -5.0, -4.0],
        );
        let err = subtract_ase(&record, ChannelParity::EvenNumbered).unwrap_err();
        match err {
            Error::NoiseExceedsSignal { channel, .. } => assert_eq!(channel, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn ase_subtraction_needs_references() {
        let g = grid(2);
        let record = ase_record(&g, vec![-20.0, -20.0], vec![true, true], vec![-5.0, -5.0]);
        // Odd-numbered signal: channel index 1 is a reference but loaded.
        assert!(subtract_ase(&record, ChannelParity::OddNumbered).is_err());
    }

    fn toy_dataset(loaded_counts: &[usize]) -> Dataset {
        let g = grid(30);
        let setting = OperatingPoint::agc(18.0);
        let records: Vec<SampleRecord> = loaded_counts
            .iter()
            .enumerate()
            .map(|(i, &count)| {
                let loaded: Vec<bool> = (0..30).map(|c| c < count).collect();
                record_with_gain(&g, loaded, setting, &format!("r{i}"))
            })
            .collect();
        Dataset::new(g, setting, records, "toy".into()).unwrap()
    }

    #[test]
    fn random_split_is_reproducible_and_disjoint() {
        let ds = toy_dataset(&[5; 20]);
        let strategy = SplitStrategy::Random {
            n_train: 8,
            n_test: 10,
            seed: 42,
        };
        let (tr1, te1) = split(&ds, &strategy).unwrap();
        let (tr2, te2) = split(&ds, &strategy).unwrap();
        assert_eq!(tr1.records, tr2.records);
        assert_eq!(te1.records, te2.records);
        assert_eq!(tr1.len(), 8);
        assert_eq!(te1.len(), 10);
        let train_ids: Vec<&str> = tr1.records.iter().map(|r| r.meta.id.as_str()).collect();
        for r in &te1.records {
            assert!(!train_ids.contains(&r.meta.id.as_str()));
        }
    }

    #[test]
    fn random_split_infeasible_when_oversubscribed() {
        let ds = toy_dataset(&[5; 10]);
        let strategy = SplitStrategy::Random {
            n_train: 8,
            n_test: 5,
            seed: 1,
        };
        assert!(split(&ds, &strategy).is_err());
    }

    #[test]
    fn loaded_count_split_is_strict() {
        let ds = toy_dataset(&[15, 14, 13, 12, 12, 11, 5, 20]);
        let (train, test) = split(&ds, &SplitStrategy::ByLoadedCount { threshold: 12 }).unwrap();
        assert_eq!(train.len(), 4); // 15, 14, 13, 20
        assert_eq!(test.len(), 2); // 11, 5
        for r in &train.records {
            assert!(r.meta.loaded_count > 12);
        }
        for r in &test.records {
            assert!(r.meta.loaded_count < 12);
        }
    }

    #[test]
    fn loaded_count_split_errors_on_empty_side() {
        let ds = toy_dataset(&[15, 16, 17]);
        assert!(matches!(
            split(&ds, &SplitStrategy::ByLoadedCount { threshold: 12 }),
            Err(Error::EmptySplit { .. })
        ));
    }

    #[test]
    fn total_power_split_uses_meta_ranges() {
        // 5 loaded channels at −16 dBm each → total ≈ −9.0 dBm;
        // 20 loaded → total ≈ −3.0 dBm.
        let ds = toy_dataset(&[5, 5, 20, 20, 20]);
        let (train, test) = split(
            &ds,
            &SplitStrategy::ByTotalPower {
                train_range_dbm: (-12.0, -6.0),
                test_range_dbm: (-6.0, 0.0),
            },
        )
        .unwrap();
        assert_eq!(train.len(), 2);
        assert_eq!(test.len(), 3);
    }

    #[test]
    fn protocol_parsing_and_validation() {
        let g = grid(8);
        let text = r#"
schema = "edfa-protocol/v1"
loadable = "odd"
load_probability = 0.5
avg_power_range_dbm = [-18.0, -14.0]
unloaded_power_dbm = -28.0
perturbation_range_db = [-1.5, 1.5]
"#;
        let p = DatasetProtocol::from_toml_str(text, &g).unwrap();
        assert_eq!(p.loadable, vec![true, false, true, false, true, false, true, false]);
        assert_eq!(p.tilt_range_db, 0.0);

        let bad_schema = text.replace("edfa-protocol/v1", "edfa-protocol/v9");
        assert!(matches!(
            DatasetProtocol::from_toml_str(&bad_schema, &g),
            Err(Error::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn protocol_rejects_unloadable_everything() {
        let p = DatasetProtocol {
            loadable: vec![false; 4],
            load_probability: 0.5,
            avg_power_range_dbm: (-18.0, -14.0),
            unloaded_power_dbm: -28.0,
            perturbation_range_db: (-1.5, 1.5),
            tilt_range_db: 0.0,
        };
        assert!(matches!(p.validate(), Err(Error::ProtocolNoChannels)));
    }
}
