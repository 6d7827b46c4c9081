//! Monte-Carlo frame-error-rate estimation, pseudo-codeword spectra, and
//! instanton-based FER asymptotics.
//!
//! `mc_fer` measures the block-error rate of any decoder by direct
//! simulation against the all-zero codeword, with a Wilson 95% interval.
//! `Spectrum` aggregates the low-weight failure configurations found by the
//! searches (PCS traces, amoeba records) into a deduplicated effective
//! distance spectrum, and `instanton_fer_estimate` turns a spectrum into the
//! exponential-accuracy error-floor prediction `Σ exp(−d·s²/2)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::amoeba::{CodeDecoder, DecodedTo, DecoderSpec, InstantonRecord};
use crate::channel::{sample_noise, trial_rng};
use crate::error::{Error, Result};
use crate::graph::TannerGraph;
use crate::pcs::PcsTrace;

/// Two-sided 97.5% standard-normal quantile, for 95% Wilson intervals.
const WILSON_Z: f64 = 1.959_963_984_540_054;

/// Frames per synchronization round of the Monte-Carlo loop. Workers join
/// after every round so the stopping decision sees a complete prefix of the
/// trial sequence and reruns reproduce the exact frame count.
const MC_BATCH: u64 = 256;

/// Coordinates are rounded to this resolution to build spectrum dedup keys.
const DEDUP_RESOLUTION: f64 = 1e-6;

/// Label attached to instanton-sum FER predictions: combinatorial and
/// phase-volume prefactors are not computed, only the exponents.
pub const EXPONENTIAL_ACCURACY: &str = "exponential-accuracy";

/// One measured point of an FER-vs-SNR curve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FerPoint {
    pub s2: f64,
    pub frames: u64,
    pub errors: u64,
    pub fer: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl FerPoint {
    fn new(s2: f64, frames: u64, errors: u64) -> Self {
        let fer = errors as f64 / frames as f64;
        let (ci_low, ci_high) = wilson_interval(errors, frames);
        FerPoint {
            s2,
            frames,
            errors,
            fer,
            ci_low,
            ci_high,
        }
    }
}

/// 95% Wilson score interval for `errors` successes in `frames` trials.
/// Always brackets the point estimate and stays inside [0, 1].
pub fn wilson_interval(errors: u64, frames: u64) -> (f64, f64) {
    let n = frames as f64;
    let p = errors as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (WILSON_Z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // At the boundary counts, center and half agree in exact arithmetic;
    // pin the endpoints so rounding can't push the interval off 0 or 1.
    let lo = if errors == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if errors == frames {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

/// Stopping rule and seeding of one Monte-Carlo FER run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FerConfig {
    /// Hard cap on simulated frames.
    pub max_frames: u64,
    /// Stop once this many block errors are seen (checked at round
    /// boundaries); 0 disables early stopping.
    pub min_errors: u64,
    /// Master seed; trial `t` draws from an independent generator keyed by
    /// `(seed, t mod workers, t)`.
    pub seed: u64,
    /// Worker threads. Results are a pure function of `(seed, workers)`;
    /// `workers = 1` is the determinism reference.
    pub workers: usize,
    /// Let BP exit early on a zero syndrome (throughput only; other
    /// decoders are unaffected).
    pub early_stop: bool,
}

impl Default for FerConfig {
    fn default() -> Self {
        FerConfig {
            max_frames: 10_000,
            min_errors: 100,
            seed: 0,
            workers: 1,
            early_stop: false,
        }
    }
}

/// Estimates the frame error rate of `decoder` on `g` at noise level `s2`
/// by decoding independently sampled noise frames against the all-zero
/// codeword. A frame counts as a block error when the decoder output is
/// nonzero (BP/oracle: any hard-decision 1; LP: any coordinate above 1e-6).
pub fn mc_fer(
    g: &TannerGraph,
    decoder: &DecoderSpec,
    s2: f64,
    config: &FerConfig,
) -> Result<FerPoint> {
    if config.max_frames == 0 {
        return Err(Error::Param("mc_fer requires max_frames ≥ 1".into()));
    }
    if config.workers == 0 {
        return Err(Error::Param("mc_fer requires at least one worker".into()));
    }
    if !(s2 > 0.0) {
        return Err(Error::Param("mc_fer requires s² > 0".into()));
    }
    let dec = CodeDecoder::new(g, decoder.clone())?;
    let workers = config.workers as u64;
    let mut frames = 0u64;
    let mut errors = 0u64;
    while frames < config.max_frames && (config.min_errors == 0 || errors < config.min_errors) {
        let batch = MC_BATCH.min(config.max_frames - frames);
        let base = frames;
        let counts: Result<Vec<u64>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let dec = &dec;
                    let config = &config;
                    scope.spawn(move || -> Result<u64> {
                        let mut errs = 0u64;
                        let mut t = base + w;
                        while t < base + batch {
                            let mut rng = trial_rng(config.seed, t % workers, t);
                            let noise = sample_noise(dec.graph(), s2, &mut rng)?;
                            let err = if config.early_stop {
                                dec.decode_early_stop(&noise)?
                            } else {
                                dec.decode(&noise)?.0
                            };
                            if err {
                                errs += 1;
                            }
                            t += workers;
                        }
                        Ok(errs)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("FER worker panicked"))
                .collect()
        });
        errors += counts?.iter().sum::<u64>();
        frames += batch;
    }
    Ok(FerPoint::new(s2, frames, errors))
}

/// One deduplicated failure configuration and how often it was observed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// Coordinates of the first observed representative (a pseudo-codeword,
    /// or a codeword as 0/1 values).
    pub representative: Vec<f64>,
    /// Smallest effective distance observed for this configuration.
    pub d: f64,
    pub count: u64,
}

/// An effective-distance spectrum: distinct failure configurations keyed by
/// rounded coordinates, plus the trial count they were drawn from. Failed
/// trials contribute to `trials` but not to any entry, so entry counts sum
/// to at most `trials`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    n_bits: usize,
    trials: u64,
    entries: BTreeMap<Vec<i64>, SpectrumEntry>,
}

impl Spectrum {
    pub fn new(n_bits: usize) -> Result<Self> {
        if n_bits == 0 {
            return Err(Error::Param("spectrum needs at least one bit".into()));
        }
        Ok(Spectrum {
            n_bits,
            trials: 0,
            entries: BTreeMap::new(),
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    /// Total trials recorded, including failed ones.
    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Number of distinct configurations.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Records one successful trial that ended at `values` with effective
    /// distance `d`. Configurations are merged when every coordinate agrees
    /// to within the dedup resolution.
    pub fn add(&mut self, values: &[f64], d: f64) -> Result<()> {
        if values.len() != self.n_bits {
            return Err(Error::Dimension {
                what: "spectrum record",
                expected: self.n_bits,
                found: values.len(),
            });
        }
        if !(d > 0.0) {
            return Err(Error::Param(format!(
                "spectrum distances must be positive, got {d}"
            )));
        }
        self.trials += 1;
        let key: Vec<i64> = values
            .iter()
            .map(|v| (v / DEDUP_RESOLUTION).round() as i64)
            .collect();
        self.entries
            .entry(key)
            .and_modify(|e| {
                e.count += 1;
                if d < e.d {
                    e.d = d;
                }
            })
            .or_insert_with(|| SpectrumEntry {
                representative: values.to_vec(),
                d,
                count: 1,
            });
        Ok(())
    }

    /// Records a trial that produced no configuration (search anomaly,
    /// budget exhaustion). It dilutes the cumulative frequencies.
    pub fn note_failed_trial(&mut self) {
        self.trials += 1;
    }

    /// Entries ordered by effective distance (ties keep coordinate-key
    /// order, so the listing is deterministic).
    pub fn entries(&self) -> Vec<&SpectrumEntry> {
        let mut out: Vec<&SpectrumEntry> = self.entries.values().collect();
        out.sort_by(|a, b| f64::total_cmp(&a.d, &b.d));
        out
    }

    /// Smallest effective distance over all entries.
    pub fn d_min(&self) -> Option<f64> {
        self.entries.values().map(|e| e.d).min_by(f64::total_cmp)
    }

    /// Cumulative frequency curve: for each distinct `d`, the fraction of
    /// trials that produced a configuration of distance ≤ `d`. Non-
    /// decreasing, and at most 1.
    pub fn cumulative(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut seen = 0u64;
        let mut last_d = f64::NEG_INFINITY;
        for entry in self.entries() {
            seen += entry.count;
            if entry.d > last_d {
                out.push((entry.d, seen as f64 / self.trials as f64));
                last_d = entry.d;
            } else {
                let last = out.last_mut().expect("entry with equal d already pushed");
                last.1 = seen as f64 / self.trials as f64;
            }
        }
        out
    }
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Shape<'a> {
            n_bits: usize,
            trials: u64,
            entries: Vec<&'a SpectrumEntry>,
        }
        Shape {
            n_bits: self.n_bits,
            trials: self.trials,
            entries: self.entries(),
        }
        .serialize(serializer)
    }
}

/// One search outcome feeding a spectrum.
#[derive(Clone, Copy, Debug)]
pub enum SpectrumItem<'a> {
    /// A PCS trace; anomalous traces count as failed trials.
    Pcs(&'a PcsTrace),
    /// A verified amoeba instanton record.
    Instanton(&'a InstantonRecord),
}

/// Aggregates search outcomes into a spectrum. All records must come from
/// the same graph (checked through the coordinate dimension) and the same
/// decoder class — the latter is the caller's contract.
pub fn build_spectrum<'a, I>(items: I) -> Result<Spectrum>
where
    I: IntoIterator<Item = SpectrumItem<'a>>,
{
    let mut spectrum: Option<Spectrum> = None;
    for item in items {
        let n_bits = match item {
            SpectrumItem::Pcs(trace) => trace.terminal.values.len(),
            SpectrumItem::Instanton(rec) => rec.noise.len(),
        };
        if spectrum.is_none() {
            spectrum = Some(Spectrum::new(n_bits)?);
        }
        let spectrum = spectrum.as_mut().expect("initialized above");
        match item {
            SpectrumItem::Pcs(trace) => {
                if trace.anomaly.is_some() {
                    if trace.terminal.values.len() != spectrum.n_bits {
                        return Err(Error::Dimension {
                            what: "spectrum record",
                            expected: spectrum.n_bits,
                            found: trace.terminal.values.len(),
                        });
                    }
                    spectrum.note_failed_trial();
                } else {
                    spectrum.add(&trace.terminal.values, trace.terminal.effective_distance)?;
                }
            }
            SpectrumItem::Instanton(rec) => {
                let values: Vec<f64> = match &rec.decoded {
                    DecodedTo::Word(word) => word.bits().iter().map(|&b| f64::from(b)).collect(),
                    DecodedTo::Pseudo(pc) => pc.values.clone(),
                };
                spectrum.add(&values, rec.d)?;
            }
        }
    }
    spectrum.ok_or(Error::Zero("spectrum records"))
}

/// Exponential-accuracy FER prediction from a spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct FerEstimate {
    /// `Σ exp(−d·s²/2)` over distinct entries, unit prefactors.
    pub sum: f64,
    /// `exp(−d_min·s²/2)`, the dominant term; always ≤ `sum`.
    pub leading_term: f64,
    pub d_min: f64,
    /// Always [`EXPONENTIAL_ACCURACY`]: prefactors are not computed.
    pub accuracy: &'static str,
}

/// Sums `exp(−d·s²/2)` over the distinct spectrum entries. Multiplicities
/// are ignored: each distinct configuration contributes one term with unit
/// prefactor, so the number is an exponential-accuracy estimate only.
pub fn instanton_fer_estimate(spectrum: &Spectrum, s2: f64) -> Result<FerEstimate> {
    if !(s2 > 0.0) {
        return Err(Error::Param("instanton estimate requires s² > 0".into()));
    }
    let d_min = spectrum.d_min().ok_or(Error::Zero("spectrum"))?;
    let sum: f64 = spectrum
        .entries()
        .iter()
        .map(|e| (-e.d * s2 / 2.0).exp())
        .sum();
    Ok(FerEstimate {
        sum,
        leading_term: (-d_min * s2 / 2.0).exp(),
        d_min,
        accuracy: EXPONENTIAL_ACCURACY,
    })
}
