//! AWGN channel model under the all-zero-codeword convention.
//!
//! Transmission uses 0/1 signaling and the all-zero word, so the received
//! value at bit `i` is pure noise `x_i`. The noise density is proportional to
//! `exp(-2 s² x²)`, i.e. each transmitted coordinate is Gaussian with variance
//! `1/(4 s²)` where `s²` is the SNR parameter. The per-bit log-likelihood
//! field is `h_i = s² (1 - 2 x_i)`, and the effective distance of a noise
//! vector is `d(x) = 4 Σ x_i²`, normalized so that the median noise toward a
//! weight-w codeword has distance exactly w. Punctured bits are never
//! transmitted: their noise and likelihood entries are identically zero and
//! they are excluded from distance sums.

use crate::error::{Error, Result};
use crate::graph::TannerGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// A received noise realization together with the SNR it was drawn at.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoiseVector {
    x: Vec<f64>,
    snr_s2: f64,
}

impl NoiseVector {
    pub fn new(x: Vec<f64>, snr_s2: f64) -> Result<Self> {
        if !(snr_s2 > 0.0) || !snr_s2.is_finite() {
            return Err(Error::Param(format!(
                "snr parameter s² must be positive, got {snr_s2}"
            )));
        }
        if let Some(v) = x.iter().find(|v| !v.is_finite()) {
            return Err(Error::Param(format!("noise entry {v} is not finite")));
        }
        Ok(NoiseVector { x, snr_s2 })
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn snr_s2(&self) -> f64 {
        self.snr_s2
    }

    /// The same realization scaled by `t`; the SNR parameter is unchanged.
    pub fn scaled(&self, t: f64) -> NoiseVector {
        NoiseVector {
            x: self.x.iter().map(|v| v * t).collect(),
            snr_s2: self.snr_s2,
        }
    }
}

/// Per-bit log-likelihood field. Punctured bits hold exactly 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LlrVector(pub Vec<f64>);

impl LlrVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Draws one noise realization on the transmitted bits of `g`.
///
/// Bits are visited in index order and punctured bits consume no randomness,
/// so a fixed rng stream yields the same realization regardless of how the
/// puncture flags came about.
pub fn sample_noise<R: rand::Rng>(
    g: &TannerGraph,
    snr_s2: f64,
    rng: &mut R,
) -> Result<NoiseVector> {
    if !(snr_s2 > 0.0) || !snr_s2.is_finite() {
        return Err(Error::Param(format!(
            "snr parameter s² must be positive, got {snr_s2}"
        )));
    }
    let sigma = 1.0 / (2.0 * snr_s2.sqrt());
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and positive");
    let x = (0..g.n_bits())
        .map(|i| {
            if g.is_punctured(i) {
                0.0
            } else {
                normal.sample(rng)
            }
        })
        .collect();
    NoiseVector::new(x, snr_s2)
}

/// Log-likelihood field of a noise realization: `h_i = s² (1 - 2 x_i)`,
/// zero at punctured bits.
pub fn llr_from_noise(noise: &NoiseVector, g: &TannerGraph) -> Result<LlrVector> {
    if noise.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "noise vector",
            expected: g.n_bits(),
            found: noise.len(),
        });
    }
    let s2 = noise.snr_s2();
    let h = (0..g.n_bits())
        .map(|i| {
            if g.is_punctured(i) {
                0.0
            } else {
                s2 * (1.0 - 2.0 * noise.values()[i])
            }
        })
        .collect();
    Ok(LlrVector(h))
}

/// Effective distance `d(x) = 4 Σ x_i²` over transmitted bits.
pub fn effective_distance_of_noise(noise: &NoiseVector, g: &TannerGraph) -> Result<f64> {
    if noise.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "noise vector",
            expected: g.n_bits(),
            found: noise.len(),
        });
    }
    Ok(4.0
        * g.transmitted_bits()
            .map(|i| noise.values()[i] * noise.values()[i])
            .sum::<f64>())
}

/// SplitMix64 finalizer; decorrelates structured seed inputs.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derives the per-trial generator seed from the master seed, the worker
/// index owning the trial, and the trial index.
pub fn trial_seed(master: u64, worker: u64, trial: u64) -> u64 {
    mix64(mix64(mix64(master) ^ worker) ^ trial)
}

/// Independent generator for one (worker, trial) pair.
pub fn trial_rng(master: u64, worker: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, worker, trial))
}
