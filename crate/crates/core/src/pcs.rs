//! Pseudo-codeword search (PCS).
//!
//! Alternates LP decoding with weighted-median noise updates:
//! starting from noise strong enough that LP errs, each cycle decodes the
//! current noise to a pseudo-codeword, then moves the noise to the weighted
//! median — the point on the segment toward the pseudo-codeword where it and
//! the zero codeword are equally likely. The effective distance of the
//! iterates never increases, and the fixed point is an instanton candidate:
//! a locally most probable noise configuration on the error surface.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::channel::{llr_from_noise, NoiseVector};
use crate::error::{Error, Result};
use crate::graph::TannerGraph;
use crate::lp::{lp_decode, LpMode, PseudoCodeword};

/// Tolerances and budgets of one search. The defaults are the reference
/// configuration used by the test suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PcsConfig {
    /// Hard cap on recorded iterates.
    pub max_iterations: usize,
    /// ∞-norm tolerance declaring y^(k) = y^(k-1).
    pub fix_tol: f64,
    /// Relative step pushing a median back into the erroneous region.
    pub delta: f64,
    /// Retry budget multiplying the initial amplitude by 1.5.
    pub max_rho_escalations: usize,
    /// Retry budget multiplying delta by 10 when LP still answers zero.
    pub max_delta_escalations: usize,
    /// LP decoding mode for every decode in the search.
    pub mode: LpMode,
}

impl Default for PcsConfig {
    fn default() -> Self {
        PcsConfig {
            max_iterations: 100,
            fix_tol: 1e-9,
            delta: 1e-6,
            max_rho_escalations: 10,
            max_delta_escalations: 6,
            mode: LpMode::CutGeneration,
        }
    }
}

/// One recorded cycle: the pseudo-codeword, its weighted median, and its
/// effective distance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PcsIterate {
    pub noise: NoiseVector,
    pub pseudo: PseudoCodeword,
    pub distance: f64,
}

/// A completed search. `k_star` is the 1-based index of the terminal
/// iterate; the confirming decode that reproduced the last median is not
/// recorded. `anomaly` is set when an observed-in-practice invariant broke
/// (distance growth along the trace, or a terminal point failing the
/// error-surface sandwich); the trace is preserved for inspection.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PcsTrace {
    pub iterates: Vec<PcsIterate>,
    pub k_star: usize,
    pub instanton: NoiseVector,
    pub terminal: PseudoCodeword,
    pub anomaly: Option<String>,
}

/// Distances may grow by at most this much between consecutive iterates
/// before the trace is flagged.
pub const MONOTONICITY_TOL: f64 = 1e-7;

/// Effective distance `(Σ σ̃_i)² / Σ σ̃_i²`, sums over transmitted bits.
pub fn effective_distance(pc: &PseudoCodeword, g: &TannerGraph) -> Result<f64> {
    let (sum, sum_sq) = crate::lp::transmitted_sums(&pc.values, g);
    if sum_sq <= 0.0 {
        return Err(Error::Zero(
            "pseudo-codeword (effective distance undefined)",
        ));
    }
    Ok(sum * sum / sum_sq)
}

/// Weighted median of a pseudo-codeword: `y = σ̃ · (Σσ̃) / (2Σσ̃²)` on
/// transmitted bits, zero on punctured bits. The zero codeword and σ̃ are
/// equally likely at this noise: `Σ_i h_i(y) σ̃_i = 0`.
pub fn weighted_median(pc: &PseudoCodeword, g: &TannerGraph, s2: f64) -> Result<NoiseVector> {
    let (sum, sum_sq) = crate::lp::transmitted_sums(&pc.values, g);
    if sum_sq <= 0.0 {
        return Err(Error::Zero("pseudo-codeword (weighted median undefined)"));
    }
    let scale = sum / (2.0 * sum_sq);
    let x = (0..g.n_bits())
        .map(|i| {
            if g.is_punctured(i) {
                0.0
            } else {
                scale * pc.values[i]
            }
        })
        .collect();
    NoiseVector::new(x, s2)
}

/// The instanton noise of a pseudo-codeword — the same point as the
/// weighted median, with the identity `4‖x‖² = d_LP` verified.
pub fn instanton_from_pseudocodeword(
    pc: &PseudoCodeword,
    g: &TannerGraph,
    s2: f64,
) -> Result<NoiseVector> {
    let x = weighted_median(pc, g, s2)?;
    let d = effective_distance(pc, g)?;
    let norm4: f64 = 4.0
        * g.transmitted_bits()
            .map(|i| x.values()[i] * x.values()[i])
            .sum::<f64>();
    if (norm4 - d).abs() > 1e-9 * d.max(1.0) {
        return Err(Error::Anomaly(format!(
            "instanton identity 4‖x‖² = d broke: {norm4} vs {d}"
        )));
    }
    Ok(x)
}

/// Runs PCS from a fresh random start: `x⁰ = ρ·u` with `u` a uniformly
/// random unit direction over transmitted bits and `ρ` escalated ×1.5 from
/// `√n_transmitted / (2s)` until LP errs.
pub fn pcs_run(g: &TannerGraph, s2: f64, seed: u64, config: &PcsConfig) -> Result<PcsTrace> {
    if !(s2 > 0.0) || !s2.is_finite() {
        return Err(Error::Param(format!(
            "snr parameter s² must be positive, got {s2}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_t = g.n_transmitted();
    if n_t == 0 {
        return Err(Error::Zero("graph has no transmitted bits"));
    }
    let mut direction = vec![0.0; g.n_bits()];
    let mut norm_sq = 0.0;
    loop {
        for i in g.transmitted_bits() {
            let z: f64 = StandardNormal.sample(&mut rng);
            direction[i] = z;
            norm_sq += z * z;
        }
        if norm_sq > 0.0 {
            break;
        }
    }
    let norm = norm_sq.sqrt();
    let rho0 = (n_t as f64).sqrt() / (2.0 * s2.sqrt());

    let mut rho = rho0;
    for _ in 0..=config.max_rho_escalations {
        let x: Vec<f64> = direction.iter().map(|&u| u / norm * rho).collect();
        let x0 = NoiseVector::new(x, s2)?;
        let pc = lp_decode(&llr_from_noise(&x0, g)?, g, config.mode)?;
        if !pc.is_zero() {
            return pcs_run_from(g, s2, &x0, config);
        }
        rho *= 1.5;
    }
    Err(Error::Anomaly(format!(
        "pcs initialization failed: LP decoded to zero at every amplitude up to {rho:.4}"
    )))
}

/// Runs the PCS cycle from an explicit noise point, which must already
/// decode to a nonzero pseudo-codeword.
pub fn pcs_run_from(
    g: &TannerGraph,
    s2: f64,
    x0: &NoiseVector,
    config: &PcsConfig,
) -> Result<PcsTrace> {
    let mut pc = lp_decode(&llr_from_noise(x0, g)?, g, config.mode)?;
    if pc.is_zero() {
        return Err(Error::Anomaly(
            "pcs requires a starting point inside the erroneous region".into(),
        ));
    }
    let mut iterates: Vec<PcsIterate> = Vec::new();
    let mut anomaly: Option<String> = None;

    loop {
        let y = weighted_median(&pc, g, s2)?;
        let d = effective_distance(&pc, g)?;
        if let Some(prev) = iterates.last() {
            let step = sup_distance(y.values(), prev.noise.values());
            if step <= config.fix_tol {
                // Confirming iterate: the search is at a fixed point.
                break;
            }
            if d > prev.distance + MONOTONICITY_TOL {
                anomaly = Some(format!(
                    "distance grew from {} to {d} at iterate {}",
                    prev.distance,
                    iterates.len() + 1
                ));
                iterates.push(PcsIterate {
                    noise: y,
                    pseudo: pc.clone(),
                    distance: d,
                });
                break;
            }
        }
        iterates.push(PcsIterate {
            noise: y.clone(),
            pseudo: pc.clone(),
            distance: d,
        });
        if iterates.len() >= config.max_iterations {
            break;
        }
        match probe_beyond_median(&y, g, config)? {
            Some(next) => pc = next,
            None => {
                anomaly = Some(format!(
                    "LP kept answering zero just beyond the median after {} delta escalations",
                    config.max_delta_escalations
                ));
                break;
            }
        }
    }

    let terminal = iterates.last().expect("at least one iterate").clone();
    if anomaly.is_none() {
        anomaly = sandwich_violation(&terminal.noise, g, config)?;
    }
    Ok(PcsTrace {
        k_star: iterates.len(),
        instanton: terminal.noise.clone(),
        terminal: terminal.pseudo.clone(),
        anomaly,
        iterates,
    })
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Decodes at `(1+δ)·y`, escalating δ ×10 while LP answers zero.
fn probe_beyond_median(
    y: &NoiseVector,
    g: &TannerGraph,
    config: &PcsConfig,
) -> Result<Option<PseudoCodeword>> {
    let mut delta = config.delta;
    for _ in 0..=config.max_delta_escalations {
        let probe = y.scaled(1.0 + delta);
        let pc = lp_decode(&llr_from_noise(&probe, g)?, g, config.mode)?;
        if !pc.is_zero() {
            return Ok(Some(pc));
        }
        delta *= 10.0;
    }
    Ok(None)
}

/// Error-surface sandwich at the base δ: LP must err just outside the
/// terminal noise and decode correctly just inside. Returns a description
/// of the violation, if any.
fn sandwich_violation(
    y: &NoiseVector,
    g: &TannerGraph,
    config: &PcsConfig,
) -> Result<Option<String>> {
    let outside = lp_decode(
        &llr_from_noise(&y.scaled(1.0 + config.delta), g)?,
        g,
        config.mode,
    )?;
    if outside.is_zero() {
        return Ok(Some(
            "terminal noise decodes to zero just outside the surface".into(),
        ));
    }
    let inside = lp_decode(
        &llr_from_noise(&y.scaled(1.0 - config.delta), g)?,
        g,
        config.mode,
    )?;
    if !inside.is_zero() {
        return Ok(Some(
            "terminal noise still decodes to an error just inside the surface".into(),
        ));
    }
    Ok(None)
}
