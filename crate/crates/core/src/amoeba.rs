//! Instanton search by downhill-simplex (Nelder–Mead) minimization.
//!
//! An instanton is a noise configuration on the decoder's error surface with
//! locally minimal effective distance: the most probable way for the channel
//! to defeat the decoder in its neighborhood. The search is decoder-agnostic
//! — anything that maps noise to an error/no-error verdict works — and comes
//! in two variants. The soft variant minimizes `d(x)` with a constant penalty
//! added outside the error region, then projects the minimizer radially onto
//! the error surface. The hard variant minimizes over noise directions only,
//! locating the surface crossing along each ray by bisection, which trades
//! more decoder calls per evaluation for an objective that is finite and
//! surface-exact everywhere. A third entry point starts the soft search from
//! a pseudo-codeword-search instanton instead of random noise, refining an
//! LP-derived candidate against an iterative decoder.

use std::cell::Cell;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::bp::{bp_decode, bp_decode_opts};
use crate::channel::{effective_distance_of_noise, llr_from_noise, sample_noise, NoiseVector};
use crate::error::{Error, Result};
use crate::graph::{BinaryWord, TannerGraph};
use crate::lp::{lp_decode, LpMode, PseudoCodeword};
use crate::oracle::CodebookEnumeration;

/// Simplex is converged when every vertex lies within this distance of the
/// best vertex (a one-sided diameter measure).
const DIAMETER_TOL: f64 = 1e-6;
/// ... or when the objective spread across vertices falls below this.
const SPREAD_TOL: f64 = 1e-9;
/// Relative width at which radial bisection of the error surface stops.
const SURFACE_REL_TOL: f64 = 1e-9;
/// Relative probe offset for the error-surface sandwich check on records.
const SANDWICH_DELTA: f64 = 1e-6;
/// Nelder–Mead coefficients: reflection, expansion, contraction, shrink.
const NM_REFLECT: f64 = 1.0;
const NM_EXPAND: f64 = 2.0;
const NM_CONTRACT: f64 = 0.5;
const NM_SHRINK: f64 = 0.5;

/// Identity of the decoder a record was produced against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecoderSpec {
    /// Sum-product with a fixed iteration budget; a block error is a nonzero
    /// hard decision after the full budget.
    Bp { iterations: usize },
    /// LP decoding; a block error is any output coordinate above the
    /// integrality tolerance.
    Lp { mode: LpMode },
    /// Exact block-MAP by codebook enumeration (small codes only).
    Oracle,
}

impl fmt::Display for DecoderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderSpec::Bp { iterations } => write!(f, "bp-{iterations}"),
            DecoderSpec::Lp { .. } => write!(f, "lp"),
            DecoderSpec::Oracle => write!(f, "oracle"),
        }
    }
}

impl std::str::FromStr for DecoderSpec {
    type Err = Error;

    /// Accepts `bp:K`, `lp`, or `oracle`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "lp" {
            return Ok(DecoderSpec::Lp {
                mode: LpMode::CutGeneration,
            });
        }
        if s == "oracle" {
            return Ok(DecoderSpec::Oracle);
        }
        if let Some(k) = s.strip_prefix("bp:") {
            let iterations: usize = k
                .parse()
                .map_err(|_| Error::Param(format!("bad BP iteration count in decoder '{s}'")))?;
            if iterations == 0 {
                return Err(Error::Param("BP iteration count must be positive".into()));
            }
            return Ok(DecoderSpec::Bp { iterations });
        }
        Err(Error::Param(format!(
            "unknown decoder '{s}' (expected bp:K, lp, or oracle)"
        )))
    }
}

/// Which search produced a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Soft,
    Hard,
    Seeded,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Soft => write!(f, "soft"),
            Variant::Hard => write!(f, "hard"),
            Variant::Seeded => write!(f, "seeded"),
        }
    }
}

/// What the decoder outputs at the instanton noise (its error side).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum DecodedTo {
    /// A hard-decision or MAP word (BP and oracle decoders).
    Word(BinaryWord),
    /// A pseudo-codeword (LP decoder).
    Pseudo(PseudoCodeword),
}

/// A verified point on a decoder's error surface.
///
/// Invariants enforced at construction: scaling the noise by `1 + 1e-6`
/// produces a decoding error and scaling by `1 - 1e-6` does not, and `d`
/// equals the effective distance of the noise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstantonRecord {
    pub noise: NoiseVector,
    pub d: f64,
    pub decoder: DecoderSpec,
    pub decoded: DecodedTo,
    /// Seed of the random start; absent for seeded (deterministic) runs.
    pub seed: Option<u64>,
    /// Restart rounds actually executed.
    pub restarts: usize,
    pub variant: Variant,
}

/// Budgets and scales of one search. Defaults are the reference
/// configuration used by the test suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmoebaConfig {
    /// Total decoder invocations allowed across all rounds of one search.
    pub max_evals: usize,
    /// Restart rounds: each re-centers a fresh simplex on the incumbent
    /// best with the edge scale decayed.
    pub rounds: usize,
    /// Initial simplex edge length, relative to the start point's norm
    /// (soft) or absolute (hard, where directions are unit vectors).
    pub initial_scale: f64,
    /// Multiplier applied to the edge scale after each round.
    pub scale_decay: f64,
    /// Initial ray length for the hard variant's surface bisection.
    pub initial_length: f64,
    /// Ray-length doublings allowed before a direction is declared
    /// error-free (cap `2^k · initial_length`).
    pub max_length_escalations: u32,
    /// Amplitude escalations (×1.5) applied to the soft variant's random
    /// start while it decodes correctly.
    pub max_amplitude_escalations: usize,
    /// Fresh directions the hard variant may draw when one never errs.
    pub max_direction_resamples: usize,
}

impl Default for AmoebaConfig {
    fn default() -> Self {
        AmoebaConfig {
            max_evals: 60_000,
            rounds: 5,
            initial_scale: 0.05,
            scale_decay: 0.5,
            initial_length: 1.0,
            max_length_escalations: 10,
            max_amplitude_escalations: 10,
            max_direction_resamples: 20,
        }
    }
}

impl AmoebaConfig {
    fn validate(&self) -> Result<()> {
        if self.max_evals == 0 || self.rounds == 0 {
            return Err(Error::Param(
                "amoeba budgets (max_evals, rounds) must be positive".into(),
            ));
        }
        if !(self.initial_scale > 0.0) || !self.initial_scale.is_finite() {
            return Err(Error::Param(format!(
                "amoeba initial_scale must be positive, got {}",
                self.initial_scale
            )));
        }
        if !(self.scale_decay > 0.0 && self.scale_decay <= 1.0) {
            return Err(Error::Param(format!(
                "amoeba scale_decay must lie in (0, 1], got {}",
                self.scale_decay
            )));
        }
        if !(self.initial_length > 0.0) || !self.initial_length.is_finite() {
            return Err(Error::Param(format!(
                "amoeba initial_length must be positive, got {}",
                self.initial_length
            )));
        }
        Ok(())
    }
}

/// A decode-and-compare procedure: noise in, block-error verdict out.
/// Implementations must be deterministic for a fixed configuration.
pub trait ErrorIndicator {
    fn is_error(&self, noise: &NoiseVector) -> Result<bool>;
}

/// The concrete indicator for a code and decoder, also able to report what
/// the decoder outputs (for record keeping).
pub struct CodeDecoder<'a> {
    g: &'a TannerGraph,
    spec: DecoderSpec,
    oracle: Option<CodebookEnumeration>,
}

impl<'a> CodeDecoder<'a> {
    pub fn new(g: &'a TannerGraph, spec: DecoderSpec) -> Result<Self> {
        let oracle = match spec {
            DecoderSpec::Oracle => Some(CodebookEnumeration::new(g)?),
            _ => None,
        };
        Ok(CodeDecoder { g, spec, oracle })
    }

    pub fn graph(&self) -> &TannerGraph {
        self.g
    }

    pub fn spec(&self) -> &DecoderSpec {
        &self.spec
    }

    /// Decodes the noise and reports (block error?, decoder output).
    pub fn decode(&self, noise: &NoiseVector) -> Result<(bool, DecodedTo)> {
        let h = llr_from_noise(noise, self.g)?;
        match &self.spec {
            DecoderSpec::Bp { iterations } => {
                let out = bp_decode(&h, self.g, *iterations)?;
                let err = !out.decision.is_zero();
                Ok((err, DecodedTo::Word(out.decision)))
            }
            DecoderSpec::Lp { mode } => {
                let pc = lp_decode(&h, self.g, *mode)?;
                let err = !pc.is_zero();
                Ok((err, DecodedTo::Pseudo(pc)))
            }
            DecoderSpec::Oracle => {
                let (word, _) = self
                    .oracle
                    .as_ref()
                    .expect("oracle codebook built at construction")
                    .block_map(&h)?;
                let err = !word.is_zero();
                Ok((err, DecodedTo::Word(word)))
            }
        }
    }

    /// Block-error test only, with the BP zero-syndrome early exit enabled
    /// for throughput. Surface-tracking callers must use `decode`, which
    /// always runs the full iteration budget.
    pub fn decode_early_stop(&self, noise: &NoiseVector) -> Result<bool> {
        match &self.spec {
            DecoderSpec::Bp { iterations } => {
                let h = llr_from_noise(noise, self.g)?;
                let out = bp_decode_opts(&h, self.g, *iterations, true)?;
                Ok(!out.decision.is_zero())
            }
            _ => Ok(self.decode(noise)?.0),
        }
    }
}

impl ErrorIndicator for CodeDecoder<'_> {
    fn is_error(&self, noise: &NoiseVector) -> Result<bool> {
        Ok(self.decode(noise)?.0)
    }
}

/// Lifts a vector over transmitted coordinates to a full-length noise
/// realization (punctured coordinates stay zero).
fn embed(trans: &[usize], n_bits: usize, v: &[f64], s2: f64) -> Result<NoiseVector> {
    let mut full = vec![0.0; n_bits];
    for (&i, &x) in trans.iter().zip(v.iter()) {
        full[i] = x;
    }
    NoiseVector::new(full, s2)
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Downhill-simplex minimization. `init` supplies the full starting simplex
/// (k+1 points in k dimensions); evaluation stops early once `evals` reaches
/// `cap`. Returns the best vertex and its objective. The best vertex's
/// objective never increases across iterations.
fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> Result<f64>,
    mut pts: Vec<Vec<f64>>,
    evals: &Cell<usize>,
    cap: usize,
) -> Result<(Vec<f64>, f64)> {
    let dim = pts[0].len();
    debug_assert!(pts.len() == dim + 1);
    let mut fs = Vec::with_capacity(pts.len());
    for p in &pts {
        fs.push(f(p)?);
    }

    loop {
        // Order: best first, worst last.
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| fs[a].total_cmp(&fs[b]));
        let (best, worst) = (order[0], order[pts.len() - 1]);
        let second_worst = order[pts.len() - 2];

        let size = pts
            .iter()
            .map(|p| {
                p.iter()
                    .zip(pts[best].iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        let spread = fs[worst] - fs[best];
        if size < DIAMETER_TOL || spread < SPREAD_TOL || evals.get() >= cap {
            let fb = fs[best];
            return Ok((std::mem::take(&mut pts[best]), fb));
        }

        let mut centroid = vec![0.0; dim];
        for (i, p) in pts.iter().enumerate() {
            if i != worst {
                for (c, x) in centroid.iter_mut().zip(p.iter()) {
                    *c += x;
                }
            }
        }
        for c in &mut centroid {
            *c /= dim as f64;
        }

        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(pts[worst].iter())
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(NM_REFLECT);
        let fr = f(&reflected)?;
        if fr < fs[best] {
            let expanded = along(NM_EXPAND);
            let fe = f(&expanded)?;
            if fe < fr {
                pts[worst] = expanded;
                fs[worst] = fe;
            } else {
                pts[worst] = reflected;
                fs[worst] = fr;
            }
            continue;
        }
        if fr < fs[second_worst] {
            pts[worst] = reflected;
            fs[worst] = fr;
            continue;
        }
        if fr < fs[worst] {
            // Outside contraction: between centroid and the reflected point.
            let contracted = along(NM_CONTRACT);
            let fc = f(&contracted)?;
            if fc <= fr {
                pts[worst] = contracted;
                fs[worst] = fc;
                continue;
            }
        } else {
            // Inside contraction: between centroid and the worst point.
            let contracted = along(-NM_CONTRACT);
            let fc = f(&contracted)?;
            if fc < fs[worst] {
                pts[worst] = contracted;
                fs[worst] = fc;
                continue;
            }
        }

        // Shrink toward the best vertex.
        let anchor = pts[best].clone();
        for i in 0..pts.len() {
            if i == best {
                continue;
            }
            if evals.get() >= cap {
                break;
            }
            let moved: Vec<f64> = anchor
                .iter()
                .zip(pts[i].iter())
                .map(|(a, x)| a + NM_SHRINK * (x - a))
                .collect();
            fs[i] = f(&moved)?;
            pts[i] = moved;
        }
    }
}

/// Finds the error-surface crossing along the ray `t · base`, `t > 0`.
/// Doubles the probe length from `config.initial_length` until the decoder
/// errs (up to the escalation cap), then bisects to relative width
/// [`SURFACE_REL_TOL`]. Returns the erroneous endpoint of the final bracket,
/// or `None` when the ray never errs within the cap.
fn ray_crossing<I: ErrorIndicator + ?Sized>(
    ind: &I,
    base: &NoiseVector,
    config: &AmoebaConfig,
    evals: &Cell<usize>,
) -> Result<Option<f64>> {
    let mut lo = 0.0;
    let mut hi = config.initial_length;
    let mut escalations = 0;
    loop {
        evals.set(evals.get() + 1);
        if ind.is_error(&base.scaled(hi))? {
            break;
        }
        if escalations >= config.max_length_escalations {
            return Ok(None);
        }
        lo = hi;
        hi *= 2.0;
        escalations += 1;
    }
    bisect_crossing(ind, base, lo, hi, evals).map(Some)
}

/// Bisects `[lo, hi]` with `error(hi·base)` and `!error(lo·base)` down to
/// relative width [`SURFACE_REL_TOL`]; returns the erroneous endpoint.
fn bisect_crossing<I: ErrorIndicator + ?Sized>(
    ind: &I,
    base: &NoiseVector,
    mut lo: f64,
    mut hi: f64,
    evals: &Cell<usize>,
) -> Result<f64> {
    while hi - lo > SURFACE_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        evals.set(evals.get() + 1);
        if ind.is_error(&base.scaled(mid))? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Builds a verified record from a point on (the erroneous side of) the
/// error surface.
fn record_from_surface(
    dec: &CodeDecoder,
    noise: NoiseVector,
    seed: Option<u64>,
    restarts: usize,
    variant: Variant,
) -> Result<InstantonRecord> {
    let (above_err, decoded) = dec.decode(&noise.scaled(1.0 + SANDWICH_DELTA))?;
    if !above_err {
        return Err(Error::Anomaly(
            "amoeba: instanton probe just above the surface decodes correctly".into(),
        ));
    }
    if dec.is_error(&noise.scaled(1.0 - SANDWICH_DELTA))? {
        return Err(Error::Anomaly(
            "amoeba: instanton probe just below the surface still errs".into(),
        ));
    }
    let d = effective_distance_of_noise(&noise, dec.g)?;
    Ok(InstantonRecord {
        noise,
        d,
        decoder: dec.spec.clone(),
        decoded,
        seed,
        restarts,
        variant,
    })
}

/// Soft-objective restart rounds from a given start point (transmitted
/// coordinates). Returns the best point, its objective, and rounds run.
fn soft_rounds(
    dec: &CodeDecoder,
    s2: f64,
    start: Vec<f64>,
    config: &AmoebaConfig,
    evals: &Cell<usize>,
) -> Result<(Vec<f64>, f64, usize)> {
    let trans: Vec<usize> = dec.g.transmitted_bits().collect();
    let n_bits = dec.g.n_bits();
    let penalty = 10.0 * n_bits as f64;
    let mut objective = |v: &[f64]| -> Result<f64> {
        evals.set(evals.get() + 1);
        let noise = embed(&trans, n_bits, v, s2)?;
        let err = dec.is_error(&noise)?;
        let d = 4.0 * v.iter().map(|x| x * x).sum::<f64>();
        Ok(d + if err { 0.0 } else { penalty })
    };

    let mut best_f = objective(&start)?;
    let mut best = start;
    let mut scale = config.initial_scale * norm2(&best);
    let mut rounds_used = 0;
    for _ in 0..config.rounds {
        if evals.get() >= config.max_evals || scale <= 0.0 {
            break;
        }
        let mut init = Vec::with_capacity(best.len() + 1);
        init.push(best.clone());
        for j in 0..best.len() {
            let mut v = best.clone();
            v[j] += scale;
            init.push(v);
        }
        let (p, fp) = nelder_mead(&mut objective, init, evals, config.max_evals)?;
        if fp < best_f {
            best = p;
            best_f = fp;
        }
        rounds_used += 1;
        scale *= config.scale_decay;
    }
    Ok((best, best_f, rounds_used))
}

/// Projects a point with an erroneous decode onto the error surface along
/// its own ray and assembles the verified record.
fn project_and_record(
    dec: &CodeDecoder,
    s2: f64,
    best: &[f64],
    seed: Option<u64>,
    restarts: usize,
    variant: Variant,
    evals: &Cell<usize>,
) -> Result<InstantonRecord> {
    let trans: Vec<usize> = dec.g.transmitted_bits().collect();
    let noise = embed(&trans, dec.g.n_bits(), best, s2)?;
    evals.set(evals.get() + 1);
    if !dec.is_error(&noise)? {
        return Err(Error::Anomaly(
            "amoeba: no erroneous point found within the evaluation budget".into(),
        ));
    }
    let t = bisect_crossing(dec, &noise, 0.0, 1.0, evals)?;
    record_from_surface(dec, noise.scaled(t), seed, restarts, variant)
}

/// Minimizes `d(x) + penalty·[decodes correctly]` from a random start, then
/// projects the minimizer onto the error surface. The start is drawn at the
/// working SNR and amplified ×1.5 until it errs (bounded by the config), so
/// the search typically begins inside the error region.
pub fn soft_amoeba(
    g: &TannerGraph,
    decoder: &DecoderSpec,
    s2: f64,
    seed: u64,
    config: &AmoebaConfig,
) -> Result<InstantonRecord> {
    config.validate()?;
    let dec = CodeDecoder::new(g, decoder.clone())?;
    let evals = Cell::new(0usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noise = sample_noise(g, s2, &mut rng)?;
    for _ in 0..config.max_amplitude_escalations {
        evals.set(evals.get() + 1);
        if dec.is_error(&noise)? {
            break;
        }
        noise = noise.scaled(1.5);
    }
    let start: Vec<f64> = g.transmitted_bits().map(|i| noise.values()[i]).collect();
    let (best, _, rounds) = soft_rounds(&dec, s2, start, config, &evals)?;
    project_and_record(&dec, s2, &best, Some(seed), rounds, Variant::Soft, &evals)
}

/// Minimizes the surface distance over noise directions: each direction is
/// normalized and its error-surface crossing `ℓ*` found by bisection, giving
/// the objective `d(ℓ*·u) = 4ℓ*²`; directions that never err within the
/// escalation cap score infinity (and the initial direction is resampled).
pub fn hard_amoeba(
    g: &TannerGraph,
    decoder: &DecoderSpec,
    s2: f64,
    seed: u64,
    config: &AmoebaConfig,
) -> Result<InstantonRecord> {
    config.validate()?;
    let dec = CodeDecoder::new(g, decoder.clone())?;
    let evals = Cell::new(0usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trans: Vec<usize> = g.transmitted_bits().collect();
    let n_bits = g.n_bits();
    let k = trans.len();
    if k == 0 {
        return Err(Error::Zero("graph has no transmitted bits"));
    }

    let objective = |v: &[f64], evals: &Cell<usize>| -> Result<f64> {
        let norm = norm2(v);
        if norm < 1e-12 {
            return Ok(f64::INFINITY);
        }
        let unit: Vec<f64> = v.iter().map(|x| x / norm).collect();
        let base = embed(&trans, n_bits, &unit, s2)?;
        match ray_crossing(&dec, &base, config, evals)? {
            Some(l) => Ok(4.0 * l * l),
            None => Ok(f64::INFINITY),
        }
    };

    // Draw starts until one's ray actually crosses the error surface.
    let mut start: Option<Vec<f64>> = None;
    for _ in 0..config.max_direction_resamples {
        let mut u: Vec<f64> = Vec::with_capacity(k);
        for _ in 0..k {
            u.push(StandardNormal.sample(&mut rng));
        }
        let norm = norm2(&u);
        if norm == 0.0 {
            continue;
        }
        for x in &mut u {
            *x /= norm;
        }
        if objective(&u, &evals)?.is_finite() {
            start = Some(u);
            break;
        }
    }
    let Some(mut best) = start else {
        return Err(Error::Anomaly(
            "amoeba: no direction crossed the error surface within the resample budget".into(),
        ));
    };

    let mut wrapped = |v: &[f64]| objective(v, &evals);
    let mut best_f = wrapped(&best)?;
    let mut scale = config.initial_scale;
    let mut rounds_used = 0;
    for _ in 0..config.rounds {
        if evals.get() >= config.max_evals {
            break;
        }
        let mut init = Vec::with_capacity(k + 1);
        init.push(best.clone());
        for j in 0..k {
            let mut v = best.clone();
            v[j] += scale;
            init.push(v);
        }
        let (p, fp) = nelder_mead(&mut wrapped, init, &evals, config.max_evals)?;
        if fp < best_f {
            best = p;
            best_f = fp;
        }
        rounds_used += 1;
        scale *= config.scale_decay;
    }
    if !best_f.is_finite() {
        return Err(Error::Anomaly(
            "amoeba: no erroneous point found within the evaluation budget".into(),
        ));
    }

    let norm = norm2(&best);
    let unit: Vec<f64> = best.iter().map(|x| x / norm).collect();
    let base = embed(&trans, n_bits, &unit, s2)?;
    let l = ray_crossing(&dec, &base, config, &evals)?.ok_or_else(|| {
        Error::Anomaly("amoeba: best direction stopped crossing the error surface".into())
    })?;
    record_from_surface(&dec, base.scaled(l), Some(seed), rounds_used, Variant::Hard)
}

/// Runs the soft search with the initial simplex built around a
/// pseudo-codeword-search instanton (vertex `j` offsets coordinate `j` by
/// 5% of the seed's norm), refining an LP-derived candidate against the
/// given decoder. Deterministic: no random start is drawn.
pub fn seeded_amoeba(
    g: &TannerGraph,
    decoder: &DecoderSpec,
    x_inst: &NoiseVector,
    config: &AmoebaConfig,
) -> Result<InstantonRecord> {
    config.validate()?;
    if x_inst.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "instanton seed",
            expected: g.n_bits(),
            found: x_inst.len(),
        });
    }
    let start: Vec<f64> = g.transmitted_bits().map(|i| x_inst.values()[i]).collect();
    if norm2(&start) == 0.0 {
        return Err(Error::Zero("instanton seed"));
    }
    let dec = CodeDecoder::new(g, decoder.clone())?;
    let evals = Cell::new(0usize);
    let s2 = x_inst.snr_s2();
    let (best, _, rounds) = soft_rounds(&dec, s2, start, config, &evals)?;
    project_and_record(&dec, s2, &best, None, rounds, Variant::Seeded, &evals)
}
