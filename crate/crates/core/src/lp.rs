//! Small-polytope LP decoding.
//!
//! Minimizes the self-energy `Σ_i h_i f_i` over bit beliefs `f ∈ [0,1]^n`
//! subject to, for every check α and every odd subset `T ⊆ N(α)`,
//!
//! ```text
//! Σ_{i∈T} f_i - Σ_{i∈N(α)∖T} f_i ≤ |T| - 1.
//! ```
//!
//! Codewords satisfy all of these, so the LP is a relaxation of block-MAP
//! decoding; fractional vertex optima are pseudo-codewords. Two modes are
//! offered: full upfront enumeration (2^{q-1} rows per degree-q check, only
//! sensible for small degrees) and cut generation, which starts from the box
//! alone and adds the most violated inequality per check per round. Both
//! reach the same optimum.

use std::collections::HashSet;

use crate::channel::LlrVector;
use crate::error::{Error, Result};
use crate::graph::{BinaryWord, TannerGraph};
use crate::simplex::{self, LpProblem, LpSolution, LpStatus, SparseRow};

/// Full enumeration writes `2^(q-1)` rows per degree-`q` check; beyond this
/// degree the caller must use cut generation.
pub const FULL_ENUM_MAX_DEGREE: usize = 12;
/// A coordinate within this distance of {0,1} counts as integral for
/// classification; distances are always computed from the raw values.
pub const INTEGRALITY_TOL: f64 = 1e-6;
/// An odd-subset inequality must be violated by more than this to generate
/// a cut (matches the membership tolerance).
pub const VIOLATION_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LpMode {
    FullEnumeration,
    CutGeneration,
}

/// LP decoder output: a vertex of the small polytope. `effective_distance`
/// is `(Σ σ̃_i)² / Σ σ̃_i²` over transmitted bits (0 for the zero output),
/// and `support` lists the indices with `σ̃_i > 1e-6`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct PseudoCodeword {
    pub values: Vec<f64>,
    pub integral: bool,
    pub effective_distance: f64,
    pub support: Vec<usize>,
}

impl PseudoCodeword {
    /// Wraps a vector of bit beliefs, validating the box, small-polytope
    /// membership, and (for integral vectors) the zero-syndrome property.
    pub fn from_values(values: Vec<f64>, g: &TannerGraph) -> Result<Self> {
        if values.len() != g.n_bits() {
            return Err(Error::Dimension {
                what: "pseudo-codeword",
                expected: g.n_bits(),
                found: values.len(),
            });
        }
        if values.iter().any(|&v| !(-1e-9..=1.0 + 1e-9).contains(&v)) {
            return Err(Error::Param(
                "pseudo-codeword coordinates must lie in [0,1]".into(),
            ));
        }
        let values: Vec<f64> = values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        if !check_pseudocodeword(&values, g) {
            return Err(Error::Param(
                "vector violates an odd-subset inequality beyond 1e-8".into(),
            ));
        }
        let integral = values
            .iter()
            .all(|&v| v <= INTEGRALITY_TOL || v >= 1.0 - INTEGRALITY_TOL);
        if integral {
            let word = BinaryWord::new(values.iter().map(|&v| u8::from(v >= 0.5)).collect())
                .expect("rounded coordinates are bits");
            if !g.is_codeword(&word)? {
                return Err(Error::Anomaly(
                    "integral pseudo-codeword with nonzero syndrome".into(),
                ));
            }
        }
        let (sum, sum_sq) = transmitted_sums(&values, g);
        let effective_distance = if sum_sq > 0.0 {
            sum * sum / sum_sq
        } else {
            0.0
        };
        let support = values
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v > INTEGRALITY_TOL)
            .map(|(i, _)| i)
            .collect();
        Ok(PseudoCodeword {
            values,
            integral,
            effective_distance,
            support,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Self-energy `Σ_i h_i σ̃_i` of this vector in the given field.
    pub fn self_energy(&self, h: &LlrVector) -> f64 {
        h.values()
            .iter()
            .zip(&self.values)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Σ σ̃ and Σ σ̃² over transmitted (non-punctured) bits.
pub(crate) fn transmitted_sums(values: &[f64], g: &TannerGraph) -> (f64, f64) {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for i in g.transmitted_bits() {
        sum += values[i];
        sum_sq += values[i] * values[i];
    }
    (sum, sum_sq)
}

pub fn lp_decode(h: &LlrVector, g: &TannerGraph, mode: LpMode) -> Result<PseudoCodeword> {
    if h.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "llr vector",
            expected: g.n_bits(),
            found: h.len(),
        });
    }
    // Punctured bits carry no channel evidence regardless of the caller's h.
    let objective: Vec<f64> = (0..g.n_bits())
        .map(|i| {
            if g.is_punctured(i) {
                0.0
            } else {
                h.values()[i]
            }
        })
        .collect();

    let solution = match mode {
        LpMode::FullEnumeration => {
            let rows = full_enumeration_rows(g)?;
            solve_expect_feasible(&mut LpProblem::new(objective, rows), None)?
        }
        LpMode::CutGeneration => cut_generation_solve(objective, g)?,
    };
    PseudoCodeword::from_values(solution.f, g)
}

fn solve_expect_feasible(p: &mut LpProblem, extra: Option<Vec<SparseRow>>) -> Result<LpSolution> {
    let sol = match extra {
        None => simplex::solve(p)?,
        Some(rows) => simplex::resolve_with_new_rows(p, rows)?,
    };
    if sol.status != LpStatus::Optimal {
        // f = 0 satisfies every odd-subset inequality, so this is a bug.
        return Err(Error::Anomaly(
            "decoding LP reported infeasible; the polytope contains 0".into(),
        ));
    }
    Ok(sol)
}

fn full_enumeration_rows(g: &TannerGraph) -> Result<Vec<SparseRow>> {
    let mut rows = Vec::new();
    for a in 0..g.n_checks() {
        let mut bits = g.check_neighbors(a).to_vec();
        bits.sort_unstable();
        let q = bits.len();
        if q > FULL_ENUM_MAX_DEGREE {
            return Err(Error::TooLarge {
                what: "check degree for full enumeration",
                size: q,
                limit: FULL_ENUM_MAX_DEGREE,
            });
        }
        for mask in 0u32..(1 << q) {
            if mask.count_ones() % 2 != 1 {
                continue;
            }
            rows.push(subset_row(&bits, mask));
        }
    }
    Ok(rows)
}

/// Row for odd subset T (given as a mask over `sorted_bits`):
/// `Σ_{i∈T} f_i - Σ_{i∉T} f_i ≤ |T| - 1`.
fn subset_row(sorted_bits: &[usize], mask: u32) -> SparseRow {
    let coeffs = sorted_bits
        .iter()
        .enumerate()
        .map(|(j, &i)| (i, if mask & (1 << j) != 0 { 1.0 } else { -1.0 }))
        .collect();
    SparseRow::new(coeffs, mask.count_ones() as f64 - 1.0)
}

fn cut_generation_solve(objective: Vec<f64>, g: &TannerGraph) -> Result<LpSolution> {
    const MAX_ROUNDS: usize = 1000;
    let mut problem = LpProblem::new(objective, Vec::new());
    let mut sol = solve_expect_feasible(&mut problem, None)?;
    let mut seen: HashSet<(usize, u64)> = HashSet::new();
    for _ in 0..MAX_ROUNDS {
        let mut new_rows = Vec::new();
        for a in 0..g.n_checks() {
            if let Some((subset, _)) = separate_violated_cut(&sol.f, g, a)? {
                let mut bits = g.check_neighbors(a).to_vec();
                bits.sort_unstable();
                let mask: u64 = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &i)| subset.contains(&i))
                    .map(|(j, _)| 1u64 << j)
                    .sum();
                if seen.insert((a, mask)) {
                    let mask32 = u32::try_from(mask).expect("degree fits in 32 bits");
                    new_rows.push(subset_row(&bits, mask32));
                }
            }
        }
        if new_rows.is_empty() {
            return Ok(sol);
        }
        sol = solve_expect_feasible(&mut problem, Some(new_rows))?;
    }
    Err(Error::Anomaly(format!(
        "cut generation did not settle within {MAX_ROUNDS} rounds"
    )))
}

/// Most violated odd-subset inequality of one check, or None when all hold
/// within [`VIOLATION_TOL`].
///
/// The violation of subset T is `Σ_{i∈T}(2f_i - 1) - Σ_{i∈N} f_i + 1`, so
/// the unconstrained maximizer is `T₀ = {i : f_i > ½}`; when `|T₀|` is even,
/// the cheapest parity fix toggles the member of N(α) whose `f_i` is closest
/// to ½ (lowest index on ties).
pub fn separate_violated_cut(
    f: &[f64],
    g: &TannerGraph,
    check: usize,
) -> Result<Option<(Vec<usize>, f64)>> {
    if f.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "belief vector",
            expected: g.n_bits(),
            found: f.len(),
        });
    }
    if check >= g.n_checks() {
        return Err(Error::Param(format!(
            "check index {check} out of range ({} checks)",
            g.n_checks()
        )));
    }
    let bits = g.check_neighbors(check);
    let mut subset: Vec<usize> = bits.iter().copied().filter(|&i| f[i] > 0.5).collect();
    if subset.len().is_multiple_of(2) {
        let toggle = bits
            .iter()
            .copied()
            .min_by(|&a, &b| {
                (f[a] - 0.5)
                    .abs()
                    .total_cmp(&(f[b] - 0.5).abs())
                    .then(a.cmp(&b))
            })
            .expect("checks have at least one neighbor");
        if let Some(pos) = subset.iter().position(|&i| i == toggle) {
            subset.remove(pos);
        } else {
            subset.push(toggle);
        }
    }
    if subset.is_empty() {
        // No odd subset exists only for empty checks; with a toggle the
        // subset has at least one element unless the check has none.
        return Ok(None);
    }
    let in_t: f64 = subset.iter().map(|&i| f[i]).sum();
    let total: f64 = bits.iter().map(|&i| f[i]).sum();
    let violation = 2.0 * in_t - total - (subset.len() as f64 - 1.0);
    if violation > VIOLATION_TOL {
        subset.sort_unstable();
        Ok(Some((subset, violation)))
    } else {
        Ok(None)
    }
}

/// True iff every odd-subset inequality of every check holds within 1e-8.
pub fn check_pseudocodeword(f: &[f64], g: &TannerGraph) -> bool {
    (0..g.n_checks()).all(|a| {
        separate_violated_cut(f, g, a)
            .map(|v| v.is_none())
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{llr_from_noise, sample_noise};
    use crate::oracle::CodebookEnumeration;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn llr(values: &[f64]) -> LlrVector {
        LlrVector(values.to_vec())
    }

    fn hamming74() -> TannerGraph {
        TannerGraph::from_check_neighbors(
            7,
            vec![vec![0, 2, 4, 6], vec![1, 2, 5, 6], vec![3, 4, 5, 6]],
        )
        .unwrap()
    }

    /// Random code with degrees ≤ max_degree; may be irregular.
    fn random_code(rng: &mut ChaCha8Rng, n: usize, m: usize, max_degree: usize) -> TannerGraph {
        loop {
            let checks: Vec<Vec<usize>> = (0..m)
                .map(|_| {
                    let q = rng.gen_range(2..=max_degree.min(n));
                    let mut bits: Vec<usize> = (0..n).collect();
                    for k in 0..q {
                        let j = rng.gen_range(k..n);
                        bits.swap(k, j);
                    }
                    bits[..q].to_vec()
                })
                .collect();
            let g = TannerGraph::from_check_neighbors(n, checks).unwrap();
            if (0..n).all(|i| !g.bit_neighbors(i).is_empty()) {
                return g;
            }
        }
    }

    #[test]
    fn positive_fields_decode_to_zero_in_both_modes() {
        let g = hamming74();
        let h = llr(&[0.9, 0.4, 1.1, 0.2, 0.8, 0.7, 1.5]);
        for mode in [LpMode::FullEnumeration, LpMode::CutGeneration] {
            let pc = lp_decode(&h, &g, mode).unwrap();
            assert!(pc.is_zero(), "{mode:?}");
            assert!(pc.integral);
            assert_eq!(pc.effective_distance, 0.0);
            assert!((pc.self_energy(&h)).abs() < 1e-12);
        }
    }

    #[test]
    fn hamming_integral_outputs_match_block_map() {
        let g = hamming74();
        let oracle = CodebookEnumeration::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut integral_seen = 0;
        for _ in 0..300 {
            let noise = sample_noise(&g, 1.0, &mut rng).unwrap();
            let h = llr_from_noise(&noise, &g).unwrap();
            let pc = lp_decode(&h, &g, LpMode::CutGeneration).unwrap();
            let (map_word, map_obj) = oracle.block_map(&h).unwrap();
            let lp_obj = pc.self_energy(&h);
            assert!(
                lp_obj <= map_obj + 1e-8,
                "LP {lp_obj} above block-MAP {map_obj}"
            );
            if pc.integral {
                integral_seen += 1;
                let rounded: Vec<u8> = pc.values.iter().map(|&v| u8::from(v >= 0.5)).collect();
                assert_eq!(rounded, map_word.bits());
            }
        }
        assert!(integral_seen > 100, "only {integral_seen} integral outputs");
    }

    #[test]
    fn modes_agree_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..12 {
            let g = random_code(&mut rng, 10, 5, 6);
            for _ in 0..4 {
                let noise = sample_noise(&g, 0.8, &mut rng).unwrap();
                let h = llr_from_noise(&noise, &g).unwrap();
                let full = lp_decode(&h, &g, LpMode::FullEnumeration).unwrap();
                let cut = lp_decode(&h, &g, LpMode::CutGeneration).unwrap();
                let of = full.self_energy(&h);
                let oc = cut.self_energy(&h);
                assert!((of - oc).abs() < 1e-8, "full {of} vs cuts {oc}");
            }
        }
    }

    #[test]
    fn objective_never_above_any_codeword_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..8 {
            let g = random_code(&mut rng, 9, 4, 5);
            let oracle = CodebookEnumeration::new(&g).unwrap();
            for _ in 0..5 {
                let noise = sample_noise(&g, 0.7, &mut rng).unwrap();
                let h = llr_from_noise(&noise, &g).unwrap();
                let pc = lp_decode(&h, &g, LpMode::CutGeneration).unwrap();
                let lp_obj = pc.self_energy(&h);
                for w in oracle.codewords() {
                    let energy: f64 = w
                        .bits()
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| f64::from(b) * h.values()[i])
                        .sum();
                    assert!(lp_obj <= energy + 1e-8);
                }
            }
        }
    }

    #[test]
    fn scaling_the_field_keeps_the_vertex() {
        let g = hamming74();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..40 {
            let noise = sample_noise(&g, 0.5, &mut rng).unwrap();
            let h = llr_from_noise(&noise, &g).unwrap();
            let scaled = llr(&h.values().iter().map(|v| 2.5 * v).collect::<Vec<_>>());
            let a = lp_decode(&h, &g, LpMode::CutGeneration).unwrap();
            let b = lp_decode(&scaled, &g, LpMode::CutGeneration).unwrap();
            assert_eq!(a.values, b.values);
        }
    }

    #[test]
    fn separation_finds_nothing_at_zero() {
        let g = random_code(&mut ChaCha8Rng::seed_from_u64(59), 8, 3, 5);
        let f = vec![0.0; 8];
        for a in 0..g.n_checks() {
            assert!(separate_violated_cut(&f, &g, a).unwrap().is_none());
        }
        assert!(check_pseudocodeword(&f, &g));
    }

    #[test]
    fn all_ones_on_a_triangle_check_is_maximally_violated() {
        let g = TannerGraph::from_check_neighbors(3, vec![vec![0, 1, 2]]).unwrap();
        let (t, v) = separate_violated_cut(&[1.0, 1.0, 1.0], &g, 0)
            .unwrap()
            .expect("violated");
        assert_eq!(t, vec![0, 1, 2]);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_separation_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..400 {
            let q = rng.gen_range(1..=8usize);
            let g = TannerGraph::from_check_neighbors(q, vec![(0..q).collect()]).unwrap();
            let f: Vec<f64> = (0..q).map(|_| rng.gen_range(0.0..1.0)).collect();
            let closed = separate_violated_cut(&f, &g, 0).unwrap();
            // Exhaustive max over odd subsets.
            let mut best: Option<f64> = None;
            for mask in 0u32..(1 << q) {
                if mask.count_ones() % 2 != 1 {
                    continue;
                }
                let mut lhs = 0.0;
                for j in 0..q {
                    let sign = if mask & (1 << j) != 0 { 1.0 } else { -1.0 };
                    lhs += sign * f[j];
                }
                let viol = lhs - (mask.count_ones() as f64 - 1.0);
                best = Some(best.map_or(viol, |b: f64| b.max(viol)));
            }
            let best = best.unwrap();
            match closed {
                Some((_, v)) => assert!(
                    (v - best).abs() < 1e-12,
                    "closed-form {v} vs exhaustive {best}"
                ),
                None => assert!(best <= VIOLATION_TOL, "missed violation {best}"),
            }
        }
    }

    #[test]
    fn codewords_lie_in_the_polytope() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..6 {
            let g = random_code(&mut rng, 10, 4, 6);
            let oracle = CodebookEnumeration::new(&g).unwrap();
            for w in oracle.codewords() {
                let f: Vec<f64> = w.bits().iter().map(|&b| f64::from(b)).collect();
                assert!(check_pseudocodeword(&f, &g));
            }
        }
    }

    #[test]
    fn half_vector_is_inside_small_violation_is_caught() {
        let g = TannerGraph::from_check_neighbors(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(check_pseudocodeword(&[0.5, 0.5, 0.5], &g));
        // T = {0}: f0 - f1 - f2 ≤ 0 violated by 1e-3.
        assert!(!check_pseudocodeword(&[0.501, 0.25, 0.25], &g));
    }

    #[test]
    fn punctured_fields_are_ignored() {
        let base = hamming74();
        let d = base.dendro_transform().unwrap();
        assert!(d.n_punctured() > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let noise = sample_noise(&d, 1.0, &mut rng).unwrap();
        let clean = llr_from_noise(&noise, &d).unwrap();
        let mut dirty_values = clean.values().to_vec();
        for i in 0..d.n_bits() {
            if d.is_punctured(i) {
                dirty_values[i] = rng.gen_range(-3.0..3.0);
            }
        }
        let a = lp_decode(&clean, &d, LpMode::CutGeneration).unwrap();
        let b = lp_decode(&llr(&dirty_values), &d, LpMode::CutGeneration).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn full_enumeration_rejects_high_degree() {
        let g = TannerGraph::from_check_neighbors(13, vec![(0..13).collect()]).unwrap();
        let h = llr(&vec![0.1; 13]);
        assert!(matches!(
            lp_decode(&h, &g, LpMode::FullEnumeration),
            Err(Error::TooLarge { .. })
        ));
        assert!(lp_decode(&h, &g, LpMode::CutGeneration).is_ok());
    }

    #[test]
    fn from_values_checks_membership_and_syndrome() {
        let g = TannerGraph::from_check_neighbors(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(PseudoCodeword::from_values(vec![1.0, 1.0, 1.0], &g).is_err());
        let ok = PseudoCodeword::from_values(vec![1.0, 1.0, 0.0], &g).unwrap();
        assert!(ok.integral);
        assert_eq!(ok.support, vec![0, 1]);
        assert!((ok.effective_distance - 2.0).abs() < 1e-12);
        assert!(PseudoCodeword::from_values(vec![0.5, 0.5], &g).is_err());
        assert!(PseudoCodeword::from_values(vec![1.2, 0.0, 0.0], &g).is_err());
    }

    #[test]
    fn fractional_vertex_distance_matches_formula() {
        let g = TannerGraph::from_check_neighbors(4, vec![vec![0, 1, 2]]).unwrap();
        let pc = PseudoCodeword::from_values(vec![1.0, 0.5, 0.5, 0.0], &g).unwrap();
        assert!(!pc.integral);
        assert!((pc.effective_distance - 8.0 / 3.0).abs() < 1e-12);
        assert_eq!(pc.support, vec![0, 1, 2]);
    }
}
