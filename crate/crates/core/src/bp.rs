//! Sum-product belief propagation with a fixed iteration budget.
//!
//! Messages are full log-likelihood ratios for the posterior
//! `p(σ) ∝ exp(-Σ_i h_i σ_i)` restricted to codewords, so on a cycle-free
//! graph the bit beliefs reproduce exact marginals and the Bethe free energy
//! of the fixed point equals `-ln Z`. The schedule is parallel flooding:
//! every iteration refreshes all bit-to-check messages, then all
//! check-to-bit messages.

use crate::channel::LlrVector;
use crate::error::{Error, Result};
use crate::graph::{BinaryWord, TannerGraph};

/// Check-to-bit magnitudes are clamped here; `tanh` saturates in double
/// precision just past this point, so larger values carry no information.
pub const MESSAGE_CLAMP: f64 = 19.07;

/// All messages of a decoding pass, stored ragged along graph adjacency:
/// `bit_to_check[i][k]` pairs bit `i` with its `k`-th adjacent check,
/// `check_to_bit[a][j]` pairs check `a` with its `j`-th adjacent bit.
#[derive(Clone, Debug)]
pub struct MessageState {
    pub bit_to_check: Vec<Vec<f64>>,
    pub check_to_bit: Vec<Vec<f64>>,
    pub iteration: usize,
    /// How many check-to-bit updates hit the clamp so far.
    pub clamp_events: usize,
}

/// Beliefs derived from a message state. `check_beliefs[a]` is a
/// distribution over the local codewords of check `a`, in the order
/// produced by [`TannerGraph::enumerate_local_codewords`].
#[derive(Clone, Debug)]
pub struct BeliefState {
    pub bit_beliefs: Vec<[f64; 2]>,
    pub check_beliefs: Vec<Vec<f64>>,
}

/// Bethe free-energy split of a belief state.
#[derive(Clone, Copy, Debug)]
pub struct BetheFreeEnergy {
    pub energy: f64,
    pub entropy: f64,
    pub free_energy: f64,
}

/// Result of a decoding pass: hard decision, final messages, and the
/// per-bit soft output `m_i = h_i + Σ_α (check-to-bit)_{αi}`.
#[derive(Clone, Debug)]
pub struct BpOutput {
    pub decision: BinaryWord,
    pub messages: MessageState,
    pub soft: Vec<f64>,
}

impl MessageState {
    fn zeroed(g: &TannerGraph) -> Self {
        MessageState {
            bit_to_check: (0..g.n_bits())
                .map(|i| vec![0.0; g.bit_neighbors(i).len()])
                .collect(),
            check_to_bit: (0..g.n_checks())
                .map(|a| vec![0.0; g.check_neighbors(a).len()])
                .collect(),
            iteration: 0,
            clamp_events: 0,
        }
    }
}

/// Position translator between the two adjacency orderings.
struct AdjIndex {
    /// `pos_in_check[i][k]`: position of bit `i` inside the neighbor list of
    /// its `k`-th check.
    pos_in_check: Vec<Vec<usize>>,
}

impl AdjIndex {
    fn new(g: &TannerGraph) -> Self {
        let mut pos_in_check = Vec::with_capacity(g.n_bits());
        for i in 0..g.n_bits() {
            let row = g
                .bit_neighbors(i)
                .iter()
                .map(|&a| {
                    g.check_neighbors(a)
                        .iter()
                        .position(|&b| b == i)
                        .expect("adjacency lists are mutually consistent")
                })
                .collect();
            pos_in_check.push(row);
        }
        AdjIndex { pos_in_check }
    }
}

pub fn bp_decode(h: &LlrVector, g: &TannerGraph, iterations: usize) -> Result<BpOutput> {
    bp_decode_opts(h, g, iterations, false)
}

/// As [`bp_decode`], with optional early exit once the hard decision has a
/// zero syndrome (useful for frame-error sampling; the default keeps the
/// fixed budget so message states are reproducible functions of `h`).
pub fn bp_decode_opts(
    h: &LlrVector,
    g: &TannerGraph,
    iterations: usize,
    early_stop: bool,
) -> Result<BpOutput> {
    if h.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "llr vector",
            expected: g.n_bits(),
            found: h.len(),
        });
    }
    if iterations == 0 {
        return Err(Error::Param(
            "bp iteration budget must be at least 1".into(),
        ));
    }
    let h = h.values();
    let idx = AdjIndex::new(g);
    let mut state = MessageState::zeroed(g);
    let mut soft = h.to_vec();

    for _ in 0..iterations {
        // Bit-to-check: subtract each edge's own inbound message from the
        // full sum rather than re-summing per edge.
        for i in 0..g.n_bits() {
            let checks = g.bit_neighbors(i);
            let total: f64 = checks
                .iter()
                .enumerate()
                .map(|(k, &a)| state.check_to_bit[a][idx.pos_in_check[i][k]])
                .sum();
            for (k, &a) in checks.iter().enumerate() {
                let inbound = state.check_to_bit[a][idx.pos_in_check[i][k]];
                state.bit_to_check[i][k] = h[i] + total - inbound;
            }
        }
        // Check-to-bit via the tanh product rule, leaving each target edge
        // out with prefix/suffix products (no division by near-zero tanh).
        for a in 0..g.n_checks() {
            let bits = g.check_neighbors(a);
            let q = bits.len();
            let t: Vec<f64> = bits
                .iter()
                .map(|&i| {
                    let k = g
                        .bit_neighbors(i)
                        .iter()
                        .position(|&b| b == a)
                        .expect("adjacency lists are mutually consistent");
                    (state.bit_to_check[i][k] / 2.0).tanh()
                })
                .collect();
            let mut prefix = vec![1.0; q + 1];
            for j in 0..q {
                prefix[j + 1] = prefix[j] * t[j];
            }
            let mut suffix = 1.0;
            for j in (0..q).rev() {
                let prod = prefix[j] * suffix;
                suffix *= t[j];
                let msg = 2.0 * prod.clamp(-1.0, 1.0).atanh();
                state.check_to_bit[a][j] = if msg.abs() > MESSAGE_CLAMP || msg.is_nan() {
                    state.clamp_events += 1;
                    MESSAGE_CLAMP.copysign(prod)
                } else {
                    msg
                };
            }
        }
        state.iteration += 1;

        for i in 0..g.n_bits() {
            let sum: f64 = g
                .bit_neighbors(i)
                .iter()
                .enumerate()
                .map(|(k, &a)| state.check_to_bit[a][idx.pos_in_check[i][k]])
                .sum();
            soft[i] = h[i] + sum;
        }
        if early_stop {
            let decision = hard_decision(&soft);
            if g.is_codeword(&decision)? {
                return Ok(BpOutput {
                    decision,
                    messages: state,
                    soft,
                });
            }
        }
    }

    let decision = hard_decision(&soft);
    Ok(BpOutput {
        decision,
        messages: state,
        soft,
    })
}

/// `σ_i = 1` iff `m_i ≤ 0`: the tie at zero decodes to 1 so that points on
/// the decision surface stay classified as errors (bisection in the
/// instanton searches relies on this).
pub fn hard_decision(soft: &[f64]) -> BinaryWord {
    BinaryWord::new(soft.iter().map(|&m| u8::from(m <= 0.0)).collect())
        .expect("bits are 0 or 1 by construction")
}

pub fn beliefs_from_messages(
    h: &LlrVector,
    m: &MessageState,
    g: &TannerGraph,
) -> Result<BeliefState> {
    if h.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "llr vector",
            expected: g.n_bits(),
            found: h.len(),
        });
    }
    if m.bit_to_check.len() != g.n_bits() || m.check_to_bit.len() != g.n_checks() {
        return Err(Error::Dimension {
            what: "message state",
            expected: g.n_bits(),
            found: m.bit_to_check.len(),
        });
    }
    let idx = AdjIndex::new(g);
    let mut bit_beliefs = Vec::with_capacity(g.n_bits());
    for i in 0..g.n_bits() {
        let sum: f64 = g
            .bit_neighbors(i)
            .iter()
            .enumerate()
            .map(|(k, &a)| m.check_to_bit[a][idx.pos_in_check[i][k]])
            .sum();
        let soft = h.values()[i] + sum;
        // b(1) = 1 / (1 + e^{m}), evaluated stably for either sign.
        let b1 = if soft >= 0.0 {
            let e = (-soft).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + soft.exp())
        };
        bit_beliefs.push([1.0 - b1, b1]);
    }

    let mut check_beliefs = Vec::with_capacity(g.n_checks());
    for a in 0..g.n_checks() {
        let masks = g.enumerate_local_codewords(a)?;
        let bits = g.check_neighbors(a);
        // b_α(σ) ∝ exp(Σ_j ν_{jα}(1-2σ_j)/2); the σ-independent part cancels
        // in normalization, leaving log-weight -Σ_{j∈σ} ν_{jα}.
        let nu: Vec<f64> = bits
            .iter()
            .map(|&i| {
                let k = g
                    .bit_neighbors(i)
                    .iter()
                    .position(|&b| b == a)
                    .expect("adjacency lists are mutually consistent");
                m.bit_to_check[i][k]
            })
            .collect();
        let logw: Vec<f64> = masks
            .iter()
            .map(|&mask| {
                let mut w = 0.0;
                let mut bitset = mask;
                while bitset != 0 {
                    let j = bitset.trailing_zeros() as usize;
                    w -= nu[j];
                    bitset &= bitset - 1;
                }
                w
            })
            .collect();
        let peak = logw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut dist: Vec<f64> = logw.iter().map(|&w| (w - peak).exp()).collect();
        let z: f64 = dist.iter().sum();
        for p in &mut dist {
            *p /= z;
        }
        check_beliefs.push(dist);
    }
    Ok(BeliefState {
        bit_beliefs,
        check_beliefs,
    })
}

/// Bethe free energy `F = E - S` with
/// `E = Σ_i h_i b_i(1)` and
/// `S = -Σ_α Σ b_α ln b_α + Σ_i (q_i - 1) Σ b_i ln b_i`,
/// using the convention `0·ln 0 = 0`. At a BP fixed point on a cycle-free
/// graph, `F = -ln Z` of the exact posterior.
pub fn bethe_free_energy(
    h: &LlrVector,
    beliefs: &BeliefState,
    g: &TannerGraph,
) -> Result<BetheFreeEnergy> {
    if h.len() != g.n_bits() || beliefs.bit_beliefs.len() != g.n_bits() {
        return Err(Error::Dimension {
            what: "bit beliefs",
            expected: g.n_bits(),
            found: beliefs.bit_beliefs.len(),
        });
    }
    if beliefs.check_beliefs.len() != g.n_checks() {
        return Err(Error::Dimension {
            what: "check beliefs",
            expected: g.n_checks(),
            found: beliefs.check_beliefs.len(),
        });
    }
    const NORM_TOL: f64 = 1e-6;
    for (i, b) in beliefs.bit_beliefs.iter().enumerate() {
        if (b[0] + b[1] - 1.0).abs() > NORM_TOL || b[0] < -NORM_TOL || b[1] < -NORM_TOL {
            return Err(Error::Param(format!(
                "bit belief {i} is not a normalized distribution: {b:?}"
            )));
        }
    }
    for (a, dist) in beliefs.check_beliefs.iter().enumerate() {
        let sum: f64 = dist.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL || dist.iter().any(|&p| p < -NORM_TOL) {
            return Err(Error::Param(format!(
                "check belief {a} is not a normalized distribution (sum {sum})"
            )));
        }
    }

    fn xlnx(p: f64) -> f64 {
        if p <= 0.0 {
            0.0
        } else {
            p * p.ln()
        }
    }

    let energy: f64 = h
        .values()
        .iter()
        .zip(&beliefs.bit_beliefs)
        .map(|(&hi, b)| hi * b[1])
        .sum();
    let check_term: f64 = beliefs
        .check_beliefs
        .iter()
        .map(|dist| dist.iter().map(|&p| xlnx(p)).sum::<f64>())
        .sum();
    let bit_term: f64 = (0..g.n_bits())
        .map(|i| {
            let q = g.bit_neighbors(i).len() as f64;
            (q - 1.0) * (xlnx(beliefs.bit_beliefs[i][0]) + xlnx(beliefs.bit_beliefs[i][1]))
        })
        .sum();
    let entropy = -check_term + bit_term;
    Ok(BetheFreeEnergy {
        energy,
        entropy,
        free_energy: energy - entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TannerGraph;
    use crate::oracle::CodebookEnumeration;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn llr(values: &[f64]) -> LlrVector {
        LlrVector(values.to_vec())
    }

    fn single_check() -> TannerGraph {
        TannerGraph::from_check_neighbors(3, vec![vec![0, 1, 2]]).unwrap()
    }

    /// Random connected cycle-free code: each new check joins one existing
    /// bit to one or two fresh bits.
    fn random_tree_code(rng: &mut ChaCha8Rng, max_bits: usize) -> TannerGraph {
        let mut n = 1;
        let mut checks: Vec<Vec<usize>> = Vec::new();
        while n < max_bits {
            let anchor = rng.gen_range(0..n);
            let fresh = if n + 2 <= max_bits && rng.gen_bool(0.5) {
                2
            } else {
                1
            };
            let mut c = vec![anchor];
            for _ in 0..fresh {
                c.push(n);
                n += 1;
            }
            checks.push(c);
        }
        TannerGraph::from_check_neighbors(n, checks).unwrap()
    }

    fn random_llr(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> LlrVector {
        LlrVector((0..n).map(|_| rng.gen_range(-scale..scale)).collect())
    }

    #[test]
    fn first_iteration_check_message_matches_product_rule() {
        let g = single_check();
        let h = llr(&[1.0, 1.0, -0.5]);
        let out = bp_decode(&h, &g, 1).unwrap();
        // After one flooding pass the message into bit 0 sees the raw fields
        // of bits 1 and 2.
        let expected = 2.0 * ((0.5f64).tanh() * (-0.25f64).tanh()).atanh();
        assert!((out.messages.check_to_bit[0][0] - expected).abs() < 1e-12);
        assert!((expected - (-0.227_336_293_8)).abs() < 1e-9, "{expected}");
    }

    #[test]
    fn strong_positive_fields_decode_to_zero() {
        let g = random_tree_code(&mut ChaCha8Rng::seed_from_u64(5), 9);
        let h = llr(&vec![4.0; g.n_bits()]);
        let out = bp_decode(&h, &g, 1).unwrap();
        assert!(out.decision.is_zero());
    }

    #[test]
    fn tie_at_zero_decodes_to_one() {
        assert_eq!(hard_decision(&[0.0, 1e-12, -1e-12]).bits(), &[1, 0, 1]);
    }

    #[test]
    fn tree_soft_sign_matches_symbol_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_tree_code(&mut rng, 11);
            let n = g.n_bits();
            let h = random_llr(&mut rng, n, 2.0);
            let out = bp_decode(&h, &g, n).unwrap();
            let marg = CodebookEnumeration::new(&g)
                .unwrap()
                .symbol_map_marginals(&h)
                .unwrap();
            for i in 0..n {
                let map_bit = u8::from(marg.per_bit[i][1] > marg.per_bit[i][0]);
                // Skip near-ties; sign comparison is meaningless there.
                if (marg.per_bit[i][1] - 0.5).abs() > 1e-6 {
                    assert_eq!(out.decision[i], map_bit, "bit {i}");
                }
            }
        }
    }

    #[test]
    fn tree_beliefs_match_exact_marginals() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let g = random_tree_code(&mut rng, 12);
            let n = g.n_bits();
            let h = random_llr(&mut rng, n, 2.5);
            let out = bp_decode(&h, &g, n).unwrap();
            assert_eq!(out.messages.clamp_events, 0);
            let beliefs = beliefs_from_messages(&h, &out.messages, &g).unwrap();
            let marg = CodebookEnumeration::new(&g)
                .unwrap()
                .symbol_map_marginals(&h)
                .unwrap();
            for i in 0..n {
                assert!(
                    (beliefs.bit_beliefs[i][1] - marg.per_bit[i][1]).abs() < 1e-9,
                    "bit {i}: bp {} oracle {}",
                    beliefs.bit_beliefs[i][1],
                    marg.per_bit[i][1]
                );
            }
        }
    }

    #[test]
    fn tree_bethe_equals_minus_log_partition() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let g = random_tree_code(&mut rng, 12);
            let n = g.n_bits();
            let h = random_llr(&mut rng, n, 2.0);
            let out = bp_decode(&h, &g, n + 2).unwrap();
            let beliefs = beliefs_from_messages(&h, &out.messages, &g).unwrap();
            let fe = bethe_free_energy(&h, &beliefs, &g).unwrap();
            let log_z = CodebookEnumeration::new(&g)
                .unwrap()
                .symbol_map_marginals(&h)
                .unwrap()
                .log_partition;
            assert!(
                (fe.free_energy + log_z).abs() < 1e-6,
                "F {} vs -lnZ {}",
                fe.free_energy,
                -log_z
            );
        }
    }

    #[test]
    fn bethe_of_concentrated_zero_beliefs_vanishes() {
        let g = single_check();
        let beliefs = BeliefState {
            bit_beliefs: vec![[1.0, 0.0]; 3],
            check_beliefs: vec![vec![1.0, 0.0, 0.0, 0.0]],
        };
        let h = llr(&[0.3, -0.7, 1.1]);
        let fe = bethe_free_energy(&h, &beliefs, &g).unwrap();
        assert_eq!(fe.energy, 0.0);
        assert_eq!(fe.entropy, 0.0);
        assert_eq!(fe.free_energy, 0.0);
    }

    #[test]
    fn bethe_of_uniform_check_belief_by_hand() {
        // Uniform over the 4 local codewords of one degree-3 check, with
        // b_i(1) = 1/2 on every bit: the check sum gives ln 4, the bit
        // correction vanishes because every q_i = 1.
        let g = single_check();
        let h = llr(&[0.4, 0.6, -0.2]);
        let beliefs = BeliefState {
            bit_beliefs: vec![[0.5, 0.5]; 3],
            check_beliefs: vec![vec![0.25; 4]],
        };
        let fe = bethe_free_energy(&h, &beliefs, &g).unwrap();
        assert!((fe.entropy - 4.0f64.ln()).abs() < 1e-12);
        assert!((fe.energy - 0.5 * (0.4 + 0.6 - 0.2)).abs() < 1e-12);
        assert!((fe.free_energy - (fe.energy - fe.entropy)).abs() < 1e-15);
    }

    #[test]
    fn bethe_rejects_denormalized_beliefs() {
        let g = single_check();
        let h = llr(&[0.0; 3]);
        let beliefs = BeliefState {
            bit_beliefs: vec![[0.7, 0.7], [0.5, 0.5], [0.5, 0.5]],
            check_beliefs: vec![vec![0.25; 4]],
        };
        assert!(bethe_free_energy(&h, &beliefs, &g).is_err());
    }

    #[test]
    fn zero_messages_give_prior_beliefs() {
        let g = single_check();
        let m = MessageState::zeroed(&g);
        let flat = beliefs_from_messages(&llr(&[0.0; 3]), &m, &g).unwrap();
        for b in &flat.bit_beliefs {
            assert!((b[1] - 0.5).abs() < 1e-15);
        }
        for p in &flat.check_beliefs[0] {
            assert!((p - 0.25).abs() < 1e-15);
        }
        let confident = beliefs_from_messages(&llr(&[40.0, 40.0, 40.0]), &m, &g).unwrap();
        for b in &confident.bit_beliefs {
            assert!(b[1] < 1e-15);
        }
    }

    #[test]
    fn fixed_point_beliefs_satisfy_compatibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..10 {
            let g = random_tree_code(&mut rng, 12);
            let n = g.n_bits();
            let h = random_llr(&mut rng, n, 2.0);
            let out = bp_decode(&h, &g, n + 3).unwrap();
            let beliefs = beliefs_from_messages(&h, &out.messages, &g).unwrap();
            for a in 0..g.n_checks() {
                let masks = g.enumerate_local_codewords(a).unwrap();
                for (j, &i) in g.check_neighbors(a).iter().enumerate() {
                    let marginal: f64 = masks
                        .iter()
                        .zip(&beliefs.check_beliefs[a])
                        .filter(|&(mask, _)| mask & (1 << j) != 0)
                        .map(|(_, &p)| p)
                        .sum();
                    assert!(
                        (marginal - beliefs.bit_beliefs[i][1]).abs() < 1e-6,
                        "check {a} bit {i}: {} vs {}",
                        marginal,
                        beliefs.bit_beliefs[i][1]
                    );
                }
            }
        }
    }

    #[test]
    fn negating_fields_negates_messages_and_flips_decisions() {
        // Plain negation is the all-ones gauge twist, so it needs the
        // all-ones word in the code: use even-degree (pairing) checks.
        let g = TannerGraph::from_check_neighbors(
            6,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let h = random_llr(&mut rng, 6, 1.5);
        let neg = LlrVector(h.values().iter().map(|v| -v).collect());
        let a = bp_decode(&h, &g, 6).unwrap();
        let b = bp_decode(&neg, &g, 6).unwrap();
        for i in 0..6 {
            assert!((a.soft[i] + b.soft[i]).abs() < 1e-12);
            assert_eq!(a.decision[i], 1 - b.decision[i]);
        }
        for x in 0..g.n_checks() {
            for j in 0..g.check_neighbors(x).len() {
                assert!(
                    (a.messages.check_to_bit[x][j] + b.messages.check_to_bit[x][j]).abs() < 1e-12
                );
            }
        }
    }

    #[test]
    fn codeword_gauge_twist_maps_messages_and_decisions() {
        // General form of channel symmetry: twisting h by any codeword c,
        // h_i -> (1-2c_i) h_i, twists every message by the same sign and
        // shifts the decision by c.
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let g = random_tree_code(&mut rng, 11);
            let n = g.n_bits();
            let words = CodebookEnumeration::new(&g).unwrap().codewords();
            let c = &words[rng.gen_range(0..words.len())];
            let h = random_llr(&mut rng, n, 1.5);
            let twisted = LlrVector(
                h.values()
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if c[i] == 1 { -v } else { v })
                    .collect(),
            );
            let a = bp_decode(&h, &g, n).unwrap();
            let b = bp_decode(&twisted, &g, n).unwrap();
            for i in 0..n {
                let s = if c[i] == 1 { -1.0 } else { 1.0 };
                assert!((s * a.soft[i] - b.soft[i]).abs() < 1e-12);
                if a.soft[i].abs() > 1e-9 {
                    assert_eq!(a.decision[i] ^ c[i], b.decision[i]);
                }
            }
        }
    }

    #[test]
    fn clamp_counter_tracks_saturation() {
        let g = single_check();
        let calm = bp_decode(&llr(&[3.0, -2.0, 1.0]), &g, 8).unwrap();
        assert_eq!(calm.messages.clamp_events, 0);
        let hot = bp_decode(&llr(&[60.0, 60.0, 60.0]), &g, 1).unwrap();
        assert!(hot.messages.clamp_events > 0);
        assert!(hot
            .messages
            .check_to_bit
            .iter()
            .flatten()
            .all(|m| m.abs() <= MESSAGE_CLAMP));
    }

    #[test]
    fn early_stop_returns_codeword_when_possible() {
        let g = single_check();
        let h = llr(&[5.0, 5.0, 5.0]);
        let out = bp_decode_opts(&h, &g, 50, true).unwrap();
        assert!(g.is_codeword(&out.decision).unwrap());
        assert_eq!(out.messages.iteration, 1);
    }

    #[test]
    fn rejects_zero_iterations_and_bad_length() {
        let g = single_check();
        assert!(bp_decode(&llr(&[1.0, 1.0, 1.0]), &g, 0).is_err());
        assert!(bp_decode(&llr(&[1.0, 1.0]), &g, 1).is_err());
    }
}
