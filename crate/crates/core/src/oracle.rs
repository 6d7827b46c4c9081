//! Exhaustive maximum-likelihood reference decoders.
//!
//! For small codes the full codebook is enumerable from a generator basis
//! obtained by GF(2) elimination of the parity-check matrix. On top of the
//! enumeration sit the two exact decoders every approximate decoder is tested
//! against: block-MAP (minimum channel cost over codewords) and symbol-MAP
//! (per-bit posterior marginals of `P(σ) ∝ exp(-Σ h_i σ_i)` restricted to
//! codewords).

use crate::channel::LlrVector;
use crate::error::{Error, Result};
use crate::graph::{BinaryWord, TannerGraph};

/// Enumeration guard: at most 2^24 codewords.
const MAX_DIMENSION: usize = 24;

fn row_blocks(n_bits: usize) -> usize {
    n_bits.div_ceil(64)
}

fn get_bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

fn set_bit(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Reduced row echelon form over GF(2). Returns (reduced rows, pivot columns).
fn rref(g: &TannerGraph) -> (Vec<Vec<u64>>, Vec<usize>) {
    let n = g.n_bits();
    let blocks = row_blocks(n);
    let mut rows: Vec<Vec<u64>> = (0..g.n_checks())
        .map(|a| {
            let mut r = vec![0u64; blocks];
            for &i in g.check_neighbors(a) {
                set_bit(&mut r, i);
            }
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| get_bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && get_bit(row, col) {
                xor_into(row, &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Rank of the parity-check matrix over GF(2).
pub fn gf2_rank(g: &TannerGraph) -> usize {
    rref(g).1.len()
}

/// Full codebook of a small code, stored as a generator basis and walked in
/// Gray-code order so that consecutive words differ by one basis vector.
pub struct CodebookEnumeration {
    n_bits: usize,
    basis: Vec<Vec<u64>>,
}

impl CodebookEnumeration {
    /// Fails with a guard error when the code dimension `n - rank(H)`
    /// exceeds 24.
    pub fn new(g: &TannerGraph) -> Result<Self> {
        let n = g.n_bits();
        let (rows, pivots) = rref(g);
        let k = n - pivots.len();
        if k > MAX_DIMENSION {
            return Err(Error::TooLarge {
                what: "code dimension",
                size: k,
                limit: MAX_DIMENSION,
            });
        }
        let is_pivot = {
            let mut v = vec![false; n];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let blocks = row_blocks(n);
        let mut basis = Vec::with_capacity(k);
        for f in (0..n).filter(|&j| !is_pivot[j]) {
            let mut word = vec![0u64; blocks];
            set_bit(&mut word, f);
            for (r, &p) in pivots.iter().enumerate() {
                if get_bit(&rows[r], f) {
                    set_bit(&mut word, p);
                }
            }
            basis.push(word);
        }
        Ok(CodebookEnumeration { n_bits: n, basis })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn n_codewords(&self) -> u64 {
        1u64 << self.basis.len()
    }

    /// Visits every codeword once. The closure receives the word as bit
    /// blocks; the buffer is reused between calls.
    fn for_each_word<F: FnMut(&[u64])>(&self, mut f: F) {
        let mut word = vec![0u64; row_blocks(self.n_bits)];
        f(&word);
        for m in 1..self.n_codewords() {
            let flip = m.trailing_zeros() as usize;
            xor_into(&mut word, &self.basis[flip]);
            f(&word);
        }
    }

    /// Materializes the codebook. Intended for small dimensions.
    pub fn codewords(&self) -> Vec<BinaryWord> {
        let mut out = Vec::with_capacity(self.n_codewords() as usize);
        self.for_each_word(|blocks| out.push(blocks_to_word(blocks, self.n_bits)));
        out
    }

    fn check_llr(&self, h: &LlrVector) -> Result<()> {
        if h.len() != self.n_bits {
            return Err(Error::Dimension {
                what: "llr vector",
                expected: self.n_bits,
                found: h.len(),
            });
        }
        Ok(())
    }

    /// Exact block-MAP decoding: the codeword minimizing `Σ h_i σ_i`.
    /// Cost ties break toward the lexicographically smallest word.
    pub fn block_map(&self, h: &LlrVector) -> Result<(BinaryWord, f64)> {
        self.check_llr(h)?;
        let hv = h.values();
        let mut best_cost = f64::INFINITY;
        let mut best: Vec<u64> = vec![];
        self.for_each_word(|blocks| {
            let cost = word_cost(blocks, hv);
            if cost < best_cost || (cost == best_cost && lex_less(blocks, &best)) {
                best_cost = cost;
                best = blocks.to_vec();
            }
        });
        Ok((blocks_to_word(&best, self.n_bits), best_cost))
    }

    /// Exact symbol-MAP marginals and the log partition function of the
    /// posterior restricted to codewords.
    pub fn symbol_map_marginals(&self, h: &LlrVector) -> Result<Marginals> {
        self.check_llr(h)?;
        let hv = h.values();
        // Streaming log-sum-exp of -cost over all codewords.
        let mut max_neg = f64::NEG_INFINITY;
        let mut scaled_sum = 0.0;
        self.for_each_word(|blocks| {
            let v = -word_cost(blocks, hv);
            if v > max_neg {
                scaled_sum = scaled_sum * (max_neg - v).exp() + 1.0;
                max_neg = v;
            } else {
                scaled_sum += (v - max_neg).exp();
            }
        });
        let log_z = max_neg + scaled_sum.ln();
        let mut p = vec![[0.0f64; 2]; self.n_bits];
        self.for_each_word(|blocks| {
            let prob = (-word_cost(blocks, hv) - log_z).exp();
            for (i, slot) in p.iter_mut().enumerate() {
                slot[usize::from(get_bit(blocks, i))] += prob;
            }
        });
        Ok(Marginals {
            per_bit: p,
            log_partition: log_z,
        })
    }

    /// `ln Σ_codewords exp(-Σ h_i σ_i)`.
    pub fn log_partition(&self, h: &LlrVector) -> Result<f64> {
        Ok(self.symbol_map_marginals(h)?.log_partition)
    }
}

/// Per-bit posterior table: `per_bit[i][σ]` is the probability that bit `i`
/// equals `σ` under the exact posterior.
#[derive(Clone, Debug)]
pub struct Marginals {
    pub per_bit: Vec<[f64; 2]>,
    pub log_partition: f64,
}

fn word_cost(blocks: &[u64], h: &[f64]) -> f64 {
    let mut cost = 0.0;
    for (b, chunk) in blocks.iter().enumerate() {
        let mut m = *chunk;
        while m != 0 {
            let j = b * 64 + m.trailing_zeros() as usize;
            cost += h[j];
            m &= m - 1;
        }
    }
    cost
}

fn lex_less(a: &[u64], b: &[u64]) -> bool {
    // Lexicographic comparison of bit strings read from index 0 upward: the
    // first differing bit decides; the word with 0 there is smaller.
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            let j = diff.trailing_zeros();
            return x >> j & 1 == 0;
        }
    }
    false
}

fn blocks_to_word(blocks: &[u64], n: usize) -> BinaryWord {
    BinaryWord::new((0..n).map(|j| u8::from(get_bit(blocks, j))).collect())
        .expect("bits by construction")
}
