//! Tanner graph representation and sparse parity-check file I/O.
//!
//! A binary linear code is stored as the bipartite adjacency between bit
//! (variable) nodes and check nodes. Adjacency lists preserve the order in
//! which neighbors appear in the source file; the degree-reduction transform
//! relies on that order being stable.
//!
//! The file format is the widespread "alist" layout: a header with the bit
//! and check counts and maximum degrees, per-node degree lists, then one
//! adjacency line per bit and per check with 1-based indices. Zero entries
//! are padding and are ignored.

use crate::error::{Error, Result};
use std::fmt;
use std::path::Path;

/// Hard limit on check degree for local-codeword enumeration (2^(q-1) patterns).
const LOCAL_ENUM_MAX_DEGREE: usize = 24;

/// A word over GF(2). Entries are guaranteed to be 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Param(format!("binary word entry {b} is not a bit")));
        }
        Ok(BinaryWord(bits))
    }

    pub fn zero(n: usize) -> Self {
        BinaryWord(vec![0; n])
    }

    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        let mut bits = vec![0u8; n];
        for &i in support {
            if i >= n {
                return Err(Error::Param(format!(
                    "support index {i} out of range 0..{n}"
                )));
            }
            bits[i] = 1;
        }
        Ok(BinaryWord(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

impl std::ops::Index<usize> for BinaryWord {
    type Output = u8;
    fn index(&self, i: usize) -> &u8 {
        &self.0[i]
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Bipartite bit/check adjacency of a binary linear code.
///
/// `bit_neighbors[i]` lists the checks containing bit `i`; `check_neighbors[a]`
/// lists the bits of check `a`. The two views are transposes of each other and
/// this is enforced on every construction path. Punctured bits (introduced by
/// [`TannerGraph::dendro_transform`]) carry no channel observation and are
/// excluded from noise, likelihood, and distance computations.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n_bits: usize,
    n_checks: usize,
    bit_neighbors: Vec<Vec<usize>>,
    check_neighbors: Vec<Vec<usize>>,
    punctured: Vec<bool>,
}

impl TannerGraph {
    /// Builds a graph from per-check adjacency. Bit adjacency is derived by
    /// scanning checks in index order, so it is deterministic.
    pub fn from_check_neighbors(n_bits: usize, check_neighbors: Vec<Vec<usize>>) -> Result<Self> {
        let n_checks = check_neighbors.len();
        let mut bit_neighbors = vec![Vec::new(); n_bits];
        for (a, nbs) in check_neighbors.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for &i in nbs {
                if i >= n_bits {
                    return Err(Error::Param(format!(
                        "check {a} references bit {i}, but the graph has {n_bits} bits"
                    )));
                }
                if !seen.insert(i) {
                    return Err(Error::Param(format!("check {a} lists bit {i} twice")));
                }
                bit_neighbors[i].push(a);
            }
        }
        Ok(TannerGraph {
            n_bits,
            n_checks,
            bit_neighbors,
            check_neighbors,
            punctured: vec![false; n_bits],
        })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    pub fn bit_neighbors(&self, i: usize) -> &[usize] {
        &self.bit_neighbors[i]
    }

    pub fn check_neighbors(&self, a: usize) -> &[usize] {
        &self.check_neighbors[a]
    }

    pub fn bit_degree(&self, i: usize) -> usize {
        self.bit_neighbors[i].len()
    }

    pub fn check_degree(&self, a: usize) -> usize {
        self.check_neighbors[a].len()
    }

    pub fn n_edges(&self) -> usize {
        self.check_neighbors.iter().map(Vec::len).sum()
    }

    pub fn is_punctured(&self, i: usize) -> bool {
        self.punctured[i]
    }

    pub fn n_punctured(&self) -> usize {
        self.punctured.iter().filter(|&&p| p).count()
    }

    /// Bits that are actually transmitted over the channel.
    pub fn transmitted_bits(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_bits).filter(move |&i| !self.punctured[i])
    }

    pub fn n_transmitted(&self) -> usize {
        self.n_bits - self.n_punctured()
    }

    /// Parity of each check under `word`: entry `a` is `Σ_{i∈N(a)} word[i] mod 2`.
    pub fn syndrome(&self, word: &BinaryWord) -> Result<Vec<u8>> {
        if word.len() != self.n_bits {
            return Err(Error::Dimension {
                what: "syndrome word",
                expected: self.n_bits,
                found: word.len(),
            });
        }
        Ok(self
            .check_neighbors
            .iter()
            .map(|nbs| nbs.iter().fold(0u8, |p, &i| p ^ word[i]))
            .collect())
    }

    pub fn is_codeword(&self, word: &BinaryWord) -> Result<bool> {
        Ok(self.syndrome(word)?.iter().all(|&s| s == 0))
    }

    /// All even-weight patterns on one check's neighborhood, as bitmasks over
    /// neighbor *positions* (bit `k` of a mask refers to `check_neighbors(a)[k]`).
    /// Masks are emitted in increasing numeric order; there are 2^(q-1) of them.
    pub fn enumerate_local_codewords(&self, a: usize) -> Result<Vec<u32>> {
        let q = self.check_degree(a);
        if q > LOCAL_ENUM_MAX_DEGREE {
            return Err(Error::TooLarge {
                what: "check neighborhood",
                size: q,
                limit: LOCAL_ENUM_MAX_DEGREE,
            });
        }
        let patterns = (0u32..1 << q).filter(|m| m.count_ones() % 2 == 0).collect();
        Ok(patterns)
    }

    /// Replaces every check of degree q > 3 by a chain of q-2 degree-3 checks
    /// threaded through q-3 new punctured bits of degree 2, in the stored
    /// neighbor order. Checks of degree at most 3 are copied unchanged, and
    /// auxiliary bits are appended after the original bits. The set of
    /// codewords projected to the original bits is preserved.
    pub fn dendro_transform(&self) -> Result<TannerGraph> {
        if self.n_punctured() > 0 {
            return Err(Error::Param(
                "degree reduction expects a graph without punctured bits".into(),
            ));
        }
        let mut next_aux = self.n_bits;
        let mut checks = Vec::new();
        for nbs in &self.check_neighbors {
            let q = nbs.len();
            if q <= 3 {
                checks.push(nbs.clone());
                continue;
            }
            // First link: two leading bits plus the first auxiliary.
            checks.push(vec![nbs[0], nbs[1], next_aux]);
            // Middle links: previous auxiliary, one bit, next auxiliary.
            for k in 2..q - 2 {
                checks.push(vec![next_aux, nbs[k], next_aux + 1]);
                next_aux += 1;
            }
            // Last link closes the chain on the two trailing bits.
            checks.push(vec![next_aux, nbs[q - 2], nbs[q - 1]]);
            next_aux += 1;
        }
        let mut g = TannerGraph::from_check_neighbors(next_aux, checks)?;
        for i in self.n_bits..next_aux {
            g.punctured[i] = true;
        }
        Ok(g)
    }

    /// Parses the alist text format.
    pub fn parse_alist(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let mut next_numbers = |expect: &str| -> Result<(usize, Vec<usize>)> {
            for (ln, raw) in lines.by_ref() {
                let line_no = ln + 1;
                if raw.trim().is_empty() {
                    continue;
                }
                let mut out = Vec::new();
                for tok in raw.split_whitespace() {
                    let v: usize = tok.parse().map_err(|_| Error::Alist {
                        line: line_no,
                        reason: format!("expected {expect}, found token {tok:?}"),
                    })?;
                    out.push(v);
                }
                return Ok((line_no, out));
            }
            Err(Error::Alist {
                line: 0,
                reason: format!("file ended while reading {expect}"),
            })
        };

        let (ln, header) = next_numbers("bit and check counts")?;
        if header.len() != 2 {
            return Err(Error::Alist {
                line: ln,
                reason: format!("header needs exactly 2 numbers, found {}", header.len()),
            });
        }
        let (n_bits, n_checks) = (header[0], header[1]);
        let (ln, maxdeg) = next_numbers("maximum degrees")?;
        if maxdeg.len() != 2 {
            return Err(Error::Alist {
                line: ln,
                reason: format!(
                    "degree header needs exactly 2 numbers, found {}",
                    maxdeg.len()
                ),
            });
        }
        let (ln, bit_degs) = next_numbers("bit degree list")?;
        if bit_degs.len() != n_bits {
            return Err(Error::Alist {
                line: ln,
                reason: format!("expected {n_bits} bit degrees, found {}", bit_degs.len()),
            });
        }
        let (ln, check_degs) = next_numbers("check degree list")?;
        if check_degs.len() != n_checks {
            return Err(Error::Alist {
                line: ln,
                reason: format!(
                    "expected {n_checks} check degrees, found {}",
                    check_degs.len()
                ),
            });
        }

        let mut read_adjacency = |count: usize,
                                  degs: &[usize],
                                  max_index: usize,
                                  node: &str,
                                  nbr: &str|
         -> Result<Vec<Vec<usize>>> {
            let mut adj = Vec::with_capacity(count);
            for (node_idx, &deg) in degs.iter().enumerate().take(count) {
                let (line_no, vals) = next_numbers("adjacency row")?;
                let nonzero: Vec<usize> = vals.iter().copied().filter(|&v| v != 0).collect();
                if nonzero.len() != deg {
                    return Err(Error::Alist {
                        line: line_no,
                        reason: format!(
                            "{node} {} declares degree {deg} but lists {} neighbors",
                            node_idx + 1,
                            nonzero.len()
                        ),
                    });
                }
                let mut row = Vec::with_capacity(deg);
                for v in nonzero {
                    if v > max_index {
                        return Err(Error::Alist {
                            line: line_no,
                            reason: format!("{nbr} index {v} out of range 1..={max_index}"),
                        });
                    }
                    row.push(v - 1);
                }
                adj.push(row);
            }
            Ok(adj)
        };

        let bit_adj = read_adjacency(n_bits, &bit_degs, n_checks, "bit", "check")?;
        let check_adj = read_adjacency(n_checks, &check_degs, n_bits, "check", "bit")?;

        let g = TannerGraph::from_check_neighbors(n_bits, check_adj)?;
        // The two adjacency sections must be transposes of each other.
        for i in 0..n_bits {
            let mut from_file = bit_adj[i].clone();
            let mut derived = g.bit_neighbors[i].clone();
            from_file.sort_unstable();
            derived.sort_unstable();
            if from_file != derived {
                return Err(Error::Alist {
                    line: 0,
                    reason: format!(
                        "bit {} adjacency {:?} does not match the transpose of the check section {:?}",
                        i + 1,
                        from_file,
                        derived
                    ),
                });
            }
        }
        Ok(g)
    }

    pub fn read_alist<P: AsRef<Path>>(path: P) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_alist(&text)
    }

    /// Serializes to alist text with zero padding, matching the common layout.
    pub fn to_alist_string(&self) -> String {
        let max_bit = self.bit_neighbors.iter().map(Vec::len).max().unwrap_or(0);
        let max_check = self.check_neighbors.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.n_bits, self.n_checks));
        out.push_str(&format!("{max_bit} {max_check}\n"));
        let degs = |adj: &[Vec<usize>]| {
            adj.iter()
                .map(|r| r.len().to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&degs(&self.bit_neighbors));
        out.push('\n');
        out.push_str(&degs(&self.check_neighbors));
        out.push('\n');
        let rows = |adj: &[Vec<usize>], width: usize, out: &mut String| {
            for r in adj {
                let mut toks: Vec<String> = r.iter().map(|&v| (v + 1).to_string()).collect();
                toks.resize(width, "0".into());
                out.push_str(&toks.join(" "));
                out.push('\n');
            }
        };
        rows(&self.bit_neighbors, max_bit, &mut out);
        rows(&self.check_neighbors, max_check, &mut out);
        out
    }

    pub fn write_alist<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        std::fs::write(path, self.to_alist_string())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HAMMING74: &str = "7 3\n3 4\n1 1 2 1 2 2 3\n4 4 4\n\
        1 0 0\n2 0 0\n1 2 0\n3 0 0\n1 3 0\n2 3 0\n1 2 3\n\
        1 3 5 7\n2 3 6 7\n4 5 6 7\n";

    fn hamming() -> TannerGraph {
        TannerGraph::parse_alist(HAMMING74).unwrap()
    }

    #[test]
    fn parses_hamming_alist() {
        let g = hamming();
        assert_eq!(g.n_bits(), 7);
        assert_eq!(g.n_checks(), 3);
        assert_eq!(g.check_neighbors(0), &[0, 2, 4, 6]);
        assert_eq!(g.check_neighbors(2), &[3, 4, 5, 6]);
        assert_eq!(g.bit_neighbors(6), &[0, 1, 2]);
        assert_eq!(g.n_edges(), 12);
        assert_eq!(g.n_punctured(), 0);
    }

    #[test]
    fn rejects_zero_index() {
        // Bit 1 lists check index 4, but there are only 3 checks.
        let bad = HAMMING74.replacen("1 0 0", "4 0 0", 1);
        let err = TannerGraph::parse_alist(&bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("out of range"), "{msg}");
    }

    #[test]
    fn rejects_degree_mismatch() {
        let bad = HAMMING74.replacen("1 0 0\n2 0 0", "1 2 0\n2 0 0", 1);
        let err = TannerGraph::parse_alist(&bad).unwrap_err();
        assert!(err.to_string().contains("degree"), "{err}");
    }

    #[test]
    fn rejects_transpose_mismatch() {
        // Swap bit 1's membership from check 1 to check 2 without touching
        // the check section.
        let bad = HAMMING74.replacen("1 0 0\n2 0 0", "2 0 0\n2 0 0", 1);
        let err = TannerGraph::parse_alist(&bad).unwrap_err();
        assert!(err.to_string().contains("transpose"), "{err}");
    }

    #[test]
    fn accepts_unpadded_rows() {
        let unpadded = HAMMING74.replace(" 0 0\n", "\n").replace(" 0\n", "\n");
        let g = TannerGraph::parse_alist(&unpadded).unwrap();
        assert_eq!(g.check_neighbors(1), hamming().check_neighbors(1));
    }

    #[test]
    fn alist_round_trip() {
        let g = hamming();
        let h = TannerGraph::parse_alist(&g.to_alist_string()).unwrap();
        assert_eq!(g.n_bits(), h.n_bits());
        for a in 0..g.n_checks() {
            assert_eq!(g.check_neighbors(a), h.check_neighbors(a));
        }
        for i in 0..g.n_bits() {
            assert_eq!(g.bit_neighbors(i), h.bit_neighbors(i));
        }
    }

    #[test]
    fn syndrome_of_zero_word_is_zero() {
        let g = hamming();
        let s = g.syndrome(&BinaryWord::zero(7)).unwrap();
        assert_eq!(s, vec![0, 0, 0]);
        assert!(g.is_codeword(&BinaryWord::zero(7)).unwrap());
    }

    #[test]
    fn syndrome_flags_partial_check_support() {
        let g = hamming();
        // Ones on the first check's support minus its last bit: odd overlap.
        let w = BinaryWord::from_support(7, &[0, 2, 4]).unwrap();
        let s = g.syndrome(&w).unwrap();
        assert_eq!(s[0], 1);
    }

    #[test]
    fn syndrome_is_linear() {
        use rand::{Rng, SeedableRng};
        let g = hamming();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let u = BinaryWord::new((0..7).map(|_| rng.gen_range(0..2u8)).collect()).unwrap();
            let v = BinaryWord::new((0..7).map(|_| rng.gen_range(0..2u8)).collect()).unwrap();
            let sum = BinaryWord::new((0..7).map(|i| u[i] ^ v[i]).collect()).unwrap();
            let su = g.syndrome(&u).unwrap();
            let sv = g.syndrome(&v).unwrap();
            let ss = g.syndrome(&sum).unwrap();
            for a in 0..3 {
                assert_eq!(ss[a], su[a] ^ sv[a]);
            }
        }
    }

    #[test]
    fn syndrome_rejects_wrong_length() {
        let g = hamming();
        assert!(g.syndrome(&BinaryWord::zero(6)).is_err());
    }

    #[test]
    fn local_codewords_of_degree_three_check() {
        let g = TannerGraph::from_check_neighbors(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(
            g.enumerate_local_codewords(0).unwrap(),
            vec![0b000, 0b011, 0b101, 0b110]
        );
    }

    #[test]
    fn local_codewords_of_degree_one_check() {
        let g = TannerGraph::from_check_neighbors(1, vec![vec![0]]).unwrap();
        assert_eq!(g.enumerate_local_codewords(0).unwrap(), vec![0]);
    }

    #[test]
    fn local_codeword_guard() {
        let g = TannerGraph::from_check_neighbors(30, vec![(0..30).collect()]).unwrap();
        assert!(matches!(
            g.enumerate_local_codewords(0),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn rejects_repeated_neighbor() {
        assert!(TannerGraph::from_check_neighbors(3, vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn binary_word_rejects_non_bits() {
        assert!(BinaryWord::new(vec![0, 1, 2]).is_err());
    }

    #[test]
    fn dendro_splits_degree_five_check() {
        let g = TannerGraph::from_check_neighbors(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let d = g.dendro_transform().unwrap();
        assert_eq!(d.n_bits(), 7);
        assert_eq!(d.n_checks(), 3);
        assert_eq!(d.check_neighbors(0), &[0, 1, 5]);
        assert_eq!(d.check_neighbors(1), &[5, 2, 6]);
        assert_eq!(d.check_neighbors(2), &[6, 3, 4]);
        assert!(d.is_punctured(5) && d.is_punctured(6));
        assert_eq!(d.n_punctured(), 2);
        assert_eq!(d.bit_degree(5), 2);
        assert_eq!(d.bit_degree(6), 2);
        assert_eq!(d.n_transmitted(), 5);
    }

    #[test]
    fn dendro_splits_degree_four_check() {
        let g = TannerGraph::from_check_neighbors(4, vec![vec![3, 1, 0, 2]]).unwrap();
        let d = g.dendro_transform().unwrap();
        assert_eq!(d.n_checks(), 2);
        // Threading follows the stored neighbor order, not sorted order.
        assert_eq!(d.check_neighbors(0), &[3, 1, 4]);
        assert_eq!(d.check_neighbors(1), &[4, 0, 2]);
    }

    #[test]
    fn dendro_keeps_low_degree_checks() {
        let g = TannerGraph::from_check_neighbors(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        let d = g.dendro_transform().unwrap();
        assert_eq!(d.n_bits(), 4);
        assert_eq!(d.n_checks(), 2);
        assert_eq!(d.check_neighbors(0), g.check_neighbors(0));
        assert_eq!(d.check_neighbors(1), g.check_neighbors(1));
    }

    #[test]
    fn dendro_rejects_punctured_input() {
        let g = TannerGraph::from_check_neighbors(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let d = g.dendro_transform().unwrap();
        assert!(d.dendro_transform().is_err());
    }

    #[test]
    fn dendro_preserves_projected_parity() {
        // Any assignment of the original bits with even weight extends to the
        // chain; odd weight cannot. Degree 5 check, brute force over 2^5.
        let g = TannerGraph::from_check_neighbors(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let d = g.dendro_transform().unwrap();
        for m in 0u32..32 {
            let orig: Vec<u8> = (0..5).map(|k| ((m >> k) & 1) as u8).collect();
            // The chain forces a1 = i1^i2, a2 = a1^i3; the last check then
            // holds exactly when the total parity is even.
            let a1 = orig[0] ^ orig[1];
            let a2 = a1 ^ orig[2];
            let mut full = orig.clone();
            full.push(a1);
            full.push(a2);
            let w = BinaryWord::new(full).unwrap();
            let extended_ok = d.is_codeword(&w).unwrap();
            let parity_even = m.count_ones() % 2 == 0;
            assert_eq!(extended_ok, parity_even, "pattern {m:05b}");
        }
    }
}
