//! Shared helpers for integration tests: fixture loading and random code
//! generation (biregular, cycle-free, and bounded-degree families).
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::HashSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;

use ldpc_floor::graph::TannerGraph;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> TannerGraph {
    TannerGraph::read_alist(fixture_path(name)).expect("fixture parses")
}

/// Random (3,6)-biregular code: `n` bits of degree 3, `n/2` checks of
/// degree 6, built by shuffling bit-side stubs until no check sees a
/// repeated bit.
pub fn random_biregular_3_6<R: Rng>(n: usize, rng: &mut R) -> TannerGraph {
    assert!(n.is_multiple_of(2), "(3,6) codes need an even bit count");
    let m = n / 2;
    'resample: loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|i| [i, i, i]).collect();
        stubs.shuffle(rng);
        let mut checks: Vec<Vec<usize>> = stubs.chunks(6).map(<[usize]>::to_vec).collect();
        debug_assert_eq!(checks.len(), m);
        for check in &mut checks {
            let unique: HashSet<usize> = check.iter().copied().collect();
            if unique.len() != check.len() {
                continue 'resample;
            }
            check.sort_unstable();
        }
        return TannerGraph::from_check_neighbors(n, checks).expect("valid biregular graph");
    }
}

/// Random cycle-free code grown bit by bit: each new bit either hangs off
/// a fresh degree-2 check attached to an existing bit, or extends an
/// existing check. The bias keeps the dimension small enough for exact
/// enumeration.
pub fn random_tree_code<R: Rng>(n_bits: usize, rng: &mut R) -> TannerGraph {
    assert!(n_bits >= 2);
    let mut checks: Vec<Vec<usize>> = Vec::new();
    for bit in 1..n_bits {
        let extend_existing = !checks.is_empty() && rng.gen_bool(0.35);
        if extend_existing {
            let a = rng.gen_range(0..checks.len());
            checks[a].push(bit);
        } else {
            let parent = rng.gen_range(0..bit);
            checks.push(vec![parent, bit]);
        }
    }
    TannerGraph::from_check_neighbors(n_bits, checks).expect("valid tree graph")
}

/// Random code with `m` checks of degree between 2 and `max_degree`.
/// Every bit is touched at least once so no column is empty.
pub fn random_bounded_degree_code<R: Rng>(
    n_bits: usize,
    m_checks: usize,
    max_degree: usize,
    rng: &mut R,
) -> TannerGraph {
    assert!(max_degree >= 2 && n_bits >= max_degree);
    loop {
        let mut checks: Vec<Vec<usize>> = Vec::with_capacity(m_checks);
        for _ in 0..m_checks {
            let degree = rng.gen_range(2..=max_degree.min(n_bits));
            let mut bits: Vec<usize> = (0..n_bits).collect();
            bits.shuffle(rng);
            let mut check: Vec<usize> = bits[..degree].to_vec();
            check.sort_unstable();
            checks.push(check);
        }
        let mut touched = vec![false; n_bits];
        for check in &checks {
            for &i in check {
                touched[i] = true;
            }
        }
        if touched.iter().all(|&t| t) {
            return TannerGraph::from_check_neighbors(n_bits, checks).expect("valid graph");
        }
    }
}
