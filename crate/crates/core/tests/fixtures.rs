//! Integrity checks for the bundled alist fixtures and the random code
//! generators shared by the integration suites.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ldpc_floor::graph::{BinaryWord, TannerGraph};
use ldpc_floor::oracle::gf2_rank;

fn degree_profile(g: &TannerGraph) -> (Vec<usize>, Vec<usize>) {
    let bits = (0..g.n_bits()).map(|i| g.bit_degree(i)).collect();
    let checks = (0..g.n_checks()).map(|a| g.check_degree(a)).collect();
    (bits, checks)
}

#[test]
fn tanner_fixture_is_the_155_bit_3_5_code() {
    let g = common::fixture("tanner155.alist");
    assert_eq!(g.n_bits(), 155);
    assert_eq!(g.n_checks(), 93);
    let (bits, checks) = degree_profile(&g);
    assert!(bits.iter().all(|&d| d == 3), "bit degrees are uniformly 3");
    assert!(
        checks.iter().all(|&d| d == 5),
        "check degrees are uniformly 5"
    );
    assert_eq!(gf2_rank(&g), 91, "two dependent checks leave dimension 64");
    assert_eq!(g.n_punctured(), 0);
}

#[test]
fn margulis_fixture_is_the_672_bit_3_6_code() {
    let g = common::fixture("margulis672.alist");
    assert_eq!(g.n_bits(), 672);
    assert_eq!(g.n_checks(), 336);
    let (bits, checks) = degree_profile(&g);
    assert!(bits.iter().all(|&d| d == 3));
    assert!(checks.iter().all(|&d| d == 6));
    assert_eq!(gf2_rank(&g), 336, "full-rank checks leave dimension 336");
}

#[test]
fn hamming_fixture_round_trips_through_alist_text() {
    let g = common::fixture("hamming74.alist");
    assert_eq!((g.n_bits(), g.n_checks()), (7, 3));
    let text = g.to_alist_string();
    let back = TannerGraph::parse_alist(&text).expect("serialized alist parses");
    assert_eq!(back.n_bits(), g.n_bits());
    assert_eq!(back.n_checks(), g.n_checks());
    for a in 0..g.n_checks() {
        assert_eq!(back.check_neighbors(a), g.check_neighbors(a));
    }
}

#[test]
fn tanner_degree_reduction_has_the_expected_shape() {
    let g = common::fixture("tanner155.alist");
    let gd = g.dendro_transform().expect("transform succeeds");
    // Every degree-5 check becomes a chain of 3 degree-3 checks threaded
    // through 2 punctured bits.
    assert_eq!(gd.n_bits(), 155 + 2 * 93);
    assert_eq!(gd.n_checks(), 3 * 93);
    assert_eq!(gd.n_punctured(), 2 * 93);
    assert!((0..gd.n_checks()).all(|a| gd.check_degree(a) == 3));
    assert!(
        (0..155).all(|i| !gd.is_punctured(i)),
        "original bits stay transmitted"
    );
    assert!(
        (155..gd.n_bits()).all(|i| gd.is_punctured(i)),
        "auxiliaries are punctured"
    );
}

#[test]
fn biregular_generator_produces_3_6_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for &n in &[12usize, 16, 18] {
        let g = common::random_biregular_3_6(n, &mut rng);
        assert_eq!(g.n_bits(), n);
        assert_eq!(g.n_checks(), n / 2);
        let (bits, checks) = degree_profile(&g);
        assert!(bits.iter().all(|&d| d == 3));
        assert!(checks.iter().all(|&d| d == 6));
    }
}

#[test]
fn tree_generator_produces_connected_cycle_free_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..10 {
        let n = 20 + trial;
        let g = common::random_tree_code(n, &mut rng);
        // A connected bipartite graph is a tree exactly when
        // edges = vertices - 1.
        assert_eq!(
            g.n_edges(),
            g.n_bits() + g.n_checks() - 1,
            "edge count betrays a cycle"
        );
        assert_eq!(gf2_rank(&g), g.n_checks(), "tree checks are independent");
    }
}

#[test]
fn bounded_degree_generator_respects_the_cap_and_covers_all_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..10 {
        let g = common::random_bounded_degree_code(20, 10, 8, &mut rng);
        assert_eq!(g.n_bits(), 20);
        assert_eq!(g.n_checks(), 10);
        assert!((0..g.n_checks()).all(|a| (2..=8).contains(&g.check_degree(a))));
        assert!((0..g.n_bits()).all(|i| g.bit_degree(i) >= 1));
    }
}

#[test]
fn fixture_codes_accept_the_zero_word_and_reject_random_flips() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for name in ["hamming74.alist", "tanner155.alist", "margulis672.alist"] {
        let g = common::fixture(name);
        let zero = BinaryWord::zero(g.n_bits());
        assert!(g.is_codeword(&zero).unwrap(), "{name}: zero word decodes");
        // A single flipped bit must trip at least one parity check.
        let flip = rng.gen_range(0..g.n_bits());
        let word = BinaryWord::from_support(g.n_bits(), &[flip]).unwrap();
        assert!(
            !g.is_codeword(&word).unwrap(),
            "{name}: weight-1 word slipped through"
        );
    }
}
