use bihyp::analysis::*;
use bihyp::enumeration::{enumerate_bihypergraphs, SweepSpec};
use bihyp::random::{random_bounded_incidence, random_uniform, random_with_non_adjacent_pair};
use bihyp::solver::{decide_colorable_with, SolveOptions};
use bihyp::{decide_colorable, is_proper, BiHypergraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lifted_colorings_are_proper(seed in any::<u64>()) {
        let (h, u, v) = random_with_non_adjacent_pair(&mut ChaCha8Rng::seed_from_u64(seed), 7);
        let id = identify(&h, u, v).unwrap();
        prop_assert_eq!(id.quotient.n(), h.n() - 1);
        if let Some(w) = decide_colorable(&id.quotient).witness {
            prop_assert!(is_proper(&h, &id.lift(&w).unwrap()).unwrap());
        }
    }

    #[test]
    fn satisfied_bounds_are_confirmed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(3..=5);
        let n = rng.gen_range(r..=9);
        let h = if rng.gen_bool(0.5) {
            let m = rng.gen_range(0..=30);
            random_uniform(&mut rng, n, r, m)
        } else {
            let max_incidence = rng.gen_range(0..=9);
            random_bounded_incidence(&mut rng, n, r, max_incidence, 20)
        };
        for report in all_bounds(&h, r).unwrap() {
            match report.conclusion {
                Conclusion::Colorable => prop_assert!(decide_colorable(&h).is_colorable()),
                Conclusion::ColorableWithin { colors } => {
                    let v = decide_colorable_with(&h, SolveOptions { max_colors: Some(colors) });
                    prop_assert!(v.is_colorable());
                }
                Conclusion::NoConclusion => prop_assert!(!report.satisfied),
            }
        }
        let (_, d) = handshake_min_degree(&h, r).unwrap();
        prop_assert!(d <= r * h.size() / n);
    }

    #[test]
    fn partition_witnesses_are_proper(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=9);
        let m = rng.gen_range(0..=12);
        let h = random_uniform(&mut rng, n, 3, m);
        let k = rng.gen_range(1..=n);
        let mut parts = vec![Vec::new(); k];
        for v in 0..n {
            parts[rng.gen_range(0..k)].push(v);
        }
        parts.retain(|p| !p.is_empty());
        if let Some(c) = partition_witness(&h, &parts).unwrap().coloring() {
            prop_assert!(is_proper(&h, c).unwrap());
        }
    }
}

#[test]
fn complement_pairs_cover_order_six_up_to_nine_edges() {
    let spec = SweepSpec::new(6, 3, 9);
    let mut count = 0;
    for h in enumerate_bihypergraphs(&spec).unwrap() {
        let c = complement_pair_witness(&h).unwrap().expect("a free complementary pair exists");
        assert!(is_proper(&h, &c).unwrap());
        count += 1;
    }
    assert_eq!(count, 892);
}

#[test]
fn identification_of_an_order_seven_instance() {
    // Vertices 0 and 6 share no edge.
    let h = BiHypergraph::new(
        7,
        vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5], vec![2, 4, 6], vec![5, 6, 1]],
    )
    .unwrap();
    let id = identify(&h, 0, 6).unwrap();
    assert_eq!(id.quotient.n(), 6);
    assert!(id.quotient.is_bi());
    let w = decide_colorable(&id.quotient).witness.unwrap();
    assert!(is_proper(&h, &id.lift(&w).unwrap()).unwrap());
}

#[test]
fn ladder_holds_from_seven_to_one_hundred() {
    assert!((7..=100).all(|n| reduction_applies(n, 3, 9)));
}
