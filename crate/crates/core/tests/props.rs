use haarcensus::bits::Bitset;
use haarcensus::census::wilson_95;
use haarcensus::perm::Permutation;
use proptest::prelude::*;

fn arb_permutation(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(|d| {
        Just((0..d).collect::<Vec<usize>>()).prop_shuffle().prop_map(move |images| {
            Permutation::from_images(images).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn hex_encoding_round_trips(len in 1usize..200, seed in any::<u64>()) {
        let mut s = Bitset::empty(len);
        for i in 0..len {
            if haarcensus::rng::mix3(seed, i as u64, 0) & 1 == 1 {
                s.insert(i);
            }
        }
        let hex = s.to_hex();
        prop_assert_eq!(Bitset::from_hex(len, &hex).unwrap(), s);
    }

    #[test]
    fn permutation_compose_inverse_is_identity(p in arb_permutation(12)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn cycle_count_invariant_under_conjugation(
        p in arb_permutation(10),
        q in arb_permutation(10),
    ) {
        if p.degree() == q.degree() {
            let conj = q.inverse().compose(&p).compose(&q);
            prop_assert_eq!(conj.cycle_count(), p.cycle_count());
        }
    }

    #[test]
    fn wilson_interval_always_contains_the_sample_proportion(
        n in 1u64..100_000,
        frac in 0.0f64..=1.0,
    ) {
        let hits = (frac * n as f64).floor() as u64;
        let hits = hits.min(n);
        let (lo, hi) = wilson_95(hits, n);
        let p = hits as f64 / n as f64;
        prop_assert!(lo <= p && p <= hi);
        prop_assert!((0.0..=1.0).contains(&lo));
        prop_assert!((0.0..=1.0).contains(&hi));
    }
}
