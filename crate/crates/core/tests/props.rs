//! Property tests for the codec, the sampler coupling, and closure
//! monotonicity.

use proptest::prelude::*;

use hypersat::bootstrap::closure;
use hypersat::combinatorics::binomial;
use hypersat::hypergraph::{rank_edge, unrank_edge, EdgeId, Hypergraph};
use hypersat::randmodel::sample;

proptest! {
    #[test]
    fn rank_unrank_roundtrip(n in 4usize..20, r in 2usize..5, raw in any::<u64>()) {
        prop_assume!(r < n);
        let total = binomial(n as u64, r as u64);
        let rank = raw % total;
        let e = unrank_edge(n, r, EdgeId(rank)).unwrap();
        prop_assert_eq!(rank_edge(n, r, &e).unwrap(), EdgeId(rank));
    }

    #[test]
    fn sampler_coupling_is_monotone(seed in any::<u64>(), lo in 0.0f64..1.0, hi in 0.0f64..1.0) {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let small = sample(9, 3, lo, seed).unwrap();
        let large = sample(9, 3, hi, seed).unwrap();
        prop_assert!(small.is_subhypergraph_of(&large));
    }

    #[test]
    fn closure_is_monotone_and_idempotent(seed in any::<u64>(), keep in 1u64..6) {
        let g = sample(8, 3, 0.6, seed).unwrap();
        let mut h1 = Hypergraph::new(8, 3).unwrap();
        let mut h2 = Hypergraph::new(8, 3).unwrap();
        for (i, e) in g.edges().iter().enumerate() {
            if (i as u64).wrapping_mul(2654435761).wrapping_add(seed) % 7 < keep {
                h1.insert_edge(e).unwrap();
            }
            if (i as u64).wrapping_mul(2654435761).wrapping_add(seed) % 7 < keep + 1 {
                h2.insert_edge(e).unwrap();
            }
        }
        prop_assert!(h1.is_subhypergraph_of(&h2));
        let (c1, _) = closure(&g, &h1, 4).unwrap();
        let (c2, _) = closure(&g, &h2, 4).unwrap();
        prop_assert!(c1.is_subhypergraph_of(&c2));
        let (c1b, t) = closure(&g, &c1, 4).unwrap();
        prop_assert_eq!(c1b, c1);
        prop_assert!(t.is_empty());
    }

    #[test]
    fn hg_format_roundtrips(seed in any::<u64>(), p in 0.0f64..1.0) {
        let g = sample(7, 3, p, seed).unwrap();
        let text = hypersat::hgio::write_hg(&g);
        let back = hypersat::hgio::parse_hg(&text).unwrap();
        prop_assert_eq!(back, g);
    }
}
