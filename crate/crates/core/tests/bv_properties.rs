use std::sync::Arc;

use num_rational::BigRational;
use ordnung::bv::{
    jordan_decompose, lipschitz_separators, restricted_variation, subchain_sum, variation, ChainFunction,
};
use ordnung::order::{Chain, FiniteMetricSpace};
use ordnung::Exact;
use proptest::prelude::*;

fn rational(n: i64, d: i64) -> Exact {
    BigRational::new(n.into(), d.into())
}

fn exact_function() -> impl Strategy<Value = ChainFunction<Exact>> {
    prop::collection::vec((-50i64..50, 1i64..12), 1..12).prop_map(|parts| {
        let values: Vec<Exact> = parts.into_iter().map(|(n, d)| rational(n, d)).collect();
        ChainFunction::fitted(Arc::new(Chain::new(values.len()).unwrap()), values).unwrap()
    })
}

fn float_function() -> impl Strategy<Value = ChainFunction<f64>> {
    prop::collection::vec(-10.0f64..10.0, 1..16).prop_map(|values| {
        ChainFunction::fitted(Arc::new(Chain::new(values.len()).unwrap()), values).unwrap()
    })
}

proptest! {
    #[test]
    fn jordan_parts_rebuild_f_exactly(f in exact_function()) {
        let (u, v) = jordan_decompose(&f);
        prop_assert!(u.is_increasing());
        prop_assert!(v.is_increasing());
        for x in f.chain().points() {
            prop_assert_eq!(u.value(x).clone() - v.value(x).clone(), f.value(x).clone());
        }
        prop_assert_eq!(u.value(f.len() - 1).clone(), variation(&f));
    }

    #[test]
    fn every_subchain_sum_is_bounded_by_the_variation(f in float_function(), mask in any::<u16>()) {
        let points: Vec<usize> = f.chain().points().filter(|&p| mask >> p & 1 == 1).collect();
        let sum = subchain_sum(&f, &points).unwrap();
        prop_assert!(sum <= variation(&f) + 1e-9);
    }

    #[test]
    fn restricted_variation_grows_with_the_cutoff(f in float_function()) {
        let partial: Vec<f64> = f.chain().points().map(|x| restricted_variation(&f, x).unwrap()).collect();
        prop_assert!(partial.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(partial[partial.len() - 1], variation(&f));
    }

    #[test]
    fn separators_contract_distances(points in prop::collection::btree_set(-100i32..100, 2..8)) {
        let reals: Vec<f64> = points.into_iter().map(f64::from).collect();
        let space = FiniteMetricSpace::from_reals(&reals).unwrap();
        let diam = space.diameter();
        let h = lipschitz_separators(&space);
        for f in h.members() {
            for p in 0..space.size() {
                for q in 0..space.size() {
                    let moved = (f.value(p) - f.value(q)).abs() * diam;
                    prop_assert!(moved <= space.dist(p, q) + 1e-9);
                }
            }
        }
        // the separators recover the metric
        for p in 0..space.size() {
            for q in 0..space.size() {
                let best = h.members().iter().map(|f| (f.value(p) - f.value(q)).abs()).fold(0.0, f64::max);
                prop_assert!((best * diam - space.dist(p, q)).abs() <= 1e-9);
            }
        }
    }
}
