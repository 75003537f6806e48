use std::sync::Arc;

use ordnung::bv::FunctionFamily;
use ordnung::gallery::{gen_random_bv, gen_random_monotone, Seed};
use ordnung::order::Chain;
use ordnung::selection::{
    diagonal_select_stream, pigeonhole_floor, select_bv, select_monotone, FnStream,
};
use proptest::prelude::*;

fn sorted_rows(rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    rows.into_iter()
        .map(|mut r| {
            r.sort_by(f64::total_cmp);
            r
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn monotone_selection_is_sound_and_large(
        rows in prop::collection::vec(prop::collection::vec(0.0f64..=1.0, 3), 1..300),
        eps in 0.1f64..0.6,
    ) {
        let fam = FunctionFamily::new(Arc::new(Chain::new(3).unwrap()), (0.0, 1.0), sorted_rows(rows)).unwrap();
        let s = select_monotone(&fam, &eps, None).unwrap();
        prop_assert_eq!(s.validate(&fam), None);
        let bins = (1..).find(|&b| b as f64 * eps >= 1.0).unwrap();
        prop_assert!(s.len() >= pigeonhole_floor(fam.len(), bins, 3));
        prop_assert!(s.selected.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bv_selection_is_sound(seed in any::<u64>(), eps in 0.1f64..0.5) {
        let fam = gen_random_bv(200, 5, &1.0, Seed(seed)).unwrap();
        let s = select_bv(&fam, &1.0, &eps, None).unwrap();
        prop_assert!(!s.is_empty());
        prop_assert_eq!(s.validate(&fam), None);
    }

    #[test]
    fn selection_is_deterministic(seed in any::<u64>()) {
        let fam = gen_random_monotone::<f64>(100, 4, Seed(seed)).unwrap();
        let a = select_monotone(&fam, &0.25, None).unwrap();
        let b = select_monotone(&fam, &0.25, None).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn stream_stages_nest(seed in 0u64..1000) {
        let fam = gen_random_monotone::<f64>(4000, 5, Seed(seed)).unwrap();
        let stream = FnStream::new((0.0, 1.0), |n, x| *fam.value(n, x));
        let schedule = [0.5, 0.25, 0.125];
        let out = diagonal_select_stream(&stream, &[0, 1, 2, 3, 4], &schedule, 4000).unwrap();
        for w in out.stages.windows(2) {
            prop_assert!(w[1].iter().all(|n| w[0].contains(n)));
        }
        for (m, eps) in schedule.iter().enumerate() {
            let tail = &out.diagonal[m..];
            for &i in tail {
                for &j in tail {
                    for &x in &out.points[..=m] {
                        prop_assert!((fam.value(i, x) - fam.value(j, x)).abs() <= *eps);
                    }
                }
            }
        }
    }
}
