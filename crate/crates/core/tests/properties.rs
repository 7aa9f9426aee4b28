use std::f64::consts::{PI, TAU};

use oddzeta::complexcut::{branch_log, complex_power};
use oddzeta::fixtures::{mirror, random_odd_symbol, random_symbol, rng};
use oddzeta::symbolcalc::{commutator_symbol, compose, is_odd_pair, odd_pair_deviation, wodzicki_res, Symbol};
use oddzeta::{c64, SpectralCut};
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = oddzeta::Cplx> {
    (-3.0f64..3.0, -PI..PI).prop_map(|(lr, a)| oddzeta::Cplx::from_polar(10f64.powf(lr), a))
}

proptest! {
    #[test]
    fn log_shift_by_full_turns(l in lambda(), theta in -10.0f64..10.0, k in -4i32..=4) {
        let a = branch_log(l, SpectralCut::new(theta)).unwrap();
        let b = branch_log(l, SpectralCut::new(theta + TAU * k as f64)).unwrap();
        prop_assert!((b - a - c64(0.0, TAU * k as f64)).norm() < 1e-12);
        prop_assert!(a.im > theta - TAU && a.im <= theta);
        prop_assert!((a.exp() - l).norm() <= 1e-12 * l.norm());
    }

    #[test]
    fn power_group_law(l in lambda(), theta in -10.0f64..10.0,
                       s1 in (-3.0f64..3.0, -3.0f64..3.0), s2 in (-3.0f64..3.0, -3.0f64..3.0)) {
        let cut = SpectralCut::new(theta);
        let (s1, s2) = (c64(s1.0, s1.1), c64(s2.0, s2.1));
        let lhs = complex_power(l, s1 + s2, cut).unwrap();
        let rhs = complex_power(l, s1, cut).unwrap() * complex_power(l, s2, cut).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn odd_pairs_closed_under_composition(seed in any::<u64>(), o1 in -1i64..=2, o2 in -1i64..=2, band in 0usize..=8) {
        let mut r = rng(seed);
        let a1 = random_symbol(&mut r, o1, 16, band, 4);
        let a2 = random_symbol(&mut r, o2, 16, band, 4);
        let p = compose(&a1, &a2, 4).unwrap();
        let q = compose(&mirror(&a1), &mirror(&a2), 4).unwrap();
        let scale = p.components().iter().map(|c| c.norm()).fold(1.0, f64::max);
        let dev = odd_pair_deviation(&Symbol::Classical(p), &Symbol::Classical(q)).unwrap();
        prop_assert!(dev <= 1e-12 * scale, "deviation {dev}");
    }

    #[test]
    fn residue_vanishes_on_commutators(seed in any::<u64>(), o1 in -1i64..=2, o2 in -1i64..=2, band in 0usize..=8) {
        let mut r = rng(seed);
        let a = random_symbol(&mut r, o1, 16, band, 5);
        let b = random_symbol(&mut r, o2, 16, band, 5);
        let c = commutator_symbol(&a.into(), &b.into(), 5).unwrap();
        prop_assert!(wodzicki_res(&c).unwrap().norm() < 1e-10);
    }

    #[test]
    fn residue_vanishes_on_odd_class(seed in any::<u64>(), order in -1i64..=3, band in 0usize..=8) {
        let a = random_odd_symbol(&mut rng(seed), order, 16, band, 5, false);
        prop_assert_eq!(wodzicki_res(&a).unwrap(), c64(0.0, 0.0));
        prop_assert!(is_odd_pair(&a.clone().into(), &mirror(&a).into(), 1e-15).unwrap());
    }
}
