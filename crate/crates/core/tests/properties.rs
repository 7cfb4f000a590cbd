//! Property-based invariants of the special functions, the model and the
//! spectrum.

use flatband::model::{
    bloch_apply, dispersion, effective_potential, free_eigenvector, Band, ModelParams, Parity, Regime,
};
use flatband::specfun::kummer_m;
use flatband::spectrum::{find_bound_states, residual, SearchConfig, RESIDUAL_BOUND};
use flatband::wkb::WkbCondition;
use proptest::prelude::*;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn regime_and_alpha() -> impl Strategy<Value = (Regime, f64)> {
    prop_oneof![
        (-3.0..-0.05f64).prop_map(|a| (Regime::NegRatio, a)),
        (0.05..3.0f64).prop_map(|a| (Regime::PosRatioInterval, a)),
        (-5.0..-0.1f64).prop_map(|a| (Regime::PosRatioInterval, a)),
        (0.05..3.0f64).prop_map(|a| (Regime::PosRatioWholeSpace, a)),
        (-5.0..-0.1f64).prop_map(|a| (Regime::PosRatioWholeSpace, a)),
    ]
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Odd), Just(Parity::Even)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kummer_transformation(a in -4.0..6.0f64, b in prop_oneof![Just(1.0), Just(2.0), Just(3.0), 0.5..4.0f64], z in -15.0..15.0f64) {
        let lhs = kummer_m(a, b, z).unwrap();
        let rhs = z.exp() * kummer_m(b - a, b, -z).unwrap();
        // Cancellation in the alternating series limits accuracy near zeros of M.
        let scale = kummer_m(a.abs(), b, z.abs()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn kummer_contiguous_relation(a in -4.0..6.0f64, b in 1.0..4.0f64, z in -10.0..10.0f64) {
        let (m0, mm, mp) = (kummer_m(a, b, z).unwrap(), kummer_m(a - 1.0, b, z).unwrap(), kummer_m(a + 1.0, b, z).unwrap());
        let terms = [(b - a) * mm, (2.0 * a - b + z) * m0, -a * mp];
        let sum: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        prop_assert!(sum.abs() <= 1e-11 * scale.max(1e-300));
    }

    #[test]
    fn free_spinors_are_orthonormal_eigenvectors(k in -20.0..20.0f64, m in 0.1..3.0f64) {
        let bands = [Band::Lower, Band::Flat, Band::Upper];
        let vs: Vec<[f64; 3]> = bands.iter().map(|&b| free_eigenvector(b, k, m).unwrap()).collect();
        for (i, v) in vs.iter().enumerate() {
            for (j, w) in vs.iter().enumerate() {
                let dot: f64 = v.iter().zip(w).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-12);
            }
            let hv = bloch_apply(k, m, *v);
            let e = dispersion(bands[i], k, m);
            for c in 0..3 {
                prop_assert!((hv[c] - e * v[c]).abs() < 1e-12 * (1.0 + e.abs()));
            }
        }
    }

    #[test]
    fn effective_potential_is_even(alpha in prop_oneof![-5.0..-0.1f64, 0.1..5.0f64], e in prop_oneof![-0.99..-0.01f64, 0.01..0.99f64], x in 0.01..30.0f64) {
        let p = ModelParams::new(1.0, alpha).unwrap();
        if let (Ok(l), Ok(r)) = (effective_potential(&p, e, -x), effective_potential(&p, e, x)) {
            prop_assert!(l == r || close(l, r, 1e-15));
        }
    }

    #[test]
    fn residual_is_normalised((regime, alpha) in regime_and_alpha(), u in 0.001..0.999f64) {
        let p = ModelParams::new(1.0, alpha).unwrap();
        let cond = WkbCondition::for_alpha(regime, Parity::Odd, alpha).unwrap();
        let (lo, hi) = cond.window(&p);
        let e = lo + u * (hi - lo);
        if let (Ok(o), Ok(v)) = (residual(&p, regime, Parity::Odd, e), residual(&p, regime, Parity::Even, e)) {
            prop_assert!((o.hypot(v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn wkb_phase_is_monotone((regime, alpha) in regime_and_alpha(), par in parity(), u in 0.01..0.98f64) {
        let p = ModelParams::new(1.0, alpha).unwrap();
        let cond = WkbCondition::for_alpha(regime, par, alpha).unwrap();
        let (lo, hi) = cond.window(&p);
        let e1 = lo + u * (hi - lo);
        let e2 = e1 + 0.01 * (hi - lo);
        let (f1, f2) = (cond.phase(&p, e1).unwrap(), cond.phase(&p, e2).unwrap());
        prop_assert!(if cond.increasing() { f2 > f1 } else { f2 < f1 }, "{f1} {f2}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn levels_are_ordered_roots((regime, alpha) in regime_and_alpha(), par in parity()) {
        let p = ModelParams::new(1.0, alpha).unwrap();
        let cfg = SearchConfig { n_max: 6, ..SearchConfig::default() };
        let states = find_bound_states(&p, regime, par, &cfg).unwrap().states;
        for s in &states {
            prop_assert!(s.residual.abs() <= RESIDUAL_BOUND);
            prop_assert!(s.state.energy.abs() < 1.0 && regime.admits(alpha, s.state.energy));
        }
        for w in states.windows(2) {
            prop_assert_eq!(w[1].state.n, w[0].state.n + 1);
            // |E| moves towards the threshold for α/E < 0, away from m otherwise.
            let toward_m = regime == Regime::NegRatio;
            let step = w[1].state.energy.abs() - w[0].state.energy.abs();
            prop_assert!(if toward_m { step > 0.0 } else { step < 0.0 }, "{:?}", states);
        }
    }
}
