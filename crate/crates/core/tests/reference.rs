//! Energies, special-function values and critical strengths against
//! 50-digit values frozen in tests/data/reference_values.txt.

use flatband::model::{ModelParams, Parity, Regime};
use flatband::specfun::{kummer_m, tricomi_u};
use flatband::spectrum::{critical_alpha_exact, find_bound_states, SearchConfig};

const TABLE: &str = include_str!("data/reference_values.txt");

fn rows(kind: &str) -> Vec<Vec<&'static str>> {
    TABLE.lines().filter(|l| l.starts_with(kind)).map(|l| l.split_whitespace().skip(1).collect()).collect()
}

fn regime(s: &str) -> Regime {
    match s {
        "neg" => Regime::NegRatio,
        "interval" => Regime::PosRatioInterval,
        "whole" => Regime::PosRatioWholeSpace,
        _ => panic!("unknown regime {s}"),
    }
}

fn parity(s: &str) -> Parity {
    match s {
        "odd" => Parity::Odd,
        "even" => Parity::Even,
        _ => panic!("unknown parity {s}"),
    }
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn energies_match_high_precision_roots() {
    let levels = rows("level");
    assert_eq!(levels.len(), 19);
    let cfg = SearchConfig { n_max: 4, ..SearchConfig::default() };
    for r in levels {
        let (reg, par, alpha, n, want) = (regime(r[0]), parity(r[1]), num(r[2]), num(r[3]) as u32, num(r[4]));
        let found = find_bound_states(&ModelParams::new(1.0, alpha).unwrap(), reg, par, &cfg).unwrap();
        let got = found.states.iter().find(|s| s.state.n == n).unwrap().state.energy;
        assert!((got - want).abs() <= 1e-12, "{reg} {par} alpha = {alpha} n = {n}: {got} vs {want}");
    }
}

#[test]
fn kummer_and_tricomi_values() {
    for r in rows("kummer") {
        let (a, b, z, want) = (num(r[0]), num(r[1]), num(r[2]), num(r[3]));
        let got = kummer_m(a, b, z).unwrap();
        assert!((got - want).abs() <= 1e-12 * want.abs(), "M({a}, {b}, {z}) = {got}, want {want}");
    }
    for r in rows("tricomi") {
        let (a, b, z, want) = (num(r[0]), num(r[1]) as i32, num(r[2]), num(r[3]));
        let got = tricomi_u(a, b, z).unwrap();
        assert!(
            (got.re - want).abs() <= 1e-12 * want.abs() && got.im == 0.0,
            "U({a}, {b}, {z}) = {got:?}, want {want}"
        );
    }
}

#[test]
fn critical_strengths_match_bessel_zeros() {
    let table = rows("critical");
    assert_eq!(table.len(), 12);
    for r in table {
        let (reg, par, k, want) = (regime(r[0]), parity(r[1]), num(r[2]) as u32, num(r[3]));
        let got = critical_alpha_exact(reg, par, k).unwrap();
        assert!((got - want).abs() <= 1e-11, "{reg} {par} k = {k}: {got} vs {want}");
    }
}
