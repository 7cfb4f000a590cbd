//! Quasi-classical quantization: closed-form phases, their inversion to
//! energies, and the near-threshold and near-flat-band limits.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EnergySign, HypergeomArgs, ModelParams, Parity, Regime};

/// One quantization rule: phase(E) = (n + Δ) π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WkbCondition {
    pub regime: Regime,
    pub energy_sign: EnergySign,
    pub parity: Parity,
    pub delta: f64,
}

impl WkbCondition {
    pub fn new(regime: Regime, energy_sign: EnergySign, parity: Parity) -> Result<Self> {
        if regime == Regime::NegRatio && energy_sign == EnergySign::Negative {
            return Err(Error::InvalidParameter("alpha/E < 0 requires E > 0".into()));
        }
        Ok(Self { regime, energy_sign, parity, delta: maslov_delta(regime, energy_sign, parity) })
    }

    /// The condition that applies to (regime, parity) at strength α.
    pub fn for_alpha(regime: Regime, parity: Parity, alpha: f64) -> Result<Self> {
        Self::new(regime, EnergySign::for_regime(regime, alpha), parity)
    }

    pub fn phase(&self, p: &ModelParams, energy: f64) -> Result<f64> {
        check_sign(self.regime, self.energy_sign, p.alpha, energy)?;
        wkb_phase(self.regime, self.energy_sign, energy, p.alpha, p.m)
    }

    /// Phase target for quantum number n.
    pub fn target(&self, n: u32) -> f64 {
        (n as f64 + self.delta) * PI
    }

    /// Whether the phase grows with E on the search window.
    pub fn increasing(&self) -> bool {
        !(self.regime.is_pos_ratio() && self.energy_sign == EnergySign::Positive)
    }

    /// Open energy window (with guards) where the phase is defined.
    pub fn window(&self, p: &ModelParams) -> (f64, f64) {
        match self.energy_sign {
            EnergySign::Positive => (p.eps_e, p.m - p.eps_e),
            EnergySign::Negative => (-p.m + p.eps_e, -p.eps_e),
        }
    }

    /// Solves phase(E) = target by bisection; `NoSolution` if the target
    /// is not attained inside the window.
    pub fn energy_for_phase(&self, p: &ModelParams, target: f64) -> Result<f64> {
        let (lo, hi) = self.window(p);
        let f = |e: f64| self.phase(p, e).map(|ph| ph - target);
        let (flo, fhi) = (f(lo)?, f(hi)?);
        if flo.signum() == fhi.signum() {
            return Err(Error::NoSolution(format!(
                "phase {target:.6} not reached for alpha = {} in ({lo}, {hi})",
                p.alpha
            )));
        }
        bisect(f, lo, hi, flo)
    }
}

fn check_sign(regime: Regime, sign: EnergySign, alpha: f64, energy: f64) -> Result<()> {
    let ok = EnergySign::of(energy) == sign && regime.admits(alpha, energy) && energy != 0.0;
    if ok {
        Ok(())
    } else {
        Err(Error::RegimeMismatch { regime: regime.short_name(), alpha, energy })
    }
}

pub(crate) fn bisect(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Maslov-like offset Δ. For E < 0 the interval rule is n π and the
/// whole-space rule (n − 1/2) π, independent of parity.
pub fn maslov_delta(regime: Regime, sign: EnergySign, parity: Parity) -> f64 {
    use Parity::*;
    match (regime, sign, parity) {
        (Regime::NegRatio, _, Odd) => -0.25,
        (Regime::NegRatio, _, Even) => -0.75,
        (Regime::PosRatioInterval, EnergySign::Positive, Odd) => 0.25,
        (Regime::PosRatioInterval, EnergySign::Positive, Even) => -0.25,
        (Regime::PosRatioWholeSpace, EnergySign::Positive, Odd) => -0.25,
        (Regime::PosRatioWholeSpace, EnergySign::Positive, Even) => -0.75,
        (Regime::PosRatioInterval, EnergySign::Negative, _) => 0.0,
        (Regime::PosRatioWholeSpace, EnergySign::Negative, _) => -0.5,
    }
}

/// Closed-form WKB phase (left-hand side of the quantization rule).
pub fn wkb_phase(regime: Regime, sign: EnergySign, energy: f64, alpha: f64, m: f64) -> Result<f64> {
    if !(energy.abs() > 0.0 && energy.abs() < m) {
        return Err(Error::OutsideWindow { energy, lo: -m, hi: m });
    }
    if EnergySign::of(energy) != sign {
        return Err(Error::RegimeMismatch { regime: regime.short_name(), alpha, energy });
    }
    let e = energy;
    Ok(match (regime, sign) {
        (Regime::NegRatio, _) => {
            let r = (e / (m - e)).sqrt();
            let bracket = -SQRT_2 + (2.0 * r + 1.0 / r) * (SQRT_2 * r).atan();
            -alpha * (e * (e + m)).sqrt() / (2.0 * e) * bracket
        }
        (_, EnergySign::Positive) => {
            let q = ((m - e) / (m + e)).sqrt();
            alpha * (m + e) / (2.0 * e) * ((2.0 * e / (m + e)).sqrt() + q.asin() / q)
        }
        (_, EnergySign::Negative) => alpha * (m + e).powf(1.5) * PI / (4.0 * e * (m - e).sqrt()),
    })
}

/// WKB energy of level n.
pub fn wkb_energy(regime: Regime, sign: EnergySign, parity: Parity, n: u32, alpha: f64, m: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n starts at 1".into()));
    }
    let cond = WkbCondition::new(regime, sign, parity)?;
    let p = ModelParams::new(m, alpha)?;
    cond.energy_for_phase(&p, cond.target(n))
}

/// Hydrogen-like level m[1 − α²/(2(n + Δ)²)] with the α/E < 0 offsets.
pub fn rydberg_energy(n: u32, parity: Parity, alpha: f64, m: f64) -> f64 {
    let nd = n as f64 + maslov_delta(Regime::NegRatio, EnergySign::Positive, parity);
    m * (1.0 - alpha * alpha / (2.0 * nd * nd))
}

/// Near-flat-band level mα/(4(n + Δ)) for the α/E > 0, E > 0 cases.
pub fn flatband_energy(n: u32, parity: Parity, alpha: f64, m: f64, regime: Regime) -> f64 {
    let nd = n as f64 + maslov_delta(regime, EnergySign::Positive, parity);
    m * alpha / (4.0 * nd)
}

/// The action ∫√(Ẽ − Ṽ) dx over the classically allowed part of x ≥ 0,
/// evaluated by tanh-sinh quadrature. Equals `wkb_phase` identically.
pub fn action_phase(regime: Regime, energy: f64, alpha: f64, m: f64) -> Result<f64> {
    let p = ModelParams::new(m, alpha)?;
    if !regime.admits(alpha, energy) {
        return Err(Error::RegimeMismatch { regime: regime.short_name(), alpha, energy });
    }
    let h = HypergeomArgs::new(&p, energy)?;
    if regime == Regime::NegRatio {
        // k² = Ẽ − A/(x − x₀) vanishes at the outer turning point
        let k = |x: f64| (h.etilde - h.big_a / (x - h.x0)).max(0.0).sqrt();
        return Ok(tanh_sinh(k, 0.0, h.x0 + h.big_a / h.etilde));
    }
    // integrate in y = x₀ − x so the 1/√y endpoint keeps full precision
    let far = if energy > 0.0 { h.x0 } else { h.x0 + alpha / (m - energy) };
    let k = |y: f64| (h.etilde + h.big_a / y).max(0.0).sqrt();
    Ok(tanh_sinh(k, 0.0, far))
}

fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let step = 1.0 / 64.0;
    let mut sum = 0.0;
    for i in -400i32..=400 {
        let t = i as f64 * step;
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        // distance to the nearer endpoint, computed without cancellation
        let d = half / (u.exp() * u.cosh());
        let x = if t >= 0.0 { b - d } else { a + half * u.exp() / u.cosh() };
        if x <= a || x >= b || w < 1e-300 {
            continue;
        }
        sum += w * f(x);
    }
    sum * half * step
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_table() {
        use EnergySign::*;
        assert_eq!(maslov_delta(Regime::NegRatio, Positive, Parity::Odd), -0.25);
        assert_eq!(maslov_delta(Regime::PosRatioInterval, Positive, Parity::Odd), 0.25);
        assert_eq!(maslov_delta(Regime::PosRatioWholeSpace, Positive, Parity::Even), -0.75);
        assert_eq!(maslov_delta(Regime::PosRatioWholeSpace, Negative, Parity::Odd), -0.5);
    }

    #[test]
    fn closed_forms() {
        let e = rydberg_energy(10, Parity::Odd, -1.0, 1.0);
        assert!((e - (1.0 - 1.0 / (2.0 * 95.0625))).abs() < 1e-15);
        let f = flatband_energy(5, Parity::Even, 0.2, 1.0, Regime::PosRatioInterval);
        assert!((f - 0.2 / 19.0).abs() < 1e-15);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let cases = [
            (Regime::NegRatio, 0.3, -1.0),
            (Regime::NegRatio, 0.95, -0.4),
            (Regime::PosRatioInterval, 0.2, 0.7),
            (Regime::PosRatioWholeSpace, 0.8, 2.0),
            (Regime::PosRatioInterval, -0.4, -5.0),
            (Regime::PosRatioWholeSpace, -0.9, -1.5),
        ];
        for (regime, e, alpha) in cases {
            let sign = EnergySign::of(e);
            let closed = wkb_phase(regime, sign, e, alpha, 1.0).unwrap();
            let numeric = action_phase(regime, e, alpha, 1.0).unwrap();
            assert!((closed - numeric).abs() < 1e-8 * closed.abs(), "{regime} {e} {alpha}: {closed} vs {numeric}");
        }
    }

    #[test]
    fn energy_inversion() {
        let e = wkb_energy(Regime::NegRatio, EnergySign::Positive, Parity::Odd, 10, -1.0, 1.0).unwrap();
        let ph = wkb_phase(Regime::NegRatio, EnergySign::Positive, e, -1.0, 1.0).unwrap();
        assert!((ph - 9.75 * PI).abs() < 1e-9);
        assert!((e - 0.9947).abs() < 1e-3);
        let e = wkb_energy(Regime::PosRatioInterval, EnergySign::Negative, Parity::Odd, 1, -4000.0, 1.0).unwrap();
        assert!(e < -0.98);
    }

    #[test]
    fn whole_and_interval_differ_by_half_pi() {
        for parity in Parity::BOTH {
            let a = WkbCondition::new(Regime::PosRatioInterval, EnergySign::Positive, parity).unwrap();
            let b = WkbCondition::new(Regime::PosRatioWholeSpace, EnergySign::Positive, parity).unwrap();
            assert!((a.target(3) - b.target(3) - FRAC_PI_2).abs() < 1e-12);
        }
    }

    #[test]
    fn too_many_levels_is_an_error() {
        // at E → m the E > 0 phase tends to 2α, above the n = 1 target here
        let r = wkb_energy(Regime::PosRatioInterval, EnergySign::Positive, Parity::Odd, 1, 3.0, 1.0);
        assert!(matches!(r, Err(Error::NoSolution(_))));
    }

    #[test]
    fn sign_mismatch_rejected() {
        let c = WkbCondition::new(Regime::NegRatio, EnergySign::Positive, Parity::Odd).unwrap();
        let p = ModelParams::new(1.0, 1.0).unwrap();
        assert!(c.phase(&p, 0.5).is_err());
    }
}
