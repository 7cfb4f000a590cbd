//! Bound-state wavefunctions in closed form and the spinor components
//! rebuilt from them.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{reconstruct_components, Components, HypergeomArgs, ModelParams, Parity, Regime};
use crate::specfun::{kummer_m, tricomi_u_over_gamma, tricomi_u_re_scaled};
use crate::spectrum::{residual, solve_alpha_for_energy};

/// Largest |residual| accepted for an (α, E) pair to count as an eigenpair.
pub const EIGENPAIR_TOLERANCE: f64 = 1e-9;

/// ψ and its components at one point; ψ₂ = i·`psi2_imag`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub x: f64,
    pub psi: f64,
    pub psi1: f64,
    pub psi2_imag: f64,
    pub psi3: f64,
}

/// A bound state ψ = s e^{−κs} W(2κs), s = |x| − x₀, extended by parity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfunction {
    pub params: ModelParams,
    pub regime: Regime,
    pub parity: Parity,
    pub energy: f64,
    args: HypergeomArgs,
    scale: f64,
}

impl Eigenfunction {
    /// Rejects (α, E) pairs that do not satisfy the energy equation.
    pub fn new(params: ModelParams, regime: Regime, parity: Parity, energy: f64) -> Result<Self> {
        let r = residual(&params, regime, parity, energy)?;
        if r.abs() > EIGENPAIR_TOLERANCE {
            return Err(Error::NoSolution(format!(
                "alpha = {}, E = {energy} is not a {regime} {parity} eigenpair (residual {r:.3e})",
                params.alpha
            )));
        }
        let args = HypergeomArgs::new(&params, energy)?;
        let mut f = Self { params, regime, parity, energy, args, scale: 1.0 };
        let peak = f.grid(400).iter().filter_map(|&x| f.psi(x).ok()).fold(0.0f64, |m, v| m.max(v.0.abs()));
        if peak > 0.0 && peak.is_finite() {
            f.scale = 1.0 / peak;
        }
        Ok(f)
    }

    /// State n of a sector at energy E, with α solved from E.
    pub fn at_energy(m: f64, regime: Regime, parity: Parity, n: u32, energy: f64) -> Result<Self> {
        let alpha = solve_alpha_for_energy(m, regime, parity, n, energy)?;
        Self::new(ModelParams::new(m, alpha)?, regime, parity, energy)
    }

    pub fn x0(&self) -> f64 {
        self.args.x0
    }

    /// (W, W') at t.
    fn kummer_pair(&self, t: f64) -> Result<(f64, f64)> {
        let a = self.args.a;
        Ok(match self.regime {
            Regime::NegRatio => (tricomi_u_over_gamma(a, 2, t)?, -a * tricomi_u_over_gamma(a + 1.0, 3, t)?),
            Regime::PosRatioWholeSpace => (tricomi_u_re_scaled(a, 2, t)?, -a * tricomi_u_re_scaled(a + 1.0, 3, t)?),
            Regime::PosRatioInterval => (kummer_m(a, 2.0, t)?, 0.5 * a * kummer_m(a + 1.0, 3.0, t)?),
        })
    }

    /// (ψ, ψ') at x; ψ is normalised to max |ψ| = 1 on the default grid.
    pub fn psi(&self, x: f64) -> Result<(f64, f64)> {
        let h = &self.args;
        let s = x.abs() - h.x0;
        let (v, dv) = if s == 0.0 {
            // s W(2κs) → 1/(2κ(a − 1)) for Γ(a − 1) Re U, 0 for ₁F₁
            match self.regime {
                Regime::PosRatioWholeSpace => (1.0 / (2.0 * h.kappa * (h.a - 1.0)), f64::NAN),
                _ => (0.0, 1.0),
            }
        } else if self.regime == Regime::PosRatioInterval && s > 0.0 {
            (0.0, 0.0)
        } else {
            let t = 2.0 * h.kappa * s;
            let (w, dw) = self.kummer_pair(t)?;
            let e = (-h.kappa * s).exp();
            (s * e * w, e * (w * (1.0 - 0.5 * t) + t * dw))
        };
        if x < 0.0 {
            let sign = self.parity.sign();
            Ok((self.scale * sign * v, -self.scale * sign * dv))
        } else {
            Ok((self.scale * v, self.scale * dv))
        }
    }

    pub fn components(&self, x: f64) -> Result<Components> {
        let (y, dy) = self.psi(x)?;
        reconstruct_components(&self.params, self.energy, x, y, dy)
    }

    pub fn sample(&self, x: f64) -> Result<WaveSample> {
        let (psi, _) = self.psi(x)?;
        let c = self.components(x)?;
        Ok(WaveSample { x, psi, psi1: c.psi1, psi2_imag: c.psi2_imag, psi3: c.psi3 })
    }

    /// Right end of the plotted range.
    pub fn x_max(&self) -> f64 {
        let h = &self.args;
        match self.regime {
            Regime::NegRatio => h.x0 + h.big_a / h.etilde + 8.0 / h.kappa,
            Regime::PosRatioInterval => h.x0,
            Regime::PosRatioWholeSpace => h.x0 + 8.0 / h.kappa,
        }
    }

    /// Symmetric grid of 2·`half` points that avoids x = 0 and |x| = x₀.
    pub fn grid(&self, half: usize) -> Vec<f64> {
        let xm = self.x_max();
        let x0 = self.args.x0;
        let mut right: Vec<f64> = (0..half)
            .map(|i| xm * (i as f64 + 0.5) / half as f64)
            .filter(|&x| x0 <= 0.0 || (x - x0).abs() > 1e-3 * x0)
            .collect();
        right.dedup();
        let mut g: Vec<f64> = right.iter().rev().map(|x| -x).collect();
        g.extend(right);
        g
    }

    pub fn samples(&self, half: usize) -> Result<Vec<WaveSample>> {
        self.grid(half).into_iter().map(|x| self.sample(x)).collect()
    }

    /// Largest relative mismatch among the three rows of the first-order
    /// system at x, with derivatives from Richardson-extrapolated central
    /// differences of the reconstructed components:
    ///
    /// ψ₂'/√2 = (E − m − V)ψ₁ = (E + m)ψ₃ and −(ψ₁ + ψ₃)'/√2 = E ψ₂ (ψ₂ → ψ₂/i).
    pub fn system_residual(&self, x: f64) -> Result<f64> {
        let (e, m) = (self.energy, self.params.m);
        let v = self.params.v11(x);
        let mut reach = x.abs().min(1.0 / self.args.kappa);
        if self.args.x0 > 0.0 {
            reach = reach.min((x.abs() - self.args.x0).abs());
        }
        let h = 5e-3 * reach;
        let w = |x: f64| self.components(x).map(|c| c.psi2_imag);
        let sum = |x: f64| self.components(x).map(|c| c.psi1 + c.psi3);
        let dw = richardson(&w, x, h)?;
        let dsum = richardson(&sum, x, h)?;
        let c = self.components(x)?;
        let rows =
            [(dw / SQRT_2, (e - m - v) * c.psi1), (dw / SQRT_2, (e + m) * c.psi3), (-dsum / SQRT_2, e * c.psi2_imag)];
        let scale = rows.iter().map(|(l, r)| l.abs() + r.abs()).sum::<f64>();
        if scale == 0.0 {
            return Ok(0.0);
        }
        Ok(rows.iter().map(|(l, r)| (l - r).abs()).fold(0.0, f64::max) / scale)
    }
}

fn richardson(f: &impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let (d1, d2, d4) = (d(h)?, d(0.5 * h)?, d(0.25 * h)?);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// The four E = 0.5 m states: lowest odd and even levels for α/E < 0,
/// the lowest odd interval level and the lowest odd whole-line level.
pub fn reference_states(m: f64) -> Result<Vec<Eigenfunction>> {
    let e = 0.5 * m;
    [
        (Regime::NegRatio, Parity::Odd),
        (Regime::NegRatio, Parity::Even),
        (Regime::PosRatioInterval, Parity::Odd),
        (Regime::PosRatioWholeSpace, Parity::Odd),
    ]
    .into_iter()
    .map(|(r, p)| Eigenfunction::at_energy(m, r, p, 1, e))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_eigenpairs() {
        let p = ModelParams::new(1.0, -1.0).unwrap();
        assert!(matches!(Eigenfunction::new(p, Regime::NegRatio, Parity::Odd, 0.6), Err(Error::NoSolution(_))));
    }

    #[test]
    fn parity_and_derivative() {
        let f = Eigenfunction::at_energy(1.0, Regime::NegRatio, Parity::Even, 1, 0.5).unwrap();
        for x in [0.3, 1.1, 4.0] {
            let (a, da) = f.psi(x).unwrap();
            let (b, db) = f.psi(-x).unwrap();
            assert!((a - b).abs() < 1e-12 && (da + db).abs() < 1e-12);
            let num = (f.psi(x + 1e-6).unwrap().0 - f.psi(x - 1e-6).unwrap().0) / 2e-6;
            assert!((num - da).abs() < 1e-6 * (1.0 + da.abs()));
        }
    }

    #[test]
    fn whole_line_state_is_finite_at_x0() {
        let f = Eigenfunction::at_energy(1.0, Regime::PosRatioWholeSpace, Parity::Odd, 1, 0.5).unwrap();
        let (v, _) = f.psi(f.x0()).unwrap();
        let (near, _) = f.psi(f.x0() * (1.0 - 1e-9)).unwrap();
        assert!(v.abs() > 1e-3 && (near - v).abs() < 1e-6 * v.abs());
    }

    #[test]
    fn components_satisfy_the_system() {
        for f in reference_states(1.0).unwrap() {
            for x in f.grid(25) {
                let r = f.system_residual(x).unwrap();
                assert!(r < 1e-7, "{:?} {:?} x = {x}: {r:e}", f.regime, f.parity);
            }
        }
    }
}
