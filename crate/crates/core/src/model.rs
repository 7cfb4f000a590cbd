//! Model parameters, free spectrum and the reduction of the three-component
//! problem to a scalar effective Schrödinger equation
//! −ψ'' + Ṽ(x) ψ = Ẽ ψ with Ẽ = E² − m² and Ṽ = A / (|x| − x₀).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Gap m, Coulomb strength α (V₁₁ = α/|x|) and numerical guards, in units ħ = v_F = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub m: f64,
    pub alpha: f64,
    /// Distance kept from E ∈ {0, ±m}.
    pub eps_e: f64,
    /// Distance kept from the singular points x = 0 and |x| = x₀.
    pub eps_x: f64,
}

impl ModelParams {
    pub fn new(m: f64, alpha: f64) -> Result<Self> {
        let p = Self { m, alpha, eps_e: 1e-8 * m, eps_x: 1e-10 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(Error::InvalidParameter(format!("gap m must be positive, got {}", self.m)));
        }
        if !self.alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be finite".into()));
        }
        if !(self.eps_e > 0.0 && self.eps_e < 1e-2 * self.m) {
            return Err(Error::InvalidParameter(format!("eps_e = {} must lie in (0, 0.01 m)", self.eps_e)));
        }
        if !(self.eps_x > 0.0) {
            return Err(Error::InvalidParameter("eps_x must be positive".into()));
        }
        Ok(())
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self { alpha, ..*self }
    }

    /// Coulomb term V₁₁(x) = α/|x|.
    pub fn v11(&self, x: f64) -> f64 {
        self.alpha / x.abs()
    }
}

/// Bands of the free Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Band {
    Lower,
    Flat,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Odd, Parity::Even];

    /// Sign of ψ(−x)/ψ(x).
    pub fn sign(self) -> f64 {
        match self {
            Parity::Odd => -1.0,
            Parity::Even => 1.0,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// The three solvable configurations.
///
/// * `NegRatio`: α/E < 0, bound on the whole line, decaying at ±∞.
/// * `PosRatioInterval`: α/E > 0, confined to (−x₀, x₀) with ψ(±x₀) = 0.
/// * `PosRatioWholeSpace`: α/E > 0, whole line, ψ(±x₀) finite and nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    NegRatio,
    PosRatioInterval,
    PosRatioWholeSpace,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::NegRatio, Regime::PosRatioInterval, Regime::PosRatioWholeSpace];

    pub fn short_name(self) -> &'static str {
        match self {
            Regime::NegRatio => "neg",
            Regime::PosRatioInterval => "interval",
            Regime::PosRatioWholeSpace => "whole",
        }
    }

    pub fn is_pos_ratio(self) -> bool {
        !matches!(self, Regime::NegRatio)
    }

    /// Whether (α, E) has the sign pattern this regime requires.
    pub fn admits(self, alpha: f64, energy: f64) -> bool {
        let ratio = alpha * energy;
        match self {
            Regime::NegRatio => ratio < 0.0 && energy > 0.0,
            _ => ratio > 0.0,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Sign of the energy window searched in the α/E > 0 regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub fn of(energy: f64) -> Self {
        if energy < 0.0 {
            EnergySign::Negative
        } else {
            EnergySign::Positive
        }
    }

    /// The sign a bound state of the given regime must have for strength α.
    pub fn for_regime(regime: Regime, alpha: f64) -> Self {
        match regime {
            Regime::NegRatio => EnergySign::Positive,
            _ if alpha < 0.0 => EnergySign::Negative,
            _ => EnergySign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Wkb,
    ClosedForm,
}

/// One bound-state energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub energy: f64,
    pub n: u32,
    pub parity: Parity,
    pub regime: Regime,
    pub method: Method,
}

/// Parameters of the confluent hypergeometric solution at energy E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomArgs {
    /// a = 1 + A / (2κ)
    pub a: f64,
    pub b: i32,
    /// κ = √(−Ẽ) = √(m² − E²)
    pub kappa: f64,
    /// A = α (m + E)² / (2E)
    pub big_a: f64,
    /// x₀ = α / (2E)
    pub x0: f64,
    /// Ẽ = E² − m²
    pub etilde: f64,
}

impl HypergeomArgs {
    pub fn new(p: &ModelParams, energy: f64) -> Result<Self> {
        if energy == 0.0 || energy.abs() >= p.m {
            return Err(Error::OutsideWindow { energy, lo: -p.m, hi: p.m });
        }
        if p.alpha == 0.0 {
            return Err(Error::InvalidParameter("alpha = 0 has no bound states".into()));
        }
        let etilde = energy * energy - p.m * p.m;
        let kappa = (p.m - energy).sqrt() * (p.m + energy).sqrt();
        let big_a = p.alpha * (p.m + energy).powi(2) / (2.0 * energy);
        Ok(Self { a: 1.0 + big_a / (2.0 * kappa), b: 2, kappa, big_a, x0: p.alpha / (2.0 * energy), etilde })
    }

    /// Kummer argument z(x) = 2κ(x − x₀) on the x ≥ 0 branch.
    pub fn z(&self, x: f64) -> f64 {
        2.0 * self.kappa * (x - self.x0)
    }

    /// z at the origin, −α κ / E.
    pub fn z0(&self) -> f64 {
        -2.0 * self.kappa * self.x0
    }
}

/// Free dispersion E(k) of each band.
pub fn dispersion(band: Band, k: f64, m: f64) -> f64 {
    match band {
        Band::Lower => -k.hypot(m),
        Band::Flat => 0.0,
        Band::Upper => k.hypot(m),
    }
}

/// Normalised plane-wave spinor of each band at momentum k.
pub fn free_eigenvector(band: Band, k: f64, m: f64) -> Result<[f64; 3]> {
    let eps = k.hypot(m);
    if eps == 0.0 {
        return Err(Error::InvalidParameter("k² + m² must be positive".into()));
    }
    Ok(match band {
        Band::Lower => [(eps - m) / (2.0 * eps), -SQRT2 * k / (2.0 * eps), (eps + m) / (2.0 * eps)],
        Band::Flat => {
            let n = SQRT2 * eps;
            [-k / n, SQRT2 * m / n, k / n]
        }
        Band::Upper => [(eps + m) / (2.0 * eps), SQRT2 * k / (2.0 * eps), (eps - m) / (2.0 * eps)],
    })
}

/// Bloch Hamiltonian k S_x + m S_z applied to a real 3-vector.
pub fn bloch_apply(k: f64, m: f64, v: [f64; 3]) -> [f64; 3] {
    let s = k / SQRT2;
    [s * v[1] + m * v[0], s * (v[0] + v[2]), s * v[1] - m * v[2]]
}

/// Ṽ(x) = A / (|x| − x₀).
pub fn effective_potential(p: &ModelParams, energy: f64, x: f64) -> Result<f64> {
    let h = HypergeomArgs::new(p, energy)?;
    let d = x.abs() - h.x0;
    if h.x0 > 0.0 && d.abs() < p.eps_x {
        return Err(Error::Singular(format!("|x| = x0 = {}", h.x0)));
    }
    Ok(h.big_a / d)
}

/// Regime from the sign of α/E; `whole_space` picks the α/E > 0 extension.
pub fn classify_regime(alpha: f64, energy: f64, whole_space: bool) -> Result<Regime> {
    if energy == 0.0 {
        return Err(Error::InvalidParameter("E = 0 is the flat band itself".into()));
    }
    if alpha == 0.0 {
        return Err(Error::InvalidParameter("alpha = 0 has no bound states".into()));
    }
    Ok(if alpha / energy < 0.0 {
        Regime::NegRatio
    } else if whole_space {
        Regime::PosRatioWholeSpace
    } else {
        Regime::PosRatioInterval
    })
}

/// Spinor components rebuilt from the scalar ψ; ψ₂ = i·`psi2_imag`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Components {
    pub psi1: f64,
    pub psi2_imag: f64,
    pub psi3: f64,
}

/// Rebuilds (ψ₁, ψ₂, ψ₃) from ψ = (E − V₁₁/2) ψ₁ / (E + m) and ψ'.
///
/// Rows one and three of the coupled equations share the left side
/// −i ψ₂'/√2, so (E + m) ψ₃ = (E − m − V) ψ₁, which gives
/// ψ₃ = (E − m − V) ψ / (E − V/2). Then ψ₁ + ψ₃ = 2ψ and the middle row
/// yields ψ₂ = −i √2 ψ' / E.
pub fn reconstruct_components(p: &ModelParams, energy: f64, x: f64, psi: f64, dpsi: f64) -> Result<Components> {
    if energy == 0.0 {
        return Err(Error::InvalidParameter("E = 0 is excluded".into()));
    }
    if x.abs() < p.eps_x {
        return Err(Error::Singular("x = 0".into()));
    }
    let v = p.v11(x);
    let denom = energy - 0.5 * v;
    if denom.abs() < p.eps_x * energy.abs() {
        return Err(Error::Singular(format!("E − V/2 vanishes at x = {x}")));
    }
    Ok(Components {
        psi1: (energy + p.m) * psi / denom,
        psi2_imag: -SQRT2 * dpsi / energy,
        psi3: (energy - p.m - v) * psi / denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion(Band::Flat, 3.7, 1.0), 0.0);
        assert_eq!(dispersion(Band::Upper, 0.0, 1.0), 1.0);
        assert_eq!(dispersion(Band::Lower, 3.0, 4.0), -5.0);
    }

    #[test]
    fn eigenvectors_at_k_zero() {
        assert_eq!(free_eigenvector(Band::Flat, 0.0, 1.0).unwrap(), [0.0, 1.0, 0.0]);
        assert_eq!(free_eigenvector(Band::Upper, 0.0, 1.0).unwrap(), [1.0, 0.0, 0.0]);
        let v = free_eigenvector(Band::Upper, 1.0, 1.0).unwrap();
        let want = (SQRT2 + 1.0) / (SQRT2 - 1.0);
        assert!((v[0] / v[2] - want).abs() < 1e-12);
    }

    #[test]
    fn eigenvectors_are_orthonormal_eigenstates() {
        for &k in &[-2.3, -0.4, 0.0, 0.9, 5.0] {
            let bands = [Band::Lower, Band::Flat, Band::Upper];
            let vs: Vec<_> = bands.iter().map(|&b| free_eigenvector(b, k, 1.3).unwrap()).collect();
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot(vs[i], vs[j]) - want).abs() < 1e-12);
                }
                let hv = bloch_apply(k, 1.3, vs[i]);
                let e = dispersion(bands[i], k, 1.3);
                for c in 0..3 {
                    assert!((hv[c] - e * vs[i][c]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn effective_potential_values() {
        let p = ModelParams::new(1.0, 0.5).unwrap();
        assert!((effective_potential(&p, 0.5, 0.75).unwrap() - 4.5).abs() < 1e-12);
        // value at the origin is −(m + E)²
        for &(alpha, e) in &[(0.5, 0.5), (-1.0, 0.3), (-2.0, -0.7)] {
            let p = ModelParams::new(1.0, alpha).unwrap();
            let v0 = effective_potential(&p, e, 0.0).unwrap();
            assert!((v0 + (1.0 + e) * (1.0 + e)).abs() < 1e-12);
            assert_eq!(effective_potential(&p, e, 1.7).unwrap(), effective_potential(&p, e, -1.7).unwrap());
        }
        assert!(matches!(effective_potential(&p, 0.5, 0.5), Err(Error::Singular(_))));
    }

    #[test]
    fn regime_classification() {
        assert_eq!(classify_regime(-1.0, 0.5, true).unwrap(), Regime::NegRatio);
        assert_eq!(classify_regime(1.0, 0.5, false).unwrap(), Regime::PosRatioInterval);
        assert_eq!(classify_regime(-1.0, -0.5, true).unwrap(), Regime::PosRatioWholeSpace);
        assert!(classify_regime(0.0, 0.5, true).is_err());
        assert!(classify_regime(1.0, 0.0, true).is_err());
    }

    #[test]
    fn hypergeometric_args() {
        let p = ModelParams::new(1.0, 0.7).unwrap();
        let h = HypergeomArgs::new(&p, 0.4).unwrap();
        assert!((h.big_a / h.x0 - 1.4f64.powi(2)).abs() < 1e-12);
        assert!((h.z0() - (-0.7 * (1.0f64 - 0.16).sqrt() / 0.4)).abs() < 1e-12);
        assert!(HypergeomArgs::new(&p, 1.0).is_err());
    }

    #[test]
    fn components_far_from_potential() {
        // where V is negligible ψ₃/ψ₁ → (E − m)/(E + m)
        let p = ModelParams::new(1.0, 1e-12).unwrap();
        let c = reconstruct_components(&p, 0.5, 3.0, 0.8, 0.1).unwrap();
        assert!((c.psi3 / c.psi1 + 1.0 / 3.0).abs() < 1e-10);
        assert!((c.psi1 + c.psi3 - 1.6).abs() < 1e-10);
    }
}
