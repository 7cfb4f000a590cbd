//! Direct integration of ψ'' = (Ṽ(x) − Ẽ) ψ, used as an independent check
//! of the hypergeometric energy equations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{HypergeomArgs, ModelParams, Parity, Regime};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig {
    pub step_init: f64,
    pub tol_local: f64,
    /// Outer radius in decay lengths 1/κ beyond the classical region.
    pub far_decay_lengths: f64,
    pub frobenius_terms: usize,
    /// Offset from x₀ where series and integrator meet, relative to x₀.
    pub eps_rel: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self { step_init: 1e-3, tol_local: 1e-10, far_decay_lengths: 40.0, frobenius_terms: 60, eps_rel: 1e-6 }
    }
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_init > 0.0 && self.tol_local > 0.0 && self.eps_rel > 0.0 && self.eps_rel < 1e-2) {
            return Err(Error::InvalidParameter("shooting steps and tolerances must be positive".into()));
        }
        if self.frobenius_terms < 4 {
            return Err(Error::InvalidParameter("at least 4 Frobenius terms are needed".into()));
        }
        if self.far_decay_lengths < 10.0 {
            return Err(Error::InvalidParameter("outer radius must exceed 10 decay lengths".into()));
        }
        Ok(())
    }
}

/// Accepted integration points.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
}

impl Trajectory {
    pub fn last(&self) -> (f64, f64, f64) {
        let i = self.x.len() - 1;
        (self.x[i], self.y[i], self.dy[i])
    }

    fn push(&mut self, x: f64, y: f64, dy: f64) {
        self.x.push(x);
        self.y.push(y);
        self.dy.push(dy);
    }

    fn scale(&mut self, c: f64) {
        self.y.iter_mut().chain(self.dy.iter_mut()).for_each(|v| *v *= c);
    }

    /// Sign changes of ψ, ignoring exact zeros at the ends.
    pub fn count_nodes(&self) -> usize {
        let signs: Vec<f64> = self.y.iter().filter(|v| **v != 0.0).map(|v| v.signum()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// The scalar equation at fixed energy.
#[derive(Debug, Clone, Copy)]
struct Equation {
    etilde: f64,
    big_a: f64,
    x0: f64,
}

impl Equation {
    fn new(p: &ModelParams, energy: f64) -> Result<Self> {
        let h = HypergeomArgs::new(p, energy)?;
        Ok(Self { etilde: h.etilde, big_a: h.big_a, x0: h.x0 })
    }

    fn q(&self, x: f64) -> f64 {
        self.big_a / (x.abs() - self.x0) - self.etilde
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

fn dp45(q: impl Fn(f64) -> f64, x_start: f64, x_end: f64, y0: f64, dy0: f64, h0: f64, tol: f64) -> Result<Trajectory> {
    let mut tr = Trajectory::default();
    tr.push(x_start, y0, dy0);
    let dir = (x_end - x_start).signum();
    let span = (x_end - x_start).abs();
    if span == 0.0 {
        return Ok(tr);
    }
    let (mut x, mut y) = (x_start, [y0, dy0]);
    let mut h = h0.min(span) * dir;
    let mut peak = [y0.abs(), dy0.abs()];
    let f = |x: f64, y: [f64; 2]| [y[1], q(x) * y[0]];
    for _ in 0..2_000_000 {
        if (x_end - x) * dir <= 0.0 {
            return Ok(tr);
        }
        if ((x + h) - x_end) * dir > 0.0 {
            h = x_end - x;
        }
        let mut k = [[0.0; 2]; 7];
        k[0] = f(x, y);
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            k[s] = f(x + C[s] * h, ys);
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for c in 0..2 {
            let mut e = 0.0;
            for s in 0..7 {
                y5[c] += h * B5[s] * k[s][c];
                e += h * (B5[s] - B4[s]) * k[s][c];
            }
            let sc = tol * y[c].abs().max(y5[c].abs()).max(1e-3 * peak[c]).max(1e-300);
            err = err.max(e.abs() / sc);
        }
        if !err.is_finite() {
            return Err(Error::Integration(format!("non-finite step at x = {x}")));
        }
        if err <= 1.0 {
            x = if (x_end - (x + h)).abs() <= 1e-15 * x_end.abs() { x_end } else { x + h };
            y = y5;
            peak = [peak[0].max(y[0].abs()), peak[1].max(y[1].abs())];
            tr.push(x, y[0], y[1]);
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-14 * x.abs().max(1e-300) {
            return Err(Error::Integration(format!("step size underflow at x = {x}")));
        }
    }
    Err(Error::Integration("step budget exhausted".into()))
}

/// Adaptive Dormand–Prince integration of the effective equation. The
/// kink of |x| at the origin is handled by splitting the interval there;
/// the singular points |x| = x₀ must lie outside the open interval.
pub fn integrate_effective(
    p: &ModelParams,
    energy: f64,
    x_start: f64,
    x_end: f64,
    y0: f64,
    dy0: f64,
    cfg: &ShootingConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    let eq = Equation::new(p, energy)?;
    let (lo, hi) = (x_start.min(x_end), x_start.max(x_end));
    if eq.x0 > 0.0 && [eq.x0, -eq.x0].iter().any(|&s| s > lo && s < hi) {
        return Err(Error::Singular(format!("|x| = x0 = {} inside the integration interval", eq.x0)));
    }
    let q = |x: f64| eq.q(x);
    if lo < 0.0 && hi > 0.0 {
        let mut first = dp45(q, x_start, 0.0, y0, dy0, cfg.step_init, cfg.tol_local)?;
        let (_, y, dy) = first.last();
        let second = dp45(q, 0.0, x_end, y, dy, cfg.step_init, cfg.tol_local)?;
        first.x.extend(&second.x[1..]);
        first.y.extend(&second.y[1..]);
        first.dy.extend(&second.dy[1..]);
        return Ok(first);
    }
    dp45(q, x_start, x_end, y0, dy0, cfg.step_init, cfg.tol_local)
}

/// Which side of x₀ a Frobenius start lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// x = x₀ − eps, towards the origin.
    Inner,
    /// x = x₀ + eps.
    Outer,
}

/// Local solutions at the regular singular point x = x₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// φ₁ = s + O(s²), vanishing at x₀.
    Regular,
    /// φ₂ = 1 + A s ln|s| + O(s), finite and nonzero at x₀.
    Logarithmic,
}

/// Power-series coefficients of the two local solutions of
/// s ψ'' = (A + κ² s) ψ, s = x − x₀:
///
/// φ₁ = Σ c_k s^{k+1}, c₀ = 1, j(j+1) c_j = A c_{j−1} + κ² c_{j−2};
/// φ₂ = A φ₁ ln|s| + Σ d_k s^k, d₀ = 1, d₁ = 0,
/// j(j+1) d_{j+1} = A d_j + κ² d_{j−1} − (2j+1) A c_j.
#[derive(Debug, Clone)]
pub struct Frobenius {
    pub big_a: f64,
    c: Vec<f64>,
    d: Vec<f64>,
}

impl Frobenius {
    pub fn new(big_a: f64, kappa: f64, terms: usize) -> Self {
        let k2 = kappa * kappa;
        let mut c = vec![1.0; terms];
        for j in 1..terms {
            let prev2 = if j >= 2 { c[j - 2] } else { 0.0 };
            c[j] = (big_a * c[j - 1] + k2 * prev2) / (j * (j + 1)) as f64;
        }
        let mut d = vec![0.0; terms];
        d[0] = 1.0;
        for j in 1..terms - 1 {
            d[j + 1] = (big_a * d[j] + k2 * d[j - 1] - (2 * j + 1) as f64 * big_a * c[j]) / (j * (j + 1)) as f64;
        }
        Self { big_a, c, d }
    }

    /// (φ₁, φ₁') at s.
    pub fn regular(&self, s: f64) -> (f64, f64) {
        let (mut v, mut dv, mut pw) = (0.0, 0.0, 1.0);
        for (k, ck) in self.c.iter().enumerate() {
            dv += (k + 1) as f64 * ck * pw;
            pw *= s;
            v += ck * pw;
        }
        (v, dv)
    }

    /// (φ₂, φ₂') at s ≠ 0.
    pub fn logarithmic(&self, s: f64) -> (f64, f64) {
        let (p1, dp1) = self.regular(s);
        let l = s.abs().ln();
        let (mut v, mut dv, mut pw) = (self.d[0], 0.0, 1.0);
        for (k, dk) in self.d.iter().enumerate().skip(1) {
            dv += k as f64 * dk * pw;
            pw *= s;
            v += dk * pw;
        }
        (self.big_a * p1 * l + v, self.big_a * (dp1 * l + p1 / s) + dv)
    }

    /// Coefficients (c₁, c₂) with (y, dy) = c₁ φ₁ + c₂ φ₂ at s.
    pub fn decompose(&self, s: f64, y: f64, dy: f64) -> (f64, f64) {
        let (p1, dp1) = self.regular(s);
        let (p2, dp2) = self.logarithmic(s);
        let w = p1 * dp2 - dp1 * p2;
        ((y * dp2 - dy * p2) / w, (p1 * dy - dp1 * y) / w)
    }
}

/// (ψ, ψ') of a local solution at x₀ ∓ eps.
pub fn frobenius_start(
    p: &ModelParams,
    energy: f64,
    side: Side,
    branch: Branch,
    eps: f64,
    terms: usize,
) -> Result<(f64, f64)> {
    let h = HypergeomArgs::new(p, energy)?;
    if h.x0 <= 0.0 {
        return Err(Error::RegimeMismatch { regime: "interval/whole", alpha: p.alpha, energy });
    }
    if !(eps > 0.0) || eps * (h.big_a.abs() + h.kappa) > 0.5 {
        return Err(Error::InvalidParameter(format!("offset {eps} too large for the local series")));
    }
    let fr = Frobenius::new(h.big_a, h.kappa, terms);
    let s = match side {
        Side::Inner => -eps,
        Side::Outer => eps,
    };
    Ok(match branch {
        Branch::Regular => fr.regular(s),
        Branch::Logarithmic => fr.logarithmic(s),
    })
}

fn normalised_wronskian(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 * b.1 - a.1 * b.0) / (a.0.hypot(a.1) * b.0.hypot(b.1))
}

fn parity_start(parity: Parity) -> (f64, f64) {
    match parity {
        Parity::Odd => (0.0, 1.0),
        Parity::Even => (1.0, 0.0),
    }
}

fn parity_mismatch(parity: Parity, y: f64, dy: f64) -> f64 {
    let n = y.hypot(dy);
    match parity {
        Parity::Odd => y / n,
        Parity::Even => dy / n,
    }
}

/// Geometry of a shooting problem at one energy.
struct Setup {
    eq: Equation,
    kappa: f64,
    a: f64,
    x_far: f64,
    eps: f64,
}

impl Setup {
    fn new(p: &ModelParams, regime: Regime, energy: f64, cfg: &ShootingConfig) -> Result<Self> {
        cfg.validate()?;
        if !regime.admits(p.alpha, energy) {
            return Err(Error::RegimeMismatch { regime: regime.short_name(), alpha: p.alpha, energy });
        }
        let h = HypergeomArgs::new(p, energy)?;
        let eq = Equation::new(p, energy)?;
        let reach = cfg.far_decay_lengths / h.kappa;
        let x_far = match regime {
            Regime::NegRatio => reach.max(h.x0 + h.big_a / h.etilde + reach),
            _ => h.x0 + reach,
        };
        Ok(Self { eq, kappa: h.kappa, a: h.a, x_far, eps: cfg.eps_rel * h.x0.abs() })
    }

    /// Decaying solution started at x_far from ψ'/ψ = (1 − a)/s − κ.
    fn inward(&self, to: f64, cfg: &ShootingConfig) -> Result<Trajectory> {
        let s = self.x_far - self.eq.x0;
        let slope = (1.0 - self.a) / s - self.kappa;
        dp45(|x| self.eq.q(x), self.x_far, to, 1.0, slope, cfg.step_init, cfg.tol_local)
    }

    fn frobenius(&self, cfg: &ShootingConfig) -> Frobenius {
        Frobenius::new(self.eq.big_a, self.kappa, cfg.frobenius_terms)
    }

    /// Solution on [x₀ − eps, 0] for the α/E > 0 regimes, integrated towards 0.
    fn inner(&self, regime: Regime, cfg: &ShootingConfig) -> Result<Trajectory> {
        let fr = self.frobenius(cfg);
        let (y, dy) = match regime {
            Regime::PosRatioInterval => fr.regular(-self.eps),
            _ => {
                let outer = self.inward(self.eq.x0 + self.eps, cfg)?;
                let (_, y, dy) = outer.last();
                let (c1, c2) = fr.decompose(self.eps, y, dy);
                let (p1, dp1) = fr.regular(-self.eps);
                let (p2, dp2) = fr.logarithmic(-self.eps);
                (c1 * p1 + c2 * p2, c1 * dp1 + c2 * dp2)
            }
        };
        dp45(|x| self.eq.q(x), self.eq.x0 - self.eps, 0.0, y, dy, cfg.step_init, cfg.tol_local)
    }
}

/// Bounded shooting mismatch whose zeros are the eigenvalues.
///
/// α/E < 0: normalised Wronskian at x_t/2 between the parity solution from
/// the origin and the decaying solution from x_far. α/E > 0: normalised
/// ψ(0) (odd) or ψ'(0) (even) of the solution fixed at x₀, which is the
/// regular branch for the interval problem and, for the whole line, the
/// decaying exterior solution continued through x₀ with the same
/// Frobenius coefficients on both sides.
pub fn shoot_mismatch(
    p: &ModelParams,
    regime: Regime,
    parity: Parity,
    energy: f64,
    cfg: &ShootingConfig,
) -> Result<f64> {
    let setup = Setup::new(p, regime, energy, cfg)?;
    match regime {
        Regime::NegRatio => {
            let x_turn = setup.eq.x0 + setup.eq.big_a / setup.eq.etilde;
            let xm = 0.5 * x_turn;
            let (y0, dy0) = parity_start(parity);
            let out = dp45(|x| setup.eq.q(x), 0.0, xm, y0, dy0, cfg.step_init, cfg.tol_local)?;
            let inw = setup.inward(xm, cfg)?;
            let (_, yo, dyo) = out.last();
            let (_, yi, dyi) = inw.last();
            Ok(normalised_wronskian((yo, dyo), (yi, dyi)))
        }
        _ => {
            let tr = setup.inner(regime, cfg)?;
            let (_, y, dy) = tr.last();
            Ok(parity_mismatch(parity, y, dy))
        }
    }
}

/// Eigenvalue inside `bracket`, refined to |ΔE| ≤ 1e-12 m.
pub fn shoot_eigenvalue(
    p: &ModelParams,
    regime: Regime,
    parity: Parity,
    bracket: (f64, f64),
    cfg: &ShootingConfig,
) -> Result<f64> {
    let (mut lo, mut hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    let f = |e: f64| shoot_mismatch(p, regime, parity, e, cfg);
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSolution(format!("no sign change of the shooting mismatch in [{lo}, {hi}]")));
    }
    while hi - lo > 1e-12 * p.m {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The eigenfunction on [0, x_far] (α/E < 0 and whole line) or [0, x₀)
/// (interval) assembled from the shooting pieces, ordered by increasing x
/// and scaled to max |ψ| = 1.
pub fn shoot_state(
    p: &ModelParams,
    regime: Regime,
    parity: Parity,
    energy: f64,
    cfg: &ShootingConfig,
) -> Result<Trajectory> {
    let setup = Setup::new(p, regime, energy, cfg)?;
    let mut tr = Trajectory::default();
    let append = |tr: &mut Trajectory, part: &Trajectory, c: f64| {
        for i in 0..part.x.len() {
            tr.push(part.x[i], c * part.y[i], c * part.dy[i]);
        }
    };
    let reversed = |t: Trajectory| Trajectory {
        x: t.x.into_iter().rev().collect(),
        y: t.y.into_iter().rev().collect(),
        dy: t.dy.into_iter().rev().collect(),
    };
    match regime {
        Regime::NegRatio => {
            let xm = 0.5 * (setup.eq.x0 + setup.eq.big_a / setup.eq.etilde);
            let (y0, dy0) = parity_start(parity);
            let out = dp45(|x| setup.eq.q(x), 0.0, xm, y0, dy0, cfg.step_init, cfg.tol_local)?;
            let inw = reversed(setup.inward(xm, cfg)?);
            let (_, yo, dyo) = out.last();
            let c = if yo.abs() >= dyo.abs() { yo / inw.y[0] } else { dyo / inw.dy[0] };
            append(&mut tr, &out, 1.0);
            append(
                &mut tr,
                &Trajectory { x: inw.x[1..].to_vec(), y: inw.y[1..].to_vec(), dy: inw.dy[1..].to_vec() },
                c,
            );
        }
        Regime::PosRatioInterval => {
            append(&mut tr, &reversed(setup.inner(regime, cfg)?), 1.0);
        }
        Regime::PosRatioWholeSpace => {
            let inner = reversed(setup.inner(regime, cfg)?);
            let outer = reversed(setup.inward(setup.eq.x0 + setup.eps, cfg)?);
            append(&mut tr, &inner, 1.0);
            append(&mut tr, &outer, 1.0);
        }
    }
    let peak = tr.y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak > 0.0 {
        tr.scale(1.0 / peak);
    }
    Ok(tr)
}
