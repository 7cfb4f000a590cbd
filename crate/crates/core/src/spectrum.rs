//! Exact energy equations, root search, α scans and critical strengths.
//!
//! On x ≥ 0 every solution of the effective equation that is regular at
//! infinity (or at x₀) has the form ψ = s e^{−κs} W(2κs), s = x − x₀, where
//! W solves Kummer's equation with a = 1 + A/(2κ), b = 2. With t₀ = 2κ(−x₀)
//! the parity conditions become
//!
//! * odd, ψ(0) = 0:   P = t₀ W(t₀) = 0
//! * even, ψ'(0) = 0: Q = 2[W(t₀)(1 − t₀/2) + t₀ W'(t₀)] = 0
//!
//! with W = U (α/E < 0), ₁F₁ (interval) or Re U (whole space). The residuals
//! returned by [`residual`] are P or Q divided by hypot(P, Q): they share the
//! roots of the raw equations but stay bounded, and P and Q never vanish
//! together, so every sign change is a root. [`residual_stated`] evaluates
//! the equations in their conventional unnormalised form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BoundState, EnergySign, HypergeomArgs, Method, ModelParams, Parity, Regime};
use crate::specfun::{
    bessel_j, bessel_zero, kummer_m, tricomi_u, tricomi_u_over_gamma, tricomi_u_re_scaled, BesselKind,
};
use crate::wkb::{bisect, WkbCondition};

/// Largest accepted |residual| at a reported root.
pub const RESIDUAL_BOUND: f64 = 1e-9;

fn check_energy(p: &ModelParams, regime: Regime, energy: f64) -> Result<()> {
    p.validate()?;
    if p.alpha == 0.0 {
        return Err(Error::InvalidParameter("alpha = 0 has no bound states".into()));
    }
    let lo = p.eps_e;
    let hi = p.m - p.eps_e;
    if !(energy.abs() >= lo && energy.abs() <= hi) {
        let (l, h) = if energy < 0.0 { (-hi, -lo) } else { (lo, hi) };
        return Err(Error::OutsideWindow { energy, lo: l, hi: h });
    }
    if !regime.admits(p.alpha, energy) {
        return Err(Error::RegimeMismatch { regime: regime.short_name(), alpha: p.alpha, energy });
    }
    Ok(())
}

/// (P, Q) up to a common positive factor, in the sign convention of the
/// normalised residual.
fn boundary_pair(p: &ModelParams, regime: Regime, energy: f64) -> Result<(f64, f64)> {
    check_energy(p, regime, energy)?;
    let h = HypergeomArgs::new(p, energy)?;
    let (a, t) = (h.a, h.z0());
    Ok(match regime {
        // U/Γ(2 − a) for both terms; Γ(2 − a) > 0 because a < 1
        Regime::NegRatio => {
            let w = tricomi_u_over_gamma(a, 2, t)?;
            let v = tricomi_u_over_gamma(a - 1.0, 1, t)?;
            (t * w, t * w - 2.0 * v)
        }
        // Γ(a − 1) Re U for both terms; Γ(a − 1) > 0 because a > 1
        Regime::PosRatioWholeSpace => {
            let w = tricomi_u_re_scaled(a, 2, t)?;
            let v = tricomi_u_re_scaled(a - 1.0, 1, t)?;
            (-t * w, t * w - 2.0 * v)
        }
        Regime::PosRatioInterval => {
            let w = kummer_m(a, 2.0, t)?;
            let dw = 0.5 * a * kummer_m(a + 1.0, 3.0, t)?;
            (-t * w, -2.0 * (w * (1.0 - 0.5 * t) + t * dw))
        }
    })
}

/// Normalised residual in [−1, 1]; zero exactly at bound states.
pub fn residual(p: &ModelParams, regime: Regime, parity: Parity, energy: f64) -> Result<f64> {
    let (odd, even) = boundary_pair(p, regime, energy)?;
    let norm = odd.hypot(even);
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::NoSolution(format!("residual not representable at E = {energy}")));
    }
    Ok(match parity {
        Parity::Odd => odd / norm,
        Parity::Even => even / norm,
    })
}

pub fn residual_negratio(p: &ModelParams, energy: f64, parity: Parity) -> Result<f64> {
    residual(p, Regime::NegRatio, parity, energy)
}

pub fn residual_interval(p: &ModelParams, energy: f64, parity: Parity) -> Result<f64> {
    residual(p, Regime::PosRatioInterval, parity, energy)
}

pub fn residual_wholespace(p: &ModelParams, energy: f64, parity: Parity) -> Result<f64> {
    residual(p, Regime::PosRatioWholeSpace, parity, energy)
}

/// The energy equations in their textbook form:
///
/// * α/E < 0: U(a, 2, t₀) and U(a − 1, 0, t₀) − 2U(a − 1, 1, t₀)
/// * interval: ₁F₁(a, 2, t₀) and
///   −4E(2E + ακ) ₁F₁(a, 2, t₀) + α(4Eκ + α(m + E)²) ₁F₁(a + 1, 3, t₀)
/// * whole space: real parts of the α/E < 0 expressions.
pub fn residual_stated(p: &ModelParams, regime: Regime, parity: Parity, energy: f64) -> Result<f64> {
    check_energy(p, regime, energy)?;
    let h = HypergeomArgs::new(p, energy)?;
    let (a, t, e, k, al) = (h.a, h.z0(), energy, h.kappa, p.alpha);
    Ok(match (regime, parity) {
        (Regime::PosRatioInterval, Parity::Odd) => kummer_m(a, 2.0, t)?,
        (Regime::PosRatioInterval, Parity::Even) => {
            -4.0 * e * (2.0 * e + al * k) * kummer_m(a, 2.0, t)?
                + al * (4.0 * e * k + al * (p.m + e).powi(2)) * kummer_m(a + 1.0, 3.0, t)?
        }
        (_, Parity::Odd) => tricomi_u(a, 2, t)?.re,
        (_, Parity::Even) => tricomi_u(a - 1.0, 0, t)?.re - 2.0 * tricomi_u(a - 1.0, 1, t)?.re,
    })
}

/// Root-search settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Highest quantum number searched for.
    pub n_max: u32,
    /// Grid points per π of WKB phase.
    pub points_per_pi: usize,
    /// Worker threads for α scans (1 = sequential).
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { n_max: 20, points_per_pi: 200, threads: 4 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        if self.points_per_pi < 8 {
            return Err(Error::InvalidParameter("points_per_pi must be at least 8".into()));
        }
        Ok(())
    }
}

/// A refined root together with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoundState {
    pub alpha: f64,
    pub state: BoundState,
    pub residual: f64,
    pub wkb_energy: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub states: Vec<FoundState>,
    pub warnings: Vec<String>,
}

/// Number of exact critical strengths below α: states with these indices
/// have crossed into the continuum (α/E > 0, E > 0 only).
pub fn states_lost_to_continuum(regime: Regime, parity: Parity, alpha: f64) -> Result<u32> {
    if !regime.is_pos_ratio() || alpha <= 0.0 {
        return Ok(0);
    }
    let mut k = 0;
    while critical_alpha_exact(regime, parity, k + 1)? < alpha {
        k += 1;
    }
    Ok(k)
}

/// All bound states of one (regime, parity) sector with n ≤ n_max.
///
/// The energy grid is uniform in the WKB phase, so it stays dense where
/// levels accumulate. Sign changes are refined by bisection down to
/// adjacent floating-point numbers. Numbering follows the WKB index:
/// for α/E < 0, n = 1 is the deepest level and n grows towards E = m; for
/// α/E > 0 with E > 0, n = 1 is the level closest to E = m, shifted by the
/// levels already absorbed into the continuum, and n grows towards the flat
/// band; for E < 0, n = 1 is the level closest to E = −m.
pub fn find_bound_states(p: &ModelParams, regime: Regime, parity: Parity, cfg: &SearchConfig) -> Result<SearchReport> {
    p.validate()?;
    cfg.validate()?;
    let mut report = SearchReport::default();
    if p.alpha == 0.0 {
        return Ok(report);
    }
    if regime == Regime::NegRatio && p.alpha > 0.0 {
        return Err(Error::InvalidParameter(format!(
            "regime neg is searched with E > 0 and needs alpha < 0, got {}",
            p.alpha
        )));
    }
    let cond = WkbCondition::for_alpha(regime, parity, p.alpha)?;
    let offset = states_lost_to_continuum(regime, parity, p.alpha)?;
    let (wlo, whi) = cond.window(p);
    let sparse_edge = if cond.increasing() { wlo } else { whi };
    let phase_start = if cond.increasing() { 0.02 * PI } else { cond.phase(p, sparse_edge)? };
    let phase_end = (cfg.n_max as f64 + 1.5) * PI;
    if phase_start >= phase_end {
        report.warnings.push(format!("alpha = {}: no level below n = {} fits the gap", p.alpha, cfg.n_max));
        return Ok(report);
    }

    let count = ((phase_end - phase_start) / PI * cfg.points_per_pi as f64).ceil() as usize;
    let mut grid = Vec::with_capacity(count + 2);
    if !cond.increasing() {
        grid.push(sparse_edge);
    }
    for i in 0..=count {
        let target = phase_start + (phase_end - phase_start) * i as f64 / count as f64;
        if let Ok(e) = cond.energy_for_phase(p, target) {
            grid.push(e);
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let f = |e: f64| residual(p, regime, parity, e);
    let mut samples = Vec::with_capacity(grid.len());
    let mut failed = Vec::new();
    for &e in &grid {
        match f(e) {
            Ok(r) => samples.push((e, r)),
            Err(_) => failed.push(e),
        }
    }
    // A failed point can hide a root only if a level's WKB phase lies
    // between it and the nearest evaluated point.
    let hides_level = |e: f64| -> bool {
        let Some(&(near, _)) = samples.iter().min_by(|a, b| (a.0 - e).abs().total_cmp(&(b.0 - e).abs())) else {
            return true;
        };
        let (Ok(a), Ok(b)) = (cond.phase(p, e), cond.phase(p, near)) else { return true };
        let (lo, hi) = (a.min(b) / PI - cond.delta, a.max(b) / PI - cond.delta);
        hi.floor() >= lo.ceil().max(1.0)
    };
    let interior = |e: f64| samples.first().is_some_and(|s| s.0 < e) && samples.last().is_some_and(|s| s.0 > e);
    let risky = failed.iter().filter(|&&e| interior(e) || hides_level(e)).count();
    if risky > 0 {
        report.warnings.push(format!("alpha = {}: {risky} grid points could not be evaluated", p.alpha));
    }

    let mut roots = Vec::new();
    for w in samples.windows(2) {
        let ((e0, r0), (e1, r1)) = (w[0], w[1]);
        if r0 == 0.0 {
            roots.push((e0, 0.0));
        } else if r0.signum() != r1.signum() && r1 != 0.0 {
            roots.push(refine(&f, e0, e1, r0)?);
        }
    }
    if let Some(&(e, r)) = samples.last() {
        if r == 0.0 {
            roots.push((e, 0.0));
        }
    }
    if !cond.increasing() {
        roots.reverse();
    }

    for (i, (energy, res)) in roots.into_iter().enumerate() {
        let n = offset + i as u32 + 1;
        if n > cfg.n_max {
            break;
        }
        if res.abs() > RESIDUAL_BOUND {
            report.warnings.push(format!("E = {energy}: residual {res:.3e} exceeds the bound"));
        }
        let wkb_phase = cond.phase(p, energy)?;
        let wkb_n = (wkb_phase / PI - cond.delta).round();
        if wkb_n != n as f64 {
            report.warnings.push(format!(
                "alpha = {}, {parity}: root E = {energy:.10} labelled n = {n} but WKB suggests n = {wkb_n}",
                p.alpha
            ));
        }
        let wkb_energy = cond.energy_for_phase(p, cond.target(n)).ok();
        report.states.push(FoundState {
            alpha: p.alpha,
            state: BoundState { energy, n, parity, regime, method: Method::Exact },
            residual: res,
            wkb_energy,
        });
    }
    Ok(report)
}

/// Bisection to adjacent floats; returns the end with the smaller |residual|.
fn refine(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<(f64, f64)> {
    let mut fhi = f(hi)?;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, 0.0));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    Ok(if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) })
}

/// Bound states of several parity sectors, ordered by (parity, n).
pub fn find_all(p: &ModelParams, regime: Regime, parities: &[Parity], cfg: &SearchConfig) -> Result<SearchReport> {
    let mut out = SearchReport::default();
    for &parity in parities {
        let r = find_bound_states(p, regime, parity, cfg)?;
        out.states.extend(r.states);
        out.warnings.extend(r.warnings);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanFailure {
    pub alpha: f64,
    pub message: String,
}

/// Spectra over a grid of strengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumScan {
    pub alpha_grid: Vec<f64>,
    pub regime: Regime,
    pub parities: Vec<Parity>,
    /// Sorted by (α in grid order, parity, n).
    pub states: Vec<FoundState>,
    pub failures: Vec<ScanFailure>,
    pub warnings: Vec<String>,
}

/// Runs [`find_all`] at every α. Grid points are processed on up to
/// `cfg.threads` workers; the result does not depend on the thread count.
pub fn scan_alpha(
    template: &ModelParams,
    alpha_grid: &[f64],
    regime: Regime,
    parities: &[Parity],
    cfg: &SearchConfig,
) -> Result<SpectrumScan> {
    template.validate()?;
    cfg.validate()?;
    let run = |alpha: f64| find_all(&template.with_alpha(alpha), regime, parities, cfg);
    let threads = cfg.threads.clamp(1, alpha_grid.len().max(1));
    let results: Vec<Result<SearchReport>> = if threads == 1 {
        alpha_grid.iter().map(|&a| run(a)).collect()
    } else {
        let chunk = alpha_grid.len().div_ceil(threads);
        std::thread::scope(|s| {
            let handles: Vec<_> = alpha_grid
                .chunks(chunk)
                .map(|c| s.spawn(move || c.iter().map(|&a| run(a)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("scan worker panicked")).collect()
        })
    };
    let mut scan = SpectrumScan {
        alpha_grid: alpha_grid.to_vec(),
        regime,
        parities: parities.to_vec(),
        states: Vec::new(),
        failures: Vec::new(),
        warnings: Vec::new(),
    };
    for (&alpha, r) in alpha_grid.iter().zip(results) {
        match r {
            Ok(rep) => {
                scan.states.extend(rep.states);
                scan.warnings.extend(rep.warnings);
            }
            Err(e) => scan.failures.push(ScanFailure { alpha, message: e.to_string() }),
        }
    }
    Ok(scan)
}

/// Strength α at which a state of the given sector has energy E.
///
/// The WKB phase is linear in α, which gives a starting guess; the exact
/// residual is then scanned in α around it and the closest root refined.
pub fn solve_alpha_for_energy(m: f64, regime: Regime, parity: Parity, n: u32, energy: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n starts at 1".into()));
    }
    let sign = EnergySign::of(energy);
    let unit_sign = match (regime, sign) {
        (Regime::NegRatio, EnergySign::Positive) => -1.0,
        (Regime::NegRatio, EnergySign::Negative) => {
            return Err(Error::InvalidParameter(format!("regime neg is searched with E > 0, got E = {energy}")))
        }
        (_, EnergySign::Positive) => 1.0,
        (_, EnergySign::Negative) => -1.0,
    };
    let cond = WkbCondition::new(regime, sign, parity)?;
    let unit = ModelParams::new(m, unit_sign)?;
    let guess = unit_sign * cond.target(n) / cond.phase(&unit, energy)?;
    let f = |alpha: f64| residual(&unit.with_alpha(alpha), regime, parity, energy);
    let steps = 400;
    let (lo, hi) = (0.5 * guess, 1.5 * guess);
    let mut best: Option<(f64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let a = lo + (hi - lo) * i as f64 / steps as f64;
        let Ok(r) = f(a) else { continue };
        if let Some((a0, r0)) = prev {
            if r0.signum() != r.signum() {
                let root = if a0 < a { bisect(f, a0, a, r0)? } else { bisect(f, a, a0, r)? };
                if best.is_none_or(|(b, _)| (root - guess).abs() < (b - guess).abs()) {
                    best = Some((root, 0.0));
                }
            }
        }
        prev = Some((a, r));
    }
    best.map(|(a, _)| a).ok_or_else(|| Error::NoSolution(format!("no strength near {guess:.6} gives E = {energy}")))
}

/// Exact and approximate critical strength of one level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalStrength {
    pub regime: Regime,
    pub parity: Parity,
    pub k: u32,
    pub alpha_c_exact: f64,
    pub alpha_c_asymptotic: f64,
}

impl CriticalStrength {
    pub fn new(regime: Regime, parity: Parity, k: u32) -> Result<Self> {
        Ok(Self {
            regime,
            parity,
            k,
            alpha_c_exact: critical_alpha_exact(regime, parity, k)?,
            alpha_c_asymptotic: critical_alpha_asymptotic(regime, parity, k)?,
        })
    }

    pub fn rel_diff(&self) -> f64 {
        (self.alpha_c_asymptotic - self.alpha_c_exact).abs() / self.alpha_c_exact
    }
}

fn check_critical(regime: Regime, k: u32) -> Result<()> {
    if regime == Regime::NegRatio {
        return Err(Error::InvalidParameter("critical strengths exist only for alpha/E > 0".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k starts at 1".into()));
    }
    Ok(())
}

/// Strength at which level k reaches E = m.
///
/// Interval: zeros of J₁(2α) (odd) and of αJ₂(2α) − J₁(2α) (even).
/// Whole space: zeros of Y₁(2α) (odd) and Y₀(2α) (even).
pub fn critical_alpha_exact(regime: Regime, parity: Parity, k: u32) -> Result<f64> {
    check_critical(regime, k)?;
    Ok(match (regime, parity) {
        (Regime::PosRatioInterval, Parity::Odd) => 0.5 * bessel_zero(BesselKind::J, 1, k)?,
        (Regime::PosRatioInterval, Parity::Even) => interval_even_critical(k)?,
        (_, Parity::Odd) => 0.5 * bessel_zero(BesselKind::Y, 1, k)?,
        (_, Parity::Even) => 0.5 * bessel_zero(BesselKind::Y, 0, k)?,
    })
}

fn interval_even_critical(k: u32) -> Result<f64> {
    let f = |a: f64| Ok(a * bessel_j(2, 2.0 * a) - bessel_j(1, 2.0 * a));
    let step = PI / 40.0;
    let mut lo = 1e-3;
    let mut flo = f(lo)?;
    let mut found = 0;
    while lo < (k as f64 + 10.0) * PI {
        let hi = lo + step;
        let fhi = f(hi)?;
        if flo.signum() != fhi.signum() {
            found += 1;
            if found == k {
                return bisect(f, lo, hi, flo);
            }
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::NoSolution(format!("critical root {k} not bracketed")))
}

/// Large-k approximation (n + Δ)π/2 with the E > 0 offsets.
pub fn critical_alpha_asymptotic(regime: Regime, parity: Parity, n: u32) -> Result<f64> {
    check_critical(regime, n)?;
    let delta = crate::wkb::maslov_delta(regime, EnergySign::Positive, parity);
    Ok((n as f64 + delta) * PI / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64) -> ModelParams {
        ModelParams::new(1.0, alpha).unwrap()
    }

    #[test]
    fn normalised_and_stated_share_roots() {
        let cases = [
            (Regime::NegRatio, -1.0, 0.6),
            (Regime::PosRatioInterval, 0.5, 0.2),
            (Regime::PosRatioWholeSpace, 0.5, 0.3),
            (Regime::PosRatioInterval, -5.0, -0.4),
        ];
        for (regime, alpha, e) in cases {
            for parity in Parity::BOTH {
                let p = params(alpha);
                let (a, b) =
                    (residual(&p, regime, parity, e).unwrap(), residual_stated(&p, regime, parity, e).unwrap());
                assert!(a.abs() <= 1.0 && a != 0.0 && b != 0.0);
            }
        }
    }

    #[test]
    fn even_interval_is_a_multiple_of_q() {
        let p = params(0.7);
        let e = 0.3;
        let h = HypergeomArgs::new(&p, e).unwrap();
        let t = h.z0();
        let q = 2.0
            * (kummer_m(h.a, 2.0, t).unwrap() * (1.0 - 0.5 * t) + t * 0.5 * h.a * kummer_m(h.a + 1.0, 3.0, t).unwrap());
        let stated = residual_stated(&p, Regime::PosRatioInterval, Parity::Even, e).unwrap();
        assert!((stated + 4.0 * e * e * q).abs() < 1e-12 * stated.abs());
    }

    #[test]
    fn window_and_regime_checks() {
        let p = params(-1.0);
        assert!(matches!(residual(&p, Regime::NegRatio, Parity::Odd, 1.0), Err(Error::OutsideWindow { .. })));
        assert!(matches!(residual(&p, Regime::PosRatioInterval, Parity::Odd, 0.5), Err(Error::RegimeMismatch { .. })));
        assert!(residual(&params(1.0), Regime::NegRatio, Parity::Odd, 0.5).is_err());
    }

    #[test]
    fn zero_alpha_gives_empty_spectrum() {
        let r =
            find_bound_states(&params(0.0), Regime::PosRatioInterval, Parity::Odd, &SearchConfig::default()).unwrap();
        assert!(r.states.is_empty());
    }

    #[test]
    fn negratio_lowest_levels() {
        let cfg = SearchConfig { n_max: 3, ..Default::default() };
        let r = find_bound_states(&params(-1.0), Regime::NegRatio, Parity::Odd, &cfg).unwrap();
        let e: Vec<f64> = r.states.iter().map(|s| s.state.energy).collect();
        let want = [0.7430867336, 0.9136393886, 0.9570948805];
        assert_eq!(e.len(), 3, "{:?}", r.warnings);
        for (a, b) in e.iter().zip(want) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
    }

    #[test]
    fn critical_values() {
        let c = critical_alpha_exact(Regime::PosRatioInterval, Parity::Odd, 1).unwrap();
        assert!((c - 1.9158529851).abs() < 1e-9);
        let a = critical_alpha_asymptotic(Regime::PosRatioWholeSpace, Parity::Even, 1).unwrap();
        assert!((a - std::f64::consts::FRAC_PI_8).abs() < 1e-12);
        assert!(critical_alpha_exact(Regime::NegRatio, Parity::Odd, 1).is_err());
    }

    #[test]
    fn levels_lost_to_continuum() {
        assert_eq!(states_lost_to_continuum(Regime::PosRatioWholeSpace, Parity::Even, 0.3).unwrap(), 0);
        assert_eq!(states_lost_to_continuum(Regime::PosRatioWholeSpace, Parity::Even, 0.5).unwrap(), 1);
        assert_eq!(states_lost_to_continuum(Regime::NegRatio, Parity::Odd, -3.0).unwrap(), 0);
    }

    #[test]
    fn scan_is_thread_count_independent() {
        let grid = [0.05, 0.1, 0.2, 0.3, 0.4];
        let cfg1 = SearchConfig { n_max: 4, threads: 1, ..Default::default() };
        let cfg3 = SearchConfig { threads: 3, ..cfg1 };
        let a = scan_alpha(&params(1.0), &grid, Regime::PosRatioInterval, &Parity::BOTH, &cfg1).unwrap();
        let b = scan_alpha(&params(1.0), &grid, Regime::PosRatioInterval, &Parity::BOTH, &cfg3).unwrap();
        assert_eq!(a, b);
        assert!(!a.states.is_empty());
    }

    #[test]
    fn inverse_strength() {
        let alpha = solve_alpha_for_energy(1.0, Regime::NegRatio, Parity::Odd, 1, 0.7430867336).unwrap();
        assert!((alpha + 1.0).abs() < 1e-8, "{alpha}");
    }
}
