//! Tricomi's confluent hypergeometric function U(a, b, z) for integer b.
//!
//! * z > 0: large-z asymptotic expansion when it converges, otherwise the
//!   logarithmic series for b = n + 1.
//! * z < 0: the value on the upper edge of the branch cut (z + i0). The real
//!   part comes from a scaled form G = Γ(a − n) Re U that stays finite for
//!   large a; the imaginary part is π(−1)^b ₁F₁(a; b; z) / (n! Γ(a − n)).
//! * b = 0 reduces to b = 2 via U(a, 0, z) = z U(a + 1, 2, z).

use std::f64::consts::PI;

use super::bessel::bessel_y;
use super::continuation::{continue_solution, series_loss, start_point, LOSS_THRESHOLD};
use super::gamma::{cos_pi, digamma, gamma, ln_gamma, rgamma, sin_pi};
use super::kummer::kummer_m_with;
use super::{FuncEvalConfig, SpecFunError, SpecFunResult};

/// Complex value of U; `im` vanishes for z > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UValue {
    pub re: f64,
    pub im: f64,
}

fn check_b(b: i32) -> SpecFunResult<u32> {
    match b {
        0..=3 => Ok(b as u32),
        _ => Err(SpecFunError::Parameter(format!("U(a, b, z) is implemented for b ∈ {{0, 1, 2, 3}}, got {b}"))),
    }
}

fn check_z(z: f64) -> SpecFunResult<()> {
    if z == 0.0 || !z.is_finite() {
        return Err(SpecFunError::Domain(format!("U(a, b, z) needs finite z ≠ 0, got {z}")));
    }
    Ok(())
}

fn parity(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Pieces of Σₖ tₖ [ln w + ψ*(c+k) − ψ(1+k) − ψ(n+1+k)] with
/// tₖ = (c)ₖ wᵏ / ((n+1)ₖ k!), where ψ* is ψ on [½, ∞) and ψ(1 − ·) below.
struct LogSeries {
    main: f64,
    /// Σ tₖ over k < `split`, the terms where c + k < ½.
    low: f64,
    /// Σ tₖ / δ over k ≥ `split`, δ = c + split − 1 (δ = 1 when split = 0).
    high: f64,
    delta: f64,
    split: usize,
}

fn log_series(c: f64, n: u32, w: f64, cfg: &FuncEvalConfig) -> SpecFunResult<LogSeries> {
    let split = if c >= 0.5 { 0 } else { (0.5 - c).ceil() as usize };
    let delta = if split == 0 { 1.0 } else { c + split as f64 - 1.0 };
    let lw = w.ln();
    let nf = f64::from(n);
    let mut psi_k1 = digamma(1.0)?;
    let mut psi_kn = digamma(nf + 1.0)?;
    // t is the true term, tr the term with the factor δ removed once k ≥ split
    let mut t = 1.0_f64;
    let mut tr = if split == 0 { 1.0 } else { 0.0 };
    let (mut main, mut low, mut high) = (0.0, 0.0, 0.0);
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        if k > 0 {
            let step = w / ((nf + kf) * kf);
            let ck = c + kf - 1.0;
            t *= ck * step;
            if k == split {
                // first term past the split: rebuild without the δ factor
                tr = t / ck;
                if ck == 0.0 {
                    tr = reduced_term(c, n, w, k);
                }
            } else {
                tr *= ck * step;
            }
            psi_k1 += 1.0 / kf;
            psi_kn += 1.0 / (nf + kf);
        }
        let ck = c + kf;
        let psi_star = if ck >= 0.5 { digamma(ck)? } else { digamma(1.0 - ck)? };
        let bracket = lw + psi_star - psi_k1 - psi_kn;
        let contrib = t * bracket;
        main += contrib;
        if k < split {
            low += t;
        } else {
            high += tr;
        }
        if !main.is_finite() || !high.is_finite() {
            return Err(SpecFunError::Overflow(format!("log series c = {c}, w = {w}")));
        }
        let next_ratio = (c + kf) * w / ((nf + kf + 1.0) * (kf + 1.0));
        let tail_monotone = k + 1 >= split || 2.0 * w < split as f64;
        let small = contrib.abs() <= cfg.series_tol * main.abs().max(1e-300)
            && t.abs() <= cfg.series_tol * low.abs().max(1e-300).max(main.abs())
            && tr.abs() <= cfg.series_tol * high.abs().max(1e-300);
        if (t == 0.0 && tr == 0.0) || (tail_monotone && next_ratio.abs() < 0.5 && small) {
            return Ok(LogSeries { main, low, high, delta, split });
        }
    }
    Err(SpecFunError::NonConvergence(cfg.max_terms))
}

/// tₖ/δ computed from scratch for the (rare) case where the division is 0/0.
fn reduced_term(c: f64, n: u32, w: f64, k: usize) -> f64 {
    let mut p = 1.0;
    for j in 0..k {
        let f = c + j as f64;
        if j + 1 != k {
            p *= f;
        }
        p *= w / ((f64::from(n) + 1.0 + j as f64) * (j as f64 + 1.0));
    }
    p
}

/// Γ(n) Σ_{k<n} (a − n)ₖ w^{k−n} / (k! (1 − n)ₖ) for n ≥ 1 (zero for n = 0).
fn principal_part(a: f64, n: u32, w: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = f64::from(n);
    let mut term = factorial(n - 1) * w.powi(-(n as i32));
    let mut sum = term;
    for k in 0..(n - 1) {
        let kf = f64::from(k);
        term *= (a - nf + kf) * w / ((kf + 1.0) * (1.0 - nf + kf));
        sum += term;
    }
    sum
}

/// Large-z expansion z^{−a} Σ (a)ₖ(a−b+1)ₖ/k! (−1/z)ᵏ. Returns `None` when
/// the terms start growing again before reaching the tolerance, or when the
/// largest term would cost more than six digits.
fn asymptotic(a: f64, b: f64, z: f64, cfg: &FuncEvalConfig) -> Option<f64> {
    let a1 = a - b + 1.0;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut biggest = 1.0_f64;
    let mut prev = f64::INFINITY;
    // terms may grow while the Pochhammer factors are still negative
    let settle = (-a).max(0.0) + (-a1).max(0.0);
    for k in 0..cfg.max_terms.min(2000) {
        let kf = k as f64;
        term *= -(a + kf) * (a1 + kf) / ((kf + 1.0) * z);
        sum += term;
        biggest = biggest.max(term.abs());
        if term == 0.0 || term.abs() <= cfg.series_tol * sum.abs() {
            let scale = z.powf(-a);
            let ok = scale.is_finite() && biggest <= 1e6 * sum.abs();
            return ok.then_some(scale * sum);
        }
        if kf > settle && term.abs() > prev {
            return None;
        }
        prev = term.abs();
    }
    None
}

/// U(a, n+1, w) for w > 0 by the logarithmic series.
fn positive_log(a: f64, n: u32, w: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    let ls = log_series(a, n, w, cfg)?;
    let sgn_b = parity(n + 1);
    let first = rgamma(a) * principal_part(a, n, w);
    let mut second = rgamma(a - f64::from(n)) * ls.main;
    if ls.split > 0 {
        let g = gamma(1.0 + f64::from(n) - a)?;
        second -= parity(n) * cos_pi(a) * g * ls.low;
    }
    Ok(first + sgn_b / factorial(n) * second)
}

fn positive(a: f64, b: u32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    if b == 0 {
        return Ok(z * positive(a + 1.0, 2, z, cfg)?);
    }
    if z >= cfg.asymptotic_switch {
        if let Some(v) = asymptotic(a, f64::from(b), z, cfg) {
            return Ok(v);
        }
    }
    if a >= 1.0 {
        return integral_scaled(a, f64::from(b), z, ln_gamma(a)?);
    }
    if a < 0.0 && series_loss(a, z) > LOSS_THRESHOLD {
        let h = positive_over_gamma(a, b, z, cfg)?;
        let v = h * gamma(f64::from(b) - a)?;
        if !v.is_finite() {
            return Err(SpecFunError::Overflow(format!("U({a}, {b}, {z})")));
        }
        return Ok(v);
    }
    positive_log(a, b - 1, z, cfg)
}

/// exp(−ln_scale) Γ(a) U(a, b, z) from the integral
/// Γ(a) U = ∫₀^∞ e^{−zt} t^{a−1} (1+t)^{b−a−1} dt (a > 0, z > 0),
/// by exp-sinh quadrature centred on the peak of the integrand.
fn integral_scaled(a: f64, b: f64, z: f64, ln_scale: f64) -> SpecFunResult<f64> {
    let c = b - a - 1.0;
    let ln_f = |t: f64| (a - 1.0) * t.ln() - z * t + c * t.ln_1p();
    // stationary point of ln f, solved from z t² + (z − a + 1 − c) t − (a − 1) = 0
    let p = z - (a - 1.0) - c;
    let q = -(a - 1.0);
    let disc = (p * p - 4.0 * z * q).max(0.0);
    let mut centre = if a > 1.0 { (-p + disc.sqrt()) / (2.0 * z) } else { 1.0 / z.max(1e-3) };
    if !(centre > 0.0) || !centre.is_finite() {
        centre = 1.0 / z;
    }
    let peak = ln_f(centre);
    let eval = |u: f64| -> f64 {
        let e = 0.5 * std::f64::consts::PI * u.sinh();
        if e.abs() > 700.0 {
            return 0.0;
        }
        let s = e.exp();
        let t = centre * s;
        let w = 0.5 * std::f64::consts::PI * u.cosh() * t;
        let v = (ln_f(t) - peak).exp() * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    loop {
        let (l, r) = (eval(k as f64 * h), eval(-(k as f64) * h));
        sum += l + r;
        if (l.abs() + r.abs()) < 1e-18 * sum.abs() && k as f64 * h > 1.0 || k as f64 * h > 6.0 {
            break;
        }
        k += 1;
    }
    let mut integral = sum * h;
    for _ in 0..10 {
        // halve the step: add the odd-indexed nodes
        let mut extra = 0.0;
        let mut j = 1;
        loop {
            let u = j as f64 * h * 0.5;
            let (l, r) = (eval(u), eval(-u));
            extra += l + r;
            if (l.abs() + r.abs()) < 1e-18 * sum.abs() && u > 1.0 || u > 6.0 {
                break;
            }
            j += 2;
        }
        sum += extra;
        h *= 0.5;
        let next = sum * h;
        let done = (next - integral).abs() <= 1e-15 * next.abs();
        integral = next;
        if done {
            let v = integral * (peak - ln_scale).exp();
            return if v.is_finite() { Ok(v) } else { Err(SpecFunError::Overflow(format!("U({a}, {b}, {z})"))) };
        }
    }
    Err(SpecFunError::NonConvergence(10))
}

/// U(a, n+1, w) / Γ(n+1−a) by the logarithmic series, for a < n + 1.
fn positive_log_over_gamma(a: f64, n: u32, w: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    let nf = f64::from(n);
    let ls = log_series(a, n, w, cfg)?;
    // 1/(Γ(x)Γ(1−x)) = sin(πx)/π removes the large gamma factors
    let mut second = sin_pi(a - nf) / PI * ls.main;
    if ls.split > 0 {
        second -= parity(n) * cos_pi(a) * ls.low;
    }
    let lead = if n == 0 {
        0.0
    } else if a >= 0.5 {
        rgamma(a) / gamma(1.0 + nf - a)?
    } else {
        let poch: f64 = (0..n).map(|j| 1.0 - a + f64::from(j)).product();
        sin_pi(a) / (PI * poch)
    };
    Ok(lead * principal_part(a, n, w) + parity(n + 1) / factorial(n) * second)
}

/// U(a, b, z) / Γ(b − a) for z > 0 and a < b; finite for large negative a.
fn positive_over_gamma(a: f64, b: u32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    if b == 0 {
        return Ok(z * positive_over_gamma(a + 1.0, 2, z, cfg)?);
    }
    if z >= cfg.asymptotic_switch {
        if let Some(v) = asymptotic(a, f64::from(b), z, cfg) {
            return Ok(v * rgamma(f64::from(b) - a));
        }
    }
    if a < 0.0 && series_loss(a, z) > LOSS_THRESHOLD {
        let zs = start_point(a, z);
        let y = positive_log_over_gamma(a, b - 1, zs, cfg)?;
        // U' = −a U(a+1, b+1) and b − a is unchanged by the shift
        let dy = -a * positive_log_over_gamma(a + 1.0, b, zs, cfg)?;
        return Ok(continue_solution(a, f64::from(b), zs, y, dy, z)?.0);
    }
    positive_log_over_gamma(a, b - 1, z, cfg)
}

/// G = Γ(a − n) Re U(a, n+1, z) for z < 0 and a > n, continued along the
/// ODE when the series would cancel badly.
fn negative_scaled_any(a: f64, n: u32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    if series_loss(a, z) > LOSS_THRESHOLD {
        let zs = start_point(a, z);
        let y = negative_scaled(a, n, zs, cfg)?;
        // Γ(a−n) U'(a, n+1) = −a Γ((a+1)−(n+1)) U(a+1, n+2)
        let dy = -a * negative_scaled(a + 1.0, n + 1, zs, cfg)?;
        return Ok(continue_solution(a, f64::from(n + 1), zs, y, dy, z)?.0);
    }
    negative_scaled(a, n, z, cfg)
}

/// G = Γ(a − n) Re U(a, n+1, z) on z < 0, valid for a − n > 0.
fn negative_scaled(a: f64, n: u32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    let nf = f64::from(n);
    let w = -z;
    let c = nf + 1.0 - a;
    let sgn_b = parity(n + 1);
    let ew = (-w).exp();
    let ls = log_series(c, n, w, cfg)?;
    let mut ratio = 1.0;
    for j in 1..=n {
        ratio /= a - f64::from(j);
    }
    let t_pole = -sgn_b * ew * ratio * principal_part(c, n, w);
    let t_main = sgn_b / factorial(n) * ew * ls.main;
    let t_cot = if ls.split > 0 {
        let d = ls.delta;
        let pdcot = if d.abs() < 1e-8 { 1.0 - (PI * d).powi(2) / 3.0 } else { PI * d * cos_pi(d) / sin_pi(d) };
        sgn_b / factorial(n) * ew * pdcot * ls.high
    } else {
        -sgn_b * PI * cos_pi(a) / sin_pi(a) / factorial(n) * ew * ls.high
    };
    Ok(t_pole + t_main + t_cot)
}

/// Re U(a, n+1, z) on z < 0 for a ≤ n via the connection with U(b − a, b, −z).
fn negative_direct(a: f64, n: u32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    let b = f64::from(n + 1);
    let m = kummer_m_with(a, b, z, cfg)?;
    let u = positive(b - a, n + 1, -z, cfg)?;
    let g = gamma(b - a)?;
    Ok(g * (cos_pi(a) * m / factorial(n) - parity(n + 1) * z.exp() * u * rgamma(a)))
}

fn negative_re(a: f64, b: u32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    if b == 0 {
        return Ok(z * negative_re(a + 1.0, 2, z, cfg)?);
    }
    let n = b - 1;
    let excess = a - f64::from(n);
    if excess > 0.0 {
        let g = negative_scaled_any(a, n, z, cfg)?;
        Ok(g * rgamma(excess))
    } else {
        negative_direct(a, n, z, cfg)
    }
}

fn negative_im(a: f64, b: u32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    if b == 0 {
        return Ok(z * negative_im(a + 1.0, 2, z, cfg)?);
    }
    let n = b - 1;
    let r = rgamma(a - f64::from(n));
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(PI * parity(b) * r / factorial(n) * kummer_m_with(a, f64::from(b), z, cfg)?)
}

/// U(a, b, z) with default tolerances.
pub fn tricomi_u(a: f64, b: i32, z: f64) -> SpecFunResult<UValue> {
    tricomi_u_with(a, b, z, &FuncEvalConfig::default())
}

/// U(a, b, z) for b ∈ {0, 1, 2, 3}, any real a and real z ≠ 0.
/// For z < 0 the value on the upper side of the cut is returned.
pub fn tricomi_u_with(a: f64, b: i32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<UValue> {
    let b = check_b(b)?;
    check_z(z)?;
    if z > 0.0 {
        return Ok(UValue { re: positive(a, b, z, cfg)?, im: 0.0 });
    }
    Ok(UValue { re: negative_re(a, b, z, cfg)?, im: negative_im(a, b, z, cfg)? })
}

/// Γ(a − b + 1) Re U(a, b, z) with default tolerances.
pub fn tricomi_u_re_scaled(a: f64, b: i32, z: f64) -> SpecFunResult<f64> {
    tricomi_u_re_scaled_with(a, b, z, &FuncEvalConfig::default())
}

/// Γ(a − b + 1) Re U(a, b, z), requiring a − b + 1 > 0. On z < 0 this stays
/// finite and accurate for large a where U itself under- or overflows.
pub fn tricomi_u_re_scaled_with(a: f64, b: i32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    let bu = check_b(b)?;
    check_z(z)?;
    let excess = a - f64::from(b) + 1.0;
    if !(excess > 0.0) {
        return Err(SpecFunError::Parameter(format!("scaled U needs a − b + 1 > 0, got {excess}")));
    }
    if z > 0.0 {
        let u = positive(a, bu, z, cfg)?;
        return Ok(u * ln_gamma(excess)?.exp());
    }
    if bu == 0 {
        // Γ(a + 1) U(a, 0, z) = a z Γ(a) U(a + 1, 2, z)
        return Ok(a * z * negative_scaled_any(a + 1.0, 1, z, cfg)?);
    }
    negative_scaled_any(a, bu - 1, z, cfg)
}

/// U(a, b, z) / Γ(b − a) for z > 0, requiring b − a > 0. Stays finite for
/// large negative a, where U itself grows like Γ(b − a).
pub fn tricomi_u_over_gamma(a: f64, b: i32, z: f64) -> SpecFunResult<f64> {
    tricomi_u_over_gamma_with(a, b, z, &FuncEvalConfig::default())
}

pub fn tricomi_u_over_gamma_with(a: f64, b: i32, z: f64, cfg: &FuncEvalConfig) -> SpecFunResult<f64> {
    let bu = check_b(b)?;
    check_z(z)?;
    if !(z > 0.0) {
        return Err(SpecFunError::Domain(format!("U/Γ(b − a) is provided for z > 0, got {z}")));
    }
    if !(f64::from(bu) - a > 0.0) {
        return Err(SpecFunError::Parameter(format!("U/Γ(b − a) needs b − a > 0, got a = {a}, b = {b}")));
    }
    if bu == 0 {
        // U(a, 0, z)/Γ(−a) = −a z U(a+1, 2, z)/Γ(1 − a)
        return Ok(-a * z * positive_over_gamma(a + 1.0, 2, z, cfg)?);
    }
    positive_over_gamma(a, bu, z, cfg)
}

/// Large-a limit of Γ(1 + a − b) Re U(a, b, −y/a):
/// π(−1)^b y^{(1−b)/2} Y_{b−1}(2√y).
pub fn tricomi_u_bessel_limit(b: i32, y: f64) -> SpecFunResult<f64> {
    let b = check_b(b)?;
    if !(y > 0.0) {
        return Err(SpecFunError::Domain(format!("Bessel limit needs y > 0, got {y}")));
    }
    let x = 2.0 * y.sqrt();
    // Y₋₁ = −Y₁
    let yv = if b == 0 { -bessel_y(1, x)? } else { bessel_y(b - 1, x)? };
    Ok(PI * parity(b) * y.powf(0.5 * (1.0 - f64::from(b))) * yv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn elementary_cases() {
        // U(1, 2, z) = 1/z; U(a, a+1, z) = z^{−a}
        for &z in &[0.3, 2.0, 17.0, 60.0] {
            assert!(rel(tricomi_u(1.0, 2, z).unwrap().re, 1.0 / z) < 1e-14);
            assert!(rel(tricomi_u(2.0, 3, z).unwrap().re, z.powi(-2)) < 1e-13);
        }
    }

    #[test]
    fn negative_integer_a_is_polynomial() {
        // U(−1, b, z) = z − b
        for b in 1..=3 {
            for &z in &[-4.0, -0.5, 0.7, 9.0] {
                let u = tricomi_u(-1.0, b, z).unwrap();
                assert!((u.re - (z - f64::from(b))).abs() < 1e-12, "b={b} z={z}");
                assert!(u.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn b_zero_reduction() {
        for &(a, z) in &[(0.3, 1.5), (-2.7, 4.0), (3.2, -2.0)] {
            let u0 = tricomi_u(a, 0, z).unwrap();
            let u2 = tricomi_u(a + 1.0, 2, z).unwrap();
            assert!(rel(u0.re, z * u2.re) < 1e-14);
            assert!((u0.im - z * u2.im).abs() <= 1e-14 * u0.im.abs().max(1.0));
        }
    }

    #[test]
    fn zero_argument_is_domain_error() {
        assert!(matches!(tricomi_u(1.0, 2, 0.0), Err(SpecFunError::Domain(_))));
        assert!(matches!(tricomi_u(1.0, 4, 1.0), Err(SpecFunError::Parameter(_))));
    }

    #[test]
    fn scaled_matches_unscaled() {
        for &(a, z) in &[(1.7, -3.0), (4.25, -0.8), (12.5, -20.0)] {
            let u = tricomi_u(a, 2, z).unwrap().re;
            let s = tricomi_u_re_scaled(a, 2, z).unwrap();
            assert!(rel(s, gamma(a - 1.0).unwrap() * u) < 1e-12, "a={a} z={z}");
        }
    }
}
