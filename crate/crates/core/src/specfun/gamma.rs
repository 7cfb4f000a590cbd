//! Gamma, reciprocal gamma and digamma for real arguments.

use std::f64::consts::PI;

use super::{SpecFunError, SpecFunResult};

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// `sin(πx)` with exact argument reduction, so that integers give exact zeros.
pub fn sin_pi(x: f64) -> f64 {
    let r = x % 2.0;
    let r = if r > 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    };
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// `cos(πx)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (Γ(x + 1) convention)
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> SpecFunResult<f64> {
    if !(x > 0.0) {
        return Err(SpecFunError::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // ln Γ(x) = ln π − ln sin(πx) − ln Γ(1 − x)
        return Ok(PI.ln() - sin_pi(x).ln() - ln_gamma(1.0 - x)?);
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (xm + 0.5) * t.ln() - t + lanczos_sum(xm).ln())
}

fn gamma_positive(x: f64) -> f64 {
    if x > 171.7 {
        return f64::INFINITY;
    }
    // exact for small integers
    if x == x.trunc() && x <= 30.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    // split the power to stay finite near the overflow edge
    let half = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(xm)
}

/// Euler Γ(x). Poles at the non-positive integers are reported as errors.
pub fn gamma(x: f64) -> SpecFunResult<f64> {
    if x.is_nan() {
        return Err(SpecFunError::Domain("gamma of NaN".into()));
    }
    if x <= 0.0 && x == x.trunc() {
        return Err(SpecFunError::Pole(x));
    }
    if x < 0.5 {
        Ok(PI / (sin_pi(x) * gamma_positive(1.0 - x)))
    } else {
        Ok(gamma_positive(x))
    }
}

/// 1/Γ(x), entire: returns 0 at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.trunc() {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * gamma_positive(1.0 - x) / PI
    } else if x > 171.7 {
        (-ln_gamma(x).unwrap_or(f64::INFINITY)).exp()
    } else {
        1.0 / gamma_positive(x)
    }
}

/// Digamma ψ(x) = Γ'(x)/Γ(x).
pub fn digamma(x: f64) -> SpecFunResult<f64> {
    if x <= 0.0 && x == x.trunc() {
        return Err(SpecFunError::Pole(x));
    }
    if x < 0.5 {
        // ψ(x) = ψ(1 − x) − π cot(πx)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma(1.0 - x)? - PI * cot);
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // Bernoulli tail: 1/12, −1/120, 1/252, −1/240, 1/132, −691/32760, 1/12
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
    Ok(acc + y.ln() - 0.5 / y - tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_small_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        let sqrt_pi = PI.sqrt();
        assert!((gamma(0.5).unwrap() - 1.772_453_850_905_516).abs() < 1e-14);
        assert!((gamma(0.5).unwrap() - sqrt_pi).abs() < 1e-14);
        assert!((gamma(-0.5).unwrap() + 3.544_907_701_811_032).abs() < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for p in [0.0, -1.0, -2.0, -17.0] {
            assert_eq!(gamma(p), Err(SpecFunError::Pole(p)));
            assert_eq!(rgamma(p), 0.0);
        }
    }

    #[test]
    fn gamma_recurrence_over_range() {
        // Γ(x+1) = xΓ(x) across |x| ≤ 50
        let mut x = -49.73;
        while x < 49.0 {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!(((lhs - rhs) / lhs).abs() < 1e-12, "x = {x}");
            x += 0.61;
        }
    }

    #[test]
    fn gamma_reflection() {
        for &x in &[0.1, 0.37, 0.77, 1.3, 2.9, 7.25] {
            let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
            let rhs = PI / (PI * x).sin();
            assert!(((lhs - rhs) / rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn ln_gamma_large() {
        // Stirling with three correction terms is accurate to ~1e-15 here
        let x: f64 = 1.0e4;
        let stirling = (x - 0.5) * x.ln() - x + LN_SQRT_2PI + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3));
        assert!((ln_gamma(x).unwrap() - stirling).abs() < 1e-9);
        assert!((rgamma(200.0) - (-ln_gamma(200.0).unwrap()).exp()).abs() < 1e-300);
    }

    #[test]
    fn rgamma_is_entire_near_poles() {
        // 1/Γ(−n + ε) ≈ (−1)^n n! ε
        let eps = 1e-9;
        let v = rgamma(-3.0 + eps);
        assert!((v - (-6.0 * eps)).abs() < 1e-15);
    }

    #[test]
    fn digamma_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(1.0).unwrap() + euler).abs() < 1e-14);
        assert!((digamma(0.5).unwrap() + euler + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(x+1) = ψ(x) + 1/x
        for &x in &[-2.5, -0.3, 0.2, 3.7, 25.0] {
            let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
            assert!(d.abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn trig_pi_reduction() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-12.0), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((cos_pi(2.0) - 1.0).abs() < 1e-16);
        assert!((sin_pi(1e6 + 0.25) - (PI * 0.25).sin()).abs() < 1e-12);
    }
}
