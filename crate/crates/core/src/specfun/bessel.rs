//! Integer-order Bessel functions of real argument and their positive zeros.

use std::f64::consts::PI;

use super::{SpecFunError, SpecFunResult};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Which Bessel function a zero refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J,
    Y,
}

/// Ascending series for J_n, used for small |x|.
fn j_series(nu: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=nu {
        term *= h / k as f64;
    }
    let mut sum = term;
    let q = -h * h;
    for k in 1..200 {
        term *= q / (k as f64 * (k + nu) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// J_0 … J_{nmax}(x) for x > 0 by Miller's backward recurrence,
/// normalised with J₀ + 2ΣJ₂ₖ = 1.
fn j_table(nmax: usize, x: f64) -> Vec<f64> {
    let top = nmax.max(x as usize) as f64;
    let mut start = (top + 30.0 + 12.0 * top.cbrt()) as usize;
    start += start % 2;
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300_f64.sqrt();
    for k in (1..=start).rev() {
        vals[k - 1] = 2.0 * k as f64 / x * vals[k] - vals[k + 1];
        if vals[k - 1].abs() > 1e250 {
            for v in vals.iter_mut().skip(k - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm = vals[0] + 2.0 * vals.iter().skip(2).step_by(2).sum::<f64>();
    vals.truncate(nmax.max(1) + 1);
    vals.iter().map(|v| v / norm).collect()
}

/// Bessel function of the first kind J_ν(x), ν a non-negative integer.
pub fn bessel_j(nu: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    let sign = if x < 0.0 && nu % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    if ax < 2.0 {
        return sign * j_series(nu, ax);
    }
    sign * j_table(nu as usize, ax)[nu as usize]
}

/// Bessel function of the second kind Y_ν(x), x > 0.
///
/// Y₀ and Y₁ come from Neumann series over the Miller table; higher orders
/// from forward recurrence, which is stable for Y.
pub fn bessel_y(nu: u32, x: f64) -> SpecFunResult<f64> {
    if !(x > 0.0) {
        return Err(SpecFunError::Domain(format!("Y_{nu}(x) needs x > 0, got {x}")));
    }
    let top = (x as usize).max(2) + 60;
    let j = j_table(top, x);
    let l = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sg = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sg * j[2 * k] / k as f64;
        s1 += sg * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = 2.0 / PI * (l * j[0] - 2.0 * s0);
    let y1 = 2.0 / PI * (-j[0] / x + l * j[1] + s1);
    match nu {
        0 => Ok(y0),
        1 => Ok(y1),
        _ => {
            let (mut prev, mut cur) = (y0, y1);
            for m in 1..nu {
                let next = 2.0 * m as f64 / x * cur - prev;
                prev = cur;
                cur = next;
            }
            Ok(cur)
        }
    }
}

fn eval(kind: BesselKind, nu: u32, x: f64) -> f64 {
    match kind {
        BesselKind::J => bessel_j(nu, x),
        BesselKind::Y => bessel_y(nu, x).unwrap_or(f64::NAN),
    }
}

/// k-th positive zero (k ≥ 1) of J_ν or Y_ν, by sign-change scan plus bisection.
pub fn bessel_zero(kind: BesselKind, nu: u32, k: u32) -> SpecFunResult<f64> {
    if k == 0 {
        return Err(SpecFunError::Parameter("zero index starts at 1".into()));
    }
    let step = PI / 20.0;
    let mut lo = 1e-3;
    let mut flo = eval(kind, nu, lo);
    let mut found = 0;
    let limit = (k as f64 + nu as f64 + 10.0) * PI * 2.0;
    while lo < limit {
        let hi = lo + step;
        let fhi = eval(kind, nu, hi);
        if flo == 0.0 || flo.signum() != fhi.signum() {
            found += 1;
            if found == k {
                return Ok(bisect(|t| eval(kind, nu, t), lo, hi, flo));
            }
        }
        lo = hi;
        flo = fhi;
    }
    Err(SpecFunError::NonConvergence(found as usize))
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn j_reference_values() {
        assert!(close(bessel_j(0, 1.0), 0.765_197_686_557_966_6, 1e-14));
        assert!(close(bessel_j(1, 1.0), 0.440_050_585_744_933_5, 1e-14));
        assert!(close(bessel_j(0, 10.0), -0.245_935_764_451_348_3, 1e-12));
        assert!(close(bessel_j(2, 5.0), 0.046_565_116_277_752_2, 1e-11));
        assert!(close(bessel_j(1, 50.0), -0.097_511_828_125_175, 1e-11));
        assert_eq!(bessel_j(3, 0.0), 0.0);
    }

    #[test]
    fn y_reference_values() {
        assert!(close(bessel_y(0, 1.0).unwrap(), 0.088_256_964_215_676_96, 1e-12));
        assert!(close(bessel_y(1, 1.0).unwrap(), -0.781_212_821_300_288_7, 1e-12));
        assert!(close(bessel_y(1, 0.01).unwrap(), -63.678_596_282_060_7, 1e-12));
        assert!(close(bessel_y(2, 3.0).unwrap(), -0.160_400_393_484_924, 1e-12));
        assert!(bessel_y(0, 0.0).is_err());
    }

    #[test]
    fn wronskian() {
        // J₁Y₀ − J₀Y₁ = 2/(πx)
        for &x in &[0.3, 1.7, 6.0, 23.0, 80.0] {
            let w = bessel_j(1, x) * bessel_y(0, x).unwrap() - bessel_j(0, x) * bessel_y(1, x).unwrap();
            assert!(close(w, 2.0 / (PI * x), 1e-10), "x = {x}");
        }
    }

    #[test]
    fn first_zeros() {
        let j11 = bessel_zero(BesselKind::J, 1, 1).unwrap();
        assert!((j11 - 3.831_705_970_207_512).abs() < 1e-12);
        let y11 = bessel_zero(BesselKind::Y, 1, 1).unwrap();
        assert!((y11 - 2.197_141_326_031_017).abs() < 1e-12);
        let y01 = bessel_zero(BesselKind::Y, 0, 1).unwrap();
        assert!((y01 - 0.893_576_966_279_167_5).abs() < 1e-12);
        let j02 = bessel_zero(BesselKind::J, 0, 2).unwrap();
        assert!((j02 - 5.520_078_110_286_311).abs() < 1e-12);
    }
}
