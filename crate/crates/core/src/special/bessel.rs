use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_MAX_X: f64 = 2.0;
const EPS: f64 = 1e-17;
const MAX_ITER: usize = 10_000;

/// Above this argument `K_0` and `K_1` are below the smallest normal `f64`
/// and are returned as exactly 0.
pub const K_UNDERFLOW_X: f64 = 705.0;

fn check(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain { function, value: x })
    }
}

/// Power series for `x <= 2`, returning `(K0, K1)`.
fn series(x: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let log_half = (0.5 * x).ln();
    // term_k = t^k / (k!)^2, used for I0 and K0; term_k / (k + 1) for I1 and K1.
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 0.0;
    let mut i1 = 0.0;
    let mut k0_sum = 0.0;
    let mut k1_sum = 0.0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let next_harmonic = harmonic + 1.0 / (kf + 1.0);
        let t1 = term / (kf + 1.0);
        i0 += term;
        i1 += t1;
        k0_sum += harmonic * term;
        // psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2 gamma
        k1_sum += (harmonic + next_harmonic - 2.0 * EULER_GAMMA) * t1;
        if term < EPS * i0 && k > 0 {
            break;
        }
        k += 1;
        term *= t / ((k * k) as f64);
        harmonic = next_harmonic;
    }
    let i1 = 0.5 * x * i1;
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_sum;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_sum;
    (k0, k1)
}

/// Steed's continued fraction (Temme's method at order 0) for `x > 2`,
/// returning `(e^x K0, e^x K1)`.
fn continued_fraction_scaled(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        a -= (2 * (i - 1)) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// `e^x K_1(x)` for `x > 0`.
pub fn bessel_k1_scaled(x: f64) -> Result<f64> {
    check("bessel_k1_scaled", x)?;
    if x <= SERIES_MAX_X {
        Ok(series(x).1 * x.exp())
    } else {
        Ok(continued_fraction_scaled(x).1)
    }
}

/// Modified Bessel function of the second kind, order 1.
///
/// Relative error is near machine precision on `[1e-8, 700]`. Returns 0
/// above [`K_UNDERFLOW_X`].
pub fn bessel_k1(x: f64) -> Result<f64> {
    check("bessel_k1", x)?;
    Ok(if x <= SERIES_MAX_X {
        series(x).1
    } else if x > K_UNDERFLOW_X {
        0.0
    } else {
        continued_fraction_scaled(x).1 * (-x).exp()
    })
}

/// Modified Bessel function of the second kind, order 0.
pub fn bessel_k0(x: f64) -> Result<f64> {
    check("bessel_k0", x)?;
    Ok(if x <= SERIES_MAX_X {
        series(x).0
    } else if x > K_UNDERFLOW_X {
        0.0
    } else {
        continued_fraction_scaled(x).0 * (-x).exp()
    })
}
