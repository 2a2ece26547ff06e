//! Outage of the improved dynamic scheme.
//!
//! With `t2 = |h_A|^2/Z_A + |h_B|^2/Z_B` and `t3 = 1/(|h_A|^2 |h_B|^2)`,
//! success is `t3 <= t_max` together with `s2(t3) <= t2 <= s1(t3)`, where
//! `s1(t) = 1/(varpi Z_A Z_B t) + varpi` and `s2(t) = 2 varpi / (1 - gamma t / Y)`.
//! Writing `chi(t) = F_t2(s1(t)) - F_t2(s2(t))`, the outage is
//!
//! ```text
//! P_out = 1 - chi(t_max) F_t3(t_max) + int_0^t_max chi'(t) F_t3(t) dt.
//! ```
//!
//! `chi'` is concentrated in a sliver next to `t_max` far narrower than
//! any practical quadrature grid, so [`outage_improved`] substitutes
//! `w = F_t2(s)` and integrates in the probability variable instead, where
//! the integrand is smooth.

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::params::{derive_constants, DerivedConstants, SystemParams};
use crate::special::{bessel_k1, integrate_gc, QuadratureRule};
use crate::{Error, Result};

/// Relative gap below which the two exponential rates are treated as equal.
const EQUAL_RATE_RTOL: f64 = 1e-9;
/// Below this `hi * t` the CDF is summed as a power series.
const SERIES_MAX_ARG: f64 = 0.1;

/// Sum of two independent exponentials with rates `a_a` and `a_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T2Distribution {
    lo: f64,
    hi: f64,
}

impl T2Distribution {
    pub fn new(a_a: f64, a_b: f64) -> Result<Self> {
        for v in [a_a, a_b] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain {
                    function: "T2Distribution::new",
                    value: v,
                });
            }
        }
        Ok(Self {
            lo: a_a.min(a_b),
            hi: a_a.max(a_b),
        })
    }

    pub fn from_consts(c: &DerivedConstants) -> Result<Self> {
        Self::new(c.a_rate_a, c.a_rate_b)
    }

    /// `(1 - e^{-(hi - lo) t}) / (hi - lo)`, or `t` for equal rates.
    #[inline]
    fn gap(&self, t: f64) -> f64 {
        let d = self.hi - self.lo;
        if d <= EQUAL_RATE_RTOL * self.hi {
            t
        } else {
            -(-d * t).exp_m1() / d
        }
    }

    /// `a_a a_b sum_{n>=2} (-1)^n h_{n-2}(a_a, a_b) t^n / n!`.
    fn cdf_series(&self, t: f64) -> f64 {
        let (a, b) = (self.lo, self.hi);
        let mut h = 1.0;
        let mut a_pow = 1.0;
        let mut tn = t * t / 2.0;
        let mut sum = 0.0;
        for n in 2..60 {
            let term = h * tn;
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
            a_pow *= a;
            h = b * h + a_pow;
            tn *= -t / (n + 1) as f64;
        }
        a * b * sum
    }

    pub fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t == f64::INFINITY {
            return 1.0;
        }
        if self.hi * t < SERIES_MAX_ARG {
            return self.cdf_series(t);
        }
        -(-self.lo * t).exp_m1() - self.lo * (-self.lo * t).exp() * self.gap(t)
    }

    pub fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        if self.hi * t < SERIES_MAX_ARG {
            return 1.0 - self.cdf_series(t);
        }
        (-self.lo * t).exp() * (1.0 + self.lo * self.gap(t))
    }

    pub fn pdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.lo * self.hi * (-self.lo * t).exp() * self.gap(t)
    }

    /// Smallest `t` with `cdf(t) >= p`, given `p` and `q = 1 - p` computed
    /// independently so that either tail keeps full precision.
    pub fn quantile(&self, p: f64, q: f64) -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        if q <= 0.0 {
            return f64::INFINITY;
        }
        let use_cdf = p <= 0.5;
        // `below(t)` is true while `t` lies left of the quantile.
        let below = |t: f64| {
            if use_cdf {
                self.cdf(t) < p
            } else {
                self.survival(t) > q
            }
        };
        let mut hi = 1.0 / self.hi;
        while below(hi) {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        while hi - lo > 4.0 * f64::EPSILON * hi {
            let mid = 0.5 * (lo + hi);
            if below(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// CDF of `t2 = |h_A|^2/Z_A + |h_B|^2/Z_B`.
pub fn cdf_t2(c: &DerivedConstants, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain {
            function: "cdf_t2",
            value: t,
        });
    }
    Ok(T2Distribution::from_consts(c)?.cdf(t))
}

/// CDF of `1/(X Y)` for independent exponentials with means `mean_a`,
/// `mean_b`: `z K1(z)` with `z = sqrt(4/(mean_a mean_b t))`. Zero for `t <= 0`.
pub fn t3_cdf(mean_a: f64, mean_b: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let z = (4.0 / (mean_a * mean_b * t)).sqrt();
    if z == 0.0 {
        return 1.0;
    }
    bessel_k1(z).map_or(0.0, |k| (z * k).min(1.0))
}

/// CDF of `t3 = 1/(|h_A|^2 |h_B|^2)`.
pub fn cdf_t3(c: &DerivedConstants, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain {
            function: "cdf_t3",
            value: t,
        });
    }
    Ok(t3_cdf(c.fading_mean_a, c.fading_mean_b, t))
}

/// Largest `t3` for which success is possible: the positive root of
/// `a_o t^2 + b_o t - 1`, capped at `Y / gamma_th`.
pub fn t_max(c: &DerivedConstants) -> f64 {
    let root = 2.0 / (c.b_o + (c.b_o * c.b_o + 4.0 * c.a_o).sqrt());
    root.min(c.y_big / c.snr_threshold)
}

#[inline]
fn s1(c: &DerivedConstants, t: f64) -> f64 {
    1.0 / (c.varpi * c.z_a * c.z_b * t) + c.varpi
}

#[inline]
fn s2(c: &DerivedConstants, t: f64) -> f64 {
    2.0 * c.varpi / (1.0 - c.snr_threshold / c.y_big * t)
}

/// `chi(t) = P(s2(t) <= t2 <= s1(t))` for `0 < t <= t_max`.
pub fn chi(c: &DerivedConstants, t: f64) -> Result<f64> {
    let d = T2Distribution::from_consts(c)?;
    Ok((d.survival(s2(c, t)) - d.survival(s1(c, t))).max(0.0))
}

/// Derivative of [`chi`] in `t`.
pub fn chi_prime(c: &DerivedConstants, t: f64) -> Result<f64> {
    let d = T2Distribution::from_consts(c)?;
    let k = c.snr_threshold / c.y_big;
    let ds1 = -1.0 / (c.varpi * c.z_a * c.z_b * t * t);
    let ds2 = 2.0 * c.varpi * k / ((1.0 - k * t) * (1.0 - k * t));
    Ok(d.pdf(s1(c, t)) * ds1 - d.pdf(s2(c, t)) * ds2)
}

/// Outage probability of the improved scheme with `params.quad_order` nodes.
pub fn outage_improved(params: &SystemParams) -> Result<f64> {
    let c = derive_constants(params, 0.5)?;
    let rule = QuadratureRule::new(params.quad_order)?;
    outage_improved_with(&c, &rule, t3_cdf)
}

/// As [`outage_improved`], with explicit constants, quadrature rule and `t3`
/// CDF `(mean_a, mean_b, t) -> F`.
pub fn outage_improved_with<F>(c: &DerivedConstants, rule: &QuadratureRule, f3: F) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let d = T2Distribution::from_consts(c)?;
    let (la, lb) = (c.fading_mean_a, c.fading_mean_b);
    let tm = t_max(c);
    let f3_max = f3(la, lb, tm);

    // Upper branch: t2 = s1(t3) for t3 in (0, t_max], integrated in the
    // survival variable q = 1 - F_t2(s) over (0, 1 - F_t2(s1(t_max))).
    let inv_s1 = |s: f64| 1.0 / (c.varpi * c.z_a * c.z_b * (s - c.varpi));
    let q_hi = d.survival(s1(c, tm));
    let upper = integrate_gc(rule, 0.0, q_hi, |q| {
        let s = d.quantile(1.0 - q, q);
        let t = if s.is_finite() { inv_s1(s).min(tm) } else { 0.0 };
        f3_max - f3(la, lb, t)
    })?;

    // Lower branch: t2 = s2(t3), integrated in w = F_t2(s) from F_t2(2 varpi)
    // to F_t2(s2(t_max)).
    let inv_s2 = |s: f64| c.y_big / c.snr_threshold * (1.0 - 2.0 * c.varpi / s);
    let w_lo = d.cdf(2.0 * c.varpi);
    let w_hi = d.cdf(s2(c, tm)).max(w_lo);
    let lower = integrate_gc(rule, w_lo, w_hi, |w| {
        let s = d.quantile(w, 1.0 - w);
        let t = inv_s2(s).min(tm);
        f3_max - f3(la, lb, t)
    })?;

    let chi0 = d.survival(2.0 * c.varpi);
    Ok((1.0 - chi0 * f3_max + upper + lower).clamp(0.0, 1.0))
}
