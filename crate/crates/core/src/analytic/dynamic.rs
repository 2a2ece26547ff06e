//! Outage of the dynamic power-splitting scheme.
//!
//! Success needs `|h_A|^2 >= varpi Z_A`, `|h_B|^2 >= varpi Z_B` and both
//! downlink SNRs above threshold. In the `(x, y) = (|h_A|^2, |h_B|^2)` plane
//! the downlink conditions are `y >= L1(x)` and `x >= L2(y)`. The success
//! region is split at `x = Delta_A` and `y = Delta_B` into four cases.

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::params::{derive_constants, DerivedConstants, SystemParams};
use crate::special::{integrate_gc, QuadratureRule};
use crate::{Error, Result};

/// Shape of the case-4 region `x <= Delta_A, y <= Delta_B` above both lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Scenario {
    /// Empty region.
    One,
    /// The lines do not cross inside the box; `y_delta < q1`.
    TwoLow,
    /// The lines do not cross inside the box; `y_delta >= q1`.
    TwoHigh,
    /// The lines cross inside the box; `y_delta < q1`.
    ThreeLow,
    /// The lines cross inside the box; `y_delta >= q1`.
    ThreeHigh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaseFourGeometry {
    /// `Delta_A`.
    pub x1: f64,
    /// `Delta_B`.
    pub y1: f64,
    /// `L1(x1)`.
    pub q1: f64,
    /// `L2(y1)`.
    pub q2: f64,
    /// Solves `L1(x) = y1`.
    pub x_delta: f64,
    /// Solves `L2(y) = x1`.
    pub y_delta: f64,
    /// Crossing of the two lines.
    pub x_plus: f64,
    pub y_plus: f64,
    pub scenario: Scenario,
}

/// `L1(x) = C_B / x + E_B - D_B x`, the `y` at which `gamma_RA` meets the threshold.
#[inline]
pub(crate) fn line1(c: &DerivedConstants, x: f64) -> f64 {
    c.c_b / x + c.e_b - c.d_ratio_b * x
}

/// `L2(y) = C_A / y + E_A - D_A y`, the `x` at which `gamma_RB` meets the threshold.
#[inline]
pub(crate) fn line2(c: &DerivedConstants, y: f64) -> f64 {
    c.c_a / y + c.e_a - c.d_ratio_a * y
}

/// Positive root of `d v^2 + (level - e) v - cc = 0`, i.e. the solution of
/// `cc / v + e - d v = level`.
fn line_level_root(cc: f64, e: f64, d: f64, level: f64) -> f64 {
    let b = e - level;
    let disc = (b * b + 4.0 * d * cc).sqrt();
    if b >= 0.0 {
        (b + disc) / (2.0 * d)
    } else {
        2.0 * cc / (disc - b)
    }
}

/// Intersection points of the case-4 boundary lines and the resulting scenario.
pub fn case4_geometry(c: &DerivedConstants) -> Result<CaseFourGeometry> {
    let x1 = c.delta_a;
    let y1 = c.delta_b;
    let q1 = line1(c, x1);
    let q2 = line2(c, y1);
    let x_delta = line_level_root(c.c_b, c.e_b, c.d_ratio_b, y1);
    let y_delta = line_level_root(c.c_a, c.e_a, c.d_ratio_a, x1);
    let sum = c.c_a + c.c_b;
    let x_plus = (c.c_b * c.e_a
        + (c.c_b * c.c_b * (c.e_a * c.e_a + 4.0 * c.d_ratio_a * sum)).sqrt())
        / (2.0 * sum);
    let y_plus = (c.c_a * c.e_b
        + (c.c_a * c.c_a * (c.e_b * c.e_b + 4.0 * c.d_ratio_b * sum)).sqrt())
        / (2.0 * sum);

    if [x1, y1, q1, q2, x_delta, y_delta, x_plus, y_plus]
        .iter()
        .any(|v| v.is_nan())
    {
        return Err(Error::Consistency("NaN in case-4 intersection points"));
    }

    let x_lo = q2.max(x_delta);
    let y_lo = q1.max(y_delta);
    let high = y_delta >= q1;
    let scenario = if x_lo >= x1 || y_lo >= y1 {
        Scenario::One
    } else if x_plus <= x_lo || x_plus >= x1 {
        if high {
            Scenario::TwoHigh
        } else {
            Scenario::TwoLow
        }
    } else if high {
        Scenario::ThreeHigh
    } else {
        Scenario::ThreeLow
    };

    Ok(CaseFourGeometry {
        x1,
        y1,
        q1,
        q2,
        x_delta,
        y_delta,
        x_plus,
        y_plus,
        scenario,
    })
}

/// `P(varpi Z_B <= y <= Delta_B, x >= max(L2(y), Delta_A))`.
pub fn p_case1(c: &DerivedConstants, rule: &QuadratureRule) -> Result<f64> {
    let (la, lb) = (c.fading_mean_a, c.fading_mean_b);
    let v = integrate_gc(rule, c.varpi * c.z_b, c.delta_b, |y| {
        let phi = line2(c, y).max(c.delta_a);
        (-phi / la - y / lb).exp() / lb
    })?;
    Ok(v)
}

/// `P(varpi Z_A <= x <= Delta_A, y >= max(L1(x), Delta_B))`.
pub fn p_case2(c: &DerivedConstants, rule: &QuadratureRule) -> Result<f64> {
    let (la, lb) = (c.fading_mean_a, c.fading_mean_b);
    let v = integrate_gc(rule, c.varpi * c.z_a, c.delta_a, |x| {
        let phi = line1(c, x).max(c.delta_b);
        (-phi / lb - x / la).exp() / la
    })?;
    Ok(v)
}

/// `P(x >= Delta_A, y >= Delta_B)`.
pub fn p_case3(c: &DerivedConstants) -> f64 {
    (-c.delta_a / c.fading_mean_a - c.delta_b / c.fading_mean_b).exp()
}

/// Success probability inside `x <= Delta_A, y <= Delta_B`, clamped to [0, 1].
pub fn p_case4(c: &DerivedConstants, g: &CaseFourGeometry, rule: &QuadratureRule) -> Result<f64> {
    let (la, lb) = (c.fading_mean_a, c.fading_mean_b);
    // Exponents of the integrands after the inner integral is done in closed form.
    let theta_a = |v: f64| -c.c_a / (la * v) + (c.d_ratio_a / la - 1.0 / lb) * v - c.e_a / la;
    let theta_b = |v: f64| -c.c_b / (lb * v) + (c.d_ratio_b / lb - 1.0 / la) * v - c.e_b / lb;
    let f_a = |a: f64, b: f64, cc: f64| (-a / la).exp() * ((-b / lb).exp() - (-cc / lb).exp());
    let f_b = |a: f64, b: f64, cc: f64| (-a / lb).exp() * ((-b / la).exp() - (-cc / la).exp());
    let int_a = |lo: f64, hi: f64| integrate_gc(rule, lo, hi, |v| theta_a(v).exp()).map(|s| s / lb);
    let int_b = |lo: f64, hi: f64| integrate_gc(rule, lo, hi, |v| theta_b(v).exp()).map(|s| s / la);

    let p = match g.scenario {
        Scenario::One => 0.0,
        Scenario::TwoHigh => int_a(g.y_delta, g.y1)? - f_a(g.x1, g.y_delta, g.y1),
        Scenario::TwoLow => int_b(g.x_delta, g.x1)? - f_b(g.y1, g.x_delta, g.x1),
        Scenario::ThreeHigh => {
            ((-g.x_plus / la).exp() - (-g.x1 / la).exp())
                * ((-g.y_plus / lb).exp() - (-g.y1 / lb).exp())
                + int_b(g.x_delta, g.x_plus)?
                + int_a(g.y_delta, g.y_plus)?
                - f_b(g.y1, g.x_delta, g.x_plus)
                - f_a(g.x1, g.y_delta, g.y_plus)
        }
        Scenario::ThreeLow => {
            int_b(g.x_plus, g.x1)? + int_a(g.y_plus, g.y1)?
                - f_b(g.y_plus, g.x_plus, g.x1)
                - f_a(g.x1, g.y_plus, g.y1)
        }
    };
    Ok(p.clamp(0.0, 1.0))
}

/// The four success terms and the resulting outage.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DynamicBreakdown {
    pub p_case1: f64,
    pub p_case2: f64,
    pub p_case3: f64,
    pub p_case4: f64,
    pub geometry: CaseFourGeometry,
    /// `1 - sum of the case terms`, clamped to [0, 1].
    pub outage: f64,
}

pub fn dynamic_ps_breakdown(params: &SystemParams, theta: f64) -> Result<DynamicBreakdown> {
    let c = derive_constants(params, theta)?;
    let rule = QuadratureRule::new(params.quad_order)?;
    let p1 = p_case1(&c, &rule)?;
    let p2 = p_case2(&c, &rule)?;
    let p3 = p_case3(&c);
    let geometry = case4_geometry(&c)?;
    let p4 = p_case4(&c, &geometry, &rule)?;
    Ok(DynamicBreakdown {
        p_case1: p1,
        p_case2: p2,
        p_case3: p3,
        p_case4: p4,
        geometry,
        outage: (1.0 - (p1 + p2 + p3 + p4)).clamp(0.0, 1.0),
    })
}

/// Outage probability of the dynamic power-splitting scheme at allocation
/// ratio `theta`, using `params.quad_order` quadrature nodes.
pub fn outage_dynamic_ps(params: &SystemParams, theta: f64) -> Result<f64> {
    dynamic_ps_breakdown(params, theta).map(|b| b.outage)
}
