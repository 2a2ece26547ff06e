use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

/// Chebyshev nodes `nu_m = cos((2m - 1) pi / 2M)` with weights
/// `sqrt(1 - nu_m^2) pi / 2M`.
///
/// The weights absorb the `sqrt(1 - x^2)` factor, so the rule is applied to
/// plain integrands. It is not exact for polynomials; the error decays as
/// `1/M^2` for smooth integrands.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter {
                name: "quad_order",
                value: 0.0,
                expected: ">= 1",
            });
        }
        let h = PI / (2 * order) as f64;
        let (nodes, weights) = (1..=order)
            .map(|m| {
                let arg = (2 * m - 1) as f64 * h;
                (arg.cos(), arg.sin() * h)
            })
            .unzip();
        Ok(Self {
            order,
            nodes,
            weights,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// `pi (b - a) / 2M * sum_m sqrt(1 - nu_m^2) f(kappa_m)` with
/// `kappa_m = (b - a)/2 nu_m + (a + b)/2`.
pub fn integrate_gc<F>(rule: &QuadratureRule, a: f64, b: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if a > b {
        return Err(Error::ReversedInterval { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let sum: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&nu, &w)| w * f(half * nu + mid))
        .sum();
    Ok((b - a) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_width_interval() {
        let r = QuadratureRule::new(7).unwrap();
        assert_eq!(integrate_gc(&r, 1.0, 1.0, |x| x.exp()).unwrap(), 0.0);
    }

    #[test]
    fn reversed_interval_rejected() {
        let r = QuadratureRule::new(3).unwrap();
        assert_eq!(
            integrate_gc(&r, 2.0, 1.0, |x| x),
            Err(Error::ReversedInterval { a: 2.0, b: 1.0 })
        );
        assert!(QuadratureRule::new(0).is_err());
    }

    #[test]
    fn semicircle() {
        let r = QuadratureRule::new(50).unwrap();
        let v = integrate_gc(&r, -1.0, 1.0, |x| (1.0 - x * x).sqrt()).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-3);
    }

    #[test]
    fn exponential() {
        let r = QuadratureRule::new(20).unwrap();
        let v = integrate_gc(&r, 0.0, 1.0, |x| (-x).exp()).unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-3);
    }

    #[test]
    fn constant_error_vanishes() {
        let mut prev = f64::INFINITY;
        for m in [1, 2, 5, 10, 50, 200] {
            let r = QuadratureRule::new(m).unwrap();
            let err = (integrate_gc(&r, 0.0, 1.0, |_| 1.0).unwrap() - 1.0).abs();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn node_layout() {
        for m in 1..40 {
            let r = QuadratureRule::new(m).unwrap();
            assert!(r.nodes().iter().all(|&v| v > -1.0 && v < 1.0));
            assert!(r.nodes().windows(2).all(|w| w[0] > w[1]));
            assert!(r.weights().iter().all(|&w| w > 0.0));
        }
    }

    fn family(c: f64, d: f64) -> impl Fn(f64) -> f64 {
        move |x: f64| (-c / (x + 0.5) - d * x).exp()
    }

    proptest! {
        #[test]
        fn convergence_is_monotone(c in 0.0f64..2.0, d in 0.0f64..3.0) {
            let f = family(c, d);
            let gaps: Vec<f64> = [5usize, 10, 20, 40]
                .iter()
                .map(|&m| {
                    let lo = integrate_gc(&QuadratureRule::new(m).unwrap(), 0.0, 1.0, &f).unwrap();
                    let hi = integrate_gc(&QuadratureRule::new(4 * m).unwrap(), 0.0, 1.0, &f).unwrap();
                    (lo - hi).abs()
                })
                .collect();
            for w in gaps.windows(2) {
                prop_assert!(w[1] <= w[0] * (1.0 + 1e-9) + 1e-15);
            }
        }
    }
}
