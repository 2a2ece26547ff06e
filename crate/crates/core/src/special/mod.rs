//! Numerical primitives: Gauss-Chebyshev quadrature, modified Bessel
//! functions of the second kind and exponential sampling.

mod bessel;
mod quadrature;
mod sampling;

pub use self::bessel::{bessel_k0, bessel_k1, bessel_k1_scaled, K_UNDERFLOW_X};
pub use self::quadrature::{integrate_gc, QuadratureRule};
pub use self::sampling::{exponential_from_uniform, open_unit, sample_exponential};
