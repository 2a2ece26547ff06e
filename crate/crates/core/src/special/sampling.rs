#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::Rng;

/// Inverse CDF of the exponential distribution, `-mean ln(u)` for `u` in (0, 1].
#[inline]
pub fn exponential_from_uniform(u: f64, mean: f64) -> f64 {
    -mean * u.ln()
}

/// Uniform draw in (0, 1].
#[inline]
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// One exponential draw with the given mean.
#[inline]
pub fn sample_exponential<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> f64 {
    exponential_from_uniform(open_unit(rng), mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_cdf_points() {
        assert_eq!(exponential_from_uniform(1.0, 3.0), 0.0);
        assert!((exponential_from_uniform((-1.0f64).exp(), 2.5) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn sample_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 1_000_000;
        let mean = (0..n).map(|_| sample_exponential(&mut rng, 2.0)).sum::<f64>() / n as f64;
        assert!((mean - 2.0).abs() < 0.01, "{mean}");
    }

    #[test]
    fn reproducible_streams() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            assert_eq!(sample_exponential(&mut a, 1.0), sample_exponential(&mut b, 1.0));
        }
    }
}
