//! System parameters and the derived constants the closed forms work from.
//!
//! All decibel quantities are converted to linear units once, in
//! [`derive_constants`]. Everything downstream is linear.

use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Physical and protocol constants of one network configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SystemParams {
    /// Terminal transmit power `P`, dBm.
    pub tx_power_dbm: f64,
    /// Noise variance, dBm.
    pub noise_dbm: f64,
    /// Energy conversion efficiency, in (0, 1].
    pub eh_efficiency: f64,
    /// Time allocation ratio of each uplink slot, in (0, 0.5).
    pub time_split: f64,
    /// Block length `T`, seconds.
    pub block_duration: f64,
    pub path_loss_exp: f64,
    /// Terminal A to relay distance, meters.
    pub dist_a: f64,
    /// Terminal B to relay distance, meters.
    pub dist_b: f64,
    /// Close-in reference distance, meters.
    pub ref_dist: f64,
    pub carrier_freq_hz: f64,
    pub gain_a_dbi: f64,
    pub gain_b_dbi: f64,
    pub gain_relay_dbi: f64,
    /// Mean of the exponentially distributed `|h_A|^2`.
    pub fading_mean_a: f64,
    /// Mean of the exponentially distributed `|h_B|^2`.
    pub fading_mean_b: f64,
    /// Target rate `U`, bit/s/Hz. The SNR threshold is `2^U - 1`.
    pub rate_bps_hz: f64,
    /// Gauss-Chebyshev order `M`.
    pub quad_order: usize,
    /// Receiver activation threshold, dBm. `None` is an ideal receiver.
    pub circuit_sensitivity_dbm: Option<f64>,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            tx_power_dbm: 30.0,
            noise_dbm: -90.0,
            eh_efficiency: 0.6,
            time_split: 1.0 / 3.0,
            block_duration: 1.0,
            path_loss_exp: 2.7,
            dist_a: 5.0,
            dist_b: 15.0,
            ref_dist: 1.0,
            carrier_freq_hz: 915e6,
            gain_a_dbi: 8.0,
            gain_b_dbi: 8.0,
            gain_relay_dbi: 8.0,
            fading_mean_a: 1.0,
            fading_mean_b: 1.0,
            rate_bps_hz: 2.0,
            quad_order: 10,
            circuit_sensitivity_dbm: None,
        }
    }
}

/// `10^((x - 30)/10)` watts.
#[inline]
pub fn dbm_to_watts(x_dbm: f64) -> f64 {
    Float::powf(10.0, (x_dbm - 30.0) / 10.0)
}

/// `10^(g/10)`.
#[inline]
pub fn dbi_to_linear(g_dbi: f64) -> f64 {
    Float::powf(10.0, g_dbi / 10.0)
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            expected: "finite and > 0",
        })
    }
}

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            expected: "finite",
        })
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        finite("tx_power_dbm", self.tx_power_dbm)?;
        finite("noise_dbm", self.noise_dbm)?;
        finite("gain_a_dbi", self.gain_a_dbi)?;
        finite("gain_b_dbi", self.gain_b_dbi)?;
        finite("gain_relay_dbi", self.gain_relay_dbi)?;
        positive("eh_efficiency", self.eh_efficiency)?;
        if self.eh_efficiency > 1.0 {
            return Err(Error::InvalidParameter {
                name: "eh_efficiency",
                value: self.eh_efficiency,
                expected: "in (0, 1]",
            });
        }
        if !(self.time_split > 0.0 && self.time_split < 0.5) {
            return Err(Error::InvalidParameter {
                name: "time_split",
                value: self.time_split,
                expected: "in (0, 0.5)",
            });
        }
        positive("block_duration", self.block_duration)?;
        positive("path_loss_exp", self.path_loss_exp)?;
        positive("dist_a", self.dist_a)?;
        positive("dist_b", self.dist_b)?;
        positive("ref_dist", self.ref_dist)?;
        positive("carrier_freq_hz", self.carrier_freq_hz)?;
        positive("fading_mean_a", self.fading_mean_a)?;
        positive("fading_mean_b", self.fading_mean_b)?;
        positive("rate_bps_hz", self.rate_bps_hz)?;
        if self.quad_order == 0 {
            return Err(Error::InvalidParameter {
                name: "quad_order",
                value: 0.0,
                expected: ">= 1",
            });
        }
        if let Some(s) = self.circuit_sensitivity_dbm {
            finite("circuit_sensitivity_dbm", s)?;
        }
        Ok(())
    }

    /// `2^U - 1`.
    #[inline]
    pub fn snr_threshold(&self) -> f64 {
        (self.rate_bps_hz * core::f64::consts::LN_2).exp_m1()
    }

    /// Carrier wavelength, meters.
    #[inline]
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq_hz
    }

    /// Effective transmission time `min(beta T, (1 - 2 beta) T)`.
    #[inline]
    pub fn effective_time(&self) -> f64 {
        let b = self.time_split;
        (b * self.block_duration).min((1.0 - 2.0 * b) * self.block_duration)
    }
}

/// Per-configuration constants, in linear units.
///
/// The `x_factor`, `c` and `delta` fields depend on the power allocation
/// ratio `theta` the constants were derived for; the rest do not.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivedConstants {
    pub theta: f64,
    pub tx_power_w: f64,
    pub noise_w: f64,
    pub snr_threshold: f64,
    pub fading_mean_a: f64,
    pub fading_mean_b: f64,
    /// Receiver activation threshold in watts, if configured.
    pub sensitivity_w: Option<f64>,
    pub lambda_big_a: f64,
    pub lambda_big_b: f64,
    /// `d_A^alpha / Lambda_A`.
    pub z_a: f64,
    pub z_b: f64,
    /// `gamma_th sigma^2 / P`.
    pub varpi: f64,
    /// `X_A` without its `theta` dependence: `beta eta P / (Z_A (1 - 2 beta) sigma^2)`.
    pub x_scale_a: f64,
    pub x_scale_b: f64,
    pub x_factor_a: f64,
    pub x_factor_b: f64,
    pub y_big: f64,
    pub c_a: f64,
    pub c_b: f64,
    pub d_ratio_a: f64,
    pub d_ratio_b: f64,
    pub e_a: f64,
    pub e_b: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    /// Exponential rate of `|h_A|^2 / Z_A`.
    pub a_rate_a: f64,
    pub a_rate_b: f64,
    pub a_o: f64,
    pub b_o: f64,
}

impl DerivedConstants {
    /// `(X_A, X_B)` at an arbitrary power allocation ratio.
    #[inline]
    pub fn x_factors(&self, theta: f64) -> (f64, f64) {
        let phi = 1.0 - theta;
        let norm = theta * theta + phi * phi;
        (
            self.x_scale_a * phi * phi / norm,
            self.x_scale_b * theta * theta / norm,
        )
    }

    /// `Delta_i` for a given `X_i` and `Z_i`.
    #[inline]
    fn delta(&self, z: f64, x: f64) -> f64 {
        let w = self.varpi;
        0.5 * (w + (w * w + 4.0 * self.snr_threshold / (z * x)).sqrt()) * z
    }
}

/// Computes every derived constant for `params` at power allocation ratio `theta`.
pub fn derive_constants(params: &SystemParams, theta: f64) -> Result<DerivedConstants> {
    params.validate()?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidTheta(theta));
    }
    let p = dbm_to_watts(params.tx_power_dbm);
    let noise = dbm_to_watts(params.noise_dbm);
    let gamma = params.snr_threshold();
    let alpha = params.path_loss_exp;
    let wl = params.wavelength();
    let common = wl * wl * params.ref_dist.powf(alpha - 2.0) / ((4.0 * PI) * (4.0 * PI));
    let g_r = dbi_to_linear(params.gain_relay_dbi);
    let lambda_big_a = dbi_to_linear(params.gain_a_dbi) * g_r * common;
    let lambda_big_b = dbi_to_linear(params.gain_b_dbi) * g_r * common;
    let z_a = params.dist_a.powf(alpha) / lambda_big_a;
    let z_b = params.dist_b.powf(alpha) / lambda_big_b;
    let varpi = gamma * noise / p;

    let beta = params.time_split;
    let eta = params.eh_efficiency;
    let harvest = beta * eta * p / ((1.0 - 2.0 * beta) * noise);
    let x_scale_a = harvest / z_a;
    let x_scale_b = harvest / z_b;
    let y_big = harvest / (z_a * z_b);

    let mut c = DerivedConstants {
        theta,
        tx_power_w: p,
        noise_w: noise,
        snr_threshold: gamma,
        fading_mean_a: params.fading_mean_a,
        fading_mean_b: params.fading_mean_b,
        sensitivity_w: params.circuit_sensitivity_dbm.map(dbm_to_watts),
        lambda_big_a,
        lambda_big_b,
        z_a,
        z_b,
        varpi,
        x_scale_a,
        x_scale_b,
        x_factor_a: 0.0,
        x_factor_b: 0.0,
        y_big,
        c_a: 0.0,
        c_b: 0.0,
        d_ratio_a: z_a / z_b,
        d_ratio_b: z_b / z_a,
        e_a: 2.0 * varpi * z_a,
        e_b: 2.0 * varpi * z_b,
        delta_a: 0.0,
        delta_b: 0.0,
        a_rate_a: z_a / params.fading_mean_a,
        a_rate_b: z_b / params.fading_mean_b,
        a_o: varpi * varpi * z_a * z_b * gamma / y_big,
        b_o: varpi * varpi * z_a * z_b + gamma / y_big,
    };
    let (xa, xb) = c.x_factors(theta);
    c.x_factor_a = xa;
    c.x_factor_b = xb;
    c.c_a = gamma * z_a / xb;
    c.c_b = gamma * z_b / xa;
    c.delta_a = c.delta(z_a, xa);
    c.delta_b = c.delta(z_b, xb);

    // Strict in exact arithmetic; the square-root term can round away when
    // varpi^2 dominates it.
    if !(c.delta_a >= varpi * z_a && c.delta_b >= varpi * z_b) {
        return Err(Error::Consistency("Delta_i must not fall below varpi Z_i"));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_conversions() {
        assert_relative_eq!(dbm_to_watts(30.0), 1.0);
        assert_relative_eq!(dbm_to_watts(-90.0), 1e-12, max_relative = 1e-14);
        assert_relative_eq!(dbi_to_linear(0.0), 1.0);
        assert_relative_eq!(dbi_to_linear(10.0), 10.0);
    }

    #[test]
    fn threshold_from_rate() {
        let p = SystemParams::default();
        assert_eq!(p.snr_threshold(), 3.0);
        assert_relative_eq!(p.effective_time(), 1.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn default_varpi() {
        let c = derive_constants(&SystemParams::default(), 0.5).unwrap();
        assert_relative_eq!(c.varpi, 3e-12, max_relative = 1e-12);
    }

    // 40-digit reference values for the default configuration at theta = 0.5.
    #[test]
    fn default_constants_match_reference() {
        let c = derive_constants(&SystemParams::default(), 0.5).unwrap();
        let tol = 1e-12;
        assert_relative_eq!(c.lambda_big_a, 0.027063221351946277678, max_relative = tol);
        assert_relative_eq!(c.lambda_big_b, 0.027063221351946277678, max_relative = tol);
        assert_relative_eq!(c.z_a, 2849.9649704285621329, max_relative = tol);
        assert_relative_eq!(c.z_b, 55343.536791276673553, max_relative = tol);
        assert_relative_eq!(c.x_factor_a, 105264451.70829157316, max_relative = tol);
        assert_relative_eq!(c.x_factor_b, 5420687.1731278009644, max_relative = tol);
        assert_relative_eq!(c.y_big, 3804.0377544097797788, max_relative = tol);
        assert_relative_eq!(c.c_a, 0.0015772714119476286538, max_relative = tol);
        assert_relative_eq!(c.c_b, 0.0015772714119476286538, max_relative = tol);
        assert_relative_eq!(c.d_ratio_a, 0.051495895196885531129, max_relative = tol);
        assert_relative_eq!(c.d_ratio_b, 19.419023519771337896, max_relative = tol);
        assert_relative_eq!(c.e_a, 1.7099789822571372798e-8, max_relative = tol);
        assert_relative_eq!(c.e_b, 3.3206122074766004132e-7, max_relative = tol);
        assert_relative_eq!(c.delta_a, 0.0090123848331971473925, max_relative = tol);
        assert_relative_eq!(c.delta_b, 0.17501171304508589113, max_relative = tol);
        assert_relative_eq!(c.a_rate_a, c.z_a, max_relative = tol);
        assert_relative_eq!(c.a_o, 1.1195032981262697403e-18, max_relative = tol);
        assert_relative_eq!(c.b_o, 0.00078863570597523387115, max_relative = tol);
    }

    #[test]
    fn symmetric_geometry_gives_equal_z() {
        let p = SystemParams {
            dist_b: 5.0,
            ..SystemParams::default()
        };
        let c = derive_constants(&p, 0.3).unwrap();
        assert_eq!(c.z_a, c.z_b);
    }

    #[test]
    fn theta_half_x_ratio() {
        let p = SystemParams::default();
        let c = derive_constants(&p, 0.5).unwrap();
        let a = p.path_loss_exp;
        let ratio = (c.lambda_big_a * p.dist_a.powf(-a)) / (c.lambda_big_b * p.dist_b.powf(-a));
        assert_relative_eq!(c.x_factor_a / c.x_factor_b, ratio, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = SystemParams::default();
        assert_eq!(derive_constants(&p, 0.0), Err(Error::InvalidTheta(0.0)));
        assert_eq!(derive_constants(&p, 1.0), Err(Error::InvalidTheta(1.0)));
        let bad = SystemParams {
            time_split: 0.5,
            ..p.clone()
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidParameter { name: "time_split", .. })
        ));
        let bad = SystemParams {
            quad_order: 0,
            ..p.clone()
        };
        assert!(bad.validate().is_err());
        let bad = SystemParams {
            fading_mean_b: f64::NAN,
            ..p
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn all_fields_positive() {
        let c = derive_constants(&SystemParams::default(), 0.7).unwrap();
        for v in [
            c.lambda_big_a, c.lambda_big_b, c.z_a, c.z_b, c.varpi, c.x_factor_a, c.x_factor_b,
            c.y_big, c.c_a, c.c_b, c.d_ratio_a, c.d_ratio_b, c.e_a, c.e_b, c.delta_a, c.delta_b,
            c.a_rate_a, c.a_rate_b, c.a_o, c.b_o,
        ] {
            assert!(v > 0.0 && v.is_finite());
        }
    }
}
