use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::analytic::{outage_dynamic_ps, outage_improved};
use crate::model::Scheme;
use crate::params::{DerivedConstants, SystemParams};
use crate::{Error, Result};

/// `(1 - p_out) U min(beta T, (1 - 2 beta) T)`.
pub fn outage_capacity(params: &SystemParams, p_out: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_out) {
        return Err(Error::Domain {
            function: "outage_capacity",
            value: p_out,
        });
    }
    Ok((1.0 - p_out) * params.rate_bps_hz * params.effective_time())
}

/// Probability that neither terminal delivers harvested power above the
/// circuit sensitivity under optimal splitting.
pub fn energy_outage(c: &DerivedConstants) -> Result<f64> {
    let p_th = c.sensitivity_w.ok_or(Error::MissingSensitivity)?;
    let level = p_th / c.tx_power_w + c.varpi;
    Ok((-(-c.a_rate_a * level).exp_m1()) * (-(-c.a_rate_b * level).exp_m1()))
}

/// Closed-form outage for schemes that have one.
pub fn analytic_outage(params: &SystemParams, scheme: &Scheme) -> Result<f64> {
    match *scheme {
        Scheme::DynamicPs { theta } => outage_dynamic_ps(params, theta),
        Scheme::Improved => outage_improved(params),
        Scheme::StaticEqual { .. } => Err(Error::NoClosedForm("static equal")),
    }
}

/// Least-squares slope of `-log10 P_out` against `rho_0 / 10` (`rho_0` in dB).
pub fn slope_from_points(snr_db: &[f64], p_out: &[f64]) -> Result<f64> {
    let n = snr_db.len();
    if n < 3 || p_out.len() != n || snr_db.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::GridTooSmall(n));
    }
    let mut ys = Vec::with_capacity(n);
    for (&s, &p) in snr_db.iter().zip(p_out) {
        if !(p > 0.0) {
            return Err(Error::NonPositiveOutage { snr_db: s, value: p });
        }
        ys.push(-p.log10());
    }
    let nf = n as f64;
    let mx = snr_db.iter().map(|s| s / 10.0).sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (s, y) in snr_db.iter().zip(&ys) {
        let dx = s / 10.0 - mx;
        sxy += dx * (y - my);
        sxx += dx * dx;
    }
    Ok(sxy / sxx)
}

/// High-SNR slope of the analytic outage. Each grid point `rho_0` (dB) sets
/// the transmit power to `noise_dbm + rho_0`.
pub fn diversity_slope(params: &SystemParams, scheme: &Scheme, snr_grid_db: &[f64]) -> Result<f64> {
    if snr_grid_db.len() < 3 {
        return Err(Error::GridTooSmall(snr_grid_db.len()));
    }
    let mut p_out = Vec::with_capacity(snr_grid_db.len());
    for &rho in snr_grid_db {
        let p = SystemParams {
            tx_power_dbm: params.noise_dbm + rho,
            ..params.clone()
        };
        p_out.push(analytic_outage(&p, scheme)?);
    }
    slope_from_points(snr_grid_db, &p_out)
}
