//! JSON run configuration.
//!
//! ```json
//! { "params": { "tx_power_dbm": 20.0, "rate_bps_hz": 3.0 },
//!   "mc": { "trials": 1000000, "seed": 7, "shards": 4 } }
//! ```
//!
//! Missing fields take their defaults.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use twr_outage_core::{McConfig, SystemParams};

use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub params: SystemParams,
    pub mc: McConfig,
}

impl Config {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text).map_err(|source| Error::Config {
            path: path.to_owned(),
            source,
        })
    }
}

/// Individual parameter overrides, applied on top of a base parameter set.
#[derive(Debug, Clone, Default, PartialEq, clap::Args)]
pub struct ParamOverrides {
    /// Transmit power, dBm.
    #[arg(long)]
    pub tx_power_dbm: Option<f64>,
    /// Noise variance, dBm.
    #[arg(long)]
    pub noise_dbm: Option<f64>,
    /// Target rate, bit/s/Hz.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Gauss-Chebyshev order.
    #[arg(long)]
    pub m: Option<usize>,
    /// Time allocation ratio.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Energy conversion efficiency.
    #[arg(long)]
    pub eta: Option<f64>,
    /// A-relay distance, meters.
    #[arg(long)]
    pub dist_a: Option<f64>,
    /// B-relay distance, meters.
    #[arg(long)]
    pub dist_b: Option<f64>,
    /// Mean of |h_A|^2.
    #[arg(long)]
    pub fading_mean_a: Option<f64>,
    /// Mean of |h_B|^2.
    #[arg(long)]
    pub fading_mean_b: Option<f64>,
    /// Circuit sensitivity, dBm.
    #[arg(long)]
    pub sensitivity_dbm: Option<f64>,
}

impl ParamOverrides {
    pub fn apply(&self, p: &mut SystemParams) {
        let set = |dst: &mut f64, src: Option<f64>| {
            if let Some(v) = src {
                *dst = v;
            }
        };
        set(&mut p.tx_power_dbm, self.tx_power_dbm);
        set(&mut p.noise_dbm, self.noise_dbm);
        set(&mut p.rate_bps_hz, self.rate);
        set(&mut p.time_split, self.beta);
        set(&mut p.eh_efficiency, self.eta);
        set(&mut p.dist_a, self.dist_a);
        set(&mut p.dist_b, self.dist_b);
        set(&mut p.fading_mean_a, self.fading_mean_a);
        set(&mut p.fading_mean_b, self.fading_mean_b);
        if let Some(m) = self.m {
            p.quad_order = m;
        }
        if self.sensitivity_dbm.is_some() {
            p.circuit_sensitivity_dbm = self.sensitivity_dbm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        assert_eq!(Config::from_json("{}").unwrap(), Config::default());
    }

    #[test]
    fn partial_override() {
        let c = Config::from_json(r#"{"params": {"rate_bps_hz": 3.0}, "mc": {"seed": 9}}"#).unwrap();
        assert_eq!(c.params.rate_bps_hz, 3.0);
        assert_eq!(c.params.dist_b, 15.0);
        assert_eq!(c.mc.seed, 9);
        assert_eq!(c.mc.trials, 1_000_000);
    }

    #[test]
    fn overrides_replace_only_given_fields() {
        let mut p = SystemParams::default();
        ParamOverrides {
            rate: Some(4.0),
            m: Some(20),
            sensitivity_dbm: Some(-25.0),
            ..ParamOverrides::default()
        }
        .apply(&mut p);
        assert_eq!(p.rate_bps_hz, 4.0);
        assert_eq!(p.quad_order, 20);
        assert_eq!(p.circuit_sensitivity_dbm, Some(-25.0));
        assert_eq!(p.tx_power_dbm, 30.0);
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(Config::from_json(r#"{"params": {"tx_power": 3.0}}"#).is_err());
    }
}
