//! One-dimensional parameter sweeps producing analytic and simulated rows.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twr_outage_core::analytic::{analytic_outage, energy_outage, outage_capacity};
use twr_outage_core::montecarlo::relative_error;
use twr_outage_core::{derive_constants, McConfig, McEstimate, Scheme, SystemParams};

use crate::{parallel, Error, Result};

/// Scheme id used for energy outage rows.
pub const ENERGY_OUTAGE_ID: &str = "energy_outage";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweptParam {
    /// Quadrature order.
    M,
    /// Power allocation ratio of the dynamic power-splitting schemes.
    Theta,
    /// Transmit power, dBm.
    TxPower,
    /// A-relay distance, keeping the A-B total fixed.
    DistA,
    /// Target rate, bit/s/Hz.
    Rate,
    /// Time allocation ratio.
    Beta,
    /// Circuit sensitivity, dBm.
    Sensitivity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub swept: SweptParam,
    pub values: Vec<f64>,
    pub schemes: Vec<Scheme>,
    /// Adds an `energy_outage` row per value.
    #[serde(default)]
    pub energy_outage: bool,
    pub base: SystemParams,
    pub mc: McConfig,
}

/// One row per (value, scheme). Missing values are written as empty cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub scheme: String,
    pub analytic: Option<f64>,
    pub mc: f64,
    pub mc_stderr: f64,
    pub capacity: Option<f64>,
    pub rel_err: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub swept: SweptParam,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Rows of one scheme, in sweep order.
    pub fn series<'a>(&'a self, scheme: &'a str) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |r| r.scheme == scheme)
    }
}

/// `base` with the swept parameter set to `v`.
pub fn params_at(base: &SystemParams, swept: SweptParam, v: f64) -> Result<SystemParams> {
    let mut p = base.clone();
    match swept {
        SweptParam::M => {
            if !(v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64) {
                return Err(Error::Sweep(format!("quadrature order {v} is not a positive integer")));
            }
            p.quad_order = v as usize;
        }
        SweptParam::Theta => {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Sweep(format!("theta {v} is outside (0, 1)")));
            }
        }
        SweptParam::TxPower => p.tx_power_dbm = v,
        SweptParam::DistA => {
            let total = base.dist_a + base.dist_b;
            if !(v > 0.0 && v < total) {
                return Err(Error::Sweep(format!("dist_a {v} is outside (0, {total})")));
            }
            p.dist_a = v;
            p.dist_b = total - v;
        }
        SweptParam::Rate => p.rate_bps_hz = v,
        SweptParam::Beta => p.time_split = v,
        SweptParam::Sensitivity => p.circuit_sensitivity_dbm = Some(v),
    }
    derive_constants(&p, 0.5)?;
    Ok(p)
}

/// The scheme evaluated at sweep value `v`; a theta sweep replaces the
/// allocation ratio of dynamic power-splitting schemes.
pub fn scheme_at(scheme: &Scheme, swept: SweptParam, v: f64) -> Scheme {
    match (swept, scheme) {
        (SweptParam::Theta, Scheme::DynamicPs { .. }) => Scheme::DynamicPs { theta: v },
        _ => *scheme,
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Sweep("no sweep values".into()));
        }
        if self.values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Sweep("sweep values must be strictly increasing".into()));
        }
        if self.schemes.is_empty() && !self.energy_outage {
            return Err(Error::Sweep("no schemes selected".into()));
        }
        for s in &self.schemes {
            s.validate()?;
        }
        self.mc.validate()?;
        for &v in &self.values {
            params_at(&self.base, self.swept, v)?;
        }
        Ok(())
    }
}

enum Job {
    Scheme(Scheme),
    Energy,
}

fn scheme_row(
    p: &SystemParams,
    scheme: &Scheme,
    v: f64,
    mc: &McConfig,
    cached: Option<McEstimate>,
) -> Result<SweepRow> {
    let est = match cached {
        Some(e) => e,
        None => parallel::mc_outage(p, scheme, mc)?,
    };
    let analytic = if scheme.has_closed_form() {
        Some(analytic_outage(p, scheme)?)
    } else {
        None
    };
    let capacity = outage_capacity(p, analytic.unwrap_or(est.probability))?;
    Ok(SweepRow {
        param: v,
        scheme: scheme.to_string(),
        analytic,
        mc: est.probability,
        mc_stderr: est.std_error,
        capacity: Some(capacity),
        rel_err: analytic.and_then(|a| relative_error(a, &est).ok()),
    })
}

fn energy_row(p: &SystemParams, v: f64, mc: &McConfig) -> Result<SweepRow> {
    let est = parallel::mc_energy_outage(p, mc)?;
    let analytic = energy_outage(&derive_constants(p, 0.5)?)?;
    Ok(SweepRow {
        param: v,
        scheme: ENERGY_OUTAGE_ID.into(),
        analytic: Some(analytic),
        mc: est.probability,
        mc_stderr: est.std_error,
        capacity: None,
        rel_err: relative_error(analytic, &est).ok(),
    })
}

/// Evaluates every (value, scheme) pair. Rows come out ordered by value, then
/// by the order of `spec.schemes`, with the energy outage row last.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    // The simulation does not depend on the quadrature order.
    let cached: Vec<Option<McEstimate>> = if spec.swept == SweptParam::M {
        spec.schemes
            .iter()
            .map(|s| parallel::mc_outage(&spec.base, s, &spec.mc).map(Some))
            .collect::<Result<_>>()?
    } else {
        vec![None; spec.schemes.len()]
    };

    let mut jobs = Vec::new();
    for &v in &spec.values {
        for (i, s) in spec.schemes.iter().enumerate() {
            jobs.push((v, Job::Scheme(scheme_at(s, spec.swept, v)), cached[i]));
        }
        if spec.energy_outage {
            jobs.push((v, Job::Energy, None));
        }
    }
    let rows = jobs
        .par_iter()
        .map(|(v, job, cache)| {
            let p = params_at(&spec.base, spec.swept, *v)?;
            match job {
                Job::Scheme(s) => scheme_row(&p, s, *v, &spec.mc, *cache),
                Job::Energy => energy_row(&p, *v, &spec.mc),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        swept: spec.swept,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(swept: SweptParam, values: Vec<f64>) -> SweepSpec {
        SweepSpec {
            swept,
            values,
            schemes: vec![Scheme::Improved, Scheme::StaticEqual { rho: 0.5 }],
            energy_outage: false,
            base: SystemParams::default(),
            mc: McConfig {
                trials: 20_000,
                seed: 1,
                shards: 2,
            },
        }
    }

    #[test]
    fn single_value_gives_one_row_per_scheme() {
        let r = run_sweep(&spec(SweptParam::TxPower, vec![25.0])).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.rows[0].scheme, "improved");
        assert!(r.rows[0].analytic.is_some() && r.rows[0].rel_err.is_some());
        assert_eq!(r.rows[1].scheme, "static_0.5");
        assert!(r.rows[1].analytic.is_none() && r.rows[1].rel_err.is_none());
        assert!(r.rows[1].capacity.is_some());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(run_sweep(&spec(SweptParam::TxPower, vec![])).is_err());
        assert!(run_sweep(&spec(SweptParam::TxPower, vec![2.0, 1.0])).is_err());
        assert!(run_sweep(&spec(SweptParam::M, vec![2.5])).is_err());
        assert!(run_sweep(&spec(SweptParam::Beta, vec![0.6])).is_err());
        assert!(run_sweep(&spec(SweptParam::DistA, vec![20.0])).is_err());
        assert!(run_sweep(&spec(SweptParam::Theta, vec![1.0])).is_err());
    }

    #[test]
    fn theta_sweep_relabels_dynamic() {
        let mut s = spec(SweptParam::Theta, vec![0.2, 0.4]);
        s.schemes = vec![Scheme::DynamicPs { theta: 0.5 }];
        let r = run_sweep(&s).unwrap();
        let ids: Vec<_> = r.rows.iter().map(|r| r.scheme.as_str()).collect();
        assert_eq!(ids, ["dynamic_0.2", "dynamic_0.4"]);
    }

    #[test]
    fn dist_sweep_keeps_total() {
        let p = params_at(&SystemParams::default(), SweptParam::DistA, 7.0).unwrap();
        assert_eq!((p.dist_a, p.dist_b), (7.0, 13.0));
    }

    #[test]
    fn energy_rows() {
        let mut s = spec(SweptParam::Sensitivity, vec![-20.0]);
        s.energy_outage = true;
        let r = run_sweep(&s).unwrap();
        let e = r.rows.last().unwrap();
        assert_eq!(e.scheme, ENERGY_OUTAGE_ID);
        assert!(e.capacity.is_none() && e.analytic.is_some());
    }
}
