//! Sweep specifications for the standard figure set, numbered 3 to 9.
//!
//! | figure | swept | fixed settings | schemes |
//! |---|---|---|---|
//! | 3 | quadrature order | | dynamic 0.5 |
//! | 4 | theta, 0.1 to 0.9 | | dynamic |
//! | 5 | P, 10 to 30 dBm | | improved, dynamic 0.3/0.5/0.8, static 0.3/0.5/0.7 |
//! | 6 | d_A, 1 to 19 m, d_A + d_B fixed | U = 3 | improved, dynamic 0.5, static 0.5 |
//! | 7 | U, 1 to 10 | | improved, dynamic 0.5, static 0.5 |
//! | 8 | beta, 0.05 to 0.45 | P = 20 dBm, U = 5 | improved, dynamic 0.5, static 0.5 |
//! | 9 | P_th, -30 to -10 dBm | | improved, dynamic 0.5, energy outage |

use twr_outage_core::{McConfig, Scheme, SystemParams};

use crate::config::ParamOverrides;
use crate::sweep::{run_sweep, SweepResult, SweepSpec, SweptParam};
use crate::{Error, Result};

pub const FIGURES: std::ops::RangeInclusive<u32> = 3..=9;

fn steps(lo: i32, hi: i32, scale: f64) -> Vec<f64> {
    (lo..=hi).map(|k| k as f64 / scale).collect()
}

fn trio() -> Vec<Scheme> {
    vec![
        Scheme::Improved,
        Scheme::DynamicPs { theta: 0.5 },
        Scheme::StaticEqual { rho: 0.5 },
    ]
}

/// Figure `n`'s sweep. `base` is adjusted by the figure's fixed settings and
/// then by `overrides`.
pub fn figure_spec(
    n: u32,
    base: &SystemParams,
    overrides: &ParamOverrides,
    mc: &McConfig,
) -> Result<SweepSpec> {
    let mut p = base.clone();
    let mut energy_outage = false;
    let (swept, values, schemes) = match n {
        3 => (
            SweptParam::M,
            vec![1., 2., 3., 4., 5., 6., 8., 10., 15., 20., 30., 50.],
            vec![Scheme::DynamicPs { theta: 0.5 }],
        ),
        4 => (
            SweptParam::Theta,
            steps(1, 9, 10.0),
            vec![Scheme::DynamicPs { theta: 0.5 }],
        ),
        5 => (
            SweptParam::TxPower,
            steps(2, 6, 0.2),
            vec![
                Scheme::Improved,
                Scheme::DynamicPs { theta: 0.3 },
                Scheme::DynamicPs { theta: 0.5 },
                Scheme::DynamicPs { theta: 0.8 },
                Scheme::StaticEqual { rho: 0.3 },
                Scheme::StaticEqual { rho: 0.5 },
                Scheme::StaticEqual { rho: 0.7 },
            ],
        ),
        6 => {
            p.rate_bps_hz = 3.0;
            (SweptParam::DistA, steps(1, 19, 1.0), trio())
        }
        7 => (SweptParam::Rate, steps(1, 10, 1.0), trio()),
        8 => {
            p.tx_power_dbm = 20.0;
            p.rate_bps_hz = 5.0;
            (SweptParam::Beta, steps(1, 9, 20.0), trio())
        }
        9 => {
            energy_outage = true;
            (
                SweptParam::Sensitivity,
                steps(-6, -2, 0.2),
                vec![Scheme::Improved, Scheme::DynamicPs { theta: 0.5 }],
            )
        }
        _ => return Err(Error::UnknownFigure(n)),
    };
    overrides.apply(&mut p);
    Ok(SweepSpec {
        swept,
        values,
        schemes,
        energy_outage,
        base: p,
        mc: *mc,
    })
}

pub fn fig(n: u32, base: &SystemParams, overrides: &ParamOverrides, mc: &McConfig) -> Result<SweepResult> {
    run_sweep(&figure_spec(n, base, overrides, mc)?)
}
