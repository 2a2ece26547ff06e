//! Shards of a Monte Carlo run executed on the rayon pool.
//!
//! Results are bit-identical to the sequential [`Simulator::run`].

use rayon::prelude::*;
use twr_outage_core::montecarlo::{McTarget, Simulator};
use twr_outage_core::{McConfig, McEstimate, Scheme, SystemParams};

use crate::Result;

pub fn run(sim: &Simulator, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let events = (0..cfg.shards)
        .into_par_iter()
        .map(|k| sim.count_blocks(cfg.seed, cfg.shard_blocks(k), cfg.trials))
        .sum();
    Ok(McEstimate::from_count(events, cfg.trials))
}

pub fn mc_outage(params: &SystemParams, scheme: &Scheme, cfg: &McConfig) -> Result<McEstimate> {
    run(&Simulator::new(params, McTarget::Outage(*scheme))?, cfg)
}

pub fn mc_energy_outage(params: &SystemParams, cfg: &McConfig) -> Result<McEstimate> {
    run(&Simulator::new(params, McTarget::EnergyOutage)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_sequential() {
        let p = SystemParams::default();
        let s = Scheme::Improved;
        for shards in [1, 3, 8] {
            let cfg = McConfig {
                trials: 70_001,
                seed: 3,
                shards,
            };
            assert_eq!(
                mc_outage(&p, &s, &cfg).unwrap(),
                twr_outage_core::montecarlo::mc_outage(&p, &s, &cfg).unwrap()
            );
        }
    }
}
