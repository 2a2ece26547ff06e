//! Direct simulation of the outage and energy-outage events.
//!
//! Trials are grouped in fixed blocks of [`BLOCK_TRIALS`]. Block `k` draws
//! from a ChaCha8 stream keyed by `(seed, k)`, so a block's outcome does not
//! depend on which shard runs it. Shards are contiguous block ranges and
//! their counts add up, giving identical estimates for any shard count.

use core::ops::Range;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::outage_capacity;
use crate::model::{
    below_sensitivity, decide_dynamic_ps, harvested_powers, outage_indicator, snr_tuple,
    ChannelRealization, Scheme,
};
use crate::params::{derive_constants, DerivedConstants, SystemParams};
use crate::special::sample_exponential;
use crate::{Error, Result};

/// Trials per RNG block.
pub const BLOCK_TRIALS: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub shards: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            trials: 1_000_000,
            seed: 1,
            shards: 1,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidMcConfig("trials must be >= 1"));
        }
        if self.shards == 0 {
            return Err(Error::InvalidMcConfig("shards must be >= 1"));
        }
        if self.shards > self.trials {
            return Err(Error::InvalidMcConfig("shards must not exceed trials"));
        }
        Ok(())
    }

    /// Number of RNG blocks covering all trials.
    #[inline]
    pub fn blocks(&self) -> u64 {
        self.trials.div_ceil(BLOCK_TRIALS)
    }

    /// Blocks handled by shard `k`.
    pub fn shard_blocks(&self, k: u64) -> Range<u64> {
        let n = self.blocks() as u128;
        let s = self.shards as u128;
        let k = k as u128;
        ((k * n / s) as u64)..(((k + 1) * n / s) as u64)
    }
}

/// Frequency estimate of an event.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[must_use]
pub struct McEstimate {
    pub probability: f64,
    /// Binomial standard error `sqrt(p (1 - p) / N)`.
    pub std_error: f64,
    pub trials: u64,
}

impl McEstimate {
    pub fn from_count(events: u64, trials: u64) -> Self {
        let n = trials as f64;
        let p = events as f64 / n;
        Self {
            probability: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            trials,
        }
    }
}

/// What a simulation counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McTarget {
    /// System outage under the given scheme. Sensitivity gating applies when
    /// the parameters set one.
    Outage(Scheme),
    /// Both terminals' harvested power below the circuit sensitivity under
    /// optimal splitting.
    EnergyOutage,
}

/// A prepared simulation: constants derived once, evaluated per trial.
#[derive(Debug, Clone)]
pub struct Simulator {
    consts: DerivedConstants,
    target: McTarget,
}

impl Simulator {
    pub fn new(params: &SystemParams, target: McTarget) -> Result<Self> {
        let theta = match target {
            McTarget::Outage(s) => {
                s.validate()?;
                match s {
                    Scheme::DynamicPs { theta } => theta,
                    _ => 0.5,
                }
            }
            McTarget::EnergyOutage => {
                if params.circuit_sensitivity_dbm.is_none() {
                    return Err(Error::MissingSensitivity);
                }
                0.5
            }
        };
        Ok(Self {
            consts: derive_constants(params, theta)?,
            target,
        })
    }

    #[inline]
    pub fn consts(&self) -> &DerivedConstants {
        &self.consts
    }

    /// Whether the counted event happens for `ch`.
    #[inline]
    pub fn event(&self, ch: &ChannelRealization) -> bool {
        let c = &self.consts;
        match self.target {
            McTarget::Outage(scheme) => {
                let dec = scheme.decide(c, ch);
                outage_indicator(c, &snr_tuple(c, ch, &dec))
            }
            McTarget::EnergyOutage => {
                let p_th = c.sensitivity_w.unwrap_or(0.0);
                // theta does not enter the harvested powers.
                let dec = decide_dynamic_ps(c, ch, 0.5).expect("fixed valid theta");
                let (ha, hb) = harvested_powers(c, ch, &dec);
                below_sensitivity(ha, p_th) && below_sensitivity(hb, p_th)
            }
        }
    }

    /// Event count in block `block`, which holds `trials` trials.
    pub fn count_block(&self, seed: u64, block: u64, trials: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block);
        let (ma, mb) = (self.consts.fading_mean_a, self.consts.fading_mean_b);
        let mut events = 0;
        for _ in 0..trials {
            let gain_sq_a = sample_exponential(&mut rng, ma);
            let gain_sq_b = sample_exponential(&mut rng, mb);
            let ch = ChannelRealization {
                gain_sq_a,
                gain_sq_b,
            };
            events += u64::from(self.event(&ch));
        }
        events
    }

    /// Event count over a range of blocks of a run with `total_trials` trials.
    pub fn count_blocks(&self, seed: u64, blocks: Range<u64>, total_trials: u64) -> u64 {
        blocks
            .map(|b| {
                let start = b * BLOCK_TRIALS;
                let len = BLOCK_TRIALS.min(total_trials.saturating_sub(start));
                self.count_block(seed, b, len)
            })
            .sum()
    }

    /// Runs every shard in turn.
    pub fn run(&self, cfg: &McConfig) -> Result<McEstimate> {
        cfg.validate()?;
        let events = (0..cfg.shards)
            .map(|k| self.count_blocks(cfg.seed, cfg.shard_blocks(k), cfg.trials))
            .sum();
        Ok(McEstimate::from_count(events, cfg.trials))
    }
}

/// Simulated outage probability of `scheme`.
pub fn mc_outage(params: &SystemParams, scheme: &Scheme, cfg: &McConfig) -> Result<McEstimate> {
    Simulator::new(params, McTarget::Outage(*scheme))?.run(cfg)
}

/// Simulated energy outage probability. Needs a circuit sensitivity.
pub fn mc_energy_outage(params: &SystemParams, cfg: &McConfig) -> Result<McEstimate> {
    Simulator::new(params, McTarget::EnergyOutage)?.run(cfg)
}

/// Outage capacity with the simulated outage.
pub fn mc_capacity(params: &SystemParams, scheme: &Scheme, cfg: &McConfig) -> Result<f64> {
    let est = mc_outage(params, scheme, cfg)?;
    outage_capacity(params, est.probability)
}

/// `|(analytic - simulated) / simulated|`.
pub fn relative_error(analytic: f64, mc: &McEstimate) -> Result<f64> {
    if mc.probability == 0.0 {
        return Err(Error::ZeroSimulation);
    }
    Ok(((analytic - mc.probability) / mc.probability).abs())
}
