//! Outage analysis for a three-step two-way decode-and-forward relay whose
//! relay is powered by power-splitting energy harvesting.
//!
//! The crate is `no_std` (it needs `alloc` for quadrature nodes) and is
//! organised bottom-up:
//!
//! * [`params`]: system parameters, unit conversion and the derived constants
//!   every formula works from.
//! * [`model`]: per-realization SNRs, the three relay control schemes and the
//!   outage event.
//! * [`special`]: Gauss-Chebyshev quadrature, the modified Bessel function
//!   `K1` and exponential sampling.
//! * [`analytic`]: closed-form outage for the dynamic power-splitting and the
//!   improved dynamic schemes, capacity, energy outage and diversity slope.
//! * [`montecarlo`]: block-seeded simulation of the outage event. Results
//!   depend only on `(seed, trials)`, never on how blocks are sharded.
#![no_std]
// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Oracle values in tests keep all the digits they were computed with.
#![cfg_attr(test, allow(clippy::excessive_precision))]

extern crate alloc;

pub mod analytic;
mod error;
pub mod model;
pub mod montecarlo;
pub mod params;
pub mod special;

pub use self::error::{Error, Result};
pub use self::model::{
    ChannelRealization, PowerSplit, Scheme, SchemeDecision, SnrTuple, SNR_TIE_RTOL,
};
pub use self::montecarlo::{McConfig, McEstimate};
pub use self::params::{derive_constants, DerivedConstants, SystemParams};
