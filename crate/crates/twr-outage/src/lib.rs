//! Parameter sweeps, figure tables, the validation suite and file formats
//! on top of [`twr_outage_core`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod figures;
pub mod output;
pub mod parallel;
pub mod sweep;
pub mod validation;

pub use self::config::Config;
pub use self::error::{Error, Result};
pub use self::sweep::{run_sweep, SweepResult, SweepRow, SweepSpec, SweptParam};
