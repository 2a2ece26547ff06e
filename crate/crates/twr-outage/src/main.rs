use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use twr_outage::config::ParamOverrides;
use twr_outage::figures::fig;
use twr_outage::output::{write_csv, write_json};
use twr_outage::sweep::{run_sweep, SweepSpec, SweptParam};
use twr_outage::validation::{validate, Options};
use twr_outage::{Config, Result};
use twr_outage_core::{derive_constants, McConfig, Scheme};

#[derive(Debug, Parser)]
#[command(version, about = "Outage analysis and simulation of a two-way SWIPT relay")]
struct Cli {
    /// JSON configuration file with `params` and `mc` sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep one parameter over a list of values.
    Sweep {
        #[arg(long, value_enum)]
        param: SweptParam,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        values: Vec<f64>,
        /// Comma-separated scheme ids: `improved`, `dynamic_<theta>`, `static_<rho>`.
        #[arg(long, value_delimiter = ',', default_value = "improved,dynamic_0.5,static_0.5")]
        schemes: Vec<Scheme>,
        /// Also emit energy outage rows.
        #[arg(long)]
        energy_outage: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce one of the standard figure sweeps (3 to 9).
    Fig {
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance criteria. Exits nonzero if any fails.
    Validate {
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the derived constants as JSON.
    Params {
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[command(flatten)]
        overrides: ParamOverrides,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo trials per point.
    #[arg(long)]
    trials: Option<u64>,
    /// Number of simulation shards; results do not depend on it.
    #[arg(long)]
    shards: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON array instead of CSV.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    overrides: ParamOverrides,
}

impl Common {
    fn mc(&self, base: &McConfig) -> McConfig {
        McConfig {
            trials: self.trials.unwrap_or(base.trials),
            seed: self.seed.unwrap_or(base.seed),
            shards: self.shards.unwrap_or(base.shards),
        }
    }

    fn emit<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        let out: Box<dyn Write> = match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        };
        if self.json {
            write_json(out, rows)
        } else {
            write_csv(out, rows)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Sweep {
            param,
            values,
            schemes,
            energy_outage,
            common,
        } => {
            let mut base = config.params;
            common.overrides.apply(&mut base);
            let spec = SweepSpec {
                swept: param,
                values,
                schemes,
                energy_outage,
                base,
                mc: common.mc(&config.mc),
            };
            common.emit(&run_sweep(&spec)?.rows)?;
        }
        Command::Fig { n, common } => {
            let result = fig(n, &config.params, &common.overrides, &common.mc(&config.mc))?;
            common.emit(&result.rows)?;
        }
        Command::Validate { only, common } => {
            let mc = common.mc(&config.mc);
            let reports = validate(
                &Options {
                    seed: mc.seed,
                    shards: mc.shards,
                },
                &only,
            )?;
            if common.out.is_some() || common.json {
                common.emit(&reports)?;
            }
            for r in &reports {
                eprintln!("{r}");
            }
            return Ok(reports.iter().all(|r| r.passed));
        }
        Command::Params { theta, overrides } => {
            let mut p = config.params;
            overrides.apply(&mut p);
            let c = derive_constants(&p, theta)?;
            let mut out = io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, &c)?;
            writeln!(out)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
