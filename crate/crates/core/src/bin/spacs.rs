use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spacs::audit::{AuditGrid, Quantity};
use spacs::io::args::{parse_angle, parse_angle_list};
use spacs::io::commands::{self, FigOptions};
use spacs::io::{FigSeries, GridSpec};
use spacs::params::{self, ExperimentParams};
use spacs::squeezing::{Backend, Exec, RangeSpec};
use spacs::Result;

#[derive(Parser)]
#[command(name = "spacs", version, about = "Postselected measurement on photon-added coherent states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// coherent amplitude modulus
    #[arg(long)]
    r: Option<f64>,
    /// coherent amplitude phase (accepts forms like `pi/4`)
    #[arg(long, value_parser = angle)]
    theta: Option<f64>,
    /// preselection relative phase
    #[arg(long, value_parser = angle)]
    delta: Option<f64>,
    /// preselection polar angle, below pi
    #[arg(long, value_parser = angle)]
    phi: Option<f64>,
    /// coupling ratio
    #[arg(long)]
    s: Option<f64>,
    /// Fock levels kept (default: $SPACS_TRUNC or 128)
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, default_value = "oracle")]
    backend: String,
    /// evaluate on one thread
    #[arg(long)]
    serial: bool,
}

#[derive(Args)]
struct Sweep {
    /// comma-separated phi values for the curve legend
    #[arg(long)]
    phis: Option<String>,
    #[arg(long)]
    s_min: Option<f64>,
    #[arg(long)]
    s_max: Option<f64>,
    #[arg(long)]
    s_step: Option<f64>,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    r_step: Option<f64>,
    /// fidelity columns (fig3)
    #[arg(long)]
    s_values: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Grid {
    #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
    p_min: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    p_max: f64,
    #[arg(long, default_value_t = 0.04)]
    step: f64,
    /// sample cell centres instead of nodes
    #[arg(long)]
    midpoints: bool,
}

#[derive(Subcommand)]
enum Command {
    /// s_os and friends versus s at fixed r
    Fig1a(FigArgs),
    /// versus r at fixed s
    Fig1b(FigArgs),
    /// s_ass and friends versus s at fixed r
    Fig2a(FigArgs),
    /// versus r at fixed s
    Fig2b(FigArgs),
    /// fidelity versus r for several couplings
    Fig3(FigArgs),
    /// Wigner function on a grid
    Wigner {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        out: PathBuf,
    },
    /// printed closed forms against the oracle
    Audit {
        /// comma-separated subset of n_mean,m_a,m_a2,m_a2d2,m_a4,kappa_sq,wigner
        #[arg(long)]
        quantities: Option<String>,
        #[arg(long)]
        serial: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// one parameter point as a key-value block
    Point {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// re-run a command from its manifest
    Replay {
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        serial: bool,
    },
}

#[derive(Args)]
struct FigArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    sweep: Sweep,
}

fn angle(s: &str) -> std::result::Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

fn exec(serial: bool) -> Exec {
    if serial {
        Exec::Serial
    } else {
        Exec::Parallel
    }
}

impl Common {
    fn resolve(&self) -> Result<(ExperimentParams, Backend)> {
        let mut p = ExperimentParams::figure_preset();
        p.trunc = match self.trunc {
            Some(t) => t,
            None => params::trunc_from_env()?,
        };
        p.r = self.r.unwrap_or(p.r);
        p.theta = self.theta.unwrap_or(p.theta);
        p.delta = self.delta.unwrap_or(p.delta);
        p.phi = self.phi.unwrap_or(p.phi);
        p.s = self.s.unwrap_or(p.s);
        Ok((p.validate()?, self.backend.parse()?))
    }
}

fn range(default: RangeSpec, min: Option<f64>, max: Option<f64>, step: Option<f64>) -> Option<RangeSpec> {
    if min.is_none() && max.is_none() && step.is_none() {
        return None;
    }
    Some(RangeSpec::new(
        min.unwrap_or(default.min),
        max.unwrap_or(default.max),
        step.unwrap_or(default.step),
    ))
}

fn fig(series: FigSeries, args: &FigArgs) -> Result<()> {
    let (p, backend) = args.common.resolve()?;
    let s = &args.sweep;
    let range = if series.sweeps_s() {
        range(commands::DEFAULT_S_RANGE, s.s_min, s.s_max, s.s_step)
    } else {
        range(commands::DEFAULT_R_RANGE, s.r_min, s.r_max, s.r_step)
    };
    let opts = FigOptions {
        phis: s.phis.as_deref().map(parse_angle_list).transpose()?,
        range,
        s_values: s.s_values.as_deref().map(parse_angle_list).transpose()?,
    };
    commands::cmd_fig(series, &opts, &p, backend, exec(args.common.serial), &s.out)
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Fig1a(a) => fig(FigSeries::Fig1a, &a),
        Command::Fig1b(a) => fig(FigSeries::Fig1b, &a),
        Command::Fig2a(a) => fig(FigSeries::Fig2a, &a),
        Command::Fig2b(a) => fig(FigSeries::Fig2b, &a),
        Command::Fig3(a) => fig(FigSeries::Fig3, &a),
        Command::Wigner { common, grid, out } => {
            let (p, backend) = common.resolve()?;
            let spec = if grid.midpoints {
                GridSpec::midpoints(grid.x_min, grid.x_max, grid.p_min, grid.p_max, grid.step)
            } else {
                GridSpec::nodes(grid.x_min, grid.x_max, grid.p_min, grid.p_max, grid.step)
            };
            commands::cmd_wigner(spec, &p, backend, exec(common.serial), &out)
        }
        Command::Audit {
            quantities,
            serial,
            out,
        } => {
            let quantities = match quantities {
                Some(list) => list
                    .split(',')
                    .map(|q| q.trim().parse())
                    .collect::<Result<Vec<Quantity>>>()?,
                None => Quantity::ALL.to_vec(),
            };
            let summary = commands::cmd_audit(&quantities, &AuditGrid::default(), exec(serial), &out)?;
            print!("{summary}");
            Ok(())
        }
        Command::Point { common, out } => {
            let (p, backend) = common.resolve()?;
            print!("{}", commands::cmd_point(&p, backend, out.as_deref())?);
            Ok(())
        }
        Command::Replay { manifest, out, serial } => {
            print!("{}", commands::replay(&manifest, out.as_deref(), exec(serial))?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spacs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
