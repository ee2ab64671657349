use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nonclassical_cli::config::RawConfig;
use nonclassical_cli::error::{CliError, Result};
use nonclassical_cli::spec::{GridSpec, StateDumpSpec, SweepSpec, VolumeSpec};
use nonclassical_cli::{cmd_grid, cmd_state, cmd_sweep, cmd_volume};

/// Nonclassicality toolkit for finite Fock superpositions: parameter sweeps
/// of moment-based witnesses, Wigner and tomogram grids, and the
/// nonclassical-volume measure.
#[derive(Parser)]
#[command(name = "nonclassical", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one state parameter and evaluate witnesses at every point (CSV).
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Evaluate a Wigner or tomogram surface on a lattice (CSV).
    #[command(allow_negative_numbers = true)]
    Grid(GridArgs),
    /// Compute the nonclassical volume with grid refinement (JSON report).
    #[command(allow_negative_numbers = true)]
    Volume(VolumeArgs),
    /// Dump the coefficients and photon number distribution of a state (CSV).
    #[command(allow_negative_numbers = true)]
    State(StateArgs),
}

/// State selection and process options shared by all subcommands. Flags
/// override values from `--config`.
#[derive(Args)]
struct CommonArgs {
    /// Configuration file with key = value lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// State family: ngbs | binomial | fock | coherent.
    #[arg(long)]
    family: Option<String>,
    /// Dimension M (ngbs, binomial).
    #[arg(long = "M")]
    dimension: Option<f64>,
    /// Probability p (ngbs, binomial).
    #[arg(long)]
    p: Option<f64>,
    /// Deformation q (ngbs).
    #[arg(long)]
    q: Option<f64>,
    /// Photon number n (fock).
    #[arg(long)]
    n: Option<f64>,
    /// Coherent amplitude alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Coherent truncation cutoff (default alpha² + 10 alpha + 20).
    #[arg(long)]
    cutoff: Option<f64>,
    /// Output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

impl CommonArgs {
    fn load(&self) -> Result<(RawConfig, Option<usize>)> {
        let mut raw = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                RawConfig::parse(&text)?
            }
            None => RawConfig::new(),
        };
        if let Some(v) = &self.family {
            raw.set("family", v.clone());
        }
        for (key, v) in [
            ("M", self.dimension),
            ("p", self.p),
            ("q", self.q),
            ("n", self.n),
            ("alpha", self.alpha),
            ("cutoff", self.cutoff),
        ] {
            if let Some(v) = v {
                raw.set(key, format!("{v}"));
            }
        }
        if let Some(v) = &self.out {
            raw.set("out", v.display().to_string());
        }
        let workers = match self.workers {
            Some(w) => Some(w),
            None => raw.get_usize("workers")?,
        };
        Ok((raw, workers))
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Name of the swept parameter (one of the family's parameters).
    #[arg(long)]
    sweep: Option<String>,
    /// First sweep value.
    #[arg(long)]
    from: Option<f64>,
    /// Last sweep value.
    #[arg(long)]
    to: Option<f64>,
    /// Number of sweep points (>= 2).
    #[arg(long)]
    count: Option<usize>,
    /// Witness as name:order (repeatable). Criteria: hoa, hosps,
    /// hong-mandel, hillery, agarwal-tara, vogel.
    #[arg(long = "witness")]
    witnesses: Vec<String>,
    /// Tabular output format (csv).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Surface kind: wigner | tomogram.
    #[arg(long)]
    kind: Option<String>,
    /// Half-width of the window (default sqrt(2N) + 6).
    #[arg(long = "grid-window")]
    grid_window: Option<f64>,
    /// Lattice points per axis, N or NxM.
    #[arg(long)]
    resolution: Option<String>,
}

#[derive(Args)]
struct VolumeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Refinement tolerance on successive delta estimates.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Half-width of the window (default sqrt(2N) + 6).
    #[arg(long = "grid-window")]
    grid_window: Option<f64>,
    /// Lattice points per axis of the coarsest pass.
    #[arg(long)]
    resolution: Option<usize>,
    /// Maximum number of dyadic refinements.
    #[arg(long = "max-refinements")]
    max_refinements: Option<usize>,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    common: CommonArgs,
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep(args) => {
            let (mut raw, workers) = args.common.load()?;
            if let Some(v) = &args.sweep {
                raw.set("sweep", v.clone());
            }
            if let Some(v) = args.from {
                raw.set("from", format!("{v}"));
            }
            if let Some(v) = args.to {
                raw.set("to", format!("{v}"));
            }
            if let Some(v) = args.count {
                raw.set("count", format!("{v}"));
            }
            if !args.witnesses.is_empty() {
                raw.remove("witness");
                for w in &args.witnesses {
                    raw.push("witness", w.clone());
                }
            }
            if let Some(v) = &args.format {
                raw.set("format", v.clone());
            }
            let spec = SweepSpec::from_raw(&raw)?;
            cmd_sweep(&spec, workers)
        }
        Command::Grid(args) => {
            let (mut raw, workers) = args.common.load()?;
            if let Some(v) = &args.kind {
                raw.set("kind", v.clone());
            }
            if let Some(v) = args.grid_window {
                raw.set("window", format!("{v}"));
            }
            if let Some(v) = &args.resolution {
                raw.set("resolution", v.clone());
            }
            let spec = GridSpec::from_raw(&raw)?;
            cmd_grid(&spec, workers)
        }
        Command::Volume(args) => {
            let (mut raw, workers) = args.common.load()?;
            if let Some(v) = args.tolerance {
                raw.set("tolerance", format!("{v}"));
            }
            if let Some(v) = args.grid_window {
                raw.set("window", format!("{v}"));
            }
            if let Some(v) = args.resolution {
                raw.set("resolution", format!("{v}"));
            }
            if let Some(v) = args.max_refinements {
                raw.set("max_refinements", format!("{v}"));
            }
            let spec = VolumeSpec::from_raw(&raw)?;
            cmd_volume(&spec, workers)
        }
        Command::State(args) => {
            let (raw, _) = args.common.load()?;
            let spec = StateDumpSpec::from_raw(&raw)?;
            cmd_state(&spec)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version print to stdout and exit 0; usage errors exit 1
            let is_error = e.use_stderr();
            let _ = e.print();
            return if is_error {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
