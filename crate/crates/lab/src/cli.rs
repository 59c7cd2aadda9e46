//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Equilibrium droplets of the elliptic Ginibre ensemble with a point charge.
#[derive(Debug, Parser)]
#[command(name = "droplet-lab", version, about)]
pub struct Cli {
    /// The command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Classify (p, c, tau) into Regime I, II or III.
    #[command(allow_negative_numbers = true)]
    Classify(PointArgs),
    /// Emit droplet boundary curves as CSV and optionally SVG.
    #[command(allow_negative_numbers = true)]
    Droplet(DropletArgs),
    /// Phase-diagram scan over a (p, c) grid.
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Weighted energy, Robin constant and potential integral.
    #[command(allow_negative_numbers = true)]
    Energy(PointArgs),
    /// Energy as a function of p at fixed (c, tau).
    #[command(allow_negative_numbers = true)]
    EnergyCurve(CurveArgs),
    /// kappa_min, kappa_1, kappa_cri and kappa_max for (a, tau).
    #[command(allow_negative_numbers = true)]
    Kappa(KappaArgs),
    /// Univalence test of the conformal map for (a, kappa, tau).
    #[command(allow_negative_numbers = true)]
    Univalence(UnivalenceArgs),
    /// Fekete-point minimisation from a key=value config file.
    Fekete(FeketeArgs),
    /// Leading moments coefficient K(z, c, tau).
    #[command(allow_negative_numbers = true)]
    Moments(MomentsArgs),
}

/// A model parameter triple.
#[derive(Debug, Clone, Copy, Args)]
pub struct PointArgs {
    /// Charge location on the real axis.
    #[arg(long)]
    pub p: f64,
    /// Charge strength.
    #[arg(long)]
    pub c: f64,
    /// Non-Hermiticity parameter in [0, 1).
    #[arg(long)]
    pub tau: f64,
}

/// Options of `droplet`.
#[derive(Debug, Clone, Args)]
pub struct DropletArgs {
    /// Charge location (model mode).
    #[arg(long, required_unless_present = "raw_map")]
    pub p: Option<f64>,
    /// Charge strength (model mode).
    #[arg(long, required_unless_present = "raw_map")]
    pub c: Option<f64>,
    /// Non-Hermiticity parameter.
    #[arg(long)]
    pub tau: f64,
    /// Draw the rational map for (a, kappa, tau) directly, univalent or not.
    #[arg(long, requires_all = ["a", "kappa"])]
    pub raw_map: bool,
    /// Map parameter a in (0, 1) (raw-map mode).
    #[arg(long)]
    pub a: Option<f64>,
    /// Map parameter kappa (raw-map mode).
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Base number of samples per curve.
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG destination.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Options of `scan`.
#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Non-Hermiticity parameter.
    #[arg(long)]
    pub tau: f64,
    /// Smallest p.
    #[arg(long, default_value_t = 0.0)]
    pub p_min: f64,
    /// Largest p.
    #[arg(long, default_value_t = 3.0)]
    pub p_max: f64,
    /// Smallest c.
    #[arg(long, default_value_t = 0.0)]
    pub c_min: f64,
    /// Largest c.
    #[arg(long, default_value_t = 3.0)]
    pub c_max: f64,
    /// Grid nodes along p.
    #[arg(long, default_value_t = 61)]
    pub np: usize,
    /// Grid nodes along c.
    #[arg(long, default_value_t = 61)]
    pub nc: usize,
    /// Classify on one thread.
    #[arg(long)]
    pub sequential: bool,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG destination.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Options of `energy-curve`.
#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Charge strength.
    #[arg(long)]
    pub c: f64,
    /// Non-Hermiticity parameter.
    #[arg(long)]
    pub tau: f64,
    /// Smallest p.
    #[arg(long, default_value_t = 0.0)]
    pub p_min: f64,
    /// Largest p.
    #[arg(long, default_value_t = 3.0)]
    pub p_max: f64,
    /// Number of p values, endpoints included.
    #[arg(long, default_value_t = 301)]
    pub n: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Options of `kappa`.
#[derive(Debug, Clone, Copy, Args)]
pub struct KappaArgs {
    /// Map parameter a in (0, 1).
    #[arg(long)]
    pub a: f64,
    /// Non-Hermiticity parameter.
    #[arg(long)]
    pub tau: f64,
}

/// Options of `univalence`.
#[derive(Debug, Clone, Copy, Args)]
pub struct UnivalenceArgs {
    /// Map parameter a in (0, 1).
    #[arg(long)]
    pub a: f64,
    /// Map parameter kappa.
    #[arg(long)]
    pub kappa: f64,
    /// Non-Hermiticity parameter.
    #[arg(long)]
    pub tau: f64,
    /// Sample points on the unit circle.
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
}

/// Options of `fekete`.
#[derive(Debug, Clone, Args)]
pub struct FeketeArgs {
    /// Flat key=value configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG overlay destination.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Options of `moments`.
#[derive(Debug, Clone, Copy, Args)]
pub struct MomentsArgs {
    /// Real evaluation point.
    #[arg(long)]
    pub z: f64,
    /// Exponent parameter.
    #[arg(long)]
    pub c: f64,
    /// Non-Hermiticity parameter.
    #[arg(long)]
    pub tau: f64,
}
