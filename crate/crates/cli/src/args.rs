use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cra_core::ModelParams;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "cra",
    version,
    about = "Single-excitation physics of a coupled-resonator array with a two-site emitter"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dispersion omega_k over the Brillouin zone and the band edges.
    Band {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of k samples on [-pi, pi].
        #[arg(long, default_value_t = 65)]
        points: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bound-state energies, localisation, normalisation and chirality.
    Bound {
        #[command(flatten)]
        model: ModelArgs,
        /// Emit photon amplitudes for sites -R..=R instead of the level table.
        #[arg(long, value_name = "R")]
        profile: Option<u32>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Single-photon transmission and reflection amplitudes.
    Scatter {
        #[command(flatten)]
        model: ModelArgs,
        /// Single wave number in (0, pi).
        #[arg(long, conflicts_with = "points")]
        k: Option<f64>,
        /// Number of midpoint samples of (0, pi).
        #[arg(long, default_value_t = 64)]
        points: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Chirality of each bound state, closed form and direct sums.
    Chirality {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Excited-state population of the emitter against time.
    Dynamics {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
        /// Brillouin-zone samples for the spectral method.
        #[arg(long, default_value_t = cra_core::dynamics::DEFAULT_NK)]
        nk: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Spectral)]
        method: MethodArg,
        /// Oracle chain length (odd); defaults to the light-cone minimum.
        #[arg(long)]
        sites: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Parameter scan of levels, chirality or bound-state weight.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cross-check analytic results against the finite-chain oracle.
    Validate {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Multiplies every tolerance; 0 forces every check to fail.
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 200.0, allow_negative_numbers = true)]
    pub omega_c: f64,
    #[arg(long, default_value_t = 200.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Hopping strength; all other energies are read in the same units.
    #[arg(long = "j", default_value_t = 1.0)]
    pub hopping: f64,
    #[arg(long, conflicts_with = "g")]
    pub g0: Option<f64>,
    #[arg(long, conflicts_with = "g")]
    pub g1: Option<f64>,
    /// Equal couplings g0 = g1 = g.
    #[arg(long)]
    pub g: Option<f64>,
}

impl ModelArgs {
    pub fn couplings(&self) -> Result<(f64, f64), CliError> {
        match (self.g, self.g0, self.g1) {
            (Some(g), _, _) => Ok((g, g)),
            (None, None, None) => Err(CliError::Usage(
                "couplings required: pass --g or at least one of --g0/--g1".into(),
            )),
            (None, g0, g1) => Ok((g0.unwrap_or(0.0), g1.unwrap_or(0.0))),
        }
    }

    pub fn params(&self) -> Result<ModelParams, CliError> {
        let (g0, g1) = self.couplings()?;
        Ok(ModelParams::new(
            self.omega_c,
            self.omega,
            self.hopping,
            g0,
            g1,
        )?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Spectral,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    G0,
    G1,
    /// Locks g0 = g1.
    G,
    #[value(name = "Omega", alias = "omega")]
    Omega,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::G0 => "g0",
            Axis::G1 => "g1",
            Axis::G => "g",
            Axis::Omega => "Omega",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Levels,
    Chirality,
    BoundWeight,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Levels => "levels",
            Quantity::Chirality => "chirality",
            Quantity::BoundWeight => "bound-weight",
        }
    }
}
