use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sfwm", version, about = "Photon-pair generation by four-wave mixing in optical fiber")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output file; standard output when absent. A `.manifest.json` sidecar
    /// is written next to every output file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Also render an SVG figure next to the output file.
    #[arg(long, global = true)]
    pub svg: bool,

    /// Deterministic evaluation with no random numbers (always on).
    #[arg(long, global = true)]
    pub seedless_deterministic: bool,

    /// Suppress the configuration summary on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Effective index, β1 and β2 over a wavelength range, with zero-dispersion wavelengths.
    Dispersion {
        /// Wavelength range in µm.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.45, 1.6])]
        range: Vec<f64>,
        #[arg(long, default_value_t = 116)]
        points: usize,
    },
    /// Nonlinear coefficients and effective area at the configured carriers.
    Gamma,
    /// Conversion efficiency and pair rate.
    Efficiency {
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Efficiency as a function of one parameter.
    Sweep {
        #[arg(long, value_enum)]
        parameter: SweepParameter,
        /// Parameter range in the parameter's unit (m, mW, THz or µm).
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"], required = true)]
        range: Vec<f64>,
        #[arg(long, default_value_t = 12)]
        points: usize,
        #[arg(long, value_enum, default_value_t = SweepMethod::Both)]
        method: SweepMethod,
        /// Add the monochromatic efficiency at the same average powers.
        #[arg(long)]
        with_cw: bool,
    },
    /// Joint spectral amplitude on a grid around the phase-matched centre.
    Jsa {
        #[arg(long, num_args = 2, value_names = ["NS", "NI"], default_values_t = [81, 81])]
        points: Vec<usize>,
    },
    /// Phase-matching contour of degenerate pumps over a pump-wavelength range.
    Contour {
        /// Pump wavelength range in µm.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.6, 0.9])]
        pump_range: Vec<f64>,
        #[arg(long, default_value_t = 61)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Numeric,
    Closed,
    Cw,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParameter {
    /// Fiber length, m.
    Length,
    /// Average power of every pump, mW.
    Power,
    /// Bandwidth σ of every pump, THz (10¹² rad/s).
    Bandwidth,
    /// Pump wavelength, µm; both pumps when degenerate, pump1 otherwise.
    #[value(alias = "pump-frequency")]
    PumpWavelength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMethod {
    Numeric,
    Closed,
    Both,
}
