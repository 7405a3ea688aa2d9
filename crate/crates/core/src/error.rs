use thiserror::Error;

/// Which integration axis failed, for nested quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Outer,
    Inner,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Outer => f.write_str("outer"),
            Axis::Inner => f.write_str("inner"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadratureSpec(String),

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error(
        "quadrature did not converge{}: best estimate {estimate:e}, error estimate {error:e} after {subdivisions} panels",
        axis.map(|a| format!(" on {a} axis")).unwrap_or_default()
    )]
    NotConverged {
        axis: Option<Axis>,
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("root is not bracketed: f({lo:e}) = {f_lo:e}, f({hi:e}) = {f_hi:e}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("wavelength {wavelength_um:.4} um is outside the Sellmeier validity range [0.21, 3.71] um")]
    OutOfRange { wavelength_um: f64 },

    #[error("no guided fundamental mode at omega = {omega:e} rad/s")]
    Cutoff { omega: f64 },

    #[error("vanishing four-mode overlap, effective area undefined")]
    DegenerateOverlap,

    #[error("monochromatic pump: {0}")]
    Monochromatic(&'static str),

    #[error("pulsed pump where a monochromatic one is required: {0}")]
    Pulsed(&'static str),

    #[error("no phase-matched solution in [{lo_um:.4}, {hi_um:.4}] um: {reason}")]
    NoPhasematch { lo_um: f64, hi_um: f64, reason: String },

    #[error("signal and idler group velocities coincide (|dbeta1| = {delta_beta1:e} s/m); the linearized closed form diverges")]
    Divergence { delta_beta1: f64 },

    #[error("phase-mismatch gradient vanishes; orientation undefined")]
    UndefinedOrientation,

    #[error("integration window did not converge after {expansions} expansions (last two values {previous:e}, {last:e})")]
    WindowFailure {
        expansions: usize,
        previous: f64,
        last: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error at `{path}`: {message}")]
    Config { path: String, message: String },
}

impl Error {
    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotConverged { .. }
                | Error::WindowFailure { .. }
                | Error::Divergence { .. }
                | Error::NoPhasematch { .. }
                | Error::UndefinedOrientation
                | Error::Cutoff { .. }
                | Error::DegenerateOverlap
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
