//! Run configuration: flags, the optional JSON config file that mirrors
//! them, and the merge rule (an explicit flag always wins).

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;
use tauorbit_core::{DiscreteParams, Error, Extrapolation};

/// How a failed invocation maps to an exit status: 2 for anything wrong with
/// the requested configuration, 3 for a computation that failed on valid
/// inputs. Verification failures are not errors; `verify` exits 1 itself.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(Error),
    Run(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Run(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Config(e) | CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

/// Tags a core result with the phase it failed in.
pub trait Phase<T> {
    /// Failure means the configuration was rejected (exit 2).
    fn config(self) -> Result<T, CliError>;
    /// Failure means the computation itself failed (exit 3).
    fn run(self) -> Result<T, CliError>;
}

impl<T> Phase<T> for tauorbit_core::Result<T> {
    fn config(self) -> Result<T, CliError> {
        self.map_err(CliError::Config)
    }

    fn run(self) -> Result<T, CliError> {
        self.map_err(CliError::Run)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Units {
    /// Energies in eV, time in seconds: electron mass, gamma defaults to
    /// the hydrogen ionization energy 13.6.
    EvSec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialKind {
    Coulomb,
    Linear,
    Logarithmic,
    Polynomial,
    HydrogenReconstructed,
    OscillatorReconstructed,
    Tabulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    Hydrogen,
    Linear,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtrapolationArg {
    Error,
    ClampSlope,
}

impl From<ExtrapolationArg> for Extrapolation {
    fn from(a: ExtrapolationArg) -> Self {
        match a {
            ExtrapolationArg::Error => Extrapolation::Error,
            ExtrapolationArg::ClampSlope => Extrapolation::ClampSlope,
        }
    }
}

/// Electron mass in eV s^2/m^2 (0.511 MeV / c^2), for `--units ev-sec`.
pub const ELECTRON_MASS_EV: f64 = 5.685630e-12;

pub struct UnitDefaults {
    pub mass: f64,
    pub gamma: f64,
}

pub fn unit_defaults(units: Option<Units>) -> UnitDefaults {
    match units {
        None => UnitDefaults { mass: 1.0, gamma: 13.6 },
        Some(Units::EvSec) => UnitDefaults { mass: ELECTRON_MASS_EV, gamma: 13.6 },
    }
}

/// JSON mirror of the flags. Every field is optional; fields that make no
/// sense for the invoked subcommand are simply ignored by it.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub tau: Option<f64>,
    pub mass: Option<f64>,
    pub xi: Option<f64>,
    pub units: Option<Units>,
    pub potential: Option<PotentialKind>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub sigma: Option<f64>,
    pub beta: Option<f64>,
    pub epsilon: Option<f64>,
    pub law: Option<LawKind>,
    pub coeff: Option<f64>,
    pub exponent: Option<f64>,
    pub n: Option<String>,
    pub n_max: Option<u32>,
    pub points: Option<usize>,
    pub steps: Option<usize>,
    pub state: Option<String>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub spectrum_csv: Option<PathBuf>,
    pub potential_csv: Option<PathBuf>,
    pub extrapolation: Option<ExtrapolationArg>,
    pub suite: Option<String>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

/// Inclusive index range, `a..b` or a bare `k`.
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let parse_end = |t: &str| {
        t.trim().parse::<u32>().map_err(|_| format!("bad index '{}' in range '{s}'", t.trim()))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse_end(a)?, parse_end(b)?),
        None => {
            let k = parse_end(s)?;
            (k, k)
        }
    };
    if lo == 0 {
        return Err(format!("orbit indices start at 1, got range '{s}'"));
    }
    if hi < lo {
        return Err(format!("empty range '{s}'"));
    }
    Ok((lo, hi))
}

pub fn resolve_range(
    flag: Option<(u32, u32)>,
    file: Option<&str>,
    default: (u32, u32),
) -> Result<(u32, u32), CliError> {
    if let Some(r) = flag {
        return Ok(r);
    }
    match file {
        Some(s) => parse_range(s).map_err(CliError::Usage),
        None => Ok(default),
    }
}

/// `--tau` and `--xi` both pin the step; accepting both would silently drop
/// one, so that is rejected.
pub fn resolve_params(
    tau: Option<f64>,
    xi: Option<f64>,
    mass: f64,
) -> Result<DiscreteParams, CliError> {
    match (tau, xi) {
        (Some(_), Some(_)) => {
            Err(CliError::Usage("--tau and --xi are mutually exclusive".into()))
        }
        (None, Some(xi)) => DiscreteParams::with_xi(xi, mass).config(),
        (Some(tau), None) => DiscreteParams::new(tau, mass).config(),
        (None, None) => DiscreteParams::new(1.0, mass).config(),
    }
}

pub fn missing(flag: &str) -> CliError {
    CliError::Usage(format!("{flag} is required for this invocation"))
}
