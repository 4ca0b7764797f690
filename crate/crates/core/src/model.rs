//! Core types: discretization parameters, phase-space state, and the
//! central-potential models the solvers operate on.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;

/// Time step and mass of the discrete dynamics, plus the derived stiffness
/// constant `xi = 4 pi^2 m / tau^2` that sets the radius scale of periodic
/// orbits. `xi` is always computed from `(tau, mass)`, never set directly.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiscreteParams {
    tau: f64,
    mass: f64,
    xi: f64,
}

impl DiscreteParams {
    pub fn new(tau: f64, mass: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::domain(format!("tau must be positive and finite, got {tau}")));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::domain(format!("mass must be positive and finite, got {mass}")));
        }
        let xi = 4.0 * PI * PI * mass / (tau * tau);
        Ok(DiscreteParams { tau, mass, xi })
    }

    /// Convenience: picks the time step `tau = 2 pi sqrt(mass / xi)` that
    /// realizes the requested stiffness (up to rounding, since `xi` is then
    /// recomputed from `tau`).
    pub fn with_xi(xi: f64, mass: f64) -> Result<Self> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::domain(format!("xi must be positive and finite, got {xi}")));
        }
        Self::new(2.0 * PI * (mass / xi).sqrt(), mass)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }
}

/// Polar phase-space point. `phi` is kept unwrapped so closure checks can
/// compare total accumulated angle against 2 pi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseState {
    pub r: f64,
    pub p_r: f64,
    pub phi: f64,
    pub p_phi: f64,
}

impl PhaseState {
    pub fn new(r: f64, p_r: f64, phi: f64, p_phi: f64) -> Self {
        PhaseState { r, p_r, phi, p_phi }
    }
}

/// One row of a spectrum: orbit index, orbit radius, energy, and the angular
/// momentum that closes the orbit in exactly `n` steps.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrbitSolution {
    pub n: u32,
    pub r_n: f64,
    pub e_n: f64,
    pub p_phi: f64,
}

/// What to do when a tabulated potential is queried outside its grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extrapolation {
    /// Refuse the query.
    Error,
    /// Continue linearly with the boundary slope.
    ClampSlope,
}

#[derive(Debug, Clone)]
pub struct TabulatedPotential {
    pub(crate) curve: MonotoneCubic,
    pub(crate) extrapolation: Extrapolation,
}

#[derive(Debug, Clone)]
pub(crate) enum Kind {
    /// U = -alpha / r
    Coulomb { alpha: f64 },
    /// U = alpha * r
    Linear { alpha: f64 },
    /// U = alpha * ln r
    Logarithmic { alpha: f64 },
    /// U = alpha * r^sigma
    Polynomial { alpha: f64, sigma: f64 },
    /// The potential whose spectrum is E_n = -gamma / n^2 at stiffness `xi`:
    /// U = -exp(4 beta xi) / (4 gamma + 2 xi r^2)
    HydrogenReconstructed { gamma: f64, beta: f64, xi: f64 },
    /// The potential whose spectrum is E_n = alpha * n at stiffness `xi`,
    /// with radius offset `beta` (r_n^2 = beta n + alpha n^3 / (2 xi))
    OscillatorReconstructed { alpha: f64, beta: f64, xi: f64 },
    Tabulated(TabulatedPotential),
}

/// A central potential U(r). Constructed through the checked builders below;
/// invalid parameter combinations are rejected up front.
#[derive(Debug, Clone)]
pub struct PotentialModel {
    pub(crate) kind: Kind,
}

/// Serializable description of a potential, used in JSON sidecars and
/// accepted back by `PotentialModel::from_descriptor`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PotentialDescriptor {
    Coulomb { alpha: f64 },
    Linear { alpha: f64 },
    Logarithmic { alpha: f64 },
    Polynomial { alpha: f64, sigma: f64 },
    HydrogenReconstructed { gamma: f64, beta: f64, xi: f64 },
    OscillatorReconstructed { alpha: f64, beta: f64, xi: f64 },
    Tabulated { r: Vec<f64>, u: Vec<f64>, extrapolation: Extrapolation },
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

impl PotentialModel {
    pub fn coulomb(alpha: f64) -> Result<Self> {
        finite("alpha", alpha)?;
        Ok(PotentialModel { kind: Kind::Coulomb { alpha } })
    }

    pub fn linear(alpha: f64) -> Result<Self> {
        finite("alpha", alpha)?;
        Ok(PotentialModel { kind: Kind::Linear { alpha } })
    }

    pub fn logarithmic(alpha: f64) -> Result<Self> {
        finite("alpha", alpha)?;
        Ok(PotentialModel { kind: Kind::Logarithmic { alpha } })
    }

    /// U = alpha r^sigma with sigma in (-2, 2), sigma != 0, and
    /// alpha * sigma > 0 (attractive force). sigma = 2 is excluded: the
    /// orbit-radius equation degenerates there.
    pub fn polynomial(alpha: f64, sigma: f64) -> Result<Self> {
        finite("alpha", alpha)?;
        finite("sigma", sigma)?;
        if sigma == 0.0 || sigma <= -2.0 || sigma >= 2.0 {
            return Err(Error::domain(format!(
                "polynomial exponent must lie in (-2, 2) excluding 0, got {sigma}"
            )));
        }
        if alpha * sigma <= 0.0 {
            return Err(Error::domain(format!(
                "polynomial potential needs alpha * sigma > 0 for an attractive force, \
                 got alpha = {alpha}, sigma = {sigma}"
            )));
        }
        Ok(PotentialModel { kind: Kind::Polynomial { alpha, sigma } })
    }

    pub fn hydrogen_reconstructed(gamma: f64, beta: f64, xi: f64) -> Result<Self> {
        finite("gamma", gamma)?;
        finite("beta", beta)?;
        finite("xi", xi)?;
        if gamma <= 0.0 {
            return Err(Error::domain(format!("gamma must be positive, got {gamma}")));
        }
        if xi <= 0.0 {
            return Err(Error::domain(format!("xi must be positive, got {xi}")));
        }
        Ok(PotentialModel { kind: Kind::HydrogenReconstructed { gamma, beta, xi } })
    }

    pub fn oscillator_reconstructed(alpha: f64, beta: f64, xi: f64) -> Result<Self> {
        finite("alpha", alpha)?;
        finite("beta", beta)?;
        finite("xi", xi)?;
        if alpha <= 0.0 {
            return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
        }
        if beta < 0.0 {
            return Err(Error::domain(format!("beta must be nonnegative, got {beta}")));
        }
        if xi <= 0.0 {
            return Err(Error::domain(format!("xi must be positive, got {xi}")));
        }
        Ok(PotentialModel { kind: Kind::OscillatorReconstructed { alpha, beta, xi } })
    }

    /// Tabulated U on a strictly increasing, nonnegative radius grid of at
    /// least four points.
    pub fn tabulated(r_grid: Vec<f64>, u_values: Vec<f64>, extrapolation: Extrapolation) -> Result<Self> {
        if r_grid.len() < 4 {
            return Err(Error::domain(format!(
                "tabulated potential needs at least 4 points, got {}",
                r_grid.len()
            )));
        }
        if r_grid[0] < 0.0 {
            return Err(Error::domain("tabulated radii must be nonnegative"));
        }
        let curve = MonotoneCubic::new(r_grid, u_values)?;
        Ok(PotentialModel { kind: Kind::Tabulated(TabulatedPotential { curve, extrapolation }) })
    }

    /// U(r).
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::domain(format!("radius must be finite, got {r}")));
        }
        match &self.kind {
            Kind::Coulomb { alpha } => {
                require_positive_r(r)?;
                Ok(-alpha / r)
            }
            Kind::Linear { alpha } => {
                require_nonnegative_r(r)?;
                Ok(alpha * r)
            }
            Kind::Logarithmic { alpha } => {
                require_positive_r(r)?;
                Ok(alpha * r.ln())
            }
            Kind::Polynomial { alpha, sigma } => {
                if *sigma < 0.0 {
                    require_positive_r(r)?;
                } else {
                    require_nonnegative_r(r)?;
                }
                Ok(alpha * r.powf(*sigma))
            }
            Kind::HydrogenReconstructed { gamma, beta, xi } => {
                require_nonnegative_r(r)?;
                Ok(-(4.0 * beta * xi).exp() / (4.0 * gamma + 2.0 * xi * r * r))
            }
            Kind::OscillatorReconstructed { alpha, beta, xi } => {
                if *beta == 0.0 {
                    require_nonnegative_r(r)?;
                    Ok(1.5 * (r * r * alpha * alpha * xi / 4.0).cbrt())
                } else {
                    // diverges like -xi beta^2 / (2 r^2) toward the center
                    require_positive_r(r)?;
                    let n = oscillator_index(*alpha, *beta, *xi, r);
                    Ok(alpha * n - xi * r * r / (2.0 * n * n))
                }
            }
            Kind::Tabulated(tab) => {
                require_nonnegative_r(r)?;
                tab.check_range(r)?;
                Ok(tab.curve.eval(r))
            }
        }
    }

    /// dU/dr.
    pub fn derivative(&self, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::domain(format!("radius must be finite, got {r}")));
        }
        match &self.kind {
            Kind::Coulomb { alpha } => {
                require_positive_r(r)?;
                Ok(alpha / (r * r))
            }
            Kind::Linear { alpha } => {
                require_nonnegative_r(r)?;
                Ok(*alpha)
            }
            Kind::Logarithmic { alpha } => {
                require_positive_r(r)?;
                Ok(alpha / r)
            }
            Kind::Polynomial { alpha, sigma } => {
                if *sigma < 1.0 {
                    require_positive_r(r)?;
                } else {
                    require_nonnegative_r(r)?;
                }
                Ok(alpha * sigma * r.powf(sigma - 1.0))
            }
            Kind::HydrogenReconstructed { gamma, beta, xi } => {
                require_nonnegative_r(r)?;
                let den = 4.0 * gamma + 2.0 * xi * r * r;
                Ok(4.0 * xi * r * (4.0 * beta * xi).exp() / (den * den))
            }
            Kind::OscillatorReconstructed { alpha, beta, xi } => {
                require_positive_r(r)?;
                if *beta == 0.0 {
                    Ok((alpha * alpha * xi / 4.0).cbrt() / r.cbrt())
                } else {
                    // the construction guarantees dU/dr = xi r / n(r)^2
                    let n = oscillator_index(*alpha, *beta, *xi, r);
                    Ok(xi * r / (n * n))
                }
            }
            Kind::Tabulated(tab) => {
                require_nonnegative_r(r)?;
                tab.check_range(r)?;
                Ok(tab.curve.deriv(r))
            }
        }
    }

    /// Grid bounds if this is a tabulated potential.
    pub fn tabulated_knots(&self) -> Option<(&[f64], &[f64])> {
        match &self.kind {
            Kind::Tabulated(tab) => Some(tab.curve.knots()),
            _ => None,
        }
    }

    pub fn descriptor(&self) -> PotentialDescriptor {
        match &self.kind {
            Kind::Coulomb { alpha } => PotentialDescriptor::Coulomb { alpha: *alpha },
            Kind::Linear { alpha } => PotentialDescriptor::Linear { alpha: *alpha },
            Kind::Logarithmic { alpha } => PotentialDescriptor::Logarithmic { alpha: *alpha },
            Kind::Polynomial { alpha, sigma } => {
                PotentialDescriptor::Polynomial { alpha: *alpha, sigma: *sigma }
            }
            Kind::HydrogenReconstructed { gamma, beta, xi } => {
                PotentialDescriptor::HydrogenReconstructed { gamma: *gamma, beta: *beta, xi: *xi }
            }
            Kind::OscillatorReconstructed { alpha, beta, xi } => {
                PotentialDescriptor::OscillatorReconstructed { alpha: *alpha, beta: *beta, xi: *xi }
            }
            Kind::Tabulated(tab) => {
                let (r, u) = tab.curve.knots();
                PotentialDescriptor::Tabulated {
                    r: r.to_vec(),
                    u: u.to_vec(),
                    extrapolation: tab.extrapolation,
                }
            }
        }
    }

    pub fn from_descriptor(d: &PotentialDescriptor) -> Result<Self> {
        match d {
            PotentialDescriptor::Coulomb { alpha } => Self::coulomb(*alpha),
            PotentialDescriptor::Linear { alpha } => Self::linear(*alpha),
            PotentialDescriptor::Logarithmic { alpha } => Self::logarithmic(*alpha),
            PotentialDescriptor::Polynomial { alpha, sigma } => Self::polynomial(*alpha, *sigma),
            PotentialDescriptor::HydrogenReconstructed { gamma, beta, xi } => {
                Self::hydrogen_reconstructed(*gamma, *beta, *xi)
            }
            PotentialDescriptor::OscillatorReconstructed { alpha, beta, xi } => {
                Self::oscillator_reconstructed(*alpha, *beta, *xi)
            }
            PotentialDescriptor::Tabulated { r, u, extrapolation } => {
                Self::tabulated(r.clone(), u.clone(), *extrapolation)
            }
        }
    }
}

impl std::fmt::Display for PotentialModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            Kind::Coulomb { alpha } => write!(f, "coulomb(alpha={alpha})"),
            Kind::Linear { alpha } => write!(f, "linear(alpha={alpha})"),
            Kind::Logarithmic { alpha } => write!(f, "logarithmic(alpha={alpha})"),
            Kind::Polynomial { alpha, sigma } => write!(f, "polynomial(alpha={alpha}, sigma={sigma})"),
            Kind::HydrogenReconstructed { gamma, beta, xi } => {
                write!(f, "hydrogen-reconstructed(gamma={gamma}, beta={beta}, xi={xi})")
            }
            Kind::OscillatorReconstructed { alpha, beta, xi } => {
                write!(f, "oscillator-reconstructed(alpha={alpha}, beta={beta}, xi={xi})")
            }
            Kind::Tabulated(tab) => {
                let (r, _) = tab.curve.knots();
                write!(f, "tabulated({} points on [{}, {}])", r.len(), r[0], r[r.len() - 1])
            }
        }
    }
}

impl TabulatedPotential {
    fn check_range(&self, r: f64) -> Result<()> {
        match self.extrapolation {
            Extrapolation::ClampSlope => Ok(()),
            Extrapolation::Error => {
                let (lo, hi) = (self.curve.x_min(), self.curve.x_max());
                if r < lo || r > hi {
                    Err(Error::Range { r, lo, hi })
                } else {
                    Ok(())
                }
            }
        }
    }
}

fn require_positive_r(r: f64) -> Result<()> {
    if r > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("potential undefined at r = {r} (needs r > 0)")))
    }
}

fn require_nonnegative_r(r: f64) -> Result<()> {
    if r >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("negative radius r = {r}")))
    }
}

/// Real root of `alpha n^3 / (2 xi) + beta n = r^2` (Cardano plus one Newton
/// polish; the closed form loses digits where the two Cardano terms nearly
/// cancel, i.e. for small r).
pub(crate) fn oscillator_index(alpha: f64, beta: f64, xi: f64, r: f64) -> f64 {
    let r2 = r * r;
    let n0 = if beta == 0.0 {
        (2.0 * xi * r2 / alpha).cbrt()
    } else {
        let v = oscillator_v(alpha, beta, xi, r);
        v / (3.0 * alpha) - 2.0 * beta * xi / v
    };
    // Newton on f(n) = alpha n^3/(2 xi) + beta n - r^2
    let mut n = n0;
    for _ in 0..2 {
        let f = alpha * n * n * n / (2.0 * xi) + beta * n - r2;
        let fp = 1.5 * alpha * n * n / xi + beta;
        if fp == 0.0 {
            break;
        }
        n -= f / fp;
    }
    n
}

/// The Cardano auxiliary for the oscillator cubic.
pub(crate) fn oscillator_v(alpha: f64, beta: f64, xi: f64, r: f64) -> f64 {
    let r2 = r * r;
    let inner = 27.0 * r2 * r2 * alpha.powi(4) * xi * xi + 8.0 * alpha.powi(3) * beta.powi(3) * xi.powi(3);
    3f64.cbrt() * (9.0 * r2 * alpha * alpha * xi + 3f64.sqrt() * inner.sqrt()).cbrt()
}

/// Diagnostic flags from sampling the force F = -U'(r) on a log-spaced grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhysicalityReport {
    /// F < 0 at every sample.
    pub attractive: bool,
    /// |F| never increases from one sample to the next.
    pub monotone: bool,
    /// |F| at r_max has dropped below the vanishing threshold.
    pub vanishing: bool,
    pub force_at_r_min: f64,
    pub force_at_r_max: f64,
    pub samples: usize,
}

impl PhysicalityReport {
    /// Attractive with non-increasing strength: what the orbit-radius
    /// equation needs for a unique root. The vanishing flag is informational
    /// (linear and logarithmic potentials fail it yet have clean spectra).
    pub fn admissible(&self) -> bool {
        self.attractive && self.monotone
    }

    pub fn pass(&self) -> bool {
        self.attractive && self.monotone && self.vanishing
    }
}

/// Default for `check_physical`: |F(r_max)| <= ratio * |F(r_min)| counts as
/// vanished.
pub const VANISH_RATIO: f64 = 1e-3;

impl PotentialModel {
    /// Samples the force on `samples` log-spaced radii in [r_min, r_max] and
    /// reports the attractive / monotone / vanishing flags.
    pub fn check_physical(&self, r_min: f64, r_max: f64, samples: usize) -> Result<PhysicalityReport> {
        self.check_physical_with(r_min, r_max, samples, VANISH_RATIO)
    }

    pub fn check_physical_with(
        &self,
        r_min: f64,
        r_max: f64,
        samples: usize,
        vanish_ratio: f64,
    ) -> Result<PhysicalityReport> {
        if !(r_min.is_finite() && r_min > 0.0 && r_max.is_finite() && r_max > r_min) {
            return Err(Error::domain(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if samples < 2 {
            return Err(Error::domain("need at least 2 samples"));
        }

        let ratio = r_max / r_min;
        let mut attractive = true;
        let mut monotone = true;
        let mut prev_abs = f64::NAN;
        let mut first_abs = 0.0;
        let mut last_abs = 0.0;
        let mut first_force = 0.0;
        let mut last_force = 0.0;
        for i in 0..samples {
            let r = r_min * ratio.powf(i as f64 / (samples - 1) as f64);
            let force = -self.derivative(r)?;
            if !(force < 0.0) {
                attractive = false;
            }
            let abs = force.abs();
            // non-strict comparison: a constant-magnitude force (linear
            // potential) still counts as monotone
            if i > 0 && abs > prev_abs * (1.0 + 1e-12) {
                monotone = false;
            }
            prev_abs = abs;
            if i == 0 {
                first_abs = abs;
                first_force = force;
            }
            if i == samples - 1 {
                last_abs = abs;
                last_force = force;
            }
        }
        let vanishing = if first_abs == 0.0 {
            last_abs == 0.0
        } else {
            last_abs <= vanish_ratio * first_abs
        };
        Ok(PhysicalityReport {
            attractive,
            monotone,
            vanishing,
            force_at_r_min: first_force,
            force_at_r_max: last_force,
            samples,
        })
    }
}

/// Writes a tabulated potential as CSV with header `r,U`.
pub fn write_potential_csv<W: Write>(mut w: W, r: &[f64], u: &[f64]) -> Result<()> {
    writeln!(w, "r,U")?;
    for (ri, ui) in r.iter().zip(u) {
        writeln!(w, "{ri},{ui}")?;
    }
    Ok(())
}

/// Reads a `r,U` CSV back into a tabulated potential. Radii must be strictly
/// increasing; anything else is a parse error.
pub fn read_potential_csv<R: BufRead>(reader: R, extrapolation: Extrapolation) -> Result<PotentialModel> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty potential CSV".into()))??;
    if header.trim() != "r,U" {
        return Err(Error::Parse(format!("expected header 'r,U', got '{}'", header.trim())));
    }
    let mut r_grid = Vec::new();
    let mut u_values = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (r, u) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (parse_f64(a, idx + 2)?, parse_f64(b, idx + 2)?),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected two comma-separated fields",
                    idx + 2
                )))
            }
        };
        if let Some(&prev) = r_grid.last() {
            if r <= prev {
                return Err(Error::Parse(format!(
                    "line {}: radii must be strictly increasing ({r} after {prev})",
                    idx + 2
                )));
            }
        }
        r_grid.push(r);
        u_values.push(u);
    }
    PotentialModel::tabulated(r_grid, u_values, extrapolation)
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("line {line}: bad number '{}': {e}", s.trim())))
}
