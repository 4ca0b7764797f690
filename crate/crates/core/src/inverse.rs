//! Inverse problem: from a prescribed spectrum `E(n)` to a potential.
//!
//! The orbit-radius profile follows from summing the balance condition
//! against the energy law:
//!
//! ```text
//! r(n)^2 = (n / xi) * ( n E(n) - E(1) - I(n) + eps ),   I(n) = integral of E from 1 to n
//! ```
//!
//! with one free constant `eps = xi r(1)^2` fixing the innermost radius.
//! Inverting `r(n)` on a radial grid and writing
//! `U(r) = E(n(r)) - xi r^2 / (2 n(r)^2)` gives a potential whose forward
//! spectrum reproduces the law at integer `n`.

use std::io::{BufRead, Write as IoWrite};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::model::{DiscreteParams, Extrapolation, PotentialModel};
use crate::quad;
use crate::roots::{brent, Bracket};

/// Relative tolerance of the derivative self-check every reconstruction
/// must pass at interior grid knots.
pub const RECON_DERIV_TOL: f64 = 1e-6;

/// Serializable description of an energy law `E(n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum SpectrumSpec {
    /// `E(n) = -gamma / n^2`
    Hydrogen { gamma: f64 },
    /// `E(n) = alpha n`
    Linear { alpha: f64 },
    /// `E(n) = coeff * n^exponent`
    Power { coeff: f64, exponent: f64 },
    /// Energies at `n = 1, 2, ..., N`, interpolated in between.
    Tabulated { energies: Vec<f64> },
}

/// A spectrum law ready for evaluation. Built from a [`SpectrumSpec`]; the
/// tabulated variant carries its interpolant.
#[derive(Debug, Clone)]
pub enum SpectrumLaw {
    Hydrogen { gamma: f64 },
    Linear { alpha: f64 },
    Power { coeff: f64, exponent: f64 },
    Tabulated { energies: Vec<f64>, curve: MonotoneCubic },
}

impl SpectrumLaw {
    pub fn from_spec(spec: &SpectrumSpec) -> Result<Self> {
        match spec {
            SpectrumSpec::Hydrogen { gamma } => {
                if !(*gamma > 0.0) || !gamma.is_finite() {
                    return Err(Error::domain(format!("hydrogen law needs gamma > 0, got {gamma}")));
                }
                Ok(SpectrumLaw::Hydrogen { gamma: *gamma })
            }
            SpectrumSpec::Linear { alpha } => {
                if !(*alpha > 0.0) || !alpha.is_finite() {
                    return Err(Error::domain(format!("linear law needs alpha > 0, got {alpha}")));
                }
                Ok(SpectrumLaw::Linear { alpha: *alpha })
            }
            SpectrumSpec::Power { coeff, exponent } => {
                if *coeff == 0.0 || !coeff.is_finite() || !exponent.is_finite() {
                    return Err(Error::domain(format!(
                        "power law needs finite nonzero coeff, got {coeff} * n^{exponent}"
                    )));
                }
                Ok(SpectrumLaw::Power { coeff: *coeff, exponent: *exponent })
            }
            SpectrumSpec::Tabulated { energies } => {
                if energies.len() < 4 {
                    return Err(Error::domain(format!(
                        "tabulated law needs at least 4 energies, got {}",
                        energies.len()
                    )));
                }
                let ns: Vec<f64> = (1..=energies.len()).map(|k| k as f64).collect();
                let curve = MonotoneCubic::new(ns, energies.clone())?;
                Ok(SpectrumLaw::Tabulated { energies: energies.clone(), curve })
            }
        }
    }

    pub fn spec(&self) -> SpectrumSpec {
        match self {
            SpectrumLaw::Hydrogen { gamma } => SpectrumSpec::Hydrogen { gamma: *gamma },
            SpectrumLaw::Linear { alpha } => SpectrumSpec::Linear { alpha: *alpha },
            SpectrumLaw::Power { coeff, exponent } => {
                SpectrumSpec::Power { coeff: *coeff, exponent: *exponent }
            }
            SpectrumLaw::Tabulated { energies, .. } => {
                SpectrumSpec::Tabulated { energies: energies.clone() }
            }
        }
    }

    /// Largest index the law covers; `None` means unbounded.
    pub fn n_sup(&self) -> Option<f64> {
        match self {
            SpectrumLaw::Tabulated { energies, .. } => Some(energies.len() as f64),
            _ => None,
        }
    }

    fn check_index(&self, n: f64) -> Result<()> {
        if !(n >= 1.0) || !n.is_finite() {
            return Err(Error::domain(format!("spectrum law is defined for n >= 1, got {n}")));
        }
        if let Some(sup) = self.n_sup() {
            if n > sup {
                return Err(Error::domain(format!(
                    "tabulated law covers n in [1, {sup}], got {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn energy(&self, n: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(match self {
            SpectrumLaw::Hydrogen { gamma } => -gamma / (n * n),
            SpectrumLaw::Linear { alpha } => alpha * n,
            SpectrumLaw::Power { coeff, exponent } => coeff * n.powf(*exponent),
            SpectrumLaw::Tabulated { curve, .. } => curve.eval(n),
        })
    }

    pub fn energy_slope(&self, n: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(match self {
            SpectrumLaw::Hydrogen { gamma } => 2.0 * gamma / (n * n * n),
            SpectrumLaw::Linear { alpha } => *alpha,
            SpectrumLaw::Power { coeff, exponent } => coeff * exponent * n.powf(exponent - 1.0),
            SpectrumLaw::Tabulated { curve, .. } => curve.deriv(n),
        })
    }

    /// Integral of the law from 1 to `n`; closed form where one exists,
    /// adaptive quadrature of the interpolant otherwise.
    pub fn energy_integral(&self, n: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(match self {
            SpectrumLaw::Hydrogen { gamma } => gamma * (1.0 / n - 1.0),
            SpectrumLaw::Linear { alpha } => alpha * (n * n - 1.0) / 2.0,
            SpectrumLaw::Power { coeff, exponent } => {
                if *exponent == -1.0 {
                    coeff * n.ln()
                } else {
                    coeff * (n.powf(exponent + 1.0) - 1.0) / (exponent + 1.0)
                }
            }
            SpectrumLaw::Tabulated { curve, .. } => {
                let tol = 1e-12 * (1.0 + curve.eval(1.0).abs());
                quad::integrate(&mut |k| Ok(curve.eval(k)), 1.0, n, tol)?
            }
        })
    }
}

/// The orbit-radius profile `r(n)` induced by a spectrum law, a stiffness
/// `xi`, and the anchor constant `eps = xi r(1)^2`.
#[derive(Debug, Clone)]
pub struct RadiusProfile {
    law: SpectrumLaw,
    xi: f64,
    epsilon: f64,
}

impl RadiusProfile {
    pub fn new(law: SpectrumLaw, xi: f64, epsilon: f64) -> Result<Self> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::domain(format!("radius profile needs xi > 0, got {xi}")));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::domain(format!(
                "anchor constant eps = xi r(1)^2 must be positive, got {epsilon}"
            )));
        }
        Ok(RadiusProfile { law, xi, epsilon })
    }

    pub fn law(&self) -> &SpectrumLaw {
        &self.law
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn radius_squared(&self, n: f64) -> Result<f64> {
        let e_n = self.law.energy(n)?;
        let e_1 = self.law.energy(1.0)?;
        let integral = self.law.energy_integral(n)?;
        let radicand = (n / self.xi) * (n * e_n - e_1 - integral + self.epsilon);
        if !(radicand > 0.0) {
            return Err(Error::NegativeRadicand { n });
        }
        Ok(radicand)
    }

    pub fn radius(&self, n: f64) -> Result<f64> {
        Ok(self.radius_squared(n)?.sqrt())
    }

    /// Finds the (real) index whose orbit radius is `r`. The profile must be
    /// increasing over the searched range.
    pub fn invert_radius(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("invert_radius needs r > 0, got {r}")));
        }
        let r_1 = self.radius(1.0)?;
        if r <= r_1 {
            if r >= r_1 * (1.0 - 1e-12) {
                return Ok(1.0);
            }
            let hi = match self.law.n_sup() {
                Some(sup) => self.radius(sup)?,
                None => f64::INFINITY,
            };
            return Err(Error::Range { r, lo: r_1, hi });
        }

        // geometric expansion in n, watching the profile stays increasing
        let mut n_lo = 1.0;
        let mut f_lo = r_1 - r;
        let mut n_hi = 2.0;
        loop {
            if let Some(sup) = self.law.n_sup() {
                if n_hi > sup {
                    n_hi = sup;
                }
            }
            let r_hi = self.radius(n_hi)?;
            if r_hi <= self.radius(n_lo)? {
                return Err(Error::Monotonicity { n: n_hi });
            }
            let f_hi = r_hi - r;
            if f_hi >= 0.0 {
                let root = brent(
                    &mut |n| Ok(self.radius(n)? - r),
                    Bracket { lo: n_lo, hi: n_hi, f_lo, f_hi },
                )?;
                let achieved = self.radius(root)?;
                if (achieved - r).abs() > 1e-12 * r {
                    return Err(Error::SelfCheck(format!(
                        "index inversion left |r({root}) - {r}| = {:.3e}",
                        (achieved - r).abs()
                    )));
                }
                return Ok(root);
            }
            if Some(n_hi) == self.law.n_sup() {
                return Err(Error::Range { r, lo: r_1, hi: r_hi });
            }
            n_lo = n_hi;
            f_lo = f_hi;
            n_hi *= 2.0;
            if n_hi > 1e18 {
                return Err(Error::Range { r, lo: r_1, hi: self.radius(n_lo)? });
            }
        }
    }
}

/// One reconstructed sample: radius, the index that orbits there, and the
/// potential value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReconstructionKnot {
    pub r: f64,
    pub n: f64,
    pub u: f64,
}

#[derive(Debug, Clone)]
pub struct ReconstructedPotential {
    pub potential: PotentialModel,
    pub knots: Vec<ReconstructionKnot>,
}

/// Tabulates `U(r) = E(n(r)) - xi r^2 / (2 n(r)^2)` over `grid` and wraps it
/// in an interpolating potential. Fails if the interpolant's slope disagrees
/// with the implied force `xi r / n^2` beyond [`RECON_DERIV_TOL`] at any
/// interior knot.
pub fn reconstruct_potential(
    profile: &RadiusProfile,
    grid: &[f64],
) -> Result<ReconstructedPotential> {
    if grid.len() < 4 {
        return Err(Error::domain(format!(
            "reconstruction grid needs at least 4 radii, got {}",
            grid.len()
        )));
    }
    let xi = profile.xi();
    let mut knots = Vec::with_capacity(grid.len());
    for &r in grid {
        let n = profile.invert_radius(r)?;
        let u = profile.law().energy(n)? - xi * r * r / (2.0 * n * n);
        knots.push(ReconstructionKnot { r, n, u });
    }
    let potential = PotentialModel::tabulated(
        knots.iter().map(|k| k.r).collect(),
        knots.iter().map(|k| k.u).collect(),
        Extrapolation::ClampSlope,
    )?;
    for k in &knots[1..knots.len() - 1] {
        let force = xi * k.r / (k.n * k.n);
        let got = potential.derivative(k.r)?;
        if (got - force).abs() > RECON_DERIV_TOL * force.abs() {
            return Err(Error::SelfCheck(format!(
                "reconstructed slope {got:.9e} vs implied force {force:.9e} at r = {} \
                 (relative error {:.3e}); refine the grid",
                k.r,
                ((got - force) / force).abs()
            )));
        }
    }
    Ok(ReconstructedPotential { potential, knots })
}

/// `count` log-spaced values from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::domain(format!("log grid needs 0 < lo < hi, got [{lo}, {hi}]")));
    }
    if count < 2 {
        return Err(Error::domain("log grid needs at least 2 points"));
    }
    let ratio = hi / lo;
    let last = (count - 1) as f64;
    let mut grid = Vec::with_capacity(count);
    for i in 0..count {
        let r = if i == 0 {
            lo
        } else if i == count - 1 {
            hi
        } else {
            lo * ratio.powf(i as f64 / last)
        };
        grid.push(r);
    }
    Ok(grid)
}

/// Closed-form potential with spectrum `E_n = -gamma / n^2` at stiffness `xi`.
pub fn hydrogen_potential(gamma: f64, beta: f64, xi: f64) -> Result<PotentialModel> {
    PotentialModel::hydrogen_reconstructed(gamma, beta, xi)
}

/// Closed-form potential with spectrum `E_n = alpha n` at stiffness `xi`.
pub fn oscillator_potential(alpha: f64, beta: f64, xi: f64) -> Result<PotentialModel> {
    PotentialModel::oscillator_reconstructed(alpha, beta, xi)
}

// Conversions between the anchor constant eps and the closed-form stiffness
// parameter beta of the two named families. For the hydrogen family two
// conventions circulate; both are provided so callers can compare them.

/// `beta = ln(eps + gamma) / (2 xi)`, the value quoted alongside the
/// hydrogen closed form.
pub fn hydrogen_beta_printed(gamma: f64, epsilon: f64, xi: f64) -> Result<f64> {
    if !(epsilon + gamma > 0.0) {
        return Err(Error::domain(format!(
            "printed hydrogen convention needs eps + gamma > 0, got {}",
            epsilon + gamma
        )));
    }
    Ok((epsilon + gamma).ln() / (2.0 * xi))
}

/// `beta = ln(eps + 2 gamma) / (2 xi)`, the value that makes the closed form
/// agree with the anchor `eps = xi r(1)^2`.
pub fn hydrogen_beta_anchored(gamma: f64, epsilon: f64, xi: f64) -> Result<f64> {
    if !(epsilon + 2.0 * gamma > 0.0) {
        return Err(Error::domain(format!(
            "anchored hydrogen convention needs eps + 2 gamma > 0, got {}",
            epsilon + 2.0 * gamma
        )));
    }
    Ok((epsilon + 2.0 * gamma).ln() / (2.0 * xi))
}

/// Inverse of [`hydrogen_beta_anchored`]: the anchor constant a hydrogen
/// potential of stiffness `beta` corresponds to.
pub fn hydrogen_epsilon_for_beta(gamma: f64, beta: f64, xi: f64) -> Result<f64> {
    let epsilon = (2.0 * beta * xi).exp() - 2.0 * gamma;
    if !(epsilon > 0.0) {
        return Err(Error::domain(format!(
            "beta = {beta} puts the innermost radius at eps = {epsilon} <= 0"
        )));
    }
    Ok(epsilon)
}

/// `beta = (eps - alpha/2) / xi` for the oscillator family.
pub fn oscillator_beta_from_epsilon(alpha: f64, epsilon: f64, xi: f64) -> Result<f64> {
    let beta = (epsilon - alpha / 2.0) / xi;
    if beta < 0.0 {
        return Err(Error::domain(format!(
            "eps = {epsilon} is below alpha/2 = {}; no oscillator potential matches",
            alpha / 2.0
        )));
    }
    Ok(beta)
}

pub fn oscillator_epsilon_for_beta(alpha: f64, beta: f64, xi: f64) -> f64 {
    alpha / 2.0 + beta * xi
}

/// Smallest integer index with a real orbit radius in the hydrogen family:
/// the radicand `e^(2 beta xi) n - 2 gamma` must come out positive.
pub fn hydrogen_min_orbit_index(gamma: f64, beta: f64, xi: f64) -> u32 {
    let threshold = 2.0 * gamma * (-2.0 * beta * xi).exp();
    if threshold < 1.0 {
        return 1;
    }
    let floor = threshold.floor();
    if floor >= u32::MAX as f64 {
        return u32::MAX;
    }
    floor as u32 + 1
}

/// Everything needed to reproduce a reconstruction, written next to the
/// potential table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReconstructionSidecar {
    pub law: SpectrumSpec,
    pub epsilon: f64,
    pub tau: f64,
    pub mass: f64,
    pub xi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_printed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_anchored: Option<f64>,
}

impl ReconstructionSidecar {
    pub fn new(spec: &SpectrumSpec, params: &DiscreteParams, epsilon: f64) -> Self {
        let xi = params.xi();
        let (beta_printed, beta_anchored) = match spec {
            SpectrumSpec::Hydrogen { gamma } => (
                hydrogen_beta_printed(*gamma, epsilon, xi).ok(),
                hydrogen_beta_anchored(*gamma, epsilon, xi).ok(),
            ),
            SpectrumSpec::Linear { alpha } => {
                let beta = oscillator_beta_from_epsilon(*alpha, epsilon, xi).ok();
                (beta, beta)
            }
            _ => (None, None),
        };
        ReconstructionSidecar {
            law: spec.clone(),
            epsilon,
            tau: params.tau(),
            mass: params.mass(),
            xi,
            beta_printed,
            beta_anchored,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Reads a spectrum table with header `n,E`; indices must run 1, 2, ..., N.
pub fn read_spectrum_csv<R: BufRead>(reader: R) -> Result<Vec<f64>> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty spectrum table".into()))?
        .map_err(Error::Io)?;
    if header.trim() != "n,E" {
        return Err(Error::Parse(format!("expected header 'n,E', got '{}'", header.trim())));
    }
    let mut energies = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line.map_err(Error::Io)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = idx + 2;
        let mut parts = line.split(',');
        let (n_text, e_text) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a.trim(), b.trim()),
            _ => return Err(Error::Parse(format!("line {row}: expected 'n,E', got '{line}'"))),
        };
        let n: u64 = n_text
            .parse()
            .map_err(|_| Error::Parse(format!("line {row}: bad index '{n_text}'")))?;
        if n != energies.len() as u64 + 1 {
            return Err(Error::Parse(format!(
                "line {row}: indices must be consecutive from 1, expected {}, got {n}",
                energies.len() + 1
            )));
        }
        let e: f64 = e_text
            .parse()
            .map_err(|_| Error::Parse(format!("line {row}: bad energy '{e_text}'")))?;
        if !e.is_finite() {
            return Err(Error::Parse(format!("line {row}: energy must be finite")));
        }
        energies.push(e);
    }
    if energies.len() < 4 {
        return Err(Error::Parse(format!(
            "spectrum table needs at least 4 rows, got {}",
            energies.len()
        )));
    }
    Ok(energies)
}

pub fn write_spectrum_csv<W: IoWrite>(energies: &[f64], mut w: W) -> Result<()> {
    writeln!(w, "n,E")?;
    for (i, e) in energies.iter().enumerate() {
        writeln!(w, "{},{e}", i + 1)?;
    }
    Ok(())
}
