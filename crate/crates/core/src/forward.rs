//! Forward problem: orbit radii and energy spectra of a given potential.
//!
//! A circular orbit that closes after `n` steps must satisfy the balance
//! `xi r / n^2 = U'(r)` with `xi = 4 pi^2 m / tau^2`. Solving that equation
//! per `n` and evaluating `E = r U'(r)/2 + U(r)` yields the spectrum.

use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::model::{
    DiscreteParams, Extrapolation, Kind, OrbitSolution, PotentialDescriptor, PotentialModel,
};
use crate::roots::{brent, expand_bracket, Bracket};

/// Knobs for the orbit-radius solver. The defaults are right for everything
/// except validation runs that deliberately bypass closed forms.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Relative residual bound every accepted root must satisfy.
    pub residual_tol: f64,
    /// Skip closed forms and bracket numerically even when a formula exists.
    pub force_numeric: bool,
    /// Bracket expansion runs at most this many doublings/halvings from the
    /// starting radius.
    pub bracket_cap_exp: u32,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { residual_tol: 1e-12, force_numeric: false, bracket_cap_exp: 60 }
    }
}

/// Scale used to relativize energy residuals; keeps comparisons meaningful
/// for spectra that cross zero (logarithmic potentials do).
pub fn energy_scale(e_a: f64, e_b: f64) -> f64 {
    e_a.abs() + e_b.abs() + 1.0
}

/// Balance residual `xi r / n^2 - U'(r)`; negative below the orbit radius,
/// positive above it for attractive forces of decreasing strength.
fn balance(pot: &PotentialModel, xi: f64, n: f64, r: f64) -> Result<f64> {
    Ok(xi * r / (n * n) - pot.derivative(r)?)
}

/// Solves `xi r / n^2 = U'(r)` for the radius of the n-step circular orbit.
pub fn solve_orbit_radius(pot: &PotentialModel, params: &DiscreteParams, n: u32) -> Result<f64> {
    solve_orbit_radius_with(pot, params, n, &SolverOptions::default())
}

pub fn solve_orbit_radius_with(
    pot: &PotentialModel,
    params: &DiscreteParams,
    n: u32,
    opts: &SolverOptions,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("orbit index n starts at 1"));
    }
    let xi = params.xi();
    let nf = n as f64;

    let closed = if opts.force_numeric { None } else { closed_form_radius(pot, xi, n)? };
    let r = match closed {
        Some(r) => r,
        None => numeric_radius(pot, xi, n, opts)?,
    };

    // every accepted root, closed-form or numeric, must balance
    let residual = balance(pot, xi, nf, r)?;
    let scale = (xi * r / (nf * nf)).abs() + pot.derivative(r)?.abs();
    if residual.abs() > opts.residual_tol * scale {
        return Err(Error::SelfCheck(format!(
            "orbit radius residual {residual:.3e} exceeds {:.1e} * {scale:.3e} at n = {n}",
            opts.residual_tol
        )));
    }
    Ok(r)
}

/// Closed-form radius when the variant has one and the parameters allow it.
/// The reconstructed families carry their own design stiffness; the formula
/// applies only when it matches the runtime `xi`.
fn closed_form_radius(pot: &PotentialModel, xi: f64, n: u32) -> Result<Option<f64>> {
    let nf = n as f64;
    let same_xi = |pot_xi: f64| (pot_xi - xi).abs() <= 1e-12 * xi;
    Ok(match pot.kind {
        Kind::Coulomb { alpha } if alpha > 0.0 => {
            Some(CatalogEntry::Coulomb { alpha }.radius(xi, nf)?)
        }
        Kind::Linear { alpha } if alpha > 0.0 => {
            Some(CatalogEntry::Linear { alpha }.radius(xi, nf)?)
        }
        Kind::Logarithmic { alpha } if alpha > 0.0 => {
            Some(CatalogEntry::Logarithmic { alpha }.radius(xi, nf)?)
        }
        Kind::Polynomial { alpha, sigma } => {
            Some(CatalogEntry::Polynomial { alpha, sigma }.radius(xi, nf)?)
        }
        Kind::HydrogenReconstructed { gamma, beta, xi: pot_xi } if same_xi(pot_xi) => {
            let radicand = -2.0 * gamma + (2.0 * beta * pot_xi).exp() * nf;
            if radicand <= 0.0 {
                return Err(Error::NoOrbit { n });
            }
            Some((radicand / pot_xi).sqrt())
        }
        Kind::OscillatorReconstructed { alpha, beta, xi: pot_xi } if same_xi(pot_xi) => {
            Some((beta * nf + alpha * nf * nf * nf / (2.0 * pot_xi)).sqrt())
        }
        _ => None,
    })
}

fn numeric_radius(pot: &PotentialModel, xi: f64, n: u32, opts: &SolverOptions) -> Result<f64> {
    let nf = n as f64;
    let mut g = |r: f64| balance(pot, xi, nf, r);

    // start inside the grid for tabulated potentials; r = 1 otherwise
    let start = match &pot.kind {
        Kind::Tabulated(tab) => {
            let lo = tab.curve.x_min().max(f64::MIN_POSITIVE);
            (lo * tab.curve.x_max()).sqrt()
        }
        _ => 1.0,
    };
    // a tabulated potential that refuses extrapolation restricts the search
    let limit = match &pot.kind {
        Kind::Tabulated(tab) if tab.extrapolation == Extrapolation::Error => {
            Some((tab.curve.x_min(), tab.curve.x_max()))
        }
        _ => None,
    };

    let found = match limit {
        None => expand_bracket(&mut g, start, opts.bracket_cap_exp)?,
        Some((lo, hi)) => expand_bracket_clamped(&mut g, start, opts.bracket_cap_exp, lo, hi)?,
    };
    let bracket = found.ok_or_else(|| Error::Bracket {
        n,
        detail: format!("no sign change within 2^{} of r = {start}", opts.bracket_cap_exp),
    })?;

    if bracket.lo < bracket.hi {
        ambiguity_scan(&mut g, n, &bracket)?;
    }
    brent(&mut g, bracket)
}

/// Bracket expansion that never leaves [lo_limit, hi_limit].
fn expand_bracket_clamped<F>(
    mut f: F,
    start: f64,
    cap_exp: u32,
    lo_limit: f64,
    hi_limit: f64,
) -> Result<Option<Bracket>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let f_start = f(start)?;
    if f_start == 0.0 {
        return Ok(Some(Bracket { lo: start, hi: start, f_lo: 0.0, f_hi: 0.0 }));
    }
    let first_down = f_start > 0.0;
    for down in [first_down, !first_down] {
        let mut prev_x = start;
        let mut prev_f = f_start;
        for _ in 0..cap_exp {
            let x = if down {
                let x = prev_x * 0.5;
                if x < lo_limit {
                    if prev_x == lo_limit {
                        break;
                    }
                    lo_limit
                } else {
                    x
                }
            } else {
                let x = prev_x * 2.0;
                if x > hi_limit {
                    if prev_x == hi_limit {
                        break;
                    }
                    hi_limit
                } else {
                    x
                }
            };
            let fx = f(x)?;
            if fx == 0.0 || fx * prev_f < 0.0 {
                let (lo, hi, f_lo, f_hi) =
                    if down { (x, prev_x, fx, prev_f) } else { (prev_x, x, prev_f, fx) };
                return Ok(Some(Bracket { lo, hi, f_lo, f_hi }));
            }
            prev_x = x;
            prev_f = fx;
        }
    }
    Ok(None)
}

/// Samples the balance function at 32 log-spaced points across the bracket;
/// more than one sign change means the orbit radius is not unique here.
fn ambiguity_scan<F>(mut g: F, n: u32, bracket: &Bracket) -> Result<()>
where
    F: FnMut(f64) -> Result<f64>,
{
    const SAMPLES: usize = 32;
    let ratio = bracket.hi / bracket.lo;
    let mut crossings = 0;
    let mut prev = bracket.f_lo;
    for i in 1..SAMPLES {
        let r = if i == SAMPLES - 1 {
            bracket.hi
        } else {
            bracket.lo * ratio.powf(i as f64 / (SAMPLES - 1) as f64)
        };
        let v = if i == SAMPLES - 1 { bracket.f_hi } else { g(r)? };
        if prev * v < 0.0 {
            crossings += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    if crossings > 1 {
        return Err(Error::Ambiguity { n, lo: bracket.lo, hi: bracket.hi });
    }
    Ok(())
}

/// Energy of a circular orbit of radius `r`: `r U'(r)/2 + U(r)`.
pub fn orbit_energy(pot: &PotentialModel, r: f64) -> Result<f64> {
    Ok(0.5 * r * pot.derivative(r)? + pot.evaluate(r)?)
}

/// Spectrum rows for `n` in `[n_min, n_max]`, each carrying the angular
/// momentum `p_phi = 2 pi m r_n^2 / (n tau)` that closes the orbit.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumTable {
    pub params: DiscreteParams,
    pub potential: PotentialDescriptor,
    pub rows: Vec<OrbitSolution>,
}

pub fn compute_spectrum(
    pot: &PotentialModel,
    params: &DiscreteParams,
    n_min: u32,
    n_max: u32,
) -> Result<SpectrumTable> {
    compute_spectrum_with(pot, params, n_min, n_max, &SolverOptions::default())
}

pub fn compute_spectrum_with(
    pot: &PotentialModel,
    params: &DiscreteParams,
    n_min: u32,
    n_max: u32,
    opts: &SolverOptions,
) -> Result<SpectrumTable> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::domain(format!("need 1 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    let mut rows = Vec::with_capacity((n_max - n_min + 1) as usize);
    for n in n_min..=n_max {
        rows.push(orbit_solution_with(pot, params, n, opts)?);
    }
    Ok(SpectrumTable { params: *params, potential: pot.descriptor(), rows })
}

pub fn orbit_solution(pot: &PotentialModel, params: &DiscreteParams, n: u32) -> Result<OrbitSolution> {
    orbit_solution_with(pot, params, n, &SolverOptions::default())
}

pub fn orbit_solution_with(
    pot: &PotentialModel,
    params: &DiscreteParams,
    n: u32,
    opts: &SolverOptions,
) -> Result<OrbitSolution> {
    let r_n = solve_orbit_radius_with(pot, params, n, opts)?;
    let e_n = orbit_energy(pot, r_n)?;
    let p_phi = std::f64::consts::TAU * params.mass() * r_n * r_n / (n as f64 * params.tau());
    Ok(OrbitSolution { n, r_n, e_n, p_phi })
}

impl SpectrumTable {
    /// CSV with header `n,r_n,E_n,p_phi`, one row per orbit.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n,r_n,E_n,p_phi")?;
        for row in &self.rows {
            writeln!(w, "{},{},{},{}", row.n, row.r_n, row.e_n, row.p_phi)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }
}
