//! Closed-form orbit radii and energies for the standard potential families.
//!
//! Each entry solves `xi r / n^2 = U'(r)` analytically. These formulas double
//! as the reference the generic numerical solver is validated against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::PotentialModel;

/// Potential family with a closed-form spectrum. All entries require an
/// attractive force: `alpha > 0` for the first three, `alpha * sigma > 0`
/// for the polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum CatalogEntry {
    /// U = -alpha / r: r_n = n^(2/3) (alpha/xi)^(1/3),
    /// E_n = -(1/2) n^(-2/3) (alpha^2 xi)^(1/3)
    Coulomb { alpha: f64 },
    /// U = alpha r: r_n = n^2 alpha / xi, E_n = 3 n^2 alpha^2 / (2 xi)
    Linear { alpha: f64 },
    /// U = alpha ln r: r_n = n sqrt(alpha/xi),
    /// E_n = alpha (1/2 + ln(n sqrt(alpha/xi)))
    Logarithmic { alpha: f64 },
    /// U = alpha r^sigma: r_n = (n^2 alpha sigma / xi)^(1/(2-sigma)),
    /// E_n = (alpha/2) (2+sigma) r_n^sigma. sigma = 2/3 makes E_n linear in n.
    Polynomial { alpha: f64, sigma: f64 },
}

impl CatalogEntry {
    fn validate(&self, xi: f64) -> Result<()> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::domain(format!("xi must be positive, got {xi}")));
        }
        match *self {
            CatalogEntry::Coulomb { alpha }
            | CatalogEntry::Linear { alpha }
            | CatalogEntry::Logarithmic { alpha } => {
                if !(alpha.is_finite() && alpha > 0.0) {
                    return Err(Error::domain(format!(
                        "catalog entry needs alpha > 0, got {alpha}"
                    )));
                }
            }
            CatalogEntry::Polynomial { alpha, sigma } => {
                if !(sigma.is_finite() && sigma != 0.0 && sigma > -2.0 && sigma < 2.0) {
                    return Err(Error::domain(format!(
                        "polynomial exponent must lie in (-2, 2) excluding 0, got {sigma}"
                    )));
                }
                if !(alpha.is_finite() && alpha * sigma > 0.0) {
                    return Err(Error::domain(format!(
                        "polynomial entry needs alpha * sigma > 0, got alpha = {alpha}, sigma = {sigma}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The matching `PotentialModel`.
    pub fn potential(&self) -> Result<PotentialModel> {
        match *self {
            CatalogEntry::Coulomb { alpha } => PotentialModel::coulomb(alpha),
            CatalogEntry::Linear { alpha } => PotentialModel::linear(alpha),
            CatalogEntry::Logarithmic { alpha } => PotentialModel::logarithmic(alpha),
            CatalogEntry::Polynomial { alpha, sigma } => PotentialModel::polynomial(alpha, sigma),
        }
    }

    /// Closed-form orbit radius for step count `n` (n may be fractional;
    /// interpolating between integer orbits is well defined here).
    pub fn radius(&self, xi: f64, n: f64) -> Result<f64> {
        self.validate(xi)?;
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::domain(format!("orbit index must be positive, got {n}")));
        }
        Ok(match *self {
            CatalogEntry::Coulomb { alpha } => (n * n * alpha / xi).cbrt(),
            CatalogEntry::Linear { alpha } => n * n * alpha / xi,
            CatalogEntry::Logarithmic { alpha } => n * (alpha / xi).sqrt(),
            CatalogEntry::Polynomial { alpha, sigma } => {
                (n * n * alpha * sigma / xi).powf(1.0 / (2.0 - sigma))
            }
        })
    }

    /// Closed-form orbit energy for step count `n`.
    pub fn energy(&self, xi: f64, n: f64) -> Result<f64> {
        let r = self.radius(xi, n)?;
        Ok(match *self {
            CatalogEntry::Coulomb { alpha } => -0.5 * alpha / r,
            CatalogEntry::Linear { alpha } => 1.5 * alpha * r,
            CatalogEntry::Logarithmic { alpha } => alpha * (0.5 + r.ln()),
            CatalogEntry::Polynomial { alpha, sigma } => {
                0.5 * alpha * (2.0 + sigma) * r.powf(sigma)
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogEntry::Coulomb { .. } => "coulomb",
            CatalogEntry::Linear { .. } => "linear",
            CatalogEntry::Logarithmic { .. } => "logarithmic",
            CatalogEntry::Polynomial { .. } => "polynomial",
        }
    }
}

/// Least-squares slope of ln|E_n| against ln n; -2/3 for the Coulomb family.
pub fn log_log_slope(entry: &CatalogEntry, xi: f64, n_max: u32) -> Result<f64> {
    if n_max < 2 {
        return Err(Error::domain("need at least two points for a slope"));
    }
    let mut xs = Vec::with_capacity(n_max as usize);
    let mut ys = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let e = entry.energy(xi, n as f64)?;
        if e == 0.0 {
            return Err(Error::domain(format!("log-log slope undefined: E_{n} = 0")));
        }
        xs.push((n as f64).ln());
        ys.push(e.abs().ln());
    }
    let m = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    Ok((m * sxy - sx * sy) / (m * sxx - sx * sx))
}
