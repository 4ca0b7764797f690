//! The discrete-time update itself, plus trajectory tools built on it.
//!
//! One step advances every coordinate simultaneously from the current state:
//!
//! ```text
//! r'    = r + tau p_r / m
//! p_r'  = p_r + tau (p_phi^2 / (m r^3) - U'(r))
//! phi'  = phi + tau p_phi / (m r^2)
//! p_phi' = p_phi
//! ```
//!
//! On a balanced circular start the radial bracket vanishes identically, so
//! the polygon orbit closes to round-off: that exactness is what the
//! spectrum construction leans on, and `check_closure` measures it.

use crate::error::{Error, Result};
use crate::model::{DiscreteParams, PhaseState, PotentialModel};

/// Advances one step. The input radius must be positive; the output radius
/// is the caller's problem (see `simulate`, which turns r <= 0 into a
/// collapse error).
pub fn step(pot: &PotentialModel, params: &DiscreteParams, s: &PhaseState) -> Result<PhaseState> {
    if !(s.r > 0.0) || !s.r.is_finite() {
        return Err(Error::domain(format!("step needs r > 0, got r = {}", s.r)));
    }
    let m = params.mass();
    let tau = params.tau();
    let up = pot.derivative(s.r)?;
    let r2 = s.r * s.r;
    Ok(PhaseState {
        r: s.r + tau * s.p_r / m,
        p_r: s.p_r + tau * (s.p_phi * s.p_phi / (m * r2 * s.r) - up),
        phi: s.phi + tau * s.p_phi / (m * r2),
        p_phi: s.p_phi,
    })
}

/// Runs `steps` updates and returns the full trajectory, start included
/// (so the result always holds `steps + 1` states).
pub fn simulate(
    pot: &PotentialModel,
    params: &DiscreteParams,
    start: &PhaseState,
    steps: usize,
) -> Result<Vec<PhaseState>> {
    if !(start.r > 0.0) || !start.r.is_finite() {
        return Err(Error::domain(format!("simulation needs r > 0, got r = {}", start.r)));
    }
    let mut traj = Vec::with_capacity(steps + 1);
    traj.push(*start);
    for k in 0..steps {
        let next = step(pot, params, &traj[k])
            .map_err(|e| Error::AtStep { step: k, source: Box::new(e) })?;
        if !(next.r > 0.0) {
            return Err(Error::Collapse { step: k + 1 });
        }
        traj.push(next);
    }
    Ok(traj)
}

/// Initial state of the circular orbit of radius `r` that closes after `n`
/// steps: `p_phi = 2 pi m r^2 / (n tau)` makes each angular step `2 pi / n`.
pub fn circular_orbit_state(params: &DiscreteParams, r: f64, n: u32) -> Result<PhaseState> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("circular orbit needs r > 0, got {r}")));
    }
    if n == 0 {
        return Err(Error::domain("orbit index n starts at 1"));
    }
    let p_phi = std::f64::consts::TAU * params.mass() * r * r / (n as f64 * params.tau());
    Ok(PhaseState { r, p_r: 0.0, phi: 0.0, p_phi })
}

/// How far a trajectory is from closing after `n` steps.
#[derive(Debug, Clone, Copy)]
pub struct ClosureReport {
    pub n: u32,
    /// |phi_n - phi_0 - 2 pi|
    pub phi_residual: f64,
    /// max over the first n steps of |r_k - r_0|
    pub r_residual: f64,
    /// max over the first n steps of |p_r,k - p_r,0|
    pub pr_residual: f64,
    pub pass: bool,
}

/// Measures closure of `traj` after `n` steps against `tol`: the angle must
/// return to within `tol * n` of one full turn, and radius and radial
/// momentum must hold their starting values to `tol * r_0` throughout.
pub fn check_closure(traj: &[PhaseState], n: u32, tol: f64) -> Result<ClosureReport> {
    let n_us = n as usize;
    if n == 0 {
        return Err(Error::domain("closure check needs n >= 1"));
    }
    if traj.len() < n_us + 1 {
        return Err(Error::domain(format!(
            "closure after {n} steps needs {} states, trajectory has {}",
            n_us + 1,
            traj.len()
        )));
    }
    let s0 = traj[0];
    let phi_residual = (traj[n_us].phi - s0.phi - std::f64::consts::TAU).abs();
    let mut r_residual = 0.0f64;
    let mut pr_residual = 0.0f64;
    for s in &traj[1..=n_us] {
        r_residual = r_residual.max((s.r - s0.r).abs());
        pr_residual = pr_residual.max((s.p_r - s0.p_r).abs());
    }
    let pass =
        phi_residual <= tol * n as f64 && r_residual <= tol * s0.r && pr_residual <= tol * s0.r;
    Ok(ClosureReport { n, phi_residual, r_residual, pr_residual, pass })
}

/// CSV with header `k,t,r,p_r,phi,p_phi,x,y`; `t = k tau` and `(x, y)` are
/// Cartesian coordinates for plotting.
pub fn write_trajectory_csv<W: std::io::Write>(
    traj: &[PhaseState],
    params: &DiscreteParams,
    mut w: W,
) -> Result<()> {
    writeln!(w, "k,t,r,p_r,phi,p_phi,x,y")?;
    for (k, s) in traj.iter().enumerate() {
        let t = k as f64 * params.tau();
        let x = s.r * s.phi.cos();
        let y = s.r * s.phi.sin();
        writeln!(w, "{k},{t},{},{},{},{},{x},{y}", s.r, s.p_r, s.phi, s.p_phi)?;
    }
    Ok(())
}
