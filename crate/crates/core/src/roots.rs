//! Bracketing and hybrid root refinement for scalar equations.

use crate::error::Result;

/// A sign-change interval: f(lo) and f(hi) have opposite signs (or one is 0).
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Expands geometrically from `start` by factors of 2 until `f` changes sign.
/// Walks toward the sign change first in the direction suggested by f(start),
/// then the other way; every candidate radius stays within
/// `[start * 2^-cap_exp, start * 2^cap_exp]`. Returns None if no sign change
/// is found (the equation has no root in the search range).
pub fn expand_bracket<F>(mut f: F, start: f64, cap_exp: u32) -> Result<Option<Bracket>>
where
    F: FnMut(f64) -> Result<f64>,
{
    debug_assert!(start > 0.0);
    let f_start = f(start)?;
    if f_start == 0.0 {
        return Ok(Some(Bracket { lo: start, hi: start, f_lo: 0.0, f_hi: 0.0 }));
    }

    // f < 0 below the root and f > 0 above it for every potential family we
    // solve, so a positive value sends us down and a negative one up.
    let first_down = f_start > 0.0;
    for down in [first_down, !first_down] {
        let mut prev_x = start;
        let mut prev_f = f_start;
        let factor = if down { 0.5 } else { 2.0 };
        for _ in 0..cap_exp {
            let x = prev_x * factor;
            let fx = f(x)?;
            if !fx.is_finite() {
                break;
            }
            if fx == 0.0 || fx * prev_f < 0.0 {
                let (lo, hi, f_lo, f_hi) = if down {
                    (x, prev_x, fx, prev_f)
                } else {
                    (prev_x, x, prev_f, fx)
                };
                return Ok(Some(Bracket { lo, hi, f_lo, f_hi }));
            }
            prev_x = x;
            prev_f = fx;
        }
    }
    Ok(None)
}

/// Brent's method: bisection with inverse-quadratic/secant acceleration.
/// Refines to a bracket a couple of ulps wide, far inside the documented
/// 1e-14 relative width. `f(lo)` and `f(hi)` must differ in sign.
pub fn brent<F>(mut f: F, bracket: Bracket) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let Bracket { lo: mut a, hi: mut b, f_lo: mut fa, f_hi: mut fb } = bracket;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    debug_assert!(fa * fb < 0.0, "brent needs a sign change");

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..256 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5e-300;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // attempt inverse quadratic interpolation (secant if a == c)
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b)?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok<F: Fn(f64) -> f64>(f: F) -> impl FnMut(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn finds_cosine_root() {
        let b = Bracket { lo: 1.0, hi: 2.0, f_lo: 1f64.cos(), f_hi: 2f64.cos() };
        let r = brent(ok(f64::cos), b).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn finds_cube_root_of_eight() {
        let b = Bracket { lo: 0.1, hi: 100.0, f_lo: 0.1f64.powi(3) - 8.0, f_hi: 1e6 - 8.0 };
        let r = brent(ok(|x| x * x * x - 8.0), b).unwrap();
        assert!((r - 2.0).abs() <= 8.0 * f64::EPSILON, "r = {r}");
    }

    #[test]
    fn bracket_walks_down_from_positive_start() {
        // coulomb-style balance: root at 0.02^(1/3), below the start
        let g = |r: f64| r - 0.02 / (r * r);
        let expect = 0.02f64.cbrt();
        let br = expand_bracket(ok(g), 1.0, 60).unwrap().unwrap();
        assert!(br.lo < expect && expect <= br.hi, "bracket [{}, {}]", br.lo, br.hi);
        let root = brent(ok(g), br).unwrap();
        assert!((root - expect).abs() < 1e-14, "root = {root}");
    }

    #[test]
    fn bracket_walks_up_from_negative_start() {
        let g = |r: f64| r / 64.0 - 1.0 / (r * r);
        let br = expand_bracket(ok(g), 1.0, 60).unwrap().unwrap();
        let root = brent(ok(g), br).unwrap();
        assert!((root - 4.0).abs() < 1e-13, "root = {root}");
    }

    #[test]
    fn reports_no_bracket_when_function_has_no_root() {
        let br = expand_bracket(ok(|r: f64| r + 1.0), 1.0, 20).unwrap();
        assert!(br.is_none());
    }

    #[test]
    fn error_from_callee_propagates() {
        let mut f = |_x: f64| -> Result<f64> { Err(crate::error::Error::domain("boom")) };
        assert!(expand_bracket(&mut f, 1.0, 4).is_err());
    }
}
