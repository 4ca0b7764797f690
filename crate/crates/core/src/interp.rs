//! Monotonicity-preserving piecewise-cubic interpolation on an irregular grid.
//!
//! Knot tangents come from differentiating the local Lagrange polynomial
//! through a window of up to five neighbouring points (fourth-order accurate
//! in the interior), then get clamped into the Fritsch-Carlson box
//! `|m| <= 3*min(|s_left|, |s_right|)` so the interpolant cannot overshoot
//! monotone data. Plain secant-averaged tangents would be monotone too, but
//! their O(h^2) error is too coarse for the derivative checks downstream.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Filtered tangent dy/dx at each knot.
    m: Vec<f64>,
}

impl MonotoneCubic {
    /// Builds the interpolant. `x` must be finite and strictly increasing,
    /// `y` finite, both at least two points long.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::domain(format!(
                "interpolation needs matching lengths, got {} x vs {} y",
                x.len(),
                y.len()
            )));
        }
        if x.len() < 2 {
            return Err(Error::domain("interpolation needs at least two knots"));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::domain("interpolation knots must be finite"));
        }
        if x.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("interpolation abscissae must be strictly increasing"));
        }

        let n = x.len();
        let secant = |i: usize| (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        let mut m: Vec<f64> = (0..n).map(|i| lagrange_derivative(&x, &y, i)).collect();

        // Fritsch-Carlson limiter. A zero tangent at data extrema keeps the
        // curve from inventing wiggles the data does not have.
        for (i, mi) in m.iter_mut().enumerate() {
            let left = if i > 0 { Some(secant(i - 1)) } else { None };
            let right = if i + 1 < n { Some(secant(i)) } else { None };
            let cap = match (left, right) {
                (Some(a), Some(b)) => {
                    if a * b <= 0.0 {
                        *mi = 0.0;
                        continue;
                    }
                    3.0 * a.abs().min(b.abs())
                }
                (Some(a), None) => 3.0 * a.abs(),
                (None, Some(b)) => 3.0 * b.abs(),
                (None, None) => unreachable!("n >= 2"),
            };
            let dir = left.or(right).unwrap();
            if *mi * dir < 0.0 {
                *mi = 0.0;
            } else if mi.abs() > cap {
                *mi = cap.copysign(*mi);
            }
        }

        Ok(MonotoneCubic { x, y, m })
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    pub fn knots(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }

    /// Index of the interval containing `x` (clamped to the end intervals).
    fn segment(&self, x: f64) -> usize {
        match self.x.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.x.len() - 2),
        }
    }

    /// Value at `x`. Knots are reproduced exactly; outside the grid the
    /// boundary value is extended linearly with the boundary tangent.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.x[0] {
            return self.y[0] + self.m[0] * (x - self.x[0]);
        }
        let last = self.x.len() - 1;
        if x >= self.x[last] {
            return self.y[last] + self.m[last] * (x - self.x[last]);
        }
        if let Ok(i) = self.x.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
            return self.y[i];
        }
        let i = self.segment(x);
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        let omt = 1.0 - t;
        let h00 = (1.0 + 2.0 * t) * omt * omt;
        let h10 = t * omt * omt;
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * self.y[i] + h * (h10 * self.m[i] + h11 * self.m[i + 1]) + h01 * self.y[i + 1]
    }

    /// Slope at `x`; the boundary tangent outside the grid, the knot tangent
    /// exactly at a knot.
    pub fn deriv(&self, x: f64) -> f64 {
        if x <= self.x[0] {
            return self.m[0];
        }
        let last = self.x.len() - 1;
        if x >= self.x[last] {
            return self.m[last];
        }
        if let Ok(i) = self.x.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
            return self.m[i];
        }
        let i = self.segment(x);
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        let d00 = 6.0 * t * t - 6.0 * t;
        let d10 = 3.0 * t * t - 4.0 * t + 1.0;
        let d01 = -d00;
        let d11 = 3.0 * t * t - 2.0 * t;
        (d00 * self.y[i] + d01 * self.y[i + 1]) / h + d10 * self.m[i] + d11 * self.m[i + 1]
    }
}

/// Derivative at knot `i` of the Lagrange polynomial through a window of up
/// to five points around it.
fn lagrange_derivative(x: &[f64], y: &[f64], i: usize) -> f64 {
    let n = x.len();
    let lo = if n <= 5 { 0 } else { i.saturating_sub(2).min(n - 5) };
    let hi = (lo + 5).min(n);
    let xs = &x[lo..hi];
    let ys = &y[lo..hi];
    let j = i - lo;

    let mut d = 0.0;
    for k in 0..xs.len() {
        if k == j {
            let mut s = 0.0;
            for mm in 0..xs.len() {
                if mm != j {
                    s += 1.0 / (xs[j] - xs[mm]);
                }
            }
            d += ys[j] * s;
        } else {
            let mut num = 1.0;
            let den = xs[k] - xs[j];
            for mm in 0..xs.len() {
                if mm == k || mm == j {
                    continue;
                }
                num *= (xs[j] - xs[mm]) / (xs[k] - xs[mm]);
            }
            d += ys[k] * num / den;
        }
    }
    d
}
