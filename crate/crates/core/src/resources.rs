//! Zephyr sizing bounds, term counts and power-law fits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qubo::QuboModel;

/// Resources for embedding a dense `q`-variable QUBO as a clique on a
/// Zephyr graph `Z_g` with tile parameter 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZephyrEstimate {
    pub q: usize,
    pub g: usize,
    /// `ceil(s^2/8 + s)` with `s = q + 8`.
    pub qubit_bound: usize,
    /// `32 g^2 + 16 g`.
    pub zephyr_total: usize,
}

/// The largest clique embeddable on `Z_g` has `16g - 8` vertices.
pub fn zephyr_estimate(q: usize) -> Result<ZephyrEstimate> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let s = q + 8;
    let g = s.div_ceil(16);
    Ok(ZephyrEstimate { q, g, qubit_bound: (s * s).div_ceil(8) + s, zephyr_total: 32 * g * g + 16 * g })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TermCounts {
    pub linear: usize,
    pub quadratic: usize,
    pub total: usize,
}

/// Stored nonzero linear and quadratic coefficients.
pub fn count_terms(model: &QuboModel) -> TermCounts {
    let linear = model.linear().len();
    let quadratic = model.quadratic().len();
    TermCounts { linear, quadratic, total: linear + quadratic }
}

fn check_points(points: &[(f64, f64)]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("no data points".into()));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::InvalidParameter(format!("coordinates must be positive and finite, got ({x}, {y})")));
    }
    Ok(())
}

/// Least-squares `k` for `y = x^k` in log space:
/// `k = Σ ln x ln y / Σ (ln x)^2`.
pub fn power_fit(points: &[(f64, f64)]) -> Result<f64> {
    check_points(points)?;
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(x, y)| {
        let lx = x.ln();
        (num + lx * y.ln(), den + lx * lx)
    });
    if den == 0.0 {
        return Err(Error::InvalidParameter("every x equals 1".into()));
    }
    Ok(num / den)
}

/// Least-squares slope `a` for `y = a x`: `a = Σ xy / Σ x^2`.
pub fn linear_fit_zero_intercept(points: &[(f64, f64)]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("no data points".into()));
    }
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(x, y)| (num + x * y, den + x * x));
    if den == 0.0 || !(num / den).is_finite() {
        return Err(Error::InvalidParameter("slope undefined for these points".into()));
    }
    Ok(num / den)
}
