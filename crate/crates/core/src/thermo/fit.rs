use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ThermoCurve;
use crate::error::{Error, Result};

/// Straight-line fit of the bulk heat capacity per cell against `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CvFit {
    pub slope: f64,
    pub intercept: f64,
    /// `3 slope / pi`.
    pub central_charge: f64,
    /// Root-mean-square deviation from the line.
    pub residual: f64,
    pub points: usize,
}

/// Least squares `y = a + b x`; returns `(b, a, rms)`.
pub(crate) fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    (slope, intercept, rms)
}

/// Fits `C_V` per cell over `t_min <= T <= t_max`; `C_V = pi c T / 3`.
pub fn fit_central_charge_cv(curve: &ThermoCurve, t_min: f64, t_max: f64) -> Result<CvFit> {
    let (x, y): (Vec<f64>, Vec<f64>) = curve
        .temperatures
        .iter()
        .zip(&curve.cv_bulk)
        .filter(|(t, _)| **t >= t_min && **t <= t_max)
        .map(|(t, c)| (*t, *c))
        .unzip();
    if x.len() < 5 {
        return Err(Error::WindowTooNarrow(x.len()));
    }
    let (slope, intercept, residual) = linear_fit(&x, &y);
    Ok(CvFit {
        slope,
        intercept,
        central_charge: 3.0 * slope / PI,
        residual,
        points: x.len(),
    })
}
