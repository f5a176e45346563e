//! Imaginary-time-crystal detection: resonances of purely imaginary
//! surrogate energies with fermionic Matsubara frequencies make the bulk
//! heat capacity spike periodically in `beta = 1/T`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bulk_energies, heat_capacity};
use crate::error::{Error, Result};
use crate::lattice::ModelParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItcReport {
    pub inv_t_grid: Vec<f64>,
    /// Bulk heat capacity per unit cell.
    pub cv_values: Vec<f64>,
    pub peak_positions: Vec<f64>,
    pub measured_period: f64,
    /// `2 pi / sqrt(delta^2 - t1^2 - 1)`, absent below the threshold.
    pub predicted_period: Option<f64>,
    pub relative_error: Option<f64>,
}

/// `2 pi / sqrt(delta^2 - t1^2 - 1)` when `delta^2 > t1^2 + 1`.
pub fn predicted_itc_period(params: &ModelParams) -> Option<f64> {
    let x = params.delta * params.delta - params.t1 * params.t1 - 1.0;
    (x > 0.0).then(|| 2.0 * PI / x.sqrt())
}

/// Resonance peaks: local maxima of `|C_V|` where `C_V < 0` that dominate a
/// window of `n/20` points on each side and stand out by at least 5% of
/// their height. Ordinary thermal maxima are positive and never qualify.
pub fn find_resonance_peaks(x: &[f64], cv: &[f64]) -> Vec<f64> {
    let n = cv.len();
    let w = (n / 20).max(1);
    let a: Vec<f64> = cv.iter().map(|v| v.abs()).collect();
    let mut peaks = Vec::new();
    for i in 1..n.saturating_sub(1) {
        if cv[i] >= 0.0 || a[i] <= a[i - 1] || a[i] < a[i + 1] {
            continue;
        }
        let lo = i.saturating_sub(w);
        let hi = (i + w + 1).min(n);
        let local_max = a[lo..hi].iter().cloned().fold(0.0, f64::max);
        if a[i] < local_max {
            continue;
        }
        let left_min = a[lo..=i].iter().cloned().fold(f64::INFINITY, f64::min);
        let right_min = a[i..hi].iter().cloned().fold(f64::INFINITY, f64::min);
        if a[i] - left_min.max(right_min) >= 0.05 * a[i] {
            peaks.push(x[i]);
        }
    }
    peaks
}

/// Bulk heat capacity on a `beta` grid and the period of its resonance peaks.
pub fn itc_scan(params: &ModelParams, inv_t_grid: &[f64]) -> Result<ItcReport> {
    if inv_t_grid.iter().any(|b| !(*b > 0.0)) {
        return Err(Error::InvalidParams("inverse temperatures must be positive".into()));
    }
    if inv_t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParams("inverse-temperature grid must be ascending".into()));
    }
    let bulk = bulk_energies(params)?;
    let cells = params.length as f64;
    let cv_values: Vec<f64> = inv_t_grid
        .par_iter()
        .map(|&beta| Ok(heat_capacity(&bulk, 1.0 / beta)? / cells))
        .collect::<Result<_>>()?;
    let peak_positions = find_resonance_peaks(inv_t_grid, &cv_values);
    if peak_positions.len() < 2 {
        return Err(Error::NoPeaksFound(peak_positions.len()));
    }
    let measured_period = (peak_positions[peak_positions.len() - 1] - peak_positions[0])
        / (peak_positions.len() - 1) as f64;
    let predicted_period = predicted_itc_period(params);
    Ok(ItcReport {
        inv_t_grid: inv_t_grid.to_vec(),
        cv_values,
        relative_error: predicted_period.map(|p| (measured_period - p).abs() / p),
        peak_positions,
        measured_period,
        predicted_period,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betas(max: f64, n: usize) -> Vec<f64> {
        (1..=n).map(|i| max * i as f64 / n as f64).collect()
    }

    #[test]
    fn predicted_periods() {
        let p = predicted_itc_period(&ModelParams::new(1.1, 1.6, 4)).unwrap();
        assert!((p - 2.0 * PI / 0.35f64.sqrt()).abs() < 1e-12);
        let p = predicted_itc_period(&ModelParams::new(1.1, 1.49, 4)).unwrap();
        assert!((p - 62.52).abs() < 0.01);
        assert_eq!(predicted_itc_period(&ModelParams::new(1.1, 0.8, 4)), None);
    }

    #[test]
    fn broken_trivial_phase_oscillates() {
        let r = itc_scan(&ModelParams::new(1.1, 1.6, 200), &betas(60.0, 6000)).unwrap();
        assert!(r.peak_positions.len() >= 5);
        assert!(r.relative_error.unwrap() < 0.05, "period {}", r.measured_period);
    }

    #[test]
    fn protected_phase_has_no_peaks() {
        assert!(matches!(
            itc_scan(&ModelParams::new(1.1, 0.8, 200), &betas(60.0, 3000)),
            Err(Error::NoPeaksFound(_))
        ));
    }
}
