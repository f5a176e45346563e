use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grand_potential_t0;
use crate::eig;
use crate::error::{Error, Result};
use crate::lattice::{self, Boundary, ModelParams, MomentumGrid};

/// Momentum points used for the thermodynamic-limit surrogate potential.
pub const DENSE_K_POINTS: usize = 4096;

/// Zero-temperature grand potentials and their `delta` derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeScan {
    pub deltas: Vec<f64>,
    pub order: u8,
    pub h: f64,
    /// Surrogate potential per site on the `L`-point grid.
    pub omega_ext: Vec<f64>,
    /// Surrogate potential per site on the dense grid.
    pub omega_surr: Vec<f64>,
    /// Open-chain potential minus the `L`-point surrogate potential.
    pub omega_edge: Vec<f64>,
    pub d_ext: Vec<f64>,
    pub d_surr: Vec<f64>,
    pub d_edge: Vec<f64>,
}

fn potentials(params: &ModelParams, dense: &MomentumGrid) -> Result<[f64; 3]> {
    let mu = params.mu;
    let grid = MomentumGrid::uniform(params.length)?;
    let open = lattice::build_realspace(&params.with_boundary(Boundary::Obc))?;
    let open: Vec<Complex64> = eig::eigenvalues(&open.entries)?;
    let omega_obc = grand_potential_t0(&open, mu);
    let omega_l = grand_potential_t0(&lattice::surrogate_spectrum(params, &grid)?, mu);
    let omega_dense = grand_potential_t0(&lattice::surrogate_spectrum(params, dense)?, mu);
    Ok([
        omega_l / params.sites() as f64,
        omega_dense / (2 * dense.count()) as f64,
        omega_obc - omega_l,
    ])
}

/// Central finite differences in `delta` of the `T = 0` grand potentials.
///
/// `order` is 1 or 2. Every grid point must stay at least `2h` away from
/// `delta = t1`, where the open chain is defective.
pub fn delta_derivative_scan(
    params: &ModelParams,
    delta_grid: &[f64],
    order: u8,
    h: f64,
) -> Result<DerivativeScan> {
    params.validate()?;
    if !(order == 1 || order == 2) {
        return Err(Error::InvalidParams(format!("derivative order must be 1 or 2, got {order}")));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParams(format!("step must be positive, got {h}")));
    }
    if delta_grid.is_empty() {
        return Err(Error::InvalidParams("delta grid is empty".into()));
    }
    let distance = delta_grid
        .iter()
        .map(|d| (d.abs() - params.t1.abs()).abs())
        .fold(f64::INFINITY, f64::min);
    if h > distance / 2.0 {
        return Err(Error::StepTooLarge { step: h, distance });
    }
    let dense = MomentumGrid::uniform(DENSE_K_POINTS)?;
    let rows: Vec<([f64; 3], [f64; 3])> = delta_grid
        .par_iter()
        .map(|&d| {
            let at = |x: f64| potentials(&params.with_delta(x), &dense);
            let (lo, mid, hi) = (at(d - h)?, at(d)?, at(d + h)?);
            let der = std::array::from_fn(|i| match order {
                1 => (hi[i] - lo[i]) / (2.0 * h),
                _ => (hi[i] - 2.0 * mid[i] + lo[i]) / (h * h),
            });
            Ok((mid, der))
        })
        .collect::<Result<_>>()?;
    let col = |which: bool, i: usize| -> Vec<f64> {
        rows.iter().map(|(v, d)| if which { d[i] } else { v[i] }).collect()
    };
    Ok(DerivativeScan {
        deltas: delta_grid.to_vec(),
        order,
        h,
        omega_ext: col(false, 0),
        omega_surr: col(false, 1),
        omega_edge: col(false, 2),
        d_ext: col(true, 0),
        d_surr: col(true, 1),
        d_edge: col(true, 2),
    })
}

/// Locations of jumps in a sampled curve.
///
/// Jumps are `|v[i+1] - v[i]| / (x[i+1] - x[i])` placed at interval
/// midpoints; a jump is a kink when it is a local maximum larger than
/// `factor` times the median jump.
pub fn find_kinks(x: &[f64], values: &[f64], factor: f64) -> Vec<f64> {
    let n = x.len().min(values.len());
    if n < 3 {
        return Vec::new();
    }
    let jumps: Vec<f64> = (0..n - 1)
        .map(|i| (values[i + 1] - values[i]).abs() / (x[i + 1] - x[i]))
        .collect();
    let mut sorted = jumps.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    (0..jumps.len())
        .filter(|&i| {
            let left = if i > 0 { jumps[i - 1] } else { 0.0 };
            let right = jumps.get(i + 1).copied().unwrap_or(0.0);
            jumps[i] > factor * median && jumps[i] >= left && jumps[i] >= right
        })
        .map(|i| 0.5 * (x[i] + x[i + 1]))
        .collect()
}
