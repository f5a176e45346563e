//! Biorthogonal correlation matrices and entanglement entropy of the
//! half-filled ground state.
//!
//! For a biorthogonal ground state `|G^R>`, `<G^L|` built from occupied
//! right and left modes, the single-particle correlation matrix is the
//! oblique projector `C = sum_occ R_n L_n^H`. The entanglement entropy of a
//! block follows from the eigenvalues `xi` of its restriction.

use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eig::{self, EigSystem};
use crate::error::{Error, Result};
use crate::lattice::{self, Boundary, ModelParams};
use crate::thermo::fit::linear_fit;

/// Largest biorthogonality defect accepted when forming `C`.
pub const BIORTH_TOL: f64 = 1e-8;
/// `xi` this close to 0 or 1 contributes nothing.
pub const EDGE_TOL: f64 = 1e-12;
/// Relative tolerance on the imaginary part of the entropy.
pub const LEAKAGE_TOL: f64 = 1e-6;
/// Running-mean width used for the oscillation-averaged scaling fit.
pub const SCALING_WINDOW: usize = 20;

/// Restricted correlation spectrum of one block and its entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub subsystem_size: usize,
    pub xi: Vec<Complex64>,
    pub ee: f64,
    pub imag_leakage: f64,
}

/// Which block of `L` sites (half of the `2L`-site chain) is traced out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cut {
    /// Sites `0..L`: one entangling point.
    #[default]
    Half,
    /// Sites `2 floor(L/4) .. 2 floor(L/4) + L`: two entangling points in the bulk.
    Centered,
}

impl Cut {
    pub fn sites(self, length: usize) -> Range<usize> {
        match self {
            Cut::Half => 0..length,
            Cut::Centered => {
                let start = 2 * (length / 4);
                start..start + length
            }
        }
    }

    /// CFT prefactor: `EE ~ (c / 6) ln L_A` per entangling point.
    pub fn entangling_points(self) -> usize {
        match self {
            Cut::Half => 1,
            Cut::Centered => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Cut::Half => "half",
            Cut::Centered => "centered",
        }
    }
}

impl std::str::FromStr for Cut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half" => Ok(Cut::Half),
            "centered" => Ok(Cut::Centered),
            other => Err(Error::InvalidParams(format!("unknown cut '{other}'"))),
        }
    }
}

fn check_biorthogonal(sys: &EigSystem) -> Result<()> {
    if sys.biorth_residual > BIORTH_TOL {
        return Err(Error::DefectiveMatrix(format!(
            "biorthogonality residual {:e} exceeds {BIORTH_TOL:e}",
            sys.biorth_residual
        )));
    }
    Ok(())
}

/// `C` in the balancing gauge: `D^-1 C D`.
fn balanced_projector(sys: &EigSystem, occupied: &[usize]) -> DMatrix<Complex64> {
    let n = sys.dim();
    let d = &sys.scale;
    let u = DMatrix::from_fn(n, occupied.len(), |i, j| sys.right[(i, occupied[j])] / d[i]);
    let w = DMatrix::from_fn(n, occupied.len(), |i, j| sys.left[(i, occupied[j])] * d[i]);
    u * w.adjoint()
}

/// `C = sum_{n in occupied} R_n L_n^H`.
pub fn correlation_matrix(sys: &EigSystem, occupied: &[usize]) -> Result<DMatrix<Complex64>> {
    check_biorthogonal(sys)?;
    if let Some(&n) = occupied.iter().find(|&&n| n >= sys.dim()) {
        return Err(Error::Dimension(format!("mode {n} out of range for {} modes", sys.dim())));
    }
    let d = &sys.scale;
    let p = balanced_projector(sys, occupied);
    Ok(DMatrix::from_fn(p.nrows(), p.ncols(), |i, j| p[(i, j)] * (d[i] / d[j])))
}

/// Eigenvalues of the principal submatrix of `c` on `sites`, by real part.
pub fn subsystem_spectrum(c: &DMatrix<Complex64>, sites: Range<usize>) -> Result<Vec<Complex64>> {
    if sites.is_empty() || sites.end > c.nrows() {
        return Err(Error::Dimension(format!(
            "block {sites:?} does not fit a {}-site chain",
            c.nrows()
        )));
    }
    let block = c.view((sites.start, sites.start), (sites.len(), sites.len())).into_owned();
    eig::eigenvalues(&block)
}

fn binary_entropy(xi: Complex64) -> Complex64 {
    let near_real = xi.im.abs() < 1e-10;
    let x = if near_real {
        Complex64::new(xi.re.clamp(0.0, 1.0), xi.im)
    } else {
        xi
    };
    let term = |z: Complex64| {
        if z.norm() < EDGE_TOL {
            Complex64::new(0.0, 0.0)
        } else {
            -z * z.ln()
        }
    };
    term(x) + term(1.0 - x)
}

/// Entropy and the magnitude of its discarded imaginary part.
pub fn entanglement_entropy_with_leakage(xi: &[Complex64]) -> Result<(f64, f64)> {
    let s: Complex64 = xi.iter().map(|&x| binary_entropy(x)).sum();
    if !s.re.is_finite() || s.im.abs() > LEAKAGE_TOL * (s.re.abs() + 1.0) {
        return Err(Error::ComplexLeakage { re: s.re, im: s.im });
    }
    Ok((s.re, s.im.abs()))
}

/// `-sum [xi ln xi + (1 - xi) ln(1 - xi)]` with principal logarithms.
pub fn entanglement_entropy(xi: &[Complex64]) -> Result<f64> {
    Ok(entanglement_entropy_with_leakage(xi)?.0)
}

/// Half-filled open-chain ground state restricted to `cut`.
///
/// A degenerate pair of edge zero modes is first rotated into bonding and
/// antibonding combinations; the bonding one is filled.
pub fn ground_state_correlation(params: &ModelParams, cut: Cut) -> Result<CorrelationResult> {
    let open = params.with_boundary(Boundary::Obc);
    let h = lattice::build_realspace(&open)?;
    let mut sys = eig::eig_general(&h.entries)?;
    check_biorthogonal(&sys)?;
    if let Some(pair) = eig::zero_pair(&sys) {
        let chirality = lattice::chirality(sys.dim());
        eig::resolve_zero_pair(&mut sys, pair, &chirality)?;
    }
    let occupied = eig::occupied_indices(&sys, params.mu)?;
    // The balancing similarity is diagonal, so the block spectrum is gauge
    // independent.
    let p = balanced_projector(&sys, &occupied);
    let sites = cut.sites(params.length);
    let xi = subsystem_spectrum(&p, sites.clone())?;
    let (ee, imag_leakage) = entanglement_entropy_with_leakage(&xi)?;
    Ok(CorrelationResult {
        subsystem_size: sites.len(),
        xi,
        ee,
        imag_leakage,
    })
}

/// Ground-state correlation results along a `delta` grid, in grid order.
pub fn ee_vs_delta(params: &ModelParams, delta_grid: &[f64], cut: Cut) -> Result<Vec<CorrelationResult>> {
    delta_grid
        .par_iter()
        .map(|&d| ground_state_correlation(&params.with_delta(d), cut))
        .collect()
}

/// Entanglement entropy against `ln L_A` and its logarithmic slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub sizes: Vec<usize>,
    pub ln_sizes: Vec<f64>,
    pub ee_values: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    /// `6 slope / (entangling points)`.
    pub central_charge: f64,
    pub residual: f64,
    /// Slope after a running mean over [`SCALING_WINDOW`] consecutive sizes,
    /// when enough sizes are available.
    pub windowed_slope: Option<f64>,
    pub windowed_central_charge: Option<f64>,
}

fn running_mean(v: &[f64], w: usize) -> Vec<f64> {
    v.windows(w).map(|s| s.iter().sum::<f64>() / w as f64).collect()
}

/// Fits `EE = a + (c k / 6) ln L_A` over a list of chain lengths, with `k`
/// the number of entangling points of the cut.
pub fn ee_scaling_fit(params: &ModelParams, sizes: &[usize], cut: Cut) -> Result<ScalingFit> {
    if sizes.len() < 5 {
        return Err(Error::InsufficientSizes(sizes.len()));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams("sizes must be strictly increasing".into()));
    }
    let results: Vec<CorrelationResult> = sizes
        .par_iter()
        .map(|&l| ground_state_correlation(&params.with_length(l), cut))
        .collect::<Result<_>>()?;
    let ln_sizes: Vec<f64> = results.iter().map(|r| (r.subsystem_size as f64).ln()).collect();
    let ee_values: Vec<f64> = results.iter().map(|r| r.ee).collect();
    let prefactor = 6.0 / cut.entangling_points() as f64;
    let (slope, intercept, residual) = linear_fit(&ln_sizes, &ee_values);
    let windowed_slope = (sizes.len() >= SCALING_WINDOW + 5).then(|| {
        let x = running_mean(&ln_sizes, SCALING_WINDOW);
        let y = running_mean(&ee_values, SCALING_WINDOW);
        linear_fit(&x, &y).0
    });
    Ok(ScalingFit {
        sizes: sizes.to_vec(),
        ln_sizes,
        ee_values,
        slope,
        intercept,
        central_charge: prefactor * slope,
        residual,
        windowed_slope,
        windowed_central_charge: windowed_slope.map(|s| prefactor * s),
    })
}
