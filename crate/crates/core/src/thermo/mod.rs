//! Grand potential, entropy and heat capacity of free-fermion spectra, and
//! their split into bulk and edge parts.
//!
//! Units: `k_B = hbar = v = 1`, energies and temperatures in units of `t2`.
//! All sums run in complex arithmetic; spectra of real matrices are closed
//! under conjugation, so the imaginary parts cancel and only the real part
//! is returned. Bulk quantities in [`ThermoCurve`] are per unit cell, edge
//! quantities are totals.

pub(crate) mod fit;
mod itc;
mod scan;

pub use fit::{fit_central_charge_cv, CvFit};
pub use itc::{find_resonance_peaks, itc_scan, predicted_itc_period, ItcReport};
pub use scan::{delta_derivative_scan, find_kinks, DerivativeScan, DENSE_K_POINTS};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eig;
use crate::error::{Error, Result};
use crate::lattice::{self, Boundary, ModelParams, MomentumGrid};

/// `|1 + e^x|` is clipped to this floor before division or logarithm.
pub const RESONANCE_FLOOR: f64 = 1e-12;
/// Relative tolerance on the imaginary part of a thermodynamic sum.
pub const LEAKAGE_TOL: f64 = 1e-8;

fn clip(w: Complex64) -> Complex64 {
    let m = w.norm();
    if m >= RESONANCE_FLOOR {
        w
    } else if m == 0.0 {
        Complex64::new(RESONANCE_FLOOR, 0.0)
    } else {
        w * (RESONANCE_FLOOR / m)
    }
}

/// `ln(1 + z)`, accurate for small `|z|`.
fn ln_1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-5 {
        z - z * z * 0.5 + z * z * z / 3.0
    } else {
        clip(1.0 + z).ln()
    }
}

/// Below this `Re x` a mode is not reflected, so both members of a
/// numerically split imaginary pair stay on the same branch.
const REFLECT_TOL: f64 = 1e-8;

/// `ln(1 + e^x)` without overflow.
fn ln_1p_exp(x: Complex64) -> Complex64 {
    if x.re > REFLECT_TOL {
        x + ln_1p((-x).exp())
    } else {
        ln_1p(x.exp())
    }
}

/// Entropy of one fermionic mode at `x = E/T`; even in `x`.
fn mode_entropy(x: Complex64) -> Complex64 {
    let y = if x.re > REFLECT_TOL { -x } else { x };
    let ey = y.exp();
    ln_1p(ey) - y * ey / clip(1.0 + ey)
}

/// Heat capacity of one fermionic mode at `x = E/T`; even in `x`.
fn mode_heat_capacity(x: Complex64) -> Complex64 {
    let y = if x.re > REFLECT_TOL { -x } else { x };
    let ey = y.exp();
    let d = clip(1.0 + ey);
    x * x * ey / (d * d)
}

fn checked_real(sum: Complex64) -> Result<(f64, f64)> {
    if !sum.re.is_finite() || !sum.im.is_finite() {
        return Err(Error::ComplexLeakage {
            re: sum.re,
            im: sum.im,
        });
    }
    if sum.im.abs() > LEAKAGE_TOL * (sum.re.abs() + 1.0) {
        return Err(Error::ComplexLeakage {
            re: sum.re,
            im: sum.im,
        });
    }
    Ok((sum.re, sum.im.abs()))
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveTemperature(t));
    }
    Ok(())
}

/// Real part of a thermodynamic sum and the size of its discarded
/// imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub value: f64,
    pub imag_leakage: f64,
}

/// `Omega = -T sum_i ln(1 + e^{-(E_i - mu)/T})`.
pub fn grand_potential(energies: &[Complex64], t: f64, mu: f64) -> Result<Potential> {
    check_temperature(t)?;
    let sum: Complex64 = energies
        .iter()
        .map(|&e| -t * ln_1p_exp(-(e - mu) / t))
        .sum();
    let (value, imag_leakage) = checked_real(sum)?;
    Ok(Potential {
        value,
        imag_leakage,
    })
}

/// Zero-temperature grand potential: `Re sum_{Re E < mu} (E - mu)`.
pub fn grand_potential_t0(energies: &[Complex64], mu: f64) -> f64 {
    energies
        .iter()
        .filter(|e| e.re < mu)
        .map(|e| e.re - mu)
        .sum()
}

/// `S = sum_i [ln(1 + e^{E_i/T}) - (E_i/T) e^{E_i/T} / (1 + e^{E_i/T})]` at `mu = 0`.
pub fn entropy(energies: &[Complex64], t: f64) -> Result<f64> {
    check_temperature(t)?;
    let sum: Complex64 = energies.iter().map(|&e| mode_entropy(e / t)).sum();
    Ok(checked_real(sum)?.0)
}

/// `C_V = sum_i (E_i/T)^2 e^{E_i/T} / (1 + e^{E_i/T})^2` at `mu = 0`.
pub fn heat_capacity(energies: &[Complex64], t: f64) -> Result<f64> {
    check_temperature(t)?;
    let sum: Complex64 = energies.iter().map(|&e| mode_heat_capacity(e / t)).sum();
    Ok(checked_real(sum)?.0)
}

/// Open-chain spectrum together with the extensive reference spectrum used
/// to split it into bulk and edge parts.
#[derive(Debug, Clone)]
pub struct HillSpectra {
    pub params: ModelParams,
    pub open: Vec<Complex64>,
    /// Periodic Bloch spectrum (`delta = 0`) or surrogate spectrum on the
    /// `L`-point grid.
    pub bulk: Vec<Complex64>,
}

impl HillSpectra {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let open_params = params.with_boundary(Boundary::Obc);
        let h = lattice::build_realspace(&open_params)?;
        let open = eig::eigenvalues(&h.entries)?;
        Ok(Self {
            params: *params,
            open,
            bulk: bulk_energies(params)?,
        })
    }
}

/// Reference bulk spectrum on the `L`-point momentum grid: the Bloch
/// spectrum for `delta = 0`, the surrogate spectrum otherwise.
///
/// Periodic boundaries with `delta != 0` are rejected: the edge split is
/// defined against the surrogate, not the periodic non-reciprocal chain.
pub fn bulk_energies(params: &ModelParams) -> Result<Vec<Complex64>> {
    params.validate()?;
    if params.boundary == Boundary::Pbc && !params.is_hermitian() {
        return Err(Error::InvalidParams(
            "bulk/edge split of a non-reciprocal chain needs open boundaries".into(),
        ));
    }
    let grid = MomentumGrid::uniform(params.length)?;
    if params.is_hermitian() {
        Ok(lattice::bloch_spectrum(params, &grid))
    } else {
        lattice::surrogate_spectrum(params, &grid)
    }
}

/// Total, extensive and non-extensive grand potentials at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HillDecomposition {
    pub omega_obc: f64,
    /// Bulk grand potential per site.
    pub omega_bulk_per_site: f64,
    /// Edge (subdivision) grand potential.
    pub omega_edge: f64,
    pub imag_leakage: f64,
}

impl HillSpectra {
    pub fn split(&self, t: f64) -> Result<HillDecomposition> {
        let mu = self.params.mu;
        let sites = self.params.sites() as f64;
        let (obc, bulk, leak) = if t == 0.0 {
            (
                grand_potential_t0(&self.open, mu),
                grand_potential_t0(&self.bulk, mu),
                0.0,
            )
        } else {
            let o = grand_potential(&self.open, t, mu)?;
            let b = grand_potential(&self.bulk, t, mu)?;
            (o.value, b.value, o.imag_leakage.max(b.imag_leakage))
        };
        Ok(HillDecomposition {
            omega_obc: obc,
            omega_bulk_per_site: bulk / sites,
            omega_edge: obc - bulk,
            imag_leakage: leak,
        })
    }
}

/// Hill decomposition at temperature `t` (`t = 0` uses the filled-mode sum).
pub fn hill_split(params: &ModelParams, t: f64) -> Result<HillDecomposition> {
    if t < 0.0 {
        return Err(Error::NonPositiveTemperature(t));
    }
    HillSpectra::new(params)?.split(t)
}

/// Entropy and heat capacity against temperature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermoCurve {
    pub params: ModelParams,
    pub temperatures: Vec<f64>,
    /// Bulk entropy per unit cell.
    pub s_bulk: Vec<f64>,
    /// Edge entropy `S_OBC - S_bulk` (total).
    pub s_edge: Vec<f64>,
    /// Bulk heat capacity per unit cell.
    pub cv_bulk: Vec<f64>,
    /// Total entropy of the open chain.
    pub s_obc: Vec<f64>,
}

impl ThermoCurve {
    pub fn len(&self) -> usize {
        self.temperatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temperatures.is_empty()
    }
}

pub fn thermo_curve(params: &ModelParams, temperatures: &[f64]) -> Result<ThermoCurve> {
    check_grid(temperatures)?;
    let spectra = HillSpectra::new(params)?;
    curve_from_spectra(&spectra, temperatures)
}

pub fn curve_from_spectra(spectra: &HillSpectra, temperatures: &[f64]) -> Result<ThermoCurve> {
    check_grid(temperatures)?;
    let cells = spectra.params.length as f64;
    let rows: Vec<(f64, f64, f64, f64)> = temperatures
        .par_iter()
        .map(|&t| {
            let s_open = entropy(&spectra.open, t)?;
            let s_bulk = entropy(&spectra.bulk, t)?;
            let cv = heat_capacity(&spectra.bulk, t)?;
            Ok((s_bulk / cells, s_open - s_bulk, cv / cells, s_open))
        })
        .collect::<Result<_>>()?;
    Ok(ThermoCurve {
        params: spectra.params,
        temperatures: temperatures.to_vec(),
        s_bulk: rows.iter().map(|r| r.0).collect(),
        s_edge: rows.iter().map(|r| r.1).collect(),
        cv_bulk: rows.iter().map(|r| r.2).collect(),
        s_obc: rows.iter().map(|r| r.3).collect(),
    })
}

/// Bulk heat capacity per unit cell on a temperature grid, without the
/// open-chain spectrum.
pub fn bulk_heat_capacity(params: &ModelParams, temperatures: &[f64]) -> Result<Vec<f64>> {
    let bulk = bulk_energies(params)?;
    let cells = params.length as f64;
    temperatures
        .par_iter()
        .map(|&t| Ok(heat_capacity(&bulk, t)? / cells))
        .collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParams("temperature grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParams("temperature grid must be strictly ascending".into()));
    }
    if let Some(&t) = grid.iter().find(|t| !(**t > 0.0)) {
        return Err(Error::NonPositiveTemperature(t));
    }
    Ok(())
}
