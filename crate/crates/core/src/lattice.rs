//! Real-space and momentum-space Hamiltonians of the SSH chain and its
//! non-reciprocal deformation.
//!
//! Basis ordering is `(A1, B1, A2, B2, ...)` everywhere. Square roots and
//! logarithms of complex or negative arguments use the principal branch.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eig;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Obc,
    Pbc,
}

/// Hopping amplitudes, non-reciprocity and size of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub t1: f64,
    pub t2: f64,
    pub delta: f64,
    /// Number of unit cells.
    pub length: usize,
    pub boundary: Boundary,
    pub mu: f64,
}

impl ModelParams {
    /// Open chain with `t2 = 1` and `mu = 0`.
    pub fn new(t1: f64, delta: f64, length: usize) -> Self {
        Self {
            t1,
            t2: 1.0,
            delta,
            length,
            boundary: Boundary::Obc,
            mu: 0.0,
        }
    }

    pub fn hermitian(t1: f64, t2: f64, length: usize) -> Self {
        Self {
            t2,
            ..Self::new(t1, 0.0, length)
        }
    }

    pub fn with_t2(mut self, t2: f64) -> Self {
        self.t2 = t2;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_length(mut self, length: usize) -> Self {
        self.length = length;
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    /// B→A intracell hopping `t1 + delta`.
    pub fn t_plus(&self) -> f64 {
        self.t1 + self.delta
    }

    /// A→B intracell hopping `t1 - delta`.
    pub fn t_minus(&self) -> f64 {
        self.t1 - self.delta
    }

    pub fn is_hermitian(&self) -> bool {
        self.delta == 0.0
    }

    /// Number of lattice sites, `2L`.
    pub fn sites(&self) -> usize {
        2 * self.length
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("t1", self.t1),
            ("t2", self.t2),
            ("delta", self.delta),
            ("mu", self.mu),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
        }
        if self.t2 == 0.0 {
            return Err(Error::InvalidParams("t2 must be non-zero".into()));
        }
        if self.length < 2 {
            return Err(Error::InvalidParams(format!(
                "length must be at least 2 unit cells, got {}",
                self.length
            )));
        }
        Ok(())
    }

    fn require_unit_t2(&self) -> Result<()> {
        if (self.t2 - 1.0).abs() > 1e-12 {
            return Err(Error::UnsupportedHopping(self.t2));
        }
        Ok(())
    }

    fn require_regular_coupling(&self) -> Result<()> {
        if self.t_plus() == 0.0 || self.t_minus() == 0.0 {
            return Err(Error::ExceptionalCoupling {
                t_plus: self.t_plus(),
                t_minus: self.t_minus(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamiltonianTag {
    SshObc,
    SshPbc,
    NhsshObc,
    /// Periodic non-reciprocal chain; only used for diagnostics.
    NhsshPbc,
    Bloch,
    Surrogate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    pub entries: DMatrix<Complex64>,
    pub tag: HamiltonianTag,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let h = &self.entries;
        let n = h.nrows();
        (0..n).all(|i| (0..n).all(|j| (h[(i, j)] - h[(j, i)].conj()).norm() <= tol))
    }
}

/// Uniform Brillouin-zone grid `k_j = -pi + 2 pi j / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    pub points: Vec<f64>,
}

impl MomentumGrid {
    pub fn uniform(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidParams(format!(
                "momentum grid needs at least 2 points, got {count}"
            )));
        }
        let dk = 2.0 * PI / count as f64;
        Ok(Self {
            points: (0..count).map(|j| -PI + dk * j as f64).collect(),
        })
    }

    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.points.len() as f64
    }
}

/// Real-space `2L x 2L` Hamiltonian.
///
/// `H[B_i, A_i] = t1 - delta` (hop A→B), `H[A_i, B_i] = t1 + delta` (hop B→A),
/// and `t2` both ways between `B_i` and `A_{i+1}`.
pub fn build_realspace(params: &ModelParams) -> Result<HamiltonianMatrix> {
    params.validate()?;
    let l = params.length;
    let n = 2 * l;
    let mut h = DMatrix::from_element(n, n, ZERO);
    for cell in 0..l {
        let a = 2 * cell;
        let b = a + 1;
        h[(a, b)] = c(params.t_plus());
        h[(b, a)] = c(params.t_minus());
        if cell + 1 < l {
            h[(a + 2, b)] = c(params.t2);
            h[(b, a + 2)] = c(params.t2);
        }
    }
    if params.boundary == Boundary::Pbc {
        h[(0, n - 1)] = c(params.t2);
        h[(n - 1, 0)] = c(params.t2);
    }
    let tag = match (params.is_hermitian(), params.boundary) {
        (true, Boundary::Obc) => HamiltonianTag::SshObc,
        (true, Boundary::Pbc) => HamiltonianTag::SshPbc,
        (false, Boundary::Obc) => HamiltonianTag::NhsshObc,
        (false, Boundary::Pbc) => HamiltonianTag::NhsshPbc,
    };
    Ok(HamiltonianMatrix { entries: h, tag })
}

/// Bloch Hamiltonian `[[0, t+ + t2 e^{-ik}], [t- + t2 e^{ik}, 0]]`, consistent
/// with [`build_realspace`] under periodic boundaries. For `delta = 0` this is
/// the standard SSH block.
pub fn build_bloch(params: &ModelParams, k: f64) -> HamiltonianMatrix {
    let phase = Complex64::from_polar(1.0, k);
    let upper = c(params.t_plus()) + params.t2 * phase.conj();
    let lower = c(params.t_minus()) + params.t2 * phase;
    HamiltonianMatrix {
        entries: DMatrix::from_row_slice(2, 2, &[ZERO, upper, lower, ZERO]),
        tag: HamiltonianTag::Bloch,
    }
}

/// `(-E(k), +E(k))` with `E(k) = sqrt(t1^2 + t2^2 + 2 t1 t2 cos k)`.
pub fn bloch_dispersion(params: &ModelParams, k: f64) -> (f64, f64) {
    let (t1, t2) = (params.t1, params.t2);
    let e = (t1 * t1 + t2 * t2 + 2.0 * t1 * t2 * k.cos()).max(0.0).sqrt();
    (-e, e)
}

/// `kappa = -ln sqrt(t- / t+)`, principal branch.
pub fn momentum_deformation(params: &ModelParams) -> Result<Complex64> {
    params.require_regular_coupling()?;
    let ratio = c(params.t_minus() / params.t_plus());
    Ok(-ratio.sqrt().ln())
}

/// Momentum-deformed Bloch Hamiltonian whose periodic spectrum reproduces the
/// open-chain spectrum (edge zero modes aside). Requires `t2 = 1`.
///
/// `sqrt(t+/t-)` is taken as the reciprocal of the principal `sqrt(t-/t+)`,
/// which keeps the determinant equal to `-(1 + a^2 + 2a cos k)` on both
/// sides of `|delta| = |t1|`.
pub fn build_surrogate(params: &ModelParams, k: f64) -> Result<HamiltonianMatrix> {
    params.require_unit_t2()?;
    params.require_regular_coupling()?;
    let (tp, tm) = (params.t_plus(), params.t_minus());
    let r = c(tm / tp).sqrt();
    let r_inv = r.inv();
    let phase = Complex64::from_polar(1.0, k);
    let upper = c(tm) + r * phase;
    let lower = c(tp) + r_inv * phase.conj();
    Ok(HamiltonianMatrix {
        entries: DMatrix::from_row_slice(2, 2, &[ZERO, upper, lower, ZERO]),
        tag: HamiltonianTag::Surrogate,
    })
}

/// Effective symmetric intracell amplitude `sqrt(t1^2 - delta^2)` (principal).
pub fn effective_hopping(params: &ModelParams) -> Complex64 {
    c(params.t1 * params.t1 - params.delta * params.delta).sqrt()
}

/// `(+E, -E)` with `E = sqrt(1 + t1^2 - delta^2 + 2 sqrt(t1^2 - delta^2) cos k)`.
pub fn surrogate_dispersion(params: &ModelParams, k: f64) -> Result<(Complex64, Complex64)> {
    params.require_unit_t2()?;
    let a = effective_hopping(params);
    let e = surrogate_energy_at(a, c(k.cos()));
    Ok((e, -e))
}

fn surrogate_energy_at(a: Complex64, cos_k: Complex64) -> Complex64 {
    (c(1.0) + a * a + 2.0 * a * cos_k).sqrt()
}

/// Full surrogate spectrum on a momentum grid, `2 * grid.count()` energies.
pub fn surrogate_spectrum(params: &ModelParams, grid: &MomentumGrid) -> Result<Vec<Complex64>> {
    params.require_unit_t2()?;
    let a = effective_hopping(params);
    let mut out = Vec::with_capacity(2 * grid.count());
    for &k in &grid.points {
        let e = surrogate_energy_at(a, c(k.cos()));
        out.push(e);
        out.push(-e);
    }
    Ok(out)
}

/// Bloch spectrum of the Hermitian chain on a momentum grid.
pub fn bloch_spectrum(params: &ModelParams, grid: &MomentumGrid) -> Vec<Complex64> {
    grid.points
        .iter()
        .flat_map(|&k| {
            let (lo, hi) = bloch_dispersion(params, k);
            [c(lo), c(hi)]
        })
        .collect()
}

/// `cos q_j` for the `L` standing-wave momenta of the open chain.
///
/// They are the roots of `a U_L(x) + t2 U_{L-1}(x)` (Chebyshev polynomials of
/// the second kind) with `a = sqrt(t+ t-)`, found as eigenvalues of the
/// comrade matrix of that polynomial. Roots with `|x| > 1` belong to edge
/// modes.
pub fn obc_cos_momenta(params: &ModelParams) -> Result<Vec<Complex64>> {
    params.validate()?;
    params.require_regular_coupling()?;
    let a = effective_hopping(params);
    let l = params.length;
    let mut m = DMatrix::from_element(l, l, ZERO);
    for i in 0..l - 1 {
        m[(i, i + 1)] = c(0.5);
        m[(i + 1, i)] = c(0.5);
    }
    m[(l - 1, l - 1)] = -params.t2 / (2.0 * a);
    eig::eigenvalues(&m)
}

/// Surrogate dispersion evaluated on the open-chain momenta: `2L` energies
/// that coincide with the open-chain spectrum, edge modes included.
pub fn surrogate_spectrum_obc(params: &ModelParams) -> Result<Vec<Complex64>> {
    params.require_unit_t2()?;
    let a = effective_hopping(params);
    let xs = obc_cos_momenta(params)?;
    Ok(xs
        .into_iter()
        .flat_map(|x| {
            let e = surrogate_energy_at(a, x);
            [e, -e]
        })
        .collect())
}

/// Alternating `+1` (A) / `-1` (B) sublattice signs.
pub fn chirality(sites: usize) -> Vec<f64> {
    (0..sites)
        .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v.into_iter().map(|z| z.re).collect()
    }

    #[test]
    fn four_site_chain_spectrum() {
        let h = build_realspace(&ModelParams::new(1.0, 0.0, 2)).unwrap();
        assert_eq!(h.tag, HamiltonianTag::SshObc);
        let ev = sorted_re(eig::eigenvalues(&h.entries).unwrap());
        let s5 = 5f64.sqrt();
        let expect = [-(s5 + 1.0) / 2.0, -(s5 - 1.0) / 2.0, (s5 - 1.0) / 2.0, (s5 + 1.0) / 2.0];
        for (a, b) in ev.iter().zip(expect) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn intracell_entries_follow_hopping_direction() {
        let h = build_realspace(&ModelParams::new(1.0, 0.5, 2)).unwrap();
        // A1 -> B1 hop sits in row B1, column A1.
        assert_eq!(h.entries[(1, 0)], c(0.5));
        assert_eq!(h.entries[(0, 1)], c(1.5));
        assert_eq!(h.entries[(2, 1)], c(1.0));
        assert_eq!(h.entries[(1, 2)], c(1.0));
        assert_eq!(h.entries[(3, 0)], ZERO);
        assert_eq!(h.tag, HamiltonianTag::NhsshObc);
    }

    #[test]
    fn hermitian_limit_is_hermitian() {
        for bc in [Boundary::Obc, Boundary::Pbc] {
            let p = ModelParams::new(0.7, 0.0, 5).with_t2(1.3).with_boundary(bc);
            assert!(build_realspace(&p).unwrap().is_hermitian(0.0));
        }
        assert!(!build_realspace(&ModelParams::new(0.7, 0.2, 5))
            .unwrap()
            .is_hermitian(1e-12));
    }

    #[test]
    fn pbc_matches_bloch_grid() {
        let p = ModelParams::new(0.6, 0.0, 12).with_t2(1.2).with_boundary(Boundary::Pbc);
        let h = build_realspace(&p).unwrap();
        let ev = sorted_re(eig::eigenvalues(&h.entries).unwrap());
        let grid = MomentumGrid::uniform(12).unwrap();
        let bloch = sorted_re(bloch_spectrum(&p, &grid));
        for (a, b) in ev.iter().zip(&bloch) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-10);
        }
    }

    #[test]
    fn bloch_examples() {
        let ev = |t1: f64, k: f64| {
            let h = build_bloch(&ModelParams::new(t1, 0.0, 2), k);
            sorted_re(eig::eigenvalues(&h.entries).unwrap())
        };
        let e = ev(1.0, 0.0);
        assert_abs_diff_eq!(e[0], -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 2.0, epsilon = 1e-12);
        let e = ev(1.0, PI);
        assert_abs_diff_eq!(e[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 0.0, epsilon = 1e-12);
        let e = ev(1.1, PI);
        assert_abs_diff_eq!(e[1], 0.1, epsilon = 1e-12);
    }

    #[test]
    fn dispersion_examples() {
        let p = ModelParams::new(1.0, 0.0, 2);
        assert_abs_diff_eq!(bloch_dispersion(&p, PI / 2.0).1, 2f64.sqrt(), epsilon = 1e-14);
        let flat = ModelParams::new(0.0, 0.0, 2);
        for k in [-3.0, -1.0, 0.0, 2.5] {
            assert_abs_diff_eq!(bloch_dispersion(&flat, k).1, 1.0, epsilon = 1e-14);
        }
        let p = ModelParams::new(1.1, 0.0, 2);
        assert_eq!(bloch_dispersion(&p, 0.0), (-2.1, 2.1));
        for k in [-2.0, 0.3, 1.7] {
            let e = sorted_re(eig::eigenvalues(&build_bloch(&p, k).entries).unwrap());
            assert_abs_diff_eq!(e[1], bloch_dispersion(&p, k).1, epsilon = 1e-12);
        }
    }

    #[test]
    fn deformation_examples() {
        assert_eq!(momentum_deformation(&ModelParams::new(1.0, 0.0, 2)).unwrap(), c(0.0));
        let k = momentum_deformation(&ModelParams::new(1.1, 0.5, 2)).unwrap();
        // -ln sqrt(0.375), evaluated independently
        assert_abs_diff_eq!(k.re, 0.490_414_626_505_863_3, epsilon = 1e-12);
        assert_eq!(k.im, 0.0);
        let k = momentum_deformation(&ModelParams::new(1.0, 1.5, 2)).unwrap();
        assert_abs_diff_eq!(k.im.abs(), PI / 2.0, epsilon = 1e-14);
        assert!(matches!(
            momentum_deformation(&ModelParams::new(1.0, 1.0, 2)),
            Err(Error::ExceptionalCoupling { .. })
        ));
    }

    #[test]
    fn surrogate_examples() {
        let p = ModelParams::new(1.1, 0.0, 2);
        for k in [-2.0, 0.0, 1.0] {
            let e = sorted_re(eig::eigenvalues(&build_surrogate(&p, k).unwrap().entries).unwrap());
            assert_abs_diff_eq!(e[1], bloch_dispersion(&p, k).1, epsilon = 1e-12);
        }
        assert!(matches!(
            build_surrogate(&ModelParams::new(1.1, 1.1, 2), 0.3),
            Err(Error::ExceptionalCoupling { .. })
        ));
        let p = ModelParams::new(1.1, 0.5, 2);
        let e = sorted_re(eig::eigenvalues(&build_surrogate(&p, PI / 2.0).unwrap().entries).unwrap());
        assert_abs_diff_eq!(e[1], 1.4, epsilon = 1e-12);
        assert!(matches!(
            build_surrogate(&ModelParams::new(1.1, 0.5, 2).with_t2(2.0), 0.0),
            Err(Error::UnsupportedHopping(_))
        ));
    }

    #[test]
    fn surrogate_dispersion_examples() {
        for k in [-3.0, 0.0, 0.4, 2.2] {
            let (e, m) = surrogate_dispersion(&ModelParams::new(1.1, 1.1, 2), k).unwrap();
            assert_abs_diff_eq!(e.re, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(m.re, -1.0, epsilon = 1e-14);
        }
        let (e, _) = surrogate_dispersion(&ModelParams::new(1.1, 1.6, 2), PI / 2.0).unwrap();
        assert_abs_diff_eq!(e.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.im.abs(), 0.35f64.sqrt(), epsilon = 1e-12);
        let (e, _) = surrogate_dispersion(&ModelParams::new(1.1, 0.0, 2), 0.0).unwrap();
        assert_abs_diff_eq!(e.re, 2.1, epsilon = 1e-14);
    }

    #[test]
    fn surrogate_dispersion_matches_matrix() {
        for delta in [0.3, 0.8, 1.3, 1.6] {
            let p = ModelParams::new(1.1, delta, 2);
            for k in [-2.5, -0.4, 0.9, 3.0] {
                let (e, _) = surrogate_dispersion(&p, k).unwrap();
                let ev = eig::eigenvalues(&build_surrogate(&p, k).unwrap().entries).unwrap();
                let d = ev.iter().map(|z| (z - e).norm().min((z + e).norm())).fold(0.0, f64::max);
                assert!(d < 1e-10, "delta={delta} k={k} d={d}");
            }
        }
    }

    #[test]
    fn surrogate_is_bloch_with_reversed_momentum() {
        let p = ModelParams::new(0.8, 0.0, 2);
        for k in [-1.0, 0.2, 2.9] {
            let s = build_surrogate(&p, k).unwrap().entries;
            let b = build_bloch(&p, -k).entries;
            assert!((s - b).norm() < 1e-14);
        }
    }

    #[test]
    fn grid_spacing() {
        let g = MomentumGrid::uniform(8).unwrap();
        assert_eq!(g.points[0], -PI);
        assert_abs_diff_eq!(g.points[1] - g.points[0], g.spacing(), epsilon = 1e-15);
        assert!(MomentumGrid::uniform(1).is_err());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(1.0, 0.0, 1).validate().is_err());
        assert!(ModelParams::new(1.0, 0.0, 4).with_t2(0.0).validate().is_err());
        assert!(ModelParams::new(f64::NAN, 0.0, 4).validate().is_err());
    }

    #[test]
    fn open_chain_momenta_reproduce_spectrum() {
        for delta in [0.2, 0.8, 1.3, 1.6] {
            let p = ModelParams::new(1.1, delta, 12);
            let obc = eig::eigenvalues(&build_realspace(&p).unwrap().entries).unwrap();
            let surr = surrogate_spectrum_obc(&p).unwrap();
            assert_eq!(obc.len(), surr.len());
            for z in &obc {
                let d = surr.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
                assert!(d < 1e-8, "delta={delta} E={z} d={d}");
            }
        }
    }
}
