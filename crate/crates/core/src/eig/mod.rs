//! Dense complex eigendecomposition with biorthonormal left and right
//! eigenvectors.
//!
//! Hermitian input goes to a symmetric solver. Everything else is balanced
//! by a diagonal similarity first; if the balanced matrix turns out to be
//! Hermitian (open non-reciprocal chains with real spectra) the symmetric
//! solver is used on it, otherwise a complex Schur decomposition with
//! triangular back-substitution. Left eigenvectors are the rows of the
//! inverse right-eigenvector matrix.

mod balance;
mod schur;

use std::cmp::Ordering;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) use balance::one_norm;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigenvectors whose matrix is conditioned worse than this are rejected.
pub const MAX_CONDITION: f64 = 1e10;
/// Smallest accepted normalized overlap `|<L_n|R_n>| / (|L_n| |R_n|)`.
pub const MIN_OVERLAP: f64 = 1e-12;
/// Zero-mode threshold relative to the 1-norm of the matrix.
pub const ZERO_MODE_TOL: f64 = 1e-8;
/// Distance of `Re(E)` from the chemical potential treated as a tie.
pub const TIE_TOL: f64 = 1e-10;

/// Eigenvalues with right and left eigenvectors in columns, normalized so
/// that `left^H right = 1`.
///
/// For non-Hermitian input the decomposition is computed on `D^-1 H D` with
/// a positive diagonal `D` (stored in `scale`), and `right = D U`,
/// `left = D^-1 W` with unit columns of `U`. On open non-reciprocal chains
/// `D` spans many orders of magnitude, so residuals are measured in that
/// balanced gauge; without scaling (`scale` all ones) they coincide with the
/// plain definitions.
#[derive(Debug, Clone)]
pub struct EigSystem {
    pub eigenvalues: Vec<Complex64>,
    pub right: DMatrix<Complex64>,
    pub left: DMatrix<Complex64>,
    /// `max |<L_n|R_m> - delta_nm|`.
    pub biorth_residual: f64,
    /// 1-norm of the decomposed matrix.
    pub norm: f64,
    /// 1-norm condition number of the eigenvector matrix in the balanced
    /// gauge.
    pub condition: f64,
    /// Diagonal of the balancing similarity `D`.
    pub scale: Vec<f64>,
}

impl EigSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    fn gauge(&self, h: &DMatrix<Complex64>) -> (DMatrix<Complex64>, DMatrix<Complex64>, DMatrix<Complex64>) {
        let n = self.dim();
        let d = &self.scale;
        let hb = DMatrix::from_fn(n, n, |i, j| h[(i, j)] * (d[j] / d[i]));
        let r = DMatrix::from_fn(n, n, |i, j| self.right[(i, j)] / d[i]);
        let l = DMatrix::from_fn(n, n, |i, j| self.left[(i, j)] * d[i]);
        (hb, r, l)
    }

    /// `max_n |H R_n - E_n R_n| / (|H| |R_n|)`.
    pub fn right_residual(&self, h: &DMatrix<Complex64>) -> f64 {
        let (hb, r, _) = self.gauge(h);
        let hn = one_norm(&hb).max(f64::MIN_POSITIVE);
        (0..self.dim())
            .map(|n| {
                let r = r.column(n);
                (&hb * r - r * self.eigenvalues[n]).norm() / (hn * r.norm())
            })
            .fold(0.0, f64::max)
    }

    /// `max_n |H^H L_n - conj(E_n) L_n| / (|H| |L_n|)`.
    pub fn left_residual(&self, h: &DMatrix<Complex64>) -> f64 {
        let (hb, _, l) = self.gauge(h);
        let hn = one_norm(&hb).max(f64::MIN_POSITIVE);
        let ha = hb.adjoint();
        (0..self.dim())
            .map(|n| {
                let l = l.column(n);
                (&ha * l - l * self.eigenvalues[n].conj()).norm() / (hn * l.norm())
            })
            .fold(0.0, f64::max)
    }

    /// `|sum_n R_n L_n^H - 1|` (Frobenius).
    pub fn identity_residual(&self) -> f64 {
        let n = self.dim();
        let (_, r, l) = self.gauge(&DMatrix::zeros(n, n));
        (r * l.adjoint() - DMatrix::<Complex64>::identity(n, n)).norm()
    }

    /// `|sum_n E_n R_n L_n^H - H| / |H|` (Frobenius).
    pub fn reconstruction_residual(&self, h: &DMatrix<Complex64>) -> f64 {
        let (hb, mut r, l) = self.gauge(h);
        for (n, mut col) in r.column_iter_mut().enumerate() {
            col *= self.eigenvalues[n];
        }
        (r * l.adjoint() - &hb).norm() / hb.norm().max(f64::MIN_POSITIVE)
    }

    /// Fraction of `|R_n|^2` carried by even (sublattice A) sites.
    pub fn a_weight(&self, n: usize) -> f64 {
        let col = self.right.column(n);
        let total: f64 = col.iter().map(|z| z.norm_sqr()).sum();
        let a: f64 = col.iter().step_by(2).map(|z| z.norm_sqr()).sum();
        a / total
    }
}

fn check_input(h: &DMatrix<Complex64>) -> Result<()> {
    if h.nrows() != h.ncols() {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, expected square",
            h.nrows(),
            h.ncols()
        )));
    }
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidParams("matrix has non-finite entries".into()));
    }
    Ok(())
}

fn hermitian_defect(h: &DMatrix<Complex64>) -> f64 {
    let n = h.nrows();
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst / scale
}

fn hermitian_part(h: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (h + h.adjoint()) * Complex64::new(0.5, 0.0)
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

const HERMITIAN_TOL: f64 = 1e-13;

/// Eigenvalues only, sorted by real then imaginary part.
pub fn eigenvalues(h: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    check_input(h)?;
    let mut ev: Vec<Complex64> = if hermitian_defect(h) <= HERMITIAN_TOL {
        SymmetricEigen::new(hermitian_part(h))
            .eigenvalues
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect()
    } else {
        let b = balance::balance(h);
        if hermitian_defect(&b.matrix) <= HERMITIAN_TOL {
            SymmetricEigen::new(hermitian_part(&b.matrix))
                .eigenvalues
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect()
        } else {
            let s = schur::schur(b.matrix, false)?;
            s.t.diagonal().iter().copied().collect()
        }
    };
    ev.sort_by(cmp_complex);
    Ok(ev)
}

/// Full biorthogonal eigendecomposition.
pub fn eig_general(h: &DMatrix<Complex64>) -> Result<EigSystem> {
    check_input(h)?;
    let n = h.nrows();
    let norm = one_norm(h);
    let (values, right_b, left_b, scale, condition) = if hermitian_defect(h) <= HERMITIAN_TOL {
        let (v, u) = symmetric(h);
        (v, u.clone(), u, vec![1.0; n], 1.0)
    } else {
        let b = balance::balance(h);
        if hermitian_defect(&b.matrix) <= HERMITIAN_TOL {
            let (v, u) = symmetric(&b.matrix);
            (v, u.clone(), u, b.scale, 1.0)
        } else {
            let (v, r, l, cond) = nonsymmetric(b.matrix)?;
            (v, r, l, b.scale, cond)
        }
    };

    let mut right = right_b;
    let mut left = left_b;
    for i in 0..n {
        let d = scale[i];
        for k in 0..n {
            right[(i, k)] *= d;
            left[(i, k)] /= d;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cmp_complex(&values[a], &values[b]));
    let eigenvalues: Vec<Complex64> = order.iter().map(|&k| values[k]).collect();
    let right = DMatrix::from_fn(n, n, |i, j| right[(i, order[j])]);
    let left = DMatrix::from_fn(n, n, |i, j| left[(i, order[j])]);

    let mut sys = EigSystem {
        eigenvalues,
        right,
        left,
        biorth_residual: 0.0,
        norm,
        condition,
        scale,
    };
    sys.biorth_residual = sys.balanced_biorth_residual();
    Ok(sys)
}

impl EigSystem {
    fn balanced_biorth_residual(&self) -> f64 {
        let n = self.dim();
        let (_, r, l) = self.gauge(&DMatrix::zeros(n, n));
        biorth_residual(&l, &r)
    }
}

fn biorth_residual(left: &DMatrix<Complex64>, right: &DMatrix<Complex64>) -> f64 {
    let g = left.adjoint() * right;
    let n = g.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

fn symmetric(h: &DMatrix<Complex64>) -> (Vec<Complex64>, DMatrix<Complex64>) {
    let se = SymmetricEigen::new(hermitian_part(h));
    let v = se.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    (v, se.eigenvectors)
}

type Nonsymmetric = (Vec<Complex64>, DMatrix<Complex64>, DMatrix<Complex64>, f64);

fn nonsymmetric(a: DMatrix<Complex64>) -> Result<Nonsymmetric> {
    let n = a.nrows();
    let s = schur::schur(a, true)?;
    let z = s.z.expect("Schur vectors requested");
    let x = schur::triangular_eigenvectors(&s.t);
    let mut v = z * x;
    for k in 0..n {
        let s = v.column(k).norm();
        v.column_mut(k).unscale_mut(s);
    }
    let inv = v
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::DefectiveMatrix("eigenvector matrix is singular".into()))?;
    let condition = one_norm(&v) * one_norm(&inv);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::DefectiveMatrix(format!(
            "eigenvector condition number {condition:.3e} exceeds {MAX_CONDITION:e}"
        )));
    }
    let w = inv.adjoint();
    for k in 0..n {
        let overlap = 1.0 / w.column(k).norm();
        if overlap < MIN_OVERLAP {
            return Err(Error::DefectiveMatrix(format!(
                "left/right overlap {overlap:.3e} of mode {k} below {MIN_OVERLAP:e}"
            )));
        }
    }
    let values = s.t.diagonal().iter().copied().collect();
    Ok((values, v, w, condition))
}

/// Hausdorff distance between two finite point sets in the complex plane.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let directed = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Indices of the many-body ground state at chemical potential `mu`.
///
/// Modes with `Re(E) < mu` are filled. Zero modes (`|E|` below
/// [`ZERO_MODE_TOL`] times the norm) are half filled, preferring the modes
/// whose right eigenvector carries the most weight on sublattice A; equal
/// weights go to the lower index. Any other mode on the line `Re(E) = mu`,
/// including a purely imaginary conjugate pair, makes the filling ambiguous.
pub fn occupied_indices(sys: &EigSystem, mu: f64) -> Result<Vec<usize>> {
    let zero_tol = ZERO_MODE_TOL * sys.norm.max(f64::MIN_POSITIVE);
    let mut occupied = Vec::new();
    let mut zero = Vec::new();
    for (n, e) in sys.eigenvalues.iter().enumerate() {
        if e.norm() < zero_tol {
            zero.push(n);
        } else if (e.re - mu).abs() < TIE_TOL {
            return Err(Error::AmbiguousFilling(e.re));
        } else if e.re < mu {
            occupied.push(n);
        }
    }
    let weights: Vec<f64> = zero.iter().map(|&n| sys.a_weight(n)).collect();
    let mut ranked: Vec<usize> = (0..zero.len()).collect();
    ranked.sort_by(|&a, &b| {
        let d = weights[b] - weights[a];
        if d.abs() <= 1e-8 {
            zero[a].cmp(&zero[b])
        } else if d > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    });
    occupied.extend(ranked.iter().take(zero.len() / 2).map(|&i| zero[i]));
    occupied.sort_unstable();
    Ok(occupied)
}

/// Indices of a degenerate pair of zero modes, if there is exactly one.
pub fn zero_pair(sys: &EigSystem) -> Option<(usize, usize)> {
    let zero_tol = ZERO_MODE_TOL * sys.norm.max(f64::MIN_POSITIVE);
    let zero: Vec<usize> = (0..sys.dim())
        .filter(|&n| sys.eigenvalues[n].norm() < zero_tol)
        .collect();
    (zero.len() == 2).then(|| (zero[0], zero[1]))
}

/// Replaces a degenerate zero pair by its bonding (lower index) and
/// antibonding (higher index) combinations of sublattice-polarized modes.
///
/// Inside the pair the chirality operator is diagonalized, giving one mode
/// per sublattice; each is normalized in the balanced gauge and phase-fixed
/// so its largest component is real and positive. Biorthogonality is
/// preserved, and both combinations carry the same sublattice-A weight.
pub fn resolve_zero_pair(sys: &mut EigSystem, pair: (usize, usize), chirality: &[f64]) -> Result<()> {
    let (a, b) = pair;
    let n = sys.dim();
    if chirality.len() != n {
        return Err(Error::Dimension(format!(
            "chirality has {} entries for a {n}-dimensional system",
            chirality.len()
        )));
    }
    let r = DMatrix::from_fn(n, 2, |i, j| sys.right[(i, if j == 0 { a } else { b })]);
    let l = DMatrix::from_fn(n, 2, |i, j| sys.left[(i, if j == 0 { a } else { b })]);
    let mut gr = r.clone();
    for i in 0..n {
        for j in 0..2 {
            gr[(i, j)] *= chirality[i];
        }
    }
    let m = l.adjoint() * gr;

    // Eigenvectors of the 2x2 restriction of the chirality operator.
    let tr = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det).sqrt();
    let mut s = DMatrix::from_element(2, 2, ZERO);
    for (col, lam) in [tr + disc, tr - disc].into_iter().enumerate() {
        // Null vector of M - lam from its better-conditioned row.
        let row0 = (m[(0, 0)] - lam, m[(0, 1)]);
        let row1 = (m[(1, 0)], m[(1, 1)] - lam);
        let n0 = row0.0.norm_sqr() + row0.1.norm_sqr();
        let n1 = row1.0.norm_sqr() + row1.1.norm_sqr();
        let (x, y) = if n0.max(n1) == 0.0 {
            if col == 0 {
                (ONE, ZERO)
            } else {
                (ZERO, ONE)
            }
        } else if n0 >= n1 {
            (row0.1, -row0.0)
        } else {
            (row1.1, -row1.0)
        };
        s[(0, col)] = x;
        s[(1, col)] = y;
    }
    let s_inv = s
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::DefectiveMatrix("zero-mode pair is not chirally resolvable".into()))?;
    let mut rp = &r * &s;
    let mut lp = &l * s_inv.adjoint();
    for j in 0..2 {
        let col = rp.column(j);
        let imax = col.icamax();
        let norm = col
            .iter()
            .zip(&sys.scale)
            .map(|(z, d)| (z / d).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let scale = col[imax] / col[imax].norm() * norm;
        for i in 0..n {
            rp[(i, j)] /= scale;
            lp[(i, j)] *= scale.conj();
        }
    }
    for i in 0..n {
        let (ra, rb) = (rp[(i, 0)], rp[(i, 1)]);
        let (la, lb) = (lp[(i, 0)], lp[(i, 1)]);
        sys.right[(i, a)] = ra + rb;
        sys.right[(i, b)] = ra - rb;
        sys.left[(i, a)] = (la + lb) * 0.5;
        sys.left[(i, b)] = (la - lb) * 0.5;
    }
    sys.biorth_residual = sys.balanced_biorth_residual();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn real(rows: usize, data: &[f64]) -> DMatrix<Complex64> {
        let v: Vec<Complex64> = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        DMatrix::from_row_slice(rows, rows, &v)
    }

    fn check_invariants(h: &DMatrix<Complex64>, sys: &EigSystem) {
        assert!(sys.right_residual(h) <= 1e-9, "right {}", sys.right_residual(h));
        assert!(sys.left_residual(h) <= 1e-9, "left {}", sys.left_residual(h));
        assert!(sys.biorth_residual <= 1e-8, "biorth {}", sys.biorth_residual);
        assert!(sys.identity_residual() <= 1e-7);
        assert!(sys.reconstruction_residual(h) <= 1e-7);
    }

    #[test]
    fn pauli_x() {
        let h = real(2, &[0.0, 1.0, 1.0, 0.0]);
        let sys = eig_general(&h).unwrap();
        assert_abs_diff_eq!(sys.eigenvalues[0].re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sys.eigenvalues[1].re, 1.0, epsilon = 1e-14);
        assert!((&sys.left - &sys.right).norm() < 1e-14);
        check_invariants(&h, &sys);
    }

    #[test]
    fn non_reciprocal_dimer() {
        let h = real(2, &[0.0, 2.0, 0.5, 0.0]);
        let sys = eig_general(&h).unwrap();
        assert_abs_diff_eq!(sys.eigenvalues[0].re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sys.eigenvalues[1].re, 1.0, epsilon = 1e-14);
        check_invariants(&h, &sys);
    }

    #[test]
    fn jordan_block_is_defective() {
        let h = real(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(eig_general(&h), Err(Error::DefectiveMatrix(_))));
    }

    #[test]
    fn complex_spectrum() {
        let h = real(3, &[1.0, 2.0, 0.0, -2.0, 1.0, 0.5, 0.0, 0.3, -1.0]);
        let sys = eig_general(&h).unwrap();
        check_invariants(&h, &sys);
        let tr: Complex64 = sys.eigenvalues.iter().sum();
        assert!((tr - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(sys.eigenvalues.windows(2).all(|w| cmp_complex(&w[0], &w[1]) != Ordering::Greater));
    }

    #[test]
    fn filling_examples() {
        let diag = |v: &[f64]| {
            let n = v.len();
            let h = DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(v[i], 0.0) } else { ZERO });
            eig_general(&h).unwrap()
        };
        assert_eq!(occupied_indices(&diag(&[2.0, -1.0, 1.0, -2.0]), 0.0).unwrap(), vec![0, 1]);
        assert_eq!(occupied_indices(&diag(&[-1.0, 0.0, 0.0, 1.0]), 0.0).unwrap().len(), 2);
        assert_eq!(occupied_indices(&diag(&[-2.0, -1.0, 0.0, 0.0, 1.0, 2.0]), 0.0).unwrap().len(), 3);
        let h = DMatrix::from_fn(4, 4, |i, j| {
            if i != j {
                ZERO
            } else {
                [Complex64::new(-1.0, 0.5), Complex64::new(-1.0, -0.5), Complex64::new(1.0, 0.5), Complex64::new(1.0, -0.5)][i]
            }
        });
        let sys = eig_general(&h).unwrap();
        let occ = occupied_indices(&sys, 0.0).unwrap();
        assert_eq!(occ.len(), 2);
        assert!(occ.iter().all(|&n| sys.eigenvalues[n].re < 0.0));
    }

    #[test]
    fn hausdorff_examples() {
        let a = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.5), Complex64::new(0.0, 2.0)];
        assert_abs_diff_eq!(hausdorff_distance(&a, &a), 0.0);
        assert_abs_diff_eq!(hausdorff_distance(&a, &b), 2.0);
        assert_abs_diff_eq!(hausdorff_distance(&a[..1], &b[..2]), 0.5f64.hypot(1.0));
    }

    #[test]
    fn imaginary_pair_is_ambiguous() {
        let e = [Complex64::new(0.0, 0.3), Complex64::new(0.0, -0.3), Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
        let h = DMatrix::from_fn(4, 4, |i, j| if i == j { e[i] } else { ZERO });
        let sys = eig_general(&h).unwrap();
        assert!(matches!(occupied_indices(&sys, 0.0), Err(Error::AmbiguousFilling(_))));
    }

    #[test]
    fn zero_mode_prefers_sublattice_a() {
        // Zero modes on site 1 (B) and site 2 (A); the A one is filled.
        let h = real(4, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let sys = eig_general(&h).unwrap();
        let occ = occupied_indices(&sys, 0.0).unwrap();
        assert_eq!(occ.len(), 2);
        let zero = occ.iter().find(|&&n| sys.eigenvalues[n].norm() < 1e-12).unwrap();
        assert_abs_diff_eq!(sys.a_weight(*zero), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn tie_is_ambiguous() {
        let h = real(2, &[0.5 + 1e-11, 1.0, 0.0, -1.0]);
        let sys = eig_general(&h).unwrap();
        assert!(matches!(occupied_indices(&sys, 0.5), Err(Error::AmbiguousFilling(_))));
        assert_eq!(occupied_indices(&sys, 0.6).unwrap().len(), 2);
    }

    #[test]
    fn zero_pair_becomes_bonding_and_antibonding() {
        let h = real(4, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let mut sys = eig_general(&h).unwrap();
        let pair = zero_pair(&sys).unwrap();
        resolve_zero_pair(&mut sys, pair, &[1.0, -1.0, 1.0, -1.0]).unwrap();
        assert!(sys.biorth_residual < 1e-12);
        assert_abs_diff_eq!(sys.a_weight(pair.0), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(sys.a_weight(pair.1), 0.5, epsilon = 1e-12);
        check_invariants(&h, &sys);
    }

    #[test]
    fn balanced_open_chain_is_accurate() {
        let n = 160;
        let mut h = DMatrix::from_element(n, n, ZERO);
        for i in 0..n - 1 {
            let (up, down) = if i % 2 == 0 { (1.9, 0.3) } else { (1.0, 1.0) };
            h[(i, i + 1)] = Complex64::new(up, 0.0);
            h[(i + 1, i)] = Complex64::new(down, 0.0);
        }
        let sys = eig_general(&h).unwrap();
        assert!(sys.eigenvalues.iter().all(|e| e.im.abs() < 1e-12));
        assert!(sys.biorth_residual < 1e-8);
        assert!(sys.right_residual(&h) < 1e-9);
    }

    #[test]
    fn broken_symmetry_chain() {
        let n = 80;
        let mut h = DMatrix::from_element(n, n, ZERO);
        for i in 0..n - 1 {
            let (up, down) = if i % 2 == 0 { (2.7, -0.5) } else { (1.0, 1.0) };
            h[(i, i + 1)] = Complex64::new(up, 0.0);
            h[(i + 1, i)] = Complex64::new(down, 0.0);
        }
        let sys = eig_general(&h).unwrap();
        assert!(sys.eigenvalues.iter().any(|e| e.im.abs() > 0.1));
        assert!(sys.biorth_residual < 1e-8);
        let tr: Complex64 = sys.eigenvalues.iter().sum();
        assert!(tr.norm() < 1e-10);
    }
}
