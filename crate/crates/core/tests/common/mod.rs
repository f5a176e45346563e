//! Helpers shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use nhssh::entanglement::{self, Cut};
use nhssh::lattice::{self, ModelParams, MomentumGrid};
use nhssh::{eig, thermo, topology};

/// Half-chain entanglement entropy of the half-filled ground state computed
/// in Fock space: the lowest-`Re E` eigenstate of the many-body Hamiltonian
/// with `sites / 2` particles, its left partner, and the biorthogonal reduced
/// density matrix of the first `sites / 2` modes.
pub fn many_body_half_chain_ee(params: &ModelParams) -> f64 {
    let h = lattice::build_realspace(params).unwrap().entries;
    let sites = h.nrows();
    assert!(sites <= 12, "Fock-space oracle is limited to 12 sites");
    let filling = sites / 2;
    let basis: Vec<u32> = (0u32..1 << sites)
        .filter(|s| s.count_ones() as usize == filling)
        .collect();
    let index = |state: u32| basis.binary_search(&state).unwrap();
    let dim = basis.len();
    let mut hmb = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, &state) in basis.iter().enumerate() {
        for i in 0..sites {
            for j in 0..sites {
                let amp = h[(i, j)];
                if amp == Complex64::new(0.0, 0.0) || state & (1 << j) == 0 {
                    continue;
                }
                if i == j {
                    hmb[(col, col)] += amp;
                    continue;
                }
                let removed = state & !(1 << j);
                if removed & (1 << i) != 0 {
                    continue;
                }
                let sign = |s: u32, k: usize| if (s & ((1 << k) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let target = removed | (1 << i);
                hmb[(index(target), col)] += amp * sign(state, j) * sign(removed, i);
            }
        }
    }
    let sys = eig::eig_general(&hmb).unwrap();
    let ground = (0..dim)
        .min_by(|&a, &b| sys.eigenvalues[a].re.total_cmp(&sys.eigenvalues[b].re))
        .unwrap();
    let right = sys.right.column(ground).into_owned();
    let left = sys.left.column(ground).into_owned();
    let norm = left.dotc(&right);

    let half = sites / 2;
    let block = 1usize << half;
    let mut rho = DMatrix::<Complex64>::zeros(block, block);
    for (n, &s) in basis.iter().enumerate() {
        for (m, &t) in basis.iter().enumerate() {
            if s >> half == t >> half {
                let a = (s & (block as u32 - 1)) as usize;
                let b = (t & (block as u32 - 1)) as usize;
                rho[(a, b)] += right[n] * left[m].conj() / norm;
            }
        }
    }
    let lambda = eig::eigenvalues(&rho).unwrap();
    let ee: Complex64 = lambda
        .iter()
        .filter(|l| l.norm() > 1e-14)
        .map(|&l| -l * l.ln())
        .sum();
    assert!(ee.im.abs() < 1e-8, "many-body entropy has imaginary part {}", ee.im);
    ee.re
}

/// Square complex matrices with entries in the unit box.
pub fn complex_matrix(n: usize) -> impl Strategy<Value = DMatrix<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
        .prop_map(move |v| DMatrix::from_iterator(n, n, v.into_iter().map(|(re, im)| Complex64::new(re, im))))
}

pub fn determinant(m: &DMatrix<Complex64>) -> Complex64 {
    m.clone().lu().determinant()
}

pub type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Residuals, biorthogonality, reconstruction, trace and determinant.
pub fn check_eig_invariants(m: &DMatrix<Complex64>) -> Check {
    let sys = eig::eig_general(m).map_err(|e| e.to_string())?;
    let tol = 1e-10;
    ensure(sys.right_residual(m) < tol, || format!("right residual {:e}", sys.right_residual(m)))?;
    ensure(sys.left_residual(m) < tol, || format!("left residual {:e}", sys.left_residual(m)))?;
    ensure(sys.identity_residual() < 1e-8, || format!("biorthogonality {:e}", sys.identity_residual()))?;
    ensure(sys.reconstruction_residual(m) < 1e-8, || {
        format!("reconstruction {:e}", sys.reconstruction_residual(m))
    })?;
    let scale = m.norm().max(1.0);
    let trace: Complex64 = sys.eigenvalues.iter().sum();
    ensure((trace - m.trace()).norm() < 1e-10 * scale * m.nrows() as f64, || {
        format!("trace {trace} vs {}", m.trace())
    })?;
    let det: Complex64 = sys.eigenvalues.iter().product();
    let expected = determinant(m);
    ensure((det - expected).norm() < 1e-8 * scale.powi(m.nrows() as i32), || {
        format!("determinant {det} vs {expected}")
    })
}

/// `C^2 = C`, `Tr C = N_occ`, `C R_n = R_n` for occupied and `0` for empty
/// modes, and block eigenvalues inside the closed unit interval.
pub fn check_projector_laws(params: &ModelParams) -> Check {
    let h = lattice::build_realspace(params).map_err(|e| e.to_string())?;
    let sys = eig::eig_general(&h.entries).map_err(|e| e.to_string())?;
    let occ = eig::occupied_indices(&sys, params.mu).map_err(|e| e.to_string())?;
    let c = entanglement::correlation_matrix(&sys, &occ).map_err(|e| e.to_string())?;
    let scale = c.norm().max(1.0);
    let idem = (&c * &c - &c).norm() / (scale * scale);
    ensure(idem < 1e-9, || format!("C^2 - C = {idem:e}"))?;
    let trace = c.trace();
    ensure((trace - Complex64::new(occ.len() as f64, 0.0)).norm() < 1e-9, || {
        format!("Tr C = {trace}, occupied {}", occ.len())
    })?;
    for n in 0..sys.dim() {
        let r = sys.right.column(n);
        let target = if occ.contains(&n) { r.into_owned() } else { r.into_owned() * Complex64::new(0.0, 0.0) };
        let err = (&c * r - target).norm() / (scale * r.norm());
        ensure(err < 1e-9, || format!("C R_{n} residual {err:e}"))?;
    }
    if params.is_hermitian() {
        let herm = (&c - c.adjoint()).norm();
        ensure(herm < 1e-10, || format!("Hermitian-limit C not Hermitian: {herm:e}"))?;
    }
    let xi = entanglement::subsystem_spectrum(&c, Cut::Half.sites(params.length)).map_err(|e| e.to_string())?;
    ensure(xi.iter().all(|x| x.re > -1e-8 && x.re < 1.0 + 1e-8 && x.im.abs() < 1e-8), || {
        format!("block spectrum leaves [0, 1]: {xi:?}")
    })
}

/// `S = -dOmega/dT` and `C_V = T dS/dT` by five-point central differences.
pub fn check_thermo_consistency(energies: &[Complex64], t: f64) -> Check {
    let h = 1e-3 * t;
    let diff = |f: &dyn Fn(f64) -> nhssh::Result<f64>| -> std::result::Result<f64, String> {
        let v = |x: f64| f(x).map_err(|e| e.to_string());
        Ok((8.0 * (v(t + h)? - v(t - h)?) - (v(t + 2.0 * h)? - v(t - 2.0 * h)?)) / (12.0 * h))
    };
    let omega = |x: f64| thermo::grand_potential(energies, x, 0.0).map(|p| p.value);
    let s = |x: f64| thermo::entropy(energies, x);
    let scale = energies.len() as f64;
    let ds = -diff(&omega)?;
    let s0 = s(t).map_err(|e| e.to_string())?;
    ensure((ds - s0).abs() < 1e-6 * (scale + s0.abs()), || format!("S = {s0} vs -dOmega/dT = {ds} at T = {t}"))?;
    let dc = t * diff(&s)?;
    let c0 = thermo::heat_capacity(energies, t).map_err(|e| e.to_string())?;
    ensure((dc - c0).abs() < 1e-6 * (scale + c0.abs()), || format!("C_V = {c0} vs T dS/dT = {dc} at T = {t}"))
}

/// At `delta = 0` every pipeline reduces to the Hermitian chain.
pub fn check_hermitian_limit(t1: f64, length: usize) -> Check {
    let p = ModelParams::new(t1, 0.0, length);
    let grid = MomentumGrid::uniform(length).map_err(|e| e.to_string())?;
    let mut surr: Vec<f64> = lattice::surrogate_spectrum(&p, &grid).map_err(|e| e.to_string())?.iter().map(|z| z.re).collect();
    let mut bloch: Vec<f64> = lattice::bloch_spectrum(&p, &grid).iter().map(|z| z.re).collect();
    surr.sort_by(f64::total_cmp);
    bloch.sort_by(f64::total_cmp);
    let gap = surr.iter().zip(&bloch).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(gap < 1e-12, || format!("surrogate and Bloch spectra differ by {gap:e}"))?;

    let wh = topology::winding_hermitian(&p, 256).map_err(|e| e.to_string())?;
    let ws = topology::winding_surrogate(&p, 256).map_err(|e| e.to_string())?;
    ensure(wh.value == ws.value, || format!("winding {} vs surrogate {}", wh.value, ws.value))?;

    let h = lattice::build_realspace(&p).map_err(|e| e.to_string())?.entries;
    let mut general: Vec<f64> = eig::eigenvalues(&h).map_err(|e| e.to_string())?.iter().map(|z| z.re).collect();
    let mut symmetric: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
    general.sort_by(f64::total_cmp);
    symmetric.sort_by(f64::total_cmp);
    let gap = general.iter().zip(&symmetric).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(gap < 1e-10, || format!("general and symmetric eigenvalues differ by {gap:e}"))?;

    if t1.abs() > 1.0 {
        let r = entanglement::ground_state_correlation(&p, Cut::Half).map_err(|e| e.to_string())?;
        let dec = h.symmetric_eigen();
        let mut order: Vec<usize> = (0..dec.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| dec.eigenvalues[a].total_cmp(&dec.eigenvalues[b]));
        let occ = dec.eigenvectors.select_columns(&order[..length]);
        let c = &occ * occ.adjoint();
        let block = c.view((0, 0), (length, length)).into_owned();
        let xi: Vec<Complex64> = block.symmetric_eigenvalues().iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let ee = entanglement::entanglement_entropy(&xi).map_err(|e| e.to_string())?;
        ensure((ee - r.ee).abs() < 1e-9 && r.imag_leakage < 1e-12, || {
            format!("Hermitian EE {ee} vs pipeline {} (leakage {:e})", r.ee, r.imag_leakage)
        })?;
    }
    Ok(())
}

/// Correlation-matrix entropy against the Fock-space oracle.
pub fn check_many_body_oracle(params: &ModelParams) -> Check {
    let free = entanglement::ground_state_correlation(params, Cut::Half).map_err(|e| e.to_string())?;
    let exact = many_body_half_chain_ee(params);
    ensure((free.ee - exact).abs() < 1e-8, || {
        format!("t1 = {} delta = {}: correlation EE {} vs many-body {exact}", params.t1, params.delta, free.ee)
    })
}
