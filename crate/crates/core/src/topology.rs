//! Winding numbers, critical couplings and the four-phase classification
//! of the non-reciprocal chain.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ModelParams;

/// Distance from a critical line below which classification is refused.
pub const CRITICAL_TOL: f64 = 1e-6;
const GAP_TOL: f64 = 1e-8;

/// Rounded winding number together with the unrounded quadrature value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Winding {
    pub value: u32,
    /// Signed value before rounding.
    pub raw: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhSymmetry {
    Protected,
    Broken,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseLabel {
    TrivialProtected,
    TopoProtected,
    TopoBroken,
    TrivialBroken,
}

impl PhaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseLabel::TrivialProtected => "trivial-protected",
            PhaseLabel::TopoProtected => "topo-protected",
            PhaseLabel::TopoBroken => "topo-broken",
            PhaseLabel::TrivialBroken => "trivial-broken",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub t1_over_t2: f64,
    pub delta_over_t2: f64,
    pub winding: Winding,
    pub ph_symmetry: PhSymmetry,
    pub label: PhaseLabel,
}

/// Critical non-reciprocities at fixed `t1` (with `t2 = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalDeltas {
    /// `sqrt(t1^2 - 1)`, absent for `|t1| < 1`.
    pub protected: Option<f64>,
    /// `|t1|`, the non-Bloch band collapse line.
    pub nbbc: f64,
    /// `sqrt(t1^2 + 1)`.
    pub broken: f64,
}

impl CriticalDeltas {
    pub fn all(&self) -> Vec<f64> {
        self.protected
            .into_iter()
            .chain([self.nbbc, self.broken])
            .collect()
    }
}

pub fn critical_deltas(t1: f64) -> CriticalDeltas {
    let t = t1.abs();
    CriticalDeltas {
        protected: (t >= 1.0).then(|| (t * t - 1.0).sqrt()),
        nbbc: t,
        broken: (t * t + 1.0).sqrt(),
    }
}

/// Berry phase of the lower Bloch band over `pi`, from a discrete Wilson loop.
pub fn winding_hermitian(params: &ModelParams, n_k: usize) -> Result<Winding> {
    if !params.is_hermitian() {
        return Err(Error::InvalidParams(format!(
            "Hermitian winding needs delta = 0, got {}",
            params.delta
        )));
    }
    if n_k < 64 {
        return Err(Error::InvalidParams(format!("n_k must be at least 64, got {n_k}")));
    }
    let gap = (params.t1.abs() - params.t2.abs()).abs();
    if gap < GAP_TOL {
        return Err(Error::GapClosed(gap));
    }
    let dk = 2.0 * PI / n_k as f64;
    // Lower band: (1, -q/|q|)/sqrt(2) with q = t1 + t2 e^{ik}.
    let phase = |k: f64| {
        let q = params.t1 + params.t2 * Complex64::from_polar(1.0, k);
        q / q.norm()
    };
    let mut product = Complex64::new(1.0, 0.0);
    let first = phase(-PI);
    let mut prev = first;
    for j in 1..=n_k {
        let next = if j == n_k { first } else { phase(-PI + dk * j as f64) };
        let link = (1.0 + prev.conj() * next) * 0.5;
        product *= link / link.norm();
        prev = next;
    }
    let raw = -product.arg() / PI;
    Ok(Winding {
        value: raw.abs().round() as u32,
        raw,
    })
}

/// Winding number of the surrogate Bloch Hamiltonian,
/// `(1 / 4 pi i) * integral Tr[sigma_z h^-1 dh/dk] dk`, by trapezoid rule.
///
/// With off-diagonal entries `u(k)` (upper) and `v(k)` (lower) the integrand
/// reduces to `v'/v - u'/u`, so the result is half the difference of their
/// windings about the origin. The grid is refined beyond `n_k` when the
/// parameters approach a critical line, where the integrand sharpens.
pub fn winding_surrogate(params: &ModelParams, n_k: usize) -> Result<Winding> {
    if (params.t2 - 1.0).abs() > 1e-12 {
        return Err(Error::UnsupportedHopping(params.t2));
    }
    let (tp, tm) = (params.t_plus(), params.t_minus());
    if tp == 0.0 || tm == 0.0 {
        return Err(Error::ExceptionalCoupling {
            t_plus: tp,
            t_minus: tm,
        });
    }
    if n_k < 256 {
        return Err(Error::InvalidParams(format!("n_k must be at least 256, got {n_k}")));
    }
    let r = Complex64::new(tm / tp, 0.0).sqrt();
    let r_inv = r.inv();
    // Closest approach of u = t- + r e^{ik} and v = t+ + e^{-ik}/r to zero.
    let gap = (tm.abs() - r.norm()).abs().min((tp.abs() - r_inv.norm()).abs());
    if gap < GAP_TOL {
        return Err(Error::GapClosed(gap));
    }
    let rho = (r.norm() / tm.abs())
        .ln()
        .abs()
        .min((r_inv.norm() / tp.abs()).ln().abs());
    let needed = (40.0 / rho).ceil().min((1u64 << 22) as f64) as usize;
    let n = n_k.max(needed);

    let dk = 2.0 * PI / n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let e = Complex64::from_polar(1.0, -PI + dk * j as f64);
        let u = tm + r * e;
        let du = Complex64::i() * r * e;
        let v = tp + r_inv * e.conj();
        let dv = -Complex64::i() * r_inv * e.conj();
        sum += dv / v - du / u;
    }
    let raw = (sum * dk / (4.0 * PI * Complex64::i())).re;
    Ok(Winding {
        value: raw.abs().round() as u32,
        raw,
    })
}

/// Phase of a parameter point with `t2 = 1`.
pub fn classify_phase(params: &ModelParams) -> Result<PhasePoint> {
    let delta = params.delta.abs();
    let crit = critical_deltas(params.t1);
    for (name, value) in [
        ("sqrt(t1^2 - 1)", crit.protected),
        ("|t1|", Some(crit.nbbc)),
        ("sqrt(t1^2 + 1)", Some(crit.broken)),
    ] {
        if let Some(v) = value {
            if (delta - v).abs() < CRITICAL_TOL {
                return Err(Error::OnCriticalLine(format!(
                    "|delta| = {delta} is within {CRITICAL_TOL:e} of {name} = {v}"
                )));
            }
        }
    }
    if (params.t1.abs() - 1.0).abs() < CRITICAL_TOL && delta < CRITICAL_TOL {
        return Err(Error::OnCriticalLine("|t1| = t2 at delta = 0".into()));
    }
    let winding = winding_surrogate(params, 1024)?;
    let ph_symmetry = if delta < params.t1.abs() {
        PhSymmetry::Protected
    } else {
        PhSymmetry::Broken
    };
    let label = match (winding.value, ph_symmetry) {
        (0, PhSymmetry::Protected) => PhaseLabel::TrivialProtected,
        (_, PhSymmetry::Protected) => PhaseLabel::TopoProtected,
        (0, PhSymmetry::Broken) => PhaseLabel::TrivialBroken,
        (_, PhSymmetry::Broken) => PhaseLabel::TopoBroken,
    };
    Ok(PhasePoint {
        t1_over_t2: params.t1 / params.t2,
        delta_over_t2: params.delta / params.t2,
        winding,
        ph_symmetry,
        label,
    })
}

/// One cell of a phase diagram; `phase` is an error on critical lines.
#[derive(Debug, Clone)]
pub struct PhaseCell {
    pub t1: f64,
    pub delta: f64,
    pub phase: Result<PhasePoint>,
}

/// Classifies every `(t1, delta)` pair, row-major in `t1`.
pub fn phase_diagram(t1_grid: &[f64], delta_grid: &[f64]) -> Vec<PhaseCell> {
    let points: Vec<(f64, f64)> = t1_grid
        .iter()
        .flat_map(|&t1| delta_grid.iter().map(move |&d| (t1, d)))
        .collect();
    points
        .par_iter()
        .map(|&(t1, delta)| PhaseCell {
            t1,
            delta,
            phase: classify_phase(&ModelParams::new(t1, delta, 2)),
        })
        .collect()
}
