//! Complex Schur decomposition: Householder reduction to Hessenberg form
//! followed by implicitly shifted single-shift QR sweeps.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const EPS: f64 = f64::EPSILON;

pub(crate) struct Schur {
    /// Upper triangular factor.
    pub t: DMatrix<Complex64>,
    /// Unitary factor with `A = Z T Z^H`; only present when requested.
    pub z: Option<DMatrix<Complex64>>,
}

pub(crate) fn schur(mut a: DMatrix<Complex64>, want_vectors: bool) -> Result<Schur> {
    let n = a.nrows();
    let mut z = want_vectors.then(|| DMatrix::identity(n, n));
    hessenberg(&mut a, z.as_mut());
    hessenberg_qr(&mut a, z.as_mut(), want_vectors)?;
    Ok(Schur { t: a, z })
}

fn hessenberg(a: &mut DMatrix<Complex64>, mut q: Option<&mut DMatrix<Complex64>>) {
    let n = a.nrows();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];
    for k in 0..n - 2 {
        let m = n - k - 1;
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let xnorm = (tail + x0.norm_sqr()).sqrt();
        let alpha = if x0.norm() == 0.0 {
            Complex64::new(-xnorm, 0.0)
        } else {
            -x0 / x0.norm() * xnorm
        };
        for i in 0..m {
            v[i] = a[(k + 1 + i, k)];
        }
        v[0] -= alpha;
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;

        // A <- P A on rows k+1.., P = I - tau v v^H
        for j in k..n {
            let mut s = ZERO;
            for i in 0..m {
                s += v[i].conj() * a[(k + 1 + i, j)];
            }
            let s = s * tau;
            for i in 0..m {
                a[(k + 1 + i, j)] -= v[i] * s;
            }
        }
        // A <- A P on columns k+1..
        apply_right(a, &v[..m], tau, k + 1, &mut w);
        if let Some(q) = q.as_deref_mut() {
            apply_right(q, &v[..m], tau, k + 1, &mut w);
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

fn apply_right(a: &mut DMatrix<Complex64>, v: &[Complex64], tau: f64, col0: usize, w: &mut [Complex64]) {
    let n = a.nrows();
    w[..n].iter_mut().for_each(|x| *x = ZERO);
    for (j, vj) in v.iter().enumerate() {
        let col = a.column(col0 + j);
        for i in 0..n {
            w[i] += col[i] * vj;
        }
    }
    for (j, vj) in v.iter().enumerate() {
        let f = vj.conj() * tau;
        let mut col = a.column_mut(col0 + j);
        for i in 0..n {
            col[i] -= w[i] * f;
        }
    }
}

/// Unitary rotation `G = [[c, s], [-conj(s), c]]` with `G [x; y] = [r; 0]`.
#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    fn new(x: Complex64, y: Complex64) -> (Self, Complex64) {
        let ax = x.norm();
        let ay = y.norm();
        if ay == 0.0 {
            return (Givens { c: 1.0, s: ZERO }, x);
        }
        if ax == 0.0 {
            return (
                Givens {
                    c: 0.0,
                    s: y.conj() / ay,
                },
                Complex64::new(ay, 0.0),
            );
        }
        let rho = ax.hypot(ay);
        let phase = x / ax;
        let g = Givens {
            c: ax / rho,
            s: phase * y.conj() / rho,
        };
        (g, phase * rho)
    }

    fn rotate_rows(&self, a: &mut DMatrix<Complex64>, p: usize, q: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let u = a[(p, j)];
            let v = a[(q, j)];
            a[(p, j)] = u * self.c + self.s * v;
            a[(q, j)] = -self.s.conj() * u + v * self.c;
        }
    }

    /// `A <- A G^H` on columns `p, q`.
    fn rotate_cols(&self, a: &mut DMatrix<Complex64>, p: usize, q: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let u = a[(i, p)];
            let v = a[(i, q)];
            a[(i, p)] = u * self.c + v * self.s.conj();
            a[(i, q)] = -u * self.s + v * self.c;
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let den = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

fn hessenberg_qr(
    h: &mut DMatrix<Complex64>,
    mut z: Option<&mut DMatrix<Complex64>>,
    full: bool,
) -> Result<()> {
    let n = h.nrows();
    if n < 2 {
        return Ok(());
    }
    let hnorm = h.iter().map(|x| x.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let max_sweeps = 60 * n.max(10);
    let mut sweeps = 0usize;
    let mut iter = 0usize;
    let mut hi = n - 1;
    while hi > 0 {
        let mut lo = 0;
        for k in (1..=hi).rev() {
            let mut s = h[(k - 1, k - 1)].norm() + h[(k, k)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(k, k - 1)].norm() <= EPS * s {
                h[(k, k - 1)] = ZERO;
                lo = k;
                break;
            }
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(Error::NoConvergence(sweeps));
        }
        let shift = if iter % 10 == 0 {
            h[(hi, hi)] + h[(hi, hi - 1)].norm() * 0.75
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let (col_end, row_start) = if full { (n, 0) } else { (hi + 1, lo) };
        for k in lo..hi {
            let (x, y) = if k == lo {
                (h[(lo, lo)] - shift, h[(lo + 1, lo)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (g, r) = Givens::new(x, y);
            let jstart = if k == lo {
                lo
            } else {
                h[(k, k - 1)] = r;
                h[(k + 1, k - 1)] = ZERO;
                k
            };
            g.rotate_rows(h, k, k + 1, jstart..col_end);
            let iend = (k + 2).min(hi);
            g.rotate_cols(h, k, k + 1, row_start..iend + 1);
            if let Some(z) = z.as_deref_mut() {
                g.rotate_cols(z, k, k + 1, 0..n);
            }
        }
    }
    Ok(())
}

/// Columns of the returned upper-triangular `X` satisfy `T x_k = T_kk x_k`.
///
/// Pairs of diagonal entries closer than `smin` are treated as one
/// semisimple eigenvalue when their coupling is at rounding level; a
/// genuine coupling is kept and later shows up as an ill-conditioned
/// eigenvector matrix.
pub(crate) fn triangular_eigenvectors(t: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = t.nrows();
    let tnorm = t.iter().map(|x| x.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let smin = (8.0 * EPS * tnorm).max(f64::MIN_POSITIVE * 1e6);
    let coupling_floor = 1e3 * EPS * tnorm;
    let mut x = DMatrix::from_element(n, n, ZERO);
    let mut col = vec![ZERO; n];
    for k in 0..n {
        let lambda = t[(k, k)];
        col[..=k].iter_mut().for_each(|v| *v = ZERO);
        col[k] = Complex64::new(1.0, 0.0);
        let mut xmax = 1.0f64;
        for i in (0..k).rev() {
            let mut num = ZERO;
            for j in i + 1..=k {
                num += t[(i, j)] * col[j];
            }
            let mut d = t[(i, i)] - lambda;
            if d.norm() < smin {
                if num.norm() <= coupling_floor * xmax {
                    col[i] = ZERO;
                    continue;
                }
                d = Complex64::new(smin, 0.0);
            }
            col[i] = -num / d;
            let m = col[i].norm();
            if m > 1e150 {
                let s = 1.0 / m;
                col[i..=k].iter_mut().for_each(|v| *v *= s);
                xmax *= s;
            }
            xmax = xmax.max(col[i].norm());
        }
        for i in 0..=k {
            x[(i, k)] = col[i];
        }
    }
    x
}
