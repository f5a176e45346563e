//! Diagonal similarity scaling `B = D^-1 A D`.
//!
//! Chains with direction-dependent hoppings have eigenvectors that grow
//! exponentially along the chain. A spanning-tree scaling that equalizes
//! `|b_ij|` and `|b_ji|` along the strongest couplings removes that growth
//! exactly on tree-like sparsity patterns (open chains); radix-2 Osborne
//! sweeps then handle whatever remains.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub(crate) struct Balanced {
    pub matrix: DMatrix<Complex64>,
    /// Diagonal of `D`.
    pub scale: Vec<f64>,
}

pub(crate) fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub(crate) fn balance(a: &DMatrix<Complex64>) -> Balanced {
    let n = a.nrows();
    let mut out = Balanced {
        matrix: a.clone(),
        scale: vec![1.0; n],
    };
    if n < 2 {
        return out;
    }
    if let Some(log_d) = tree_scaling(a) {
        let d: Vec<f64> = log_d.iter().map(|x| x.exp()).collect();
        if d.iter().all(|x| x.is_finite() && *x > 0.0) {
            let b = scaled(a, &d);
            if b.iter().all(|z| z.re.is_finite() && z.im.is_finite())
                && one_norm(&b) <= one_norm(a)
            {
                out = Balanced { matrix: b, scale: d };
            }
        }
    }
    osborne(&mut out);
    out
}

fn scaled(a: &DMatrix<Complex64>, d: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * (d[j] / d[i]))
}

/// Log-scales from a maximum spanning tree over the weights `|a_ij| |a_ji|`.
/// Returns `None` when no pair of mutual couplings exists.
fn tree_scaling(a: &DMatrix<Complex64>) -> Option<Vec<f64>> {
    let n = a.nrows();
    let weight = |i: usize, j: usize| a[(i, j)].norm() * a[(j, i)].norm();
    let mut in_tree = vec![false; n];
    let mut best = vec![0.0f64; n];
    let mut parent = vec![usize::MAX; n];
    let mut log_d = vec![0.0f64; n];
    let mut any_edge = false;

    for root in 0..n {
        if in_tree[root] {
            continue;
        }
        in_tree[root] = true;
        for j in 0..n {
            if !in_tree[j] {
                let w = weight(root, j);
                if w > best[j] {
                    best[j] = w;
                    parent[j] = root;
                }
            }
        }
        loop {
            let mut next = None;
            let mut wmax = 0.0;
            for j in 0..n {
                if !in_tree[j] && best[j] > wmax {
                    wmax = best[j];
                    next = Some(j);
                }
            }
            let Some(q) = next else { break };
            let p = parent[q];
            in_tree[q] = true;
            any_edge = true;
            log_d[q] = log_d[p] + 0.5 * (a[(q, p)].norm().ln() - a[(p, q)].norm().ln());
            for j in 0..n {
                if !in_tree[j] {
                    let w = weight(q, j);
                    if w > best[j] {
                        best[j] = w;
                        parent[j] = q;
                    }
                }
            }
        }
    }
    if !any_edge {
        return None;
    }
    let mean = log_d.iter().sum::<f64>() / n as f64;
    log_d.iter_mut().for_each(|x| *x -= mean);
    Some(log_d)
}

/// Radix-2 Osborne iteration on off-diagonal row and column 1-norms.
fn osborne(b: &mut Balanced) {
    let n = b.matrix.nrows();
    const RADIX: f64 = 2.0;
    for _ in 0..100 {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += b.matrix[(j, i)].norm();
                    r += b.matrix[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut cc, mut rr) = (c, r);
            while cc < rr / RADIX {
                f *= RADIX;
                cc *= RADIX;
                rr /= RADIX;
            }
            while cc >= rr * RADIX {
                f /= RADIX;
                cc /= RADIX;
                rr *= RADIX;
            }
            if (cc + rr) < 0.95 * s {
                converged = false;
                b.scale[i] *= f;
                for j in 0..n {
                    b.matrix[(i, j)] /= f;
                    b.matrix[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}
