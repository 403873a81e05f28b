//! One-sided (Hestenes) Jacobi SVD.

use nalgebra::DMatrix;

const MAX_SWEEPS: usize = 100;

/// Orthogonalizes the columns of a tall matrix `a` (rows ≥ cols) by plane
/// rotations. Returns `(w, v)` with `a·v = w`, `v` orthogonal and the columns
/// of `w` mutually orthogonal; their norms are the singular values.
pub(crate) fn orthogonalize_columns(a: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let (rows, cols) = a.shape();
    debug_assert!(rows >= cols);
    let mut w = a.clone();
    let mut v = DMatrix::<f64>::identity(cols, cols);
    if cols < 2 {
        return (w, v);
    }

    let tol = f64::EPSILON * rows.max(1) as f64;
    // Columns below this norm are numerically zero and stay out of rotations.
    let floor = {
        let f = f64::EPSILON * a.norm();
        f * f
    };

    let mut norms: Vec<f64> = (0..cols).map(|j| w.column(j).norm_squared()).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols - 1 {
            for q in (p + 1)..cols {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let gamma = w.column(p).dot(&w.column(q));
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
                norms[p] = w.column(p).norm_squared();
                norms[q] = w.column(q).norm_squared();
            }
        }
        if !rotated {
            break;
        }
    }
    (w, v)
}

fn rotate(m: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..m.nrows() {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = c * mp - s * mq;
        m[(k, q)] = s * mp + c * mq;
    }
}

/// Full thin SVD `a = u·diag(sigma)·vᵀ` with singular values sorted descending.
/// Zero singular values are included; their `u` columns are zero.
pub(crate) fn thin_svd(a: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>, DMatrix<f64>) {
    let (rows, cols) = a.shape();
    let transposed = rows < cols;
    let tall = if transposed { a.transpose() } else { a.clone() };
    let (w, v) = orthogonalize_columns(&tall);
    let p = tall.ncols();

    let mut order: Vec<usize> = (0..p).collect();
    let sig: Vec<f64> = (0..p).map(|j| w.column(j).norm()).collect();
    order.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]).then(i.cmp(&j)));

    let mut left = DMatrix::zeros(tall.nrows(), p);
    let mut right = DMatrix::zeros(p, p);
    let mut sigma = Vec::with_capacity(p);
    for (k, &j) in order.iter().enumerate() {
        let s = sig[j];
        sigma.push(s);
        if s > 0.0 {
            left.set_column(k, &(w.column(j) / s));
        }
        right.set_column(k, &v.column(j));
    }

    if transposed {
        // aᵀ = left·Σ·rightᵀ  ⇒  a = right·Σ·leftᵀ
        (right, sigma, left)
    } else {
        (left, sigma, right)
    }
}
