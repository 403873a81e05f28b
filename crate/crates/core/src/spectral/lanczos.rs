//! Golub–Kahan–Lanczos bidiagonalization with full reorthogonalization, used
//! for top-k singular triplets of large sparse incidence matrices.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::jacobi::thin_svd;
use crate::incidence::IncidenceMatrix;

const START_SEED: u64 = 0x5eed_1a2c;

pub(crate) struct LanczosTriplets {
    pub u: DMatrix<f64>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<f64>,
}

/// Top `k` singular triplets of `b`. The Krylov dimension doubles until every
/// requested Ritz pair has residual `≤ tol·σ₁` or the subspace is exhausted.
pub(crate) fn top_singular_triplets(b: &IncidenceMatrix, k: usize, tol: f64) -> LanczosTriplets {
    let max_steps = b.rows().min(b.cols());
    let mut steps = (2 * k + 20).min(max_steps);
    loop {
        let (triplets, residuals) = run(b, k, steps);
        let scale = triplets.sigma.first().copied().unwrap_or(0.0);
        let converged = residuals.iter().all(|&r| r <= tol * scale);
        if converged || steps == max_steps {
            if !converged {
                log::warn!("lanczos: residuals above tolerance at full Krylov dimension");
            }
            return triplets;
        }
        steps = (steps * 2).min(max_steps);
        log::debug!("lanczos: growing Krylov dimension to {steps}");
    }
}

fn reorthogonalize(x: &mut DVector<f64>, basis: &[DVector<f64>]) {
    // Two passes of classical Gram–Schmidt.
    for _ in 0..2 {
        for q in basis {
            let c = q.dot(x);
            x.axpy(-c, q, 1.0);
        }
    }
}

fn random_unit(len: usize, rng: &mut ChaCha8Rng, against: &[DVector<f64>]) -> Option<DVector<f64>> {
    for _ in 0..8 {
        let mut x = DVector::from_fn(len, |_, _| rng.random::<f64>() - 0.5);
        reorthogonalize(&mut x, against);
        let norm = x.norm();
        if norm > 1e-8 {
            return Some(x / norm);
        }
    }
    None
}

fn run(b: &IncidenceMatrix, k: usize, steps: usize) -> (LanczosTriplets, Vec<f64>) {
    let (n, m) = (b.rows(), b.cols());
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let breakdown = 1e-12 * b.frobenius_norm().max(1.0);

    let mut us: Vec<DVector<f64>> = Vec::with_capacity(steps);
    let mut vs: Vec<DVector<f64>> = Vec::with_capacity(steps + 1);
    let mut alphas = Vec::with_capacity(steps);
    let mut betas = Vec::with_capacity(steps);

    vs.push(random_unit(m, &mut rng, &[]).expect("non-empty column space"));
    let mut beta_prev = 0.0;
    for j in 0..steps {
        let mut u = b.mul_vec(&vs[j]);
        if j > 0 {
            u.axpy(-beta_prev, &us[j - 1], 1.0);
        }
        reorthogonalize(&mut u, &us);
        let mut alpha = u.norm();
        if alpha <= breakdown {
            // B·v lies in span(us): restart the left recurrence.
            alpha = 0.0;
            u = match random_unit(n, &mut rng, &us) {
                Some(x) => x,
                None => break,
            };
        } else {
            u /= alpha;
        }
        alphas.push(alpha);
        us.push(u);

        let mut v = b.tr_mul_vec(&us[j]);
        v.axpy(-alpha, &vs[j], 1.0);
        reorthogonalize(&mut v, &vs);
        let mut beta = v.norm();
        if beta <= breakdown {
            beta = 0.0;
            v = match random_unit(m, &mut rng, &vs) {
                Some(x) => x,
                None => {
                    betas.push(0.0);
                    break;
                }
            };
        } else {
            v /= beta;
        }
        betas.push(beta);
        vs.push(v);
        beta_prev = beta;
    }

    let s = alphas.len();
    let mut bidiag = DMatrix::zeros(s, s);
    for i in 0..s {
        bidiag[(i, i)] = alphas[i];
        if i + 1 < s {
            bidiag[(i, i + 1)] = betas[i];
        }
    }
    let (p, theta, q) = thin_svd(&bidiag);
    let keep = k.min(s);
    let last_beta = betas.get(s - 1).copied().unwrap_or(0.0);

    let mut u_out = DMatrix::zeros(n, keep);
    let mut v_out = DMatrix::zeros(m, keep);
    let mut residuals = Vec::with_capacity(keep);
    for c in 0..keep {
        let mut uc = DVector::zeros(n);
        let mut vc = DVector::zeros(m);
        for i in 0..s {
            uc.axpy(p[(i, c)], &us[i], 1.0);
            vc.axpy(q[(i, c)], &vs[i], 1.0);
        }
        u_out.set_column(c, &uc);
        v_out.set_column(c, &vc);
        residuals.push(last_beta * p[(s - 1, c)].abs());
    }
    (
        LanczosTriplets {
            u: u_out,
            sigma: theta[..keep].to_vec(),
            v: v_out,
        },
        residuals,
    )
}
