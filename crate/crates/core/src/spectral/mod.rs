//! Compact, truncated and regularized singular value decompositions of
//! incidence matrices, and the pseudoinverse-Laplacian diagonals built on them.
//!
//! For `B = U Σ Vᵀ`, `L0 = BBᵀ = U Σ² Uᵀ` and `L1 = BᵀB = V Σ² Vᵀ`, so
//! `[L0⁺]ᵢᵢ = Σₖ u²ₖᵢ / σ²ₖ` and `[L1⁺]ₑₑ = Σₖ v²ₖₑ / σ²ₖ` over the retained
//! (positive) singular values.

mod jacobi;
mod lanczos;
mod regularize;

use nalgebra::{DMatrix, DVector};

pub use regularize::{
    identity_like, regularize_dense, regularize_incidence, IdentityLike, RegularizationConfig,
    RegularizationMode,
};

use crate::error::SpectralError;
use crate::incidence::{IncidenceKind, IncidenceMatrix};

/// Matrices with more entries than this take the Lanczos path in
/// [`truncated_svd`] instead of a dense decomposition.
pub const DENSE_SVD_LIMIT: usize = 1_000_000;

/// Residual target for Lanczos Ritz pairs, relative to σ₁.
const LANCZOS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TruncationStrategy {
    /// Dense below [`DENSE_SVD_LIMIT`] entries, Lanczos above.
    #[default]
    Auto,
    Dense,
    Lanczos,
}

/// Compact SVD `U Σ Vᵀ` keeping only singular values above the rank cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    u: DMatrix<f64>,
    sigma: Vec<f64>,
    v: DMatrix<f64>,
    numerical_rank: usize,
    truncated_to: Option<usize>,
    frobenius_tail: f64,
}

impl SpectralDecomposition {
    fn empty(rows: usize, cols: usize) -> Self {
        Self {
            u: DMatrix::zeros(rows, 0),
            sigma: Vec::new(),
            v: DMatrix::zeros(cols, 0),
            numerical_rank: 0,
            truncated_to: None,
            frobenius_tail: 0.0,
        }
    }

    /// Left singular vectors, one per column (`n × r`).
    pub fn u(&self) -> &DMatrix<f64> {
        &self.u
    }

    /// Right singular vectors, one per column (`m × r`).
    pub fn v(&self) -> &DMatrix<f64> {
        &self.v
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn rows(&self) -> usize {
        self.u.nrows()
    }

    pub fn cols(&self) -> usize {
        self.v.nrows()
    }

    /// Number of retained singular values before any truncation.
    pub fn numerical_rank(&self) -> usize {
        self.numerical_rank
    }

    /// Number of singular triplets actually stored.
    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn truncated_to(&self) -> Option<usize> {
        self.truncated_to
    }

    /// `√(Σ_{i>k} σᵢ²)` for a truncated decomposition, 0 otherwise. NaN when
    /// the discarded spectrum is unknown (Lanczos path with spectrally aligned
    /// regularization).
    pub fn frobenius_tail(&self) -> f64 {
        self.frobenius_tail
    }

    /// `U Σ Vᵀ` over the stored triplets.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut scaled = self.u.clone();
        for (k, &s) in self.sigma.iter().enumerate() {
            scaled.column_mut(k).scale_mut(s);
        }
        scaled * self.v.transpose()
    }

    /// `Σₖ 1/wₖ`, the trace of the (regularized) Laplacian pseudoinverse.
    pub fn pseudoinverse_trace(&self, cfg: &RegularizationConfig) -> f64 {
        self.sigma.iter().map(|&s| 1.0 / cfg.weight(s)).sum()
    }

    /// Keeps the leading `k` triplets (`k` clamped to the stored count).
    pub fn truncate(&self, k: usize) -> Result<Self, SpectralError> {
        if k == 0 {
            return Err(SpectralError::ZeroTruncation);
        }
        let keep = k.min(self.sigma.len());
        let discarded: f64 = self.sigma[keep..].iter().map(|s| s * s).sum();
        let prior = self.frobenius_tail;
        Ok(Self {
            u: self.u.columns(0, keep).into_owned(),
            sigma: self.sigma[..keep].to_vec(),
            v: self.v.columns(0, keep).into_owned(),
            numerical_rank: self.numerical_rank,
            truncated_to: Some(keep),
            frobenius_tail: (discarded + prior * prior).sqrt(),
        })
    }

    /// Decomposition of `√λ·B + √(1−λ)·U Vᵀ`: same singular vectors, singular
    /// values `√λ·σ + √(1−λ)`.
    pub(crate) fn aligned_shift(&self, lambda: f64) -> Self {
        let (a, c) = (lambda.sqrt(), (1.0 - lambda).sqrt());
        let frobenius_tail = if self.truncated_to.is_some() && self.frobenius_tail != 0.0 {
            f64::NAN
        } else {
            self.frobenius_tail
        };
        Self {
            sigma: self.sigma.iter().map(|&s| a * s + c).collect(),
            frobenius_tail,
            ..self.clone()
        }
    }
}

fn check_finite(a: &DMatrix<f64>) -> Result<(), SpectralError> {
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            if !a[(i, j)].is_finite() {
                return Err(SpectralError::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Flips `(u_k, v_k)` pairs so the largest-magnitude entry of each `u_k` is
/// positive; near-ties (within 1e-12 relative) go to the lowest index.
fn fix_signs(u: &mut DMatrix<f64>, v: &mut DMatrix<f64>) {
    for k in 0..u.ncols() {
        let col = u.column(k);
        let max = col.amax();
        if max == 0.0 {
            continue;
        }
        let pivot = col
            .iter()
            .position(|x| x.abs() >= max * (1.0 - 1e-12))
            .unwrap_or(0);
        if col[pivot] < 0.0 {
            u.column_mut(k).neg_mut();
            v.column_mut(k).neg_mut();
        }
    }
}

/// Singular values are kept iff `σ > tol · σ₁ · max(n, m)`; `tol` defaults to
/// machine epsilon.
pub fn rank_cutoff(sigma_max: f64, rows: usize, cols: usize, rank_tol: Option<f64>) -> f64 {
    rank_tol.unwrap_or(f64::EPSILON) * sigma_max * rows.max(cols) as f64
}

/// Compact SVD of an arbitrary dense matrix.
pub fn compact_svd_dense(
    a: &DMatrix<f64>,
    rank_tol: Option<f64>,
) -> Result<SpectralDecomposition, SpectralError> {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return Ok(SpectralDecomposition::empty(rows, cols));
    }
    check_finite(a)?;
    let (u, sigma, v) = jacobi::thin_svd(a);
    let cutoff = rank_cutoff(sigma[0], rows, cols, rank_tol);
    let r = sigma.iter().take_while(|&&s| s > cutoff).count();
    let mut u = u.columns(0, r).into_owned();
    let mut v = v.columns(0, r).into_owned();
    fix_signs(&mut u, &mut v);
    Ok(SpectralDecomposition {
        u,
        sigma: sigma[..r].to_vec(),
        v,
        numerical_rank: r,
        truncated_to: None,
        frobenius_tail: 0.0,
    })
}

/// Compact SVD of an incidence matrix.
pub fn compact_svd(
    b: &IncidenceMatrix,
    rank_tol: Option<f64>,
) -> Result<SpectralDecomposition, SpectralError> {
    compact_svd_dense(&b.to_dense(), rank_tol)
}

/// Leading `min(k, r)` singular triplets of `b`.
pub fn truncated_svd(b: &IncidenceMatrix, k: usize) -> Result<SpectralDecomposition, SpectralError> {
    truncated_svd_with(b, k, None, TruncationStrategy::Auto)
}

pub fn truncated_svd_with(
    b: &IncidenceMatrix,
    k: usize,
    rank_tol: Option<f64>,
    strategy: TruncationStrategy,
) -> Result<SpectralDecomposition, SpectralError> {
    if k == 0 {
        return Err(SpectralError::ZeroTruncation);
    }
    let lanczos = match strategy {
        TruncationStrategy::Auto => b.rows() * b.cols() > DENSE_SVD_LIMIT,
        TruncationStrategy::Dense => false,
        TruncationStrategy::Lanczos => true,
    };
    if !lanczos || b.rows() == 0 || b.cols() == 0 {
        return compact_svd(b, rank_tol)?.truncate(k);
    }

    // Rank of an oriented incidence matrix is n − c; for binary matrices the
    // Lanczos path can only bound it by what it finds.
    let rank_bound = match b.kind() {
        IncidenceKind::Oriented => b.rows() - column_components(b),
        IncidenceKind::Binary => b.rows().min(b.cols()),
    };
    let want = k.min(rank_bound);
    if want == 0 {
        let mut d = SpectralDecomposition::empty(b.rows(), b.cols());
        d.truncated_to = Some(0);
        d.frobenius_tail = b.frobenius_norm();
        return Ok(d);
    }
    let trip = lanczos::top_singular_triplets(b, want, LANCZOS_TOL);
    let sigma_max = trip.sigma.first().copied().unwrap_or(0.0);
    let cutoff = rank_cutoff(sigma_max, b.rows(), b.cols(), rank_tol);
    let keep = trip.sigma.iter().take_while(|&&s| s > cutoff).count();
    let mut u = trip.u.columns(0, keep).into_owned();
    let mut v = trip.v.columns(0, keep).into_owned();
    fix_signs(&mut u, &mut v);
    let sigma = trip.sigma[..keep].to_vec();
    let kept_energy: f64 = sigma.iter().map(|s| s * s).sum();
    let total = b.frobenius_norm().powi(2);
    let numerical_rank = match b.kind() {
        IncidenceKind::Oriented => rank_bound,
        IncidenceKind::Binary => keep,
    };
    Ok(SpectralDecomposition {
        u,
        sigma,
        v,
        numerical_rank,
        truncated_to: Some(keep),
        frobenius_tail: (total - kept_energy).max(0.0).sqrt(),
    })
}

/// Weak components counted from the column supports of `b`.
fn column_components(b: &IncidenceMatrix) -> usize {
    let n = b.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for j in 0..b.cols() {
        let entries = b.column_entries(j);
        for w in entries.windows(2) {
            let (a, c) = (find(&mut parent, w[0].0), find(&mut parent, w[1].0));
            if a != c {
                parent[a.max(c)] = a.min(c);
            }
        }
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Decomposition used by the centrality pipeline for a given configuration.
///
/// * `None`/`Tikhonov`: decomposition of `B` itself (Tikhonov shifts the
///   weights later, in [`pseudoinverse_diagonal`]).
/// * `MatrixLevel` + `Aligned`: decomposition of `√λ·B + √(1−λ)·U Vᵀ`.
/// * `MatrixLevel` + `Diagonal`: dense decomposition of `√λ·B + √(1−λ)·Ĩ`.
pub fn decompose(
    b: &IncidenceMatrix,
    cfg: &RegularizationConfig,
    truncation: Option<usize>,
    rank_tol: Option<f64>,
) -> Result<SpectralDecomposition, SpectralError> {
    cfg.validate()?;
    match (cfg.mode, cfg.identity_like) {
        (RegularizationMode::MatrixLevel, IdentityLike::Diagonal) => {
            let m = regularize_dense(&b.to_dense(), cfg.lambda, IdentityLike::Diagonal, rank_tol)?;
            let d = compact_svd_dense(&m, rank_tol)?;
            match truncation {
                Some(k) => d.truncate(k),
                None => Ok(d),
            }
        }
        (RegularizationMode::MatrixLevel, IdentityLike::Aligned) => {
            let full_fits = b.rows() * b.cols() <= DENSE_SVD_LIMIT;
            match truncation {
                Some(k) if !full_fits => Ok(truncated_svd(b, k)?.aligned_shift(cfg.lambda)),
                Some(k) => compact_svd(b, rank_tol)?.aligned_shift(cfg.lambda).truncate(k),
                None => Ok(compact_svd(b, rank_tol)?.aligned_shift(cfg.lambda)),
            }
        }
        _ => match truncation {
            Some(k) => truncated_svd_with(b, k, rank_tol, TruncationStrategy::Auto),
            None => compact_svd(b, rank_tol),
        },
    }
}

/// Diagonal of the (regularized) Laplacian pseudoinverse on one side:
/// `Σₖ u²ₖᵢ / wₖ` (vertex) or `Σₖ v²ₖₑ / wₖ` (edge), with `wₖ = σₖ²`, or
/// `σₖ² + τ` under Tikhonov mode.
pub fn pseudoinverse_diagonal(
    d: &SpectralDecomposition,
    side: Side,
    cfg: &RegularizationConfig,
) -> Vec<f64> {
    let basis = match side {
        Side::Vertex => &d.u,
        Side::Edge => &d.v,
    };
    let inv_w: Vec<f64> = d.sigma.iter().map(|&s| 1.0 / cfg.weight(s)).collect();
    (0..basis.nrows())
        .map(|i| {
            basis
                .row(i)
                .iter()
                .zip(&inv_w)
                .map(|(x, w)| x * x * w)
                .sum()
        })
        .collect()
}

/// `max_k max(‖B v_k − σ_k u_k‖, ‖Bᵀ u_k − σ_k v_k‖)`.
pub fn singular_pair_residual(b: &IncidenceMatrix, d: &SpectralDecomposition) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, &s) in d.sigma.iter().enumerate() {
        let u: DVector<f64> = d.u.column(k).into_owned();
        let v: DVector<f64> = d.v.column(k).into_owned();
        worst = worst.max((b.mul_vec(&v) - &u * s).norm());
        worst = worst.max((b.tr_mul_vec(&u) - &v * s).norm());
    }
    worst
}
