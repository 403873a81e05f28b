use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::compact_svd_dense;
use crate::error::SpectralError;
use crate::incidence::IncidenceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularizationMode {
    /// Decompose `M = √λ·B + √(1−λ)·Ĩ` instead of `B`.
    MatrixLevel,
    /// Decompose `B`, weight modes by `1/(σ² + τ)`.
    Tikhonov,
    None,
}

/// Shape of the identity-like matrix `Ĩ` in matrix-level regularization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum IdentityLike {
    /// `Ĩ = U_r V_rᵀ`, the partial isometry sharing `B`'s singular bases.
    /// Keeps `U`, `V` and orientation invariance; maps `σ ↦ √λ·σ + √(1−λ)`.
    #[default]
    Aligned,
    /// Ones at `(i, i)` for `i < min(n, m)`.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularizationConfig {
    pub mode: RegularizationMode,
    pub lambda: f64,
    pub tau: f64,
    #[serde(default)]
    pub identity_like: IdentityLike,
}

impl Default for RegularizationConfig {
    fn default() -> Self {
        Self {
            mode: RegularizationMode::MatrixLevel,
            lambda: 0.99,
            tau: 1e-8,
            identity_like: IdentityLike::Aligned,
        }
    }
}

impl RegularizationConfig {
    pub fn unregularized() -> Self {
        Self {
            mode: RegularizationMode::None,
            ..Self::default()
        }
    }

    pub fn matrix_level(lambda: f64) -> Result<Self, SpectralError> {
        let cfg = Self {
            lambda,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn tikhonov(tau: f64) -> Result<Self, SpectralError> {
        let cfg = Self {
            mode: RegularizationMode::Tikhonov,
            tau,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_identity_like(mut self, shape: IdentityLike) -> Self {
        self.identity_like = shape;
        self
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(SpectralError::InvalidLambda(self.lambda));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(SpectralError::InvalidTau(self.tau));
        }
        Ok(())
    }

    /// Pseudoinverse weight `w` for a retained singular value.
    pub fn weight(&self, sigma: f64) -> f64 {
        match self.mode {
            RegularizationMode::Tikhonov => sigma * sigma + self.tau,
            RegularizationMode::MatrixLevel | RegularizationMode::None => sigma * sigma,
        }
    }
}

/// The `rows × cols` identity-like matrix for `a`.
pub fn identity_like(
    a: &DMatrix<f64>,
    shape: IdentityLike,
    rank_tol: Option<f64>,
) -> Result<DMatrix<f64>, SpectralError> {
    let (rows, cols) = a.shape();
    Ok(match shape {
        IdentityLike::Diagonal => DMatrix::identity(rows, cols),
        IdentityLike::Aligned => {
            let d = compact_svd_dense(a, rank_tol)?;
            d.u() * d.v().transpose()
        }
    })
}

/// `√λ·a + √(1−λ)·Ĩ`.
pub fn regularize_dense(
    a: &DMatrix<f64>,
    lambda: f64,
    shape: IdentityLike,
    rank_tol: Option<f64>,
) -> Result<DMatrix<f64>, SpectralError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(SpectralError::InvalidLambda(lambda));
    }
    let eye = identity_like(a, shape, rank_tol)?;
    Ok(a * lambda.sqrt() + eye * (1.0 - lambda).sqrt())
}

/// Explicit regularized matrix `M` for matrix-level mode.
pub fn regularize_incidence(
    b: &IncidenceMatrix,
    cfg: &RegularizationConfig,
) -> Result<DMatrix<f64>, SpectralError> {
    if cfg.mode != RegularizationMode::MatrixLevel {
        return Err(SpectralError::WrongMode(cfg.mode));
    }
    cfg.validate()?;
    regularize_dense(&b.to_dense(), cfg.lambda, cfg.identity_like, None)
}
