use crate::error::{Error, Result};
use crate::linalg::invert;
use crate::matrix::Mat;
use crate::scalar::Field;

/// An invertible matrix `S` together with its exact inverse.
///
/// [`Conjugator::apply`] maps `X` to `S^{-1} X S`. Every witness in this crate
/// uses that one convention: conjugating the input by the witness's
/// conjugator yields the canonical target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugator {
    g: Mat,
    g_inv: Mat,
}

impl Conjugator {
    pub fn new(g: Mat) -> Result<Conjugator> {
        let g_inv = invert(&g)?;
        Ok(Conjugator { g, g_inv })
    }

    pub fn identity(field: Field, n: usize) -> Conjugator {
        Conjugator { g: Mat::identity(field, n), g_inv: Mat::identity(field, n) }
    }

    /// Accept a precomputed inverse after checking `g * g_inv = I`.
    pub fn from_pair(g: Mat, g_inv: Mat) -> Result<Conjugator> {
        if !g.try_mul(&g_inv)?.is_identity() {
            return Err(Error::CertificationFailed("g * g_inv != I".into()));
        }
        Ok(Conjugator { g, g_inv })
    }

    pub fn g(&self) -> &Mat {
        &self.g
    }

    pub fn g_inv(&self) -> &Mat {
        &self.g_inv
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.g.is_identity()
    }

    /// `S^{-1} X S`.
    pub fn apply(&self, x: &Mat) -> Mat {
        &(&self.g_inv * x) * &self.g
    }

    pub fn inverse(&self) -> Conjugator {
        Conjugator { g: self.g_inv.clone(), g_inv: self.g.clone() }
    }

    /// Conjugate by `self`, then by `then`: the combined matrix is `S T`.
    pub fn then(&self, then: &Conjugator) -> Conjugator {
        Conjugator { g: &self.g * &then.g, g_inv: &then.g_inv * &self.g_inv }
    }

    /// If `S^{-1} X^T S = Y` for all `X` then `(S^{-T})^{-1} X S^{-T} = Y^T`.
    pub fn transpose_dual(&self) -> Conjugator {
        Conjugator { g: self.g_inv.transpose(), g_inv: self.g.transpose() }
    }

    /// `diag(S, 1)`.
    pub fn extend_by_one(&self) -> Conjugator {
        Conjugator { g: self.g.extend_by_one(), g_inv: self.g_inv.extend_by_one() }
    }
}
