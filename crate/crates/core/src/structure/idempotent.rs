use crate::conjugator::Conjugator;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rref};
use crate::matrix::Mat;

/// Normal form of an idempotent: `S^{-1} e S = D_r` with `r = rank(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentForm {
    pub conj: Conjugator,
    pub rank: usize,
}

/// The columns of `S` are a basis of `image(e)` (the pivot columns of `e`)
/// followed by the standard kernel basis of `e`. Since `K^n = image(e) ⊕ ker(e)`
/// for an idempotent, `S` is invertible and `e` acts as `D_r` in this basis.
pub fn idempotent_normal_form(e: &Mat) -> Result<IdempotentForm> {
    if !e.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", e.rows(), e.cols())));
    }
    if &(e * e) != e {
        return Err(Error::NotIdempotent);
    }
    let n = e.rows();
    let field = e.field();
    let r = rref(e);
    let rank = r.rank();
    let d = Mat::diag_idempotent(field, n, rank);
    if *e == d {
        return Ok(IdempotentForm { conj: Conjugator::identity(field, n), rank });
    }
    let mut columns: Vec<_> = r.pivots.iter().map(|&j| e.column(j)).collect();
    columns.extend(kernel_basis(e));
    let conj = Conjugator::new(Mat::from_columns(field, n, &columns))
        .map_err(|_| Error::CertificationFailed("image and kernel do not span".into()))?;
    if conj.apply(e) != d {
        return Err(Error::CertificationFailed("S^{-1} e S != D_r".into()));
    }
    Ok(IdempotentForm { conj, rank })
}
