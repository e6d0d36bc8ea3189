//! Rank-one frames of square-zero spaces.
//!
//! A space `J` of dimension `n - 1` in which every element has rank one and
//! every product vanishes is spanned either by `y_i ⊗ ν` for one common
//! functional `ν`, or by `y ⊗ μ_i` for one common vector `y`. In the first case
//! `J` is conjugate to `span{E_{i,n} : i < n}`, in the second to
//! `span{E_{n,i} : i < n}`, and the conjugator can be written down directly
//! from the factors.

use std::fmt;

use crate::algebra::unit_vector;
use crate::conjugator::Conjugator;
use crate::error::{Error, Result};
use crate::linalg::{rank, EchelonBasis};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// `X = y ⊗ mu`, i.e. `X z = mu(z) y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneFactor {
    pub y: Vec<Scalar>,
    pub mu: Vec<Scalar>,
}

impl RankOneFactor {
    pub fn outer(&self) -> Mat {
        let field = self.y[0].field();
        Mat::from_fn(field, self.y.len(), self.mu.len(), |i, j| &self.y[i] * &self.mu[j])
    }
}

/// `y` is the first nonzero column scaled so its first nonzero entry is 1.
pub fn rank_one_factor(x: &Mat) -> Result<RankOneFactor> {
    let r = rank(x);
    if r != 1 {
        return Err(Error::WrongRank(r));
    }
    let j0 =
        (0..x.cols()).find(|&j| (0..x.rows()).any(|i| !x.get(i, j).is_zero())).expect("rank one has a nonzero column");
    let i0 = (0..x.rows()).find(|&i| !x.get(i, j0).is_zero()).expect("nonzero column");
    let pivot_inv = x.get(i0, j0).inv().expect("nonzero");
    let y = x.column(j0).iter().map(|v| v * &pivot_inv).collect();
    let mu = x.row(i0).to_vec();
    Ok(RankOneFactor { y, mu })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FrameCase {
    /// All factors share one functional: conjugate to `span{E_{i,n}}`.
    CommonFunctional,
    /// All factors share one vector: conjugate to `span{E_{n,i}}`.
    CommonVector,
}

impl fmt::Display for FrameCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameCase::CommonFunctional => "CommonFunctional",
            FrameCase::CommonVector => "CommonVector",
        })
    }
}

impl FrameCase {
    /// `span{E_{i,n}}` or `span{E_{n,i}}`, `i < n`.
    pub fn target(self, field: Field, n: usize) -> Subspace {
        let last = n - 1;
        match self {
            FrameCase::CommonFunctional => Subspace::from_positions(field, n, (0..last).map(|i| (i, last))),
            FrameCase::CommonVector => Subspace::from_positions(field, n, (0..last).map(|i| (last, i))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalFrame {
    pub case: FrameCase,
    /// `conj.apply` maps `J` onto the case's target.
    pub conj: Conjugator,
}

/// Check the frame preconditions and factor the basis.
fn frame_factors(j: &Subspace) -> Result<Vec<RankOneFactor>> {
    let n = j.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n, 2));
    }
    if j.dim() != n - 1 {
        return Err(Error::FrameViolation(format!("dimension {} != n - 1 = {}", j.dim(), n - 1)));
    }
    for x in j.basis() {
        for y in j.basis() {
            if !(x * y).is_zero() {
                return Err(Error::FrameViolation("basis products are not all zero".into()));
            }
        }
    }
    j.basis().iter().map(|x| rank_one_factor(x).map_err(|e| Error::FrameViolation(e.to_string()))).collect()
}

fn span_dim(field: Field, len: usize, vs: impl IntoIterator<Item = Vec<Scalar>>) -> usize {
    let mut eb = EchelonBasis::new(field, len);
    for v in vs {
        eb.insert(v);
    }
    eb.dim()
}

/// Build the conjugator for a prescribed case.
pub fn radical_frame_case(j: &Subspace, case: FrameCase) -> Result<Conjugator> {
    let factors = frame_factors(j)?;
    let field = j.field();
    let n = j.n();
    let conj = match case {
        FrameCase::CommonFunctional => {
            if span_dim(field, n, factors.iter().map(|f| f.mu.clone())) != 1 {
                return Err(Error::FrameViolation("functionals are not parallel".into()));
            }
            let nu = &factors[0].mu;
            let k = nu.iter().position(|v| !v.is_zero()).expect("nonzero functional");
            // T = [y_1 .. y_{n-1} | e_k]; then T^{-1} y_i = e_i and ν∘T = ν_k ξ_n.
            let mut columns: Vec<Vec<Scalar>> = factors.iter().map(|f| f.y.clone()).collect();
            columns.push(unit_vector(field, n, k));
            Conjugator::new(Mat::from_columns(field, n, &columns))
                .map_err(|_| Error::FrameViolation("vectors y_i are dependent".into()))?
        }
        FrameCase::CommonVector => {
            if span_dim(field, n, factors.iter().map(|f| f.y.clone())) != 1 {
                return Err(Error::FrameViolation("vectors are not parallel".into()));
            }
            let y = &factors[0].y;
            let k = y.iter().position(|v| !v.is_zero()).expect("nonzero vector");
            // G has rows μ_1 .. μ_{n-1}, ξ_k; then G y ∝ e_n and μ_i∘G^{-1} = ξ_i.
            let mut rows: Vec<Vec<Scalar>> = factors.iter().map(|f| f.mu.clone()).collect();
            rows.push(unit_vector(field, n, k));
            let g = Mat::from_rows(field, rows).expect("uniform rows");
            Conjugator::new(g).map_err(|_| Error::FrameViolation("functionals μ_i are dependent".into()))?.inverse()
        }
    };
    if j.map(|x| conj.apply(x)) != case.target(field, n) {
        return Err(Error::FrameViolation(format!("{case} conjugator does not certify")));
    }
    Ok(conj)
}

/// Frame in the first case that certifies, trying `CommonFunctional` first.
pub fn radical_frame(j: &Subspace) -> Result<RadicalFrame> {
    frame_factors(j)?;
    let mut last_err = None;
    for case in [FrameCase::CommonFunctional, FrameCase::CommonVector] {
        match radical_frame_case(j, case) {
            Ok(conj) => return Ok(RadicalFrame { case, conj }),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("two cases tried"))
}
