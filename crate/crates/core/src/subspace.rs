use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, EchelonBasis};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};

/// A linear subspace of `M_n`, held as the reduced row-echelon basis of the
/// row-major vectorizations of its elements.
///
/// The basis is canonical, so `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    echelon: EchelonBasis,
    basis: Vec<Mat>,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace::from_echelon(n, EchelonBasis::new(field, n * n))
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        let units: Vec<Mat> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| Mat::unit(field, n, i, j)).collect();
        Subspace::span_unchecked(field, n, units)
    }

    /// Linear span of `mats` inside `M_n`. The ambient `n` is explicit so the empty span is well defined.
    pub fn span(field: Field, n: usize, mats: &[Mat]) -> Result<Subspace> {
        for m in mats {
            check_member(field, n, m)?;
        }
        Ok(Subspace::span_unchecked(field, n, mats.iter().cloned()))
    }

    pub(crate) fn span_unchecked(field: Field, n: usize, mats: impl IntoIterator<Item = Mat>) -> Subspace {
        let mut eb = EchelonBasis::new(field, n * n);
        for m in mats {
            eb.insert(m.into_data());
        }
        Subspace::from_echelon(n, eb)
    }

    /// Span of the matrix units `E_{i,j}` (zero-based) at the given positions.
    pub fn from_positions(field: Field, n: usize, positions: impl IntoIterator<Item = (usize, usize)>) -> Subspace {
        Subspace::span_unchecked(field, n, positions.into_iter().map(|(i, j)| Mat::unit(field, n, i, j)))
    }

    pub(crate) fn from_echelon(n: usize, echelon: EchelonBasis) -> Subspace {
        let field = echelon.field();
        let basis = echelon
            .rows()
            .iter()
            .map(|r| Mat::from_data(field, n, n, r.clone()).expect("vectorized basis row"))
            .collect();
        Subspace { n, echelon, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.echelon.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn echelon(&self) -> &EchelonBasis {
        &self.echelon
    }

    /// Pivot positions of the canonical basis as `(row, column)` matrix indices.
    pub fn pivot_positions(&self) -> Vec<(usize, usize)> {
        self.echelon.pivots().iter().map(|&p| (p / self.n, p % self.n)).collect()
    }

    /// Membership test; a matrix of the wrong shape or field is never a member.
    pub fn contains(&self, m: &Mat) -> bool {
        m.rows() == self.n && m.cols() == self.n && m.field() == self.field() && self.echelon.contains(m.as_slice())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.same_ambient(other).is_ok() && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_ambient(&self, other: &Subspace) -> Result<()> {
        self.field().ensure_same(other.field())?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("ambient M_{} vs M_{}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let mut eb = self.echelon.clone();
        for b in &other.basis {
            eb.insert(b.as_slice().to_vec());
        }
        Ok(Subspace::from_echelon(self.n, eb))
    }

    /// Intersection via the kernel of `[a_1 .. a_k | b_1 .. b_m]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let field = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(field, self.n));
        }
        let columns: Vec<Vec<Scalar>> = self.basis.iter().chain(&other.basis).map(|m| m.as_slice().to_vec()).collect();
        let stacked = Mat::from_columns(field, self.n * self.n, &columns);
        let k = self.dim();
        let mut eb = EchelonBasis::new(field, self.n * self.n);
        for coeffs in kernel_basis(&stacked) {
            eb.insert(self.combine(&coeffs[..k]));
        }
        Ok(Subspace::from_echelon(self.n, eb))
    }

    /// `sum_i coeffs[i] * basis[i]`, vectorized.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let mut v = vec![Scalar::zero(field); self.n * self.n];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            let neg = -c;
            for (x, y) in v.iter_mut().zip(b.as_slice()) {
                x.sub_mul_assign(&neg, y);
            }
        }
        v
    }

    pub fn combine_mat(&self, coeffs: &[Scalar]) -> Mat {
        Mat::from_data(self.field(), self.n, self.n, self.combine(coeffs)).expect("vectorized combination")
    }

    /// Span of the images of the basis under `f` (which must preserve shape and field).
    pub fn map(&self, f: impl Fn(&Mat) -> Mat) -> Subspace {
        Subspace::span_unchecked(self.field(), self.n, self.basis.iter().map(f))
    }

    pub fn transpose(&self) -> Subspace {
        self.map(Mat::transpose)
    }

    /// Coordinates of a member with respect to the canonical basis.
    pub fn coordinates(&self, m: &Mat) -> Option<Vec<Scalar>> {
        self.contains(m).then(|| self.echelon.coordinates(m.as_slice()))
    }
}

pub(crate) fn check_member(field: Field, n: usize, m: &Mat) -> Result<()> {
    field.ensure_same(m.field())?;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix in M_{n}", m.rows(), m.cols())));
    }
    Ok(())
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subspace of M_{} over {} of dimension {}", self.n, self.field(), self.dim())
    }
}
