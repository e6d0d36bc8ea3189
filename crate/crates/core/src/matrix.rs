use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix over a single [`Field`].
///
/// Square matrices are the elements of `M_n`; rectangular ones show up as
/// coefficient grids during elimination.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    /// `E_{i,j}` with zero-based indices.
    pub fn unit(field: Field, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        m.set(i, j, Scalar::one(field));
        m
    }

    /// `D_r`: ones in the first `r` diagonal positions.
    pub fn diag_idempotent(field: Field, n: usize, r: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..r.min(n) {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for x in row {
                field.ensure_same(x.field())?;
                data.push(x);
            }
        }
        Ok(Mat { rows: r, cols: c, field, data })
    }

    /// Build from a flat row-major buffer.
    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for x in &data {
            field.ensure_same(x.field())?;
        }
        Ok(Mat { rows, cols, field, data })
    }

    /// Integer matrix; handy for tests and canonical constructions.
    pub fn from_ints<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged integer matrix");
            data.extend(row.as_ref().iter().map(|&v| Scalar::from_int(field, v)));
        }
        Mat { rows: r, cols: c, field, data }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, field, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, len: usize, columns: &[Vec<Scalar>]) -> Mat {
        Mat::from_fn(field, len, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major vectorization.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero(self.field);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, field: self.field, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat> {
        self.field.ensure_same(rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat> {
        self.field.ensure_same(rhs.field)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Block-diagonal `diag(self, 1)`.
    pub fn extend_by_one(&self) -> Mat {
        let n = self.rows;
        let mut m = Mat::zeros(self.field, n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m.set(n, n, Scalar::one(self.field));
        m
    }

    /// Reversal permutation `i -> n-1-i` (its own inverse).
    pub fn reversal(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, Scalar::one(field));
        }
        m
    }

    /// Maximum bit size over all entries; a cheap measure of coefficient growth.
    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(Scalar::bit_size).max().unwrap_or(0)
    }
}

impl Mul for &Mat {
    type Output = Mat;

    /// Panics on shape or field mismatch; use [`Mat::try_mul`] at API boundaries.
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl Add for &Mat {
    type Output = Mat;

    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl Sub for &Mat {
    type Output = Mat;

    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl Neg for &Mat {
    type Output = Mat;

    fn neg(self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, field: self.field, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn product_of_units() {
        let e12 = Mat::unit(Q, 2, 0, 1);
        let e21 = Mat::unit(Q, 2, 1, 0);
        assert_eq!(&e12 * &e21, Mat::unit(Q, 2, 0, 0));
        assert_eq!(&e21 * &e12, Mat::unit(Q, 2, 1, 1));
        assert!((&e12 * &e12).is_zero());
    }

    #[test]
    fn shape_and_field_errors() {
        let a = Mat::zeros(Q, 2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::DimensionMismatch(_))));
        let b = Mat::zeros(Field::Prime(5), 3, 2);
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch(..))));
        assert!(Mat::from_rows(Q, vec![vec![Scalar::one(Q)], vec![]]).is_err());
    }

    #[test]
    fn reversal_and_extension() {
        let r = Mat::reversal(Q, 3);
        assert!((&r * &r).is_identity());
        let g = Mat::from_ints(Q, &[[1, 2], [3, 4]]);
        let ext = g.extend_by_one();
        assert_eq!(ext.get(2, 2), &Scalar::one(Q));
        assert_eq!(ext.get(1, 0), &Scalar::from_int(Q, 3));
        assert!(ext.get(2, 0).is_zero());
    }
}
