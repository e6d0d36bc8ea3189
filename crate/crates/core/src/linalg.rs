//! Deterministic exact elimination.
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! result here is canonical: the reduced row-echelon form of a matrix is
//! unique and two row spaces are equal iff their echelon forms are.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};

/// Reduced row-echelon form with its pivot columns (zero-based, ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub echelon: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Mat) -> Rref {
    let mut rows = m.to_rows();
    let pivots = reduce_rows(&mut rows, m.cols());
    let echelon = Mat::from_rows(m.field(), rows).unwrap_or_else(|_| Mat::zeros(m.field(), m.rows(), m.cols()));
    Rref { echelon, pivots }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).rank()
}

/// In-place Gauss-Jordan on a row list; returns pivot columns.
fn reduce_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                x.sub_mul_assign(&factor, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Canonical solution of `a x = b` (free variables zero), or `None` if inconsistent.
pub fn solve_linear(a: &Mat, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    for x in b {
        a.field().ensure_same(x.field())?;
    }
    let cols = a.cols();
    let mut rows: Vec<Vec<Scalar>> = (0..a.rows())
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = reduce_rows(&mut rows, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(a.field()); cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Ok(Some(x))
}

/// Standard free-variable basis of the right null space.
///
/// For each free column `f` the basis vector has a 1 in position `f` and
/// `-echelon[i][f]` in the pivot position of row `i`.
pub fn kernel_basis(a: &Mat) -> Vec<Vec<Scalar>> {
    let field = a.field();
    let Rref { echelon, pivots } = rref(a);
    let mut is_pivot = vec![false; a.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..a.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(field); a.cols()];
            v[f] = Scalar::one(field);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -echelon.get(i, f);
            }
            v
        })
        .collect()
}

pub fn invert(s: &Mat) -> Result<Mat> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch(format!("cannot invert a {}x{} matrix", s.rows(), s.cols())));
    }
    let n = s.rows();
    let field = s.field();
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row = s.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) }));
            row
        })
        .collect();
    let pivots = reduce_rows(&mut rows, n);
    if pivots.len() < n {
        return Err(Error::SingularMatrix);
    }
    let inv_rows = rows.into_iter().map(|r| r[n..].to_vec()).collect();
    Mat::from_rows(field, inv_rows)
}

/// Incrementally maintained reduced row-echelon basis of a subspace of `F^len`.
///
/// Rows are kept sorted by pivot, each pivot entry is 1 and every other row is
/// zero in that column, so the stored rows are exactly the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    len: usize,
    field: Field,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: Field, len: usize) -> EchelonBasis {
        EchelonBasis { len, field, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    /// Subtract the projection onto the stored rows; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &mut [Scalar]) {
        debug_assert_eq!(v.len(), self.len);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v[p..].iter_mut().zip(&row[p..]) {
                x.sub_mul_assign(&c, r);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Insert `v`; returns false if it was already in the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        if !inv.is_one() {
            for x in v[p..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row[p..].iter_mut().zip(&v[p..]) {
                x.sub_mul_assign(&c, y);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` (assumed in the span) with respect to the stored rows.
    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(Q, x)).collect()
    }

    #[test]
    fn rref_identity() {
        let r = rref(&Mat::identity(Q, 3));
        assert_eq!(r.rank(), 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.echelon, Mat::identity(Q, 3));
    }

    #[test]
    fn rref_rank_one() {
        // Hand elimination: R1 <- R1/2 = [1,2]; R2 <- R2 - R1 = [0,0].
        let r = rref(&Mat::from_ints(Q, &[[2, 4], [1, 2]]));
        assert_eq!(r.rank(), 1);
        assert_eq!(r.echelon, Mat::from_ints(Q, &[[1, 2], [0, 0]]));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_zero() {
        let r = rref(&Mat::zeros(Q, 2, 2));
        assert_eq!(r.rank(), 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn solve_examples() {
        let x = solve_linear(&Mat::identity(Q, 3), &ints(&[1, 2, 3])).unwrap();
        assert_eq!(x, Some(ints(&[1, 2, 3])));
        let a = Mat::from_ints(Q, &[[1, 1], [2, 2]]);
        assert_eq!(solve_linear(&a, &ints(&[1, 2])).unwrap(), Some(ints(&[1, 0])));
        assert_eq!(solve_linear(&a, &ints(&[1, 3])).unwrap(), None);
        assert!(solve_linear(&a, &ints(&[1])).is_err());
        let fp = vec![Scalar::one(Field::Prime(5)); 2];
        assert!(matches!(solve_linear(&a, &fp), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(Q, 3)).is_empty());
        assert_eq!(kernel_basis(&Mat::from_ints(Q, &[[1, 1]])), vec![ints(&[-1, 1])]);
        assert_eq!(kernel_basis(&Mat::zeros(Q, 2, 2)), vec![ints(&[1, 0]), ints(&[0, 1])]);
    }

    #[test]
    fn invert_examples() {
        // A = I + E_{3,2}; A^{-1} = I - E_{3,2}.
        let mut a = Mat::identity(Q, 3);
        a.set(2, 1, Scalar::one(Q));
        let mut expected = Mat::identity(Q, 3);
        expected.set(2, 1, Scalar::from_int(Q, -1));
        assert_eq!(invert(&a).unwrap(), expected);
        assert_eq!(invert(&Mat::identity(Q, 2)).unwrap(), Mat::identity(Q, 2));
        assert_eq!(invert(&Mat::from_ints(Q, &[[1, 1], [1, 1]])), Err(Error::SingularMatrix));
        assert!(invert(&Mat::zeros(Q, 2, 3)).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        let a = Mat::from_ints(f, &[[2, 1], [1, 1]]);
        let inv = invert(&a).unwrap();
        assert!((&a * &inv).is_identity());
        // det = 1 over Z, singular nowhere; [[1,2],[2,4]] is singular mod every p.
        assert!(invert(&Mat::from_ints(f, &[[1, 2], [2, 4]])).is_err());
        // Singular mod 7 only: det = 7.
        assert!(invert(&Mat::from_ints(f, &[[3, 1], [1, 5]])).is_err());
        assert!(invert(&Mat::from_ints(Q, &[[3, 1], [1, 5]])).is_ok());
    }

    #[test]
    fn echelon_basis_matches_batch_rref() {
        let vs = [ints(&[0, 2, 4, 1]), ints(&[1, 1, 0, 0]), ints(&[1, 3, 4, 1]), ints(&[0, 0, 0, 3])];
        let mut eb = EchelonBasis::new(Q, 4);
        let inserted: Vec<bool> = vs.iter().map(|v| eb.insert(v.clone())).collect();
        assert_eq!(inserted, vec![true, true, false, true]);
        let batch = rref(&Mat::from_rows(Q, vs.to_vec()).unwrap());
        assert_eq!(eb.pivots(), &batch.pivots[..]);
        for (i, row) in eb.rows().iter().enumerate() {
            assert_eq!(row.as_slice(), batch.echelon.row(i));
        }
        assert!(eb.contains(&ints(&[2, 4, 4, 5])));
    }
}
