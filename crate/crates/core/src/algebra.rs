//! Subalgebras of `M_n` and the operations that preserve them.

use std::fmt;

use crate::conjugator::Conjugator;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve_linear, EchelonBasis};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};
use crate::subspace::{check_member, Subspace};

/// A subspace of `M_n` closed under multiplication.
///
/// Values of this type are only produced by closure, by verified
/// certification, or by maps known to preserve closure (conjugation,
/// transposition), so holding one is the closure certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    space: Subspace,
}

/// How [`Subalgebra::compress`] applies the idempotent.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CompressMode {
    /// `a e`
    Right,
    /// `e a e`
    TwoSided,
}

impl Subalgebra {
    pub fn zero(field: Field, n: usize) -> Subalgebra {
        Subalgebra { space: Subspace::zero(field, n) }
    }

    pub fn full(field: Field, n: usize) -> Subalgebra {
        Subalgebra { space: Subspace::full(field, n) }
    }

    /// Smallest subalgebra containing `space` (not forced to contain `I`).
    ///
    /// Every product of two accepted generators is tried exactly once in each
    /// order; newly independent products join the generator list. Terminates
    /// because the dimension is bounded by `n^2`.
    pub fn closure(space: &Subspace) -> Subalgebra {
        let n = space.n();
        let mut eb = space.echelon().clone();
        let mut gens: Vec<Mat> = space.basis().to_vec();
        let mut i = 0;
        while i < gens.len() {
            for j in 0..=i {
                let products =
                    if i == j { vec![&gens[i] * &gens[i]] } else { vec![&gens[i] * &gens[j], &gens[j] * &gens[i]] };
                for p in products {
                    if eb.insert(p.as_slice().to_vec()) {
                        gens.push(p);
                    }
                }
            }
            i += 1;
            if eb.dim() == n * n {
                break;
            }
        }
        Subalgebra { space: Subspace::from_echelon(n, eb) }
    }

    pub fn generated_by(field: Field, n: usize, mats: &[Mat]) -> Result<Subalgebra> {
        Ok(Subalgebra::closure(&Subspace::span(field, n, mats)?))
    }

    pub fn is_closed(space: &Subspace) -> bool {
        let basis = space.basis();
        basis.iter().all(|x| basis.iter().all(|y| space.echelon().contains((x * y).as_slice())))
    }

    /// Check every pairwise basis product lies in the span.
    pub fn certify(space: Subspace) -> Result<Subalgebra> {
        if Subalgebra::is_closed(&space) {
            Ok(Subalgebra { space })
        } else {
            Err(Error::NotClosed)
        }
    }

    /// Wrap a space already known to be closed. Checked in debug builds.
    pub(crate) fn trusted(space: Subspace) -> Subalgebra {
        debug_assert!(Subalgebra::is_closed(&space), "trusted subalgebra is not closed");
        Subalgebra { space }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Mat] {
        self.space.basis()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.space.contains(m)
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Mat::identity(self.field(), self.n()))
    }

    /// Intersection; the result is certified, not re-closed.
    pub fn intersect(&self, other: &Subalgebra) -> Result<Subalgebra> {
        Subalgebra::certify(self.space.intersect(&other.space)?)
    }

    /// `{g^{-1} X g : X in self}`.
    pub fn conjugate(&self, g: &Mat) -> Result<Subalgebra> {
        check_member(self.field(), self.n(), g)?;
        Ok(self.conjugate_by(&Conjugator::new(g.clone())?))
    }

    pub fn conjugate_by(&self, c: &Conjugator) -> Subalgebra {
        Subalgebra { space: self.space.map(|x| c.apply(x)) }
    }

    /// Transposition is an anti-automorphism, so the image is again closed.
    pub fn transpose(&self) -> Subalgebra {
        Subalgebra { space: self.space.transpose() }
    }

    pub fn unity_summary(&self) -> UnitySummary {
        UnitySummary::of(self)
    }

    /// `a e` or `e a e`; fails unless `e` is idempotent and the image is closed.
    pub fn compress(&self, e: &Mat, mode: CompressMode) -> Result<Subalgebra> {
        check_member(self.field(), self.n(), e)?;
        if &(e * e) != e {
            return Err(Error::NotIdempotent);
        }
        let space = match mode {
            CompressMode::Right => self.space.map(|x| x * e),
            CompressMode::TwoSided => self.space.map(|x| &(e * x) * e),
        };
        Subalgebra::certify(space)
    }

    /// Upper-left `(n-1) x (n-1)` corners, for algebras inside `M[R_n, C_n]`.
    pub fn corner(&self) -> Result<Subalgebra> {
        let n = self.n();
        if n < 2 {
            return Err(Error::DimensionTooSmall(n, 2));
        }
        let last = n - 1;
        for b in self.basis() {
            if (0..n).any(|k| !b.get(last, k).is_zero() || !b.get(k, last).is_zero()) {
                return Err(Error::NotInCorner);
            }
        }
        let field = self.field();
        let space = Subspace::span_unchecked(
            field,
            last,
            self.basis().iter().map(|b| Mat::from_fn(field, last, last, |i, j| b.get(i, j).clone())),
        );
        Ok(Subalgebra::trusted(space))
    }

    /// Embed an algebra of `M_{n-1}` as the upper-left corner of `M_n`.
    pub fn embed_corner(&self) -> Subalgebra {
        let m = self.n();
        let field = self.field();
        let space = Subspace::span_unchecked(
            field,
            m + 1,
            self.basis().iter().map(|b| {
                Mat::from_fn(field, m + 1, m + 1, |i, j| {
                    if i < m && j < m {
                        b.get(i, j).clone()
                    } else {
                        Scalar::zero(field)
                    }
                })
            }),
        );
        Subalgebra::trusted(space)
    }

    /// Sum of the column spaces of all elements.
    pub fn joint_image(&self) -> EchelonBasis {
        let n = self.n();
        let mut eb = EchelonBasis::new(self.field(), n);
        for b in self.basis() {
            for j in 0..n {
                eb.insert(b.column(j));
                if eb.dim() == n {
                    return eb;
                }
            }
        }
        eb
    }

    /// Intersection of the kernels of all elements.
    pub fn joint_kernel(&self) -> Vec<Vec<Scalar>> {
        let n = self.n();
        let field = self.field();
        if self.basis().is_empty() {
            return (0..n).map(|k| unit_vector(field, n, k)).collect();
        }
        let rows: Vec<Vec<Scalar>> = self.basis().iter().flat_map(|b| (0..n).map(move |i| b.row(i).to_vec())).collect();
        kernel_basis(&Mat::from_rows(field, rows).expect("uniform rows"))
    }
}

pub(crate) fn unit_vector(field: Field, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(field); n];
    v[k] = Scalar::one(field);
    v
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subalgebra of M_{} over {} of dimension {}", self.n(), self.field(), self.dim())
    }
}

/// All solutions of a one-sided identity equation: `particular + directions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFamily {
    pub particular: Mat,
    pub directions: Subspace,
}

impl AffineFamily {
    /// Number of free parameters.
    pub fn parameters(&self) -> usize {
        self.directions.dim()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.try_sub(&self.particular).map(|d| self.directions.contains(&d)).unwrap_or(false)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum UnityStatus {
    ContainsI,
    UnitalProper,
    Nonunital,
}

impl fmt::Display for UnityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnityStatus::ContainsI => "ContainsI",
            UnityStatus::UnitalProper => "UnitalProper",
            UnityStatus::Nonunital => "Nonunital",
        })
    }
}

/// Exact identity analysis of a subalgebra.
///
/// The zero algebra has the two-sided unity `0` and is reported as `UnitalProper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitySummary {
    pub two_sided: Option<Mat>,
    pub left_identities: Option<AffineFamily>,
    pub right_identities: Option<AffineFamily>,
    pub status: UnityStatus,
}

fn describe_family(f: &Option<AffineFamily>) -> String {
    match f {
        None => "none".to_string(),
        Some(f) if f.parameters() == 0 => "unique".to_string(),
        Some(f) => format!("{}-parameter family", f.parameters()),
    }
}

impl fmt::Display for UnitySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}; left identities: {}; right identities: {}",
            self.status,
            describe_family(&self.left_identities),
            describe_family(&self.right_identities)
        )
    }
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

impl UnitySummary {
    pub fn of(a: &Subalgebra) -> UnitySummary {
        let left = identity_family(a, &[Side::Left]);
        let right = identity_family(a, &[Side::Right]);
        let two_sided = match (&left, &right) {
            (Some(_), Some(_)) => identity_family(a, &[Side::Left, Side::Right]).map(|f| {
                debug_assert!(f.directions.is_zero(), "two-sided unity must be unique");
                f.particular
            }),
            _ => None,
        };
        let status = match &two_sided {
            Some(e) if e.is_identity() => UnityStatus::ContainsI,
            Some(_) => UnityStatus::UnitalProper,
            None => UnityStatus::Nonunital,
        };
        UnitySummary { two_sided, left_identities: left, right_identities: right, status }
    }

    pub fn is_unital(&self) -> bool {
        self.two_sided.is_some()
    }
}

/// Solve `e B_i = B_i` (left) and/or `B_i e = B_i` (right) for `e` in the algebra,
/// working in coordinates of the algebra's own basis.
fn identity_family(a: &Subalgebra, sides: &[Side]) -> Option<AffineFamily> {
    let field = a.field();
    let n = a.n();
    let basis = a.basis();
    let d = basis.len();
    if d == 0 {
        return Some(AffineFamily { particular: Mat::zeros(field, n, n), directions: Subspace::zero(field, n) });
    }
    let eb = a.space().echelon();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(sides.len() * d * d);
    let mut rhs = Vec::with_capacity(sides.len() * d * d);
    for &side in sides {
        for (i, bi) in basis.iter().enumerate() {
            // Column k holds the coordinates of B_k B_i (left) or B_i B_k (right).
            let coords: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|bk| {
                    let p = match side {
                        Side::Left => bk * bi,
                        Side::Right => bi * bk,
                    };
                    eb.coordinates(p.as_slice())
                })
                .collect();
            for r in 0..d {
                rows.push(coords.iter().map(|c| c[r].clone()).collect());
                rhs.push(if r == i { Scalar::one(field) } else { Scalar::zero(field) });
            }
        }
    }
    let system = Mat::from_rows(field, rows).expect("uniform rows");
    let particular = solve_linear(&system, &rhs).expect("consistent shapes")?;
    let directions = kernel_basis(&system).into_iter().map(|c| a.space().combine_mat(&c)).collect::<Vec<_>>();
    Some(AffineFamily {
        particular: a.space().combine_mat(&particular),
        directions: Subspace::span_unchecked(field, n, directions),
    })
}
