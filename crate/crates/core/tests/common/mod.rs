//! Strategies, oracles and property bodies shared by the property tests and
//! the acceptance harness.
#![allow(dead_code)]

use nonunital_core::linalg::{invert, kernel_basis, rank, rref};
use nonunital_core::{Conjugator, Error, Field, Mat, Scalar, Subalgebra, Subspace, UnityStatus};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const Q: Field = Field::Rationals;

/// Small integers, zero about half the time so that ranks and closures vary.
pub fn entry() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 1 => Just(1i64), 2 => -3i64..=3]
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(entry(), rows * cols).prop_map(move |v| {
        Mat::from_data(Q, rows, cols, v.into_iter().map(|x| Scalar::from_int(Q, x)).collect()).unwrap()
    })
}

pub fn rect() -> impl Strategy<Value = Mat> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

pub fn square(n: usize) -> impl Strategy<Value = Mat> {
    matrix(n, n)
}

/// `L U` with unit diagonals, then a row rotation: always invertible.
pub fn invertible(n: usize) -> impl Strategy<Value = Mat> {
    (square(n), square(n), 0..n).prop_map(move |(a, b, shift)| {
        let l = Mat::from_fn(Q, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => Scalar::one(Q),
            std::cmp::Ordering::Greater => a.get(i, j).clone(),
            std::cmp::Ordering::Less => Scalar::zero(Q),
        });
        let u = Mat::from_fn(Q, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => Scalar::one(Q),
            std::cmp::Ordering::Less => b.get(i, j).clone(),
            std::cmp::Ordering::Greater => Scalar::zero(Q),
        });
        let lu = &l * &u;
        Mat::from_fn(Q, n, n, |i, j| lu.get((i + shift) % n, j).clone())
    })
}

pub fn generators(n: usize, max: usize) -> impl Strategy<Value = Vec<Mat>> {
    proptest::collection::vec(square(n), 0..=max)
}

pub fn span(n: usize, mats: &[Mat]) -> Subspace {
    Subspace::span(Q, n, mats).unwrap()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &Mat) -> Scalar {
    let n = m.rows();
    if n == 0 {
        return Scalar::one(Q);
    }
    let mut total = Scalar::zero(Q);
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor = Mat::from_fn(Q, n - 1, n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
        let term = m.get(0, j) * &det(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1)
        .into_iter()
        .map(|mut s| {
            s.push(n - 1);
            s
        })
        .collect();
    with.extend(subsets(n - 1, k));
    with
}

/// Rank as the size of the largest nonzero minor.
pub fn rank_by_minors(m: &Mat) -> usize {
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let sub = Mat::from_fn(Q, k, k, |i, j| m.get(rows[i], cols[j]).clone());
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

pub fn all_products_inside(s: &Subspace) -> bool {
    s.basis().iter().all(|x| s.basis().iter().all(|y| s.contains(&(x * y))))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// `rank + nullity = cols`, kernel vectors are killed, and the rank agrees with the minor oracle.
pub fn prop_rank_nullity(m: &Mat) -> Result<(), TestCaseError> {
    let r = rank(m);
    let kernel = kernel_basis(m);
    check(r + kernel.len() == m.cols(), || format!("rank {r} + nullity {} != {}", kernel.len(), m.cols()))?;
    for v in &kernel {
        check(m.mul_vec(v).iter().all(Scalar::is_zero), || "kernel vector not annihilated".into())?;
    }
    check(r == rank_by_minors(m), || format!("rank {r} disagrees with minors"))
}

pub fn prop_rref_idempotent(m: &Mat) -> Result<(), TestCaseError> {
    let once = rref(m);
    let twice = rref(&once.echelon);
    check(once.echelon == twice.echelon && once.pivots == twice.pivots, || "rref not idempotent".into())
}

pub fn prop_invert(m: &Mat) -> Result<(), TestCaseError> {
    match invert(m) {
        Ok(inv) => {
            check((m * &inv).is_identity() && (&inv * m).is_identity(), || "not a two-sided inverse".into())?;
            check(!det(m).is_zero(), || "inverted a matrix with zero determinant".into())
        }
        Err(Error::SingularMatrix) => check(det(m).is_zero(), || "refused an invertible matrix".into()),
        Err(e) => Err(TestCaseError::fail(format!("unexpected {e}"))),
    }
}

/// `dim(U + V) + dim(U ∩ V) = dim U + dim V`, with both sides of the
/// intersection and sum checked for containment.
pub fn prop_grassmann(n: usize, a: &[Mat], b: &[Mat]) -> Result<(), TestCaseError> {
    let u = span(n, a);
    let v = span(n, b);
    let sum = u.sum(&v).unwrap();
    let meet = u.intersect(&v).unwrap();
    check(sum.dim() + meet.dim() == u.dim() + v.dim(), || {
        format!("{} + {} != {} + {}", sum.dim(), meet.dim(), u.dim(), v.dim())
    })?;
    check(meet.is_subspace_of(&u) && meet.is_subspace_of(&v), || "intersection escapes a factor".into())?;
    check(u.is_subspace_of(&sum) && v.is_subspace_of(&sum), || "factor escapes the sum".into())?;
    check(meet == v.intersect(&u).unwrap() && sum == v.sum(&u).unwrap(), || "not symmetric".into())
}

/// Closure contains its input, is closed, is idempotent and is monotone.
pub fn prop_closure(n: usize, a: &[Mat], extra: &[Mat]) -> Result<(), TestCaseError> {
    let s = span(n, a);
    let c = Subalgebra::closure(&s);
    check(s.is_subspace_of(c.space()), || "closure misses its generators".into())?;
    check(all_products_inside(c.space()), || "closure is not closed".into())?;
    check(Subalgebra::closure(c.space()) == c, || "closure is not idempotent".into())?;
    let mut bigger = a.to_vec();
    bigger.extend_from_slice(extra);
    let cb = Subalgebra::closure(&span(n, &bigger));
    check(c.space().is_subspace_of(cb.space()), || "closure is not monotone".into())
}

/// Conjugation and transposition commute with closure and intersection and
/// preserve dimension and unity type (transposition swaps left and right).
pub fn prop_conjugation(n: usize, a: &[Mat], b: &[Mat], g: &Mat) -> Result<(), TestCaseError> {
    let conj = Conjugator::new(g.clone()).unwrap();
    let ca = Subalgebra::closure(&span(n, a));
    let cb = Subalgebra::closure(&span(n, b));

    let moved = ca.conjugate_by(&conj);
    check(moved.dim() == ca.dim(), || "conjugation changed the dimension".into())?;
    check(moved.conjugate_by(&conj.inverse()) == ca, || "conjugation does not invert".into())?;
    check(ca.conjugate(g).unwrap() == moved, || "conjugate(g) != conjugate_by(g)".into())?;
    let gens: Vec<Mat> = a.iter().map(|x| conj.apply(x)).collect();
    check(Subalgebra::closure(&span(n, &gens)) == moved, || "conjugation does not commute with closure".into())?;
    check(ca.intersect(&cb).unwrap().conjugate_by(&conj) == moved.intersect(&cb.conjugate_by(&conj)).unwrap(), || {
        "conjugation does not commute with intersection".into()
    })?;
    let su = ca.unity_summary();
    let sm = moved.unity_summary();
    check(su.status == sm.status, || format!("unity {} became {}", su.status, sm.status))?;
    if let (Some(e), Some(f)) = (&su.two_sided, &sm.two_sided) {
        check(&conj.apply(e) == f, || "unity does not move with the algebra".into())?;
    }

    let t = ca.transpose();
    check(t.transpose() == ca && t.dim() == ca.dim(), || "transpose is not an involution".into())?;
    let tg: Vec<Mat> = a.iter().map(Mat::transpose).collect();
    check(Subalgebra::closure(&span(n, &tg)) == t, || "transpose does not commute with closure".into())?;
    let st = t.unity_summary();
    let params = |f: &Option<nonunital_core::AffineFamily>| f.as_ref().map(|f| f.parameters());
    check(
        params(&st.left_identities) == params(&su.right_identities)
            && params(&st.right_identities) == params(&su.left_identities),
        || "transpose does not swap left and right identities".into(),
    )?;
    check((st.status == UnityStatus::Nonunital) == (su.status == UnityStatus::Nonunital), || {
        "transpose changed unitality".into()
    })?;
    check(moved.transpose() == t.conjugate_by(&conj.transpose_dual()), || "transpose_dual does not intertwine".into())
}
