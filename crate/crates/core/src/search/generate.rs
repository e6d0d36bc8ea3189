//! Seeded random matrices, idempotents and subalgebras.

use crate::algebra::Subalgebra;
use crate::canonical::{canonical_algebra, CanonicalSpec};
use crate::conjugator::Conjugator;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};
use crate::search::rng::Rng;
use crate::subspace::Subspace;

const MAX_RETRIES: usize = 1000;

/// Integer entries in `[-bound, bound]`, each kept with probability `density / 4`.
fn random_sparse(field: Field, rows: usize, cols: usize, bound: i64, density: u64, rng: &mut Rng) -> Mat {
    let mut m = Mat::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.chance(density, 4) {
                m.set(i, j, Scalar::from_int(field, rng.int(-bound, bound)));
            }
        }
    }
    m
}

pub fn random_matrix(field: Field, n: usize, bound: i64, rng: &mut Rng) -> Mat {
    random_sparse(field, n, n, bound, 4, rng)
}

/// Rejection-sampled invertible integer matrix; the bound doubles after every
/// 1000 singular draws.
pub fn random_invertible_in(field: Field, n: usize, bound: i64, rng: &mut Rng) -> Mat {
    let mut bound = bound.max(1);
    loop {
        for _ in 0..MAX_RETRIES {
            let m = random_matrix(field, n, bound, rng);
            if rank(&m) == n {
                return m;
            }
        }
        bound *= 2;
    }
}

pub fn random_invertible(n: usize, bound: i64, rng: &mut Rng) -> Mat {
    random_invertible_in(Field::Rationals, n, bound, rng)
}

pub fn random_conjugator(n: usize, bound: i64, rng: &mut Rng) -> Conjugator {
    Conjugator::new(random_invertible(n, bound, rng)).expect("sampled matrix is invertible")
}

/// `e = g D_r g^{-1}` for a random invertible `g` with entries in `[-2, 2]`.
pub fn random_idempotent(n: usize, r: usize, rng: &mut Rng) -> Mat {
    assert!(r <= n, "rank {r} exceeds n = {n}");
    let g = random_conjugator(n, 2, rng);
    g.inverse().apply(&Mat::diag_idempotent(Field::Rationals, n, r))
}

/// Multiplicative closure of `k` random matrices. With an ambient algebra the
/// generators are sparse integer combinations of its basis, so the result
/// stays inside it.
pub fn random_subalgebra(n: usize, k: usize, bound: i64, rng: &mut Rng, ambient: Option<&Subalgebra>) -> Subalgebra {
    let field = Field::Rationals;
    let gens: Vec<Mat> = (0..k)
        .map(|_| match ambient {
            Some(a) => {
                let coeffs: Vec<Scalar> = (0..a.dim())
                    .map(|_| {
                        if rng.chance(1, 2) {
                            Scalar::from_int(field, rng.int(-bound, bound))
                        } else {
                            Scalar::zero(field)
                        }
                    })
                    .collect();
                a.space().combine_mat(&coeffs)
            }
            None => random_sparse(field, n, n, bound, 2, rng),
        })
        .collect();
    Subalgebra::closure(&Subspace::span_unchecked(field, n, gens))
}

/// Shapes used for the corner generators of [`random_unital_subalgebra`].
#[derive(Copy, Clone, Debug)]
enum CornerShape {
    Dense,
    Upper,
    Diagonal,
}

/// Subalgebra with two-sided unity `e = g D_r g^{-1}`: the closure of `e`
/// together with `k` random elements of `e M e`.
///
/// The corner generators are drawn dense, upper triangular or diagonal (in the
/// `D_r` frame) so that the dimensions vary rather than almost always
/// filling `e M e`.
pub fn random_unital_subalgebra(n: usize, r: usize, k: usize, bound: i64, rng: &mut Rng) -> Subalgebra {
    assert!((1..=n).contains(&r), "unity rank {r} outside 1..={n}");
    let field = Field::Rationals;
    let g = random_conjugator(n, 2, rng).inverse();
    let shape = match rng.index(3) {
        0 => CornerShape::Dense,
        1 => CornerShape::Upper,
        _ => CornerShape::Diagonal,
    };
    let mut gens = vec![g.apply(&Mat::diag_idempotent(field, n, r))];
    for _ in 0..k {
        let mut y = Mat::zeros(field, n, n);
        for i in 0..r {
            for j in 0..r {
                let allowed = match shape {
                    CornerShape::Dense => true,
                    CornerShape::Upper => i <= j,
                    CornerShape::Diagonal => i == j,
                };
                if allowed && rng.chance(1, 2) {
                    y.set(i, j, Scalar::from_int(field, rng.int(-bound, bound)));
                }
            }
        }
        gens.push(g.apply(&y));
    }
    Subalgebra::closure(&Subspace::span_unchecked(field, n, gens))
}

/// `A = I + E_{n,n-1}`.
pub fn shear(field: Field, n: usize) -> Mat {
    assert!(n >= 2, "shear needs n >= 2");
    &Mat::identity(field, n) + &Mat::unit(field, n, n - 1, n - 2)
}

/// The unital pair `(M[R_n, C_n], A^{-1} M[R_n, C_n] A)` with `A = I + E_{n,n-1}`,
/// whose intersection is `W`.
pub fn extremal_pair(field: Field, n: usize) -> Result<(Subalgebra, Subalgebra)> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n, 3));
    }
    let u = canonical_algebra(field, &CanonicalSpec::corner(n))?;
    let v = u.conjugate(&shear(field, n))?;
    Ok((u, v))
}

/// `diag(g', 1)` for a random invertible `g'` of size `n - 1`; these
/// conjugators preserve `P`.
pub fn random_block_conjugator(n: usize, bound: i64, rng: &mut Rng) -> Conjugator {
    random_conjugator(n - 1, bound, rng).extend_by_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UnityStatus;
    use crate::canonical::{canonical, CanonicalTag};
    use crate::structure::idempotent_normal_form;

    #[test]
    fn invertible_samples() {
        let mut rng = Rng::new(5);
        let m = random_invertible(1, 1, &mut rng);
        assert!(!m.get(0, 0).is_zero());
        let a = random_invertible(3, 3, &mut Rng::new(42));
        let b = random_invertible(3, 3, &mut Rng::new(42));
        assert_eq!(a, b);
        assert_eq!(rank(&a), 3);
    }

    #[test]
    fn idempotent_samples() {
        let mut rng = Rng::new(9);
        assert!(random_idempotent(3, 0, &mut rng).is_zero());
        assert!(random_idempotent(3, 3, &mut rng).is_identity());
        let e = random_idempotent(3, 1, &mut rng);
        assert_eq!(&e * &e, e);
        assert_eq!(rank(&e), 1);
    }

    #[test]
    fn subalgebra_samples() {
        let mut rng = Rng::new(3);
        assert!(random_subalgebra(3, 0, 2, &mut rng, None).space().is_zero());
        let p = canonical(CanonicalTag::ParabolicP, 3).unwrap();
        for _ in 0..10 {
            let b = random_subalgebra(3, 2, 2, &mut rng, Some(&p));
            assert!(b.space().is_subspace_of(p.space()));
        }
        let a = random_subalgebra(3, 2, 2, &mut Rng::new(11), None);
        let b = random_subalgebra(3, 2, 2, &mut Rng::new(11), None);
        assert_eq!(a, b);
    }

    #[test]
    fn unital_samples() {
        let mut rng = Rng::new(17);
        let u = random_unital_subalgebra(3, 3, 0, 2, &mut rng);
        assert_eq!(u.space(), &Subspace::span(Field::Rationals, 3, &[Mat::identity(Field::Rationals, 3)]).unwrap());
        let corner = canonical_algebra(Field::Rationals, &CanonicalSpec::corner(3)).unwrap();
        for _ in 0..10 {
            let u = random_unital_subalgebra(3, 2, 2, 2, &mut rng);
            let summary = u.unity_summary();
            assert_eq!(summary.status, UnityStatus::UnitalProper);
            let form = idempotent_normal_form(&summary.two_sided.unwrap()).unwrap();
            assert_eq!(form.rank, 2);
            assert!(u.conjugate_by(&form.conj).space().is_subspace_of(corner.space()));
        }
    }

    #[test]
    fn extremal_pair_meets_in_w() {
        for field in [Field::Rationals, Field::prime(5).unwrap()] {
            for n in 3..=5 {
                let (u, v) = extremal_pair(field, n).unwrap();
                let w = canonical_algebra(field, &CanonicalSpec::new(CanonicalTag::W, n)).unwrap();
                assert_eq!(u.intersect(&v).unwrap(), w);
            }
        }
        assert_eq!(extremal_pair(Field::Rationals, 2), Err(Error::DimensionTooSmall(2, 3)));
    }
}
