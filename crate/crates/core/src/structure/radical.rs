use crate::algebra::Subalgebra;
use crate::error::{Error, Result};
use crate::linalg::kernel_basis;
use crate::matrix::Mat;
use crate::scalar::Field;
use crate::subspace::Subspace;

/// Jacobson radical of a subalgebra of `M_n(Q)`.
///
/// In characteristic zero the radical is the kernel of the trace form
/// `(x, y) -> tr(xy)` restricted to the algebra. The result is certified
/// before it is returned: it must be a two-sided ideal and nilpotent.
pub fn jacobson_radical(a: &Subalgebra) -> Result<Subspace> {
    let field = a.field();
    if field != Field::Rationals {
        return Err(Error::WrongCharacteristic(field));
    }
    let basis = a.basis();
    let d = basis.len();
    let n = a.n();
    if d == 0 {
        return Ok(Subspace::zero(field, n));
    }
    let gram = Mat::from_fn(field, d, d, |k, l| (&basis[k] * &basis[l]).trace());
    let rad = Subspace::span_unchecked(field, n, kernel_basis(&gram).into_iter().map(|c| a.space().combine_mat(&c)));
    certify_radical(a, &rad)?;
    Ok(rad)
}

fn certify_radical(a: &Subalgebra, rad: &Subspace) -> Result<()> {
    for x in rad.basis() {
        for y in a.basis() {
            if !rad.contains(&(x * y)) || !rad.contains(&(y * x)) {
                return Err(Error::CertificationFailed("radical is not a two-sided ideal".into()));
            }
        }
    }
    match nilpotency_index(rad) {
        Some(_) => Ok(()),
        None => Err(Error::CertificationFailed("radical is not nilpotent".into())),
    }
}

/// Smallest `k` with `J^k = 0`, searched up to `dim J + 1`.
pub fn nilpotency_index(j: &Subspace) -> Option<usize> {
    if j.is_zero() {
        return Some(1);
    }
    let mut power = j.clone();
    for k in 2..=j.dim() + 1 {
        power = Subspace::span_unchecked(
            j.field(),
            j.n(),
            power.basis().iter().flat_map(|x| j.basis().iter().map(move |y| x * y)),
        );
        if power.is_zero() {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{canonical, CanonicalTag};

    const Q: Field = Field::Rationals;

    #[test]
    fn simple_algebra_has_zero_radical() {
        for n in 1..=4 {
            assert!(jacobson_radical(&Subalgebra::full(Q, n)).unwrap().is_zero());
        }
    }

    #[test]
    fn radical_of_parabolic() {
        // Hand solution of the trace form over P (n=3): x = sum x_ij E_ij over P's support;
        // tr(x E_ji) = x_ij for every (j,i) also in P. Positions (i,j) with (j,i) in P are
        // forced to zero, which leaves exactly (1,3) and (2,3).
        let p = canonical(CanonicalTag::ParabolicP, 3).unwrap();
        let rad = jacobson_radical(&p).unwrap();
        assert_eq!(rad, Subspace::from_positions(Q, 3, [(0, 2), (1, 2)]));
        assert_eq!(nilpotency_index(&rad), Some(2));
    }

    #[test]
    fn radical_of_upper_triangular() {
        let b = canonical(CanonicalTag::UpperTriangular, 3).unwrap();
        let rad = jacobson_radical(&b).unwrap();
        assert_eq!(rad, canonical(CanonicalTag::StrictlyUpperTriangular, 3).unwrap().into_space());
        assert_eq!(nilpotency_index(&rad), Some(3));
    }

    #[test]
    fn nonunital_algebra_radical() {
        // W is E_{1,1}-generated on the left: rad(W) = span{E_{i,n-1}}.
        let w = canonical(CanonicalTag::W, 4).unwrap();
        let rad = jacobson_radical(&w).unwrap();
        assert_eq!(rad, Subspace::from_positions(Q, 4, [(0, 2), (1, 2)]));
    }

    #[test]
    fn refuses_prime_fields() {
        let a = Subalgebra::full(Field::Prime(5), 2);
        assert_eq!(jacobson_radical(&a), Err(Error::WrongCharacteristic(Field::Prime(5))));
    }
}
