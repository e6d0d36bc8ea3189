mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn rank_nullity(m in rect()) {
        prop_rank_nullity(&m)?;
    }

    #[test]
    fn rref_is_idempotent(m in rect()) {
        prop_rref_idempotent(&m)?;
    }

    #[test]
    fn invert_matches_determinant(m in (1usize..=4).prop_flat_map(square)) {
        prop_invert(&m)?;
    }

    #[test]
    fn structured_invertibles_invert(m in (1usize..=4).prop_flat_map(invertible)) {
        prop_invert(&m)?;
        prop_assert_eq!(rank_by_minors(&m), m.rows());
    }

    #[test]
    fn grassmann((n, a, b) in (1usize..=3).prop_flat_map(|n| (Just(n), generators(n, 5), generators(n, 5)))) {
        prop_grassmann(n, &a, &b)?;
    }

    #[test]
    fn closure_laws((n, a, extra) in (1usize..=3).prop_flat_map(|n| (Just(n), generators(n, 3), generators(n, 1)))) {
        prop_closure(n, &a, &extra)?;
    }

    #[test]
    fn conjugation_and_transpose(
        (n, a, b, g) in (2usize..=3).prop_flat_map(|n| (Just(n), generators(n, 2), generators(n, 2), invertible(n)))
    ) {
        prop_conjugation(n, &a, &b, &g)?;
    }
}
