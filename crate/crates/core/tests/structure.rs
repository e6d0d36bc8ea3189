mod common;

use common::Q;
use nonunital_core::search::{extremal_pair, random_conjugator, random_idempotent, Rng};
use nonunital_core::structure::{
    classify_gamma_max, classify_omega_max, gamma_bound_check, idempotent_normal_form, in_omega, jacobson_radical,
    nilpotency_index, radical_frame, recognize_max_nonunital, recognize_parabolic, FrameCase, WitnessKind,
};
use nonunital_core::{
    canonical, canonical_algebra, CanonicalSpec, CanonicalTag, Error, Field, Mat, Subalgebra, UnityStatus,
};

#[test]
fn radical_is_conjugation_equivariant() {
    let mut rng = Rng::new(1);
    for tag in [CanonicalTag::ParabolicP, CanonicalTag::UpperTriangular, CanonicalTag::W, CanonicalTag::OmegaMaxRow] {
        let a = canonical(tag, 4).unwrap();
        let g = random_conjugator(4, 3, &mut rng);
        let moved = jacobson_radical(&a.conjugate_by(&g)).unwrap();
        assert_eq!(moved, jacobson_radical(&a).unwrap().map(|x| g.apply(x)));
        assert!(nilpotency_index(&moved).is_some());
    }
}

#[test]
fn parabolic_radical_dimensions() {
    for n in 2..=6 {
        let p = canonical(CanonicalTag::ParabolicP, n).unwrap();
        let rad = jacobson_radical(&p).unwrap();
        assert_eq!(rad.dim(), n - 1);
        assert_eq!(rad, FrameCase::CommonFunctional.target(Q, n));
        assert_eq!(nilpotency_index(&rad), Some(2));
        assert!(jacobson_radical(&Subalgebra::full(Q, n)).unwrap().is_zero());
    }
}

#[test]
fn frame_of_transposed_parabolic_radical() {
    let pt = canonical(CanonicalTag::ParabolicPTranspose, 4).unwrap();
    let frame = radical_frame(&jacobson_radical(&pt).unwrap()).unwrap();
    assert_eq!(frame.case, FrameCase::CommonVector);
}

#[test]
fn extremal_pair_is_tight_and_normalizes_into_corner() {
    for n in 3..=5 {
        let (u, v) = extremal_pair(Q, n).unwrap();
        let report = gamma_bound_check(&u, &v).unwrap();
        assert!(report.is_gamma && report.tight(), "{report}");
        let trace = report.trace.unwrap();
        assert!(trace.factor_in_corner);
        assert_eq!(trace.rank, n - 1);
        let w = classify_gamma_max(&u.intersect(&v).unwrap()).unwrap();
        assert_eq!(w.kind, WitnessKind::GammaW);
    }
}

#[test]
fn unital_pairs_with_unital_intersection_are_not_gamma() {
    let u = canonical(CanonicalTag::UpperTriangular, 3).unwrap();
    let v = u.transpose();
    let report = gamma_bound_check(&u, &v).unwrap();
    assert!(!report.is_gamma);
    assert_eq!(report.to_string(), "not in Γ, dim 3");
}

#[test]
fn random_idempotents_normalize() {
    let mut rng = Rng::new(2);
    for n in 1..=4 {
        for r in 0..=n {
            let e = random_idempotent(n, r, &mut rng);
            let form = idempotent_normal_form(&e).unwrap();
            assert_eq!(form.rank, r);
            assert_eq!(form.conj.apply(&e), Mat::diag_idempotent(Q, n, r));
        }
    }
}

#[test]
fn max_nonunital_recognition_and_transpose() {
    let mut rng = Rng::new(3);
    for n in 2..=4 {
        let g = random_conjugator(n, 2, &mut rng);
        let row = canonical(CanonicalTag::RowAlgebra, n).unwrap().conjugate_by(&g);
        let w = recognize_max_nonunital(&row).unwrap();
        assert_eq!(w.kind, WitnessKind::RowAlgebra);
        let w = recognize_max_nonunital(&row.transpose()).unwrap();
        assert_eq!(w.kind, WitnessKind::ColumnAlgebra);
        assert!(w.verify(&row.transpose()).unwrap());
    }
    let p = canonical(CanonicalTag::ParabolicP, 3).unwrap();
    assert!(matches!(recognize_max_nonunital(&p), Err(Error::NotMaxNonunital(_))));
}

#[test]
fn omega_membership_and_rejections() {
    let n = 4;
    let p = canonical(CanonicalTag::ParabolicP, n).unwrap();
    let row = canonical(CanonicalTag::RowAlgebra, n).unwrap();
    let ut = canonical(CanonicalTag::UpperTriangular, n).unwrap();
    assert!(!in_omega(&p).unwrap());
    assert!(!in_omega(&row).unwrap());
    assert!(in_omega(&ut).unwrap());
    assert!(matches!(classify_omega_max(&ut), Err(Error::NotOmegaMax(_))));
    assert!(matches!(classify_omega_max(&Subalgebra::full(Q, n)), Err(Error::NotInOmega(_))));
    for tag in [CanonicalTag::OmegaMaxColumn, CanonicalTag::OmegaMaxRow] {
        let b = canonical(tag.clone(), n).unwrap();
        assert!(in_omega(&b).unwrap());
        assert_eq!(classify_omega_max(&b).unwrap().kind.target_tag(), tag);
    }
}

#[test]
fn parabolic_recognition_refuses_other_algebras() {
    let ut = canonical(CanonicalTag::UpperTriangular, 3).unwrap();
    assert!(recognize_parabolic(&ut).is_err());
    let p5 = canonical_algebra(Field::prime(5).unwrap(), &CanonicalSpec::new(CanonicalTag::ParabolicP, 3)).unwrap();
    assert!(matches!(recognize_parabolic(&p5), Err(Error::WrongCharacteristic(_))));
}

#[test]
fn prime_field_intersection_matches_w() {
    for p in [5, 7] {
        let f = Field::prime(p).unwrap();
        for n in 3..=5 {
            let (u, v) = extremal_pair(f, n).unwrap();
            let nn = u.intersect(&v).unwrap();
            assert_eq!(nn, canonical_algebra(f, &CanonicalSpec::new(CanonicalTag::W, n)).unwrap());
            let s = nn.unity_summary();
            assert_eq!(s.status, UnityStatus::Nonunital);
            assert!(s.right_identities.is_none());
        }
    }
}
