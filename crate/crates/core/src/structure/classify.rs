//! Constructive classifiers. Each one builds a conjugator from the structure
//! of its input and then certifies it by exact subspace equality against a
//! canonical algebra, so a wrong intermediate choice can only lead to a
//! rejection, never to a false acceptance.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{unit_vector, CompressMode, Subalgebra, UnityStatus};
use crate::canonical::{canonical_algebra, CanonicalSpec, CanonicalTag};
use crate::conjugator::Conjugator;
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};
use crate::structure::frame::{radical_frame_case, FrameCase};
use crate::structure::idempotent::idempotent_normal_form;
use crate::structure::radical::jacobson_radical;
use crate::subspace::Subspace;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    GammaW,
    GammaWTranspose,
    RowAlgebra,
    ColumnAlgebra,
    ParabolicP,
    ParabolicPTranspose,
    OmegaMaxColumn,
    OmegaMaxRow,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 8] = [
        WitnessKind::GammaW,
        WitnessKind::GammaWTranspose,
        WitnessKind::RowAlgebra,
        WitnessKind::ColumnAlgebra,
        WitnessKind::ParabolicP,
        WitnessKind::ParabolicPTranspose,
        WitnessKind::OmegaMaxColumn,
        WitnessKind::OmegaMaxRow,
    ];

    pub fn target_tag(self) -> CanonicalTag {
        match self {
            WitnessKind::GammaW => CanonicalTag::W,
            WitnessKind::GammaWTranspose => CanonicalTag::WTranspose,
            WitnessKind::RowAlgebra => CanonicalTag::RowAlgebra,
            WitnessKind::ColumnAlgebra => CanonicalTag::ColumnAlgebra,
            WitnessKind::ParabolicP => CanonicalTag::ParabolicP,
            WitnessKind::ParabolicPTranspose => CanonicalTag::ParabolicPTranspose,
            WitnessKind::OmegaMaxColumn => CanonicalTag::OmegaMaxColumn,
            WitnessKind::OmegaMaxRow => CanonicalTag::OmegaMaxRow,
        }
    }

    pub fn target(self, n: usize) -> CanonicalSpec {
        CanonicalSpec::new(self.target_tag(), n)
    }

    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::GammaW => "GammaW",
            WitnessKind::GammaWTranspose => "GammaWTranspose",
            WitnessKind::RowAlgebra => "RowAlgebra",
            WitnessKind::ColumnAlgebra => "ColumnAlgebra",
            WitnessKind::ParabolicP => "ParabolicP",
            WitnessKind::ParabolicPTranspose => "ParabolicPTranspose",
            WitnessKind::OmegaMaxColumn => "OmegaMaxColumn",
            WitnessKind::OmegaMaxRow => "OmegaMaxRow",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<WitnessKind> {
        WitnessKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown witness kind {s:?}")))
    }
}

/// `conj.apply` maps the classified input exactly onto `kind`'s canonical algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationWitness {
    pub kind: WitnessKind,
    pub conj: Conjugator,
    pub certified: bool,
}

impl ClassificationWitness {
    /// Re-run the certification on `input` from scratch.
    pub fn verify(&self, input: &Subalgebra) -> Result<bool> {
        if self.conj.n() != input.n() {
            return Ok(false);
        }
        let target = canonical_algebra(input.field(), &self.kind.target(input.n()))?;
        Ok(input.conjugate_by(&self.conj) == target)
    }
}

/// Conjugate and compare; the only way a witness gets `certified = true`.
fn certify(input: &Subalgebra, kind: WitnessKind, conj: Conjugator) -> Result<ClassificationWitness> {
    let target = canonical_algebra(input.field(), &kind.target(input.n()))?;
    if input.conjugate_by(&conj) == target {
        Ok(ClassificationWitness { kind, conj, certified: true })
    } else {
        Err(Error::CertificationFailed(format!("conjugate is not {}", kind.target(input.n()))))
    }
}

fn require_rationals(a: &Subalgebra) -> Result<()> {
    match a.field() {
        Field::Rationals => Ok(()),
        f => Err(Error::WrongCharacteristic(f)),
    }
}

/// Columns `[first | completion | last]` where the completion vectors are the
/// first standard basis vectors outside the span built so far.
fn complete_basis(field: Field, n: usize, first: &[Vec<Scalar>], last: &[Vec<Scalar>]) -> Option<Mat> {
    let mut eb = EchelonBasis::new(field, n);
    for v in first.iter().chain(last) {
        if !eb.insert(v.clone()) {
            return None;
        }
    }
    let mut middle = Vec::new();
    for k in 0..n {
        if eb.dim() == n {
            break;
        }
        let e = unit_vector(field, n, k);
        if eb.insert(e.clone()) {
            middle.push(e);
        }
    }
    let columns: Vec<Vec<Scalar>> = first.iter().chain(&middle).chain(last).cloned().collect();
    Some(Mat::from_columns(field, n, &columns))
}

/// Recognize a conjugate of `P = M[R_n] + K E_{n,n}` or of `P^T`.
///
/// The Jacobson radical of such an algebra is a rank-one square-zero frame of
/// dimension `n - 1`; conjugating it to `span{E_{i,n}}` (resp. `span{E_{n,i}}`)
/// forces the algebra into its normalizer, which is `P` (resp. `P^T`).
pub fn recognize_parabolic(l: &Subalgebra) -> Result<ClassificationWitness> {
    require_rationals(l)?;
    let n = l.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n, 2));
    }
    let expected = n * n - n + 1;
    if l.dim() != expected {
        return Err(Error::NotParabolic(format!("dimension {} != n^2 - n + 1 = {expected}", l.dim())));
    }
    let rad = jacobson_radical(l).map_err(|e| Error::NotParabolic(e.to_string()))?;
    if rad.dim() != n - 1 {
        return Err(Error::NotParabolic(format!("radical has dimension {} != n - 1", rad.dim())));
    }
    let mut reasons = Vec::new();
    for (case, kind) in [
        (FrameCase::CommonFunctional, WitnessKind::ParabolicP),
        (FrameCase::CommonVector, WitnessKind::ParabolicPTranspose),
    ] {
        match radical_frame_case(&rad, case).and_then(|conj| certify(l, kind, conj)) {
            Ok(w) => return Ok(w),
            Err(e) => reasons.push(format!("{case}: {e}")),
        }
    }
    Err(Error::NotParabolic(reasons.join("; ")))
}

/// Route for `M[R_n]`: the joint image is a hyperplane `U`, and any basis
/// change sending `U` to `span{e_1..e_{n-1}}` carries `l` into `M[R_n]`.
fn row_route(l: &Subalgebra) -> Result<Conjugator> {
    let n = l.n();
    let image = l.joint_image();
    if image.dim() != n - 1 {
        return Err(Error::NotMaxNonunital(format!("joint image has dimension {}", image.dim())));
    }
    let h = complete_basis(l.field(), n, image.rows(), &[]).expect("echelon rows are independent");
    Conjugator::new(h)
}

/// Recognize a maximum-dimension nonunital subalgebra: a conjugate of `M[R_n]` or `M[C_n]`.
pub fn recognize_max_nonunital(l: &Subalgebra) -> Result<ClassificationWitness> {
    let n = l.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n, 2));
    }
    if l.dim() != n * (n - 1) {
        return Err(Error::NotMaxNonunital(format!("dimension {} != n(n-1) = {}", l.dim(), n * (n - 1))));
    }
    if l.unity_summary().status != UnityStatus::Nonunital {
        return Err(Error::NotMaxNonunital("algebra has a unity".into()));
    }
    let mut reasons = Vec::new();
    match row_route(l).and_then(|c| certify(l, WitnessKind::RowAlgebra, c)) {
        Ok(w) => return Ok(w),
        Err(e) => reasons.push(format!("row route: {e}")),
    }
    match row_route(&l.transpose()).and_then(|c| certify(l, WitnessKind::ColumnAlgebra, c.transpose_dual())) {
        Ok(w) => return Ok(w),
        Err(e) => reasons.push(format!("column route: {e}")),
    }
    Err(Error::NotMaxNonunital(reasons.join("; ")))
}

/// Route for `W = M[R_n, R_{n-1}, C_n]`: joint image `U` of dimension `n - 2`,
/// joint kernel `Z` of dimension 1, `U ∩ Z = 0`; `h = [U | completion | Z]`.
fn gamma_route(nn: &Subalgebra) -> Result<Conjugator> {
    let n = nn.n();
    let image = nn.joint_image();
    let kernel = nn.joint_kernel();
    if image.dim() != n - 2 || kernel.len() != 1 {
        return Err(Error::NotGammaMax(format!(
            "(dim image, dim kernel) = ({}, {}) != ({}, 1)",
            image.dim(),
            kernel.len(),
            n - 2
        )));
    }
    let h = complete_basis(nn.field(), n, image.rows(), &kernel)
        .ok_or_else(|| Error::NotGammaMax("joint image meets joint kernel".into()))?;
    Conjugator::new(h)
}

/// Classify a maximum-dimension nonunital intersection as a conjugate of `W` or `W^T`.
pub fn classify_gamma_max(nn: &Subalgebra) -> Result<ClassificationWitness> {
    let n = nn.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n, 3));
    }
    let expected = (n - 1) * (n - 2);
    if nn.dim() != expected {
        return Err(Error::NotGammaMax(format!("dimension {} != (n-1)(n-2) = {expected}", nn.dim())));
    }
    if nn.unity_summary().status != UnityStatus::Nonunital {
        return Err(Error::NotGammaMax("algebra has a unity".into()));
    }
    let mut reasons = Vec::new();
    match gamma_route(nn).and_then(|c| certify(nn, WitnessKind::GammaW, c)) {
        Ok(w) => return Ok(w),
        Err(e) => reasons.push(format!("W route: {e}")),
    }
    match gamma_route(&nn.transpose()).and_then(|c| certify(nn, WitnessKind::GammaWTranspose, c.transpose_dual())) {
        Ok(w) => return Ok(w),
        Err(e) => reasons.push(format!("W^T route: {e}")),
    }
    Err(Error::NotGammaMax(reasons.join("; ")))
}

/// The normalization performed when one factor of a pair has a unity `e != I`:
/// `S^{-1} e S = D_r`, and then all three algebras are conjugated by `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationTrace {
    /// Which factor (0 = u, 1 = v) carried the proper unity.
    pub factor: usize,
    pub unity: Mat,
    pub rank: usize,
    pub conj: Conjugator,
    pub u: Subalgebra,
    pub v: Subalgebra,
    pub intersection: Subalgebra,
    /// The conjugated factor lies in `M[R_n, C_n]`.
    pub factor_in_corner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub is_gamma: bool,
    pub dim: usize,
    /// `(n-1)(n-2)`.
    pub bound: usize,
    pub bound_ok: bool,
    pub trace: Option<NormalizationTrace>,
}

impl GammaReport {
    pub fn tight(&self) -> bool {
        self.is_gamma && self.dim == self.bound
    }
}

impl fmt::Display for GammaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_gamma {
            return write!(f, "not in Γ, dim {}", self.dim);
        }
        let verdict = if !self.bound_ok {
            "VIOLATED"
        } else if self.tight() {
            "TIGHT"
        } else {
            "ok"
        };
        write!(f, "in Γ, dim {}, bound {}: {verdict}", self.dim, self.bound)
    }
}

/// Decide whether `u ∩ v` is a nonunital intersection and check its dimension bound.
pub fn gamma_bound_check(u: &Subalgebra, v: &Subalgebra) -> Result<GammaReport> {
    u.space().same_ambient(v.space())?;
    let n = u.n();
    let bound = n.saturating_sub(1) * n.saturating_sub(2);
    let nn = u.intersect(v)?;
    let uu = u.unity_summary();
    let vu = v.unity_summary();
    let is_gamma = uu.is_unital() && vu.is_unital() && nn.unity_summary().status == UnityStatus::Nonunital;
    let trace = if is_gamma {
        let (factor, e) = if uu.status == UnityStatus::UnitalProper {
            (0, uu.two_sided.clone().expect("unital"))
        } else {
            (1, vu.two_sided.clone().expect("unital"))
        };
        let form = idempotent_normal_form(&e)?;
        let cu = u.conjugate_by(&form.conj);
        let cv = v.conjugate_by(&form.conj);
        let cn = nn.conjugate_by(&form.conj);
        let corner = canonical_algebra(u.field(), &CanonicalSpec::corner(n))?;
        let factor_in_corner = if factor == 0 { &cu } else { &cv }.space().is_subspace_of(corner.space());
        Some(NormalizationTrace {
            factor,
            unity: e,
            rank: form.rank,
            conj: form.conj,
            u: cu,
            v: cv,
            intersection: cn,
            factor_in_corner,
        })
    } else {
        None
    };
    Ok(GammaReport { is_gamma, dim: nn.dim(), bound, bound_ok: !is_gamma || nn.dim() <= bound, trace })
}

/// `P = M[R_n] + K E_{n,n}`, `M[R_n]` and `span{E_{i,n}} = M E_{n,n}` at size `n`.
fn omega_context(field: Field, n: usize) -> Result<(Subalgebra, Subalgebra, Subspace)> {
    let p = canonical_algebra(field, &CanonicalSpec::new(CanonicalTag::ParabolicP, n))?;
    let row = canonical_algebra(field, &CanonicalSpec::new(CanonicalTag::RowAlgebra, n))?;
    let last_column = Subspace::from_positions(field, n, (0..n).map(|i| (i, n - 1)));
    Ok((p, row, last_column))
}

/// Is `b` a member of Omega, i.e. a proper subalgebra of `P` other than `M[R_n]`?
pub fn in_omega(b: &Subalgebra) -> Result<bool> {
    let (p, row, _) = omega_context(b.field(), b.n())?;
    Ok(b.space().is_subspace_of(p.space()) && b != &p && b != &row)
}

/// Classify a maximum-dimension member of Omega.
///
/// Writes `b = b e + M E_{n,n}` with `e = D_{n-1}`, recognizes the corner of
/// `b e` as a parabolic of `M_{n-1}`, and lifts that conjugator to
/// `S = diag(S', 1)`; the reversal permutation turns a `P^T`-type corner into
/// the `P' = M[C_1] + K E_{1,1}` shape used by the column form. The
/// column form is tried before the row form (they coincide at `n = 3`).
pub fn classify_omega_max(b: &Subalgebra) -> Result<ClassificationWitness> {
    require_rationals(b)?;
    let n = b.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n, 3));
    }
    let field = b.field();
    let (p, row, last_column) = omega_context(field, n)?;
    if !b.space().is_subspace_of(p.space()) {
        return Err(Error::NotInOmega("not contained in P".into()));
    }
    if b == &p {
        return Err(Error::NotInOmega("equals P".into()));
    }
    if b == &row {
        return Err(Error::NotInOmega("equals M[R_n]".into()));
    }
    let expected = n * n - 2 * n + 3;
    if b.dim() != expected {
        return Err(Error::NotOmegaMax(format!("dimension {} != n^2 - 2n + 3 = {expected}", b.dim())));
    }
    let e = Mat::diag_idempotent(field, n, n - 1);
    let be = b.compress(&e, CompressMode::Right).map_err(|err| Error::NotOmegaMax(err.to_string()))?;
    if be.space().sum(&last_column)? != *b.space() {
        return Err(Error::NotOmegaMax("b != b e + M E_{n,n}".into()));
    }
    let corner = be.corner().map_err(|err| Error::NotOmegaMax(err.to_string()))?;
    let corner_witness = recognize_parabolic(&corner).map_err(|err| Error::NotOmegaMax(err.to_string()))?;
    let corner_conj = match corner_witness.kind {
        WitnessKind::ParabolicP => corner_witness.conj,
        _ => {
            corner_witness.conj.then(&Conjugator::from_pair(Mat::reversal(field, n - 1), Mat::reversal(field, n - 1))?)
        }
    };
    let s = corner_conj.extend_by_one();
    let mut reasons = Vec::new();
    for kind in [WitnessKind::OmegaMaxColumn, WitnessKind::OmegaMaxRow] {
        match certify(b, kind, s.clone()) {
            Ok(w) => return Ok(w),
            Err(err) => reasons.push(format!("{kind}: {err}")),
        }
    }
    Err(Error::NotOmegaMax(reasons.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical;

    const Q: Field = Field::Rationals;

    fn conj(rows: &[[i64; 3]]) -> Conjugator {
        Conjugator::new(Mat::from_ints(Q, rows)).unwrap()
    }

    fn g3() -> Conjugator {
        conj(&[[1, 2, 0], [0, 1, -1], [3, 0, 1]])
    }

    #[test]
    fn parabolic_recognition() {
        let p = canonical(CanonicalTag::ParabolicP, 3).unwrap();
        let w = recognize_parabolic(&p).unwrap();
        assert_eq!(w.kind, WitnessKind::ParabolicP);
        assert!(w.conj.is_identity());
        assert!(w.certified);

        let pt = canonical(CanonicalTag::ParabolicPTranspose, 3).unwrap().conjugate_by(&g3());
        let w = recognize_parabolic(&pt).unwrap();
        assert_eq!(w.kind, WitnessKind::ParabolicPTranspose);
        assert!(w.verify(&pt).unwrap());

        assert!(matches!(recognize_parabolic(&Subalgebra::full(Q, 3)), Err(Error::NotParabolic(_))));
    }

    #[test]
    fn max_nonunital_recognition() {
        let r3 = canonical(CanonicalTag::RowAlgebra, 3).unwrap();
        let w = recognize_max_nonunital(&r3).unwrap();
        assert_eq!(w.kind, WitnessKind::RowAlgebra);
        assert!(w.conj.is_identity());

        // M_2[C_1] = span{E12, E22}: E22 is a right identity but not a left one.
        let m2c1 = Subalgebra::certify(Subspace::from_positions(Q, 2, [(0, 1), (1, 1)])).unwrap();
        let u = m2c1.unity_summary();
        assert_eq!(u.status, UnityStatus::Nonunital);
        assert!(u.right_identities.unwrap().contains(&Mat::unit(Q, 2, 1, 1)));
        let w = recognize_max_nonunital(&m2c1).unwrap();
        assert_eq!(w.kind, WitnessKind::ColumnAlgebra);
        assert!(w.verify(&m2c1).unwrap());

        let c = canonical(CanonicalTag::ColumnAlgebra, 3).unwrap().conjugate_by(&g3());
        assert_eq!(recognize_max_nonunital(&c).unwrap().kind, WitnessKind::ColumnAlgebra);

        let p = canonical(CanonicalTag::ParabolicP, 3).unwrap();
        assert!(matches!(recognize_max_nonunital(&p), Err(Error::NotMaxNonunital(_))));
    }

    #[test]
    fn gamma_classification() {
        let w3 = canonical(CanonicalTag::W, 3).unwrap();
        let wit = classify_gamma_max(&w3).unwrap();
        assert_eq!(wit.kind, WitnessKind::GammaW);
        assert!(wit.conj.is_identity());

        let wt = canonical(CanonicalTag::WTranspose, 3).unwrap().conjugate_by(&g3());
        let wit = classify_gamma_max(&wt).unwrap();
        assert_eq!(wit.kind, WitnessKind::GammaWTranspose);
        assert!(wit.verify(&wt).unwrap());

        // Strictly upper triangular at n = 4: nonunital of dimension 6 = (n-1)(n-2), not in Gamma.
        let n4 = canonical(CanonicalTag::StrictlyUpperTriangular, 4).unwrap();
        assert!(matches!(classify_gamma_max(&n4), Err(Error::NotGammaMax(_))));
        let corner = canonical_algebra(Q, &CanonicalSpec::corner(4)).unwrap();
        assert!(matches!(classify_gamma_max(&corner), Err(Error::NotGammaMax(_))));
        assert_eq!(classify_gamma_max(&Subalgebra::zero(Q, 2)), Err(Error::DimensionTooSmall(2, 3)));
    }

    #[test]
    fn lemma_pair_is_tight() {
        let n = 3;
        let u = canonical_algebra(Q, &CanonicalSpec::corner(n)).unwrap();
        let mut a = Mat::identity(Q, n);
        a.set(n - 1, n - 2, Scalar::one(Q));
        let a_inv = crate::linalg::invert(&a).unwrap();
        // A u A^{-1} is conjugation by A^{-1} in the S^{-1} X S convention.
        let v = u.conjugate(&a_inv).unwrap();
        let report = gamma_bound_check(&u, &v).unwrap();
        assert!(report.is_gamma);
        assert_eq!(report.dim, 2);
        assert!(report.tight());
        assert_eq!(report.to_string(), "in Γ, dim 2, bound 2: TIGHT");
        let trace = report.trace.unwrap();
        assert!(trace.factor_in_corner);
        assert_eq!(trace.rank, 2);

        let full = Subalgebra::full(Q, 3);
        let r = gamma_bound_check(&full, &full).unwrap();
        assert!(!r.is_gamma);
        assert!(r.bound_ok);
    }

    #[test]
    fn omega_classification() {
        let row4 = canonical(CanonicalTag::OmegaMaxRow, 4).unwrap();
        let w = classify_omega_max(&row4).unwrap();
        assert_eq!(w.kind, WitnessKind::OmegaMaxRow);
        assert!(w.conj.is_identity());
        assert_eq!(row4.dim(), 11);

        let col4 = canonical(CanonicalTag::OmegaMaxColumn, 4).unwrap();
        assert_eq!(classify_omega_max(&col4).unwrap().kind, WitnessKind::OmegaMaxColumn);

        let ut = canonical(CanonicalTag::UpperTriangular, 3).unwrap();
        assert_eq!(classify_omega_max(&ut).unwrap().kind, WitnessKind::OmegaMaxColumn);

        let p = canonical(CanonicalTag::ParabolicP, 3).unwrap();
        assert!(matches!(classify_omega_max(&p), Err(Error::NotInOmega(_))));
        let r = canonical(CanonicalTag::RowAlgebra, 3).unwrap();
        assert!(matches!(classify_omega_max(&r), Err(Error::NotInOmega(_))));
        assert!(matches!(classify_omega_max(&Subalgebra::full(Q, 3)), Err(Error::NotInOmega(_))));
        let corner = canonical_algebra(Q, &CanonicalSpec::corner(4)).unwrap();
        assert!(matches!(classify_omega_max(&corner), Err(Error::NotOmegaMax(_))));
    }

    #[test]
    fn omega_round_trip_under_block_conjugation() {
        let s0 = g3().extend_by_one();
        for tag in [CanonicalTag::OmegaMaxColumn, CanonicalTag::OmegaMaxRow] {
            let b = canonical(tag.clone(), 4).unwrap().conjugate_by(&s0);
            let w = classify_omega_max(&b).unwrap();
            assert_eq!(w.kind.target_tag(), tag);
            assert!(w.verify(&b).unwrap());
        }
    }

    #[test]
    fn witness_kind_names_parse() {
        for k in WitnessKind::ALL {
            assert_eq!(k.name().parse::<WitnessKind>().unwrap(), k);
        }
    }
}
