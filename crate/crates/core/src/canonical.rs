//! The named algebras: zero patterns `M[R_i, .., C_j, ..]`, the maximal
//! parabolic `P = M[R_n] + K E_{n,n}`, the nonunital intersection
//! `W = M[R_n, R_{n-1}, C_n]` and the two maximum-dimension members of Omega.
//!
//! Indices in this module are 1-based, matching the usual `E_{i,j}` notation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebra::Subalgebra;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Field;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalTag {
    Full,
    /// `M[R_i.., C_j..]`: rows `rows` and columns `cols` are zero.
    ZeroPattern {
        rows: BTreeSet<usize>,
        cols: BTreeSet<usize>,
    },
    /// `M[R_n] + K E_{n,n}`
    ParabolicP,
    /// `M[C_1] + K E_{1,1}`
    ParabolicPPrime,
    /// `M[C_n] + K E_{n,n}`
    ParabolicPTranspose,
    /// `M[R_n]`
    RowAlgebra,
    /// `M[C_n]`
    ColumnAlgebra,
    W,
    WTranspose,
    /// `M E_{n,n} + M[R_n, C_1] + K E_{1,1}`
    OmegaMaxColumn,
    /// `M E_{n,n} + M[R_n, R_{n-1}] + K E_{n-1,n-1}`
    OmegaMaxRow,
    UpperTriangular,
    StrictlyUpperTriangular,
    /// `span{D_r}`
    DiagIdempotent(usize),
    /// `span{E_{i,j}}`
    Elementary(usize, usize),
}

/// A named algebra at a given size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalSpec {
    pub tag: CanonicalTag,
    pub n: usize,
}

impl CanonicalSpec {
    pub fn new(tag: CanonicalTag, n: usize) -> CanonicalSpec {
        CanonicalSpec { tag, n }
    }

    pub fn zero_pattern(n: usize, rows: &[usize], cols: &[usize]) -> CanonicalSpec {
        CanonicalSpec::new(
            CanonicalTag::ZeroPattern { rows: rows.iter().copied().collect(), cols: cols.iter().copied().collect() },
            n,
        )
    }

    /// `M[R_n, C_n]`, the corner algebra `D_{n-1} M D_{n-1}`.
    pub fn corner(n: usize) -> CanonicalSpec {
        CanonicalSpec::zero_pattern(n, &[n], &[n])
    }

    /// `W` and `W^T` only lie in Gamma for `n >= 3`; below that they are still constructible.
    pub fn in_gamma(&self) -> bool {
        matches!(self.tag, CanonicalTag::W | CanonicalTag::WTranspose) && self.n >= 3
    }

    /// Dimension of the algebra as a closed-form count.
    pub fn expected_dim(&self) -> usize {
        let n = self.n;
        match &self.tag {
            CanonicalTag::Full => n * n,
            CanonicalTag::ZeroPattern { rows, cols } => (n - rows.len()) * (n - cols.len()),
            CanonicalTag::ParabolicP | CanonicalTag::ParabolicPPrime | CanonicalTag::ParabolicPTranspose => {
                n * n - n + 1
            }
            CanonicalTag::RowAlgebra | CanonicalTag::ColumnAlgebra => n * (n - 1),
            CanonicalTag::W | CanonicalTag::WTranspose => (n - 1) * (n - 2),
            CanonicalTag::OmegaMaxColumn | CanonicalTag::OmegaMaxRow => n * n - 2 * n + 3,
            CanonicalTag::UpperTriangular => n * (n + 1) / 2,
            CanonicalTag::StrictlyUpperTriangular => n * (n - 1) / 2,
            CanonicalTag::DiagIdempotent(r) => usize::from(*r > 0),
            CanonicalTag::Elementary(..) => 1,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        let bad = |msg: String| Err(Error::InvalidIndex(msg));
        if n == 0 {
            return bad("n must be at least 1".into());
        }
        let in_range = |i: &usize| (1..=n).contains(i);
        match &self.tag {
            CanonicalTag::ZeroPattern { rows, cols } => {
                if !rows.iter().chain(cols).all(in_range) {
                    return bad(format!("zero pattern indices must lie in 1..={n}"));
                }
            }
            CanonicalTag::W | CanonicalTag::WTranspose | CanonicalTag::OmegaMaxColumn | CanonicalTag::OmegaMaxRow => {
                if n < 2 {
                    return bad(format!("{} needs n >= 2", self.tag));
                }
            }
            CanonicalTag::DiagIdempotent(r) => {
                if *r > n {
                    return bad(format!("D_{r} needs r <= n = {n}"));
                }
            }
            CanonicalTag::Elementary(i, j) if (!in_range(i) || !in_range(j)) => {
                return bad(format!("E_{{{i},{j}}} outside 1..={n}"));
            }
            _ => {}
        }
        Ok(())
    }

    /// Positions (1-based) of the matrix units spanning a monomial algebra.
    fn positions(&self) -> Option<Vec<(usize, usize)>> {
        let n = self.n;
        let all = || (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)));
        let pos: Vec<(usize, usize)> = match &self.tag {
            CanonicalTag::Full => all().collect(),
            CanonicalTag::ZeroPattern { rows, cols } => {
                all().filter(|(i, j)| !rows.contains(i) && !cols.contains(j)).collect()
            }
            CanonicalTag::ParabolicP => all().filter(|&(i, j)| i < n || j == n).collect(),
            CanonicalTag::ParabolicPPrime => all().filter(|&(i, j)| j > 1 || i == 1).collect(),
            CanonicalTag::ParabolicPTranspose => all().filter(|&(i, j)| j < n || i == n).collect(),
            CanonicalTag::RowAlgebra => all().filter(|&(i, _)| i < n).collect(),
            CanonicalTag::ColumnAlgebra => all().filter(|&(_, j)| j < n).collect(),
            CanonicalTag::W => all().filter(|&(i, j)| i < n - 1 && j < n).collect(),
            CanonicalTag::WTranspose => all().filter(|&(i, j)| i < n && j < n - 1).collect(),
            CanonicalTag::OmegaMaxColumn => {
                all().filter(|&(i, j)| j == n || (i < n && j > 1) || (i, j) == (1, 1)).collect()
            }
            CanonicalTag::OmegaMaxRow => {
                all().filter(|&(i, j)| j == n || i < n - 1 || (i, j) == (n - 1, n - 1)).collect()
            }
            CanonicalTag::UpperTriangular => all().filter(|&(i, j)| i <= j).collect(),
            CanonicalTag::StrictlyUpperTriangular => all().filter(|&(i, j)| i < j).collect(),
            CanonicalTag::Elementary(i, j) => vec![(*i, *j)],
            CanonicalTag::DiagIdempotent(_) => return None,
        };
        Some(pos)
    }
}

/// Build the named algebra; its closure is verified before it is returned.
pub fn canonical_algebra(field: Field, spec: &CanonicalSpec) -> Result<Subalgebra> {
    spec.validate()?;
    let n = spec.n;
    let space = match (&spec.tag, spec.positions()) {
        (_, Some(pos)) => Subspace::from_positions(field, n, pos.into_iter().map(|(i, j)| (i - 1, j - 1))),
        (CanonicalTag::DiagIdempotent(r), None) => {
            let d = Mat::diag_idempotent(field, n, *r);
            Subspace::span(field, n, &[d])?
        }
        _ => unreachable!("every non-monomial tag is handled"),
    };
    let a = Subalgebra::certify(space).map_err(|_| Error::CertificationFailed(format!("{spec} is not closed")))?;
    if a.dim() != spec.expected_dim() {
        return Err(Error::CertificationFailed(format!(
            "{spec} has dimension {} (expected {})",
            a.dim(),
            spec.expected_dim()
        )));
    }
    Ok(a)
}

/// Shorthand for the rational-field canonical algebra.
pub fn canonical(tag: CanonicalTag, n: usize) -> Result<Subalgebra> {
    canonical_algebra(Field::Rationals, &CanonicalSpec::new(tag, n))
}

impl fmt::Display for CanonicalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalTag::Full => write!(f, "Full"),
            CanonicalTag::ZeroPattern { rows, cols } => {
                let parts: Vec<String> =
                    rows.iter().map(|r| format!("R{r}")).chain(cols.iter().map(|c| format!("C{c}"))).collect();
                write!(f, "M[{}]", parts.join(","))
            }
            CanonicalTag::ParabolicP => write!(f, "P"),
            CanonicalTag::ParabolicPPrime => write!(f, "P'"),
            CanonicalTag::ParabolicPTranspose => write!(f, "PT"),
            CanonicalTag::RowAlgebra => write!(f, "RowAlgebra"),
            CanonicalTag::ColumnAlgebra => write!(f, "ColumnAlgebra"),
            CanonicalTag::W => write!(f, "W"),
            CanonicalTag::WTranspose => write!(f, "WT"),
            CanonicalTag::OmegaMaxColumn => write!(f, "OmegaMaxColumn"),
            CanonicalTag::OmegaMaxRow => write!(f, "OmegaMaxRow"),
            CanonicalTag::UpperTriangular => write!(f, "UpperTriangular"),
            CanonicalTag::StrictlyUpperTriangular => write!(f, "StrictlyUpperTriangular"),
            CanonicalTag::DiagIdempotent(r) => write!(f, "D{r}"),
            CanonicalTag::Elementary(i, j) => write!(f, "E{i},{j}"),
        }
    }
}

impl fmt::Display for CanonicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n = {})", self.tag, self.n)
    }
}

impl FromStr for CanonicalTag {
    type Err = Error;

    /// Accepts the `Display` forms plus a few aliases (`PPrime`, `Ptranspose`, `omega-col`, ...).
    fn from_str(s: &str) -> Result<CanonicalTag> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let tag = match lower.as_str() {
            "full" | "m" => CanonicalTag::Full,
            "p" | "parabolicp" => CanonicalTag::ParabolicP,
            "p'" | "pprime" | "parabolicpprime" => CanonicalTag::ParabolicPPrime,
            "pt" | "ptranspose" | "parabolicptranspose" => CanonicalTag::ParabolicPTranspose,
            "rowalgebra" | "row" => CanonicalTag::RowAlgebra,
            "columnalgebra" | "column" => CanonicalTag::ColumnAlgebra,
            "w" => CanonicalTag::W,
            "wt" | "wtranspose" => CanonicalTag::WTranspose,
            "omegamaxcolumn" | "omega-col" | "omega-column" => CanonicalTag::OmegaMaxColumn,
            "omegamaxrow" | "omega-row" => CanonicalTag::OmegaMaxRow,
            "uppertriangular" | "upper" | "ut" => CanonicalTag::UpperTriangular,
            "strictlyuppertriangular" | "strict-upper" | "sut" => CanonicalTag::StrictlyUpperTriangular,
            _ => return parse_indexed(t),
        };
        Ok(tag)
    }
}

fn parse_indexed(t: &str) -> Result<CanonicalTag> {
    let err = || Error::Parse(format!("unknown canonical algebra {t:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| err());
    if let Some(inner) = t.strip_prefix("M[").and_then(|r| r.strip_suffix(']')) {
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_at(1) {
                ("R", k) => rows.insert(num(k)?),
                ("C", k) => cols.insert(num(k)?),
                _ => return Err(err()),
            };
        }
        return Ok(CanonicalTag::ZeroPattern { rows, cols });
    }
    if let Some(r) = t.strip_prefix('D') {
        return Ok(CanonicalTag::DiagIdempotent(num(r)?));
    }
    if let Some((i, j)) = t.strip_prefix('E').and_then(|r| r.split_once(',')) {
        return Ok(CanonicalTag::Elementary(num(i)?, num(j)?));
    }
    Err(err())
}
