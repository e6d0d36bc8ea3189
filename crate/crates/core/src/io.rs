//! JSON files for algebras, certificates and suite reports.
//!
//! Every scalar is written as an exact string (`"3"`, `"-2/7"`), never as a
//! JSON number, and every file carries `"schema_version": 1`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canonical::{canonical_algebra, CanonicalSpec, CanonicalTag};
use crate::conjugator::Conjugator;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};
use crate::search::SuiteReport;
use crate::structure::ClassificationWitness;
use crate::subspace::Subspace;

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

type Grid = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub n: usize,
    pub field: String,
    pub matrices: Vec<Grid>,
}

/// A parsed [`AlgebraFile`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraInput {
    pub field: Field,
    pub n: usize,
    pub matrices: Vec<Mat>,
}

impl AlgebraInput {
    pub fn new(field: Field, n: usize, matrices: Vec<Mat>) -> AlgebraInput {
        AlgebraInput { field, n, matrices }
    }

    pub fn span(&self) -> Result<Subspace> {
        Subspace::span(self.field, self.n, &self.matrices)
    }
}

fn grid(m: &Mat) -> Grid {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

fn parse_grid(field: Field, n: usize, g: &Grid, what: &str) -> Result<Mat> {
    if g.len() != n {
        return Err(Error::DimensionMismatch(format!("{what}: {} rows, expected {n}", g.len())));
    }
    let mut data = Vec::with_capacity(n * n);
    for (r, row) in g.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!("{what}, row {}: {} entries, expected {n}", r + 1, row.len())));
        }
        for (c, entry) in row.iter().enumerate() {
            let x = Scalar::parse(field, entry)
                .map_err(|e| Error::Parse(format!("{what}, row {}, column {}: {e}", r + 1, c + 1)))?;
            data.push(x);
        }
    }
    Mat::from_data(field, n, n, data)
}

fn check_schema(version: u32) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema_version {version}")));
    }
    Ok(())
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_algebra_str(text: &str) -> Result<AlgebraInput> {
    let file: AlgebraFile = from_json(text)?;
    check_schema(file.schema_version)?;
    let field: Field = file.field.parse()?;
    if file.n == 0 {
        return Err(Error::DimensionMismatch("n must be positive".into()));
    }
    let matrices = file
        .matrices
        .iter()
        .enumerate()
        .map(|(k, g)| parse_grid(field, file.n, g, &format!("matrix {}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraInput::new(field, file.n, matrices))
}

pub fn parse_algebra(path: &Path) -> Result<AlgebraInput> {
    parse_algebra_str(&read(path)?)
}

pub fn emit_algebra(input: &AlgebraInput) -> String {
    let matrices: Vec<String> = input.matrices.iter().map(|m| grid_json(&grid(m), "    ")).collect();
    let matrices =
        if matrices.is_empty() { "[]".to_string() } else { format!("[\n    {}\n  ]", matrices.join(",\n    ")) };
    format!(
        "{{\n  \"schema_version\": {SCHEMA_VERSION},\n  \"n\": {},\n  \"field\": {},\n  \"matrices\": {matrices}\n}}\n",
        input.n,
        json_str(&input.field.to_string()),
    )
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("serializable")
}

/// A grid with one row per line, indented by `indent` (the position of the
/// opening bracket).
fn grid_json(g: &Grid, indent: &str) -> String {
    let rows: Vec<String> = g.iter().map(|r| serde_json::to_string(r).expect("serializable")).collect();
    if rows.is_empty() {
        return "[]".to_string();
    }
    format!("[\n{indent}  {}\n{indent}]", rows.join(&format!(",\n{indent}  ")))
}

/// Write the canonical basis of `space`.
pub fn write_algebra(path: &Path, space: &Subspace) -> Result<()> {
    let input = AlgebraInput::new(space.field(), space.n(), space.basis().to_vec());
    write(path, &emit_algebra(&input))
}

/// SHA-256 over the canonical basis of the spanned subspace, so any
/// generating set of the same space hashes identically.
pub fn input_hash(space: &Subspace) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}|{}", space.field(), space.n()));
    for b in space.basis() {
        h.update(b"|");
        for (k, x) in b.as_slice().iter().enumerate() {
            if k > 0 {
                h.update(b",");
            }
            h.update(x.to_string());
        }
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    /// Witness kind, e.g. `GammaW` or `IdempotentNormalForm`.
    pub kind: String,
    /// Canonical target tag, e.g. `W` or `D2`.
    pub target: String,
    pub n: usize,
    pub field: String,
    /// `S` with `S^{-1} X S` in the target for every input `X`.
    pub conjugator: Grid,
    pub verified: bool,
    pub input_hash: String,
}

impl CertificateFile {
    pub fn new(
        kind: &str,
        target: &CanonicalSpec,
        input: &Subspace,
        conj: &Conjugator,
        verified: bool,
    ) -> CertificateFile {
        CertificateFile {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            target: target.tag.to_string(),
            n: input.n(),
            field: input.field().to_string(),
            conjugator: grid(conj.g()),
            verified,
            input_hash: input_hash(input),
        }
    }

    pub fn from_witness(input: &Subspace, w: &ClassificationWitness) -> CertificateFile {
        CertificateFile::new(w.kind.name(), &w.kind.target(input.n()), input, &w.conj, w.certified)
    }

    pub fn field(&self) -> Result<Field> {
        self.field.parse()
    }

    pub fn target_spec(&self) -> Result<CanonicalSpec> {
        Ok(CanonicalSpec::new(self.target.parse::<CanonicalTag>()?, self.n))
    }

    pub fn conjugator(&self) -> Result<Conjugator> {
        let g = parse_grid(self.field()?, self.n, &self.conjugator, "conjugator")?;
        Conjugator::new(g)
    }
}

pub fn parse_certificate_str(text: &str) -> Result<CertificateFile> {
    let cert: CertificateFile = from_json(text)?;
    check_schema(cert.schema_version)?;
    Ok(cert)
}

pub fn parse_certificate(path: &Path) -> Result<CertificateFile> {
    parse_certificate_str(&read(path)?)
}

pub fn emit_certificate(cert: &CertificateFile) -> String {
    format!(
        "{{\n  \"schema_version\": {},\n  \"kind\": {},\n  \"target\": {},\n  \"n\": {},\n  \"field\": {},\n  \"conjugator\": {},\n  \"verified\": {},\n  \"input_hash\": {}\n}}\n",
        cert.schema_version,
        json_str(&cert.kind),
        json_str(&cert.target),
        cert.n,
        json_str(&cert.field),
        grid_json(&cert.conjugator, "  "),
        cert.verified,
        json_str(&cert.input_hash),
    )
}

pub fn write_certificate(path: &Path, cert: &CertificateFile) -> Result<()> {
    write(path, &emit_certificate(cert))
}

/// Independently re-check a certificate against its input: the hash must
/// match and conjugating the input span by the stored matrix must give the
/// target exactly. Trusts nothing else in the file, including `verified`.
pub fn verify_certificate(input: &Subspace, cert: &CertificateFile) -> Result<bool> {
    let field = cert.field()?;
    if field != input.field() || cert.n != input.n() || cert.input_hash != input_hash(input) {
        return Ok(false);
    }
    let target = canonical_algebra(field, &cert.target_spec()?)?;
    let conj = cert.conjugator()?;
    Ok(&input.map(|x| conj.apply(x)) == target.space())
}

pub fn emit_report(report: &SuiteReport) -> String {
    serde_json::to_string_pretty(report).expect("serializable") + "\n"
}

pub fn emit_reports(reports: &[SuiteReport]) -> String {
    serde_json::to_string_pretty(reports).expect("serializable") + "\n"
}

pub fn parse_report_str(text: &str) -> Result<SuiteReport> {
    let report: SuiteReport = from_json(text)?;
    check_schema(report.schema_version)?;
    Ok(report)
}

pub fn write_report(path: &Path, report: &SuiteReport) -> Result<()> {
    write(path, &emit_report(report))
}
