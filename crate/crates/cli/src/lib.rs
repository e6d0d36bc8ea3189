//! Command dispatch for the `nonunital` binary.
//!
//! Exit codes: 0 success / certified, 1 usage or parse error, 2 typed
//! rejection (a classifier refused its input, a suite found a violation, or
//! a certificate failed to verify).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use nonunital_core::io::{
    self, parse_algebra, parse_certificate, verify_certificate, write_algebra, write_certificate, CertificateFile,
};
use nonunital_core::search::suites::{DEFAULT_BOUND, DEFAULT_TRIALS};
use nonunital_core::search::{run_suite, SuiteId, SuiteParams, SuiteReport};
use nonunital_core::structure::{
    classify_gamma_max, classify_omega_max, gamma_bound_check, idempotent_normal_form, jacobson_radical,
    nilpotency_index, recognize_max_nonunital, recognize_parabolic, ClassificationWitness,
};
use nonunital_core::{canonical_algebra, CanonicalSpec, CanonicalTag, Error, Field, Subalgebra, Subspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "nonunital", version, about = "Exact computations with subalgebras of M_n(K)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiplicative closure of the matrices in FILE.
    Closure {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension of the span of FILE, and whether it is closed.
    Dim { file: PathBuf },
    /// Intersection of two spans.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum of two spans.
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Left, right and two-sided identities of a subalgebra.
    Unity { file: PathBuf },
    /// Jacobson radical of a subalgebra over Q.
    Radical {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjugator S with S^-1 e S = D_r for the single idempotent in FILE.
    IdempotentNf {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a conjugate of P or P^T.
    RecognizeParabolic {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a conjugate of M[R_n] or M[C_n].
    RecognizeMaxNonunital {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a conjugate of W or W^T.
    ClassifyGamma {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a maximum-dimension subalgebra of P other than M[R_n].
    ClassifyOmega {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether U ∩ V is a nonunital intersection and check its bound.
    GammaCheck {
        u: PathBuf,
        v: PathBuf,
        /// Write the intersection here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run seeded verification suites.
    Verify {
        /// Suite id, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        /// Report file (an array of reports when several suites run).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a canonical algebra.
    Canon {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate against its input file.
    CheckCert { file: PathBuf, cert: PathBuf },
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) if e.is_rejection() => {
            let _ = writeln!(err, "rejected: {e}");
            EXIT_REJECTED
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn load_span(path: &Path) -> Result<Subspace, Error> {
    parse_algebra(path)?.span()
}

/// The span of FILE, which must already be closed under multiplication.
fn load_algebra(path: &Path) -> Result<Subalgebra, Error> {
    Subalgebra::certify(load_span(path)?).map_err(|_| {
        Error::InvalidParams(format!(
            "{}: span is not closed under multiplication (run `closure` first)",
            path.display()
        ))
    })
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Error> {
    writeln!(out, "{text}").map_err(|e| Error::Parse(format!("stdout: {e}")))
}

fn closed_word(space: &Subspace) -> &'static str {
    if Subalgebra::is_closed(space) {
        "yes"
    } else {
        "no"
    }
}

fn report_witness(
    out: &mut dyn Write,
    input: &Subalgebra,
    w: &ClassificationWitness,
    dest: Option<&Path>,
) -> Result<i32, Error> {
    emit(out, format!("{} (certified: {})", w.kind, w.certified))?;
    emit(out, format!("S =\n{}", w.conj.g()))?;
    if let Some(path) = dest {
        write_certificate(path, &CertificateFile::from_witness(input.space(), w))?;
    }
    Ok(if w.certified { EXIT_OK } else { EXIT_REJECTED })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Closure { file, out: dest } => {
            let input = parse_algebra(&file)?;
            let a = Subalgebra::closure(&input.span()?);
            emit(out, format!("closure: dim {} (from {} generators)", a.dim(), input.matrices.len()))?;
            if let Some(path) = dest {
                write_algebra(&path, a.space())?;
            }
        }
        Command::Dim { file } => {
            let s = load_span(&file)?;
            emit(out, format!("dim {}; closed: {}", s.dim(), closed_word(&s)))?;
        }
        Command::Intersect { a, b, out: dest } => {
            let s = load_span(&a)?.intersect(&load_span(&b)?)?;
            emit(out, format!("intersection: dim {}; closed: {}", s.dim(), closed_word(&s)))?;
            if let Some(path) = dest {
                write_algebra(&path, &s)?;
            }
        }
        Command::Sum { a, b, out: dest } => {
            let s = load_span(&a)?.sum(&load_span(&b)?)?;
            emit(out, format!("sum: dim {}; closed: {}", s.dim(), closed_word(&s)))?;
            if let Some(path) = dest {
                write_algebra(&path, &s)?;
            }
        }
        Command::Unity { file } => {
            let a = load_algebra(&file)?;
            let summary = a.unity_summary();
            emit(out, &summary)?;
            if let Some(e) = &summary.two_sided {
                emit(out, format!("unity =\n{e}"))?;
            }
        }
        Command::Radical { file, out: dest } => {
            let a = load_algebra(&file)?;
            let rad = jacobson_radical(&a)?;
            let index = nilpotency_index(&rad).expect("radical is nilpotent");
            emit(out, format!("radical: dim {}; nilpotency index {index}", rad.dim()))?;
            if let Some(path) = dest {
                write_algebra(&path, &rad)?;
            }
        }
        Command::IdempotentNf { file, out: dest } => {
            let input = parse_algebra(&file)?;
            let [e] = input.matrices.as_slice() else {
                return Err(Error::InvalidParams(format!(
                    "expected exactly one matrix, found {}",
                    input.matrices.len()
                )));
            };
            let form = idempotent_normal_form(e)?;
            emit(out, format!("rank {}", form.rank))?;
            emit(out, format!("S =\n{}", form.conj.g()))?;
            if let Some(path) = dest {
                let target = CanonicalSpec::new(CanonicalTag::DiagIdempotent(form.rank), input.n);
                let cert = CertificateFile::new("IdempotentNormalForm", &target, &input.span()?, &form.conj, true);
                write_certificate(&path, &cert)?;
            }
        }
        Command::RecognizeParabolic { file, out: dest } => {
            let a = load_algebra(&file)?;
            return report_witness(out, &a, &recognize_parabolic(&a)?, dest.as_deref());
        }
        Command::RecognizeMaxNonunital { file, out: dest } => {
            let a = load_algebra(&file)?;
            return report_witness(out, &a, &recognize_max_nonunital(&a)?, dest.as_deref());
        }
        Command::ClassifyGamma { file, out: dest } => {
            let a = load_algebra(&file)?;
            return report_witness(out, &a, &classify_gamma_max(&a)?, dest.as_deref());
        }
        Command::ClassifyOmega { file, out: dest } => {
            let a = load_algebra(&file)?;
            return report_witness(out, &a, &classify_omega_max(&a)?, dest.as_deref());
        }
        Command::GammaCheck { u, v, out: dest } => {
            let u = load_algebra(&u)?;
            let v = load_algebra(&v)?;
            let report = gamma_bound_check(&u, &v)?;
            emit(out, &report)?;
            if let Some(path) = dest {
                write_algebra(&path, u.intersect(&v)?.space())?;
            }
            if !report.bound_ok {
                return Ok(EXIT_REJECTED);
            }
        }
        Command::Verify { suite, n, trials, seed, bound, out: dest } => {
            return verify(out, &suite, SuiteParams { n, trials, bound, seed }, dest.as_deref())
        }
        Command::Canon { spec, n, field, out: dest } => {
            let field: Field = field.parse()?;
            let spec = CanonicalSpec::new(spec.parse()?, n);
            let a = canonical_algebra(field, &spec)?;
            emit(out, format!("{spec} over {field}: dim {}", a.dim()))?;
            if let Some(path) = dest {
                write_algebra(&path, a.space())?;
            }
        }
        Command::CheckCert { file, cert } => {
            let input = load_span(&file)?;
            let cert = parse_certificate(&cert)?;
            let ok = verify_certificate(&input, &cert)?;
            emit(out, format!("{} -> {}: {}", cert.kind, cert.target, if ok { "verified" } else { "NOT verified" }))?;
            return Ok(if ok { EXIT_OK } else { EXIT_REJECTED });
        }
    }
    Ok(EXIT_OK)
}

fn verify(out: &mut dyn Write, suite: &str, params: SuiteParams, dest: Option<&Path>) -> Result<i32, Error> {
    let ids: Vec<SuiteId> = if suite.eq_ignore_ascii_case("all") {
        SuiteId::ALL.into_iter().filter(|id| params.n >= id.min_n()).collect()
    } else {
        suite.split(',').map(str::parse).collect::<Result<_, _>>()?
    };
    let start = Instant::now();
    let mut reports: Vec<SuiteReport> = Vec::with_capacity(ids.len());
    for id in ids {
        let report = run_suite(id, &params)?;
        emit(out, &report)?;
        reports.push(report);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    emit(out, format!("{} suite(s), {failed} failed, {:.2}s", reports.len(), start.elapsed().as_secs_f64()))?;
    if let Some(path) = dest {
        let text = match reports.as_slice() {
            [one] => io::emit_report(one),
            many => io::emit_reports(many),
        };
        std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_REJECTED })
}
