//! Seeded verification suites.
//!
//! Every trial draws from its own generator, split from the master seed by
//! the trial index, so trials can run in any order (here in parallel) and a
//! single trial replays from `(seed, index)` alone. Trial 0 is always the
//! extremal construction for the suite; every fifth trial after that is a
//! structured input (a conjugate of a canonical algebra) and the rest are
//! random.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{CompressMode, Subalgebra, UnityStatus};
use crate::canonical::{canonical_algebra, CanonicalSpec, CanonicalTag};
use crate::conjugator::Conjugator;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};
use crate::search::generate::{
    extremal_pair, random_block_conjugator, random_conjugator, random_invertible_in, random_subalgebra,
    random_unital_subalgebra,
};
use crate::search::rng::Rng;
use crate::structure::{
    classify_gamma_max, classify_omega_max, gamma_bound_check, in_omega, jacobson_radical, nilpotency_index,
    recognize_parabolic, WitnessKind,
};
use crate::subspace::Subspace;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_BOUND: i64 = 3;
/// Largest `n` accepted by the suites.
pub const MAX_N: usize = 8;

const Q: Field = Field::Rationals;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    /// Dimension bound for nonunital intersections of unital pairs.
    Thm31,
    /// Dimension bound for nonunital subalgebras.
    Lem22,
    /// The shear construction meets in `W`, over Q and prime fields.
    Lem21,
    /// Anything properly containing `M[R_n]` contains `I`.
    Lem23Rem,
    /// Dimension bound and classification inside the parabolic.
    Thm33,
    /// `W` / `W^T` classification round trips.
    Thm32,
    /// Parabolic recognition round trips.
    Prop42,
}

impl SuiteId {
    pub const ALL: [SuiteId; 7] = [
        SuiteId::Thm31,
        SuiteId::Lem22,
        SuiteId::Lem21,
        SuiteId::Lem23Rem,
        SuiteId::Thm33,
        SuiteId::Thm32,
        SuiteId::Prop42,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Thm31 => "thm31",
            SuiteId::Lem22 => "lem22",
            SuiteId::Lem21 => "lem21",
            SuiteId::Lem23Rem => "lem23rem",
            SuiteId::Thm33 => "thm33",
            SuiteId::Thm32 => "thm32",
            SuiteId::Prop42 => "prop42",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            SuiteId::Lem22 | SuiteId::Lem23Rem | SuiteId::Prop42 => 2,
            _ => 3,
        }
    }

    /// The largest dimension the checked claim allows (for round-trip suites,
    /// the dimension of the canonical algebra).
    pub fn theoretical_max(self, n: usize) -> usize {
        match self {
            SuiteId::Thm31 | SuiteId::Lem21 | SuiteId::Thm32 => (n - 1) * (n - 2),
            SuiteId::Lem22 => n * (n - 1),
            SuiteId::Lem23Rem => n * n,
            SuiteId::Thm33 => n * n - 2 * n + 3,
            SuiteId::Prop42 => n * n - n + 1,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub n: usize,
    pub trials: usize,
    pub bound: i64,
    pub seed: u64,
}

impl SuiteParams {
    pub fn new(n: usize, trials: usize, seed: u64) -> SuiteParams {
        SuiteParams { n, trials, bound: DEFAULT_BOUND, seed }
    }

    fn validate(&self, suite: SuiteId) -> Result<()> {
        if self.n < suite.min_n() || self.n > MAX_N {
            return Err(Error::InvalidParams(format!(
                "{suite} needs {} <= n <= {MAX_N}, got {}",
                suite.min_n(),
                self.n
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be positive".into()));
        }
        if self.bound < 1 {
            return Err(Error::InvalidParams(format!("bound must be >= 1, got {}", self.bound)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    /// Seed of the trial's own generator; `Rng::split_seed(seed, trial)`.
    pub trial_seed: u64,
    pub detail: String,
}

/// Result of one trial: the dimension the claim was checked on (`None` when
/// the sampled input fell outside the claim's hypotheses) and any violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub dim: Option<usize>,
    pub violation: Option<String>,
}

impl TrialOutcome {
    fn skipped() -> TrialOutcome {
        TrialOutcome { dim: None, violation: None }
    }

    fn checked(dim: usize, violation: Option<String>) -> TrialOutcome {
        TrialOutcome { dim: Some(dim), violation }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite_id: String,
    pub n: usize,
    pub trials: usize,
    pub bound: i64,
    pub seed: u64,
    /// Trials whose input satisfied the claim's hypotheses.
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Dimension of each checked input → count.
    pub histogram: BTreeMap<usize, usize>,
    pub attained_max: usize,
    pub theoretical_max: usize,
    /// Wall-clock time; not serialized so reports stay byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn tight(&self) -> bool {
        self.attained_max == self.theoretical_max
    }
}

impl fmt::Display for SuiteReport {
    /// One line for CI logs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} n={} trials={} seed={} checked={} max={}/{} violations={} {:.2}s {}",
            self.suite_id,
            self.n,
            self.trials,
            self.seed,
            self.checked,
            self.attained_max,
            self.theoretical_max,
            self.violations.len(),
            self.elapsed.as_secs_f64(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

pub fn run_suite(suite: SuiteId, params: &SuiteParams) -> Result<SuiteReport> {
    params.validate(suite)?;
    let start = Instant::now();
    let outcomes: Vec<TrialOutcome> = (0..params.trials).into_par_iter().map(|t| run_trial(suite, params, t)).collect();
    let mut report = SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite_id: suite.name().to_string(),
        n: params.n,
        trials: params.trials,
        bound: params.bound,
        seed: params.seed,
        checked: 0,
        violations: Vec::new(),
        histogram: BTreeMap::new(),
        attained_max: 0,
        theoretical_max: suite.theoretical_max(params.n),
        elapsed: Duration::ZERO,
    };
    for (t, outcome) in outcomes.into_iter().enumerate() {
        if let Some(d) = outcome.dim {
            report.checked += 1;
            *report.histogram.entry(d).or_insert(0) += 1;
            report.attained_max = report.attained_max.max(d);
        }
        if let Some(detail) = outcome.violation {
            report.violations.push(Violation { trial: t, trial_seed: Rng::split_seed(params.seed, t as u64), detail });
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Re-run a single trial, e.g. one named in a [`Violation`].
pub fn replay_trial(suite: SuiteId, params: &SuiteParams, trial: usize) -> Result<TrialOutcome> {
    params.validate(suite)?;
    Ok(run_trial(suite, params, trial))
}

fn run_trial(suite: SuiteId, params: &SuiteParams, t: usize) -> TrialOutcome {
    let mut rng = Rng::new(params.seed).split(t as u64);
    let ctx = Trial { n: params.n, bound: params.bound, t };
    let result = match suite {
        SuiteId::Thm31 => ctx.thm31(&mut rng),
        SuiteId::Lem22 => ctx.lem22(&mut rng),
        SuiteId::Lem21 => ctx.lem21(&mut rng),
        SuiteId::Lem23Rem => ctx.lem23rem(&mut rng),
        SuiteId::Thm33 => ctx.thm33(&mut rng),
        SuiteId::Thm32 => ctx.thm32(&mut rng),
        SuiteId::Prop42 => ctx.prop42(&mut rng),
    };
    result.unwrap_or_else(|e| TrialOutcome { dim: None, violation: Some(format!("error: {e}")) })
}

fn canon(tag: CanonicalTag, n: usize) -> Result<Subalgebra> {
    canonical_algebra(Q, &CanonicalSpec::new(tag, n))
}

/// `I + c E_{i,j}` with `i != j` and `c` a nonzero integer in `[-bound, bound]`.
fn elementary_conjugator(n: usize, bound: i64, rng: &mut Rng) -> Conjugator {
    let i = rng.index(n);
    let j = (i + 1 + rng.index(n - 1)) % n;
    let mut c = rng.int(-bound, bound - 1);
    if c >= 0 {
        c += 1;
    }
    let g = &Mat::identity(Q, n) + &Mat::unit(Q, n, i, j).scale(&Scalar::from_int(Q, c));
    Conjugator::new(g).expect("unipotent")
}

struct Trial {
    n: usize,
    bound: i64,
    t: usize,
}

impl Trial {
    fn structured(&self) -> bool {
        self.t.is_multiple_of(5)
    }

    /// Conjugator for round-trip inputs: elementary for structured trials,
    /// dense otherwise.
    fn round_trip_conjugator(&self, rng: &mut Rng) -> Conjugator {
        if self.structured() {
            elementary_conjugator(self.n, self.bound, rng)
        } else {
            random_conjugator(self.n, self.bound, rng)
        }
    }

    fn thm31(&self, rng: &mut Rng) -> Result<TrialOutcome> {
        let n = self.n;
        let (u, v) = if self.t == 0 {
            extremal_pair(Q, n)?
        } else if self.structured() {
            let c = random_conjugator(n, self.bound, rng);
            if rng.chance(1, 2) {
                let (u, v) = extremal_pair(Q, n)?;
                (u.conjugate_by(&c), v.conjugate_by(&c))
            } else {
                let u = canonical_algebra(Q, &CanonicalSpec::corner(n))?.conjugate_by(&c);
                let v = u.conjugate_by(&elementary_conjugator(n, self.bound, rng));
                (u, v)
            }
        } else {
            let k = 1 + rng.index(3);
            let u = random_unital_subalgebra(n, 1 + rng.index(n - 1), k, self.bound, rng);
            let v = if rng.chance(1, 2) {
                u.conjugate_by(&elementary_conjugator(n, self.bound, rng))
            } else {
                let k = 1 + rng.index(3);
                random_unital_subalgebra(n, 1 + rng.index(n), k, self.bound, rng)
            };
            (u, v)
        };
        let report = gamma_bound_check(&u, &v)?;
        if !report.is_gamma {
            return Ok(TrialOutcome::skipped());
        }
        let mut problems = Vec::new();
        if !report.bound_ok {
            problems.push(format!("dim {} exceeds (n-1)(n-2) = {}", report.dim, report.bound));
        }
        if let Some(trace) = &report.trace {
            if !trace.factor_in_corner {
                problems.push("normalized unital factor is not inside M[R_n, C_n]".to_string());
            }
        }
        Ok(TrialOutcome::checked(report.dim, join(problems)))
    }

    fn lem22(&self, rng: &mut Rng) -> Result<TrialOutcome> {
        let n = self.n;
        let l = if self.t == 0 {
            canon(CanonicalTag::RowAlgebra, n)?
        } else if self.structured() {
            let tag = if rng.chance(1, 2) { CanonicalTag::RowAlgebra } else { CanonicalTag::ColumnAlgebra };
            canon(tag, n)?.conjugate_by(&random_conjugator(n, self.bound, rng))
        } else {
            let mut tags =
                vec![CanonicalTag::RowAlgebra, CanonicalTag::ColumnAlgebra, CanonicalTag::StrictlyUpperTriangular];
            if n >= 3 {
                tags.push(CanonicalTag::W);
                tags.push(CanonicalTag::WTranspose);
            }
            let k = 1 + rng.index(3);
            if rng.chance(1, 5) {
                random_subalgebra(n, k, self.bound, rng, None)
            } else {
                let tag = tags[rng.index(tags.len())].clone();
                let ambient = canon(tag, n)?.conjugate_by(&random_conjugator(n, 2, rng));
                random_subalgebra(n, k, self.bound, rng, Some(&ambient))
            }
        };
        if l.unity_summary().status != UnityStatus::Nonunital {
            return Ok(TrialOutcome::skipped());
        }
        let bound = n * (n - 1);
        let problem = (l.dim() > bound).then(|| format!("nonunital dim {} exceeds n(n-1) = {bound}", l.dim()));
        Ok(TrialOutcome::checked(l.dim(), problem))
    }

    fn lem21(&self, rng: &mut Rng) -> Result<TrialOutcome> {
        let n = self.n;
        let fields = [Q, Field::prime(5)?, Field::prime(7)?];
        let field = fields[self.t % fields.len()];
        let (mut u, mut v) = extremal_pair(field, n)?;
        let mut w = canonical_algebra(field, &CanonicalSpec::new(CanonicalTag::W, n))?;
        if self.t >= fields.len() {
            let c = Conjugator::new(random_invertible_in(field, n, self.bound, rng))?;
            u = u.conjugate_by(&c);
            v = v.conjugate_by(&c);
            w = w.conjugate_by(&c);
        }
        let nn = u.intersect(&v)?;
        let summary = nn.unity_summary();
        let mut problems = Vec::new();
        if nn != w {
            problems.push(format!("over {field}: intersection is not the W conjugate"));
        }
        if nn.dim() != (n - 1) * (n - 2) {
            problems.push(format!("over {field}: dim {} != (n-1)(n-2)", nn.dim()));
        }
        if summary.status != UnityStatus::Nonunital {
            problems.push(format!("over {field}: intersection is {}", summary.status));
        }
        if summary.right_identities.is_some() {
            problems.push(format!("over {field}: intersection has a right identity"));
        }
        if !u.unity_summary().is_unital() || !v.unity_summary().is_unital() {
            problems.push(format!("over {field}: a factor is not unital"));
        }
        Ok(TrialOutcome::checked(nn.dim(), join(problems)))
    }

    fn lem23rem(&self, rng: &mut Rng) -> Result<TrialOutcome> {
        let n = self.n;
        let row = canon(CanonicalTag::RowAlgebra, n)?;
        let last = n - 1;
        let b = if self.t == 0 {
            Mat::unit(Q, n, last, 0)
        } else if self.structured() {
            Mat::unit(Q, n, last, rng.index(n)).scale(&Scalar::from_int(Q, 1 + rng.index(self.bound as usize) as i64))
        } else {
            let mut b = Mat::zeros(Q, n, n);
            while (0..n).all(|j| b.get(last, j).is_zero()) {
                for j in 0..n {
                    b.set(last, j, Scalar::from_int(Q, rng.int(-self.bound, self.bound)));
                }
            }
            for i in 0..last {
                for j in 0..n {
                    if rng.chance(1, 2) {
                        b.set(i, j, Scalar::from_int(Q, rng.int(-self.bound, self.bound)));
                    }
                }
            }
            b
        };
        let c = if self.t == 0 { Conjugator::identity(Q, n) } else { self.round_trip_conjugator(rng) };
        let mut gens: Vec<Mat> = row.basis().iter().map(|x| c.apply(x)).collect();
        gens.push(c.apply(&b));
        let closed = Subalgebra::closure(&Subspace::span(Q, n, &gens)?);
        let problem = (!closed.contains_identity()).then(|| "algebra properly containing M[R_n] misses I".to_string());
        Ok(TrialOutcome::checked(closed.dim(), problem))
    }

    fn thm33(&self, rng: &mut Rng) -> Result<TrialOutcome> {
        let n = self.n;
        let b = if self.t == 0 {
            canon(CanonicalTag::OmegaMaxColumn, n)?
        } else if self.structured() {
            let base = match rng.index(4) {
                0 => canon(CanonicalTag::OmegaMaxColumn, n)?,
                1 => canon(CanonicalTag::OmegaMaxRow, n)?,
                2 => canon(CanonicalTag::UpperTriangular, n)?,
                _ => {
                    let corner = canonical_algebra(Q, &CanonicalSpec::corner(n))?;
                    let last = Mat::unit(Q, n, n - 1, n - 1);
                    Subalgebra::certify(corner.space().sum(&Subspace::span(Q, n, &[last])?)?)?
                }
            };
            base.conjugate_by(&random_block_conjugator(n, self.bound, rng))
        } else {
            let base = match rng.index(3) {
                0 => canon(CanonicalTag::ParabolicP, n)?,
                1 => canon(CanonicalTag::OmegaMaxColumn, n)?,
                _ => canon(CanonicalTag::OmegaMaxRow, n)?,
            };
            let ambient = base.conjugate_by(&random_block_conjugator(n, 2, rng));
            let k = 1 + rng.index(3);
            random_subalgebra(n, k, self.bound, rng, Some(&ambient))
        };
        if !in_omega(&b)? {
            return Ok(TrialOutcome::skipped());
        }
        let max = n * n - 2 * n + 3;
        let mut problems = Vec::new();
        if b.dim() > max {
            problems.push(format!("dim {} exceeds n^2-2n+3 = {max}", b.dim()));
        }
        if b.dim() == max {
            match classify_omega_max(&b) {
                Ok(w) if w.certified && w.verify(&b)? => {}
                Ok(w) => problems.push(format!("{} witness does not re-verify", w.kind)),
                Err(e) => problems.push(format!("maximum-dimension member not classified: {e}")),
            }
        }
        let e = Mat::diag_idempotent(Q, n, n - 1);
        let corner = canonical_algebra(Q, &CanonicalSpec::corner(n))?;
        let be = b.compress(&e, CompressMode::Right)?;
        if be == corner && b.dim() > max - 1 {
            problems.push(format!("b e = M[R_n, C_n] but dim {} exceeds n^2-2n+2", b.dim()));
        }
        Ok(TrialOutcome::checked(b.dim(), join(problems)))
    }

    fn thm32(&self, rng: &mut Rng) -> Result<TrialOutcome> {
        let n = self.n;
        let kind = if self.t.is_multiple_of(2) { WitnessKind::GammaW } else { WitnessKind::GammaWTranspose };
        let input = if self.t == 0 {
            canon(kind.target_tag(), n)?
        } else if self.structured() {
            // Build the conjugate as an actual intersection.
            let c = random_conjugator(n, self.bound, rng);
            let (u, v) = extremal_pair(Q, n)?;
            let nn = u.conjugate_by(&c).intersect(&v.conjugate_by(&c))?;
            match kind {
                WitnessKind::GammaW => nn,
                _ => nn.transpose(),
            }
        } else {
            canon(kind.target_tag(), n)?.conjugate_by(&random_conjugator(n, self.bound, rng))
        };
        let problem = match classify_gamma_max(&input) {
            Ok(w) if w.kind != kind => Some(format!("expected {kind}, got {}", w.kind)),
            Ok(w) if !(w.certified && w.verify(&input)?) => Some(format!("{kind} witness does not re-verify")),
            Ok(_) => None,
            Err(e) => Some(format!("{kind} conjugate rejected: {e}")),
        };
        Ok(TrialOutcome::checked(input.dim(), problem))
    }

    fn prop42(&self, rng: &mut Rng) -> Result<TrialOutcome> {
        let n = self.n;
        let kind = if self.t.is_multiple_of(2) { WitnessKind::ParabolicP } else { WitnessKind::ParabolicPTranspose };
        let base = canon(kind.target_tag(), n)?;
        let input = if self.t == 0 { base } else { base.conjugate_by(&self.round_trip_conjugator(rng)) };
        let mut problems = Vec::new();
        match recognize_parabolic(&input) {
            // P and P^T are conjugate at n = 2, so either kind is correct there.
            Ok(w) if w.kind != kind && n > 2 => problems.push(format!("expected {kind}, got {}", w.kind)),
            Ok(w) if !(w.certified && w.verify(&input)?) => {
                problems.push(format!("{} witness does not re-verify", w.kind))
            }
            Ok(_) => {}
            Err(e) => problems.push(format!("{kind} conjugate rejected: {e}")),
        }
        let rad = jacobson_radical(&input)?;
        if rad.dim() != n - 1 {
            problems.push(format!("radical has dim {} != n-1", rad.dim()));
        }
        if nilpotency_index(&rad).is_none() {
            problems.push("radical is not nilpotent".to_string());
        }
        Ok(TrialOutcome::checked(input.dim(), join(problems)))
    }
}

fn join(problems: Vec<String>) -> Option<String> {
    (!problems.is_empty()).then(|| problems.join("; "))
}
