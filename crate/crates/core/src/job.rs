//! Job specifications, manifests, dispatch to the checks, and report output.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogEntry, CatalogError, Params};
use crate::grassmann;
use crate::lie::{verify_curvature_casimir, CurvatureTensor, DivisionAlgebra, LieError, Representation, SymmetricPair};
use crate::scalar::{fmt_rational, Rational};
use crate::tensor::MatrixJson;
use crate::semiclassical::{self, SemiclassicalError};
use crate::verify::{self, Backend, SamplerConfig, Stopwatch, Subject, Verdict, VerificationReport, VerifyError, Witness};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Cybe,
    CybeCasimir,
    CybeIndex,
    Qybe,
    Identities,
    Unitarity,
    ClassicalLimit,
    ReadOff,
    Fit,
    Crosscheck,
    Splitting,
    CurvatureCasimir,
    Expansion,
}

impl CheckId {
    pub const ALL: [CheckId; 13] = [
        CheckId::Cybe,
        CheckId::CybeCasimir,
        CheckId::CybeIndex,
        CheckId::Qybe,
        CheckId::Identities,
        CheckId::Unitarity,
        CheckId::ClassicalLimit,
        CheckId::ReadOff,
        CheckId::Fit,
        CheckId::Crosscheck,
        CheckId::Splitting,
        CheckId::CurvatureCasimir,
        CheckId::Expansion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Cybe => "cybe",
            CheckId::CybeCasimir => "cybe-casimir",
            CheckId::CybeIndex => "cybe-index",
            CheckId::Qybe => "qybe",
            CheckId::Identities => "identities",
            CheckId::Unitarity => "unitarity",
            CheckId::ClassicalLimit => "classical-limit",
            CheckId::ReadOff => "read-off",
            CheckId::Fit => "fit",
            CheckId::Crosscheck => "crosscheck",
            CheckId::Splitting => "splitting",
            CheckId::CurvatureCasimir => "curvature-casimir",
            CheckId::Expansion => "expansion",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// One check on one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub check: CheckId,
    pub entry: String,
    #[serde(default)]
    pub params: Params,
    #[serde(default = "default_mode")]
    pub mode: Backend,
    /// Falls back to the manifest seed with default bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

fn default_mode() -> Backend {
    Backend::Exact
}

impl JobSpec {
    pub fn new(check: CheckId, entry: impl Into<String>, params: Params) -> Self {
        JobSpec { check, entry: entry.into(), params, mode: Backend::Exact, sampler: None, out: None }
    }

    pub fn with_mode(mut self, mode: Backend) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_sampler(mut self, sampler: SamplerConfig) -> Self {
        self.sampler = Some(sampler);
        self
    }

    /// Resolves the target and confirms the check applies to it.
    pub fn validate(&self) -> Result<Target, JobError> {
        let target = Target::resolve(&self.entry, &self.params)?;
        if !target.supports(self.check) {
            return Err(JobError::Usage(format!("check `{}` is not available for entry `{}`", self.check.name(), self.entry)));
        }
        if let Some(s) = &self.sampler {
            s.validate().map_err(JobError::Usage)?;
        }
        Ok(target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    #[serde(default)]
    pub seed: u64,
    pub jobs: Vec<JobSpec>,
    #[serde(default = "default_version")]
    pub version: String,
}

fn default_version() -> String {
    VERSION.to_string()
}

impl RunManifest {
    pub fn new(seed: u64, jobs: Vec<JobSpec>) -> Self {
        RunManifest { seed, jobs, version: default_version() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {message}")]
    Internal { context: String, message: String },
}

impl JobError {
    fn internal(spec: &JobSpec, e: impl std::fmt::Display) -> Self {
        JobError::Internal { context: format!("{} on {}({})", spec.check.name(), spec.entry, spec.params), message: e.to_string() }
    }
}

impl From<CatalogError> for JobError {
    fn from(e: CatalogError) -> Self {
        JobError::Usage(e.to_string())
    }
}

/// What a job runs against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Catalog(CatalogEntry),
    Grassmann { p: usize, q: usize, algebra: DivisionAlgebra },
}

pub const GRASSMANN_IDS: [&str; 3] = ["grassmann", "grassmann_complex", "grassmann_quaternion"];

impl Target {
    pub fn resolve(entry: &str, params: &Params) -> Result<Self, JobError> {
        let algebra = match entry {
            "grassmann" => DivisionAlgebra::Real,
            "grassmann_complex" => DivisionAlgebra::Complex,
            "grassmann_quaternion" => DivisionAlgebra::Quaternion,
            _ => return Ok(Target::Catalog(CatalogEntry::from_params(entry, params)?)),
        };
        if params.n.is_some() || params.k.is_some() {
            return Err(JobError::Usage(format!("`{entry}` takes only p and q")));
        }
        let dim = |name: &str, v: Option<i64>| match v {
            Some(x) if x >= 1 => Ok(x as usize),
            Some(x) => Err(JobError::Usage(format!("{name} = {x}, expected >= 1"))),
            None => Err(JobError::Usage(format!("missing {name}"))),
        };
        Ok(Target::Grassmann { p: dim("p", params.p)?, q: dim("q", params.q)?, algebra })
    }

    pub fn supports(&self, check: CheckId) -> bool {
        use CheckId::*;
        match self {
            Target::Catalog(e) => match check {
                Expansion => false,
                Identities => e.algebra() != DivisionAlgebra::Real || matches!(e, CatalogEntry::Sphere { .. }),
                _ => true,
            },
            Target::Grassmann { algebra: DivisionAlgebra::Real, .. } => {
                matches!(check, Qybe | Expansion | CybeIndex | CurvatureCasimir | Splitting)
            }
            Target::Grassmann { .. } => check == Qybe,
        }
    }

    pub fn subject(&self) -> Subject {
        match self {
            Target::Catalog(e) => Subject::from(e),
            Target::Grassmann { p, q, algebra: DivisionAlgebra::Real } => Subject::grassmann(*p, *q),
            Target::Grassmann { p, q, algebra } => Subject::new(format!("grassmann_{}", algebra.name()), Params::pq(*p as i64, *q as i64)),
        }
    }

    /// The pair with `k` acting on `m` by `ad`, so curvature and `t̂` live
    /// on the same space.
    fn pair(&self) -> SymmetricPair {
        match self {
            Target::Catalog(e) => e.symmetric_pair().with_representation(Representation::AdjointOnM),
            Target::Grassmann { p, q, .. } => SymmetricPair::grassmann(*p, *q),
        }
    }
}

/// Runs one job. Failures of the checked property are `Fail` reports;
/// errors are reserved for invalid specs and internal faults.
pub fn run_job(spec: &JobSpec, default_seed: u64) -> Result<Vec<VerificationReport>, JobError> {
    let target = spec.validate()?;
    let sampler = spec.sampler.unwrap_or_else(|| SamplerConfig::with_seed(default_seed));
    let subject = target.subject();
    let backend = spec.mode;
    let internal = |e: &dyn std::fmt::Display| JobError::internal(spec, e);
    let watch = Stopwatch::start();
    let one = |r: Result<VerificationReport, String>| r.map(|r| vec![r]).map_err(|e| internal(&e));

    match (&target, spec.check) {
        (Target::Grassmann { p, q, algebra }, CheckId::Qybe) => {
            let r = match algebra {
                DivisionAlgebra::Real => grassmann::check_qybe_grassmann(*p, *q, backend, &sampler, false),
                a => grassmann::check_qybe_variant(*p, *q, *a, backend, &sampler),
            };
            one(r.map_err(|e| e.to_string()))
        }
        (Target::Grassmann { p, q, .. }, CheckId::Expansion) => one(grassmann::expansion_check_grassmann(*p, *q).map_err(|e| e.to_string())),
        (_, CheckId::CybeIndex) => {
            let report = match CurvatureTensor::from_pair(&target.pair()) {
                Ok(curv) => verify::check_cybe_index(&curv, &subject),
                Err(e) => return Err(internal(&e)),
            };
            Ok(vec![report.timed(&watch)])
        }
        (_, CheckId::CurvatureCasimir) => {
            let report = VerificationReport::new("curvature-casimir", &subject, Backend::Exact);
            let report = match verify_curvature_casimir(&target.pair()) {
                Ok(c) => report.with_detail(format!("c* = {}", fmt_rational(&c))),
                Err(LieError::NoProportionality(why)) => report.with_verdict(Verdict::Fail).with_detail(why),
                Err(e) => return Err(internal(&e)),
            };
            Ok(vec![report.timed(&watch)])
        }
        (_, CheckId::Splitting) => {
            let report = VerificationReport::new("splitting", &subject, Backend::Exact);
            let report = match target.pair().check_splitting() {
                Ok(s) => report.with_detail(format!("dim k = {}, dim m = {}, brackets = {}", s.k_dim, s.m_dim, s.brackets_checked)),
                Err(e @ LieError::SplittingViolation { .. }) => report.with_verdict(Verdict::Fail).with_detail(e.to_string()),
                Err(e) => return Err(internal(&e)),
            };
            Ok(vec![report.timed(&watch)])
        }
        (Target::Catalog(entry), check) => run_catalog(spec, entry, check, &subject, &sampler),
        (Target::Grassmann { .. }, _) => unreachable!("validated"),
    }
}

fn run_catalog(
    spec: &JobSpec,
    entry: &CatalogEntry,
    check: CheckId,
    subject: &Subject,
    sampler: &SamplerConfig,
) -> Result<Vec<VerificationReport>, JobError> {
    let internal = |e: &dyn std::fmt::Display| JobError::internal(spec, e);
    let verify_err = |e: VerifyError| internal(&e);
    let watch = Stopwatch::start();
    let backend = spec.mode;
    let reports = match check {
        CheckId::Qybe => vec![verify::check_qybe(&catalog::assemble_r(entry).r, subject, backend, sampler).map_err(verify_err)?],
        CheckId::Cybe => vec![verify::check_cybe(&catalog::classical_r(entry), subject, backend, sampler).map_err(verify_err)?],
        CheckId::CybeCasimir => {
            let (g, c) = catalog::build_gc_closed(entry);
            let zero = g.scale(&Rational::zero());
            let mut r = verify::check_cybe(&catalog::classical_r_from(&zero, &c), subject, backend, sampler).map_err(verify_err)?;
            r.check = "cybe-casimir".into();
            vec![r]
        }
        CheckId::Identities => verify::check_identity_suite(entry).map_err(verify_err)?,
        CheckId::Unitarity => vec![verify::check_unitarity(&catalog::assemble_r(entry).r, subject).map_err(verify_err)?.0],
        CheckId::ClassicalLimit => vec![semiclassical::classical_limit_of(entry).map_err(|e| internal(&e))?],
        CheckId::ReadOff => (2..=4)
            .map(|k| {
                let w = Stopwatch::start();
                let report = VerificationReport::new("read-off", subject, Backend::Exact).with_detail(format!("order {k}"));
                match semiclassical::read_off_rk(entry, k) {
                    Ok(_) => Ok(report.timed(&w)),
                    Err(SemiclassicalError::Mismatch { order, row, col, expected, found }) => Ok(report
                        .with_witness(Some(Witness { row, col, value: found, at: Some(format!("order {order}, expected {expected}")) }))
                        .timed(&w)),
                    Err(e) => Err(internal(&e)),
                }
            })
            .collect::<Result<_, _>>()?,
        CheckId::Fit => {
            let (g, c) = catalog::build_gc_closed(entry);
            let mut report = VerificationReport::new("fit", subject, Backend::Exact);
            report.seed = Some(sampler.seed);
            let report = match semiclassical::fit_shift_constant(&g, &c, sampler) {
                Ok(fit) => {
                    let list = |xs: &[Rational]| xs.iter().map(fmt_rational).collect::<Vec<_>>().join(", ");
                    let ok = fit.verified == [entry.shift()];
                    report
                        .with_verdict(Verdict::from_bool(ok))
                        .with_detail(format!("c = {{{}}}; candidates {{{}}}; tabulated {}", list(&fit.verified), list(&fit.candidates), fmt_rational(&entry.shift())))
                }
                Err(SemiclassicalError::NoSolution(why)) => report.with_verdict(Verdict::Fail).with_detail(why),
                Err(e @ SemiclassicalError::Unconstrained { .. }) => {
                    // not unique, but the tabulated value can still be certified
                    let exact = verify::check_qybe(&catalog::assemble_r(entry).r, subject, Backend::Exact, sampler).map_err(verify_err)?;
                    report.with_verdict(Verdict::Fail).with_detail(format!(
                        "{e}; tabulated c = {} gives exact QYBE {}",
                        fmt_rational(&entry.shift()),
                        exact.verdict.name()
                    ))
                }
                Err(e) => return Err(internal(&e)),
            };
            vec![report]
        }
        CheckId::Crosscheck => {
            let report = VerificationReport::new("crosscheck", subject, Backend::Exact);
            vec![match catalog::crosscheck_closed_vs_computed(entry) {
                Ok(()) => report,
                Err(CatalogError::Mismatch { which, row, col, closed, computed }) => report.with_witness(Some(Witness {
                    row,
                    col,
                    value: computed,
                    at: Some(format!("{which}, closed form {closed}")),
                })),
                Err(e) => return Err(internal(&e)),
            }]
        }
        CheckId::CybeIndex | CheckId::CurvatureCasimir | CheckId::Splitting | CheckId::Expansion => unreachable!("dispatched earlier"),
    };
    let single = reports.len() == 1;
    Ok(reports.into_iter().map(|r| if single && r.elapsed_ms == 0 { r.timed(&watch) } else { r }).collect())
}

/// Runs every job of a manifest with at most `jobs` running at once.
/// Results are in manifest order.
pub fn run_manifest(manifest: &RunManifest, jobs: usize) -> Vec<Result<Vec<VerificationReport>, JobError>> {
    let run = |spec: &JobSpec| run_job(spec, manifest.seed);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if jobs > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return pool.install(|| manifest.jobs.par_iter().map(run).collect());
            }
        }
    }
    let _ = jobs;
    manifest.jobs.iter().map(run).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Serializes reports. JSON is a pretty-printed array with a trailing
/// newline; text is a fixed-width table.
pub fn emit_report(reports: &[VerificationReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        ReportFormat::Text => text_table(reports),
    }
}

fn text_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<20} {:<21} {:<12} {:<8} {:<21} {:>9}  detail", "check", "entry", "params", "backend", "verdict", "ms");
    for r in reports {
        let detail = match (&r.witness, &r.detail) {
            (Some(w), _) => {
                let at = w.at.as_deref().map(|a| format!(" at {a}")).unwrap_or_default();
                format!("residual[{},{}] = {}{}", w.row, w.col, w.value, at)
            }
            (None, Some(d)) => d.clone(),
            (None, None) => String::new(),
        };
        let _ = writeln!(
            out,
            "{:<20} {:<21} {:<12} {:<8} {:<21} {:>9}  {}",
            r.check,
            r.entry,
            r.params.to_string(),
            r.backend.name(),
            r.verdict.name(),
            r.elapsed_ms,
            detail
        );
    }
    out
}

/// Zeroes elapsed times so reports can be compared byte for byte.
pub fn without_timing(reports: &[VerificationReport]) -> Vec<VerificationReport> {
    reports.iter().cloned().map(|mut r| {
        r.elapsed_ms = 0;
        r
    }).collect()
}

/// Parametric `R` of a target: the catalog matrix or the composed one.
pub fn r_matrix(target: &Target) -> Result<crate::tensor::FMatrix, JobError> {
    let err = |e: CatalogError| JobError::Internal { context: "build".into(), message: e.to_string() };
    Ok(match target {
        Target::Catalog(e) => catalog::assemble_r(e).r,
        Target::Grassmann { p, q, algebra: DivisionAlgebra::Real } => grassmann::compose_r(*p, *q).map_err(err)?.r,
        Target::Grassmann { p, q, algebra } => grassmann::compose_variant(*p, *q, *algebra).map_err(err)?.r,
    })
}

/// Named matrices for export: `g_hat`, `c_hat`, `r` for catalog entries,
/// `r` for composed ones.
pub fn build_artifacts(target: &Target) -> Result<Vec<(String, MatrixJson)>, JobError> {
    let mut out = Vec::new();
    if let Target::Catalog(e) = target {
        let (g, c) = catalog::build_gc_closed(e);
        out.push(("g_hat".to_string(), g.to_json()));
        out.push(("c_hat".to_string(), c.to_json()));
    }
    out.push(("r".to_string(), r_matrix(target)?.to_json()));
    Ok(out)
}

/// `M_0, …, M_order` of `R = Σ M_k h^k`.
pub fn expand_artifacts(target: &Target, order: usize) -> Result<Vec<MatrixJson>, JobError> {
    let series = semiclassical::expand_r(&r_matrix(target)?, order).map_err(|e| JobError::Internal { context: "expand".into(), message: e.to_string() })?;
    Ok((0..=order).map(|k| series.coeff(k).to_json()).collect())
}
