//! Exact and sampled verification of the Yang-Baxter equations, the
//! identity suites and unitarity.

mod identities;
mod index;
mod sampler;
mod three_leg;
mod unitarity;

pub use identities::{check_identity_suite, identity_suite, IdentityChain};
pub use index::check_cybe_index;
pub use sampler::{SamplePoint, Sampler, SamplerConfig};
pub use three_leg::{check_cybe, check_qybe, check_three_leg, exact_residual, sampled_legs, Cybe, LegArguments, Qybe, ThreeLegForm};
pub use unitarity::check_unitarity;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{CatalogEntry, Params};
use crate::lie::LieError;
use crate::tensor::TensorError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Sampled,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PoleRetryExhausted,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::PoleRetryExhausted => "pole-retry-exhausted",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// First nonzero entry of a residual, with an optional location label
/// (sample point, identity link, index tuple).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
}

/// What a report is about: an entry id and its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub entry: String,
    pub params: Params,
}

impl Subject {
    pub fn new(entry: impl Into<String>, params: Params) -> Self {
        Subject { entry: entry.into(), params }
    }

    pub fn grassmann(p: usize, q: usize) -> Self {
        Subject::new("grassmann", Params::pq(p as i64, q as i64))
    }
}

impl From<&CatalogEntry> for Subject {
    fn from(entry: &CatalogEntry) -> Self {
        Subject::new(entry.id(), entry.params())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub entry: String,
    pub params: Params,
    pub backend: Backend,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<SamplePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, subject: &Subject, backend: Backend) -> Self {
        VerificationReport {
            check: check.into(),
            entry: subject.entry.clone(),
            params: subject.params.clone(),
            backend,
            verdict: Verdict::Pass,
            elapsed_ms: 0,
            seed: None,
            witness: None,
            points: None,
            detail: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn with_witness(mut self, witness: Option<Witness>) -> Self {
        if witness.is_some() {
            self.verdict = Verdict::Fail;
        }
        self.witness = witness;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn timed(mut self, watch: &Stopwatch) -> Self {
        self.elapsed_ms = watch.elapsed_ms();
        self
    }
}

/// Wall-clock timer; reads zero where no clock is available.
pub struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    pub fn elapsed_ms(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_millis() as u64
        }
        #[cfg(target_arch = "wasm32")]
        {
            0
        }
    }
}

/// Witness for the first nonzero entry of `m`.
pub fn first_witness<T: crate::tensor::JsonScalar>(m: &crate::tensor::LegMatrix<T>, at: Option<String>) -> Option<Witness> {
    m.first_nonzero().map(|(row, col, x)| Witness { row, col, value: x.to_text(), at })
}
