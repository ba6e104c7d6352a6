//! Expansion of `R(s)` in powers of `h`, the classical limit, the
//! geometric-series coefficients, and recovery of the shift constant.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::catalog::{assemble, build_gc_closed, classical_r_from, CatalogEntry, CoefficientPair};
use crate::scalar::{fmt_rational, MultiPoly, RatFunc, Rational, ScalarError, TruncatedSeries, Var};
use crate::tensor::{FMatrix, LegMatrix, QMatrix, TensorError};
use crate::verify::{
    check_qybe, first_witness, Backend, Qybe, SamplePoint, SamplerConfig, Stopwatch, Subject, ThreeLegForm, VerificationReport,
    VerifyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiclassicalError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("order {order} differs at ({row}, {col}): expected {expected}, found {found}")]
    Mismatch { order: usize, row: usize, col: usize, expected: String, found: String },
    #[error("{0}")]
    InvalidOrder(String),
    #[error("no rational shift constant survives: {0}")]
    NoSolution(String),
    /// Every sampled residual vanishes identically in `c`.
    #[error("the QYBE does not constrain c at {points} sample points")]
    Unconstrained { points: usize },
}

/// `R = Σ_k M_k h^k + O(h^{N+1})` with each `M_k` over `ℚ(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRMatrix {
    order: usize,
    coeffs: Vec<FMatrix>,
}

impl SeriesRMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[FMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &FMatrix {
        &self.coeffs[k]
    }

    /// `Σ_k M_k h^k`.
    pub fn resum(&self) -> FMatrix {
        let h = RatFunc::var(Var::H);
        let mut acc = FMatrix::zeros(self.coeffs[0].dims());
        for m in self.coeffs.iter().rev() {
            acc = acc.scale(&h).add(m).expect("same legs");
        }
        acc
    }
}

pub fn expand_r(r: &FMatrix, order: usize) -> Result<SeriesRMatrix, SemiclassicalError> {
    let mut coeffs = vec![FMatrix::zeros(r.dims()); order + 1];
    for (row, col, x) in r.nonzeros() {
        let series = TruncatedSeries::from_ratfunc(x, order)?;
        for (k, c) in series.coeffs().iter().enumerate() {
            if !c.is_zero() {
                coeffs[k].set(row, col, c.clone());
            }
        }
    }
    Ok(SeriesRMatrix { order, coeffs })
}

fn compare(order: usize, expected: &FMatrix, found: &FMatrix) -> Result<(), SemiclassicalError> {
    let diff = expected.sub(found)?;
    match diff.first_nonzero() {
        None => Ok(()),
        Some((row, col, _)) => Err(SemiclassicalError::Mismatch {
            order,
            row,
            col,
            expected: expected.get(row, col).to_string(),
            found: found.get(row, col).to_string(),
        }),
    }
}

/// Passes iff the `h¹` coefficient equals `r̂`.
pub fn check_classical_limit(series: &SeriesRMatrix, r_hat: &FMatrix, subject: &Subject) -> VerificationReport {
    let watch = Stopwatch::start();
    let report = VerificationReport::new("classical-limit", subject, Backend::Exact);
    let witness = if series.order() < 1 {
        return report.with_detail("series truncated before order 1").with_verdict(crate::verify::Verdict::Fail).timed(&watch);
    } else {
        let diff = series.coeff(1).sub(r_hat).expect("same legs");
        first_witness(&diff, Some("order 1".into()))
    };
    report.with_witness(witness).timed(&watch)
}

/// `(-c)^{k-1}/s^k · Ĝ`, asserted equal to the `h^k` coefficient of `R`.
pub fn read_off_rk(entry: &CatalogEntry, k: usize) -> Result<FMatrix, SemiclassicalError> {
    if k < 2 {
        return Err(SemiclassicalError::InvalidOrder(format!("read-off needs k >= 2, got {k}")));
    }
    let (g, c) = build_gc_closed(entry);
    let coeffs = crate::catalog::coefficients(entry);
    let predicted = geometric_term(&g, &coeffs.shift_a, k);
    let series = expand_r(&assemble(&g, &c, &coeffs), k)?;
    compare(k, &predicted, series.coeff(k))?;
    Ok(predicted)
}

fn geometric_term(g: &QMatrix, c: &Rational, k: usize) -> FMatrix {
    let mut factor = Rational::one();
    for _ in 1..k {
        factor *= -c;
    }
    let s_pow = RatFunc::var(Var::S).pow(k as u32).inv().expect("s is nonzero");
    g.to_ratfunc().scale(&s_pow.scale(&factor))
}

/// Fitted shift constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFit {
    /// Univariate condition on `c`, written as a polynomial in `s`.
    pub condition: MultiPoly,
    pub candidates: Vec<Rational>,
    pub verified: Vec<Rational>,
    pub points: Vec<SamplePoint>,
}

/// Searches `c` in `R = id + h/(s + c h) Ĝ + (h/s) Ĉ` such that the QYBE
/// holds. The unknown `c` is carried in the variable slot `s`.
pub fn fit_shift_constant(g_hat: &QMatrix, c_hat: &QMatrix, sampler: &SamplerConfig) -> Result<ShiftFit, SemiclassicalError> {
    sampler.validate().map_err(VerifyError::Invalid)?;
    let d = match g_hat.dims() {
        [a, b] if a == b => *a,
        dims => return Err(TensorError::DimensionMismatch(format!("expected two equal legs, got {dims:?}")).into()),
    };
    let ambient = [d, d, d];
    let g = g_hat.to_ratfunc();
    let c = c_hat.to_ratfunc();
    let id = FMatrix::identity(&[d, d]);
    let leg = |arg: &Rational, h: &Rational| -> Result<FMatrix, SemiclassicalError> {
        if arg.is_zero() {
            return Err(ScalarError::EvalPole.into());
        }
        // h/(arg + c h) with c in slot s
        let den = &MultiPoly::constant(arg.clone()) + &MultiPoly::var(Var::S).scale(h);
        let a = RatFunc::new(MultiPoly::constant(h.clone()), den)?;
        let b = RatFunc::constant(h / arg);
        Ok(id.add(&g.scale(&a))?.add(&c.scale(&b))?)
    };
    let mut stream = sampler.sampler();
    let mut condition = MultiPoly::zero();
    let mut points = Vec::new();
    for i in 0..sampler.num_points {
        let found = stream.accepted(|p| -> Result<Vec<FMatrix>, SemiclassicalError> {
            let args = [(&p.u, [0, 1]), (&(&p.u + &p.v), [0, 2]), (&p.v, [1, 2])];
            args.iter().map(|(a, t)| Ok(leg(a, &p.h)?.embed(t, &ambient)?)).collect()
        });
        let Some((point, legs)) = found else {
            return Err(VerifyError::Invalid(format!("no pole-free sample for point {i}")).into());
        };
        let residual: LegMatrix<RatFunc> = Qybe.residual(&legs[0], &legs[1], &legs[2])?;
        for (_, _, x) in residual.nonzeros() {
            condition = MultiPoly::gcd(&condition, x.num());
            if condition.is_constant() {
                break;
            }
        }
        points.push(point);
        if !condition.is_zero() && condition.is_constant() {
            break;
        }
    }
    if condition.is_zero() {
        return Err(SemiclassicalError::Unconstrained { points: points.len() });
    }
    let candidates = condition.rational_roots(Var::S).unwrap_or_default();
    let mut verified = Vec::new();
    for cand in &candidates {
        let r = assemble(g_hat, c_hat, &CoefficientPair::with_shifts(cand.clone(), Rational::zero()));
        let report = check_qybe(&r, &Subject::new("fit-candidate", Default::default()), Backend::Exact, sampler)?;
        if report.passed() {
            verified.push(cand.clone());
        }
    }
    if verified.is_empty() {
        let why = if candidates.is_empty() {
            format!("condition {condition} has no rational root")
        } else {
            format!("candidates {} fail exact verification", candidates.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
        };
        return Err(SemiclassicalError::NoSolution(why));
    }
    Ok(ShiftFit { condition, candidates, verified, points })
}

/// `r̂ = (Ĉ + Ĝ)/s` for a catalog entry together with its expansion.
pub fn classical_limit_of(entry: &CatalogEntry) -> Result<VerificationReport, SemiclassicalError> {
    let (g, c) = build_gc_closed(entry);
    let r = assemble(&g, &c, &crate::catalog::coefficients(entry));
    let series = expand_r(&r, 1)?;
    Ok(check_classical_limit(&series, &classical_r_from(&g, &c), &Subject::from(entry)))
}
