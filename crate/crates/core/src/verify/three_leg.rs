use super::{first_witness, Backend, SamplerConfig, Stopwatch, Subject, Verdict, VerificationReport, VerifyError};
use crate::scalar::{MultiPoly, Point, Ring, Var};
use crate::tensor::{FMatrix, LegMatrix, QMatrix, TensorError};

/// An equation in `X₁₂, X₁₃, X₂₃` whose residual must vanish.
pub trait ThreeLegForm: Sync {
    const CHECK: &'static str;
    fn residual<T: Ring>(&self, m12: &LegMatrix<T>, m13: &LegMatrix<T>, m23: &LegMatrix<T>) -> Result<LegMatrix<T>, TensorError>;
}

/// `R₁₂ R₁₃ R₂₃ - R₂₃ R₁₃ R₁₂`.
pub struct Qybe;

impl ThreeLegForm for Qybe {
    const CHECK: &'static str = "qybe";
    fn residual<T: Ring>(&self, m12: &LegMatrix<T>, m13: &LegMatrix<T>, m23: &LegMatrix<T>) -> Result<LegMatrix<T>, TensorError> {
        let left = m12.mul(m13)?.mul(m23)?;
        let right = m23.mul(m13)?.mul(m12)?;
        left.sub(&right)
    }
}

/// `[r₁₂, r₁₃] + [r₁₂, r₂₃] + [r₁₃, r₂₃]`.
pub struct Cybe;

impl ThreeLegForm for Cybe {
    const CHECK: &'static str = "cybe";
    fn residual<T: Ring>(&self, m12: &LegMatrix<T>, m13: &LegMatrix<T>, m23: &LegMatrix<T>) -> Result<LegMatrix<T>, TensorError> {
        m12.commutator(m13)?.add(&m12.commutator(m23)?)?.add(&m13.commutator(m23)?)
    }
}

/// Spectral arguments substituted for `s` on the leg pairs 12, 13, 23.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegArguments {
    pub a12: MultiPoly,
    pub a13: MultiPoly,
    pub a23: MultiPoly,
}

impl LegArguments {
    /// `u`, `u + v`, `v`.
    pub fn difference() -> Self {
        let u = MultiPoly::var(Var::U);
        let v = MultiPoly::var(Var::V);
        LegArguments { a13: &u + &v, a12: u, a23: v }
    }

    fn with_targets(&self) -> [(&MultiPoly, [usize; 2]); 3] {
        [(&self.a12, [0, 1]), (&self.a13, [0, 2]), (&self.a23, [1, 2])]
    }
}

impl Default for LegArguments {
    fn default() -> Self {
        Self::difference()
    }
}

fn leg_dim(op: &FMatrix) -> Result<usize, VerifyError> {
    match op.dims() {
        [a, b] if a == b => Ok(*a),
        dims => Err(TensorError::DimensionMismatch(format!("expected two equal legs, got {dims:?}")).into()),
    }
}

/// Exact residual over `ℚ(u, v, h)`.
pub fn exact_residual<F: ThreeLegForm>(form: &F, op: &FMatrix, args: &LegArguments) -> Result<FMatrix, VerifyError> {
    let d = leg_dim(op)?;
    let ambient = [d, d, d];
    let mut legs = Vec::with_capacity(3);
    for (arg, targets) in args.with_targets() {
        legs.push(op.subst_all(Var::S, arg)?.embed(&targets, &ambient)?);
    }
    Ok(form.residual(&legs[0], &legs[1], &legs[2])?)
}

/// The three embedded operators at a sample point, or an error on a pole.
pub fn sampled_legs(op: &FMatrix, args: &LegArguments, point: &Point) -> Result<[QMatrix; 3], VerifyError> {
    let d = leg_dim(op)?;
    let ambient = [d, d, d];
    let mut legs = Vec::with_capacity(3);
    for (arg, targets) in args.with_targets() {
        let s0 = arg.eval(point.values()).map_err(TensorError::from)?;
        let at = point.clone().with(Var::S, s0);
        legs.push(op.eval_all(&at)?.embed(&targets, &ambient)?);
    }
    Ok(legs.try_into().expect("three legs"))
}

/// Runs a three-leg check in either backend.
pub fn check_three_leg<F: ThreeLegForm>(
    form: &F,
    op: &FMatrix,
    subject: &Subject,
    backend: Backend,
    sampler: &SamplerConfig,
    args: &LegArguments,
) -> Result<VerificationReport, VerifyError> {
    let watch = Stopwatch::start();
    leg_dim(op)?;
    let mut report = VerificationReport::new(F::CHECK, subject, backend);
    if *args != LegArguments::difference() {
        report.detail = Some(format!("arguments {}, {}, {}", args.a12, args.a13, args.a23));
    }
    match backend {
        Backend::Exact => {
            let residual = exact_residual(form, op, args)?;
            report = report.with_witness(first_witness(&residual, None));
        }
        Backend::Sampled => {
            sampler.validate().map_err(VerifyError::Invalid)?;
            report.seed = Some(sampler.seed);
            let mut stream = sampler.sampler();
            let mut points = Vec::new();
            for i in 0..sampler.num_points {
                let Some((point, legs)) = stream.accepted(|p| sampled_legs(op, args, &p.to_point())) else {
                    report.verdict = Verdict::PoleRetryExhausted;
                    report.detail = Some(format!("no pole-free sample for point {i}"));
                    break;
                };
                let residual = form.residual(&legs[0], &legs[1], &legs[2])?;
                let witness = first_witness(&residual, Some(format!("point {i}: {point}")));
                points.push(point);
                if witness.is_some() {
                    report = report.with_witness(witness);
                    break;
                }
            }
            report.points = Some(points);
        }
    }
    Ok(report.timed(&watch))
}

/// QYBE in difference convention.
pub fn check_qybe(r: &FMatrix, subject: &Subject, backend: Backend, sampler: &SamplerConfig) -> Result<VerificationReport, VerifyError> {
    check_three_leg(&Qybe, r, subject, backend, sampler, &LegArguments::difference())
}

/// CYBE in difference convention.
pub fn check_cybe(r: &FMatrix, subject: &Subject, backend: Backend, sampler: &SamplerConfig) -> Result<VerificationReport, VerifyError> {
    check_three_leg(&Cybe, r, subject, backend, sampler, &LegArguments::difference())
}
