use super::{first_witness, Backend, Stopwatch, Subject, VerificationReport, VerifyError};
use crate::scalar::{MultiPoly, RatFunc, Var};
use crate::tensor::FMatrix;

/// `R(s) R(-s)`; passes when it equals `f · id`, with `f` returned.
pub fn check_unitarity(r: &FMatrix, subject: &Subject) -> Result<(VerificationReport, Option<RatFunc>), VerifyError> {
    let watch = Stopwatch::start();
    let minus_s = -&MultiPoly::var(Var::S);
    let product = r.mul(&r.subst_all(Var::S, &minus_s)?)?;
    let report = VerificationReport::new("unitarity", subject, Backend::Exact);
    let out = match product.scalar_multiple_of_identity() {
        Some(f) => (report.with_detail(format!("f = {f}")), Some(f)),
        None => {
            // witness: first entry off the f·id pattern
            let f = product.get(0, 0).clone();
            let off = product.sub(&FMatrix::identity(product.dims()).scale(&f))?;
            (report.with_witness(first_witness(&off, Some("R(s)R(-s) - R(s)R(-s)[0,0] id".into()))), None)
        }
    };
    Ok((out.0.timed(&watch), out.1))
}
