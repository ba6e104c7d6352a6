use num_traits::Zero;

use super::{Backend, Stopwatch, Subject, VerificationReport, Witness};
use crate::lie::CurvatureTensor;
use crate::scalar::{fmt_rational, Rational};

/// Component form of the CYBE for `r = T/s` with
/// `T = Σ R^i_j^k_l E_ij ⊗ E_kl`. Clearing denominators leaves two
/// conditions for all free indices `(i,n; k,l; r,s)`:
///
/// `[T₁₂,T₁₃] + [T₁₂,T₂₃] = 0` and `[T₁₂,T₂₃] + [T₁₃,T₂₃] = 0`.
pub fn check_cybe_index(curv: &CurvatureTensor, subject: &Subject) -> VerificationReport {
    let watch = Stopwatch::start();
    let d = curv.dim();
    let t = curv.mixed();
    let at = |i: usize, j: usize, k: usize, l: usize| &t[((i * d + j) * d + k) * d + l];
    let mut report = VerificationReport::new("cybe-index", subject, Backend::Exact);
    'outer: for i in 0..d {
        for n in 0..d {
            for k in 0..d {
                for l in 0..d {
                    for r in 0..d {
                        for s in 0..d {
                            let mut first = Rational::zero();
                            let mut second = Rational::zero();
                            for m in 0..d {
                                let b = at(i, n, k, m) * at(m, l, r, s) - at(k, m, r, s) * at(i, n, m, l);
                                let a = at(i, m, k, l) * at(m, n, r, s) - at(m, n, k, l) * at(i, m, r, s);
                                let c = at(i, n, r, m) * at(k, l, m, s) - at(k, l, r, m) * at(i, n, m, s);
                                first += &a + &b;
                                second += b + c;
                            }
                            for (which, value) in [(1, first), (2, second)] {
                                if !value.is_zero() {
                                    report = report.with_witness(Some(Witness {
                                        row: (i * d + k) * d + r,
                                        col: (n * d + l) * d + s,
                                        value: fmt_rational(&value),
                                        at: Some(format!("condition {which} at (i,n;k,l;r,s) = ({i},{n};{k},{l};{r},{s})")),
                                    }));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.timed(&watch)
}
