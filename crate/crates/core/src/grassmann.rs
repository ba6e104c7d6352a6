//! Composition of two sphere R-matrices into an R-matrix on `m ⊗ m`, with
//! `m` the `p × q` matrices and `R̂(v) = Rᵖ v Rᵠ`.

use num_traits::Zero;

use crate::catalog::{assemble_r, closed_terms, coefficients, CatalogEntry, CatalogError, TensorTerms};
use crate::lie::{DivisionAlgebra, SymmetricPair};
use crate::scalar::{RatFunc, Rational};
use crate::semiclassical::{expand_r, SemiclassicalError};
use crate::tensor::{FMatrix, QMatrix, TensorError};
use crate::verify::{check_qybe, first_witness, Backend, SamplerConfig, Stopwatch, Subject, VerificationReport, VerifyError};

/// Index bijection between `m^{⊗ℓ}` and `p^ℓ × q^ℓ` arrays.
///
/// `m` is indexed by `(i, j) ↦ i q + j`; tensor factors are ordered with the
/// first one most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegMaps {
    pub p: usize,
    pub q: usize,
    pub legs: usize,
    to_array: Vec<(usize, usize)>,
    from_array: Vec<usize>,
}

pub fn build_leg_maps(p: usize, q: usize, legs: usize) -> LegMaps {
    let (pl, ql) = (p.pow(legs as u32), q.pow(legs as u32));
    let size = pl * ql;
    let mut to_array = Vec::with_capacity(size);
    let mut from_array = vec![0; size];
    for idx in 0..size {
        let (mut rest, mut row, mut col) = (idx, 0, 0);
        let mut scale_p = 1;
        let mut scale_q = 1;
        for _ in 0..legs {
            let pair = rest % (p * q);
            rest /= p * q;
            row += (pair / q) * scale_p;
            col += (pair % q) * scale_q;
            scale_p *= p;
            scale_q *= q;
        }
        to_array.push((row, col));
        from_array[row * ql + col] = idx;
    }
    LegMaps { p, q, legs, to_array, from_array }
}

impl LegMaps {
    pub fn len(&self) -> usize {
        self.to_array.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_array.is_empty()
    }

    /// `(row, col)` in the `p^ℓ × q^ℓ` array for a flat index of `m^{⊗ℓ}`.
    pub fn to_array(&self, idx: usize) -> (usize, usize) {
        self.to_array[idx]
    }

    pub fn from_array(&self, row: usize, col: usize) -> usize {
        self.from_array[row * self.q.pow(self.legs as u32) + col]
    }

    pub fn reshape<T: Clone>(&self, v: &[T]) -> Vec<Vec<T>> {
        let (pl, ql) = (self.p.pow(self.legs as u32), self.q.pow(self.legs as u32));
        (0..pl).map(|r| (0..ql).map(|c| v[self.from_array(r, c)].clone()).collect()).collect()
    }

    pub fn flatten<T: Clone>(&self, a: &[Vec<T>]) -> Vec<T> {
        (0..self.len()).map(|idx| {
            let (r, c) = self.to_array(idx);
            a[r][c].clone()
        }).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ComposedRMatrix {
    pub p: usize,
    pub q: usize,
    pub algebra: DivisionAlgebra,
    pub rp: FMatrix,
    pub rq: FMatrix,
    /// Acts on `m ⊗ m`, legs `[dpq, dpq]`.
    pub r: FMatrix,
}

fn check_pq(p: usize, q: usize) -> Result<(), CatalogError> {
    if p == 0 || q == 0 {
        return Err(CatalogError::ParamOutOfRange(format!("p = {p}, q = {q}, expected >= 1")));
    }
    Ok(())
}

/// `R̂[(r,c), (r',c')] = Rᵖ[r, r'] · Rᵠ[c', c]`, i.e. `V ↦ Rᵖ V Rᵠ` on the
/// reshaped `p² × q²` array.
fn compose_with(p: usize, q: usize, rp: &FMatrix, rq: &FMatrix) -> FMatrix {
    let maps = build_leg_maps(p, q, 2);
    let n = p * q;
    let mut out = FMatrix::zeros(&[n, n]);
    for (r, r2, a) in rp.nonzeros() {
        for (c2, c, b) in rq.nonzeros() {
            out.set(maps.from_array(r, c), maps.from_array(r2, c2), a * b);
        }
    }
    out
}

fn sphere_r(n: usize) -> FMatrix {
    assemble_r(&CatalogEntry::Sphere { n, k: 1 }).r
}

pub fn compose_r(p: usize, q: usize) -> Result<ComposedRMatrix, CatalogError> {
    check_pq(p, q)?;
    let (rp, rq) = (sphere_r(p), sphere_r(q));
    let r = compose_with(p, q, &rp, &rq);
    Ok(ComposedRMatrix { p, q, algebra: DivisionAlgebra::Real, rp, rq, r })
}

/// Negative control: the two `q`-legs of `Rᵠ` swapped on its output side,
/// `Rᵠ ↦ P Rᵠ`.
///
/// Transposing `Rᵠ` is no corruption at all since `Rᵠ` is symmetric, and a
/// partial transpose maps the `q = 2` factor to `Rᵠ(-s)`, again a solution.
pub fn compose_r_corrupted(p: usize, q: usize) -> Result<ComposedRMatrix, CatalogError> {
    check_pq(p, q)?;
    let rp = sphere_r(p);
    let rq = QMatrix::flip(q).to_ratfunc().mul(&sphere_r(q)).expect("same legs");
    let r = compose_with(p, q, &rp, &rq);
    Ok(ComposedRMatrix { p, q, algebra: DivisionAlgebra::Real, rp, rq, r })
}

/// `B ↦ X B` on `K^{p×q}` with real coordinates ordered `(i, j, unit)`.
fn left_action(x: &QMatrix, p: usize, q: usize, d: usize) -> QMatrix {
    let lifted = x.clone().with_dims(&[p, d]).expect("realified size").kron(&QMatrix::identity(&[q]));
    lifted.permute_legs(&[0, 2, 1]).expect("three legs").with_dims(&[p * q * d]).expect("same size")
}

/// `B ↦ B Y` for a realified `Y ∈ gl(q, K)`.
fn right_action(y: &QMatrix, alg: DivisionAlgebra, p: usize, q: usize) -> QMatrix {
    let d = alg.real_dim();
    let mut out = QMatrix::zeros(&[p * q * d]);
    let id_p = QMatrix::identity(&[p]);
    for a in 0..q {
        for b in 0..q {
            for w in 0..d {
                // block (a, b) is Σ_w y_w L_w, and L_w e_0 = e_w
                let coef = y.get(a * d + w, b * d);
                if coef.is_zero() {
                    continue;
                }
                let term = id_p.kron(&QMatrix::elementary(q, b, a)).kron(&alg.right_regular(w));
                out = out.add(&term.with_dims(&[p * q * d]).expect("same size").scale(coef)).expect("same legs");
            }
        }
    }
    out
}

/// Factor R-matrix as `Σ f(s, h) · X ⊗ Y`.
fn factor_terms(entry: &CatalogEntry) -> Vec<(RatFunc, QMatrix, QMatrix)> {
    let n = entry.leg_dim();
    let coeffs = coefficients(entry);
    let terms = closed_terms(entry);
    let id = QMatrix::identity(&[n]);
    let mut out = vec![(RatFunc::one(), id.clone(), id)];
    let mut push = |list: &TensorTerms, f: &RatFunc| {
        for (c, x, y) in list {
            out.push((f.scale(c), x.clone(), y.clone()));
        }
    };
    push(&terms.g, &coeffs.a);
    push(&terms.c, &coeffs.b);
    out
}

/// Same mechanism with the projective factors over `ℂ` or `ℍ`; `m` is
/// `K^{p×q}` realified. Over `ℝ` this reproduces [`compose_r`].
pub fn compose_variant(p: usize, q: usize, algebra: DivisionAlgebra) -> Result<ComposedRMatrix, CatalogError> {
    check_pq(p, q)?;
    let entry = |n: usize| match algebra {
        DivisionAlgebra::Real => CatalogEntry::Sphere { n, k: 1 },
        DivisionAlgebra::Complex => CatalogEntry::ComplexProjective { n },
        DivisionAlgebra::Quaternion => CatalogEntry::QuaternionicProjective { n },
    };
    let d = algebra.real_dim();
    let (ep, eq) = (entry(p), entry(q));
    let m = d * p * q;
    let left: Vec<(RatFunc, QMatrix, QMatrix)> =
        factor_terms(&ep).into_iter().map(|(f, x, y)| (f, left_action(&x, p, q, d), left_action(&y, p, q, d))).collect();
    let right: Vec<(RatFunc, QMatrix, QMatrix)> = factor_terms(&eq)
        .into_iter()
        .map(|(f, x, y)| (f, right_action(&x, algebra, p, q), right_action(&y, algebra, p, q)))
        .collect();
    let mut r = FMatrix::zeros(&[m, m]);
    for (fl, xl, yl) in &left {
        for (fr, xr, yr) in &right {
            let first = xl.mul(xr).expect("same size");
            let second = yl.mul(yr).expect("same size");
            let op = first.kron(&second).to_ratfunc().scale(&(fl * fr));
            r = r.add(&op).expect("same legs");
        }
    }
    Ok(ComposedRMatrix { p, q, algebra, rp: assemble_r(&ep).r, rq: assemble_r(&eq).r, r })
}

fn subject_for(p: usize, q: usize, algebra: DivisionAlgebra) -> Subject {
    match algebra {
        DivisionAlgebra::Real => Subject::grassmann(p, q),
        other => Subject::new(format!("grassmann_{}", other.name()), crate::catalog::Params::pq(p as i64, q as i64)),
    }
}

/// QYBE of the composed matrix on `m^{⊗3}`, multiplied out directly.
pub fn check_qybe_grassmann(
    p: usize,
    q: usize,
    backend: Backend,
    sampler: &SamplerConfig,
    corrupted: bool,
) -> Result<VerificationReport, GrassmannError> {
    let composed = if corrupted { compose_r_corrupted(p, q)? } else { compose_r(p, q)? };
    let mut report = check_qybe(&composed.r, &subject_for(p, q, DivisionAlgebra::Real), backend, sampler)?;
    report.check = "grassmann-qybe".into();
    if corrupted {
        report.detail = Some("corrupted composition: q-legs of Rq swapped on one side".into());
    }
    Ok(report)
}

pub fn check_qybe_variant(
    p: usize,
    q: usize,
    algebra: DivisionAlgebra,
    backend: Backend,
    sampler: &SamplerConfig,
) -> Result<VerificationReport, GrassmannError> {
    let composed = compose_variant(p, q, algebra)?;
    let mut report = check_qybe(&composed.r, &subject_for(p, q, algebra), backend, sampler)?;
    report.check = "grassmann-qybe".into();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrassmannError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Semiclassical(#[from] SemiclassicalError),
    #[error(transparent)]
    Lie(#[from] crate::lie::LieError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Expansion to order 2: `M₀ = id`, `M₁ = t̂/s`, `M₂ = (½ t̂² - id)/s²`.
pub fn expansion_check_grassmann(p: usize, q: usize) -> Result<VerificationReport, GrassmannError> {
    let watch = Stopwatch::start();
    let composed = compose_r(p, q)?;
    let series = expand_r(&composed.r, 2)?;
    let t_hat = SymmetricPair::grassmann(p, q).represented_casimir_k()?;
    let id = QMatrix::identity(t_hat.dims());
    let half = Rational::new(1.into(), 2.into());
    let m2 = t_hat.mul(&t_hat)?.scale(&half).sub(&id)?;
    let inv_s = RatFunc::var(crate::scalar::Var::S).inv().expect("s is nonzero");
    let expected = [id.to_ratfunc(), t_hat.to_ratfunc().scale(&inv_s), m2.to_ratfunc().scale(&inv_s.pow(2))];
    let mut report = VerificationReport::new("grassmann-expansion", &Subject::grassmann(p, q), Backend::Exact);
    for (k, e) in expected.iter().enumerate() {
        let diff = series.coeff(k).sub(e)?;
        if let Some(w) = first_witness(&diff, Some(format!("order {k}"))) {
            report = report.with_witness(Some(w));
            break;
        }
    }
    Ok(report.timed(&watch))
}
