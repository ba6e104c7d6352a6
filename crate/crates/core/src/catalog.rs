//! Closed-form tables of `Ĝ`, `Ĉ` and the coefficients `a`, `b` for the six
//! catalog families, plus the assembled `R(s) = id + a Ĝ + b Ĉ`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{DivisionAlgebra, Involution, LieError, SymmetricPair};
use crate::scalar::{fmt_rational, int, rat, MultiPoly, RatFunc, Rational, Var};
use crate::tensor::{FMatrix, QMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown entry `{0}`")]
    UnknownEntry(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("{which} differs at ({row}, {col}): closed form {closed}, computed {computed}")]
    Mismatch { which: String, row: usize, col: usize, closed: String, computed: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Integer parameters of an entry. Absent keys are omitted from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
}

impl Params {
    pub fn n(n: i64) -> Self {
        Params { n: Some(n), ..Default::default() }
    }

    pub fn nk(n: i64, k: i64) -> Self {
        Params { n: Some(n), k: Some(k), ..Default::default() }
    }

    pub fn pq(p: i64, q: i64) -> Self {
        Params { p: Some(p), q: Some(q), ..Default::default() }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("n", self.n), ("k", self.k), ("p", self.p), ("q", self.q)]
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogEntry {
    Sphere { n: usize, k: i64 },
    ComplexProjective { n: usize },
    QuaternionicProjective { n: usize },
    GlSplit { p: usize, q: usize },
    GlOrthogonal { p: usize, q: usize },
    GlComplex { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryInfo {
    pub id: &'static str,
    pub title: &'static str,
    pub params: &'static [&'static str],
    pub leg_dim: &'static str,
}

pub const ENTRY_IDS: [&str; 6] = ["sphere", "cpn", "hpn", "glpq_glgl", "glpq_sopq", "gl2n_glnc"];

pub fn list_entries() -> Vec<EntryInfo> {
    vec![
        EntryInfo { id: "sphere", title: "(gl(n,R), so(n)), curvature k", params: &["n", "k"], leg_dim: "n" },
        EntryInfo { id: "cpn", title: "(gl(n,C), u(n))", params: &["n"], leg_dim: "2n" },
        EntryInfo { id: "hpn", title: "(gl(n,H), sp(n))", params: &["n"], leg_dim: "4n" },
        EntryInfo { id: "glpq_glgl", title: "(gl(p+q,R), gl(p) x gl(q))", params: &["p", "q"], leg_dim: "p+q" },
        EntryInfo { id: "glpq_sopq", title: "(gl(p+q,R), so(p,q))", params: &["p", "q"], leg_dim: "p+q" },
        EntryInfo { id: "gl2n_glnc", title: "(gl(2n,R), gl(n,C))", params: &["n"], leg_dim: "2n" },
    ]
}

fn positive(name: &str, v: Option<i64>) -> Result<usize, CatalogError> {
    match v {
        Some(x) if x >= 1 => Ok(x as usize),
        Some(x) => Err(CatalogError::ParamOutOfRange(format!("{name} = {x}, expected >= 1"))),
        None => Err(CatalogError::ParamOutOfRange(format!("missing {name}"))),
    }
}

impl CatalogEntry {
    pub fn from_params(id: &str, params: &Params) -> Result<Self, CatalogError> {
        let expected: &[&str] = match id {
            "sphere" => &["n", "k"],
            "cpn" | "hpn" | "gl2n_glnc" => &["n"],
            "glpq_glgl" | "glpq_sopq" => &["p", "q"],
            _ => return Err(CatalogError::UnknownEntry(id.to_string())),
        };
        for (name, v) in [("n", params.n), ("k", params.k), ("p", params.p), ("q", params.q)] {
            if v.is_some() && !expected.contains(&name) {
                return Err(CatalogError::ParamOutOfRange(format!("`{id}` takes no parameter {name}")));
            }
        }
        Ok(match id {
            "sphere" => {
                let k = params.k.ok_or_else(|| CatalogError::ParamOutOfRange("missing k".into()))?;
                if !(-1..=1).contains(&k) {
                    return Err(CatalogError::ParamOutOfRange(format!("k = {k}, expected -1, 0 or 1")));
                }
                CatalogEntry::Sphere { n: positive("n", params.n)?, k }
            }
            "cpn" => CatalogEntry::ComplexProjective { n: positive("n", params.n)? },
            "hpn" => CatalogEntry::QuaternionicProjective { n: positive("n", params.n)? },
            "gl2n_glnc" => CatalogEntry::GlComplex { n: positive("n", params.n)? },
            "glpq_glgl" => CatalogEntry::GlSplit { p: positive("p", params.p)?, q: positive("q", params.q)? },
            _ => CatalogEntry::GlOrthogonal { p: positive("p", params.p)?, q: positive("q", params.q)? },
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            CatalogEntry::Sphere { .. } => "sphere",
            CatalogEntry::ComplexProjective { .. } => "cpn",
            CatalogEntry::QuaternionicProjective { .. } => "hpn",
            CatalogEntry::GlSplit { .. } => "glpq_glgl",
            CatalogEntry::GlOrthogonal { .. } => "glpq_sopq",
            CatalogEntry::GlComplex { .. } => "gl2n_glnc",
        }
    }

    pub fn params(&self) -> Params {
        match *self {
            CatalogEntry::Sphere { n, k } => Params::nk(n as i64, k),
            CatalogEntry::ComplexProjective { n } | CatalogEntry::QuaternionicProjective { n } | CatalogEntry::GlComplex { n } => {
                Params::n(n as i64)
            }
            CatalogEntry::GlSplit { p, q } | CatalogEntry::GlOrthogonal { p, q } => Params::pq(p as i64, q as i64),
        }
    }

    pub fn algebra(&self) -> DivisionAlgebra {
        match self {
            CatalogEntry::ComplexProjective { .. } => DivisionAlgebra::Complex,
            CatalogEntry::QuaternionicProjective { .. } => DivisionAlgebra::Quaternion,
            _ => DivisionAlgebra::Real,
        }
    }

    pub fn leg_dim(&self) -> usize {
        match *self {
            CatalogEntry::Sphere { n, .. } => n,
            CatalogEntry::ComplexProjective { n } => 2 * n,
            CatalogEntry::QuaternionicProjective { n } => 4 * n,
            CatalogEntry::GlSplit { p, q } | CatalogEntry::GlOrthogonal { p, q } => p + q,
            CatalogEntry::GlComplex { n } => 2 * n,
        }
    }

    /// The shift `c_a` in `a = h/(s + c_a h)`.
    pub fn shift(&self) -> Rational {
        match *self {
            CatalogEntry::Sphere { n, k } => rat(k * (n as i64 - 2), 2),
            CatalogEntry::ComplexProjective { n } => int(n as i64),
            CatalogEntry::QuaternionicProjective { n } => int(2 * n as i64 + 2),
            CatalogEntry::GlSplit { .. } | CatalogEntry::GlComplex { .. } => Rational::zero(),
            CatalogEntry::GlOrthogonal { p, q } => rat(p as i64 + q as i64 - 2, 2),
        }
    }

    /// The first-principles pair whose represented `C`, `G` should match the
    /// closed forms.
    pub fn symmetric_pair(&self) -> SymmetricPair {
        let label = format!("{}({})", self.id(), self.params());
        match *self {
            CatalogEntry::Sphere { n, .. } => SymmetricPair::general_linear(label, DivisionAlgebra::Real, n, Involution::NegTranspose),
            CatalogEntry::ComplexProjective { n } => {
                SymmetricPair::general_linear(label, DivisionAlgebra::Complex, n, Involution::NegTranspose)
            }
            CatalogEntry::QuaternionicProjective { n } => {
                SymmetricPair::general_linear(label, DivisionAlgebra::Quaternion, n, Involution::NegTranspose)
            }
            CatalogEntry::GlSplit { p, q } => {
                let i = split_sign(p, q);
                let theta = Involution::Conjugation { by: i.clone(), inverse: i };
                SymmetricPair::general_linear(label, DivisionAlgebra::Real, p + q, theta)
            }
            CatalogEntry::GlOrthogonal { p, q } => {
                let i = split_sign(p, q);
                let theta = Involution::NegTransposeConjugation { by: i.clone(), inverse: i };
                SymmetricPair::general_linear(label, DivisionAlgebra::Real, p + q, theta)
            }
            CatalogEntry::GlComplex { n } => {
                let i = complex_structure(n);
                // I² = -1, so conjugation uses I⁻¹ = -I
                let theta = Involution::Conjugation { by: i.clone(), inverse: i.neg() };
                SymmetricPair::general_linear(label, DivisionAlgebra::Real, 2 * n, theta)
            }
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.id(), self.params())
    }
}

/// `diag(-1_p, 1_q)`.
pub fn split_sign(p: usize, q: usize) -> QMatrix {
    QMatrix::from_fn(&[p + q], |r, c| match (r == c, r < p) {
        (false, _) => Rational::zero(),
        (true, true) => -Rational::one(),
        (true, false) => Rational::one(),
    })
}

/// `[[0, 1_n], [-1_n, 0]]`.
pub fn complex_structure(n: usize) -> QMatrix {
    QMatrix::from_fn(&[2 * n], |r, c| {
        if r < n && c == r + n {
            Rational::one()
        } else if r >= n && c + n == r {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// A sum `Σ coeff · x ⊗ y` of single-leg matrices.
pub type TensorTerms = Vec<(Rational, QMatrix, QMatrix)>;

/// Closed-form `Ĝ` and `Ĉ` as literal sums of Kronecker terms.
#[derive(Clone, Debug)]
pub struct ClosedTerms {
    pub g: TensorTerms,
    pub c: TensorTerms,
}

pub fn sum_terms(terms: &TensorTerms, n: usize) -> QMatrix {
    let mut out = QMatrix::zeros(&[n, n]);
    for (coef, x, y) in terms {
        out = out.add(&x.kron(y).scale(coef)).expect("same legs");
    }
    out
}

pub fn closed_terms(entry: &CatalogEntry) -> ClosedTerms {
    let e = |n: usize, i: usize, j: usize| QMatrix::elementary(n, i, j);
    let one = Rational::one;
    let mut g = TensorTerms::new();
    let mut c = TensorTerms::new();
    let flip = |n: usize, c: &mut TensorTerms| {
        for i in 0..n {
            for j in 0..n {
                c.push((one(), e(n, i, j), e(n, j, i)));
            }
        }
    };
    match *entry {
        CatalogEntry::Sphere { n, .. } | CatalogEntry::ComplexProjective { n } | CatalogEntry::QuaternionicProjective { n } => {
            let alg = entry.algebra();
            for i in 0..n {
                for j in 0..n {
                    for u in 0..alg.real_dim() {
                        g.push((-one(), alg.unit_block(n, i, j, u), alg.unit_block(n, i, j, u)));
                        let sign = if u == 0 { one() } else { -one() };
                        c.push((sign, alg.unit_block(n, i, j, u), alg.unit_block(n, j, i, u)));
                    }
                }
            }
        }
        CatalogEntry::GlSplit { p, q } => {
            let n = p + q;
            for i in 0..n {
                for j in 0..n {
                    let sign = if (i < p) == (j < p) { one() } else { -one() };
                    g.push((sign, e(n, i, j), e(n, j, i)));
                }
            }
            flip(n, &mut c);
        }
        CatalogEntry::GlOrthogonal { p, q } => {
            let n = p + q;
            for i in 0..n {
                for j in 0..n {
                    let sign = if (i < p) == (j < p) { -one() } else { one() };
                    g.push((sign, e(n, i, j), e(n, i, j)));
                }
            }
            flip(n, &mut c);
        }
        CatalogEntry::GlComplex { n } => {
            let m = 2 * n;
            for i in 0..n {
                for j in 0..n {
                    g.push((one(), e(m, i + n, j + n), e(m, j, i)));
                    g.push((one(), e(m, i, j), e(m, j + n, i + n)));
                    g.push((-one(), e(m, i, j + n), e(m, j, i + n)));
                    g.push((-one(), e(m, i + n, j), e(m, j + n, i)));
                }
            }
            flip(m, &mut c);
        }
    }
    ClosedTerms { g, c }
}

/// `(Ĝ, Ĉ)` from the literal table sums.
pub fn build_gc_closed(entry: &CatalogEntry) -> (QMatrix, QMatrix) {
    let terms = closed_terms(entry);
    let n = entry.leg_dim();
    (sum_terms(&terms.g, n), sum_terms(&terms.c, n))
}

/// `a = h/(s + c_a h)` and `b = h/(s + c_b h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientPair {
    pub shift_a: Rational,
    pub shift_b: Rational,
    pub a: RatFunc,
    pub b: RatFunc,
}

impl CoefficientPair {
    pub fn with_shifts(shift_a: Rational, shift_b: Rational) -> Self {
        CoefficientPair { a: shifted_pole(&shift_a), b: shifted_pole(&shift_b), shift_a, shift_b }
    }
}

/// `h/(s + c h)`.
pub fn shifted_pole(c: &Rational) -> RatFunc {
    let den = &MultiPoly::var(Var::S) + &MultiPoly::var(Var::H).scale(c);
    RatFunc::new(MultiPoly::var(Var::H), den).expect("nonzero denominator")
}

pub fn coefficients(entry: &CatalogEntry) -> CoefficientPair {
    CoefficientPair::with_shifts(entry.shift(), Rational::zero())
}

/// Catalog data with the assembled `R(s)` over `ℚ(s, h)`.
#[derive(Clone, Debug)]
pub struct ParametricRMatrix {
    pub entry: CatalogEntry,
    pub g_hat: QMatrix,
    pub c_hat: QMatrix,
    pub coeffs: CoefficientPair,
    pub r: FMatrix,
}

/// `id + a Ĝ + b Ĉ`.
pub fn assemble(g_hat: &QMatrix, c_hat: &QMatrix, coeffs: &CoefficientPair) -> FMatrix {
    let id = FMatrix::identity(g_hat.dims());
    let ga = g_hat.to_ratfunc().scale(&coeffs.a);
    let cb = c_hat.to_ratfunc().scale(&coeffs.b);
    id.add(&ga).and_then(|m| m.add(&cb)).expect("same legs")
}

pub fn assemble_r(entry: &CatalogEntry) -> ParametricRMatrix {
    let (g_hat, c_hat) = build_gc_closed(entry);
    let coeffs = coefficients(entry);
    let r = assemble(&g_hat, &c_hat, &coeffs);
    ParametricRMatrix { entry: *entry, g_hat, c_hat, coeffs, r }
}

/// `(Ĉ + Ĝ)/s`.
pub fn classical_r_from(g_hat: &QMatrix, c_hat: &QMatrix) -> FMatrix {
    let inv_s = RatFunc::var(Var::S).inv().expect("s is nonzero");
    g_hat.add(c_hat).expect("same legs").to_ratfunc().scale(&inv_s)
}

pub fn classical_r(entry: &CatalogEntry) -> FMatrix {
    let (g, c) = build_gc_closed(entry);
    classical_r_from(&g, &c)
}

/// Entrywise comparison of the closed forms with `(ρ⊗ρ)` of `C` and `G`
/// built from the Gram matrix of `κ`.
pub fn crosscheck_closed_vs_computed(entry: &CatalogEntry) -> Result<(), CatalogError> {
    let (g_closed, c_closed) = build_gc_closed(entry);
    let (c_comp, g_comp) = entry.symmetric_pair().represent_cg()?;
    for (which, closed, computed) in [("Ĝ", &g_closed, &g_comp), ("Ĉ", &c_closed, &c_comp)] {
        let diff = closed.sub(computed).map_err(LieError::from)?;
        if let Some((row, col, _)) = diff.first_nonzero() {
            return Err(CatalogError::Mismatch {
                which: which.into(),
                row,
                col,
                closed: fmt_rational(closed.get(row, col)),
                computed: fmt_rational(computed.get(row, col)),
            });
        }
    }
    Ok(())
}
