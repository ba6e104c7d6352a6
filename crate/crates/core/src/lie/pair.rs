use num_traits::{One, Zero};

use super::division::DivisionAlgebra;
use super::LieError;
use crate::linalg::{invert, mat_mul, QDense, SpanSolver};
use crate::scalar::{rat, Rational};
use crate::tensor::QMatrix;

/// The involution of a symmetric pair, either as a matrix formula or as an
/// explicit matrix on basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum Involution {
    /// `X ↦ -Xᵀ`
    NegTranspose,
    /// `X ↦ A X A⁻¹`
    Conjugation { by: QMatrix, inverse: QMatrix },
    /// `X ↦ -A Xᵀ A⁻¹`
    NegTransposeConjugation { by: QMatrix, inverse: QMatrix },
    /// Column `a` holds the coordinates of `θ(b_a)`.
    Coordinates(QDense),
}

/// How `k` is represented when building operators on `m ⊗ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Matrices act on the column space they live in.
    Defining,
    /// `ad` restricted to `m`, written in the `m` basis.
    AdjointOnM,
}

/// Matrix Lie algebra with a basis, an involution and the invariant form
/// `κ(X, Y) = scale · tr(XY)`.
#[derive(Clone, Debug)]
pub struct SymmetricPair {
    label: String,
    algebra: DivisionAlgebra,
    basis: Vec<QMatrix>,
    solver: SpanSolver,
    theta: Involution,
    kappa_scale: Rational,
    rep: Representation,
}

/// Coefficient matrices of `C = Σ c_ab b_a ⊗ b_b` and `G = (θ ⊗ 1) C`.
#[derive(Clone, Debug, PartialEq)]
pub struct CgCoefficients {
    pub c: QDense,
    pub g: QDense,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub k_dim: usize,
    pub m_dim: usize,
    pub brackets_checked: usize,
}

fn flat(x: &QMatrix) -> Vec<Rational> {
    let n = x.size();
    (0..n * n).map(|i| x.get(i / n, i % n).clone()).collect()
}

impl SymmetricPair {
    pub fn new(
        label: impl Into<String>,
        algebra: DivisionAlgebra,
        basis: Vec<QMatrix>,
        theta: Involution,
        kappa_scale: Rational,
        rep: Representation,
    ) -> Result<Self, LieError> {
        let solver = SpanSolver::new(&basis.iter().map(flat).collect::<Vec<_>>());
        if !solver.is_independent() {
            return Err(LieError::DependentBasis);
        }
        Ok(SymmetricPair { label: label.into(), algebra, basis, solver, theta, kappa_scale, rep })
    }

    /// `gl(n, K)` realified, with basis `E_ij · e_u` ordered by `(i, j, u)`
    /// and `κ = (1/d) tr`.
    pub fn general_linear(label: impl Into<String>, algebra: DivisionAlgebra, n: usize, theta: Involution) -> Self {
        let d = algebra.real_dim();
        let mut basis = Vec::with_capacity(n * n * d);
        for i in 0..n {
            for j in 0..n {
                for u in 0..d {
                    basis.push(algebra.unit_block(n, i, j, u));
                }
            }
        }
        Self::new(label, algebra, basis, theta, rat(1, d as i64), Representation::Defining).expect("unit blocks are independent")
    }

    /// `(so(p+q), so(p) × so(q))` with basis `E_ab - E_ba` (`a < b`),
    /// `θ = Ad diag(1_p, -1_q)`, `κ = ½ tr` and `k` acting on `m` by `ad`.
    pub fn grassmann(p: usize, q: usize) -> Self {
        let n = p + q;
        let mut basis = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                basis.push(QMatrix::elementary(n, a, b).sub(&QMatrix::elementary(n, b, a)).unwrap());
            }
        }
        let j = QMatrix::from_fn(&[n], |r, c| {
            if r != c {
                Rational::zero()
            } else if r < p {
                Rational::one()
            } else {
                -Rational::one()
            }
        });
        let theta = Involution::Conjugation { by: j.clone(), inverse: j };
        Self::new(format!("grassmann({p},{q})"), DivisionAlgebra::Real, basis, theta, rat(1, 2), Representation::AdjointOnM)
            .expect("independent basis")
    }

    /// Same pair over a different basis of the same algebra.
    pub fn with_basis(&self, basis: Vec<QMatrix>) -> Result<Self, LieError> {
        let pair = Self::new(self.label.clone(), self.algebra, basis, self.theta.clone(), self.kappa_scale.clone(), self.rep)?;
        if pair.dim() != self.dim() || !self.basis.iter().all(|b| pair.solver.contains(&flat(b))) {
            return Err(LieError::NotInSpan);
        }
        let theta = match &self.theta {
            Involution::Coordinates(_) => {
                let cols: Vec<Vec<Rational>> =
                    pair.basis.iter().map(|b| pair.coords(&self.involution_apply(b)?)).collect::<Result<_, _>>()?;
                Involution::Coordinates(transpose(&cols))
            }
            other => other.clone(),
        };
        Ok(SymmetricPair { theta, ..pair })
    }

    pub fn with_representation(&self, rep: Representation) -> Self {
        SymmetricPair { rep, ..self.clone() }
    }

    /// Copy whose involution has the sign of column `col` of its coordinate
    /// matrix flipped. Used as a negative control.
    pub fn with_corrupted_theta(&self, col: usize) -> Self {
        let mut m = self.theta_matrix().expect("involution preserves the algebra");
        for row in m.iter_mut() {
            row[col] = -row[col].clone();
        }
        SymmetricPair { theta: Involution::Coordinates(m), ..self.clone() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn algebra(&self) -> DivisionAlgebra {
        self.algebra
    }

    pub fn basis(&self) -> &[QMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.basis.first().map_or(0, QMatrix::size)
    }

    pub fn representation(&self) -> Representation {
        self.rep
    }

    pub fn kappa_scale(&self) -> &Rational {
        &self.kappa_scale
    }

    pub fn coords(&self, x: &QMatrix) -> Result<Vec<Rational>, LieError> {
        if x.size() != self.matrix_size() {
            return Err(LieError::NotInSpan);
        }
        self.solver.coords(&flat(x)).ok_or(LieError::NotInSpan)
    }

    pub fn from_coords(&self, coords: &[Rational]) -> QMatrix {
        let mut out = QMatrix::zeros(&[self.matrix_size()]);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c)).unwrap();
            }
        }
        out
    }

    pub fn involution_apply(&self, x: &QMatrix) -> Result<QMatrix, LieError> {
        let coords = self.coords(x)?;
        let out = match &self.theta {
            Involution::NegTranspose => x.transpose().neg(),
            Involution::Conjugation { by, inverse } => by.mul(x)?.mul(inverse)?,
            Involution::NegTransposeConjugation { by, inverse } => by.mul(&x.transpose())?.mul(inverse)?.neg(),
            Involution::Coordinates(m) => {
                let image: Vec<Rational> = m
                    .iter()
                    .map(|row| row.iter().zip(&coords).fold(Rational::zero(), |acc, (a, c)| acc + a * c))
                    .collect();
                return Ok(self.from_coords(&image));
            }
        };
        // the image has to stay inside the algebra
        self.coords(&out)?;
        Ok(out)
    }

    /// Coordinate matrix Θ of the involution; column `a` is `θ(b_a)`.
    pub fn theta_matrix(&self) -> Result<QDense, LieError> {
        if let Involution::Coordinates(m) = &self.theta {
            return Ok(m.clone());
        }
        let cols: Vec<Vec<Rational>> =
            self.basis.iter().map(|b| self.coords(&self.involution_apply(b)?)).collect::<Result<_, _>>()?;
        Ok(transpose(&cols))
    }

    pub fn kappa(&self, x: &QMatrix, y: &QMatrix) -> Result<Rational, LieError> {
        self.coords(x)?;
        self.coords(y)?;
        Ok(self.kappa_unchecked(x, y))
    }

    fn kappa_unchecked(&self, x: &QMatrix, y: &QMatrix) -> Rational {
        let mut acc = Rational::zero();
        for (i, k, a) in x.nonzeros() {
            let b = y.get(k, i);
            if !b.is_zero() {
                acc += a * b;
            }
        }
        acc * &self.kappa_scale
    }

    pub fn gram(&self) -> QDense {
        self.gram_of(&self.basis)
    }

    fn gram_of(&self, vs: &[QMatrix]) -> QDense {
        vs.iter().map(|a| vs.iter().map(|b| self.kappa_unchecked(a, b)).collect()).collect()
    }

    /// Gram matrix Γ and its inverse, whose rows give the dual basis.
    pub fn gram_and_dual(&self) -> Result<(QDense, QDense), LieError> {
        let g = self.gram();
        let inv = invert(&g).ok_or(LieError::SingularGram)?;
        Ok((g, inv))
    }

    /// `C = Σ Γ⁻¹_ab b_a ⊗ b_b` and `G = (θ ⊗ 1) C`. Both are checked against
    /// `Φ(C) = id` and `Φ(G) = Θ` where `Φ(T) = T Γ` on coefficient matrices.
    pub fn build_cg(&self) -> Result<CgCoefficients, LieError> {
        let (gram, inv) = self.gram_and_dual()?;
        let theta = self.theta_matrix()?;
        let c = inv;
        let g = mat_mul(&theta, &c);
        if mat_mul(&c, &gram) != crate::linalg::identity(self.dim()) || mat_mul(&g, &gram) != theta {
            return Err(LieError::Inconsistent("Φ(C) or Φ(G) mismatch".into()));
        }
        Ok(CgCoefficients { c, g })
    }

    fn tensor_sum(&self, coeffs: &QDense, left: &[QMatrix], right: &[QMatrix]) -> QMatrix {
        let n = left.first().map_or(0, QMatrix::size);
        let mut out = QMatrix::zeros(&[n, n]);
        for (a, row) in coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&left[a].kron(&right[b]).scale(c)).unwrap();
                }
            }
        }
        out
    }

    /// `(Ĉ, Ĝ)` acting on `V ⊗ V` through the defining representation.
    pub fn represent_cg(&self) -> Result<(QMatrix, QMatrix), LieError> {
        if self.rep != Representation::Defining {
            return Err(LieError::NotAvailable("C and G are only represented for defining pairs".into()));
        }
        let cg = self.build_cg()?;
        Ok((self.tensor_sum(&cg.c, &self.basis, &self.basis), self.tensor_sum(&cg.g, &self.basis, &self.basis)))
    }

    /// Basis of the `±1` eigenspace, from the projections `(b ± θb)/2` of the
    /// basis vectors, keeping the independent ones in order.
    pub fn eigenspace(&self, sign: i64) -> Result<Vec<QMatrix>, LieError> {
        let half = rat(sign, 2);
        let mut out: Vec<QMatrix> = Vec::new();
        let mut flats: Vec<Vec<Rational>> = Vec::new();
        for b in &self.basis {
            let t = self.involution_apply(b)?;
            let v = b.scale(&rat(1, 2)).add(&t.scale(&half))?;
            if v.is_zero() {
                continue;
            }
            let mut trial = flats.clone();
            trial.push(flat(&v));
            if SpanSolver::new(&trial).is_independent() {
                flats = trial;
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn k_basis(&self) -> Result<Vec<QMatrix>, LieError> {
        self.eigenspace(1)
    }

    pub fn m_basis(&self) -> Result<Vec<QMatrix>, LieError> {
        self.eigenspace(-1)
    }

    /// Checks `θ² = id`, `dim k + dim m = dim g` and the bracket relations
    /// `[k,k] ⊂ k`, `[k,m] ⊂ m`, `[m,m] ⊂ k`.
    pub fn check_splitting(&self) -> Result<SplittingReport, LieError> {
        for (a, b) in self.basis.iter().enumerate() {
            if self.involution_apply(&self.involution_apply(b)?)? != *b {
                return Err(LieError::SplittingViolation { relation: "θ² = id".into(), left: a, right: a });
            }
        }
        let k = self.k_basis()?;
        let m = self.m_basis()?;
        if k.len() + m.len() != self.dim() {
            return Err(LieError::SplittingViolation { relation: "g = k ⊕ m".into(), left: k.len(), right: m.len() });
        }
        let mut checked = 0;
        let relations: [(&str, &[QMatrix], &[QMatrix], i64); 3] =
            [("[k,k] ⊂ k", &k, &k, 1), ("[k,m] ⊂ m", &k, &m, -1), ("[m,m] ⊂ k", &m, &m, 1)];
        for (name, left, right, sign) in relations {
            for (i, x) in left.iter().enumerate() {
                for (j, y) in right.iter().enumerate() {
                    let z = x.commutator(y)?;
                    let tz = self.involution_apply(&z)?;
                    let expected = if sign == 1 { z } else { z.neg() };
                    if tz != expected {
                        return Err(LieError::SplittingViolation { relation: name.into(), left: i, right: j });
                    }
                    checked += 1;
                }
            }
        }
        Ok(SplittingReport { k_dim: k.len(), m_dim: m.len(), brackets_checked: checked })
    }

    /// Representation of `x ∈ k` used for operators on `m ⊗ m`.
    pub fn rho(&self, x: &QMatrix) -> Result<QMatrix, LieError> {
        match self.rep {
            Representation::Defining => Ok(x.clone()),
            Representation::AdjointOnM => {
                let m = self.m_basis()?;
                adjoint_on(&m, x)
            }
        }
    }

    /// `t̂ = Σ (Γ_k⁻¹)_ab ρ(k_a) ⊗ ρ(k_b)`, the Casimir of `k` for `κ|_k`.
    pub fn represented_casimir_k(&self) -> Result<QMatrix, LieError> {
        let k = self.k_basis()?;
        let inv = invert(&self.gram_of(&k)).ok_or(LieError::SingularGram)?;
        let reps: Vec<QMatrix> = match self.rep {
            Representation::Defining => k,
            Representation::AdjointOnM => {
                let m = self.m_basis()?;
                k.iter().map(|x| adjoint_on(&m, x)).collect::<Result<_, _>>()?
            }
        };
        Ok(self.tensor_sum(&inv, &reps, &reps))
    }

    /// `κ` restricted to the `m` basis.
    pub fn m_gram(&self) -> Result<QDense, LieError> {
        Ok(self.gram_of(&self.m_basis()?))
    }
}

/// Matrix of `y ↦ [x, y]` on the span of `basis`.
pub(crate) fn adjoint_on(basis: &[QMatrix], x: &QMatrix) -> Result<QMatrix, LieError> {
    let solver = SpanSolver::new(&basis.iter().map(flat).collect::<Vec<_>>());
    let d = basis.len();
    let mut out = QMatrix::zeros(&[d]);
    for (j, y) in basis.iter().enumerate() {
        let c = solver.coords(&flat(&x.commutator(y)?)).ok_or(LieError::NotInSpan)?;
        for (i, v) in c.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Coordinates of `x` in `basis`.
pub(crate) fn coords_in(basis: &[QMatrix], x: &QMatrix) -> Result<Vec<Rational>, LieError> {
    SpanSolver::new(&basis.iter().map(flat).collect::<Vec<_>>()).coords(&flat(x)).ok_or(LieError::NotInSpan)
}

fn transpose(cols: &[Vec<Rational>]) -> QDense {
    let n = cols.len();
    let m = cols.first().map_or(0, Vec::len);
    (0..m).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}
