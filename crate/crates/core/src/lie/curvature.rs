use num_traits::Zero;

use super::pair::{coords_in, SymmetricPair};
use super::LieError;
use crate::linalg::{invert, QDense};
use crate::scalar::{fmt_rational, Rational};
use crate::tensor::{QMatrix, TensorError};

/// Curvature of the symmetric space `G/K` on an ordered basis `e_i` of `m`.
///
/// `R(e_k, e_l) e_j = -[[e_k, e_l], e_j] = Σ_i R[k][l][j][i] e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    dim: usize,
    lowered: Vec<Rational>,
    gram: QDense,
    gram_inv: QDense,
}

impl CurvatureTensor {
    pub fn from_pair(pair: &SymmetricPair) -> Result<Self, LieError> {
        let m = pair.m_basis()?;
        let dim = m.len();
        let gram = pair.m_gram()?;
        let gram_inv = invert(&gram).ok_or(LieError::SingularGram)?;
        let mut lowered = vec![Rational::zero(); dim.pow(4)];
        for k in 0..dim {
            for l in 0..dim {
                let kl = m[k].commutator(&m[l])?;
                for j in 0..dim {
                    let img = kl.commutator(&m[j])?.neg();
                    for (i, c) in coords_in(&m, &img)?.into_iter().enumerate() {
                        lowered[((k * dim + l) * dim + j) * dim + i] = c;
                    }
                }
            }
        }
        Ok(CurvatureTensor { dim, lowered, gram, gram_inv })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &QDense {
        &self.gram
    }

    /// `R[k][l][j][i]`.
    pub fn component(&self, k: usize, l: usize, j: usize, i: usize) -> &Rational {
        let d = self.dim;
        &self.lowered[((k * d + l) * d + j) * d + i]
    }

    /// Adds `delta` to one component; used for negative controls.
    pub fn perturbed(&self, (k, l, j, i): (usize, usize, usize, usize), delta: &Rational) -> Self {
        let mut out = self.clone();
        let d = self.dim;
        out.lowered[((k * d + l) * d + j) * d + i] += delta;
        out
    }

    /// `R^i_j^k_l = Σ_m g^{km} R[m][l][j][i]`, flattened as `[i][j][k][l]`.
    pub fn mixed(&self) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d.pow(4)];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut acc = Rational::zero();
                        for (m, g) in self.gram_inv[k].iter().enumerate() {
                            if !g.is_zero() {
                                acc += g * self.component(m, l, j, i);
                            }
                        }
                        out[((i * d + j) * d + k) * d + l] = acc;
                    }
                }
            }
        }
        out
    }

    /// `T = Σ R^i_j^k_l E_ij ⊗ E_kl` on `m ⊗ m`.
    pub fn to_operator(&self) -> QMatrix {
        let d = self.dim;
        let mixed = self.mixed();
        let mut out = QMatrix::zeros(&[d, d]);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let x = &mixed[((i * d + j) * d + k) * d + l];
                        if !x.is_zero() {
                            out.set(i * d + k, j * d + l, x.clone());
                        }
                    }
                }
            }
        }
        out
    }
}

/// Finds `c*` with `T = c* · t̂`; zero or missing proportionality is an error.
pub fn proportionality(t: &QMatrix, t_hat: &QMatrix) -> Result<Rational, LieError> {
    if t.dims() != t_hat.dims() {
        return Err(TensorError::DimensionMismatch(format!("curvature on {:?}, t̂ on {:?}", t.dims(), t_hat.dims())).into());
    }
    let Some((r, c, x)) = t_hat.first_nonzero() else {
        return Err(LieError::NoProportionality("represented Casimir vanishes".into()));
    };
    let ratio = t.get(r, c) / x;
    if ratio.is_zero() {
        return Err(LieError::NoProportionality(format!("curvature vanishes at ({r},{c}) where t̂ does not")));
    }
    if let Some((r2, c2, _)) = t.sub(&t_hat.scale(&ratio))?.first_nonzero() {
        return Err(LieError::NoProportionality(format!(
            "ratio {} from ({r},{c}) fails at ({r2},{c2})",
            fmt_rational(&ratio)
        )));
    }
    Ok(ratio)
}

/// `c*` such that the curvature operator equals `c* · t̂`.
pub fn verify_curvature_casimir(pair: &SymmetricPair) -> Result<Rational, LieError> {
    let t = CurvatureTensor::from_pair(pair)?.to_operator();
    proportionality(&t, &pair.represented_casimir_k()?)
}
