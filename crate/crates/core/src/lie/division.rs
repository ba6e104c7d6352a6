use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::int;
use crate::tensor::QMatrix;

/// Real division algebra used as matrix entries. Units are ordered
/// `1, i, j, k` and truncated to the real dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisionAlgebra {
    Real,
    Complex,
    Quaternion,
}

impl DivisionAlgebra {
    pub fn real_dim(self) -> usize {
        match self {
            DivisionAlgebra::Real => 1,
            DivisionAlgebra::Complex => 2,
            DivisionAlgebra::Quaternion => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DivisionAlgebra::Real => "real",
            DivisionAlgebra::Complex => "complex",
            DivisionAlgebra::Quaternion => "quaternion",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "real" => Some(DivisionAlgebra::Real),
            "complex" => Some(DivisionAlgebra::Complex),
            "quaternion" => Some(DivisionAlgebra::Quaternion),
            _ => None,
        }
    }

    /// `e_a e_b = sign · e_c`.
    pub fn mul_units(self, a: usize, b: usize) -> (i64, usize) {
        let d = self.real_dim();
        assert!(a < d && b < d, "unit index out of range");
        match (a, b) {
            (0, x) | (x, 0) => (1, x),
            (x, y) if x == y => (-1, 0),
            // quaternion cycle i j = k, j k = i, k i = j
            (1, 2) => (1, 3),
            (2, 3) => (1, 1),
            (3, 1) => (1, 2),
            (2, 1) => (-1, 3),
            (3, 2) => (-1, 1),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    }

    /// Matrix of `x ↦ e_u x` on the real coordinates.
    pub fn left_regular(self, u: usize) -> QMatrix {
        self.regular(|b| self.mul_units(u, b))
    }

    /// Matrix of `x ↦ x e_u` on the real coordinates.
    pub fn right_regular(self, u: usize) -> QMatrix {
        self.regular(|b| self.mul_units(b, u))
    }

    fn regular(self, image: impl Fn(usize) -> (i64, usize)) -> QMatrix {
        let d = self.real_dim();
        let mut m = QMatrix::zeros(&[d]);
        for b in 0..d {
            let (sign, c) = image(b);
            m.set(c, b, int(sign));
        }
        m
    }

    /// Realification of `E_ij · e_u` in `gl(n, K)` acting on `R^{dn}`.
    pub fn unit_block(self, n: usize, i: usize, j: usize, u: usize) -> QMatrix {
        realified(&QMatrix::elementary(n, i, j), &self.left_regular(u))
    }
}

/// `kron(a, l)` flattened to a single leg.
pub fn realified(a: &QMatrix, l: &QMatrix) -> QMatrix {
    let size = a.size() * l.size();
    a.kron(l).with_dims(&[size]).expect("same size")
}

impl fmt::Display for DivisionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_table_is_associative() {
        let q = DivisionAlgebra::Quaternion;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let (s1, ab) = q.mul_units(a, b);
                    let (s2, l) = q.mul_units(ab, c);
                    let (s3, bc) = q.mul_units(b, c);
                    let (s4, r) = q.mul_units(a, bc);
                    assert_eq!((s1 * s2, l), (s3 * s4, r));
                }
            }
        }
    }

    #[test]
    fn regular_representations() {
        for alg in [DivisionAlgebra::Complex, DivisionAlgebra::Quaternion] {
            let d = alg.real_dim();
            for a in 0..d {
                for b in 0..d {
                    let (s, c) = alg.mul_units(a, b);
                    let prod = alg.left_regular(a).mul(&alg.left_regular(b)).unwrap();
                    assert_eq!(prod, alg.left_regular(c).scale(&int(s)));
                    // right action reverses order
                    let rprod = alg.right_regular(b).mul(&alg.right_regular(a)).unwrap();
                    assert_eq!(rprod, alg.right_regular(c).scale(&int(s)));
                    assert_eq!(
                        alg.left_regular(a).mul(&alg.right_regular(b)).unwrap(),
                        alg.right_regular(b).mul(&alg.left_regular(a)).unwrap()
                    );
                }
            }
        }
    }
}
