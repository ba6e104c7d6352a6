//! Small dense linear algebra over ℚ: inversion and span coordinates.

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type QDense = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> QDense {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn mat_mul(a: &QDense, b: &QDense) -> QDense {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| if row[k].is_zero() { acc } else { acc + &row[k] * &b[k][j] }))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn invert(m: &QDense) -> Option<QDense> {
    let n = m.len();
    let mut a: QDense = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

/// Reduced row echelon data for a list of vectors, used to express other
/// vectors in their span.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    rows: QDense,
    pivots: Vec<usize>,
    // rows = transform · vectors
    transform: QDense,
    count: usize,
}

impl SpanSolver {
    pub fn new(vectors: &[Vec<Rational>]) -> Self {
        let count = vectors.len();
        let width = vectors.first().map_or(0, Vec::len);
        let mut rows: QDense = vectors.to_vec();
        let mut transform = identity(count);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..width {
            if r == count {
                break;
            }
            let Some(p) = (r..count).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r, p);
            transform.swap(r, p);
            let inv = rows[r][col].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            for x in transform[r].iter_mut() {
                *x *= &inv;
            }
            let (pivot_row, pivot_t) = (rows[r].clone(), transform[r].clone());
            for i in 0..count {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= p * &f;
                    }
                    for (x, p) in transform[i].iter_mut().zip(&pivot_t) {
                        *x -= p * &f;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        SpanSolver { rows, pivots, transform, count }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.count
    }

    /// Coordinates of `x` with respect to the original vectors, or `None`
    /// if `x` is outside their span. Requires independent vectors for the
    /// coordinates to be unique.
    pub fn coords(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let alphas: Vec<Rational> = self.pivots.iter().map(|&p| x[p].clone()).collect();
        for (j, xj) in x.iter().enumerate() {
            let recon = self
                .rows
                .iter()
                .zip(&alphas)
                .fold(Rational::zero(), |acc, (row, a)| if a.is_zero() || row[j].is_zero() { acc } else { acc + &row[j] * a });
            if recon != *xj {
                return None;
            }
        }
        let mut out = vec![Rational::zero(); self.count];
        for (a, trow) in alphas.iter().zip(&self.transform) {
            if a.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(trow) {
                *o += a * t;
            }
        }
        Some(out)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.coords(x).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn inverse_of_small_matrix() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert!(invert(&vec![vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }

    #[test]
    fn span_coordinates() {
        let vs = vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]];
        let solver = SpanSolver::new(&vs);
        assert!(solver.is_independent());
        assert_eq!(solver.coords(&[int(2), int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
        assert_eq!(solver.coords(&[rat(1, 2), int(0), rat(-1, 2)]).unwrap(), vec![rat(1, 2), rat(-1, 2)]);
        assert!(solver.coords(&[int(1), int(0), int(0)]).is_none());
        let dependent = SpanSolver::new(&[vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert!(!dependent.is_independent());
    }
}
