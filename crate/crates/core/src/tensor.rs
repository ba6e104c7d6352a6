//! Dense square matrices acting on a tensor product of legs.
//!
//! Row and column multi-indices are ordered lexicographically with leg 0
//! most significant, so `kron(A, B)` puts `A` on leg 0 and `B` on leg 1.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{fmt_rational, parse_rational, MultiPoly, Point, RatFunc, Rational, Ring, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("leg {0} named twice")]
    DuplicateLeg(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("malformed matrix JSON: {0}")]
    Json(String),
}

/// Square matrix of size `Π dims` over a ring, with its leg structure.
#[derive(Clone, PartialEq, Eq)]
pub struct LegMatrix<T> {
    dims: Vec<usize>,
    size: usize,
    data: Vec<T>,
}

pub type QMatrix = LegMatrix<Rational>;
pub type FMatrix = LegMatrix<RatFunc>;

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * dims[i + 1];
    }
    out
}

fn digits(mut idx: usize, dims: &[usize], out: &mut [usize]) {
    for l in (0..dims.len()).rev() {
        out[l] = idx % dims[l];
        idx /= dims[l];
    }
}

impl<T: Ring> LegMatrix<T> {
    pub fn zeros(dims: &[usize]) -> Self {
        let size = dims.iter().product();
        LegMatrix { dims: dims.to_vec(), size, data: vec![T::zero(); size * size] }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let mut m = Self::zeros(dims);
        for i in 0..m.size {
            m.data[i * m.size + i] = T::one();
        }
        m
    }

    pub fn from_fn(dims: &[usize], mut f: impl FnMut(usize, usize) -> T) -> Self {
        let size: usize = dims.iter().product();
        let mut data = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                data.push(f(r, c));
            }
        }
        LegMatrix { dims: dims.to_vec(), size, data }
    }

    /// Builds a single-leg matrix from rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        LegMatrix { dims: vec![size], size, data: rows.into_iter().flatten().collect() }
    }

    /// Elementary matrix `E_ij` (zero-based) of dimension `n`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "elementary index out of range");
        let mut m = Self::zeros(&[n]);
        m.data[i * n + j] = T::one();
        m
    }

    /// Flip operator `P(x ⊗ y) = y ⊗ x` on two legs of dimension `n`.
    pub fn flip(n: usize) -> Self {
        let mut m = Self::zeros(&[n, n]);
        for i in 0..n {
            for j in 0..n {
                m.data[(i * n + j) * m.size + (j * n + i)] = T::one();
            }
        }
        m
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.size + c] = value;
    }

    /// Reinterprets the leg structure; the total size must agree.
    pub fn with_dims(mut self, dims: &[usize]) -> Result<Self, TensorError> {
        if dims.iter().product::<usize>() != self.size {
            return Err(TensorError::DimensionMismatch(format!("{:?} does not factor size {}", dims, self.size)));
        }
        self.dims = dims.to_vec();
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &T)> {
        self.data.iter().position(|x| !x.is_zero()).map(|p| (p / self.size, p % self.size, &self.data[p]))
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let n = self.size;
        self.data.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(p, x)| (p / n, p % n, x))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> LegMatrix<U> {
        LegMatrix { dims: self.dims.clone(), size: self.size, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<LegMatrix<U>, E> {
        Ok(LegMatrix { dims: self.dims.clone(), size: self.size, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    fn check_same(&self, rhs: &Self) -> Result<(), TensorError> {
        if self.dims != rhs.dims {
            return Err(TensorError::DimensionMismatch(format!("{:?} vs {:?}", self.dims, rhs.dims)));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.check_same(rhs)?;
        Ok(self.zip_with(rhs, T::plus))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.check_same(rhs)?;
        Ok(self.zip_with(rhs, T::minus))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| if b.is_zero() { a.clone() } else { f(a, b) })
            .collect();
        LegMatrix { dims: self.dims.clone(), size: self.size, data }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| if x.is_zero() { T::zero() } else { x.times(c) })
    }

    pub fn neg(&self) -> Self {
        self.map(T::negated)
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        LegMatrix::from_fn(&self.dims, |r, c| self.data[c * n + r].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.size).fold(T::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, &T)>> {
        (0..self.size)
            .map(|r| {
                self.data[r * self.size..(r + 1) * self.size]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect()
    }

    /// Matrix product. Each entry is accumulated in a fixed order, so the
    /// result does not depend on how rows are scheduled.
    pub fn mul(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.check_same(rhs)?;
        let n = self.size;
        let left = self.sparse_rows();
        let right = rhs.sparse_rows();
        let row = |r: usize| -> Vec<T> {
            let mut acc: Vec<Option<T>> = vec![None; n];
            for &(k, a) in &left[r] {
                for &(c, b) in &right[k] {
                    let term = if a.is_one() { b.clone() } else { a.times(b) };
                    acc[c] = Some(match acc[c].take() {
                        None => term,
                        Some(x) => x.plus(&term),
                    });
                }
            }
            acc.into_iter().map(|x| x.unwrap_or_else(T::zero)).collect()
        };
        #[cfg(feature = "parallel")]
        let rows: Vec<Vec<T>> = {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(row).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<Vec<T>> = (0..n).map(row).collect();
        Ok(LegMatrix { dims: self.dims.clone(), size: n, data: rows.into_iter().flatten().collect() })
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Kronecker product; the leg lists are concatenated.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.size, rhs.size);
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&rhs.dims);
        let mut out = Self::zeros(&dims);
        let size = n * m;
        for (i, j, a) in self.nonzeros() {
            for (k, l, b) in rhs.nonzeros() {
                out.data[(i * m + k) * size + (j * m + l)] = a.times(b);
            }
        }
        out
    }

    /// Places `self` on the legs `targets` of a space with legs `ambient`,
    /// acting as the identity on the remaining legs.
    pub fn embed(&self, targets: &[usize], ambient: &[usize]) -> Result<Self, TensorError> {
        if targets.len() != self.dims.len() {
            return Err(TensorError::DimensionMismatch(format!(
                "{} target legs for a {}-leg operator",
                targets.len(),
                self.dims.len()
            )));
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= ambient.len() {
                return Err(TensorError::DimensionMismatch(format!("leg {t} outside {}-leg space", ambient.len())));
            }
            if targets[..i].contains(&t) {
                return Err(TensorError::DuplicateLeg(t));
            }
            if ambient[t] != self.dims[i] {
                return Err(TensorError::DimensionMismatch(format!(
                    "leg {t} has dimension {} but operator leg {i} has {}",
                    ambient[t], self.dims[i]
                )));
            }
        }
        let mut out = Self::zeros(ambient);
        let size = out.size;
        let amb_strides = strides(ambient);
        let own_strides = strides(&self.dims);
        let rows = self.sparse_rows();
        let mut dig = vec![0; ambient.len()];
        let mut sub = vec![0; self.dims.len()];
        for r in 0..size {
            digits(r, ambient, &mut dig);
            let mut a_row = 0;
            let mut base = r;
            for (i, &t) in targets.iter().enumerate() {
                a_row += dig[t] * own_strides[i];
                base -= dig[t] * amb_strides[t];
            }
            for &(a_col, x) in &rows[a_row] {
                digits(a_col, &self.dims, &mut sub);
                let c = targets.iter().zip(&sub).fold(base, |acc, (&t, &d)| acc + d * amb_strides[t]);
                out.data[r * size + c] = x.clone();
            }
        }
        Ok(out)
    }

    /// Reorders legs: leg `l` of the result is leg `perm[l]` of `self`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Self, TensorError> {
        let legs = self.dims.len();
        let mut seen = vec![false; legs];
        if perm.len() != legs {
            return Err(TensorError::DimensionMismatch(format!("permutation of {} legs for {legs}", perm.len())));
        }
        for &p in perm {
            if p >= legs {
                return Err(TensorError::DimensionMismatch(format!("leg {p} out of range")));
            }
            if seen[p] {
                return Err(TensorError::DuplicateLeg(p));
            }
            seen[p] = true;
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let old_strides = strides(&self.dims);
        let mut dig = vec![0; legs];
        // position in the old ordering for each new flat index
        let map: Vec<usize> = (0..self.size)
            .map(|idx| {
                digits(idx, &new_dims, &mut dig);
                perm.iter().zip(&dig).map(|(&p, &d)| d * old_strides[p]).sum()
            })
            .collect();
        let n = self.size;
        Ok(LegMatrix::from_fn(&new_dims, |r, c| self.data[map[r] * n + map[c]].clone()))
    }

    /// Transpose on a single leg, leaving the others untouched.
    pub fn partial_transpose(&self, leg: usize) -> Result<Self, TensorError> {
        if leg >= self.dims.len() {
            return Err(TensorError::DimensionMismatch(format!("leg {leg} out of range")));
        }
        let st = strides(&self.dims)[leg];
        let d = self.dims[leg];
        let n = self.size;
        Ok(LegMatrix::from_fn(&self.dims, |r, c| {
            let (ri, ci) = ((r / st) % d, (c / st) % d);
            let r2 = r - ri * st + ci * st;
            let c2 = c - ci * st + ri * st;
            self.data[r2 * n + c2].clone()
        }))
    }

    /// Returns `Some(f)` when `self = f · id`.
    pub fn scalar_multiple_of_identity(&self) -> Option<T> {
        let f = self.get(0, 0).clone();
        for (r, c, x) in self.nonzeros() {
            if r != c {
                return None;
            }
            if *x != f {
                return None;
            }
        }
        (0..self.size).all(|i| *self.get(i, i) == f).then_some(f)
    }
}

impl LegMatrix<RatFunc> {
    /// Substitutes `expr` for `var` in every entry.
    pub fn subst_all(&self, var: Var, expr: &MultiPoly) -> Result<Self, TensorError> {
        Ok(self.try_map(|x| x.subst(var, expr))?)
    }

    /// Evaluates every entry at `point`.
    pub fn eval_all(&self, point: &Point) -> Result<QMatrix, TensorError> {
        Ok(self.try_map(|x| x.eval(point))?)
    }

    pub fn eval_partial_all(&self, point: &Point) -> Result<Self, TensorError> {
        Ok(self.try_map(|x| x.eval_partial(point))?)
    }
}

impl LegMatrix<Rational> {
    pub fn to_ratfunc(&self) -> FMatrix {
        self.map(|q| RatFunc::constant(q.clone()))
    }
}

impl<T: Ring> fmt::Debug for LegMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LegMatrix{:?} {{", self.dims)?;
        for (r, c, x) in self.nonzeros() {
            write!(f, " ({r},{c}): {x:?};")?;
        }
        write!(f, " }}")
    }
}

/// Scalars that can appear in the matrix JSON format.
pub trait JsonScalar: Ring {
    const RING: &'static str;
    fn to_text(&self) -> String;
    fn from_text(text: &str) -> Result<Self, ScalarError>;
}

impl JsonScalar for Rational {
    const RING: &'static str = "rational";
    fn to_text(&self) -> String {
        fmt_rational(self)
    }
    fn from_text(text: &str) -> Result<Self, ScalarError> {
        parse_rational(text)
    }
}

impl JsonScalar for RatFunc {
    const RING: &'static str = "ratfunc";
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn from_text(text: &str) -> Result<Self, ScalarError> {
        text.parse()
    }
}

/// Wire form of a matrix: nonzero entries only, sorted by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dims: Vec<usize>,
    pub ring: String,
    pub vars: Vec<String>,
    pub entries: Vec<(usize, usize, String)>,
}

impl<T: JsonScalar> LegMatrix<T> {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dims: self.dims.clone(),
            ring: T::RING.to_string(),
            vars: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
            entries: self.nonzeros().map(|(r, c, x)| (r, c, x.to_text())).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, TensorError> {
        if json.ring != T::RING && !(json.ring == "rational" && T::RING == "ratfunc") {
            return Err(TensorError::Json(format!("ring {:?} cannot be read as {}", json.ring, T::RING)));
        }
        let expected: Vec<String> = Var::ALL.iter().map(|v| v.name().to_string()).collect();
        if json.vars != expected {
            return Err(TensorError::Json(format!("unsupported variable list {:?}", json.vars)));
        }
        if json.dims.is_empty() || json.dims.contains(&0) {
            return Err(TensorError::Json(format!("bad dims {:?}", json.dims)));
        }
        let mut m = Self::zeros(&json.dims);
        let mut last: Option<(usize, usize)> = None;
        for (r, c, text) in &json.entries {
            if *r >= m.size || *c >= m.size {
                return Err(TensorError::Json(format!("entry ({r},{c}) outside size {}", m.size)));
            }
            if last.is_some_and(|prev| prev >= (*r, *c)) {
                return Err(TensorError::Json("entries not sorted by (row, col)".into()));
            }
            last = Some((*r, *c));
            m.set(*r, *c, T::from_text(text)?);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn e(n: usize, i: usize, j: usize) -> QMatrix {
        QMatrix::elementary(n, i, j)
    }

    #[test]
    fn kron_examples() {
        let m = e(2, 0, 0).kron(&QMatrix::identity(&[2]));
        let expected = QMatrix::from_fn(&[2, 2], |r, c| if r == c && r < 2 { int(1) } else { int(0) });
        assert_eq!(m, expected);
        assert_eq!(m.dims(), &[2, 2]);
        assert_eq!(QMatrix::identity(&[3]).kron(&QMatrix::identity(&[2])), QMatrix::identity(&[3, 2]));
    }

    #[test]
    fn flip_examples() {
        let p = QMatrix::flip(2);
        // basis order 11,12,21,22 -> 11,21,12,22
        let images = [0, 2, 1, 3];
        for (col, &row) in images.iter().enumerate() {
            assert_eq!(p.get(row, col), &int(1));
        }
        assert_eq!(p.nnz(), 4);
        assert_eq!(p.mul(&p).unwrap(), QMatrix::identity(&[2, 2]));
        let mut sum = QMatrix::zeros(&[3, 3]);
        for i in 0..3 {
            for j in 0..3 {
                sum = sum.add(&e(3, i, j).kron(&e(3, j, i))).unwrap();
            }
        }
        assert_eq!(sum, QMatrix::flip(3));
    }

    #[test]
    fn embed_examples() {
        let c = QMatrix::flip(2);
        assert_eq!(c.embed(&[0, 1], &[2, 2, 2]).unwrap(), c.kron(&QMatrix::identity(&[2])));
        let x = e(2, 0, 1).kron(&e(2, 1, 0));
        let expected = e(2, 0, 1).kron(&QMatrix::identity(&[2])).kron(&e(2, 1, 0));
        assert_eq!(x.embed(&[0, 2], &[2, 2, 2]).unwrap(), expected);
        assert_eq!(x.embed(&[0, 0], &[2, 2, 2]), Err(TensorError::DuplicateLeg(0)));
        assert!(matches!(x.embed(&[0, 1], &[2, 3, 2]), Err(TensorError::DimensionMismatch(_))));
        assert!(matches!(x.embed(&[0, 3], &[2, 2, 2]), Err(TensorError::DimensionMismatch(_))));
    }

    #[test]
    fn embed_reversed_legs_is_flip_conjugate() {
        let x = e(2, 0, 1).kron(&e(3, 2, 2));
        let direct = x.embed(&[1, 0], &[3, 2]).unwrap();
        let via_perm = x.permute_legs(&[1, 0]).unwrap();
        assert_eq!(direct, via_perm);
    }

    #[test]
    fn mismatched_products_fail() {
        let a = QMatrix::identity(&[2, 2]);
        let b = QMatrix::identity(&[4]);
        assert!(matches!(a.mul(&b), Err(TensorError::DimensionMismatch(_))));
        assert!(matches!(a.add(&b), Err(TensorError::DimensionMismatch(_))));
    }

    #[test]
    fn scale_then_eval() {
        let f: RatFunc = "h/u".parse().unwrap();
        let m = FMatrix::identity(&[2]).scale(&f);
        let p = Point::new().with(Var::U, int(1)).with(Var::H, int(2));
        assert_eq!(m.eval_all(&p).unwrap(), QMatrix::identity(&[2]).scale(&int(2)));
    }

    #[test]
    fn partial_transpose_of_flip() {
        // P^{t1} = Σ E_ji ⊗ E_ji
        let pt = QMatrix::flip(2).partial_transpose(0).unwrap();
        let mut expected = QMatrix::zeros(&[2, 2]);
        for i in 0..2 {
            for j in 0..2 {
                expected = expected.add(&e(2, i, j).kron(&e(2, i, j))).unwrap();
            }
        }
        assert_eq!(pt, expected);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let m = FMatrix::identity(&[2]).scale(&"h/(u+1/2*h)".parse().unwrap());
        let json = m.to_json();
        assert_eq!(json.entries[0], (0, 0, "(2*h)/(1*h+2*u)".to_string()));
        assert_eq!(FMatrix::from_json(&json).unwrap(), m);
        let text = serde_json::to_string(&QMatrix::flip(2).scale(&rat(1, 2)).to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"dims":[2,2],"ring":"rational","vars":["s","u","v","h"],"entries":[[0,0,"1/2"],[1,2,"1/2"],[2,1,"1/2"],[3,3,"1/2"]]}"#
        );
        let mut bad = json.clone();
        bad.entries.push((0, 0, "1".into()));
        assert!(FMatrix::from_json(&bad).is_err());
    }

    #[test]
    fn identity_multiple_detection() {
        let m = QMatrix::identity(&[3]).scale(&rat(2, 3));
        assert_eq!(m.scalar_multiple_of_identity(), Some(rat(2, 3)));
        assert_eq!(QMatrix::flip(2).scalar_multiple_of_identity(), None);
    }
}
