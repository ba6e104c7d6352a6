use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational, ScalarError, Var};

/// Exponent vector over `(s, u, v, h)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut m = [0; 4];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Monomial(out)
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(rhs.0).all(|(&a, b)| a <= b)
    }

    /// `rhs / self`, assuming `self.divides(rhs)`.
    fn quotient_of(&self, rhs: &Monomial) -> Monomial {
        let mut out = rhs.0;
        for (o, a) in out.iter_mut().zip(self.0) {
            *o -= a;
        }
        Monomial(out)
    }

    fn gcd_with(&self, rhs: &Monomial) -> Monomial {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o = (*o).min(r);
        }
        Monomial(out)
    }

    fn without(&self, v: Var) -> Monomial {
        let mut out = self.0;
        out[v.index()] = 0;
        Monomial(out)
    }
}

/// Graded-lex order with `s < u < v < h`: total degree first, then the
/// exponent of `h`, `v`, `u`, `s` in that order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..4).rev() {
                match self.0[i].cmp(&other.0[i]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ in the variables `s, u, v, h`.
///
/// Terms are kept sorted by decreasing graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    /// Canonicalizes raw terms: merges duplicate exponents, drops zeros and
    /// sorts.
    pub fn from_terms<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in raw {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_sorted_map(acc)
    }

    fn from_sorted_map(acc: BTreeMap<Monomial, Rational>) -> Self {
        MultiPoly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if *m == Monomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // multiplying by a monomial preserves the term order
        MultiPoly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is one. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`;
    /// index `k` holds the coefficient of `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        // the exponent of `v` is constant within a bucket, so order is kept
        buckets.into_iter().map(|terms| MultiPoly { terms }).collect()
    }

    /// Reassembles `Σ coeffs[k] * v^k`.
    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(k, c)| {
            let shift = Monomial::var_pow(v, k as u16);
            c.terms.iter().map(move |(m, a)| (m.mul(&shift), a.clone()))
        }))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes `expr` for `v`.
    pub fn subst(&self, v: Var, expr: &MultiPoly) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * expr) + c;
        }
        acc
    }

    /// Evaluates the variables bound in `vals`, leaving the others symbolic.
    pub fn eval_partial(&self, vals: &[Option<Rational>; 4]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut mono = *m;
            let mut coeff = c.clone();
            for v in Var::ALL {
                if let Some(x) = &vals[v.index()] {
                    let e = m.exp(v);
                    if e > 0 {
                        coeff *= num_traits::pow(x.clone(), e as usize);
                        mono.0[v.index()] = 0;
                    }
                }
            }
            (mono, coeff)
        }))
    }

    /// Full evaluation; every variable that occurs must be bound.
    pub fn eval(&self, vals: &[Option<Rational>; 4]) -> Result<Rational, ScalarError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    let x = vals[v.index()].as_ref().ok_or(ScalarError::UnboundVariable(v))?;
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.leading()?;
        if divisor.terms.len() == 1 {
            // monomial divisor: divide term by term
            let inv = lc.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                out.push((lm.quotient_of(m), c * &inv));
            }
            return Some(MultiPoly { terms: out });
        }
        let inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = lm.quotient_of(&rm);
            let qc = rc * &inv;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
        }
        // quotient terms are produced in decreasing order
        Some(MultiPoly { terms: quot })
    }

    /// Largest monomial dividing every term.
    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.gcd_with(m)),
        }
    }

    /// Greatest common divisor, normalized to leading coefficient one.
    /// `gcd(0, b)` is `b` made monic.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MultiPoly::one();
        }
        if a.terms.len() == 1 || b.terms.len() == 1 {
            let m = a.monomial_content().gcd_with(&b.monomial_content());
            return MultiPoly::monomial(m, Rational::one());
        }
        if a == b {
            return a.monic();
        }
        let main = Var::ALL
            .iter()
            .rev()
            .copied()
            .find(|&v| a.contains_var(v) || b.contains_var(v))
            .expect("non-constant polynomials contain a variable");
        gcd_in(a, b, main).monic()
    }

    /// Content with respect to `v`: the gcd of the coefficients of powers of `v`.
    pub fn content_in(&self, v: Var) -> MultiPoly {
        let mut g = MultiPoly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = MultiPoly::gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part_in(&self, v: Var) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides the polynomial")
    }

    /// Rational roots of a polynomial that involves at most the variable `v`.
    /// Returns `None` for the zero polynomial (every value is a root).
    pub fn rational_roots(&self, v: Var) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return None;
        }
        let coeffs: Vec<Rational> = self
            .coeffs_in(v)
            .iter()
            .map(|c| c.constant_value().expect("univariate polynomial"))
            .collect();
        Some(univariate_rational_roots(&coeffs))
    }
}

fn gcd_in(a: &MultiPoly, b: &MultiPoly, x: Var) -> MultiPoly {
    let da = a.degree_in(x);
    let db = b.degree_in(x);
    if da == 0 {
        return MultiPoly::gcd(a, &b.content_in(x));
    }
    if db == 0 {
        return MultiPoly::gcd(&a.content_in(x), b);
    }
    let ca = a.content_in(x);
    let cb = b.content_in(x);
    let content = MultiPoly::gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(x) < q.degree_in(x) {
        std::mem::swap(&mut p, &mut q);
    }
    // primitive remainder sequence
    let g = loop {
        let r = pseudo_rem(&p, &q, x);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(x) == 0 {
            break MultiPoly::one();
        }
        p = q;
        q = r.primitive_part_in(x);
    };
    &content * &g.primitive_part_in(x)
}

fn pseudo_rem(p: &MultiPoly, q: &MultiPoly, x: Var) -> MultiPoly {
    let dq = q.degree_in(x);
    let q_coeffs = q.coeffs_in(x);
    let lq = q_coeffs[dq as usize].clone();
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(x) >= dq {
        let dr = r.degree_in(x);
        let lr = r.coeffs_in(x).pop().expect("nonzero");
        let shift = MultiPoly::monomial(Monomial::var_pow(x, dr - dq), Rational::one());
        r = &(&r * &lq) - &(&(&lr * &shift) * q);
    }
    r
}

fn univariate_rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;

    // clear denominators
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    let mut roots = Vec::new();
    // factor out x^k
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
        ints.drain(..low);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints.last().expect("nonempty").abs();
    let eval = |x: &Rational| -> bool {
        let mut acc = Rational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    let mut found = Vec::new();
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1, -1] {
                let cand = Rational::new(p.clone() * sign, q.clone());
                if !found.contains(&cand) && eval(&cand) {
                    found.push(cand);
                }
            }
        }
    }
    roots.extend(found);
    roots.sort();
    roots
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let mut out = Vec::new();
    let mut small = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    small.extend(out.into_iter().rev());
    small
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        merge(self, rhs, true)
    }
}

fn merge(a: &MultiPoly, b: &MultiPoly, negate_b: bool) -> MultiPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let signed = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match ma.cmp(mb) {
            Ordering::Greater => {
                out.push((*ma, ca.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((*mb, signed(cb)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*ma, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (*m, signed(c))));
    MultiPoly { terms: out }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        MultiPoly::from_sorted_map(acc)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing graded-lex order, each `c*s^a*u^b*v^c*h^d` with
    /// unit exponents written bare and zero exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(if c.is_negative() { "-" } else { "+" })?;
                f.write_str(&fmt_rational(&c.abs()))?;
            } else {
                f.write_str(&fmt_rational(c))?;
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    e => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(text: &str) -> MultiPoly {
        text.parse().unwrap()
    }

    #[test]
    fn normalize_cancels_merges_and_reduces() {
        let u = Monomial::var(Var::U);
        let h = Monomial::var(Var::H);
        assert!(MultiPoly::from_terms([(u, rat(1, 1)), (u, rat(-1, 1))]).is_zero());
        assert_eq!(MultiPoly::from_terms([(h, rat(1, 2)), (h, rat(1, 2))]), MultiPoly::var(Var::H));
        let su = Monomial([1, 1, 0, 0]);
        let q = MultiPoly::from_terms([(su, rat(2, 4))]);
        assert_eq!(q.terms(), &[(su, rat(1, 2))]);
    }

    #[test]
    fn graded_lex_puts_h_highest() {
        assert!(Monomial::var(Var::H) > Monomial::var(Var::V));
        assert!(Monomial::var(Var::U) > Monomial::var(Var::S));
        assert!(Monomial([2, 0, 0, 0]) > Monomial::var(Var::H));
        assert_eq!(p("u+1/2*h").leading().unwrap().0, Monomial::var(Var::H));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(MultiPoly::gcd(&p("u^2-h^2"), &p("u+h")), p("u+h"));
        assert_eq!(MultiPoly::gcd(&p("u"), &p("h")), MultiPoly::one());
        assert_eq!(MultiPoly::gcd(&p("u*(u+1/2*h)"), &p("u^2")), p("u"));
        assert_eq!(MultiPoly::gcd(&MultiPoly::zero(), &p("2*u+4")), p("u+2"));
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let f = p("u+v+3*h");
        let a = &f * &p("u-h^2+s");
        let b = &f * &p("v*u+2");
        assert_eq!(MultiPoly::gcd(&a, &b), f.monic());
    }

    #[test]
    fn exact_division() {
        let a = p("u^2-h^2");
        assert_eq!(a.div_exact(&p("u-h")).unwrap(), p("u+h"));
        assert!(p("u^2+1").div_exact(&p("u+1")).is_none());
    }

    #[test]
    fn subst_and_eval() {
        let a = p("s^2+h");
        assert_eq!(a.subst(Var::S, &p("u+v")), p("u^2+2*u*v+v^2+h"));
        let mut vals: [Option<Rational>; 4] = Default::default();
        vals[Var::S.index()] = Some(rat(1, 2));
        vals[Var::H.index()] = Some(rat(3, 1));
        assert_eq!(a.eval(&vals).unwrap(), rat(13, 4));
        vals[Var::H.index()] = None;
        assert_eq!(a.eval(&vals), Err(ScalarError::UnboundVariable(Var::H)));
    }

    #[test]
    fn rational_roots_of_univariate() {
        let f = p("s^3-1/2*s^2-2*s+1"); // (s - 1/2)(s^2 - 2)
        assert_eq!(f.rational_roots(Var::S).unwrap(), vec![rat(1, 2)]);
        let g = p("s^2-3*s");
        assert_eq!(g.rational_roots(Var::S).unwrap(), vec![rat(0, 1), rat(3, 1)]);
        assert!(MultiPoly::zero().rational_roots(Var::S).is_none());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "1", "-1/2*u*h+3", "h^2-u^2", "s*u*v*h-7/3"] {
            let a = p(text);
            assert_eq!(p(&a.to_string()), a);
        }
        assert_eq!(p("u+1/2*h").to_string(), "1/2*h+1*u");
    }
}
