use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{MultiPoly, Rational, ScalarError, Var};

/// Assignment of rational values to some of the variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Point {
    vals: [Option<Rational>; 4],
}

impl Point {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: Rational) -> Self {
        self.vals[v.index()] = Some(value);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.vals[v.index()].as_ref()
    }

    pub fn values(&self) -> &[Option<Rational>; 4] {
        &self.vals
    }
}

/// Rational function over ℚ in `s, u, v, h`, kept in lowest terms with a
/// monic denominator so that equal functions have identical storage.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: MultiPoly::constant(c), den: MultiPoly::one() }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = MultiPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        // powers of coprime polynomials stay coprime
        Self::make_monic(self.num.pow(e), self.den.pow(e))
    }

    /// Substitutes the polynomial `expr` for `v`.
    pub fn subst(&self, v: Var, expr: &MultiPoly) -> Result<Self, ScalarError> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        let den = self.den.subst(v, expr);
        if den.is_zero() {
            return Err(ScalarError::SubstitutionPole(v, expr.to_string()));
        }
        Ok(Self::reduce(self.num.subst(v, expr), den))
    }

    /// Exact value at a point binding every variable that occurs.
    pub fn eval(&self, point: &Point) -> Result<Rational, ScalarError> {
        let den = self.den.eval(point.values())?;
        if den.is_zero() {
            return Err(ScalarError::EvalPole);
        }
        Ok(self.num.eval(point.values())? / den)
    }

    /// Binds the variables set in `point` and keeps the rest symbolic.
    pub fn eval_partial(&self, point: &Point) -> Result<Self, ScalarError> {
        let den = self.den.eval_partial(point.values());
        if den.is_zero() {
            return Err(ScalarError::EvalPole);
        }
        Ok(Self::reduce(self.num.eval_partial(point.values()), den))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &RatFunc) -> RatFunc {
        add_signed(self, rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: &RatFunc) -> RatFunc {
        add_signed(self, rhs, true)
    }
}

fn add_signed(a: &RatFunc, b: &RatFunc, negate_b: bool) -> RatFunc {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let combine = |x: &MultiPoly, y: &MultiPoly| if negate_b { x - y } else { x + y };
    if a.den == b.den {
        let num = combine(&a.num, &b.num);
        return if a.den.is_one() { RatFunc { num, den: a.den.clone() } } else { RatFunc::reduce(num, a.den.clone()) };
    }
    // Henrici: with g = gcd(b1, b2) only g can share factors with the result
    let g = MultiPoly::gcd(&a.den, &b.den);
    if g.is_one() {
        let num = combine(&(&a.num * &b.den), &(&b.num * &a.den));
        let den = &a.den * &b.den;
        return RatFunc::make_monic(num, den);
    }
    let a_rest = a.den.div_exact(&g).expect("gcd divides");
    let b_rest = b.den.div_exact(&g).expect("gcd divides");
    let num = combine(&(&a.num * &b_rest), &(&b.num * &a_rest));
    if num.is_zero() {
        return RatFunc::zero();
    }
    let den = &a.den * &b_rest;
    let g2 = MultiPoly::gcd(&num, &g);
    if g2.is_one() {
        RatFunc::make_monic(num, den)
    } else {
        RatFunc::make_monic(num.div_exact(&g2).expect("gcd divides"), den.div_exact(&g2).expect("gcd divides"))
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        // cross-cancel: gcd(n1, d2) and gcd(n2, d1)
        let g1 = MultiPoly::gcd(&self.num, &rhs.den);
        let g2 = MultiPoly::gcd(&rhs.num, &self.den);
        let cut = |p: &MultiPoly, g: &MultiPoly| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RatFunc::make_monic(num, den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    /// `num` when the denominator is one, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn f(text: &str) -> RatFunc {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&f("h/u") + &f("h/u"), f("2*h/u"));
        assert_eq!(&f("h/(u+1/2*h)") * &f("u+1/2*h"), f("h"));
        // cross-multiplication oracle: (u - (u+h)) / (u (u+h))
        let expected = RatFunc::new("-h".parse().unwrap(), "u^2+u*h".parse().unwrap()).unwrap();
        assert_eq!(&f("1/(u+h)") - &f("1/u"), expected);
        assert_eq!(f("1/u").checked_div(&RatFunc::zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(RatFunc::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn canonical_storage() {
        let a = f("(u^2-h^2)/(2*u-2*h)");
        assert_eq!(a.num(), &"1/2*u+1/2*h".parse::<MultiPoly>().unwrap());
        assert!(a.den().is_one());
        assert_eq!(f("h/(u+1/2*h)").den().leading_coeff(), rat(1, 1));
    }

    #[test]
    fn substitution() {
        let u_plus_v: MultiPoly = "u+v".parse().unwrap();
        assert_eq!(f("h/s").subst(Var::S, &u_plus_v).unwrap(), f("h/(u+v)"));
        assert!(matches!(f("h/s").subst(Var::S, &MultiPoly::zero()), Err(ScalarError::SubstitutionPole(Var::S, _))));
        assert_eq!(f("h/(s+2*h)").subst(Var::S, &MultiPoly::var(Var::U)).unwrap(), f("h/(u+2*h)"));
    }

    #[test]
    fn evaluation() {
        let p = Point::new().with(Var::U, int(2)).with(Var::H, int(1));
        assert_eq!(f("h/u").eval(&p).unwrap(), rat(1, 2));
        let pole = Point::new().with(Var::U, int(1)).with(Var::H, int(-1));
        assert_eq!(f("h/(u+h)").eval(&pole), Err(ScalarError::EvalPole));
        let p3 = Point::new().with(Var::U, int(3)).with(Var::H, int(1));
        assert_eq!(f("(u^2-h^2)/(u-h)").eval(&p3).unwrap(), int(4));
    }

    #[test]
    fn display_parses_back() {
        for text in ["h/(u+1/2*h)", "(u^2+v)/(s*h-3)", "-7/2", "0"] {
            let a = f(text);
            assert_eq!(f(&a.to_string()), a);
        }
        assert_eq!(f("h/(u+1/2*h)").to_string(), "(2*h)/(1*h+2*u)");
    }
}
