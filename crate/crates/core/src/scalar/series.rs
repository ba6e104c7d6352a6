use super::{MultiPoly, RatFunc, ScalarError, Var};

/// Power series in `h` truncated after `h^order`; coefficients are rational
/// functions free of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<RatFunc>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { order, coeffs: vec![RatFunc::zero(); order + 1] }
    }

    /// Builds a series from explicit coefficients, padding with zeros or
    /// truncating to `order`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<RatFunc>) -> Self {
        assert!(coeffs.iter().all(|c| !c.contains_var(Var::H)), "series coefficients must be free of h");
        coeffs.resize(order + 1, RatFunc::zero());
        TruncatedSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &RatFunc {
        &self.coeffs[k]
    }

    /// Expands `x` around `h = 0` by long division in `h`.
    pub fn from_ratfunc(x: &RatFunc, order: usize) -> Result<Self, ScalarError> {
        let num = x.num().coeffs_in(Var::H);
        let den = x.den().coeffs_in(Var::H);
        if den[0].is_zero() {
            return Err(ScalarError::PoleAtExpansionPoint);
        }
        let lift = |p: &[MultiPoly], k: usize| p.get(k).cloned().map(RatFunc::from_poly).unwrap_or_else(RatFunc::zero);
        let d0 = lift(&den, 0);
        let mut coeffs: Vec<RatFunc> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            // N_k = Σ_{j=0..k} D_j c_{k-j}
            let mut rhs = lift(&num, k);
            for j in 1..=k.min(den.len() - 1) {
                let dj = lift(&den, j);
                if !dj.is_zero() {
                    rhs = &rhs - &(&dj * &coeffs[k - j]);
                }
            }
            coeffs.push(rhs.checked_div(&d0)?);
        }
        Ok(TruncatedSeries { order, coeffs })
    }

    /// `Σ coeffs[k] h^k` as a rational function.
    pub fn resum(&self) -> RatFunc {
        let h = RatFunc::var(Var::H);
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &h) + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check_order(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { order: self.order, coeffs })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check_order(rhs)?;
        let mut coeffs = vec![RatFunc::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(self.order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(TruncatedSeries { order: self.order, coeffs })
    }

    fn check_order(&self, rhs: &Self) -> Result<(), ScalarError> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(ScalarError::OrderMismatch(self.order, rhs.order))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> RatFunc {
        text.parse().unwrap()
    }

    fn series(order: usize, coeffs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(order, coeffs.iter().map(|c| f(c)).collect())
    }

    #[test]
    fn geometric_expansion() {
        let s = TruncatedSeries::from_ratfunc(&f("h/(u+1/2*h)"), 3).unwrap();
        assert_eq!(s.coeffs(), &[f("0"), f("1/u"), f("-1/(2*u^2)"), f("1/(4*u^3)")]);
        let s = TruncatedSeries::from_ratfunc(&f("h/u"), 2).unwrap();
        assert_eq!(s.coeffs(), &[f("0"), f("1/u"), f("0")]);
        let s = TruncatedSeries::from_ratfunc(&f("1/(u+h)"), 2).unwrap();
        assert_eq!(s.coeffs(), &[f("1/u"), f("-1/u^2"), f("1/u^3")]);
    }

    #[test]
    fn pole_at_zero() {
        assert_eq!(TruncatedSeries::from_ratfunc(&f("1/h"), 2), Err(ScalarError::PoleAtExpansionPoint));
        assert_eq!(TruncatedSeries::from_ratfunc(&f("u/(h*u+h^2)"), 2), Err(ScalarError::PoleAtExpansionPoint));
    }

    #[test]
    fn arithmetic() {
        let one_plus = series(2, &["1", "1"]);
        let one_minus = series(2, &["1", "-1"]);
        assert_eq!(one_plus.mul(&one_minus).unwrap(), series(2, &["1", "0", "-1"]));
        let hu = series(1, &["0", "1/u"]);
        assert_eq!(hu.mul(&hu).unwrap(), series(1, &["0", "0"]));
        let x = series(2, &["1", "1/u"]);
        assert_eq!(x.mul(&x).unwrap(), series(2, &["1", "2/u", "1/u^2"]));
        assert_eq!(x.add(&hu), Err(ScalarError::OrderMismatch(2, 1)));
    }
}
