use num_traits::Zero;
use proptest::prelude::*;
use ybe_core::scalar::{int, Monomial, MultiPoly, Point, RatFunc, Rational, TruncatedSeries, Var};
use ybe_core::tensor::QMatrix;
use ybe_core::verify::SamplerConfig;

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..=4, 0u16..=2, 0u16..=1, 0u16..=1), 1..4).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(c, a, b, e)| {
            let m = Monomial::var_pow(Var::U, a).mul(&Monomial::var_pow(Var::V, b)).mul(&Monomial::var_pow(Var::H, e));
            (m, int(c))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn qmatrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |xs| QMatrix::from_fn(&[n], |r, c| int(xs[r * n + c])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
        }
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), g in nonzero_poly()) {
        let (x, y) = (&a * &g, &b * &g);
        let d = MultiPoly::gcd(&x, &y);
        prop_assert!(x.div_exact(&d).is_some());
        prop_assert!(y.div_exact(&d).is_some());
        // the planted common factor divides the gcd
        prop_assert!(d.div_exact(&g).is_some());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), u in 1i64..20, v in 1i64..20, h in 1i64..20) {
        let p = Point::new().with(Var::U, int(u)).with(Var::V, int(v)).with(Var::H, Rational::new(h.into(), 7.into()));
        if let (Ok(x), Ok(y)) = (a.eval(&p), b.eval(&p)) {
            prop_assert_eq!((&a + &b).eval(&p).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval(&p).unwrap(), x * y);
        }
    }

    #[test]
    fn series_of_polynomial_resums(p in poly()) {
        let x = RatFunc::from_poly(p);
        let series = TruncatedSeries::from_ratfunc(&x, 2).unwrap();
        prop_assert_eq!(series.resum(), x);
    }

    #[test]
    fn series_multiplication_matches_product(a in poly(), b in poly()) {
        let (x, y) = (RatFunc::from_poly(a), RatFunc::from_poly(b));
        let order = 3;
        let prod = TruncatedSeries::from_ratfunc(&x, order).unwrap().mul(&TruncatedSeries::from_ratfunc(&y, order).unwrap()).unwrap();
        prop_assert_eq!(prod, TruncatedSeries::from_ratfunc(&(&x * &y), order).unwrap());
    }

    #[test]
    fn embedding_properties(a in qmatrix(2), b in qmatrix(2), x in qmatrix(2)) {
        let ab = a.kron(&b);
        let ambient = [2, 2, 2];
        // legs in reverse order: P (A ⊗ B) P = B ⊗ A
        prop_assert_eq!(ab.embed(&[1, 0], &[2, 2]).unwrap(), b.kron(&a));
        prop_assert_eq!(ab.embed(&[0, 1], &ambient).unwrap(), ab.kron(&QMatrix::identity(&[2])));
        let a1 = a.embed(&[0], &ambient).unwrap();
        let x3 = x.embed(&[2], &ambient).unwrap();
        prop_assert_eq!(a1.mul(&x3).unwrap(), x3.mul(&a1).unwrap());
        let flip = QMatrix::flip(2);
        prop_assert_eq!(flip.mul(&ab).unwrap().mul(&flip).unwrap(), b.kron(&a));
    }

    #[test]
    fn sampler_is_deterministic(seed in any::<u64>()) {
        let cfg = SamplerConfig::with_seed(seed);
        let (mut s1, mut s2) = (cfg.sampler(), cfg.sampler());
        for _ in 0..4 {
            let (p, q) = (s1.point(), s2.point());
            prop_assert!(!p.u.is_zero() && !p.v.is_zero() && !p.h.is_zero());
            prop_assert_eq!(p, q);
        }
    }
}
