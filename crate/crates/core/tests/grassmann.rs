use ybe_core::catalog::{assemble_r, CatalogEntry};
use ybe_core::grassmann::{
    build_leg_maps, check_qybe_grassmann, check_qybe_variant, compose_r, compose_variant, expansion_check_grassmann,
};
use ybe_core::lie::{DivisionAlgebra, SymmetricPair};
use ybe_core::scalar::{int, Point, RatFunc, Var};
use ybe_core::semiclassical::expand_r;
use ybe_core::tensor::{FMatrix, QMatrix};
use ybe_core::verify::{Backend, SamplerConfig, Verdict};

#[test]
fn leg_maps() {
    let maps = build_leg_maps(2, 2, 2);
    // (E_12, E_21): m indices 0*2+1 = 1 and 1*2+0 = 2, flat 1*4+2
    assert_eq!(maps.to_array(6), (1, 2));
    assert_eq!(maps.len(), 16);
    let maps = build_leg_maps(2, 3, 2);
    assert_eq!(maps.len(), 4 * 9);
    let v: Vec<i64> = (0..36).map(|x| x * 7 - 3).collect();
    assert_eq!(maps.flatten(&maps.reshape(&v)), v);
    let maps3 = build_leg_maps(2, 3, 3);
    assert_eq!(maps3.len(), 8 * 27);
    for idx in 0..maps3.len() {
        let (r, c) = maps3.to_array(idx);
        assert_eq!(maps3.from_array(r, c), idx);
    }
}

#[test]
fn composition_shapes() {
    let one = compose_r(1, 1).unwrap();
    assert_eq!(one.r.dims(), &[1, 1]);
    assert_eq!(one.r.get(0, 0), &(one.rp.get(0, 0) * one.rq.get(0, 0)));
    assert_eq!(compose_r(2, 2).unwrap().r.size(), 16);
    assert!(compose_r(0, 2).is_err());
}

#[test]
fn composition_matches_kronecker_route() {
    for (p, q) in [(2, 1), (2, 2), (3, 2)] {
        let c = compose_r(p, q).unwrap();
        // Rᵖ ⊗ (Rᵠ)ᵀ with legs [p, p, q, q] regrouped as [(p q), (p q)]
        let alt = c.rp.kron(&c.rq.transpose()).permute_legs(&[0, 2, 1, 3]).unwrap().with_dims(&[p * q, p * q]).unwrap();
        assert_eq!(c.r, alt, "({p},{q})");
        assert_eq!(compose_variant(p, q, DivisionAlgebra::Real).unwrap().r, c.r, "({p},{q})");
    }
}

#[test]
fn composed_identity_at_h_zero() {
    let c = compose_r(2, 2).unwrap();
    let at_zero = c.r.eval_partial_all(&Point::new().with(Var::H, int(0))).unwrap();
    assert_eq!(at_zero, FMatrix::identity(&[4, 4]));
}

#[test]
fn first_order_is_invariant() {
    let series = expand_r(&compose_r(2, 2).unwrap().r, 1).unwrap();
    let m1 = series.coeff(1).scale(&"s".parse::<RatFunc>().unwrap());
    let p = QMatrix::flip(4).to_ratfunc();
    assert_eq!(p.mul(&m1).unwrap().mul(&p).unwrap(), m1);
    let pair = SymmetricPair::grassmann(2, 2);
    let id = QMatrix::identity(&[4]);
    for k in pair.k_basis().unwrap() {
        let rk = pair.rho(&k).unwrap();
        let act = rk.kron(&id).add(&id.kron(&rk)).unwrap().to_ratfunc();
        assert!(act.commutator(&m1).unwrap().is_zero());
    }
}

#[test]
fn qybe_small_grassmannians() {
    let cfg = SamplerConfig::with_seed(0);
    assert!(check_qybe_grassmann(2, 1, Backend::Exact, &cfg, false).unwrap().passed());
    assert!(check_qybe_grassmann(3, 2, Backend::Sampled, &cfg, false).unwrap().passed());
    for backend in [Backend::Exact, Backend::Sampled] {
        assert_eq!(check_qybe_grassmann(2, 2, backend, &cfg, true).unwrap().verdict, Verdict::Fail);
    }
}

#[test]
fn expansion_theorem() {
    for (p, q) in [(2, 1), (2, 2)] {
        let report = expansion_check_grassmann(p, q).unwrap();
        assert!(report.passed(), "({p},{q}) {:?}", report.witness);
    }
}

#[test]
fn variants_build() {
    assert_eq!(compose_variant(1, 1, DivisionAlgebra::Complex).unwrap().r.size(), 4);
    assert_eq!(compose_variant(1, 1, DivisionAlgebra::Quaternion).unwrap().r.size(), 16);
    let report = check_qybe_variant(1, 1, DivisionAlgebra::Complex, Backend::Sampled, &SamplerConfig::with_seed(0)).unwrap();
    assert_ne!(report.verdict, Verdict::PoleRetryExhausted);
    let _ = assemble_r(&CatalogEntry::Sphere { n: 1, k: 1 });
}

#[test]
fn transpose_style_corruptions_are_not_detectable_for_q_two() {
    let rq = assemble_r(&CatalogEntry::Sphere { n: 2, k: 1 }).r;
    assert_eq!(rq.transpose(), rq);
    let minus_s = -&ybe_core::scalar::MultiPoly::var(Var::S);
    assert_eq!(rq.partial_transpose(0).unwrap(), rq.subst_all(Var::S, &minus_s).unwrap());
}
