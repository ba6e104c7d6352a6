use ybe_core::catalog::{assemble_r, build_gc_closed, classical_r_from, CatalogEntry};
use ybe_core::lie::{CurvatureTensor, SymmetricPair};
use ybe_core::scalar::{int, MultiPoly, RatFunc};
use ybe_core::tensor::FMatrix;
use ybe_core::verify::{
    check_cybe, check_cybe_index, check_identity_suite, check_qybe, check_three_leg, check_unitarity, Backend, LegArguments,
    Qybe, SamplerConfig, Subject, Verdict,
};

fn f(text: &str) -> RatFunc {
    text.parse().unwrap()
}

fn sampler() -> SamplerConfig {
    SamplerConfig::with_seed(0)
}

fn qybe(entry: CatalogEntry, backend: Backend) -> Verdict {
    let r = assemble_r(&entry);
    check_qybe(&r.r, &Subject::from(&entry), backend, &sampler()).unwrap().verdict
}

#[test]
fn qybe_small_entries() {
    use CatalogEntry::*;
    for entry in [Sphere { n: 2, k: 1 }, Sphere { n: 3, k: 1 }, ComplexProjective { n: 1 }, GlSplit { p: 1, q: 1 }, GlOrthogonal { p: 2, q: 1 }, GlComplex { n: 1 }] {
        assert_eq!(qybe(entry, Backend::Exact), Verdict::Pass, "{entry}");
        assert_eq!(qybe(entry, Backend::Sampled), Verdict::Pass, "{entry}");
    }
}

#[test]
fn qybe_negative_control() {
    let entry = CatalogEntry::Sphere { n: 3, k: 1 };
    let (g, _) = build_gc_closed(&entry);
    let r = FMatrix::identity(&[3, 3]).add(&g.to_ratfunc().scale(&f("h/s"))).unwrap();
    for backend in [Backend::Exact, Backend::Sampled] {
        let report = check_qybe(&r, &Subject::new("custom", Default::default()), backend, &sampler()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.witness.is_some());
    }
}

#[test]
fn sampled_report_records_seed_and_points() {
    let entry = CatalogEntry::Sphere { n: 2, k: 1 };
    let r = assemble_r(&entry);
    let report = check_qybe(&r.r, &Subject::from(&entry), Backend::Sampled, &SamplerConfig::with_seed(42)).unwrap();
    assert_eq!(report.seed, Some(42));
    assert_eq!(report.points.as_ref().unwrap().len(), 5);
    let again = check_qybe(&r.r, &Subject::from(&entry), Backend::Sampled, &SamplerConfig::with_seed(42)).unwrap();
    assert_eq!(report.points, again.points);
}

#[test]
fn pole_retry_exhaustion() {
    // a12 = 0 puts every sample on the pole of 1/s
    let entry = CatalogEntry::Sphere { n: 2, k: 1 };
    let r = assemble_r(&entry);
    let args = LegArguments { a12: MultiPoly::zero(), ..LegArguments::difference() };
    let report = check_three_leg(&Qybe, &r.r, &Subject::from(&entry), Backend::Sampled, &sampler(), &args).unwrap();
    assert_eq!(report.verdict, Verdict::PoleRetryExhausted);
    assert!(check_three_leg(&Qybe, &r.r, &Subject::from(&entry), Backend::Exact, &sampler(), &args).is_err());
}

#[test]
fn pluggable_arguments() {
    // for n = 2 the three embedded operators commute, so any assignment passes
    let u: MultiPoly = "u".parse().unwrap();
    let v: MultiPoly = "v".parse().unwrap();
    let skewed = LegArguments { a12: u.clone(), a13: &u + &(&v + &v), a23: v.clone() };
    for (n, expected) in [(2, Verdict::Pass), (3, Verdict::Fail)] {
        let entry = CatalogEntry::Sphere { n, k: 1 };
        let r = assemble_r(&entry);
        let report = check_three_leg(&Qybe, &r.r, &Subject::from(&entry), Backend::Exact, &sampler(), &skewed).unwrap();
        assert_eq!(report.verdict, expected, "n = {n}");
        assert!(report.detail.is_some());
    }
}

#[test]
fn dimension_mismatch() {
    let r = FMatrix::identity(&[2, 3]);
    assert!(check_qybe(&r, &Subject::new("custom", Default::default()), Backend::Exact, &sampler()).is_err());
}

#[test]
fn cybe_examples() {
    let entry = CatalogEntry::Sphere { n: 2, k: 1 };
    let (g, c) = build_gc_closed(&entry);
    let subject = Subject::from(&entry);
    let r = classical_r_from(&g, &c);
    assert!(check_cybe(&r, &subject, Backend::Exact, &sampler()).unwrap().passed());
    let casimir = c.to_ratfunc().scale(&f("1/s"));
    assert!(check_cybe(&casimir, &subject, Backend::Exact, &sampler()).unwrap().passed());
    let (g3, _) = build_gc_closed(&CatalogEntry::Sphere { n: 3, k: 1 });
    let g_only = g3.to_ratfunc().scale(&f("1/s"));
    let report = check_cybe(&g_only, &subject, Backend::Exact, &sampler()).unwrap();
    assert_ne!(report.verdict, Verdict::PoleRetryExhausted);
}

#[test]
fn index_cybe() {
    for (p, q) in [(2, 1), (3, 1), (2, 2)] {
        let curv = CurvatureTensor::from_pair(&SymmetricPair::grassmann(p, q)).unwrap();
        let report = check_cybe_index(&curv, &Subject::grassmann(p, q));
        assert!(report.passed(), "({p},{q}) {:?}", report.witness);
        let bad = curv.perturbed((0, 1, 0, 1), &int(1));
        assert_eq!(check_cybe_index(&bad, &Subject::grassmann(p, q)).verdict, Verdict::Fail);
    }
}

#[test]
fn identity_suites() {
    for n in [2, 3] {
        for report in check_identity_suite(&CatalogEntry::Sphere { n, k: 1 }).unwrap() {
            assert!(report.passed(), "{} {:?}", report.check, report.witness);
        }
    }
    for entry in [CatalogEntry::ComplexProjective { n: 1 }, CatalogEntry::QuaternionicProjective { n: 1 }] {
        let reports = check_identity_suite(&entry).unwrap();
        assert!(reports[0].passed() && reports[1].passed(), "{entry}");
    }
    assert!(check_identity_suite(&CatalogEntry::GlComplex { n: 1 }).is_err());
}

#[test]
fn unitarity() {
    for n in [2, 3] {
        let entry = CatalogEntry::Sphere { n, k: 1 };
        let (report, factor) = check_unitarity(&assemble_r(&entry).r, &Subject::from(&entry)).unwrap();
        assert!(report.passed());
        assert_eq!(factor.unwrap(), f("1-h^2/s^2"));
    }
    let (_, factor) = check_unitarity(&FMatrix::identity(&[2, 2]), &Subject::new("identity", Default::default())).unwrap();
    assert_eq!(factor.unwrap(), RatFunc::one());
}
