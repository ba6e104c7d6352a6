use ybe_core::catalog::Params;
use ybe_core::job::{emit_report, run_job, run_manifest, without_timing, CheckId, JobError, JobSpec, ReportFormat, RunManifest, Target};
use ybe_core::verify::{Backend, Verdict};

fn job(check: CheckId, entry: &str, params: Params) -> JobSpec {
    JobSpec::new(check, entry, params)
}

#[test]
fn qybe_sphere_two_exact_passes() {
    let reports = run_job(&job(CheckId::Qybe, "sphere", Params::nk(2, 1)), 0).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].check, "qybe");
    assert_eq!(reports[0].verdict, Verdict::Pass);
}

#[test]
fn identities_cpn_one_pass_per_link() {
    let reports = run_job(&job(CheckId::Identities, "cpn", Params::n(1)), 0).unwrap();
    let ab: Vec<_> = reports.iter().filter(|r| r.check == "identity-a" || r.check == "identity-b").collect();
    assert_eq!(ab.len(), 2);
    assert!(ab.iter().all(|r| r.passed()));
}

#[test]
fn fit_sphere_four_recovers_one() {
    let reports = run_job(&job(CheckId::Fit, "sphere", Params::nk(4, 1)), 0).unwrap();
    assert_eq!(reports[0].verdict, Verdict::Pass);
    assert!(reports[0].detail.as_deref().unwrap().starts_with("c = {1}"), "{:?}", reports[0].detail);
}

#[test]
fn validation_errors_are_usage_errors() {
    for (entry, params) in [("sphere", Params::nk(0, 1)), ("sphere", Params::n(3)), ("nowhere", Params::n(1)), ("cpn", Params::pq(1, 1))] {
        assert!(matches!(run_job(&job(CheckId::Qybe, entry, params), 0), Err(JobError::Usage(_))));
    }
    assert!(matches!(run_job(&job(CheckId::Expansion, "sphere", Params::nk(2, 1)), 0), Err(JobError::Usage(_))));
    assert!(matches!(run_job(&job(CheckId::Fit, "grassmann", Params::pq(2, 1)), 0), Err(JobError::Usage(_))));
}

#[test]
fn every_entry_check_pair_is_reachable() {
    let entries = [
        ("sphere", Params::nk(2, 1)),
        ("cpn", Params::n(1)),
        ("hpn", Params::n(1)),
        ("glpq_glgl", Params::pq(1, 1)),
        ("glpq_sopq", Params::pq(1, 1)),
        ("gl2n_glnc", Params::n(1)),
        ("grassmann", Params::pq(2, 1)),
        ("grassmann_complex", Params::pq(1, 1)),
    ];
    let mut ran = 0;
    for (entry, params) in entries {
        let target = Target::resolve(entry, &params).unwrap();
        for check in CheckId::ALL {
            if !target.supports(check) || (entry == "hpn" && matches!(check, CheckId::Qybe | CheckId::Fit)) {
                continue;
            }
            let spec = job(check, entry, params.clone()).with_mode(Backend::Sampled);
            let reports = run_job(&spec, 7).unwrap_or_else(|e| panic!("{entry} {}: {e}", check.name()));
            assert!(!reports.is_empty());
            ran += 1;
        }
    }
    assert!(ran > 60, "{ran}");
}

#[test]
fn manifest_round_trip_and_replay() {
    let text = r#"{"seed": 11, "jobs": [
        {"check": "qybe", "entry": "sphere", "params": {"n": 3, "k": 1}, "mode": "sampled"},
        {"check": "unitarity", "entry": "sphere", "params": {"n": 3, "k": 1}}
    ]}"#;
    let manifest: RunManifest = serde_json::from_str(text).unwrap();
    assert_eq!(manifest.jobs.len(), 2);
    let reparsed: RunManifest = serde_json::from_str(&serde_json::to_string(&manifest).unwrap()).unwrap();
    assert_eq!(reparsed, manifest);

    let flatten = |m: &RunManifest, jobs| -> Vec<_> { run_manifest(m, jobs).into_iter().flat_map(Result::unwrap).collect() };
    let first = flatten(&manifest, 1);
    let second = flatten(&manifest, 4);
    assert_eq!(first.len(), 2);
    assert_eq!(first[0].seed, Some(11));
    assert_eq!(first[0].check, "qybe");
    assert_eq!(first[1].check, "unitarity");
    let a = emit_report(&without_timing(&first), ReportFormat::Json);
    let b = emit_report(&without_timing(&second), ReportFormat::Json);
    assert_eq!(a, b);
}

#[test]
fn report_json_shape() {
    let reports = run_job(&job(CheckId::Qybe, "sphere", Params::nk(2, 1)), 0).unwrap();
    let json: serde_json::Value = serde_json::from_str(&emit_report(&reports, ReportFormat::Json)).unwrap();
    let arr = json.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    let keys: Vec<&str> = arr[0].as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["check", "entry", "params", "backend", "verdict", "elapsed_ms", "seed", "witness"] {
        assert!(keys.contains(&k), "{k}");
    }
    assert_eq!(arr[0]["params"], serde_json::json!({"n": 2, "k": 1}));
    assert_eq!(arr[0]["verdict"], "pass");
    assert_eq!(arr[0]["witness"], serde_json::Value::Null);

    let text = emit_report(&reports, ReportFormat::Text);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("qybe "));
    assert!(lines[1].contains("pass"));
}

#[test]
fn failing_check_is_a_report_not_an_error() {
    let reports = run_job(&job(CheckId::Qybe, "sphere", Params::nk(3, 0)), 0).unwrap();
    assert_eq!(reports[0].verdict, Verdict::Fail);
    assert!(reports[0].witness.is_some());
}
