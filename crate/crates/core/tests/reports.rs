use ncode::verify::{run_suite, Report, Suite, VerifyConfig};

fn small() -> VerifyConfig {
    VerifyConfig { random_realizations: 20, random_codes_n4: 20, map_trials: 100, conjugation_pairs: 10, ring_law_trials: 100, ..Default::default() }
}

#[test]
fn same_seed_same_report() {
    for suite in [Suite::Realization, Suite::Maps, Suite::Ring] {
        let a = run_suite(suite, &small()).unwrap();
        let b = run_suite(suite, &VerifyConfig { workers: 3, ..small() }).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json(), "{suite}");
        assert!(a.passed(), "{}", a.to_text());
    }
}

#[test]
fn different_seeds_draw_differently() {
    let a = run_suite(Suite::Maps, &small()).unwrap();
    let b = run_suite(Suite::Maps, &VerifyConfig { seed: 43, ..small() }).unwrap();
    assert_ne!(a.canonical_json(), b.canonical_json());
}

#[test]
fn reports_round_trip_through_json() {
    let r = run_suite(Suite::Ring, &small()).unwrap();
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.canonical_json(), r.canonical_json());
}

#[test]
fn every_check_names_its_claim() {
    let r = run_suite(Suite::Maps, &small()).unwrap();
    assert!(!r.checks.is_empty());
    for c in &r.checks {
        assert!(c.name.starts_with("maps."), "{}", c.name);
        assert!(!c.claim.is_empty());
    }
}

#[test]
fn circulant_suite_reports_the_six_three_cell() {
    let r = run_suite(Suite::Circulant, &VerifyConfig::default()).unwrap();
    let failing: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(failing, ["circulant.table", "circulant.count_6_3"]);
    let cell = r.checks.iter().find(|c| c.name == "circulant.count_6_3").unwrap();
    assert!(cell.detail.starts_with("census 180 "), "{}", cell.detail);
    let markdown = r.payload["circulant"]["markdown"].as_str().unwrap();
    assert!(markdown.contains("| 3 | 6 | 270 | 270 | Theorem | 180 |"));
    assert_eq!(markdown.lines().count(), 2 + 14);
}
