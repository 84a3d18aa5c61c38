use metrics::Metric;
use proptest::prelude::*;
use states::FamilySelector;
use sweep::{
    crossings, evaluate_threshold_claims, figure_data, find_threshold, sweep, sweep_table, table1, Cell, ClaimStatus,
    Predicate, SweepConfig, SweepError, DEFAULT_TOL, TABLE1_PRINTED,
};

fn sel(s: &str) -> FamilySelector {
    s.parse().unwrap()
}

#[test]
fn table1_reproduces_every_printed_cell() {
    let t = table1().unwrap();
    assert!(t.deviations().is_empty(), "{:?}", t.deviations());
    for (row, printed) in t.raw.iter().zip(TABLE1_PRINTED) {
        for (v, p) in row.iter().zip(printed) {
            assert!((v - p).abs() <= 0.005 + 1e-12);
        }
    }
}

#[test]
fn rho1_sweep_matches_first_table_column() {
    let cfg = SweepConfig { families: vec![sel("rho1:phi+")], step: 0.1, ..Default::default() };
    let rows = sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 11);
    for (r, printed) in rows.iter().zip(TABLE1_PRINTED) {
        assert!((r.report.fidelity - printed[0]).abs() <= 0.005 + 1e-12);
    }
}

#[test]
fn werner_at_half_is_classical() {
    let cfg = SweepConfig { families: vec![sel("werner")], start: 0.4, stop: 0.6, step: 0.1, ..Default::default() };
    let rows = sweep(&cfg).unwrap();
    assert!((rows[1].report.fidelity - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn rhog_and_rho2_curves_are_affine() {
    let f1 = figure_data(1).unwrap();
    let g = f1.curve("rhog:phi+").unwrap();
    let r2 = f1.curve("rho2:psi+").unwrap();
    for (i, &p) in f1.params.iter().enumerate() {
        assert!((g[i] - (2.0 / 3.0 + (1.0 - p) / 3.0)).abs() < 1e-12);
        assert!((r2[i] - (1.0 - 2.0 * p / 9.0)).abs() < 1e-12);
        assert!(r2[i] >= g[i] - 1e-12);
    }
    let f2 = figure_data(2).unwrap();
    assert!(f2.curve("memsw").unwrap().iter().all(|&v| (v - 7.0 / 9.0).abs() < 1e-12));
}

#[test]
fn rho1_generic_bell_boundary() {
    // M = (1 - p/3)^2 + (1 - 4p/3)^2 on this stretch, equal to 1 at (15 - 6 sqrt 2) / 17
    let oracle = (15.0 - 6.0 * 2f64.sqrt()) / 17.0;
    let pred = Predicate::greater(Metric::MValue, 1.0, "1");
    let r = find_threshold(sel("rho1:phi+"), &pred, (0.3, 0.6), DEFAULT_TOL).unwrap();
    assert!((r.root - oracle).abs() <= 2.0 * DEFAULT_TOL);
    assert!(r.bracket[1] - r.bracket[0] <= 2.0 * DEFAULT_TOL);
    assert!(r.verify(sel("rho1:phi+"), &pred).unwrap());
    let all = crossings(sel("rho1:phi+"), &pred, 1001, DEFAULT_TOL).unwrap();
    assert_eq!(all.len(), 1);
}

#[test]
fn printed_quadratic_roots_are_recovered() {
    // 67p^2/9 - 10p + 3 = 0
    let disc = (100.0f64 - 4.0 * 67.0 / 9.0 * 3.0).sqrt();
    let roots = [(10.0 - disc) / (2.0 * 67.0 / 9.0), (10.0 + disc) / (2.0 * 67.0 / 9.0)];
    let out = evaluate_threshold_claims().unwrap();
    let lower = out.iter().find(|o| o.id == "rho1:phi+ Bell boundary (lower)").unwrap();
    let upper = out.iter().find(|o| o.id == "rho1:phi+ Bell boundary (upper)").unwrap();
    assert!((lower.printed_root.unwrap() - roots[0]).abs() <= 2.0 * DEFAULT_TOL);
    assert!((upper.printed_root.unwrap() - roots[1]).abs() <= 2.0 * DEFAULT_TOL);
    assert_eq!(upper.generic_root, None);
}

#[test]
fn exact_boundaries() {
    let f23 = Predicate::greater(Metric::Fidelity, 2.0 / 3.0, "2/3");
    let r = find_threshold(sel("rho2:psi-"), &f23, (0.3, 0.6), DEFAULT_TOL).unwrap();
    assert!((r.root - 0.5).abs() <= 2.0 * DEFAULT_TOL);
    let r = find_threshold(sel("rho2:psi-"), &f23, (0.6, 0.9), DEFAULT_TOL).unwrap();
    assert!((r.root - 0.75).abs() <= 2.0 * DEFAULT_TOL);
    let c0 = Predicate::greater(Metric::Concurrence, 0.0, "0");
    let r = find_threshold(sel("rho6:psi-"), &c0, (0.65, 1.0), DEFAULT_TOL).unwrap();
    assert!((r.root - 0.75).abs() <= 2.0 * DEFAULT_TOL);
}

#[test]
fn every_threshold_claim_is_accounted_for() {
    for o in evaluate_threshold_claims().unwrap() {
        assert_ne!(o.status, ClaimStatus::Unexplained, "{}", o.id);
        if o.status == ClaimStatus::Catalogued {
            assert!(!o.generic_boundaries.is_empty() || o.generic_root.is_some(), "{}", o.id);
            assert!(o.printed_mismatch.as_ref().unwrap().mismatches > 0);
        }
    }
}

#[test]
fn no_sign_change_names_the_bracket() {
    let pred = Predicate::greater(Metric::MValue, 1.0, "1");
    match find_threshold(sel("rho1:phi+"), &pred, (0.7, 1.0), DEFAULT_TOL) {
        Err(SweepError::NoSignChange { lo, hi, value_lo: Some(a), value_hi: Some(b) }) => {
            assert_eq!((lo, hi), (0.7, 1.0));
            assert!(a < 1.0 && b < 1.0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn outputs_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SweepConfig { families: vec![sel("rho2:psi-")], step: 0.5, ..Default::default() };
    let t = sweep_table(&sweep(&cfg).unwrap(), &cfg.metrics);
    t.write(dir.path(), "sweep").unwrap();
    let mut rdr = csv::Reader::from_path(dir.path().join("sweep.csv")).unwrap();
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), t.headers);
    let f = t.column("f").unwrap();
    for (rec, row) in rdr.records().zip(&t.rows) {
        let rec = rec.unwrap();
        if let Cell::Num(x) = row[f] {
            assert_eq!(rec[f].parse::<f64>().unwrap(), x);
        }
    }
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sweep.json")).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), t.rows.len());
    assert!(json[0]["source_eq"].is_string() || json[0]["source_eq"].is_null());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bisection_root_flips_predicate(
        fam in prop::sample::select(vec!["rho2:psi-", "werner", "rho5:phi+", "tau1:phi-"]),
        t in 0.70f64..0.95,
    ) {
        let pred = Predicate::greater(Metric::Fidelity, t, format!("{t}"));
        let s = sel(fam);
        for r in crossings(s, &pred, 101, DEFAULT_TOL).unwrap() {
            prop_assert!(r.bracket[1] - r.bracket[0] <= 2.0 * DEFAULT_TOL);
            prop_assert!(r.verify(s, &pred).unwrap());
        }
    }
}
