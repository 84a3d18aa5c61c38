use linalg_core::{validate_density, Complex64, ComplexMatrix};
use metrics::{Metric, Metrics};
use paper_formulas::{family_closed_forms, scan, x_concurrence, x_fidelity, x_mixedness, Quantity, XEntries};
use proptest::prelude::*;
use states::{FamilySelector, FamilyTag};

const TOL: f64 = 1e-9;

fn x_selectors() -> Vec<FamilySelector> {
    use FamilyTag::*;
    FamilySelector::all()
        .into_iter()
        .filter(|s| matches!(s.family, Rho1 | Rho2 | Rho3 | Rho4 | RhoG | Werner | MemsW | MemsWbar))
        .collect()
}

#[test]
fn x_forms_agree_on_every_x_family() {
    for sel in x_selectors() {
        for s in scan(sel, 1001).unwrap() {
            if s.source.starts_with("x-state") && matches!(s.quantity, Quantity::Metric(_)) {
                assert!(s.all_match(), "{sel} {} {}: first mismatch at {:?}", s.source, s.quantity, s.first_mismatch);
                assert_eq!(s.checked, 1001);
            }
        }
    }
}

#[test]
fn printed_eigen_triple_disagrees_with_correlation_matrix() {
    // the printed u1 is the sum of the xx and yy eigenvalues, not one of them
    let s = scan("werner".parse().unwrap(), 11).unwrap();
    let u: Vec<_> = s.iter().filter(|s| s.source == "x-state ttdagger eigenvalues").collect();
    assert_eq!(u.len(), 3);
    assert!(u.iter().all(|s| s.mismatches > 0));
}

fn check_matching(sel: &str, sources: &[&str]) {
    let scans = scan(sel.parse().unwrap(), 1001).unwrap();
    for src in sources {
        let hits: Vec<_> = scans.iter().filter(|s| s.source == *src).collect();
        assert!(!hits.is_empty(), "{sel}: no form {src}");
        for h in hits {
            assert!(h.all_match(), "{sel} {src} {}: first mismatch at {:?}", h.quantity, h.first_mismatch);
        }
    }
}

#[test]
fn printed_forms_that_hold() {
    check_matching(
        "rho1:phi+",
        &[
            "rho1/rho3:phi+ fidelity",
            "rho1/rho3:phi+ mixedness",
            "rho1/rho3:phi+ concurrence, upper branch",
            "rho1/rho3:phi+ concurrence, lower branch",
        ],
    );
    check_matching("rho2:psi+", &["rho2/rho4:psi+ concurrence", "rho2/rho4:psi+ fidelity", "rho2/rho4:psi+ mixedness"]);
    check_matching("rho2:psi-", &["rho2/rho4:psi- fidelity", "rho2/rho4:psi- mixedness"]);
    check_matching("rhog:phi+", &["ghz-mixture fidelity"]);
    check_matching("werner", &["werner mixedness"]);
    check_matching("memsw", &["w-mems fidelity", "w-mems mixedness"]);
    check_matching(
        "rho5:phi+",
        &[
            "c1 ttdagger eigenvalues (alpha, delta)",
            "c1 fidelity (alpha, delta)",
            "c1:phi+ fidelity in r",
            "c1:phi+ mixedness in r",
        ],
    );
    check_matching(
        "rho6:psi+",
        &[
            "c2a concurrence (alpha, beta)",
            "c2a ttdagger eigenvalues (alpha, beta)",
            "c2a mixedness in r'",
            "c2a fidelity in r'",
        ],
    );
    check_matching("rho6:psi-", &["c2b fidelity (alpha, beta)", "c2b mixedness in r'", "c2b fidelity in r'"]);
    check_matching(
        "tau1:phi+",
        &["tau:phi+ concurrence (alpha, beta)", "tau:phi+ fidelity (alpha, beta)", "tau:phi+ mixedness (alpha, beta)"],
    );
    check_matching("tau1:phi-", &["tau:phi- concurrence (alpha, beta)", "tau:phi- mixedness (alpha, beta)"]);
}

#[test]
fn werner_fidelity_mismatch_is_localised_below_a_quarter() {
    let s = scan("werner".parse().unwrap(), 1001).unwrap();
    let f = s.iter().find(|s| s.source == "werner fidelity").unwrap();
    assert_eq!(f.first_mismatch, Some(0.0));
    // m in [0, 0.25) is 250 grid points; m = 1/4 itself agrees
    assert_eq!(f.mismatches, 250);
}

#[test]
fn rho1_m_polynomial_reported_as_mismatch() {
    let rs = family_closed_forms(&"rho1:phi+".parse::<FamilySelector>().unwrap().at(0.0).unwrap()).unwrap();
    let m = rs.iter().find(|r| r.source == "rho1/rho3:phi+ Bell-CHSH M").unwrap();
    assert_eq!(m.value, 4.0);
    assert!((m.generic_value - 2.0).abs() < 1e-12);
    assert!(!m.is_match());
}

#[test]
fn reports_echo_family_and_param() {
    let fam = "tau2:psi-".parse::<FamilySelector>().unwrap().at(0.25).unwrap();
    for r in family_closed_forms(&fam).unwrap() {
        assert_eq!(r.family, "tau2");
        assert_eq!(r.param, 0.25);
        assert_eq!(r.abs_delta.is_nan(), r.value.is_nan());
    }
}

fn x_matrix(d: [f64; 4], xi: f64, eta: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for (i, v) in d.iter().enumerate() {
        m[(i, i)] = (*v).into();
    }
    m[(1, 2)] = xi.into();
    m[(2, 1)] = xi.into();
    m[(0, 3)] = eta.into();
    m[(3, 0)] = eta.into();
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn x_forms_match_generic_on_random_real_x_states(
        w in prop::array::uniform4(0.0f64..1.0),
        sx in -1.0f64..1.0,
        se in -1.0f64..1.0,
    ) {
        let total: f64 = w.iter().sum();
        prop_assume!(total > 1e-3);
        let d = w.map(|x| x / total);
        let xi = sx * (d[1] * d[2]).sqrt();
        let eta = se * (d[0] * d[3]).sqrt();
        let rho = validate_density(x_matrix(d, xi, eta), 1e-10).unwrap();
        let m = Metrics::compute(&rho).unwrap();
        let e = XEntries::from_matrix(rho.matrix());
        prop_assert_eq!(e.xi, Complex64::from(xi));
        prop_assert!((x_concurrence(&e) - Metric::Concurrence.of(&m)).abs() <= 1e-8);
        prop_assert!((x_fidelity(&e) - m.fidelity).abs() <= TOL);
        prop_assert!((x_mixedness(&e) - m.linear_entropy).abs() <= TOL);
    }
}
