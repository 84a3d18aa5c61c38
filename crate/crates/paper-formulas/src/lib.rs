//! Printed closed-form expressions for the state families, evaluated
//! literally and compared against the generic metrics engine.
//!
//! Disagreements are reported as [`Status::Mismatch`], never corrected.

mod catalogue;
mod x_state;

use std::fmt;

use linalg_core::DensityMatrix;
use metrics::{Metric, Metrics, MetricsError};
use serde::{Serialize, Serializer};
use states::{BellKind, FamilySelector, StateFamily};

pub use catalogue::{forms_for, ClosedForm};
pub use x_state::{x_concurrence, x_fidelity, x_mixedness, x_ttdagger_eigs, XEntries};

use catalogue::Eval;

/// Agreement tolerance between a printed form and the generic engine.
pub const CLOSED_FORM_TOL: f64 = 1e-9;

/// Parameter interval a printed form claims to hold on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validity {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Validity {
    pub const fn closed(lo: f64, hi: f64) -> Self {
        Validity { lo, hi, lo_open: false, hi_open: false }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// What a report compares: a scalar metric or one eigenvalue of `T^T T`
/// (index into the descending order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Metric(Metric),
    TtEigenvalue(usize),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Metric(m) => f.write_str(m.label()),
            Quantity::TtEigenvalue(i) => write!(f, "u{}", i + 1),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Match,
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "Match",
            Status::Mismatch => "Mismatch",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedFormReport {
    pub family: String,
    pub bell: Option<BellKind>,
    pub param: f64,
    #[serde(rename = "metric")]
    pub quantity: Quantity,
    pub source: &'static str,
    pub value: f64,
    pub generic_value: f64,
    pub abs_delta: f64,
    pub status: Status,
}

impl ClosedFormReport {
    pub fn is_match(&self) -> bool {
        self.status == Status::Match
    }
}

fn descending(mut u: [f64; 3]) -> [f64; 3] {
    u.sort_by(|a, b| b.total_cmp(a));
    u
}

/// Evaluate one form at a family member. `None` when the parameter lies
/// outside the form's printed validity range.
pub fn evaluate(
    form: &ClosedForm,
    fam: &StateFamily,
    rho: &DensityMatrix,
    m: &Metrics,
) -> Option<Vec<ClosedFormReport>> {
    let x = fam.param.get();
    if !form.validity.contains(x) {
        return None;
    }
    let pairs: Vec<(Quantity, f64, f64)> = match form.eval {
        Eval::Param(f) => vec![(Quantity::Metric(form.metric), f(x), form.metric.of(m))],
        Eval::Entries(f) => {
            vec![(Quantity::Metric(form.metric), f(&XEntries::from_matrix(rho.matrix())), form.metric.of(m))]
        }
        Eval::ParamTriple(_) | Eval::EntriesTriple(_) => {
            let closed = match form.eval {
                Eval::ParamTriple(f) => f(x),
                Eval::EntriesTriple(f) => f(&XEntries::from_matrix(rho.matrix())),
                _ => unreachable!(),
            };
            let closed = descending(closed);
            let generic = descending(m.tt_eigenvalues);
            (0..3).map(|i| (Quantity::TtEigenvalue(i), closed[i], generic[i])).collect()
        }
    };
    Some(
        pairs
            .into_iter()
            .map(|(quantity, value, generic_value)| {
                let abs_delta = (value - generic_value).abs();
                // NaN deltas fail this comparison and land in Mismatch
                let status = if abs_delta <= CLOSED_FORM_TOL { Status::Match } else { Status::Mismatch };
                ClosedFormReport {
                    family: fam.family.label().to_string(),
                    bell: fam.bell,
                    param: x,
                    quantity,
                    source: form.source,
                    value,
                    generic_value,
                    abs_delta,
                    status,
                }
            })
            .collect(),
    )
}

/// Reports for an already materialised family member.
pub fn closed_forms_with(fam: &StateFamily, rho: &DensityMatrix, m: &Metrics) -> Vec<ClosedFormReport> {
    forms_for(fam.selector()).iter().filter_map(|f| evaluate(f, fam, rho, m)).flatten().collect()
}

/// Every applicable printed form at `fam`, compared against the generic engine.
pub fn family_closed_forms(fam: &StateFamily) -> Result<Vec<ClosedFormReport>, MetricsError> {
    let rho = fam.materialize()?;
    let m = Metrics::compute(&rho)?;
    Ok(closed_forms_with(fam, &rho, &m))
}

/// Summary of one form/quantity over a parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FormScan {
    pub family: String,
    pub bell: Option<BellKind>,
    pub source: &'static str,
    #[serde(rename = "metric")]
    pub quantity: Quantity,
    pub checked: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<f64>,
    pub max_delta: f64,
}

impl FormScan {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0
    }
}

/// Evenly spaced grid `0, 1/(n-1), ..., 1`.
pub fn unit_grid(points: usize) -> impl Iterator<Item = f64> {
    assert!(points >= 2, "a grid needs at least two points");
    (0..points).map(move |i| i as f64 / (points - 1) as f64)
}

/// Scan every form of `sel` over `points` grid values, localising the first
/// failing parameter of each.
pub fn scan(sel: FamilySelector, points: usize) -> Result<Vec<FormScan>, MetricsError> {
    let mut out: Vec<FormScan> = Vec::new();
    for x in unit_grid(points) {
        let fam = sel.at(x)?;
        for r in family_closed_forms(&fam)? {
            let i = match out.iter().position(|s| s.source == r.source && s.quantity == r.quantity) {
                Some(i) => i,
                None => {
                    out.push(FormScan {
                        family: r.family.clone(),
                        bell: r.bell,
                        source: r.source,
                        quantity: r.quantity,
                        checked: 0,
                        mismatches: 0,
                        first_mismatch: None,
                        max_delta: 0.0,
                    });
                    out.len() - 1
                }
            };
            let s = &mut out[i];
            s.checked += 1;
            if !r.is_match() {
                s.mismatches += 1;
                s.first_mismatch.get_or_insert(r.param);
            }
            s.max_delta = if r.abs_delta.is_nan() { f64::NAN } else { s.max_delta.max(r.abs_delta) };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reports(sel: &str, x: f64) -> Vec<ClosedFormReport> {
        family_closed_forms(&sel.parse::<FamilySelector>().unwrap().at(x).unwrap()).unwrap()
    }

    fn find<'a>(rs: &'a [ClosedFormReport], source: &str, q: Quantity) -> &'a ClosedFormReport {
        rs.iter().find(|r| r.source == source && r.quantity == q).unwrap_or_else(|| panic!("no {source} {q}"))
    }

    #[test]
    fn validity_endpoints() {
        let v = Validity { lo: 0.7081, lo_open: true, ..Validity::closed(0.0, 1.0) };
        assert!(!v.contains(0.7081));
        assert!(v.contains(1.0));
        assert_eq!(v.to_string(), "(0.7081, 1]");
    }

    #[test]
    fn rho1_fidelity_at_half() {
        let rs = reports("rho1:phi+", 0.5);
        let r = find(&rs, "rho1/rho3:phi+ fidelity", Quantity::Metric(Metric::Fidelity));
        assert!((r.value - 13.0 / 18.0).abs() < 1e-15);
        assert!(r.is_match());
    }

    #[test]
    fn piecewise_branches_respect_ranges() {
        let gap = reports("rho1:phi+", 0.65);
        assert!(gap.iter().all(|r| !r.source.contains("branch")));
        let low = reports("rho1:phi+", 0.3);
        assert!(
            find(&low, "rho1/rho3:phi+ concurrence, lower branch", Quantity::Metric(Metric::Concurrence)).is_match()
        );
        let w = reports("werner", 0.7);
        assert!(w.iter().all(|r| r.source != "werner concurrence, branch m < 1/2"));
    }

    #[test]
    fn tau_plus_m_at_one() {
        let rs = reports("tau1:phi+", 1.0);
        let r = find(&rs, "tau:phi+ Bell-CHSH M", Quantity::Metric(Metric::MValue));
        assert_eq!(r.value, 1.0);
        // reduced Star state: u = (1/2, 1/2, 1/4), so M = 1
        assert!((r.generic_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rhog_endpoint() {
        let rs = reports("rhog:phi+", 0.0);
        let r = find(&rs, "ghz-mixture fidelity", Quantity::Metric(Metric::Fidelity));
        assert_eq!(r.value, 1.0);
        assert!(r.is_match());
    }

    #[test]
    fn nan_counts_as_mismatch() {
        let form = forms_for("rho2:psi+".parse().unwrap())[0];
        let fam: StateFamily = "rho2:psi+".parse::<FamilySelector>().unwrap().at(0.5).unwrap();
        let rho = fam.materialize().unwrap();
        let mut m = Metrics::compute(&rho).unwrap();
        m.concurrence = f64::NAN;
        let r = &evaluate(&form, &fam, &rho, &m).unwrap()[0];
        assert_eq!(r.status, Status::Mismatch);
    }

    #[test]
    fn report_serialises_with_short_metric_names() {
        let rs = reports("rho2:psi+", 0.3);
        let json = serde_json::to_string(&rs[0]).unwrap();
        assert!(json.contains("\"metric\":\"C\""), "{json}");
        assert!(json.contains("\"genericValue\""));
        assert!(json.contains("\"absDelta\""));
    }
}
