//! The printed range claims, checked against the generic engine.

use metrics::Metric;
use paper_formulas::{family_closed_forms, scan, FormScan, Quantity};
use serde::Serialize;
use states::FamilySelector;

use crate::figures::{figure_data, FigureData};
use crate::threshold::{bisect, crossings, find_threshold, Predicate, ThresholdResult, DEFAULT_TOL};
use crate::SweepError;

/// Printed two-figure boundaries are accepted within this distance.
pub const CLAIM_WINDOW: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdClaim {
    pub id: &'static str,
    pub selector: &'static str,
    pub predicate: Predicate,
    pub bracket: (f64, f64),
    pub claimed: f64,
    /// Source id of the printed expression the claim was read off, if any.
    pub printed_source: Option<&'static str>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimStatus {
    /// Generic root within the window of the claimed value.
    Reproduced,
    /// Not reproduced; the printed expression behind it disagrees with the
    /// generic engine, and both boundaries are reported.
    Catalogued,
    Unexplained,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThresholdClaimOutcome {
    pub id: &'static str,
    pub family: &'static str,
    pub predicate: String,
    pub claimed: f64,
    pub bracket: [f64; 2],
    /// Generic root inside the claim's bracket, if the predicate flips there.
    pub generic_root: Option<f64>,
    /// All generic boundaries on [0, 1].
    pub generic_boundaries: Vec<f64>,
    /// Root of the printed expression inside the bracket.
    pub printed_root: Option<f64>,
    pub printed_mismatch: Option<FormScan>,
    pub status: ClaimStatus,
}

fn sel(s: &str) -> FamilySelector {
    s.parse().expect("built-in selector")
}

pub fn threshold_claims() -> Vec<ThresholdClaim> {
    let m1 = || Predicate::greater(Metric::MValue, 1.0, "1");
    let f23 = || Predicate::greater(Metric::Fidelity, 2.0 / 3.0, "2/3");
    let c0 = Predicate::greater(Metric::Concurrence, 0.0, "0");
    let claim = |id, selector, predicate, bracket, claimed, printed_source| ThresholdClaim {
        id,
        selector,
        predicate,
        bracket,
        claimed,
        printed_source: Some(printed_source),
    };
    vec![
        claim("rho1:phi+ Bell boundary (lower)", "rho1:phi+", m1(), (0.3, 0.6), 0.45, "rho1/rho3:phi+ Bell-CHSH M"),
        claim("rho1:phi+ Bell boundary (upper)", "rho1:phi+", m1(), (0.7, 1.0), 0.89, "rho1/rho3:phi+ Bell-CHSH M"),
        claim("rho2:psi- Bell boundary (lower)", "rho2:psi-", m1(), (0.2, 0.6), 0.37, "rho2/rho4:psi- Bell-CHSH M"),
        claim("rho2:psi- Bell boundary (upper)", "rho2:psi-", m1(), (0.7, 1.0), 0.91, "rho2/rho4:psi- Bell-CHSH M"),
        claim("rho2:psi- fidelity boundary (lower)", "rho2:psi-", f23(), (0.3, 0.6), 0.5, "rho2/rho4:psi- fidelity"),
        claim("rho2:psi- fidelity boundary (upper)", "rho2:psi-", f23(), (0.6, 0.9), 0.75, "rho2/rho4:psi- fidelity"),
        claim("c2b concurrence onset", "rho6:psi-", c0, (0.65, 1.0), 0.75, "c2b concurrence in r'"),
        claim("c1:phi+ Bell boundary", "rho5:phi+", m1(), (0.2, 0.6), 0.38, "c1:phi+ Bell-CHSH M"),
        claim("c1:phi- Bell boundary", "rho5:phi-", m1(), (0.2, 0.6), 0.32, "c1:phi- Bell-CHSH M"),
        claim("tau:phi- fidelity boundary (lower)", "tau1:phi-", f23(), (0.2, 0.37), 0.314, "tau:phi- fidelity in s"),
        claim("tau:phi- fidelity boundary (upper)", "tau1:phi-", f23(), (0.37, 0.6), 0.43, "tau:phi- fidelity in s"),
    ]
}

fn printed_value(s: FamilySelector, source: &str, metric: Metric, x: f64) -> Result<Option<f64>, SweepError> {
    Ok(family_closed_forms(&s.at(x)?)?
        .into_iter()
        .find(|r| r.source == source && r.quantity == Quantity::Metric(metric))
        .map(|r| r.value))
}

fn printed_root(c: &ThresholdClaim, source: &str) -> Result<Option<f64>, SweepError> {
    let s = sel(c.selector);
    let f = |x| -> Result<bool, SweepError> {
        let v = printed_value(s, source, c.predicate.metric, x)?;
        Ok(v.is_some_and(|v| c.predicate.holds_for(v)))
    };
    match bisect(f, c.bracket, DEFAULT_TOL) {
        Ok((b, _)) => Ok(Some(0.5 * (b[0] + b[1]))),
        Err(SweepError::NoSignChange { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn evaluate_threshold_claim(c: &ThresholdClaim) -> Result<ThresholdClaimOutcome, SweepError> {
    let s = sel(c.selector);
    let generic_root = match find_threshold(s, &c.predicate, c.bracket, DEFAULT_TOL) {
        Ok(r) => Some(r.root),
        Err(SweepError::NoSignChange { .. }) => None,
        Err(e) => return Err(e),
    };
    let generic_boundaries: Vec<f64> =
        crossings(s, &c.predicate, 1001, DEFAULT_TOL)?.into_iter().map(|r: ThresholdResult| r.root).collect();
    let (printed_root, printed_mismatch) = match c.printed_source {
        Some(src) => {
            let m = scan(s, 1001)?
                .into_iter()
                .find(|f| f.source == src && f.quantity == Quantity::Metric(c.predicate.metric));
            (printed_root(c, src)?, m)
        }
        None => (None, None),
    };
    let reproduced = generic_root.is_some_and(|r| (r - c.claimed).abs() <= CLAIM_WINDOW);
    let status = if reproduced {
        ClaimStatus::Reproduced
    } else if printed_mismatch.as_ref().is_some_and(|m| !m.all_match()) {
        ClaimStatus::Catalogued
    } else {
        ClaimStatus::Unexplained
    };
    Ok(ThresholdClaimOutcome {
        id: c.id,
        family: c.selector,
        predicate: c.predicate.to_string(),
        claimed: c.claimed,
        bracket: [c.bracket.0, c.bracket.1],
        generic_root,
        generic_boundaries,
        printed_root,
        printed_mismatch,
        status,
    })
}

pub fn evaluate_threshold_claims() -> Result<Vec<ThresholdClaimOutcome>, SweepError> {
    threshold_claims().iter().map(evaluate_threshold_claim).collect()
}

/// Right-hand side of a figure comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Named(&'static str),
    Constant(f64),
}

/// `lhs > rhs` (or `>=`) pointwise on a parameter range of one figure.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureClaim {
    pub id: &'static str,
    pub figure: u8,
    pub lhs: &'static str,
    pub rhs: Curve,
    pub strict: bool,
    pub lo: f64,
    pub lo_open: bool,
    pub hi: f64,
    /// True for the claims the acceptance criteria name; the rest are reported only.
    pub criterion: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FigureClaimOutcome {
    pub id: &'static str,
    pub figure: u8,
    pub criterion: bool,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<f64>,
    /// Smallest `lhs - rhs` over the range.
    pub min_margin: f64,
}

impl FigureClaimOutcome {
    pub fn holds(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

pub fn figure_claims() -> Vec<FigureClaim> {
    use Curve::*;
    let w = 7.0 / 9.0;
    let c = |id, figure, lhs, rhs, strict, lo, lo_open, hi, criterion| FigureClaim {
        id,
        figure,
        lhs,
        rhs,
        strict,
        lo,
        lo_open,
        hi,
        criterion,
    };
    vec![
        c("rho2:psi+ at or above rhog everywhere", 1, "rho2:psi+", Named("rhog:phi+"), false, 0.0, false, 1.0, true),
        c("tau:phi+ above werner for p > 0.5", 4, "tau1:phi+", Named("werner"), true, 0.5, true, 1.0, true),
        c("tau:phi- above werner for p > 0.5", 4, "tau1:phi-", Named("werner"), true, 0.5, true, 1.0, true),
        c("c2b above 7/9 for p <= 0.35", 2, "rho6:psi-", Constant(w), true, 0.0, false, 0.35, true),
        c("c1 above 7/9 for p <= 0.4", 2, "rho5:phi+", Constant(w), true, 0.0, false, 0.4, true),
        c("c2a above 7/9 on [0, 1]", 2, "rho6:psi+", Constant(w), true, 0.0, false, 1.0, true),
        c("rho1:phi+ above rhog for p >= 0.85", 1, "rho1:phi+", Named("rhog:phi+"), true, 0.85, false, 1.0, false),
        c("rho2:psi- above rhog for p >= 0.85", 1, "rho2:psi-", Named("rhog:phi+"), true, 0.85, false, 1.0, false),
        c("rho6 above tau:phi+ for p <= 0.25", 3, "rho6:psi-", Named("tau1:phi+"), true, 0.0, false, 0.25, false),
        c(
            "tau:phi+ above rho6 for 0.25 < p <= 0.45",
            3,
            "tau1:phi+",
            Named("rho6:psi-"),
            true,
            0.25,
            true,
            0.45,
            false,
        ),
        c("rho6 at or above rho1 everywhere", 3, "rho6:psi-", Named("rho1:phi+"), false, 0.0, false, 1.0, false),
        c("tau:phi- above rho1 for p > 0.5", 3, "tau1:phi-", Named("rho1:phi+"), true, 0.5, true, 1.0, false),
        c("tau:phi- above rho6 for p > 0.5", 3, "tau1:phi-", Named("rho6:psi-"), true, 0.5, true, 1.0, false),
        c("werner above 7/9 for p > 0.6", 4, "werner", Constant(w), true, 0.6, true, 1.0, false),
    ]
}

pub fn evaluate_figure_claim(c: &FigureClaim, data: &FigureData) -> FigureClaimOutcome {
    let lhs = data.curve(c.lhs).unwrap_or_else(|| panic!("figure {} has no curve {}", c.figure, c.lhs));
    let rhs: Vec<f64> = match &c.rhs {
        Curve::Named(n) => data.curve(n).unwrap_or_else(|| panic!("figure {} has no curve {n}", c.figure)).to_vec(),
        Curve::Constant(v) => vec![*v; data.params.len()],
    };
    let mut out = FigureClaimOutcome {
        id: c.id,
        figure: c.figure,
        criterion: c.criterion,
        checked: 0,
        failures: 0,
        first_failure: None,
        min_margin: f64::INFINITY,
    };
    for (i, &p) in data.params.iter().enumerate() {
        let inside = if c.lo_open { p > c.lo } else { p >= c.lo } && p <= c.hi + 1e-12;
        if !inside {
            continue;
        }
        let margin = lhs[i] - rhs[i];
        out.checked += 1;
        out.min_margin = out.min_margin.min(margin);
        let ok = if c.strict { margin > 0.0 } else { margin >= -1e-12 };
        if !ok {
            out.failures += 1;
            out.first_failure.get_or_insert(p);
        }
    }
    out
}

pub fn evaluate_figure_claims() -> Result<Vec<FigureClaimOutcome>, SweepError> {
    let data: Vec<FigureData> = (1..=4).map(figure_data).collect::<Result<_, _>>()?;
    Ok(figure_claims().iter().map(|c| evaluate_figure_claim(c, &data[c.figure as usize - 1])).collect())
}
