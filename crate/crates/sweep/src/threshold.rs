use std::fmt;

use metrics::{Metric, Metrics};
use serde::Serialize;
use states::FamilySelector;

use paper_formulas::unit_grid;

use crate::SweepError;

pub const DEFAULT_TOL: f64 = 1e-6;
/// A strict comparison only counts once it clears numerical noise by this much.
pub const PREDICATE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cmp {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "<")]
    Less,
}

/// `metric > value` or `metric < value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Predicate {
    pub metric: Metric,
    pub cmp: Cmp,
    pub value: f64,
    /// How the bound is written, e.g. "2/3".
    pub value_label: String,
}

impl Predicate {
    pub fn greater(metric: Metric, value: f64, value_label: impl Into<String>) -> Self {
        Predicate { metric, cmp: Cmp::Greater, value, value_label: value_label.into() }
    }

    pub fn holds_for(&self, x: f64) -> bool {
        match self.cmp {
            Cmp::Greater => x - self.value > PREDICATE_MARGIN,
            Cmp::Less => self.value - x > PREDICATE_MARGIN,
        }
    }

    pub fn holds(&self, m: &Metrics) -> bool {
        self.holds_for(self.metric.of(m))
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.cmp {
            Cmp::Greater => ">",
            Cmp::Less => "<",
        };
        write!(f, "{} {op} {}", self.metric, self.value_label)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThresholdResult {
    pub family: String,
    pub metric: Metric,
    pub predicate: String,
    /// Final bracket; the predicate differs at its two ends.
    pub bracket: [f64; 2],
    pub root: f64,
    pub tolerance: f64,
    pub iterations: u32,
}

fn metrics_at(sel: FamilySelector, x: f64) -> Result<Metrics, SweepError> {
    Ok(Metrics::compute(&sel.at(x)?.materialize()?)?)
}

/// Bisection on any boolean function of the parameter.
pub fn bisect<F>(mut f: F, bracket: (f64, f64), tol: f64) -> Result<([f64; 2], u32), SweepError>
where
    F: FnMut(f64) -> Result<bool, SweepError>,
{
    let (mut lo, mut hi) = bracket;
    if !(tol > 0.0) || !(lo < hi) {
        return Err(SweepError::InvalidConfig(format!("bad bisection setup: bracket [{lo}, {hi}], tol {tol}")));
    }
    let at_lo = f(lo)?;
    if at_lo == f(hi)? {
        return Err(SweepError::NoSignChange { lo, hi, value_lo: None, value_hi: None });
    }
    let mut iterations = 0;
    while hi - lo > 2.0 * tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(([lo, hi], iterations))
}

/// Locate where `pred` changes truth value for `sel` inside `bracket`.
pub fn find_threshold(
    sel: FamilySelector,
    pred: &Predicate,
    bracket: (f64, f64),
    tol: f64,
) -> Result<ThresholdResult, SweepError> {
    let eval = |x: f64| -> Result<bool, SweepError> { Ok(pred.holds(&metrics_at(sel, x)?)) };
    let (b, iterations) = bisect(eval, bracket, tol).map_err(|e| match e {
        SweepError::NoSignChange { lo, hi, .. } => {
            let value = |x| metrics_at(sel, x).map(|m| pred.metric.of(&m)).ok();
            SweepError::NoSignChange { lo, hi, value_lo: value(lo), value_hi: value(hi) }
        }
        other => other,
    })?;
    Ok(ThresholdResult {
        family: sel.to_string(),
        metric: pred.metric,
        predicate: pred.to_string(),
        bracket: b,
        root: 0.5 * (b[0] + b[1]),
        tolerance: tol,
        iterations,
    })
}

impl ThresholdResult {
    /// Post-hoc check that the predicate flips across `root +- 2 tol`.
    pub fn verify(&self, sel: FamilySelector, pred: &Predicate) -> Result<bool, SweepError> {
        let lo = (self.root - 2.0 * self.tolerance).max(0.0);
        let hi = (self.root + 2.0 * self.tolerance).min(1.0);
        Ok(pred.holds(&metrics_at(sel, lo)?) != pred.holds(&metrics_at(sel, hi)?))
    }
}

/// Every truth-value change of `pred` on an evenly spaced grid, each refined by bisection.
pub fn crossings(
    sel: FamilySelector,
    pred: &Predicate,
    points: usize,
    tol: f64,
) -> Result<Vec<ThresholdResult>, SweepError> {
    let grid: Vec<f64> = unit_grid(points).collect();
    let truth: Vec<bool> =
        grid.iter().map(|&x| Ok(pred.holds(&metrics_at(sel, x)?))).collect::<Result<_, SweepError>>()?;
    grid.windows(2)
        .zip(truth.windows(2))
        .filter(|(_, t)| t[0] != t[1])
        .map(|(x, _)| find_threshold(sel, pred, (x[0], x[1]), tol))
        .collect()
}
