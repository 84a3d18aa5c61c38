//! Parameter sweeps over the state families, threshold search for the
//! printed range claims, and the summary-table and figure datasets.

mod claims;
mod figures;
mod table;
mod threshold;

use std::path::{Path, PathBuf};

use metrics::{Metric, Metrics, MetricsError, MetricsReport, StateLabel};
use paper_formulas::{closed_forms_with, ClosedFormReport, Quantity};
use rayon::prelude::*;
use states::{FamilySelector, StateError};

pub use claims::{
    evaluate_figure_claim, evaluate_figure_claims, evaluate_threshold_claims, figure_claims, threshold_claims,
    ClaimStatus, Curve, FigureClaim, FigureClaimOutcome, ThresholdClaim, ThresholdClaimOutcome, CLAIM_WINDOW,
};
pub use figures::{figure_data, table1, FigureData, Table1, TABLE1_COLUMNS, TABLE1_PRINTED};
pub use paper_formulas::unit_grid;
pub use table::{display, Cell, Table};
pub use threshold::{
    bisect, crossings, find_threshold, Cmp, Predicate, ThresholdResult, DEFAULT_TOL, PREDICATE_MARGIN,
};

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("no sign change in [{lo}, {hi}] (values {value_lo:?} and {value_hi:?})")]
    NoSignChange { lo: f64, hi: f64, value_lo: Option<f64>, value_hi: Option<f64> },
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl SweepError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        SweepError::Io { path: path.to_path_buf(), source }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub families: Vec<FamilySelector>,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub metrics: Vec<Metric>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            families: FamilySelector::all(),
            start: 0.0,
            stop: 1.0,
            step: 0.001,
            metrics: Metric::ALL.to_vec(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        let bad = |m: String| Err(SweepError::InvalidConfig(m));
        if !(0.0 <= self.start && self.start < self.stop && self.stop <= 1.0) {
            return bad(format!("need 0 <= start < stop <= 1, got start {} stop {}", self.start, self.stop));
        }
        if !(self.step > 0.0) {
            return bad(format!("step must be positive, got {}", self.step));
        }
        if self.families.is_empty() {
            return bad("no families selected".into());
        }
        if self.metrics.is_empty() {
            return bad("no metrics selected".into());
        }
        Ok(())
    }

    /// `start, start + step, ...` up to `stop`; `stop` itself is included
    /// when it lies on the grid to within rounding.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| (self.start + i as f64 * self.step).min(self.stop)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub selector: FamilySelector,
    pub metrics: Metrics,
    pub report: MetricsReport,
    pub closed_forms: Vec<ClosedFormReport>,
}

fn row(sel: FamilySelector, x: f64) -> Result<SweepRow, SweepError> {
    let fam = sel.at(x)?;
    let rho = fam.materialize()?;
    let m = Metrics::compute(&rho)?;
    Ok(SweepRow {
        selector: sel,
        report: MetricsReport::new(&StateLabel::from(&fam), &m),
        closed_forms: closed_forms_with(&fam, &rho, &m),
        metrics: m,
    })
}

/// One row per (family, grid point), ordered by family then parameter
/// regardless of how the work is scheduled.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, SweepError> {
    cfg.validate()?;
    let grid = cfg.grid();
    let jobs: Vec<(FamilySelector, f64)> =
        cfg.families.iter().flat_map(|&s| grid.iter().map(move |&x| (s, x))).collect();
    jobs.into_par_iter().map(|(s, x)| row(s, x)).collect()
}

fn metric_cell(r: &MetricsReport, m: Metric) -> f64 {
    match m {
        Metric::Concurrence => r.concurrence,
        Metric::Fidelity => r.fidelity,
        Metric::NValue => r.n_value,
        Metric::LinearEntropy => r.linear_entropy,
        Metric::MValue => r.m_value,
    }
}

fn quantity_selected(q: Quantity, selected: &[Metric]) -> bool {
    match q {
        Quantity::Metric(m) => selected.contains(&m),
        Quantity::TtEigenvalue(_) => selected.contains(&Metric::MValue),
    }
}

/// Long-format table: the metrics of each row are repeated next to each of
/// its closed-form comparisons; rows without any keep those columns empty.
pub fn sweep_table(rows: &[SweepRow], selected: &[Metric]) -> Table {
    report_table(rows.iter().map(|r| (&r.report, r.closed_forms.as_slice())), selected)
}

/// [`sweep_table`] over bare reports, e.g. for states that are not family members.
pub fn report_table<'a>(
    rows: impl IntoIterator<Item = (&'a MetricsReport, &'a [ClosedFormReport])>,
    selected: &[Metric],
) -> Table {
    let mut headers: Vec<String> = vec!["family".into(), "bell".into(), "param".into()];
    for m in selected {
        headers.push(m.label().into());
        headers.push(format!("{}_display", m.label()));
    }
    headers.extend(
        ["isX", "useful", "violates", "metric", "source_eq", "closed_value", "generic_value", "delta", "status"]
            .map(String::from),
    );
    let mut t = Table::new(headers);
    for (rep, closed_forms) in rows {
        let mut base: Vec<Cell> =
            vec![rep.family.as_str().into(), rep.bell.map(|b| b.label()).into(), rep.param.into()];
        for &m in selected {
            let v = metric_cell(rep, m);
            base.push(v.into());
            base.push(display(v, 4));
        }
        base.extend([rep.is_x.into(), rep.useful.into(), rep.violates.into()]);
        let forms: Vec<&ClosedFormReport> =
            closed_forms.iter().filter(|c| quantity_selected(c.quantity, selected)).collect();
        if forms.is_empty() {
            let mut cells = base.clone();
            cells.extend(std::iter::repeat_n(Cell::Empty, 6));
            t.push(cells);
        }
        for c in forms {
            let mut cells = base.clone();
            cells.extend([
                c.quantity.to_string().into(),
                c.source.into(),
                c.value.into(),
                c.generic_value.into(),
                c.abs_delta.into(),
                c.status.to_string().into(),
            ]);
            t.push(cells);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_stop() {
        let cfg = SweepConfig { start: 0.0, stop: 1.0, step: 0.1, ..Default::default() };
        let g = cfg.grid();
        assert_eq!(g.len(), 11);
        assert_eq!(*g.last().unwrap(), 1.0);
        let cfg = SweepConfig { start: 0.5, stop: 1.0, step: 0.001, ..Default::default() };
        assert_eq!(cfg.grid().len(), 501);
    }

    #[test]
    fn config_validation() {
        let bad = SweepConfig { start: 0.5, stop: 0.5, ..Default::default() };
        assert!(matches!(bad.validate(), Err(SweepError::InvalidConfig(_))));
        let bad = SweepConfig { step: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SweepConfig { stop: 1.5, ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(SweepConfig::default().validate().is_ok());
    }

    #[test]
    fn rows_are_ordered() {
        let cfg = SweepConfig {
            families: vec!["tau1:phi-".parse().unwrap(), "rho1".parse().unwrap()],
            step: 0.25,
            ..Default::default()
        };
        let rows = sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].report.family, "tau1");
        assert_eq!(rows[5].report.family, "rho1");
        let ps: Vec<f64> = rows[5..].iter().map(|r| r.report.param.unwrap()).collect();
        assert_eq!(ps, [0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn table_columns_follow_selection() {
        let cfg = SweepConfig {
            families: vec!["rhog".parse().unwrap()],
            step: 0.5,
            metrics: vec![Metric::Fidelity],
            ..Default::default()
        };
        let rows = sweep(&cfg).unwrap();
        let t = sweep_table(&rows, &cfg.metrics);
        assert!(t.column("f").is_some() && t.column("C").is_none());
        let src = t.column("source_eq").unwrap();
        let sources: Vec<_> = t.rows.iter().map(|r| r[src].clone()).collect();
        assert!(sources.contains(&Cell::Text("ghz-mixture fidelity".into())));
        assert!(sources.contains(&Cell::Text("x-state fidelity".into())));
        assert!(!sources.contains(&Cell::Text("x-state concurrence".into())));
    }
}
