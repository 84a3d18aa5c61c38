use linalg_core::DensityMatrix;
use serde::{Deserialize, Serialize};
use states::{is_x_state, BellKind, StateFamily};

use crate::{
    concurrence, correlation_matrix, fidelity_from_n, linear_entropy, ppt_min_eigenvalue, MetricsError, X_STATE_TOL,
};

/// Raw metric values, unclamped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub concurrence: f64,
    pub fidelity: f64,
    pub n_value: f64,
    pub linear_entropy: f64,
    pub m_value: f64,
    pub tt_eigenvalues: [f64; 3],
    pub ppt_min_eigenvalue: f64,
    pub is_x: bool,
}

impl Metrics {
    pub fn compute(rho: &DensityMatrix) -> Result<Self, MetricsError> {
        let t = correlation_matrix(rho)?;
        let sv = t.singular_values()?;
        let u = sv.map(|s| s * s);
        let n_value = sv.iter().sum();
        Ok(Metrics {
            concurrence: concurrence(rho)?,
            fidelity: fidelity_from_n(n_value),
            n_value,
            linear_entropy: linear_entropy(rho)?,
            m_value: u[0] + u[1],
            tt_eigenvalues: u,
            ppt_min_eigenvalue: ppt_min_eigenvalue(rho)?,
            is_x: is_x_state(rho.matrix(), X_STATE_TOL),
        })
    }

    /// `N > 1`
    pub fn useful_for_teleport(&self) -> bool {
        self.n_value > 1.0
    }

    /// `M > 1`
    pub fn violates_bell(&self) -> bool {
        self.m_value > 1.0
    }
}

/// Where a state came from: a family member or an ad hoc matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateLabel {
    pub family: String,
    pub bell: Option<BellKind>,
    pub param: Option<f64>,
}

impl StateLabel {
    pub fn custom(name: impl Into<String>) -> Self {
        StateLabel { family: name.into(), bell: None, param: None }
    }
}

impl From<&StateFamily> for StateLabel {
    fn from(f: &StateFamily) -> Self {
        StateLabel { family: f.family.label().to_string(), bell: f.bell, param: Some(f.param.get()) }
    }
}

/// One output row, metrics clamped to their mathematical ranges.
///
/// Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub family: String,
    pub bell: Option<BellKind>,
    pub param: Option<f64>,
    #[serde(rename = "C")]
    pub concurrence: f64,
    #[serde(rename = "f")]
    pub fidelity: f64,
    #[serde(rename = "N")]
    pub n_value: f64,
    #[serde(rename = "L")]
    pub linear_entropy: f64,
    #[serde(rename = "M")]
    pub m_value: f64,
    #[serde(rename = "isX")]
    pub is_x: bool,
    pub useful: bool,
    pub violates: bool,
}

impl MetricsReport {
    pub fn new(label: &StateLabel, m: &Metrics) -> Self {
        MetricsReport {
            family: label.family.clone(),
            bell: label.bell,
            param: label.param,
            concurrence: m.concurrence.clamp(0.0, 1.0),
            fidelity: m.fidelity.clamp(0.0, 1.0),
            n_value: m.n_value.clamp(0.0, 3.0),
            linear_entropy: m.linear_entropy.clamp(0.0, 1.0),
            m_value: m.m_value.clamp(0.0, 2.0),
            is_x: m.is_x,
            useful: m.useful_for_teleport(),
            violates: m.violates_bell(),
        }
    }

    pub fn for_family(fam: &StateFamily) -> Result<Self, MetricsError> {
        let rho = fam.materialize()?;
        Ok(MetricsReport::new(&fam.into(), &Metrics::compute(&rho)?))
    }

    pub fn label(&self) -> StateLabel {
        StateLabel { family: self.family.clone(), bell: self.bell, param: self.param }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests::fam;
    use states::FamilySelector;

    #[test]
    fn werner_quarter_is_maximally_mixed() {
        let f = "werner".parse::<FamilySelector>().unwrap().at(0.25).unwrap();
        let r = MetricsReport::for_family(&f).unwrap();
        assert_eq!(r.concurrence, 0.0);
        assert!((r.fidelity - 0.5).abs() < 1e-15);
        assert!((r.linear_entropy - 1.0).abs() < 1e-15);
        assert!(r.is_x && !r.useful && !r.violates);
    }

    #[test]
    fn report_clamps_but_metrics_do_not() {
        let mut m = Metrics::compute(&fam("rho1:phi+", 0.0)).unwrap();
        m.fidelity = 1.0 + 1e-15;
        m.concurrence = -1e-16;
        let r = MetricsReport::new(&StateLabel::custom("x"), &m);
        assert_eq!(r.fidelity, 1.0);
        assert_eq!(r.concurrence, 0.0);
        assert_eq!(m.fidelity, 1.0 + 1e-15);
    }

    #[test]
    fn flags_follow_thresholds() {
        let r = MetricsReport::for_family(&"rho1:phi+".parse::<FamilySelector>().unwrap().at(0.5).unwrap()).unwrap();
        assert!(r.useful);
        assert!(!r.violates);
        assert!(r.is_x);
        assert_eq!(r.bell, Some(BellKind::PhiPlus));
        assert_eq!(r.param, Some(0.5));
    }
}
