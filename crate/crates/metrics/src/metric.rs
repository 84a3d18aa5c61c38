use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Metrics;

/// A scalar metric selectable by its short name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "C")]
    Concurrence,
    #[serde(rename = "f")]
    Fidelity,
    #[serde(rename = "N")]
    NValue,
    #[serde(rename = "L")]
    LinearEntropy,
    #[serde(rename = "M")]
    MValue,
}

impl Metric {
    pub const ALL: [Metric; 5] =
        [Metric::Concurrence, Metric::Fidelity, Metric::NValue, Metric::LinearEntropy, Metric::MValue];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Concurrence => "C",
            Metric::Fidelity => "f",
            Metric::NValue => "N",
            Metric::LinearEntropy => "L",
            Metric::MValue => "M",
        }
    }

    pub fn of(self, m: &Metrics) -> f64 {
        match self {
            Metric::Concurrence => m.concurrence,
            Metric::Fidelity => m.fidelity,
            Metric::NValue => m.n_value,
            Metric::LinearEntropy => m.linear_entropy,
            Metric::MValue => m.m_value,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown metric '{0}' (expected C, f, N, L or M)")]
pub struct UnknownMetric(pub String);

impl FromStr for Metric {
    type Err = UnknownMetric;
    fn from_str(s: &str) -> Result<Self, UnknownMetric> {
        // C/N/L/M are unambiguous in either case; f is the only lower-case label
        Metric::ALL.into_iter().find(|m| m.label().eq_ignore_ascii_case(s)).ok_or_else(|| UnknownMetric(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for m in Metric::ALL {
            assert_eq!(m.label().parse::<Metric>().unwrap(), m);
        }
        assert_eq!("F".parse::<Metric>().unwrap(), Metric::Fidelity);
        assert!("X".parse::<Metric>().is_err());
    }
}
