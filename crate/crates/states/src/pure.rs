use std::fmt;
use std::str::FromStr;

use linalg_core::{partial_trace, validate_density, DensityMatrix, PureState, DEFAULT_TOLERANCE};
use serde::{Deserialize, Serialize};

use crate::StateError;

/// The four Bell states. `Phi*` are `(|00> +- |11>)/sqrt2`, `Psi*` are
/// `(|01> +- |10>)/sqrt2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellKind {
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];

    pub fn label(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        }
    }

    pub fn state(self) -> PureState {
        let terms: [(f64, &str); 2] = match self {
            BellKind::PhiPlus => [(1.0, "00"), (1.0, "11")],
            BellKind::PhiMinus => [(1.0, "00"), (-1.0, "11")],
            BellKind::PsiPlus => [(1.0, "01"), (1.0, "10")],
            BellKind::PsiMinus => [(1.0, "01"), (-1.0, "10")],
        };
        PureState::superposition(&terms).expect("Bell kets are nonzero")
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BellKind {
    type Err = StateError;
    fn from_str(s: &str) -> Result<Self, StateError> {
        BellKind::ALL
            .into_iter()
            .find(|b| b.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| StateError::UnknownBell(s.to_string()))
    }
}

pub fn bell_state(kind: BellKind) -> PureState {
    kind.state()
}

/// Three-qubit pure states used as mixing ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tripartite {
    W,
    Wbar,
    WWbar,
    /// `(|000> + |100> + |101> + |111>)/2`; qubit 2 is the central one.
    Star,
    Ghz,
}

impl Tripartite {
    pub const ALL: [Tripartite; 5] =
        [Tripartite::W, Tripartite::Wbar, Tripartite::WWbar, Tripartite::Star, Tripartite::Ghz];

    /// Index of the qubit whose removal leaves a separable pair.
    pub fn central_qubit(self) -> Option<usize> {
        matches!(self, Tripartite::Star).then_some(2)
    }
}

pub fn tripartite_state(kind: Tripartite) -> PureState {
    let w = ["001", "010", "100"];
    let wbar = ["110", "101", "011"];
    match kind {
        Tripartite::W => PureState::uniform_superposition(&w),
        Tripartite::Wbar => PureState::uniform_superposition(&wbar),
        // W and Wbar have disjoint supports, so their sum normalises to the
        // uniform superposition of all six kets
        Tripartite::WWbar => PureState::uniform_superposition(&[w, wbar].concat()),
        Tripartite::Star => PureState::uniform_superposition(&["000", "100", "101", "111"]),
        Tripartite::Ghz => PureState::uniform_superposition(&["000", "111"]),
    }
    .expect("fixed kets are nonzero")
}

/// Two-qubit reduction of a tripartite state.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPair {
    pub rho: DensityMatrix,
    /// Set when the central Star qubit was traced out: the pair is separable
    /// and must not be used to build families.
    pub separable_by_construction: bool,
}

pub fn reduced_pair(kind: Tripartite, traced_qubit: usize) -> Result<ReducedPair, StateError> {
    let full = validate_density(tripartite_state(kind).projector(), DEFAULT_TOLERANCE)?;
    let rho = partial_trace(&full, traced_qubit)?;
    Ok(ReducedPair { rho, separable_by_construction: kind.central_qubit() == Some(traced_qubit) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg_core::{Complex64, ComplexMatrix};

    fn close(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
        a.max_abs_diff(b) <= 1e-15
    }

    #[test]
    fn bell_amplitudes() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = bell_state(BellKind::PhiPlus);
        assert!((phi.amplitudes()[0].re - s).abs() < 1e-16 && (phi.amplitudes()[3].re - s).abs() < 1e-16);
        let psi = bell_state(BellKind::PsiMinus);
        assert!((psi.amplitudes()[1].re - s).abs() < 1e-16 && (psi.amplitudes()[2].re + s).abs() < 1e-16);
        assert_eq!(bell_state(BellKind::PhiPlus).inner(&bell_state(BellKind::PsiPlus)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn bell_labels_roundtrip() {
        for b in BellKind::ALL {
            assert_eq!(b.label().parse::<BellKind>().unwrap(), b);
        }
        assert!(matches!("phi".parse::<BellKind>(), Err(StateError::UnknownBell(s)) if s == "phi"));
    }

    #[test]
    fn tripartite_kets() {
        let a = (1.0f64 / 3.0).sqrt();
        let w = tripartite_state(Tripartite::W);
        for idx in [1, 2, 4] {
            assert!((w.amplitudes()[idx].re - a).abs() < 1e-16);
        }
        let star = tripartite_state(Tripartite::Star);
        for idx in [0, 4, 5, 7] {
            assert_eq!(star.amplitudes()[idx].re, 0.5);
        }
        let wb = tripartite_state(Tripartite::Wbar);
        assert!(w.inner(&wb).norm() == 0.0);
        let ww = tripartite_state(Tripartite::WWbar);
        let s = (w.inner(&ww) + wb.inner(&ww)) * std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn w_and_wbar_reductions() {
        let psi = bell_state(BellKind::PsiPlus).projector().scale(2.0 / 3.0);
        let mut want_w = psi.clone();
        want_w[(0, 0)] += Complex64::new(1.0 / 3.0, 0.0);
        let mut want_wb = psi;
        want_wb[(3, 3)] += Complex64::new(1.0 / 3.0, 0.0);
        assert!(close(reduced_pair(Tripartite::W, 2).unwrap().rho.matrix(), &want_w));
        assert!(close(reduced_pair(Tripartite::Wbar, 2).unwrap().rho.matrix(), &want_wb));
    }

    #[test]
    fn star_central_qubit_flagged() {
        assert!(reduced_pair(Tripartite::Star, 2).unwrap().separable_by_construction);
        assert!(!reduced_pair(Tripartite::Star, 0).unwrap().separable_by_construction);
        assert!(!reduced_pair(Tripartite::W, 2).unwrap().separable_by_construction);
    }

    #[test]
    fn star_reduction_entries() {
        // (1/4)[[2,1,0,1],[1,1,0,1],[0,0,0,0],[1,1,0,1]]
        let want = ComplexMatrix::from_real_rows(&[
            &[0.5, 0.25, 0.0, 0.25],
            &[0.25, 0.25, 0.0, 0.25],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.25, 0.25, 0.0, 0.25],
        ])
        .unwrap();
        assert!(close(reduced_pair(Tripartite::Star, 0).unwrap().rho.matrix(), &want));
    }

    #[test]
    fn symmetric_states_reduce_identically() {
        for kind in [Tripartite::W, Tripartite::Wbar, Tripartite::WWbar] {
            let base = reduced_pair(kind, 2).unwrap().rho;
            for q in 0..2 {
                let other = reduced_pair(kind, q).unwrap().rho;
                assert!(base.matrix().max_abs_diff(other.matrix()) <= 1e-12, "{kind:?} qubit {q}");
            }
        }
    }
}
