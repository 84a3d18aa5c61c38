use std::fmt;
use std::str::FromStr;

use linalg_core::{validate_density, ComplexMatrix, DensityMatrix, DEFAULT_TOLERANCE};
use serde::{Deserialize, Serialize};

use crate::pure::{reduced_pair, BellKind, Tripartite};
use crate::StateError;

/// Family tags addressable by name (`rho1`, ..., `memswbar`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    Rho1,
    Rho2,
    Rho3,
    Rho4,
    Rho5,
    Rho6,
    Tau1,
    Tau2,
    RhoG,
    Werner,
    MemsW,
    MemsWbar,
}

const PHI: &[BellKind] = &[BellKind::PhiPlus, BellKind::PhiMinus];
const PSI: &[BellKind] = &[BellKind::PsiPlus, BellKind::PsiMinus];

impl FamilyTag {
    pub const ALL: [FamilyTag; 12] = [
        FamilyTag::Rho1,
        FamilyTag::Rho2,
        FamilyTag::Rho3,
        FamilyTag::Rho4,
        FamilyTag::Rho5,
        FamilyTag::Rho6,
        FamilyTag::Tau1,
        FamilyTag::Tau2,
        FamilyTag::RhoG,
        FamilyTag::Werner,
        FamilyTag::MemsW,
        FamilyTag::MemsWbar,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FamilyTag::Rho1 => "rho1",
            FamilyTag::Rho2 => "rho2",
            FamilyTag::Rho3 => "rho3",
            FamilyTag::Rho4 => "rho4",
            FamilyTag::Rho5 => "rho5",
            FamilyTag::Rho6 => "rho6",
            FamilyTag::Tau1 => "tau1",
            FamilyTag::Tau2 => "tau2",
            FamilyTag::RhoG => "rhog",
            FamilyTag::Werner => "werner",
            FamilyTag::MemsW => "memsw",
            FamilyTag::MemsWbar => "memswbar",
        }
    }

    /// Bell states this family may be mixed with; empty when no Bell state enters.
    pub fn bells(self) -> &'static [BellKind] {
        match self {
            FamilyTag::Rho1 | FamilyTag::Rho3 | FamilyTag::Rho5 | FamilyTag::Tau1 => PHI,
            FamilyTag::Rho2 | FamilyTag::Rho4 | FamilyTag::Rho6 | FamilyTag::Tau2 => PSI,
            FamilyTag::RhoG => &BellKind::ALL,
            FamilyTag::Werner | FamilyTag::MemsW | FamilyTag::MemsWbar => &[],
        }
    }

    pub fn uses_bell(self) -> bool {
        !self.bells().is_empty()
    }

    /// phi+ where allowed, otherwise the first allowed flavour.
    pub fn default_bell(self) -> Option<BellKind> {
        let bells = self.bells();
        if bells.contains(&BellKind::PhiPlus) {
            Some(BellKind::PhiPlus)
        } else {
            bells.first().copied()
        }
    }

    /// Tripartite source and traced qubit for the mixing families.
    pub fn source(self) -> Option<(Tripartite, usize)> {
        match self {
            FamilyTag::Rho1 | FamilyTag::Rho2 | FamilyTag::MemsW => Some((Tripartite::W, 2)),
            FamilyTag::Rho3 | FamilyTag::Rho4 | FamilyTag::MemsWbar => Some((Tripartite::Wbar, 2)),
            FamilyTag::Rho5 | FamilyTag::Rho6 => Some((Tripartite::WWbar, 2)),
            FamilyTag::Tau1 | FamilyTag::Tau2 => Some((Tripartite::Star, 0)),
            FamilyTag::RhoG => Some((Tripartite::Ghz, 2)),
            FamilyTag::Werner => None,
        }
    }

    /// True for families that never depend on the parameter.
    pub fn is_fixed(self) -> bool {
        matches!(self, FamilyTag::MemsW | FamilyTag::MemsWbar)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FamilyTag {
    type Err = StateError;
    fn from_str(s: &str) -> Result<Self, StateError> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| StateError::UnknownFamily(s.to_string()))
    }
}

/// Mixing parameter in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Param(f64);

impl Param {
    pub fn new(x: f64) -> Result<Self, StateError> {
        if (0.0..=1.0).contains(&x) {
            Ok(Param(x))
        } else {
            Err(StateError::ParamOutOfRange(x))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Param {
    type Error = StateError;
    fn try_from(x: f64) -> Result<Self, StateError> {
        Param::new(x)
    }
}

impl From<Param> for f64 {
    fn from(p: Param) -> f64 {
        p.0
    }
}

/// A family tag plus resolved Bell flavour, parsed from `<family>[:<bell>]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySelector {
    pub family: FamilyTag,
    pub bell: Option<BellKind>,
}

impl FamilySelector {
    pub fn new(family: FamilyTag, bell: Option<BellKind>) -> Result<Self, StateError> {
        if !family.uses_bell() {
            // the flavour is irrelevant for these families and dropped
            return Ok(FamilySelector { family, bell: None });
        }
        match bell {
            None => Ok(FamilySelector { family, bell: family.default_bell() }),
            Some(b) if family.bells().contains(&b) => Ok(FamilySelector { family, bell: Some(b) }),
            Some(b) => Err(StateError::BellNotApplicable { family: family.label().into(), bell: b.label().into() }),
        }
    }

    pub fn at(self, param: f64) -> Result<StateFamily, StateError> {
        Ok(StateFamily { family: self.family, bell: self.bell, param: Param::new(param)? })
    }

    /// Every valid (family, bell) pair.
    pub fn all() -> Vec<FamilySelector> {
        FamilyTag::ALL
            .into_iter()
            .flat_map(|f| {
                let bells: Vec<Option<BellKind>> =
                    if f.uses_bell() { f.bells().iter().copied().map(Some).collect() } else { vec![None] };
                bells.into_iter().map(move |bell| FamilySelector { family: f, bell })
            })
            .collect()
    }
}

impl fmt::Display for FamilySelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bell {
            Some(b) => write!(f, "{}:{}", self.family, b),
            None => write!(f, "{}", self.family),
        }
    }
}

impl FromStr for FamilySelector {
    type Err = StateError;
    fn from_str(s: &str) -> Result<Self, StateError> {
        let (fam, bell) = match s.split_once(':') {
            Some((f, b)) => (f, Some(b.parse::<BellKind>()?)),
            None => (s, None),
        };
        FamilySelector::new(fam.parse()?, bell)
    }
}

/// One member of a parameterised family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateFamily {
    pub family: FamilyTag,
    pub bell: Option<BellKind>,
    pub param: Param,
}

impl StateFamily {
    pub fn new(family: FamilyTag, bell: Option<BellKind>, param: f64) -> Result<Self, StateError> {
        FamilySelector::new(family, bell)?.at(param)
    }

    pub fn selector(&self) -> FamilySelector {
        FamilySelector { family: self.family, bell: self.bell }
    }

    pub fn materialize(&self) -> Result<DensityMatrix, StateError> {
        materialize(self)
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.selector(), self.param.get())
    }
}

fn mix(x: f64, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &a.scale(x) + &b.scale(1.0 - x)
}

fn werner(m: f64) -> ComplexMatrix {
    let singlet = BellKind::PsiMinus.state().projector();
    &ComplexMatrix::identity(4).scale((1.0 - m) / 3.0) + &singlet.scale((4.0 * m - 1.0) / 3.0)
}

/// Build the density matrix of a family member and validate it.
pub fn materialize(fam: &StateFamily) -> Result<DensityMatrix, StateError> {
    let x = fam.param.get();
    let m = match (fam.family.source(), fam.bell) {
        (None, _) => werner(x),
        (Some((kind, traced)), _) if fam.family.is_fixed() => reduced_pair(kind, traced)?.rho.into_matrix(),
        (Some((kind, traced)), Some(bell)) => {
            let reduced = reduced_pair(kind, traced)?;
            debug_assert!(!reduced.separable_by_construction);
            mix(x, reduced.rho.matrix(), &bell.state().projector())
        }
        (Some(_), None) => unreachable!("selector always resolves a Bell state for mixing families"),
    };
    Ok(validate_density(m, DEFAULT_TOLERANCE)?)
}

/// True iff every entry off the main and anti-diagonal has modulus <= tol.
pub fn is_x_state(rho: &ComplexMatrix, tol: f64) -> bool {
    let n = rho.dim();
    n == 4 && (0..n).all(|i| (0..n).all(|j| i == j || i + j == n - 1 || rho[(i, j)].norm() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg_core::Complex64;

    fn fam(s: &str, x: f64) -> DensityMatrix {
        s.parse::<FamilySelector>().unwrap().at(x).unwrap().materialize().unwrap()
    }

    #[test]
    fn selector_parsing_and_defaults() {
        let s: FamilySelector = "rho1:phi-".parse().unwrap();
        assert_eq!((s.family, s.bell), (FamilyTag::Rho1, Some(BellKind::PhiMinus)));
        assert_eq!("rho1".parse::<FamilySelector>().unwrap().bell, Some(BellKind::PhiPlus));
        assert_eq!("rho2".parse::<FamilySelector>().unwrap().bell, Some(BellKind::PsiPlus));
        assert_eq!("werner:psi-".parse::<FamilySelector>().unwrap().bell, None);
        assert!(matches!("rho2:phi+".parse::<FamilySelector>(), Err(StateError::BellNotApplicable { .. })));
        assert!(matches!("rho9".parse::<FamilySelector>(), Err(StateError::UnknownFamily(s)) if s == "rho9"));
        assert!(matches!("rho1:phi".parse::<FamilySelector>(), Err(StateError::UnknownBell(_))));
        assert_eq!("tau2:psi-".parse::<FamilySelector>().unwrap().to_string(), "tau2:psi-");
    }

    #[test]
    fn param_range_enforced() {
        assert!(matches!(StateFamily::new(FamilyTag::Werner, None, 1.5), Err(StateError::ParamOutOfRange(_))));
        assert!(Param::new(-0.0).is_ok());
        assert!(Param::new(f64::NAN).is_err());
    }

    #[test]
    fn selector_catalogue() {
        let all = FamilySelector::all();
        assert_eq!(all.len(), 8 * 2 + 4 + 3);
    }

    #[test]
    fn rho2_psi_plus_at_one_is_w_reduction() {
        let want = reduced_pair(Tripartite::W, 2).unwrap().rho;
        assert!(fam("rho2:psi+", 1.0).matrix().max_abs_diff(want.matrix()) <= 1e-15);
        assert!(fam("memsw", 0.3).matrix().max_abs_diff(want.matrix()) == 0.0);
    }

    #[test]
    fn zero_weight_gives_bell_projector() {
        let want = BellKind::PhiPlus.state().projector();
        assert!(fam("rho1:phi+", 0.0).matrix().max_abs_diff(&want) <= 1e-15);
    }

    #[test]
    fn werner_quarter_is_maximally_mixed() {
        let w = fam("werner", 0.25);
        assert!(w.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) <= 1e-16);
    }

    #[test]
    fn werner_matches_explicit_matrix() {
        let m = 0.7;
        let a = (1.0 - m) / 3.0;
        let b = (2.0 * m + 1.0) / 6.0;
        let c = (1.0 - 4.0 * m) / 6.0;
        let want = ComplexMatrix::from_real_rows(&[
            &[a, 0.0, 0.0, 0.0],
            &[0.0, b, c, 0.0],
            &[0.0, c, b, 0.0],
            &[0.0, 0.0, 0.0, a],
        ])
        .unwrap();
        assert!(fam("werner", m).matrix().max_abs_diff(&want) <= 1e-15);
    }

    #[test]
    fn x_state_detection() {
        for m in [0.0, 0.3, 1.0] {
            assert!(is_x_state(fam("werner", m).matrix(), 1e-12));
        }
        assert!(!is_x_state(fam("rho5:phi+", 0.5).matrix(), 1e-12));
        assert!(is_x_state(&ComplexMatrix::identity(4).scale(0.25), 0.0));
        let mut m = ComplexMatrix::identity(4).scale(0.25);
        m[(0, 1)] = Complex64::new(0.0, 1e-9);
        assert!(!is_x_state(&m, 1e-12) && is_x_state(&m, 1e-8));
    }
}
