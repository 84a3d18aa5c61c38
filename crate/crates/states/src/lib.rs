//! Pure states and parameterised two-qubit mixtures.
//!
//! Kets are big-endian (`|q0 q1 q2>`, qubit 0 leftmost). The mixed families
//! are built from first principles: project a three-qubit pure state, trace
//! one qubit out, then mix with a Bell projector,
//!
//! ```text
//!   family(x) = x * Tr_k |T><T| + (1 - x) |B><B|
//! ```
//!
//! | tag            | T     | traced k | B          |
//! |----------------|-------|----------|------------|
//! | rho1, rho2     | W     | 2        | phi+-, psi+- |
//! | rho3, rho4     | Wbar  | 2        | phi+-, psi+- |
//! | rho5, rho6     | WWbar | 2        | phi+-, psi+- |
//! | tau1, tau2     | Star  | 0        | phi+-, psi+- |
//! | rhog           | GHZ   | 2        | any (phi+ default) |
//!
//! `werner` is `(1-m)/3 I + (4m-1)/3 |psi-><psi-|`; `memsw` and `memswbar`
//! are the fixed reductions of W and Wbar.

mod family;
mod pure;

pub use family::{is_x_state, materialize, FamilySelector, FamilyTag, Param, StateFamily};
pub use pure::{bell_state, reduced_pair, tripartite_state, BellKind, ReducedPair, Tripartite};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("unknown family '{0}' (expected one of rho1..rho6, tau1, tau2, rhog, werner, memsw, memswbar)")]
    UnknownFamily(String),
    #[error("unknown Bell state '{0}' (expected phi+, phi-, psi+ or psi-)")]
    UnknownBell(String),
    #[error("Bell state '{bell}' does not apply to family '{family}'")]
    BellNotApplicable { family: String, bell: String },
    #[error("parameter {0} is outside [0, 1]")]
    ParamOutOfRange(f64),
    #[error(transparent)]
    Linalg(#[from] linalg_core::LinalgError),
    #[error(transparent)]
    Invalid(#[from] linalg_core::ValidationError),
}
