//! The decorated singular link of a singular concordance of 2-spheres.
//!
//! A [`SingularLinkState`] records the combinatorial shadow of the double
//! point set of an immersion `S^2 x I -> X x I`: type I circles come in dual
//! pairs (one active, one inactive) carrying a group element, type II circles
//! carry an element of order at most two, linking is tracked mod 2 together
//! with a clasp multiset realizing it, and pairs of type II circles with equal
//! labels carry a relative twist bit.
//!
//! [`validate`] checks the structural invariants, including the dual-pair
//! parity constraint that holds in s-characteristic contexts with a dual
//! sphere.

mod context;
#[cfg(feature = "gen")]
pub mod gen;
mod state;
mod validate;

pub use context::{AmbientContext, ContextSpec, DualSphere};
pub use state::{CircleId, CircleKind, Role, SingularCircle, SingularLinkState};
pub use validate::{type_ii_classes, validate, Invariant, ValidationReport, Violation};

use grouprep::{Element, GroupError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("unknown circle {0}")]
    UnknownCircle(CircleId),
    #[error("circle {0} is type II")]
    NotTypeI(CircleId),
    #[error("circle {0} has no label")]
    MissingLabel(CircleId),
    #[error("{0} is not an element of order two")]
    NotTwoTorsion(Element),
    #[error(transparent)]
    Group(#[from] GroupError),
}
