//! Group-theoretic substrate for the singular-link calculus.
//!
//! A [`GroupModel`] stands in for the fundamental group of the ambient
//! 4-manifold. It is either an explicit multiplication table (order at most
//! 255) or a finitely generated abelian group `Z^r + sum Z/n_i`. From it we
//! derive the set of order-two elements `T_X`, the mod-2 abelianization
//! `eps: G -> H_1(X; Z/2)`, and balanced words for elements of `ker eps`.
//!
//! [`F2Vec`] and [`F2Subspace`] provide the linear algebra used for the
//! quotients `F2 T_X / mu(pi_3 X)` and `H_1(X; Z/2) / Delta(Self)`.

mod element;
mod f2;
mod group;
mod intlin;
pub mod library;

pub use element::{Element, Letter, Word};
pub use f2::{Coset, F2Subspace, F2Vec};
pub use group::{GroupModel, GroupSpec, MAX_FINITE_ORDER, MAX_GENERATORS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("table has no two-sided identity at index 0")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("generating set is empty")]
    NoGenerators,
    #[error("generators do not generate the group")]
    DoesNotGenerate,
    #[error("torsion coefficient {0} is smaller than 2")]
    BadTorsion(u64),
    #[error("{0} is not an element of the group")]
    NotAnElement(Element),
    #[error("group of size {0} exceeds the supported bound")]
    TooLarge(usize),
    #[error("{0} generators exceed the balanced-word search bound")]
    TooManyGenerators(usize),
    #[error("{0} is not in the kernel of the mod-2 abelianization")]
    NotInKernel(Element),
    #[error("balanced-word search exhausted its state space")]
    SearchExhausted,
    #[error("F2 dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
