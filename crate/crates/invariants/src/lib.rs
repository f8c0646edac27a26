//! Invariants read off a singular link under an ambient context.
//!
//! * [`mu`]: parity of type II circles per nontrivial involution label.
//! * [`fq`]: `mu` modulo the declared subspace `mu(pi_3 X)`.
//! * [`delta`]: the linking-weighted sum of labels in `H_1(X; Z/2)`, with
//!   type II contributions through twist bits.
//! * [`km`]: `delta` modulo the declared `Delta(Self(S_0))`.
//! * [`concordance_bound`]: the size bound on concordance classes.

use grouprep::{Coset, Element, F2Vec, GroupError};
use linkstate::{
    type_ii_classes, AmbientContext, CircleId, CircleKind, DualSphere, Role, SingularLinkState,
    StateError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("type II circle {0} has label {1}, which is neither trivial nor an involution")]
    NotTwoTorsion(CircleId, Element),
    #[error("no twist entry for type II circles {0} and {1}")]
    MissingTw(CircleId, CircleId),
    #[error("fq needs a based context or a dual sphere")]
    Unbased,
    #[error("the context has no dual sphere")]
    NoDualSphere,
}

/// Parity vector of nontrivial type II labels, indexed like `group.two_torsion()`.
pub fn mu(state: &SingularLinkState, ctx: &AmbientContext) -> Result<F2Vec, InvariantError> {
    let g = &ctx.group;
    let mut v = F2Vec::zeros(g.two_torsion().len());
    for c in state.circles().filter(|c| c.is_type_ii()) {
        let l = state.label(g, c.id)?;
        if g.is_identity(&l) {
            continue;
        }
        let i = g
            .two_torsion_index(&l)
            .ok_or_else(|| InvariantError::NotTwoTorsion(c.id, l.clone()))?;
        v.flip(i);
    }
    Ok(v)
}

pub fn fq(state: &SingularLinkState, ctx: &AmbientContext) -> Result<Coset, InvariantError> {
    if !ctx.based && ctx.dual_sphere == DualSphere::None {
        return Err(InvariantError::Unbased);
    }
    Ok(ctx.mu_pi3.quotient_reduce(&mu(state, ctx)?)?)
}

/// `sum lk(A, L - A) eps(a)` over active circles plus `sum tw(B, C) eps(g)`
/// over unordered pairs of type II circles sharing the label `g`.
pub fn delta(state: &SingularLinkState, ctx: &AmbientContext) -> Result<F2Vec, InvariantError> {
    let g = &ctx.group;
    let mut acc = F2Vec::zeros(g.h1_dim());
    for c in state.circles() {
        if let CircleKind::TypeI { role: Role::Active, .. } = c.kind {
            if state.lk_total(c.id)? {
                acc.add_assign(&g.eps(&state.label(g, c.id)?)?);
            }
        }
    }
    for (label, members) in type_ii_classes(state) {
        let e = g.eps(&label)?;
        for (i, &b) in members.iter().enumerate() {
            for &c in &members[i + 1..] {
                if state.tw(b, c).ok_or(InvariantError::MissingTw(b, c))? {
                    acc.add_assign(&e);
                }
            }
        }
    }
    Ok(acc)
}

pub fn km(state: &SingularLinkState, ctx: &AmbientContext) -> Result<Coset, InvariantError> {
    Ok(ctx.delta_self.quotient_reduce(&delta(state, ctx)?)?)
}

/// `delta` relative to a fixed homology class, which is the state's tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeClass {
    pub delta: F2Vec,
    pub homology_tag: String,
}

pub fn km_rel_alpha(
    state: &SingularLinkState,
    ctx: &AmbientContext,
) -> Result<RelativeClass, InvariantError> {
    Ok(RelativeClass {
        delta: delta(state, ctx)?,
        homology_tag: state.homology_tag().to_string(),
    })
}

/// Upgrades or corrects the dual sphere: framed without the s-characteristic
/// condition, unframed with it. The second value is a warning when a framed
/// dual was claimed in an s-characteristic context.
pub fn normalize_dual(ctx: &AmbientContext) -> Result<(AmbientContext, Option<String>), InvariantError> {
    match (ctx.dual_sphere, ctx.s_characteristic) {
        (DualSphere::None, _) => Err(InvariantError::NoDualSphere),
        (_, false) => Ok((ctx.with_dual(DualSphere::Framed), None)),
        (DualSphere::Framed, true) => Ok((
            ctx.with_dual(DualSphere::Unframed),
            Some("an s-characteristic immersion admits no framed dual sphere; treating the dual as unframed".into()),
        )),
        (DualSphere::Unframed, true) => Ok((ctx.clone(), None)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bound {
    Value { value: u128 },
    NotApplicable { reason: String },
}

/// Upper bound on the number of concordance classes of spheres sharing a
/// dual and a homology class: `2^|T_X|`, times `|H_1(X; Z/2)|` in the
/// s-characteristic case. The latter requires `mu(pi_3 X) = 0`, which is
/// read as the declared `mu_pi3` subspace being zero.
pub fn concordance_bound(ctx: &AmbientContext) -> Bound {
    if ctx.dual_sphere == DualSphere::None {
        return Bound::NotApplicable {
            reason: "no dual sphere".into(),
        };
    }
    let t = ctx.group.two_torsion().len() as u32;
    let mut value = 1u128.checked_shl(t);
    if ctx.s_characteristic {
        if ctx.mu_pi3.rank() != 0 {
            return Bound::NotApplicable {
                reason: "s-characteristic with mu(pi_3 X) not declared zero".into(),
            };
        }
        value = value.and_then(|v| v.checked_mul(1u128 << ctx.group.h1_dim()));
    }
    match value {
        Some(value) => Bound::Value { value },
        None => Bound::NotApplicable {
            reason: "bound exceeds 2^128".into(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub mu: F2Vec,
    pub fq_class: Option<Coset>,
    pub delta: F2Vec,
    pub km_class: Coset,
    pub km_rel_alpha: RelativeClass,
    pub notes: Vec<String>,
}

/// All invariants at once, with applicability notes.
pub fn report(state: &SingularLinkState, ctx: &AmbientContext) -> Result<InvariantReport, InvariantError> {
    let mut notes = Vec::new();
    let mu = mu(state, ctx)?;
    let fq_class = match fq(state, ctx) {
        Ok(c) => Some(c),
        Err(InvariantError::Unbased) => {
            notes.push("fq undefined: the context is neither based nor equipped with a dual sphere".into());
            None
        }
        Err(e) => return Err(e),
    };
    if !mu.is_zero() {
        notes.push("mu is nonzero, so delta and km are read outside the hypotheses that make them invariants".into());
    }
    if !ctx.s_characteristic || ctx.dual_sphere == DualSphere::None {
        notes.push("delta is well defined only for s-characteristic contexts with a dual sphere".into());
    }
    if ctx.mu_pi3.rank() == 0 && ctx.delta_self.rank() == 0 {
        notes.push(
            "mu(pi_3 X) and Delta(Self) are declared zero, as when pi_3 X = 0 and H_3(X; Z[pi_1 X]) = 0"
                .into(),
        );
    }
    let delta = delta(state, ctx)?;
    Ok(InvariantReport {
        km_class: ctx.delta_self.quotient_reduce(&delta)?,
        km_rel_alpha: RelativeClass {
            delta: delta.clone(),
            homology_tag: state.homology_tag().to_string(),
        },
        mu,
        fq_class,
        delta,
        notes,
    })
}
