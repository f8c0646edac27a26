//! The move calculus on decorated singular links.
//!
//! Every [`Move`] is a pure rewrite `SingularLinkState -> SingularLinkState`
//! guarded by preconditions. Primitive moves change the state directly;
//! composite moves (`move_meridian`, `shorten_cycle`, `merge_hopf_pairs`,
//! `add_hopf_pair`, `remove_trivial_hopf_pairs`) are nothing but sequences of
//! primitives, available through [`expand`].
//!
//! Linking is tracked mod 2. A clasp-type move between circles `A` and `B`
//! spawns a dual pair `(E, E')` labeled `label(A)^-1 label(B)` with `E` a
//! meridian of the dual of `A` and `E'` a meridian of the dual of `B`.

mod composite;
mod primitive;
#[cfg(feature = "gen")]
pub mod sample;
mod script;
mod whitney;

use grouprep::{Element, GroupError};
use linkstate::{AmbientContext, CircleId, SingularLinkState, StateError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use script::{apply_script, MoveRecord, ScriptError};
pub use whitney::{MergeSpec, SigmaEntry, SplitSpec, TypeIiSpec, WhitneySpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("no clasp between {0} and {1}")]
    NoClasp(CircleId, CircleId),
    #[error("move needs two distinct circles, got {0} twice")]
    SameCircle(CircleId),
    #[error("circle {0} is not type II")]
    NotTypeIi(CircleId),
    #[error("circles {0} and {1} belong to the same dual pair")]
    SamePair(CircleId, CircleId),
    #[error("labels of {0} and {1} are incompatible")]
    LabelMismatch(CircleId, CircleId),
    #[error("circle {0} is not split from the rest of the link")]
    NotSplit(CircleId),
    #[error("the context has no dual sphere")]
    NoDualSphere,
    #[error("this move needs an unframed dual sphere")]
    NotUnframed,
    #[error("split assignment for circle {0} does not sum to its linking number")]
    SigmaMismatch(CircleId),
    #[error("split assignment names circle {0}, which is not a third circle")]
    SigmaCircle(CircleId),
    #[error("bit value {0} is not 0 or 1")]
    BadBit(u8),
    #[error("cross linking does not sum to the linking of the input pair")]
    CrossMismatch,
    #[error("mutual linking {given} requested, but dual-pair parity forces {forced}")]
    NuInconsistent { given: u8, forced: u8 },
    #[error("no twist entry for type II circles {0} and {1}")]
    MissingTw(CircleId, CircleId),
    #[error("circle {0} is not in a split Hopf pair")]
    NotHopfPair(CircleId),
    #[error("circles do not form a split cycle of Hopf-linked pairs")]
    NotCycle,
    #[error("a cycle needs at least two pairs")]
    CycleTooShort,
    #[error("{meridian} is not a clasped meridian of {circle}")]
    NotMeridian { circle: CircleId, meridian: CircleId },
    #[error("{0} does not lie in the kernel of the mod-2 abelianization")]
    NotInKernel(Element),
    #[error("pair of circle {0} is not labeled by the identity")]
    NotIdentity(CircleId),
}

/// A single rewrite with its parameters.
///
/// Serialized as `{"move": name, "params": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", content = "params", rename_all = "snake_case")]
pub enum Move {
    /// Resolves one clasp between `a` and `b` (possibly equal).
    ClaspFinger { a: CircleId, b: CircleId },
    /// Pushes `a` through `b`, creating a clasp and flipping `lk(a, b)`.
    CrossingFinger { a: CircleId, b: CircleId },
    /// Adds a split dual pair labeled `label`.
    TrivialFinger { label: Element },
    /// Adds a split identity-labeled type II circle.
    #[serde(rename = "introduce_type_II")]
    IntroduceTypeIi,
    WhitneyMove(WhitneySpec),
    /// Joins two split type II circles with equal labels into one dual pair.
    #[serde(rename = "whitney_pair_typeII")]
    WhitneyPairTypeIi { a: CircleId, b: CircleId },
    /// Removes the dual pair of `split`, which must be split from the link.
    AmbientSurgery { split: CircleId },
    FlipActivity { circle: CircleId },
    MoveMeridian { circle: CircleId, meridian: CircleId },
    ShortenCycle { cycle: Vec<CircleId> },
    /// Merges the Hopf pairs of `a` and `b` into one labeled `label(b) label(a)`.
    MergeHopfPairs { a: CircleId, b: CircleId },
    AddHopfPair { label: Element },
    RemoveTrivialHopfPairs { a: CircleId, b: CircleId },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::ClaspFinger { .. } => "clasp_finger",
            Move::CrossingFinger { .. } => "crossing_finger",
            Move::TrivialFinger { .. } => "trivial_finger",
            Move::IntroduceTypeIi => "introduce_type_II",
            Move::WhitneyMove(_) => "whitney_move",
            Move::WhitneyPairTypeIi { .. } => "whitney_pair_typeII",
            Move::AmbientSurgery { .. } => "ambient_surgery",
            Move::FlipActivity { .. } => "flip_activity",
            Move::MoveMeridian { .. } => "move_meridian",
            Move::ShortenCycle { .. } => "shorten_cycle",
            Move::MergeHopfPairs { .. } => "merge_hopf_pairs",
            Move::AddHopfPair { .. } => "add_hopf_pair",
            Move::RemoveTrivialHopfPairs { .. } => "remove_trivial_hopf_pairs",
        }
    }

    pub fn is_composite(&self) -> bool {
        matches!(
            self,
            Move::MoveMeridian { .. }
                | Move::ShortenCycle { .. }
                | Move::MergeHopfPairs { .. }
                | Move::AddHopfPair { .. }
                | Move::RemoveTrivialHopfPairs { .. }
        )
    }
}

/// Applies one move, primitive or composite.
pub fn apply(
    state: &SingularLinkState,
    ctx: &AmbientContext,
    mv: &Move,
) -> Result<SingularLinkState, MoveError> {
    if mv.is_composite() {
        let mut r = Runner::new(state.clone(), ctx);
        r.composite(mv)?;
        Ok(r.state)
    } else {
        primitive::apply_primitive(state, ctx, mv)
    }
}

/// The primitive moves a composite move performs on `state`, in order.
/// A primitive move expands to itself.
pub fn expand(
    state: &SingularLinkState,
    ctx: &AmbientContext,
    mv: &Move,
) -> Result<Vec<Move>, MoveError> {
    if !mv.is_composite() {
        primitive::apply_primitive(state, ctx, mv)?;
        return Ok(vec![mv.clone()]);
    }
    let mut r = Runner::new(state.clone(), ctx);
    r.composite(mv)?;
    Ok(r.log)
}

/// Executes primitives against a working state, recording each.
pub(crate) struct Runner<'a> {
    pub state: SingularLinkState,
    pub ctx: &'a AmbientContext,
    pub log: Vec<Move>,
}

impl<'a> Runner<'a> {
    pub fn new(state: SingularLinkState, ctx: &'a AmbientContext) -> Self {
        Self {
            state,
            ctx,
            log: Vec::new(),
        }
    }

    pub fn run(&mut self, mv: Move) -> Result<(), MoveError> {
        self.state = primitive::apply_primitive(&self.state, self.ctx, &mv)?;
        self.log.push(mv);
        Ok(())
    }

    fn composite(&mut self, mv: &Move) -> Result<CircleId, MoveError> {
        match mv {
            Move::MoveMeridian { circle, meridian } => composite::move_meridian(self, *circle, *meridian),
            Move::ShortenCycle { cycle } => composite::shorten_cycle(self, cycle),
            Move::MergeHopfPairs { a, b } => composite::merge_hopf_pairs(self, *a, *b),
            Move::AddHopfPair { label } => composite::add_hopf_pair(self, label),
            Move::RemoveTrivialHopfPairs { a, b } => composite::remove_trivial_hopf_pairs(self, *a, *b),
            _ => unreachable!("primitive move passed to composite runner"),
        }
    }
}

/// Whether `id` lies in a dual pair Hopf-linked with itself, split from
/// everything else and realized by a single clasp.
pub fn is_hopf_pair(state: &SingularLinkState, id: CircleId) -> bool {
    let Ok(c) = state.circle(id) else { return false };
    let Some(p) = c.partner() else { return false };
    state.neighbors(id) == [p]
        && state.neighbors(p) == [id]
        && state.clasp_count(id, p) == 1
        && state.clasps_touching(id) == 1
        && state.clasps_touching(p) == 1
}
