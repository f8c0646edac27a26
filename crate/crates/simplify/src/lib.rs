//! Constructive pipelines on singular links and the concordance decision.
//!
//! [`eliminate_type_ii`] pairs up type II circles, [`reduce_to_hopf`] turns a
//! link of type I circles into a single split Hopf pair, and [`decide`]
//! combines them with the invariants into a [`Verdict`]. Every pipeline
//! returns the trace of moves it applied, with state hashes, so that it can
//! be replayed.

use grouprep::{Coset, Element, GroupError};
use invariants::InvariantError;
use linkstate::{
    type_ii_classes, AmbientContext, CircleId, DualSphere, Role, SingularLinkState, StateError,
};
use moves::{
    apply, is_hopf_pair, Move, MoveError, MoveRecord, SigmaEntry, SplitSpec, TypeIiSpec,
    WhitneySpec,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplifyError {
    #[error("move {name} failed")]
    Move {
        name: &'static str,
        #[source]
        source: MoveError,
    },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("mu is nonzero, so type II circles cannot be paired off")]
    MuNonzero,
    #[error("type II circles are still present")]
    TypeIiPresent,
    #[error("reduction needs an unframed dual sphere")]
    NeedsUnframed,
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

/// A state being rewritten, with the trace so far.
#[derive(Clone, Debug)]
pub struct Pipeline<'a> {
    pub state: SingularLinkState,
    pub ctx: &'a AmbientContext,
    pub trace: Vec<MoveRecord>,
}

impl<'a> Pipeline<'a> {
    pub fn new(state: SingularLinkState, ctx: &'a AmbientContext) -> Self {
        Self {
            state,
            ctx,
            trace: Vec::new(),
        }
    }

    pub fn run(&mut self, mv: Move) -> Result<(), SimplifyError> {
        let next = apply(&self.state, self.ctx, &mv).map_err(|source| SimplifyError::Move {
            name: mv.name(),
            source,
        })?;
        self.trace.push(MoveRecord {
            mv,
            pre_hash: Some(self.state.hash()),
            post_hash: Some(next.hash()),
        });
        self.state = next;
        Ok(())
    }
}

/// Removes every type II circle. Requires `mu = 0`; an identity-labeled type
/// II circle is introduced first when their number is odd, then circles with
/// equal labels are joined in id order.
pub fn eliminate_type_ii(p: &mut Pipeline) -> Result<(), SimplifyError> {
    if !invariants::mu(&p.state, p.ctx)?.is_zero() {
        return Err(SimplifyError::MuNonzero);
    }
    let one = p.ctx.group.identity();
    if type_ii_classes(&p.state).get(&one).is_some_and(|m| m.len() % 2 == 1) {
        p.run(Move::IntroduceTypeIi)?;
    }
    for members in type_ii_classes(&p.state).into_values() {
        for pair in members.chunks(2) {
            let &[first, second] = pair else {
                return Err(SimplifyError::Internal("odd type II class".into()));
            };
            p.run(Move::WhitneyMove(WhitneySpec::TypeIi(TypeIiSpec {
                first,
                second,
                sigma: Vec::new(),
                nu: None,
                intersections: 0,
            })))?;
        }
    }
    Ok(())
}

/// The only circle linking `x`, if there is exactly one.
fn sole_neighbor(st: &SingularLinkState, x: CircleId) -> Option<CircleId> {
    match st.neighbors(x)[..] {
        [y] => Some(y),
        _ => None,
    }
}

/// Reduces a link of type I circles to one split Hopf pair and returns its
/// active circle.
///
/// 1. Every clasp is resolved by a finger move, leaving the original circles
///    unlinked and each new circle a meridian of one of them.
/// 2. Each original pair without meridians is removed by surgery. The others
///    get equally many meridians on both circles by moving meridians across,
///    then are split until each circle carries exactly one.
/// 3. Now every circle links exactly one other, and following
///    `X -> partner(neighbor(X))` partitions the circles into cycles that come
///    in partner-swapped couples. One cycle of each couple is made active and
///    shortened to a single Hopf pair.
/// 4. The Hopf pairs are merged.
///
/// Each phase decreases, respectively, the clasp count of the input, the
/// meridian imbalance and then excess, the total cycle length, and the number
/// of Hopf pairs.
pub fn reduce_to_hopf(p: &mut Pipeline) -> Result<CircleId, SimplifyError> {
    if p.ctx.dual_sphere != DualSphere::Unframed {
        return Err(SimplifyError::NeedsUnframed);
    }
    if !p.state.type_ii().is_empty() {
        return Err(SimplifyError::TypeIiPresent);
    }
    let long_pairs = p.state.actives();
    if let [a] = long_pairs[..] {
        if p.state.len() == 2 && is_hopf_pair(&p.state, a) {
            return Ok(a);
        }
    }

    let snapshot: Vec<((CircleId, CircleId), u32)> = p.state.clasps().collect();
    for ((a, b), n) in snapshot {
        for _ in 0..n {
            p.run(Move::ClaspFinger { a, b })?;
        }
    }

    for &x in &long_pairs {
        let xd = p.state.dual(x)?;
        let count = |st: &SingularLinkState, c| st.neighbors(c).len();
        if count(&p.state, x) == 0 && count(&p.state, xd) == 0 {
            p.run(Move::AmbientSurgery { split: xd })?;
            continue;
        }
        loop {
            let (m, md) = (count(&p.state, x), count(&p.state, xd));
            if m == md {
                break;
            }
            let from = if m > md { x } else { xd };
            let e = p.state.neighbors(from)[0];
            p.run(Move::MoveMeridian {
                circle: from,
                meridian: e,
            })?;
        }
        let mut cur = x;
        while count(&p.state, cur) > 1 {
            let curd = p.state.dual(cur)?;
            let first: Vec<_> = p.state.neighbors(cur)[1..]
                .iter()
                .map(|&e| SigmaEntry(e, 0, 1))
                .collect();
            let second: Vec<_> = p.state.neighbors(curd)[1..]
                .iter()
                .map(|&e| SigmaEntry(e, 0, 1))
                .collect();
            let next = match p.state.role(cur)? {
                Some(Role::Active) => p.state.next_id(),
                _ => p.state.next_id() + 1,
            };
            p.run(Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
                circle: cur,
                sigma_first: first,
                sigma_second: second,
                nu_first: 0,
                nu_second: None,
                cross: [[0, 0], [0, 0]],
                intersections: 0,
            })))?;
            cur = next;
        }
    }

    let ids = p.state.ids();
    let mut seen = std::collections::BTreeSet::new();
    let mut cycles = Vec::new();
    for &start in &ids {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        loop {
            seen.insert(x);
            cycle.push(x);
            let y = sole_neighbor(&p.state, x).ok_or_else(|| {
                SimplifyError::Internal(format!("circle {x} does not link exactly one circle"))
            })?;
            x = p.state.dual(y)?;
            if x == start {
                break;
            }
            if seen.contains(&x) {
                return Err(SimplifyError::Internal("linking permutation is not a union of cycles".into()));
            }
        }
        for &c in &cycle {
            seen.insert(p.state.dual(c)?);
        }
        cycles.push(cycle);
    }

    let mut hopf = Vec::new();
    for cycle in cycles {
        for &c in &cycle {
            if p.state.role(c)? != Some(Role::Active) {
                p.run(Move::FlipActivity { circle: c })?;
            }
        }
        if cycle.len() == 1 {
            hopf.push(cycle[0]);
        } else {
            let before = p.state.next_id();
            let steps = cycle.len() - 1;
            p.run(Move::ShortenCycle { cycle })?;
            // Each shortening step creates one pair; the last one survives.
            hopf.push(before + 2 * (steps as CircleId - 1));
        }
    }

    if hopf.is_empty() {
        let from = p.state.next_id();
        p.run(Move::AddHopfPair {
            label: p.ctx.group.identity(),
        })?;
        return newest_hopf(p, from);
    }
    let mut acc = hopf[0];
    for &h in &hopf[1..] {
        let from = p.state.next_id();
        p.run(Move::MergeHopfPairs { a: h, b: acc })?;
        acc = newest_hopf(p, from)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Concordant,
    ObstructedFq { class: Coset },
    ObstructedKm { class: Coset },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub outcome: Outcome,
    /// The context actually used, after normalizing the dual sphere.
    pub dual_sphere: DualSphere,
    pub warnings: Vec<String>,
    pub trace: Vec<MoveRecord>,
    pub final_state: SingularLinkState,
    /// Label of the Hopf pair reached in the s-characteristic branch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf_label: Option<Element>,
}

/// Decides whether the singular concordance can be made into an embedded one.
///
/// Without the s-characteristic condition the answer is `fq = 0`; the
/// clasps are then removed with finger moves and surgeries against the
/// framed dual and every pair is surgered away. With it, `fq` and then `km`
/// obstruct, and when both vanish the link is reduced to one Hopf pair whose
/// label is cancelled and removed.
pub fn decide(state: &SingularLinkState, ctx: &AmbientContext) -> Result<Verdict, SimplifyError> {
    let (ctx, warning) = invariants::normalize_dual(ctx)?;
    let mut warnings: Vec<String> = warning.into_iter().collect();
    let mut p = Pipeline::new(state.clone(), &ctx);
    let mut hopf_label = None;

    let fq = invariants::fq(state, &ctx)?;
    let outcome = if !fq.is_zero {
        Outcome::ObstructedFq { class: fq }
    } else if !invariants::mu(state, &ctx)?.is_zero() {
        Outcome::Inconclusive {
            reason: "mu is nonzero although fq vanishes; changing the representative needs pi_3 geometry".into(),
        }
    } else if !ctx.s_characteristic {
        eliminate_type_ii(&mut p)?;
        remove_clasps_framed(&mut p)?;
        for a in p.state.actives() {
            p.run(Move::AmbientSurgery { split: a })?;
        }
        Outcome::Concordant
    } else {
        eliminate_type_ii(&mut p)?;
        let h = reduce_to_hopf(&mut p)?;
        let g = &ctx.group;
        let label = p.state.pair_label(g, h)?;
        hopf_label = Some(label.clone());
        if g.eps(&label)?.is_zero() {
            let from = p.state.next_id();
            p.run(Move::AddHopfPair {
                label: g.inverse(&label),
            })?;
            let inv = newest_hopf(&p, from)?;
            let from = p.state.next_id();
            p.run(Move::MergeHopfPairs { a: h, b: inv })?;
            let merged = newest_hopf(&p, from)?;
            let from = p.state.next_id();
            p.run(Move::AddHopfPair { label: g.identity() })?;
            let trivial = newest_hopf(&p, from)?;
            p.run(Move::RemoveTrivialHopfPairs {
                a: merged,
                b: trivial,
            })?;
            Outcome::Concordant
        } else {
            let km = invariants::km(state, &ctx)?;
            if !km.is_zero {
                Outcome::ObstructedKm { class: km }
            } else {
                Outcome::Inconclusive {
                    reason: "km vanishes only in the quotient by Delta(Self); no representative change is modeled".into(),
                }
            }
        }
    };
    if outcome == Outcome::Concordant && !p.state.is_empty() {
        return Err(SimplifyError::Internal("concordant verdict with a nonempty link".into()));
    }
    if matches!(outcome, Outcome::ObstructedKm { .. } | Outcome::Inconclusive { .. }) && ctx.s_characteristic {
        warnings.push("the trace stops at the reduced Hopf pair".into());
    }
    Ok(Verdict {
        outcome,
        dual_sphere: ctx.dual_sphere,
        warnings,
        trace: p.trace,
        final_state: p.state,
        hopf_label,
    })
}

/// The Hopf pair created by the last move, whose ids start at `from`.
fn newest_hopf(p: &Pipeline, from: CircleId) -> Result<CircleId, SimplifyError> {
    p.state
        .actives()
        .into_iter()
        .filter(|&a| a >= from && is_hopf_pair(&p.state, a))
        .max()
        .ok_or_else(|| SimplifyError::Internal("added Hopf pair not found".into()))
}

/// Removes each clasp with two finger moves and two surgeries against a
/// framed dual, then leaves every circle split.
fn remove_clasps_framed(p: &mut Pipeline) -> Result<(), SimplifyError> {
    loop {
        let Some(((x, y), _)) = p.state.clasps().next() else {
            break;
        };
        let e = p.state.next_id();
        p.run(Move::ClaspFinger { a: x, b: y })?;
        let xd = p.state.dual(x)?;
        let f = p.state.next_id();
        p.run(Move::ClaspFinger { a: e, b: xd })?;
        p.run(Move::AmbientSurgery { split: e })?;
        p.run(Move::AmbientSurgery { split: f })?;
    }
    Ok(())
}
