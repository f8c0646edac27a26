use std::collections::BTreeSet;

use grouprep::Element;
use linkstate::{CircleId, DualSphere, Role};

use crate::whitney::{MergeSpec, SigmaEntry, SplitSpec, WhitneySpec};
use crate::{is_hopf_pair, Move, MoveError, Runner};

fn require_unframed(r: &Runner) -> Result<(), MoveError> {
    match r.ctx.dual_sphere {
        DualSphere::Unframed => Ok(()),
        DualSphere::None => Err(MoveError::NoDualSphere),
        DualSphere::Framed => Err(MoveError::NotUnframed),
    }
}

/// `clasp_finger(meridian, circle)` then surgery on the meridian's pair.
/// Returns the active circle of the new meridian pair.
pub(crate) fn move_meridian(r: &mut Runner, circle: CircleId, meridian: CircleId) -> Result<CircleId, MoveError> {
    let st = &r.state;
    st.circle(circle)?;
    st.circle(meridian)?.partner().ok_or(MoveError::NotMeridian { circle, meridian })?;
    let ok = st.neighbors(meridian) == [circle]
        && st.clasp_count(meridian, circle) == 1
        && st.clasps_touching(meridian) == 1;
    if !ok {
        return Err(MoveError::NotMeridian { circle, meridian });
    }
    let f = st.next_id();
    r.run(Move::ClaspFinger { a: meridian, b: circle })?;
    r.run(Move::AmbientSurgery { split: meridian })?;
    Ok(f)
}

/// Shortens a cycle `A1, ..., Am` of active circles, where `Ai` is Hopf
/// linked with the partner of `A(i+1)`, down to one Hopf pair labeled
/// `label(Am) ... label(A1)`. Returns its active circle.
pub(crate) fn shorten_cycle(r: &mut Runner, cycle: &[CircleId]) -> Result<CircleId, MoveError> {
    require_unframed(r)?;
    let m = cycle.len();
    if m < 2 {
        return Err(MoveError::CycleTooShort);
    }
    let st = &r.state;
    let mut members = BTreeSet::new();
    for &a in cycle {
        if st.role(a)? != Some(Role::Active) {
            return Err(MoveError::NotCycle);
        }
        members.insert(a);
        members.insert(st.dual(a)?);
    }
    if members.len() != 2 * m {
        return Err(MoveError::NotCycle);
    }
    for i in 0..m {
        let a = cycle[i];
        let next = st.dual(cycle[(i + 1) % m])?;
        let ad = st.dual(a)?;
        let prev = cycle[(i + m - 1) % m];
        let ok = st.neighbors(a) == [next]
            && st.neighbors(ad) == [prev]
            && st.clasp_count(a, next) == 1
            && st.clasps_touching(a) == 1
            && st.clasps_touching(ad) == 1;
        if !ok {
            return Err(MoveError::NotCycle);
        }
    }
    let mut cycle = cycle.to_vec();
    while cycle.len() >= 2 {
        let (a1, a2) = (cycle[0], cycle[1]);
        let a2d = r.state.dual(a2)?;
        let e = r.state.next_id();
        r.run(Move::ClaspFinger { a: a2d, b: a1 })?;
        r.run(Move::AmbientSurgery { split: a2d })?;
        r.run(Move::AmbientSurgery { split: a1 })?;
        cycle.splice(0..2, [e]);
    }
    Ok(cycle[0])
}

/// Merges the split Hopf pairs of `a` (label `x`) and `b` (label `y`) into a
/// single split Hopf pair labeled `yx`. Returns its active circle.
pub(crate) fn merge_hopf_pairs(r: &mut Runner, a: CircleId, b: CircleId) -> Result<CircleId, MoveError> {
    require_unframed(r)?;
    for x in [a, b] {
        if !is_hopf_pair(&r.state, x) {
            return Err(MoveError::NotHopfPair(x));
        }
    }
    let (a, b) = (r.state.active_of(a)?, r.state.active_of(b)?);
    if a == b {
        return Err(MoveError::SamePair(a, b));
    }
    let (ad, bd) = (r.state.dual(a)?, r.state.dual(b)?);

    let c = r.state.next_id();
    let cd = c + 1;
    r.run(Move::CrossingFinger { a: bd, b: a })?;

    let b2 = r.state.next_id();
    r.run(Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
        circle: b,
        sigma_first: Vec::new(),
        sigma_second: vec![SigmaEntry(a, 0, 1)],
        nu_first: 0,
        nu_second: None,
        cross: [[0, 0], [1, 0]],
        intersections: 0,
    })))?;
    let b2d = b2 + 1;

    let a2 = r.state.next_id();
    r.run(Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
        circle: a,
        sigma_first: Vec::new(),
        sigma_second: vec![SigmaEntry(cd, 0, 1)],
        nu_first: 0,
        nu_second: None,
        cross: [[0, 0], [1, 0]],
        intersections: 0,
    })))?;
    debug_assert!(r.state.lk(a, b2d) && r.state.lk(a2, ad) && r.state.lk(bd, b2));

    r.run(Move::FlipActivity { circle: c })?;
    shorten_cycle(r, &[a, b2, b, cd, a2])
}

/// Builds a split Hopf pair labeled `g` from a balanced word for `g`.
pub(crate) fn add_hopf_pair(r: &mut Runner, g: &Element) -> Result<CircleId, MoveError> {
    require_unframed(r)?;
    let group = r.ctx.group.clone();
    let g = group.normalize(g)?;
    if !group.eps(&g)?.is_zero() {
        return Err(MoveError::NotInKernel(g));
    }
    let word = group.balanced_word(&g)?;
    let double = |r: &mut Runner, label: Element| -> Result<(CircleId, CircleId), MoveError> {
        let p = r.state.next_id();
        r.run(Move::TrivialFinger { label })?;
        let q = r.state.next_id();
        r.run(Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
            circle: p,
            sigma_first: Vec::new(),
            sigma_second: Vec::new(),
            nu_first: 0,
            nu_second: None,
            cross: [[1, 0], [0, 1]],
            intersections: 0,
        })))?;
        Ok((p, q))
    };
    if word.is_empty() {
        let (p, q) = double(r, group.identity())?;
        return merge_hopf_pairs(r, p, q);
    }

    let mut pair_of: Vec<Option<CircleId>> = vec![None; word.len()];
    let mut pending: Vec<Option<usize>> = vec![None; group.generators().len()];
    for (i, l) in word.iter().enumerate() {
        match pending[l.generator].take() {
            None => pending[l.generator] = Some(i),
            Some(j) => {
                let (p, q) = double(r, group.generators()[l.generator].clone())?;
                pair_of[j] = Some(p);
                pair_of[i] = Some(q);
            }
        }
    }
    let mut actives = Vec::with_capacity(word.len());
    for (l, p) in word.iter().zip(pair_of) {
        let p = p.expect("a balanced word uses each generator an even number of times");
        if l.inverse {
            r.run(Move::FlipActivity { circle: p })?;
            actives.push(r.state.dual(p)?);
        } else {
            actives.push(p);
        }
    }
    let mut acc = actives[0];
    for &p in &actives[1..] {
        acc = merge_hopf_pairs(r, p, acc)?;
    }
    Ok(acc)
}

/// Band-sums two split identity-labeled Hopf pairs into an unlinked pair and
/// removes it by surgery.
pub(crate) fn remove_trivial_hopf_pairs(r: &mut Runner, a: CircleId, b: CircleId) -> Result<CircleId, MoveError> {
    if r.ctx.dual_sphere == DualSphere::None {
        return Err(MoveError::NoDualSphere);
    }
    for x in [a, b] {
        if !is_hopf_pair(&r.state, x) {
            return Err(MoveError::NotHopfPair(x));
        }
        if !r.ctx.group.is_identity(&r.state.pair_label(&r.ctx.group, x)?) {
            return Err(MoveError::NotIdentity(x));
        }
    }
    let (a, b) = (r.state.active_of(a)?, r.state.active_of(b)?);
    if a == b {
        return Err(MoveError::SamePair(a, b));
    }
    let ad = r.state.dual(a)?;
    r.run(Move::WhitneyMove(WhitneySpec::Merge(MergeSpec {
        first: a,
        second: b,
        intersections: 0,
    })))?;
    r.run(Move::AmbientSurgery { split: ad })?;
    Ok(a)
}
