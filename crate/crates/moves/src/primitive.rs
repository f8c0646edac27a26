use grouprep::Element;
use linkstate::{
    type_ii_classes, AmbientContext, CircleId, CircleKind, DualSphere, SingularLinkState,
};

use crate::whitney::{self, TypeIiSpec, WhitneySpec};
use crate::{Move, MoveError};

pub(crate) fn apply_primitive(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    mv: &Move,
) -> Result<SingularLinkState, MoveError> {
    match mv {
        Move::ClaspFinger { a, b } => clasp_finger(st, ctx, *a, *b),
        Move::CrossingFinger { a, b } => crossing_finger(st, ctx, *a, *b),
        Move::TrivialFinger { label } => trivial_finger(st, ctx, label),
        Move::IntroduceTypeIi => Ok(introduce_type_ii(st, ctx)),
        Move::WhitneyMove(spec) => whitney::whitney_move(st, ctx, spec),
        Move::WhitneyPairTypeIi { a, b } => whitney_pair_type_ii(st, ctx, *a, *b),
        Move::AmbientSurgery { split } => ambient_surgery(st, ctx, *split),
        Move::FlipActivity { circle } => Ok(st.flip_activity(&ctx.group, *circle)?),
        _ => unreachable!("composite move passed to primitive dispatcher"),
    }
}

/// Appends the meridian pair produced by a finger move between `a` and `b`
/// and transports twist bits of type II endpoints.
fn finger_pair(
    out: &mut SingularLinkState,
    st: &SingularLinkState,
    ctx: &AmbientContext,
    a: CircleId,
    b: CircleId,
) -> Result<(), MoveError> {
    let g = &ctx.group;
    let e = g.op(&g.inverse(&st.label(g, a)?), &st.label(g, b)?);
    let (da, db) = (st.dual(a)?, st.dual(b)?);
    let (p, q) = out.push_pair(e);
    out.set_lk(p, da, true);
    out.add_clasp(p, da);
    out.set_lk(q, db, true);
    out.add_clasp(q, db);
    if a != b {
        let classes = type_ii_classes(st);
        for z in [a, b] {
            let c = st.circle(z)?;
            if let (CircleKind::TypeII, Some(l)) = (c.kind, &c.label) {
                for &w in &classes[l] {
                    if w != a && w != b {
                        out.flip_tw(z, w);
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn clasp_finger(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    a: CircleId,
    b: CircleId,
) -> Result<SingularLinkState, MoveError> {
    st.circle(a)?;
    st.circle(b)?;
    if st.clasp_count(a, b) == 0 {
        return Err(MoveError::NoClasp(a, b));
    }
    let mut out = st.clone();
    out.remove_clasp(a, b);
    if a != b {
        out.toggle_lk(a, b);
    }
    finger_pair(&mut out, st, ctx, a, b)?;
    Ok(out)
}

pub fn crossing_finger(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    a: CircleId,
    b: CircleId,
) -> Result<SingularLinkState, MoveError> {
    st.circle(a)?;
    st.circle(b)?;
    if a == b {
        return Err(MoveError::SameCircle(a));
    }
    let mut out = st.clone();
    out.toggle_lk(a, b);
    out.add_clasp(a, b);
    finger_pair(&mut out, st, ctx, a, b)?;
    Ok(out)
}

pub fn trivial_finger(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    label: &Element,
) -> Result<SingularLinkState, MoveError> {
    let label = ctx.group.normalize(label)?;
    let mut out = st.clone();
    out.push_pair(label);
    Ok(out)
}

pub fn introduce_type_ii(st: &SingularLinkState, ctx: &AmbientContext) -> SingularLinkState {
    let one = ctx.group.identity();
    let mut out = st.clone();
    let existing = type_ii_classes(st).remove(&one).unwrap_or_default();
    let c = out.push_type_ii(one);
    for w in existing {
        out.set_tw(c, w, false);
    }
    out
}

pub fn whitney_pair_type_ii(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    a: CircleId,
    b: CircleId,
) -> Result<SingularLinkState, MoveError> {
    for (x, y) in [(a, b), (b, a)] {
        if !st.circle(x)?.is_type_ii() {
            return Err(MoveError::NotTypeIi(x));
        }
        let stray_link = st.neighbors(x).iter().any(|&n| n != y);
        let stray_clasp = st.clasps().any(|((p, q), _)| {
            (p == x && q != x && q != y) || (q == x && p != x && p != y)
        });
        if stray_link || stray_clasp {
            return Err(MoveError::NotSplit(x));
        }
    }
    whitney::whitney_move(
        st,
        ctx,
        &WhitneySpec::TypeIi(TypeIiSpec {
            first: a,
            second: b,
            sigma: Vec::new(),
            nu: None,
            intersections: 0,
        }),
    )
}

/// Removes the dual pair of the split circle `split`. Under an unframed dual
/// sphere every two circles linking its partner have their linking flipped.
pub fn ambient_surgery(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    split: CircleId,
) -> Result<SingularLinkState, MoveError> {
    let c = st.circle(split)?;
    let Some(o) = c.partner() else {
        return Err(linkstate::StateError::NotTypeI(split).into());
    };
    if ctx.dual_sphere == DualSphere::None {
        return Err(MoveError::NoDualSphere);
    }
    if !st.is_split(split) {
        return Err(MoveError::NotSplit(split));
    }
    let mut out = st.clone();
    if ctx.dual_sphere == DualSphere::Unframed {
        let nb = st.neighbors(o);
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                out.toggle_lk(x, y);
                out.toggle_clasp(x, y);
            }
        }
    }
    out.remove_circle(o);
    out.remove_circle(split);
    Ok(out)
}
