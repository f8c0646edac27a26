//! Random applicable moves, for property tests and sweeps.

use grouprep::Element;
use linkstate::gen::random_element;
use linkstate::{type_ii_classes, AmbientContext, CircleId, DualSphere, SingularLinkState};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::whitney::{MergeSpec, SigmaEntry, SplitSpec, TypeIiSpec, WhitneySpec};
use crate::{is_hopf_pair, Move};

fn random_sigma<R: Rng + ?Sized>(
    thirds: &[CircleId],
    total: impl Fn(CircleId) -> bool,
    rng: &mut R,
) -> Vec<SigmaEntry> {
    let mut out = Vec::new();
    for &x in thirds {
        if rng.gen_bool(0.5) {
            let p = rng.gen_bool(0.5);
            let q = p ^ total(x);
            out.push(SigmaEntry(x, u8::from(p), u8::from(q)));
        }
    }
    out
}

/// Every kind of move that has some valid parameter choice in `st`, each with
/// randomly chosen parameters. Candidates are valid by construction except
/// where a composite's inner preconditions fail; callers apply and keep the
/// successes.
pub fn candidates<R: Rng + ?Sized>(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    rng: &mut R,
) -> Vec<Move> {
    let g = &ctx.group;
    let ids = st.ids();
    let mut out = Vec::new();

    let clasps: Vec<(CircleId, CircleId)> = st.clasps().map(|(k, _)| k).collect();
    if let Some(&(a, b)) = clasps.choose(rng) {
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        out.push(Move::ClaspFinger { a, b });
    }
    if ids.len() >= 2 {
        let pick: Vec<CircleId> = ids.choose_multiple(rng, 2).copied().collect();
        out.push(Move::CrossingFinger {
            a: pick[0],
            b: pick[1],
        });
    }
    out.push(Move::TrivialFinger {
        label: random_element(g, 3, rng),
    });
    out.push(Move::IntroduceTypeIi);

    let type_i: Vec<CircleId> = ids
        .iter()
        .copied()
        .filter(|&x| st.circle(x).is_ok_and(|c| !c.is_type_ii()))
        .collect();
    if let Some(&c) = type_i.choose(rng) {
        out.push(Move::FlipActivity { circle: c });
        let cd = st.dual(c).expect("known circle");
        let thirds: Vec<CircleId> = ids.iter().copied().filter(|&x| x != c && x != cd).collect();
        let mut cross = [[0u8; 2]; 2];
        for v in cross.iter_mut().flatten() {
            *v = u8::from(rng.gen_bool(0.5));
        }
        let parity = cross.iter().flatten().fold(0, |a, &v| a ^ v);
        cross[1][1] ^= parity ^ u8::from(st.lk(c, cd));
        out.push(Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
            circle: c,
            sigma_first: random_sigma(&thirds, |x| st.lk(c, x), rng),
            sigma_second: random_sigma(&thirds, |x| st.lk(cd, x), rng),
            nu_first: u8::from(rng.gen_bool(0.5)),
            nu_second: None,
            cross,
            intersections: rng.gen_range(0..=2),
        })));
    }

    let mut mergeable = Vec::new();
    for (i, &x) in type_i.iter().enumerate() {
        for &y in &type_i[i + 1..] {
            if st.dual(x).ok() != Some(y) && st.label(g, x).ok() == st.label(g, y).ok() {
                mergeable.push((x, y));
            }
        }
    }
    if let Some(&(x, y)) = mergeable.choose(rng) {
        out.push(Move::WhitneyMove(WhitneySpec::Merge(MergeSpec {
            first: x,
            second: y,
            intersections: rng.gen_range(0..=2),
        })));
    }

    let mut same_label = Vec::new();
    let mut split_same = Vec::new();
    for members in type_ii_classes(st).values() {
        for (i, &c) in members.iter().enumerate() {
            for &d in &members[i + 1..] {
                same_label.push((c, d));
                let alone = |x: CircleId, y: CircleId| {
                    st.neighbors(x).iter().all(|&n| n == y)
                        && st.clasps().all(|((p, q), _)| {
                            !(p == x || q == x) || [p, q].iter().all(|&e| e == x || e == y)
                        })
                };
                if alone(c, d) && alone(d, c) {
                    split_same.push((c, d));
                }
            }
        }
    }
    if let Some(&(c, d)) = same_label.choose(rng) {
        let (c, d) = if rng.gen_bool(0.5) { (c, d) } else { (d, c) };
        let thirds: Vec<CircleId> = ids.iter().copied().filter(|&x| x != c && x != d).collect();
        out.push(Move::WhitneyMove(WhitneySpec::TypeIi(TypeIiSpec {
            first: c,
            second: d,
            sigma: random_sigma(&thirds, |x| st.lk(c, x) ^ st.lk(d, x), rng),
            nu: None,
            intersections: rng.gen_range(0..=2),
        })));
    }
    if let Some(&(c, d)) = split_same.choose(rng) {
        out.push(Move::WhitneyPairTypeIi { a: c, b: d });
    }

    if ctx.dual_sphere != DualSphere::None {
        let split: Vec<CircleId> = type_i.iter().copied().filter(|&x| st.is_split(x)).collect();
        if let Some(&s) = split.choose(rng) {
            out.push(Move::AmbientSurgery { split: s });
        }
        let mut meridians = Vec::new();
        for &e in &type_i {
            if let [a] = st.neighbors(e)[..] {
                if st.clasp_count(e, a) == 1 && st.clasps_touching(e) == 1 {
                    meridians.push((a, e));
                }
            }
        }
        if let Some(&(circle, meridian)) = meridians.choose(rng) {
            out.push(Move::MoveMeridian { circle, meridian });
        }
        if ctx.dual_sphere == DualSphere::Unframed {
            let mut starts = st.actives();
            starts.shuffle(rng);
            if let Some(cycle) = starts.into_iter().find_map(|a| cycle_from(st, a)) {
                out.push(Move::ShortenCycle { cycle });
            }
        }
        let hopf: Vec<CircleId> = st
            .actives()
            .into_iter()
            .filter(|&a| is_hopf_pair(st, a))
            .collect();
        let trivial: Vec<CircleId> = hopf
            .iter()
            .copied()
            .filter(|&a| st.pair_label(g, a).is_ok_and(|l| g.is_identity(&l)))
            .collect();
        if trivial.len() >= 2 {
            let pick: Vec<CircleId> = trivial.choose_multiple(rng, 2).copied().collect();
            out.push(Move::RemoveTrivialHopfPairs {
                a: pick[0],
                b: pick[1],
            });
        }
        if ctx.dual_sphere == DualSphere::Unframed {
            if hopf.len() >= 2 {
                let pick: Vec<CircleId> = hopf.choose_multiple(rng, 2).copied().collect();
                out.push(Move::MergeHopfPairs {
                    a: pick[0],
                    b: pick[1],
                });
            }
            if let Some(k) = kernel_element(ctx, rng) {
                out.push(Move::AddHopfPair { label: k });
            }
        }
    }
    out
}

/// The active circles `A1 = start, A2, ...` where each `Ai` links only the
/// partner of `A(i+1)`, if they close up into a cycle of length at least two.
fn cycle_from(st: &SingularLinkState, start: CircleId) -> Option<Vec<CircleId>> {
    let mut cycle = vec![start];
    let mut x = start;
    loop {
        let [y] = st.neighbors(x)[..] else {
            return None;
        };
        let next = st.dual(y).ok()?;
        if st.role(next).ok()? != Some(linkstate::Role::Active) {
            return None;
        }
        if next == start {
            return (cycle.len() >= 2).then_some(cycle);
        }
        if cycle.contains(&next) {
            return None;
        }
        cycle.push(next);
        x = next;
    }
}

/// A random element with trivial image in `H_1(-; Z/2)`.
fn kernel_element<R: Rng + ?Sized>(ctx: &AmbientContext, rng: &mut R) -> Option<Element> {
    let g = &ctx.group;
    for _ in 0..16 {
        let x = random_element(g, 4, rng);
        if g.eps(&x).ok()?.is_zero() {
            return Some(x);
        }
    }
    Some(g.identity())
}

/// One random applicable move, or `None` if no candidate applies.
pub fn random_move<R: Rng + ?Sized>(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    rng: &mut R,
) -> Option<Move> {
    let mut c = candidates(st, ctx, rng);
    c.shuffle(rng);
    c.into_iter().find(|m| crate::apply(st, ctx, m).is_ok())
}
