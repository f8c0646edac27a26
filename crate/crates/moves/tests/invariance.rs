//! Randomized checks that moves preserve the structural invariants, the
//! type II label count and the linking-weighted homology sum.

use std::collections::BTreeMap;
use std::sync::Arc;

use grouprep::{library, Element, F2Vec, GroupModel};
use linkstate::gen::{random_state, GenParams};
use linkstate::{validate, AmbientContext, CircleKind, DualSphere, SingularLinkState};
use moves::sample::candidates;
use moves::{apply, apply_script, expand, MoveRecord};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counts of nontrivial type II labels mod 2.
fn mu(st: &SingularLinkState, g: &GroupModel) -> BTreeMap<Element, bool> {
    let mut out = BTreeMap::new();
    for c in st.circles() {
        if c.is_type_ii() {
            let l = c.label.clone().unwrap();
            if !g.is_identity(&l) {
                *out.entry(l).or_insert(false) ^= true;
            }
        }
    }
    out.retain(|_, v| *v);
    out
}

fn delta(st: &SingularLinkState, g: &GroupModel) -> F2Vec {
    let mut acc = F2Vec::zeros(g.h1_dim());
    for c in st.circles() {
        if let CircleKind::TypeI { role: linkstate::Role::Active, .. } = c.kind {
            if st.lk_total(c.id).unwrap() {
                acc.add_assign(&g.eps(c.label.as_ref().unwrap()).unwrap());
            }
        }
    }
    for ((a, b), v) in st.tw_entries() {
        if v {
            acc.add_assign(&g.eps(st.circle(a).unwrap().label.as_ref().unwrap()).unwrap());
            let _ = b;
        }
    }
    acc
}

fn contexts() -> Vec<AmbientContext> {
    let groups = [
        library::integers(),
        library::cyclic(2),
        library::cyclic(4),
        library::abelian(0, &[2, 2]),
        library::quaternion(),
    ];
    let mut out = Vec::new();
    for g in groups {
        let g = Arc::new(g);
        out.push(AmbientContext::new(g.clone(), true, DualSphere::Unframed));
        out.push(AmbientContext::new(g.clone(), false, DualSphere::Framed));
        out.push(AmbientContext::new(g.clone(), false, DualSphere::Unframed));
        out.push(AmbientContext::new(g, false, DualSphere::None));
    }
    out
}

fn params() -> GenParams {
    GenParams {
        pairs: 0..=3,
        type_ii: 0..=4,
        ..GenParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn moves_preserve_invariants(seed in any::<u64>(), which in 0usize..20, steps in 1usize..6) {
        let ctx = &contexts()[which];
        let g = &ctx.group;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut st = random_state(ctx, &params(), &mut rng);
        let track_delta = ctx.lemma_parity_applies() && mu(&st, g).is_empty();
        let (mu0, d0) = (mu(&st, g), delta(&st, g));
        for _ in 0..steps {
            for mv in candidates(&st, ctx, &mut rng) {
                let Ok(next) = apply(&st, ctx, &mv) else { continue };
                let r = validate(&next, ctx);
                prop_assert!(r.is_valid(), "{} broke {:?}\nfrom {}", mv.name(), r, st.to_json());
                prop_assert_eq!(next.homology_tag(), st.homology_tag());
                prop_assert_eq!(&mu(&next, g), &mu0, "{}", mv.name());
                if track_delta {
                    prop_assert_eq!(&delta(&next, g), &d0, "{} on {}", mv.name(), st.to_json());
                }
                if mv.is_composite() {
                    let prims: Vec<MoveRecord> =
                        expand(&st, ctx, &mv).unwrap().into_iter().map(MoveRecord::bare).collect();
                    let (via, _) = apply_script(&st, ctx, &prims).unwrap();
                    prop_assert_eq!(&via, &next);
                }
            }
            if let Some(mv) = moves::sample::random_move(&st, ctx, &mut rng) {
                st = apply(&st, ctx, &mv).unwrap();
            }
        }
    }
}
