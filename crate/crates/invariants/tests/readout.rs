use std::sync::Arc;

use grouprep::library::{self, Q8_I, Q8_MINUS_ONE};
use grouprep::{Element, F2Vec, GroupModel};
use invariants::{concordance_bound, delta, fq, km, km_rel_alpha, mu, normalize_dual, report, Bound, InvariantError};
use linkstate::gen::{random_state, GenParams};
use linkstate::{validate, AmbientContext, ContextSpec, DualSphere, SingularLinkState};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn e(v: i64) -> Element {
    Element(vec![v])
}

fn hopf(label: Element) -> SingularLinkState {
    let mut st = SingularLinkState::new("");
    let (a, b) = st.push_pair(label);
    st.set_lk(a, b, true);
    st.add_clasp(a, b);
    st
}

#[test]
fn mu_counts_nontrivial_type_ii_mod_two() {
    let k = Arc::new(library::abelian(0, &[2, 2]));
    let ctx = AmbientContext::new(k.clone(), false, DualSphere::Framed);
    let t = k.two_torsion().to_vec();
    let mut st = SingularLinkState::new("");
    st.push_type_ii(t[0].clone());
    st.push_type_ii(t[0].clone());
    st.push_type_ii(t[1].clone());
    assert_eq!(mu(&st, &ctx).unwrap(), F2Vec::unit(3, 1));

    let mut st = SingularLinkState::new("");
    for _ in 0..3 {
        st.push_type_ii(k.identity());
    }
    assert!(mu(&st, &ctx).unwrap().is_zero());
    assert!(mu(&SingularLinkState::new(""), &ctx).unwrap().is_zero());

    let z4 = Arc::new(library::cyclic(4));
    let ctx4 = AmbientContext::new(z4, false, DualSphere::Framed);
    let mut st = SingularLinkState::new("");
    st.push_type_ii(Element::index(1));
    assert_eq!(mu(&st, &ctx4), Err(InvariantError::NotTwoTorsion(0, Element::index(1))));
}

#[test]
fn fq_quotients_by_declared_subspace() {
    let q = Arc::new(library::quaternion());
    let m1 = Element::index(Q8_MINUS_ONE);
    let mut st = SingularLinkState::new("");
    st.push_type_ii(m1.clone());
    let spec = ContextSpec {
        dual_sphere: DualSphere::Framed,
        mu_pi3: vec![vec![m1.clone()]],
        ..ContextSpec::default()
    };
    let ctx = AmbientContext::from_spec(q.clone(), &spec).unwrap();
    assert!(fq(&st, &ctx).unwrap().is_zero);
    let plain = AmbientContext::new(q.clone(), false, DualSphere::Framed);
    assert!(!fq(&st, &plain).unwrap().is_zero);
    assert!(fq(&SingularLinkState::new(""), &plain).unwrap().is_zero);
    let unbased = AmbientContext::new(q, false, DualSphere::None);
    assert_eq!(fq(&st, &unbased), Err(InvariantError::Unbased));
}

#[test]
fn delta_examples() {
    let z = Arc::new(library::integers());
    let ctx = AmbientContext::new(z.clone(), true, DualSphere::Unframed);
    assert_eq!(delta(&hopf(e(1)), &ctx).unwrap(), F2Vec::unit(1, 0));
    assert!(delta(&hopf(e(2)), &ctx).unwrap().is_zero());
    assert!(delta(&SingularLinkState::new(""), &ctx).unwrap().is_zero());

    let k = Arc::new(library::abelian(0, &[2, 2]));
    let kctx = AmbientContext::new(k.clone(), true, DualSphere::Unframed);
    let t = k.two_torsion()[0].clone();
    let mut st = SingularLinkState::new("");
    st.push_type_ii(t.clone());
    st.push_type_ii(t.clone());
    st.set_tw(0, 1, true);
    assert_eq!(delta(&st, &kctx).unwrap(), k.eps(&t).unwrap());
    let mut missing = SingularLinkState::new("");
    missing.push_type_ii(t.clone());
    missing.push_type_ii(t);
    assert_eq!(delta(&missing, &kctx), Err(InvariantError::MissingTw(0, 1)));
}

#[test]
fn km_and_relative_class() {
    let z = Arc::new(library::integers());
    let ctx = AmbientContext::new(z.clone(), true, DualSphere::Unframed);
    let st = hopf(e(1));
    assert!(!km(&st, &ctx).unwrap().is_zero);
    let spec = ContextSpec {
        s_characteristic: true,
        dual_sphere: DualSphere::Unframed,
        delta_self: vec![e(1)],
        ..ContextSpec::default()
    };
    let absorbing = AmbientContext::from_spec(z, &spec).unwrap();
    assert!(km(&st, &absorbing).unwrap().is_zero);
    let mut tagged = SingularLinkState::new("alpha");
    tagged.push_pair(e(3));
    let rel = km_rel_alpha(&tagged, &absorbing).unwrap();
    assert_eq!(rel.homology_tag, "alpha");
    assert!(rel.delta.is_zero());
}

#[test]
fn normalize_dual_cases() {
    let z = Arc::new(library::integers());
    let (c, w) = normalize_dual(&AmbientContext::new(z.clone(), false, DualSphere::Unframed)).unwrap();
    assert_eq!((c.dual_sphere, w), (DualSphere::Framed, None));
    let (c, w) = normalize_dual(&AmbientContext::new(z.clone(), true, DualSphere::Framed)).unwrap();
    assert_eq!(c.dual_sphere, DualSphere::Unframed);
    assert!(w.is_some());
    assert!(normalize_dual(&AmbientContext::new(z, true, DualSphere::None)).is_err());
}

#[test]
fn bounds() {
    let val = |g: GroupModel, s| concordance_bound(&AmbientContext::new(Arc::new(g), s, DualSphere::Unframed));
    assert_eq!(val(library::integers(), false), Bound::Value { value: 1 });
    assert_eq!(val(library::integers(), true), Bound::Value { value: 2 });
    assert_eq!(val(library::cyclic(4), true), Bound::Value { value: 4 });
    assert_eq!(val(library::quaternion(), false), Bound::Value { value: 2 });
    assert_eq!(val(library::quaternion(), true), Bound::Value { value: 8 });
    assert_eq!(val(library::abelian(0, &[2, 2]), false), Bound::Value { value: 8 });
    let none = AmbientContext::new(Arc::new(library::integers()), false, DualSphere::None);
    assert!(matches!(concordance_bound(&none), Bound::NotApplicable { .. }));
    let q = Arc::new(library::quaternion());
    let spec = ContextSpec {
        s_characteristic: true,
        dual_sphere: DualSphere::Unframed,
        mu_pi3: vec![vec![Element::index(Q8_MINUS_ONE)]],
        ..ContextSpec::default()
    };
    let ctx = AmbientContext::from_spec(q, &spec).unwrap();
    assert!(matches!(concordance_bound(&ctx), Bound::NotApplicable { .. }));
}

#[test]
fn report_collects_everything() {
    let q = Arc::new(library::quaternion());
    let ctx = AmbientContext::new(q.clone(), true, DualSphere::Unframed);
    let r = report(&hopf(Element::index(Q8_I)), &ctx).unwrap();
    assert!(r.mu.is_zero());
    assert_eq!(r.delta, q.eps(&Element::index(Q8_I)).unwrap());
    assert!(!r.km_class.is_zero);
    assert_eq!(r.km_rel_alpha.delta, r.delta);
    assert!(r.fq_class.unwrap().is_zero);
}

/// Disjoint union, renumbering the circles of `b` after those of `a`.
fn union(a: &SingularLinkState, b: &SingularLinkState) -> SingularLinkState {
    let shift = a.next_id();
    let mut json_b: serde_json::Value = serde_json::from_str(&b.to_json()).unwrap();
    for c in json_b["circles"].as_array_mut().unwrap() {
        c["id"] = (c["id"].as_u64().unwrap() + shift as u64).into();
        if let Some(p) = c.get("partner").and_then(|p| p.as_u64()) {
            c["partner"] = (p + shift as u64).into();
        }
    }
    for key in ["lk", "clasps", "tw"] {
        for entry in json_b[key].as_array_mut().unwrap() {
            for i in 0..2 {
                entry[i] = (entry[i].as_u64().unwrap() + shift as u64).into();
            }
        }
    }
    let mut json_a: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    for key in ["circles", "lk", "clasps", "tw"] {
        let extra = json_b[key].as_array().unwrap().clone();
        json_a[key].as_array_mut().unwrap().extend(extra);
    }
    serde_json::from_value(json_a).unwrap()
}

fn contexts() -> Vec<AmbientContext> {
    [library::integers(), library::cyclic(4), library::abelian(0, &[2, 2]), library::quaternion()]
        .into_iter()
        .map(|g| AmbientContext::new(Arc::new(g), true, DualSphere::Unframed))
        .collect()
}

proptest! {
    #[test]
    fn additive_under_split_union(seed in any::<u64>(), which in 0usize..4) {
        let ctx = &contexts()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_state(ctx, &GenParams::default(), &mut rng);
        let b = random_state(ctx, &GenParams::default(), &mut rng);
        let u = union(&a, &b);
        prop_assert_eq!(mu(&u, ctx).unwrap(), mu(&a, ctx).unwrap().add(&mu(&b, ctx).unwrap()));
        // Twist bits between the two halves are absent in a union, so restrict
        // to halves whose type II labels do not meet.
        let la: Vec<_> = a.circles().filter(|c| c.is_type_ii()).map(|c| c.label.clone()).collect();
        let disjoint = b.circles().filter(|c| c.is_type_ii()).all(|c| !la.contains(&c.label));
        if disjoint {
            prop_assert_eq!(delta(&u, ctx).unwrap(), delta(&a, ctx).unwrap().add(&delta(&b, ctx).unwrap()));
        }
    }

    #[test]
    fn delta_survives_flips(seed in any::<u64>(), which in 0usize..4) {
        let ctx = &contexts()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = random_state(ctx, &GenParams::default(), &mut rng);
        prop_assert!(validate(&st, ctx).is_valid());
        let d = delta(&st, ctx).unwrap();
        for a in st.actives() {
            prop_assert_eq!(&delta(&st.flip_activity(&ctx.group, a).unwrap(), ctx).unwrap(), &d);
        }
        let r = report(&st, ctx).unwrap();
        prop_assert_eq!(ctx.delta_self.quotient_reduce(&r.km_rel_alpha.delta).unwrap(), r.km_class);
    }
}
