use std::sync::Arc;

use grouprep::{library, Element};
use linkstate::gen::{random_state, GenParams};
use linkstate::{
    validate, AmbientContext, CircleKind, DualSphere, Invariant, Role, SingularLinkState,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z() -> Arc<grouprep::GroupModel> {
    Arc::new(library::integers())
}

fn hopf(label: i64) -> SingularLinkState {
    let mut st = SingularLinkState::new("");
    let (a, b) = st.push_pair(Element(vec![label]));
    st.set_lk(a, b, true);
    st.add_clasp(a, b);
    st
}

#[test]
fn hopf_pair_is_valid_everywhere() {
    for dual in [DualSphere::None, DualSphere::Framed, DualSphere::Unframed] {
        for s in [false, true] {
            let ctx = AmbientContext::new(z(), s, dual);
            assert!(validate(&hopf(1), &ctx).is_valid());
        }
    }
}

#[test]
fn json_round_trip_and_hash() {
    let st = hopf(3);
    let json = st.to_json();
    assert_eq!(
        json,
        r#"{"circles":[{"id":0,"kind":"active","partner":1,"label":3},{"id":1,"kind":"inactive","partner":0}],"lk":[[0,1]],"clasps":[[0,1]],"tw":[],"homology_tag":""}"#
    );
    let back: SingularLinkState = serde_json::from_str(&json).unwrap();
    assert_eq!(back, st);
    assert_eq!(back.hash(), st.hash());
    assert_eq!(st.hash().len(), 64);
    assert_ne!(hopf(2).hash(), st.hash());
}

#[test]
fn malformed_json_is_rejected() {
    for bad in [
        r#"{"circles":[{"id":0,"kind":"type_ii","label":0},{"id":0,"kind":"type_ii","label":0}]}"#,
        r#"{"circles":[{"id":0,"kind":"active","label":0}]}"#,
        r#"{"circles":[],"lk":[[1,1]]}"#,
        r#"{"circles":[],"tw":[[0,1,2]]}"#,
        r#"{"circles":[],"extra":1}"#,
    ] {
        assert!(serde_json::from_str::<SingularLinkState>(bad).is_err(), "{bad}");
    }
}

#[test]
fn flip_activity_is_an_involution() {
    let g = z();
    let st = hopf(5);
    let f = st.flip_activity(&g, 0).unwrap();
    assert_eq!(f.role(1).unwrap(), Some(Role::Active));
    assert_eq!(f.label(&g, 1).unwrap(), Element(vec![-5]));
    assert_eq!(f.label(&g, 0).unwrap(), Element(vec![5]));
    assert_eq!(f.flip_activity(&g, 1).unwrap(), st);
}

#[test]
fn validation_reports_each_violation() {
    let ctx = AmbientContext::new(z(), true, DualSphere::Unframed);

    let mut st = hopf(1);
    st.remove_clasp(0, 1);
    let r = validate(&st, &ctx);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].invariant, Invariant::ClaspCongruence);

    let mut st = hopf(1);
    let c = st.push_type_ii(Element(vec![0]));
    st.set_lk(0, c, true);
    st.add_clasp(0, c);
    let kinds: Vec<Invariant> = validate(&st, &ctx)
        .violations
        .iter()
        .map(|v| v.invariant)
        .collect();
    assert_eq!(kinds, vec![Invariant::LemmaParity, Invariant::TypeIiParity]);
    let plain = AmbientContext::new(z(), false, DualSphere::Unframed);
    assert!(validate(&st, &plain).is_valid());

    let mut st = SingularLinkState::new("");
    st.push_type_ii(Element(vec![2]));
    let kinds: Vec<Invariant> = validate(&st, &ctx).violations.iter().map(|v| v.invariant).collect();
    assert_eq!(kinds, vec![Invariant::TypeIiLabel]);

    let mut st = hopf(1);
    st.set_kind(
        1,
        CircleKind::TypeI {
            role: Role::Active,
            partner: 0,
        },
        Some(Element(vec![1])),
    );
    assert!(validate(&st, &ctx)
        .violations
        .iter()
        .any(|v| v.invariant == Invariant::PartnerPairing));
}

#[test]
fn tw_domain_and_consistency() {
    let q = Arc::new(library::quaternion());
    let ctx = AmbientContext::new(q.clone(), true, DualSphere::Framed);
    let m1 = Element::index(library::Q8_MINUS_ONE);
    let mut st = SingularLinkState::new("");
    let ids: Vec<_> = (0..4).map(|_| st.push_type_ii(m1.clone())).collect();
    let r = validate(&st, &ctx);
    assert_eq!(r.violations.len(), 6);
    assert!(r.violations.iter().all(|v| v.invariant == Invariant::TwDomain));
    for i in 0..4 {
        for j in i + 1..4 {
            st.set_tw(ids[i], ids[j], false);
        }
    }
    assert!(validate(&st, &ctx).is_valid());
    st.set_tw(ids[2], ids[3], true);
    let r = validate(&st, &ctx);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].invariant, Invariant::TwConsistency);
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
        for s in [false, true] {
            for d in [DualSphere::None, DualSphere::Framed, DualSphere::Unframed] {
                out.push(AmbientContext::new(g.clone(), s, d));
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn generated_states_validate(seed in any::<u64>(), which in 0usize..30) {
        let ctx = &contexts()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = random_state(ctx, &GenParams::default(), &mut rng);
        let r = validate(&st, ctx);
        prop_assert!(r.is_valid(), "{:?}\n{}", r, st.to_json());
        let back: SingularLinkState = serde_json::from_str(&st.to_json()).unwrap();
        prop_assert_eq!(back, st);
    }

    #[test]
    fn flipping_preserves_validity(seed in any::<u64>(), which in 0usize..30) {
        let ctx = &contexts()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let st = random_state(ctx, &GenParams::default(), &mut rng);
        for a in st.actives() {
            let f = st.flip_activity(&ctx.group, a).unwrap();
            prop_assert!(validate(&f, ctx).is_valid());
            prop_assert_eq!(f.flip_activity(&ctx.group, a).unwrap(), st.clone());
        }
    }
}
