//! Worked examples for each move.

use std::sync::Arc;

use grouprep::library::{self, Q8_I, Q8_J, Q8_K, Q8_MINUS_ONE};
use grouprep::{Element, GroupModel};
use linkstate::{validate, AmbientContext, CircleKind, DualSphere, Role, SingularLinkState};
use moves::{
    apply, apply_script, expand, is_hopf_pair, MergeSpec, Move, MoveError, MoveRecord,
    SigmaEntry, SplitSpec, TypeIiSpec, WhitneySpec,
};

fn z() -> Arc<GroupModel> {
    Arc::new(library::integers())
}

fn e(v: i64) -> Element {
    Element(vec![v])
}

fn hopf_state(labels: &[Element]) -> SingularLinkState {
    let mut st = SingularLinkState::new("alpha");
    for l in labels {
        let (a, b) = st.push_pair(l.clone());
        st.set_lk(a, b, true);
        st.add_clasp(a, b);
    }
    st
}

fn ctx(g: Arc<GroupModel>, s: bool, d: DualSphere) -> AmbientContext {
    AmbientContext::new(g, s, d)
}

#[test]
fn clasp_finger_between_actives() {
    let c = ctx(z(), false, DualSphere::None);
    let mut st = SingularLinkState::new("");
    let (a, ad) = st.push_pair(e(3));
    let (b, bd) = st.push_pair(e(5));
    st.set_lk(a, b, true);
    st.add_clasp(a, b);
    let out = apply(&st, &c, &Move::ClaspFinger { a, b }).unwrap();
    assert!(!out.lk(a, b));
    assert_eq!(out.clasp_count(a, b), 0);
    let (p, q) = (4, 5);
    assert_eq!(out.label(&c.group, p).unwrap(), e(2));
    assert_eq!(out.neighbors(p), vec![ad]);
    assert_eq!(out.neighbors(q), vec![bd]);
    assert!(validate(&out, &c).is_valid());
    assert_eq!(out.homology_tag(), st.homology_tag());
}

#[test]
fn clasp_finger_on_dual_circles_and_self_clasp() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let st = hopf_state(&[e(2)]);
    let out = apply(&st, &c, &Move::ClaspFinger { a: 0, b: 1 }).unwrap();
    // label(0)^-1 label(1) = -2 - 2
    assert_eq!(out.label(&c.group, 2).unwrap(), e(-4));
    assert_eq!(out.neighbors(2), vec![1]);
    assert_eq!(out.neighbors(3), vec![0]);
    assert!(!out.lk(0, 1));
    assert!(validate(&out, &c).is_valid());

    let mut st = SingularLinkState::new("");
    st.push_pair(e(7));
    st.add_clasp(0, 0);
    let out = apply(&st, &c, &Move::ClaspFinger { a: 0, b: 0 }).unwrap();
    assert_eq!(out.label(&c.group, 2).unwrap(), e(0));
    assert_eq!(out.neighbors(1), vec![2, 3]);
    assert_eq!(out.lk_total(1).unwrap(), false);
    assert!(validate(&out, &c).is_valid());

    assert_eq!(
        apply(&hopf_state(&[e(1)]), &c, &Move::ClaspFinger { a: 0, b: 0 }),
        Err(MoveError::NoClasp(0, 0))
    );
}

#[test]
fn trivial_finger_and_type_ii_introduction() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let st = SingularLinkState::new("");
    let out = apply(&st, &c, &Move::TrivialFinger { label: e(4) }).unwrap();
    assert_eq!(out.len(), 2);
    assert!(out.is_split(0) && out.is_split(1));
    assert_eq!(out.pair_label(&c.group, 1).unwrap(), e(4));

    let out = apply(&st, &c, &Move::IntroduceTypeIi).unwrap();
    let out = apply(&out, &c, &Move::IntroduceTypeIi).unwrap();
    assert_eq!(out.type_ii(), vec![0, 1]);
    assert_eq!(out.tw(0, 1), Some(false));
    assert!(validate(&out, &c).is_valid());

    let q = ctx(Arc::new(library::cyclic(4)), false, DualSphere::None);
    assert!(matches!(
        apply(&st, &q, &Move::TrivialFinger { label: e(9) }),
        Err(MoveError::Group(_))
    ));
}

#[test]
fn whitney_pair_type_ii_uses_twist() {
    let q = Arc::new(library::quaternion());
    let c = ctx(q.clone(), true, DualSphere::Unframed);
    let m1 = Element::index(Q8_MINUS_ONE);
    let mut st = SingularLinkState::new("");
    st.push_type_ii(m1.clone());
    st.push_type_ii(m1.clone());
    st.set_tw(0, 1, true);
    let out = apply(&st, &c, &Move::WhitneyPairTypeIi { a: 0, b: 1 }).unwrap();
    assert!(is_hopf_pair(&out, 0));
    assert_eq!(out.pair_label(&q, 1).unwrap(), m1);
    assert_eq!(out.tw_entries().count(), 0);

    st.set_tw(0, 1, false);
    let out = apply(&st, &c, &Move::WhitneyPairTypeIi { a: 0, b: 1 }).unwrap();
    assert!(out.is_split(0) && out.is_split(1));

    let x = st.push_type_ii(q.identity());
    st.set_lk(0, x, true);
    st.add_clasp(0, x);
    assert_eq!(
        apply(&st, &c, &Move::WhitneyPairTypeIi { a: 0, b: 1 }),
        Err(MoveError::NotSplit(0))
    );
}

#[test]
fn whitney_type_ii_forces_nu() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let mut st = SingularLinkState::new("");
    st.push_type_ii(e(0));
    st.push_type_ii(e(0));
    st.set_tw(0, 1, false);
    let spec = |nu| {
        Move::WhitneyMove(WhitneySpec::TypeIi(TypeIiSpec {
            first: 0,
            second: 1,
            sigma: vec![],
            nu,
            intersections: 1,
        }))
    };
    assert_eq!(
        apply(&st, &c, &spec(Some(0))),
        Err(MoveError::NuInconsistent { given: 0, forced: 1 })
    );
    let out = apply(&st, &c, &spec(None)).unwrap();
    assert!(out.lk(0, 1));
    assert_eq!(out.neighbors(2), vec![0, 1]);
    assert!(validate(&out, &c).is_valid());
}

#[test]
fn whitney_split_on_an_unlink_gives_two_hopf_pairs() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let mut st = SingularLinkState::new("");
    st.push_pair(e(1));
    let mv = Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
        circle: 0,
        sigma_first: vec![],
        sigma_second: vec![],
        nu_first: 0,
        nu_second: None,
        cross: [[1, 0], [0, 1]],
        intersections: 0,
    }));
    let out = apply(&st, &c, &mv).unwrap();
    assert!(is_hopf_pair(&out, 0) && is_hopf_pair(&out, 2));
    assert_eq!(out.pair_label(&c.group, 2).unwrap(), e(1));

    let bad = Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
        circle: 0,
        sigma_first: vec![],
        sigma_second: vec![],
        nu_first: 0,
        nu_second: None,
        cross: [[1, 0], [0, 0]],
        intersections: 0,
    }));
    assert_eq!(apply(&st, &c, &bad), Err(MoveError::CrossMismatch));
}

#[test]
fn whitney_split_with_belts() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let mut st = hopf_state(&[e(1)]);
    let (x, _) = st.push_pair(e(0));
    st.set_lk(0, x, true);
    st.add_clasp(0, x);
    st.set_lk(1, x + 1, true);
    st.add_clasp(1, x + 1);
    let mv = Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
        circle: 0,
        sigma_first: vec![SigmaEntry(x, 0, 1)],
        sigma_second: vec![],
        nu_first: 0,
        nu_second: None,
        cross: [[1, 0], [0, 0]],
        intersections: 2,
    }));
    let out = apply(&st, &c, &mv).unwrap();
    let (n, nd) = (4, 5);
    assert!(out.lk(n, x) && !out.lk(0, x));
    for belt in [6, 8] {
        assert_eq!(out.neighbors(belt), vec![0, n]);
        assert!(out.is_split(belt + 1));
        assert!(out.is_type_i_identity(&c, belt));
    }
    assert!(out.lk(1, nd) == (out.lk_total(0).unwrap() != out.lk_total(1).unwrap() ^ out.lk(1, nd)));
    assert!(validate(&out, &c).is_valid());
}

trait IdentityPair {
    fn is_type_i_identity(&self, c: &AmbientContext, id: u32) -> bool;
}

impl IdentityPair for SingularLinkState {
    fn is_type_i_identity(&self, c: &AmbientContext, id: u32) -> bool {
        matches!(self.circle(id).unwrap().kind, CircleKind::TypeI { .. })
            && c.group.is_identity(&self.pair_label(&c.group, id).unwrap())
    }
}

#[test]
fn whitney_merge_sums_linking() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let mut st = hopf_state(&[e(2), e(2)]);
    st.remove_clasp(0, 1);
    st.set_lk(0, 1, false);
    st.set_lk(0, 3, true);
    st.add_clasp(0, 3);
    let mv = Move::WhitneyMove(WhitneySpec::Merge(MergeSpec {
        first: 0,
        second: 2,
        intersections: 1,
    }));
    let out = apply(&st, &c, &mv).unwrap();
    assert_eq!(out.ids(), vec![0, 1, 2, 3]);
    // lk(C, C') = lk(0,1) + lk(0,3) + lk(2,1) + lk(2,3) = 0 + 1 + 0 + 1
    assert!(!out.lk(0, 1));
    assert!(out.is_split(2) && out.is_split(3));

    let mut st = hopf_state(&[e(2), e(3)]);
    st.set_lk(0, 2, false);
    assert_eq!(
        apply(
            &st,
            &c,
            &Move::WhitneyMove(WhitneySpec::Merge(MergeSpec {
                first: 0,
                second: 2,
                intersections: 0
            }))
        ),
        Err(MoveError::LabelMismatch(0, 2))
    );
}

#[test]
fn ambient_surgery_framed_and_unframed() {
    let mut st = SingularLinkState::new("");
    let (a, ad) = st.push_pair(e(1));
    let (cc, _) = st.push_pair(e(0));
    let (d, _) = st.push_pair(e(0));
    for x in [cc, d] {
        st.set_lk(a, x, true);
        st.add_clasp(a, x);
    }
    let framed = ctx(z(), false, DualSphere::Framed);
    let out = apply(&st, &framed, &Move::AmbientSurgery { split: ad }).unwrap();
    assert!(!out.contains(a) && !out.lk(cc, d));

    let unframed = ctx(z(), false, DualSphere::Unframed);
    let out = apply(&st, &unframed, &Move::AmbientSurgery { split: ad }).unwrap();
    assert!(out.lk(cc, d));
    assert_eq!(out.clasp_count(cc, d), 1);

    assert_eq!(
        apply(&st, &unframed, &Move::AmbientSurgery { split: a }),
        Err(MoveError::NotSplit(a))
    );
    let none = ctx(z(), false, DualSphere::None);
    assert_eq!(
        apply(&st, &none, &Move::AmbientSurgery { split: ad }),
        Err(MoveError::NoDualSphere)
    );
}

#[test]
fn move_meridian_moves_to_the_partner() {
    let c = ctx(z(), true, DualSphere::Unframed);
    // Hopf-linked long pair (0,1) with a meridian pair (2,3): 2 around 0 and 3 around 1.
    let mut st = SingularLinkState::new("");
    st.push_pair(e(1));
    let (m, md) = st.push_pair(e(0));
    for (x, y) in [(m, 0), (md, 1), (0, 1)] {
        st.set_lk(x, y, true);
        st.add_clasp(x, y);
    }
    let lk_total = |s: &SingularLinkState, x| s.lk_total(x).unwrap();
    assert!(validate(&st, &c).is_valid());
    let out = apply(&st, &c, &Move::MoveMeridian { circle: 0, meridian: m }).unwrap();
    assert!(!out.contains(m) && !out.contains(md));
    let f = 4;
    assert_eq!(out.neighbors(f + 1), vec![1]);
    assert_eq!(out.neighbors(f), vec![1]);
    assert_eq!(out.neighbors(0), vec![1]);
    assert_eq!(lk_total(&out, 0), lk_total(&out, 1));
    assert!(validate(&out, &c).is_valid());
    assert_eq!(expand(&st, &c, &Move::MoveMeridian { circle: 0, meridian: m }).unwrap().len(), 2);

    assert!(matches!(
        apply(&st, &c, &Move::MoveMeridian { circle: 1, meridian: 0 }),
        Err(MoveError::NotMeridian { .. })
    ));
}

fn cycle_state(labels: &[Element]) -> (SingularLinkState, Vec<u32>) {
    let mut st = SingularLinkState::new("");
    let ids: Vec<u32> = labels.iter().map(|l| st.push_pair(l.clone()).0).collect();
    let m = ids.len();
    for i in 0..m {
        let (a, nd) = (ids[i], ids[(i + 1) % m] + 1);
        st.set_lk(a, nd, true);
        st.add_clasp(a, nd);
    }
    (st, ids)
}

fn q8_elements() -> Vec<Element> {
    (0..8).map(Element::index).collect()
}

#[test]
fn shorten_cycle_of_two_gives_g2_g1() {
    let q = Arc::new(library::quaternion());
    let c = ctx(q.clone(), true, DualSphere::Unframed);
    for g1 in q8_elements() {
        for g2 in q8_elements() {
            let (st, ids) = cycle_state(&[g1.clone(), g2.clone()]);
            assert!(validate(&st, &c).is_valid());
            let out = apply(&st, &c, &Move::ShortenCycle { cycle: ids }).unwrap();
            let hopf = out.actives();
            assert_eq!(hopf.len(), 1);
            assert!(is_hopf_pair(&out, hopf[0]));
            assert_eq!(out.pair_label(&q, hopf[0]).unwrap(), q.op(&g2, &g1));
        }
    }
    let (st, ids) = cycle_state(&[Element::index(Q8_I)]);
    let _ = st;
    let (st1, _) = cycle_state(&[Element::index(Q8_I), Element::index(Q8_J)]);
    assert_eq!(
        apply(&st1, &c, &Move::ShortenCycle { cycle: ids }),
        Err(MoveError::CycleTooShort)
    );
}

#[test]
fn merge_hopf_pairs_gives_ba() {
    let q = Arc::new(library::quaternion());
    let c = ctx(q.clone(), true, DualSphere::Unframed);
    for a in q8_elements() {
        for b in q8_elements() {
            let st = hopf_state(&[a.clone(), b.clone()]);
            let out = apply(&st, &c, &Move::MergeHopfPairs { a: 0, b: 2 }).unwrap();
            let hopf = out.actives();
            assert_eq!(hopf.len(), 1, "{a} {b}");
            assert!(is_hopf_pair(&out, hopf[0]));
            assert_eq!(out.pair_label(&q, hopf[0]).unwrap(), q.op(&b, &a));
            assert_eq!(out.homology_tag(), "alpha");
        }
    }
    let framed = ctx(q.clone(), false, DualSphere::Framed);
    let st = hopf_state(&[Element::index(Q8_I), Element::index(Q8_K)]);
    assert_eq!(
        apply(&st, &framed, &Move::MergeHopfPairs { a: 0, b: 2 }),
        Err(MoveError::NotUnframed)
    );
}

#[test]
fn add_hopf_pair_over_integers() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let st = SingularLinkState::new("");
    for g in [0, 2, -2, 4, -6] {
        let out = apply(&st, &c, &Move::AddHopfPair { label: e(g) }).unwrap();
        let hopf = out.actives();
        assert_eq!(hopf.len(), 1);
        assert!(is_hopf_pair(&out, hopf[0]));
        assert_eq!(out.pair_label(&c.group, hopf[0]).unwrap(), e(g));
    }
    assert_eq!(
        apply(&st, &c, &Move::AddHopfPair { label: e(1) }),
        Err(MoveError::NotInKernel(e(1)))
    );
}

#[test]
fn add_hopf_pair_over_q8_kernel() {
    let q = Arc::new(library::quaternion());
    let c = ctx(q.clone(), true, DualSphere::Unframed);
    let st = hopf_state(&[Element::index(Q8_J)]);
    for g in q8_elements() {
        let res = apply(&st, &c, &Move::AddHopfPair { label: g.clone() });
        if !q.eps(&g).unwrap().is_zero() {
            assert!(res.is_err());
            continue;
        }
        let out = res.unwrap();
        let new: Vec<u32> = out.actives().into_iter().filter(|&a| a != 0).collect();
        assert_eq!(new.len(), 1);
        assert_eq!(out.pair_label(&q, new[0]).unwrap(), g);
        assert!(is_hopf_pair(&out, 0));
        assert!(validate(&out, &c).is_valid());
    }
}

#[test]
fn remove_trivial_pairs() {
    let c = ctx(z(), true, DualSphere::Unframed);
    let mut st = hopf_state(&[e(0), e(0)]);
    let x = st.push_type_ii(e(0));
    let out = apply(&st, &c, &Move::RemoveTrivialHopfPairs { a: 1, b: 2 }).unwrap();
    assert_eq!(out.ids(), vec![x]);
    let st = hopf_state(&[e(0), e(2)]);
    assert_eq!(
        apply(&st, &c, &Move::RemoveTrivialHopfPairs { a: 0, b: 2 }),
        Err(MoveError::NotIdentity(2))
    );
}

#[test]
fn scripts_are_atomic() {
    let c = ctx(z(), false, DualSphere::Framed);
    let st = SingularLinkState::new("");
    let (out, trace) = apply_script(&st, &c, &[]).unwrap();
    assert_eq!(out, st);
    assert!(trace.is_empty());

    let script: Vec<MoveRecord> = vec![
        Move::TrivialFinger { label: e(3) }.into(),
        Move::FlipActivity { circle: 0 }.into(),
    ];
    let (out, trace) = apply_script(&st, &c, &script).unwrap();
    assert_eq!(out.role(1).unwrap(), Some(Role::Active));
    assert_eq!(out.label(&c.group, 1).unwrap(), e(-3));
    assert_eq!(trace[0].pre_hash.as_deref(), Some(st.hash().as_str()));
    assert_eq!(trace[1].post_hash.as_deref(), Some(out.hash().as_str()));
    let (again, _) = apply_script(&st, &c, &trace).unwrap();
    assert_eq!(again, out);

    let bad: Vec<MoveRecord> = vec![
        Move::TrivialFinger { label: e(3) }.into(),
        Move::ClaspFinger { a: 0, b: 1 }.into(),
    ];
    let err = apply_script(&st, &c, &bad).unwrap_err();
    assert_eq!(err.step(), 2);

    let mut tampered = trace.clone();
    tampered[1].post_hash = Some("00".into());
    assert_eq!(apply_script(&st, &c, &tampered).unwrap_err().step(), 2);
}

#[test]
fn record_json_shape() {
    let rec = MoveRecord::bare(Move::ClaspFinger { a: 1, b: 2 });
    assert_eq!(
        serde_json::to_string(&rec).unwrap(),
        r#"{"move":"clasp_finger","params":{"a":1,"b":2}}"#
    );
    let r: MoveRecord = serde_json::from_str(r#"{"move":"introduce_type_II"}"#).unwrap();
    assert_eq!(r.mv, Move::IntroduceTypeIi);
    let r: MoveRecord = serde_json::from_str(
        r#"{"move":"whitney_move","params":{"kind":"split","circle":0,"cross":[[1,0],[0,1]]},"pre_hash":"ab"}"#,
    )
    .unwrap();
    assert!(matches!(r.mv, Move::WhitneyMove(WhitneySpec::Split(_))));
    assert_eq!(r.pre_hash.as_deref(), Some("ab"));
    let r: MoveRecord =
        serde_json::from_str(r#"{"move":"whitney_pair_typeII","params":{"a":0,"b":1}}"#).unwrap();
    assert_eq!(r.mv, Move::WhitneyPairTypeIi { a: 0, b: 1 });
    let back = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<MoveRecord>(&back).unwrap(), r);
}
