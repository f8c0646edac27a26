//! Random valid states for property tests and sweeps.

use std::ops::RangeInclusive;

use grouprep::{Element, GroupModel, Letter};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::{type_ii_classes, AmbientContext, CircleId, SingularLinkState};

#[derive(Clone, Debug)]
pub struct GenParams {
    pub pairs: RangeInclusive<usize>,
    pub type_ii: RangeInclusive<usize>,
    /// Probability of an initial linking entry between two circles.
    pub link_prob: f64,
    /// Probability that a linked pair gets three clasps instead of one.
    pub triple_clasp_prob: f64,
    /// Probability of an even clasp pair on an unlinked pair of circles.
    pub even_clasp_prob: f64,
    pub self_clasp_prob: f64,
    /// Longest generator word used for labels.
    pub word_len: usize,
    /// Draw type II labels in equal pairs, which makes `mu` vanish.
    pub paired_type_ii: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            pairs: 0..=4,
            type_ii: 0..=3,
            link_prob: 0.3,
            triple_clasp_prob: 0.1,
            even_clasp_prob: 0.05,
            self_clasp_prob: 0.05,
            word_len: 3,
            paired_type_ii: false,
        }
    }
}

/// A uniformly chosen element of a finite group, or a short random word otherwise.
pub fn random_element<R: Rng + ?Sized>(g: &GroupModel, max_len: usize, rng: &mut R) -> Element {
    if let Some(elems) = g.elements() {
        return elems.choose(rng).expect("groups are nonempty").clone();
    }
    let n = rng.gen_range(0..=max_len);
    let k = g.generators().len();
    let word: Vec<Letter> = (0..n)
        .map(|_| Letter {
            generator: rng.gen_range(0..k),
            inverse: rng.gen_bool(0.5),
        })
        .collect();
    g.word_product(&word)
}

/// An element of order at most two.
pub fn random_involution<R: Rng + ?Sized>(g: &GroupModel, rng: &mut R) -> Element {
    let t = g.two_torsion();
    if t.is_empty() || rng.gen_bool(1.0 / (t.len() + 1) as f64) {
        g.identity()
    } else {
        t.choose(rng).expect("nonempty").clone()
    }
}

/// A random state satisfying every invariant checked by [`crate::validate`] under `ctx`.
pub fn random_state<R: Rng + ?Sized>(
    ctx: &AmbientContext,
    p: &GenParams,
    rng: &mut R,
) -> SingularLinkState {
    let g = &ctx.group;
    let mut st = SingularLinkState::new("");
    for _ in 0..rng.gen_range(p.pairs.clone()) {
        st.push_pair(random_element(g, p.word_len, rng));
    }
    let n = rng.gen_range(p.type_ii.clone());
    if p.paired_type_ii {
        for _ in 0..n.div_ceil(2) {
            let l = random_involution(g, rng);
            st.push_type_ii(l.clone());
            st.push_type_ii(l);
        }
    } else {
        for _ in 0..n {
            st.push_type_ii(random_involution(g, rng));
        }
    }
    let ids = st.ids();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if rng.gen_bool(p.link_prob) {
                st.set_lk(a, b, true);
            }
        }
    }
    if ctx.lemma_parity_applies() {
        fix_parities(&mut st, g, rng);
    }

    let linked: Vec<(CircleId, CircleId)> = st.lk_pairs().collect();
    for (a, b) in linked {
        let n = if rng.gen_bool(p.triple_clasp_prob) { 3 } else { 1 };
        for _ in 0..n {
            st.add_clasp(a, b);
        }
    }
    for (i, &a) in ids.iter().enumerate() {
        if rng.gen_bool(p.self_clasp_prob) {
            st.add_clasp(a, a);
        }
        for &b in &ids[i + 1..] {
            if !st.lk(a, b) && rng.gen_bool(p.even_clasp_prob) {
                st.add_clasp(a, b);
                st.add_clasp(a, b);
            }
        }
    }

    for members in type_ii_classes(&st).values() {
        let kappa = rng.gen_bool(0.5);
        let tau: Vec<bool> = members.iter().map(|_| rng.gen_bool(0.5)).collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                st.set_tw(members[i], members[j], tau[i] ^ tau[j] ^ kappa);
            }
        }
    }
    st
}

/// Toggles linking entries so that dual pairs have equal `lk(-, L - -)` and
/// type II circles sharing a label have a common parity, even for the identity.
fn fix_parities<R: Rng + ?Sized>(st: &mut SingularLinkState, g: &GroupModel, rng: &mut R) {
    let parity = |st: &SingularLinkState, c| st.lk_total(c).expect("known circle");
    let mut defects: Vec<CircleId> = Vec::new();
    for a in st.actives() {
        let b = st.dual(a).expect("known circle");
        if parity(st, a) != parity(st, b) {
            defects.push(if rng.gen_bool(0.5) { a } else { b });
        }
    }
    let classes: Vec<(Element, Vec<CircleId>)> = type_ii_classes(st).into_iter().collect();
    let mut targets: Vec<bool> = classes
        .iter()
        .map(|(l, _)| !g.is_identity(l) && rng.gen_bool(0.5))
        .collect();
    let odd_total = classes
        .iter()
        .zip(&targets)
        .filter(|((_, m), &t)| m.len() % 2 == 1 && t)
        .count()
        % 2
        == 1;
    if odd_total {
        let i = classes
            .iter()
            .position(|(l, m)| m.len() % 2 == 1 && !g.is_identity(l))
            .expect("an odd class with nontrivial label contributes the odd total");
        targets[i] = !targets[i];
    }
    for ((_, members), t) in classes.iter().zip(&targets) {
        defects.extend(members.iter().filter(|&&c| parity(st, c) != *t));
    }
    debug_assert!(defects.len() % 2 == 0);
    defects.shuffle(rng);
    for pair in defects.chunks(2) {
        st.toggle_lk(pair[0], pair[1]);
    }
}
