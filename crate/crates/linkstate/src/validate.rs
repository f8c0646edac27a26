use std::collections::BTreeMap;

use grouprep::Element;
use serde::{Deserialize, Serialize};

use crate::{AmbientContext, CircleId, CircleKind, Role, SingularLinkState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    /// Partners form active/inactive pairs.
    PartnerPairing,
    /// Labels sit on active and type II circles only.
    LabelPresence,
    /// Labels are elements of the group.
    LabelInGroup,
    /// Type II labels square to the identity.
    TypeIiLabel,
    /// Linking, clasp and twist entries refer to existing circles.
    KnownCircles,
    /// `lk(A, B)` agrees with the clasp count mod 2.
    ClaspCongruence,
    /// `tw` is defined exactly on pairs of type II circles sharing a label.
    TwDomain,
    /// `lk(A, L - A) = lk(A', L - A')` for each dual pair.
    LemmaParity,
    /// Type II circles with a common label have equal `lk(C, L - C)`, even for the identity label.
    TypeIiParity,
    /// Twist bits within one nontrivial label class have the form `t(B) + t(C) + k`.
    TwConsistency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub invariant: Invariant,
    pub ids: Vec<CircleId>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, invariant: Invariant, ids: Vec<CircleId>, message: String) {
        self.violations.push(Violation {
            invariant,
            ids,
            message,
        });
    }
}

/// Checks every structural invariant of `state` under `ctx`.
///
/// The parity checks (`LemmaParity`, `TypeIiParity`, `TwConsistency`) apply only
/// in s-characteristic contexts with a dual sphere. Violations are sorted by
/// invariant and then by ids.
pub fn validate(state: &SingularLinkState, ctx: &AmbientContext) -> ValidationReport {
    let g = &ctx.group;
    let mut r = ValidationReport::default();
    for c in state.circles() {
        match c.kind {
            CircleKind::TypeI { role, partner } => {
                let ok = state.circle(partner).ok().is_some_and(|p| {
                    p.kind
                        == CircleKind::TypeI {
                            role: role.other(),
                            partner: c.id,
                        }
                });
                if !ok || partner == c.id {
                    r.push(
                        Invariant::PartnerPairing,
                        vec![c.id, partner],
                        format!("circle {} and its partner {} do not form a dual pair", c.id, partner),
                    );
                }
                match (role, &c.label) {
                    (Role::Active, None) => r.push(
                        Invariant::LabelPresence,
                        vec![c.id],
                        format!("active circle {} has no label", c.id),
                    ),
                    (Role::Inactive, Some(_)) => r.push(
                        Invariant::LabelPresence,
                        vec![c.id],
                        format!("inactive circle {} carries a label", c.id),
                    ),
                    _ => {}
                }
            }
            CircleKind::TypeII => {
                if c.label.is_none() {
                    r.push(
                        Invariant::LabelPresence,
                        vec![c.id],
                        format!("type II circle {} has no label", c.id),
                    );
                }
            }
        }
        if let Some(l) = &c.label {
            if g.check(l).is_err() {
                r.push(
                    Invariant::LabelInGroup,
                    vec![c.id],
                    format!("label {l} of circle {} is not a group element", c.id),
                );
            } else if c.is_type_ii() && !g.is_identity(&g.op(l, l)) {
                r.push(
                    Invariant::TypeIiLabel,
                    vec![c.id],
                    format!("type II circle {} has label {l} with nontrivial square", c.id),
                );
            }
        }
    }

    let unknown = |a: CircleId, b: CircleId, what: &str, r: &mut ValidationReport| {
        if !state.contains(a) || !state.contains(b) {
            r.push(
                Invariant::KnownCircles,
                vec![a, b],
                format!("{what} entry ({a},{b}) names an unknown circle"),
            );
        }
    };
    for (a, b) in state.lk_pairs() {
        unknown(a, b, "lk", &mut r);
    }
    for ((a, b), _) in state.clasps() {
        unknown(a, b, "clasp", &mut r);
    }
    for ((a, b), _) in state.tw_entries() {
        unknown(a, b, "tw", &mut r);
    }

    let mut pairs: Vec<(CircleId, CircleId)> = state.lk_pairs().collect();
    pairs.extend(state.clasps().map(|(k, _)| k).filter(|(a, b)| a != b));
    pairs.sort_unstable();
    pairs.dedup();
    for (a, b) in pairs {
        if state.lk(a, b) != (state.clasp_count(a, b) % 2 == 1) {
            r.push(
                Invariant::ClaspCongruence,
                vec![a, b],
                format!(
                    "lk({a},{b}) = {} but there are {} clasps",
                    u8::from(state.lk(a, b)),
                    state.clasp_count(a, b)
                ),
            );
        }
    }

    let classes = type_ii_classes(state);
    for ((a, b), _) in state.tw_entries() {
        let same = match (state.circle(a), state.circle(b)) {
            (Ok(x), Ok(y)) => x.is_type_ii() && y.is_type_ii() && x.label == y.label,
            _ => true,
        };
        if !same {
            r.push(
                Invariant::TwDomain,
                vec![a, b],
                format!("tw entry ({a},{b}) is not on a same-label type II pair"),
            );
        }
    }
    for members in classes.values() {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if state.tw(a, b).is_none() {
                    r.push(
                        Invariant::TwDomain,
                        vec![a, b],
                        format!("missing tw entry for type II pair ({a},{b})"),
                    );
                }
            }
        }
    }

    if ctx.lemma_parity_applies() {
        for a in state.actives() {
            let Ok(p) = state.dual(a) else { continue };
            if !state.contains(p) {
                continue;
            }
            let (la, lp) = (
                state.lk_total(a).unwrap_or(false),
                state.lk_total(p).unwrap_or(false),
            );
            if la != lp {
                r.push(
                    Invariant::LemmaParity,
                    vec![a, p],
                    format!(
                        "lk({a}, L-{a}) = {} but lk({p}, L-{p}) = {}",
                        u8::from(la),
                        u8::from(lp)
                    ),
                );
            }
        }
        for (label, members) in &classes {
            let parities: Vec<bool> = members
                .iter()
                .map(|&c| state.lk_total(c).unwrap_or(false))
                .collect();
            let bad = if g.check(label).is_ok() && g.is_identity(label) {
                parities.iter().any(|&p| p)
            } else {
                parities.windows(2).any(|w| w[0] != w[1])
            };
            if bad {
                r.push(
                    Invariant::TypeIiParity,
                    members.clone(),
                    format!("type II circles labeled {label} have inconsistent lk parities"),
                );
            }
            if g.check(label).is_ok() && !g.is_identity(label) && members.len() >= 4 {
                let b0 = members[0];
                let tri = |c: CircleId, d: CircleId| {
                    let t = |x, y| state.tw(x, y).unwrap_or(false);
                    t(c, d) ^ t(b0, c) ^ t(b0, d)
                };
                let kappa = tri(members[1], members[2]);
                'outer: for (i, &c) in members.iter().enumerate().skip(1) {
                    for &d in &members[i + 1..] {
                        if tri(c, d) != kappa {
                            r.push(
                                Invariant::TwConsistency,
                                vec![b0, c, d],
                                format!("tw values on label {label} are not of the form t(B)+t(C)+k"),
                            );
                            break 'outer;
                        }
                    }
                }
            }
        }
    }

    r.violations
        .sort_by(|x, y| (x.invariant, &x.ids).cmp(&(y.invariant, &y.ids)));
    r
}

/// Type II circles grouped by label, ids ascending.
pub fn type_ii_classes(state: &SingularLinkState) -> BTreeMap<Element, Vec<CircleId>> {
    let mut out: BTreeMap<Element, Vec<CircleId>> = BTreeMap::new();
    for c in state.circles() {
        if let (CircleKind::TypeII, Some(l)) = (c.kind, &c.label) {
            out.entry(l.clone()).or_default().push(c.id);
        }
    }
    out
}
