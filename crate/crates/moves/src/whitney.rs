use std::collections::{BTreeMap, BTreeSet};

use linkstate::{AmbientContext, CircleId, CircleKind, Role, SingularLinkState, StateError};
use serde::{Deserialize, Serialize};

use crate::MoveError;

/// `[X, first, second]`: how the linking of a third circle `X` with a
/// surgered circle is distributed between the two output circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaEntry(pub CircleId, pub u8, pub u8);

/// Band surgery splitting each circle of a dual pair in two.
///
/// `circle` keeps its id and is joined by a new circle `N`; the partner
/// keeps its id and is joined by `N'`. The new pair has the roles and the
/// label of the old one. In `sigma_first` an entry reads
/// `[X, lk(circle, X), lk(N, X)]`, in `sigma_second`
/// `[X, lk(partner, X), lk(N', X)]`; unlisted circles stay with the old
/// ids. `cross[i][j]` is the linking of `(circle, N)[i]` with
/// `(partner, N')[j]`. `nu_first` is `lk(circle, N)` and `nu_second` is
/// `lk(partner, N')`, which is forced when the dual-pair parity holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    pub circle: CircleId,
    #[serde(default)]
    pub sigma_first: Vec<SigmaEntry>,
    #[serde(default)]
    pub sigma_second: Vec<SigmaEntry>,
    #[serde(default)]
    pub nu_first: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_second: Option<u8>,
    pub cross: [[u8; 2]; 2],
    #[serde(default)]
    pub intersections: u32,
}

/// Band sum of `first` with `second` and of their partners. The circles
/// must carry equal labels; `first` and its partner keep their ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MergeSpec {
    pub first: CircleId,
    pub second: CircleId,
    #[serde(default)]
    pub intersections: u32,
}

/// Two type II circles with a common label become one dual pair, `first`
/// active. `sigma` entries read `[X, lk(first, X), lk(second, X)]`; unlisted
/// circles link `first` only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeIiSpec {
    pub first: CircleId,
    pub second: CircleId,
    #[serde(default)]
    pub sigma: Vec<SigmaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u8>,
    #[serde(default)]
    pub intersections: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WhitneySpec {
    Split(SplitSpec),
    Merge(MergeSpec),
    #[serde(rename = "type_II")]
    TypeIi(TypeIiSpec),
}

fn bit(v: u8) -> Result<bool, MoveError> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(MoveError::BadBit(v)),
    }
}

/// Resolves a split assignment of `lk(c, X) + lk(d, X)` over the third circles.
fn resolve_sigma(
    st: &SingularLinkState,
    thirds: &[CircleId],
    total: impl Fn(CircleId) -> bool,
    entries: &[SigmaEntry],
) -> Result<BTreeMap<CircleId, (bool, bool)>, MoveError> {
    let mut out: BTreeMap<CircleId, (bool, bool)> =
        thirds.iter().map(|&x| (x, (total(x), false))).collect();
    let mut seen = BTreeSet::new();
    for &SigmaEntry(x, p, q) in entries {
        st.circle(x)?;
        if !out.contains_key(&x) || !seen.insert(x) {
            return Err(MoveError::SigmaCircle(x));
        }
        let (p, q) = (bit(p)?, bit(q)?);
        if p ^ q != total(x) {
            return Err(MoveError::SigmaMismatch(x));
        }
        out.insert(x, (p, q));
    }
    Ok(out)
}

/// Replaces every clasp touching `ids` by a single clasp per linked pair.
fn recompute_clasps(st: &mut SingularLinkState, ids: &[CircleId]) {
    for &id in ids {
        st.clear_clasps(id);
    }
    let mut pairs = BTreeSet::new();
    for &id in ids {
        for n in st.neighbors(id) {
            pairs.insert((id.min(n), id.max(n)));
        }
    }
    for (a, b) in pairs {
        st.add_clasp(a, b);
    }
}

/// Appends `n` identity pairs whose active circles link each of `link` once.
fn belts(st: &mut SingularLinkState, ctx: &AmbientContext, n: u32, link: &[CircleId]) -> Vec<CircleId> {
    let mut out = Vec::new();
    for _ in 0..n {
        let (p, q) = st.push_pair(ctx.group.identity());
        for &x in link {
            st.set_lk(p, x, true);
        }
        out.extend([p, q]);
    }
    out
}

fn type_i(st: &SingularLinkState, id: CircleId) -> Result<(Role, CircleId), MoveError> {
    match st.circle(id)?.kind {
        CircleKind::TypeI { role, partner } => Ok((role, partner)),
        CircleKind::TypeII => Err(StateError::NotTypeI(id).into()),
    }
}

pub(crate) fn whitney_move(
    st: &SingularLinkState,
    ctx: &AmbientContext,
    spec: &WhitneySpec,
) -> Result<SingularLinkState, MoveError> {
    match spec {
        WhitneySpec::Split(s) => split(st, ctx, s),
        WhitneySpec::Merge(m) => merge(st, ctx, m),
        WhitneySpec::TypeIi(t) => type_ii(st, ctx, t),
    }
}

fn split(st: &SingularLinkState, ctx: &AmbientContext, s: &SplitSpec) -> Result<SingularLinkState, MoveError> {
    let a = s.circle;
    let (role, ad) = type_i(st, a)?;
    let thirds: Vec<CircleId> = st.ids().into_iter().filter(|&x| x != a && x != ad).collect();
    let sig1 = resolve_sigma(st, &thirds, |x| st.lk(a, x), &s.sigma_first)?;
    let sig2 = resolve_sigma(st, &thirds, |x| st.lk(ad, x), &s.sigma_second)?;
    let mut cross = [[false; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            cross[i][j] = bit(s.cross[i][j])?;
        }
    }
    if cross.iter().flatten().fold(false, |acc, &v| acc ^ v) != st.lk(a, ad) {
        return Err(MoveError::CrossMismatch);
    }
    let nu1 = bit(s.nu_first)?;

    let mut out = st.clone();
    let (act, inact) = out.push_pair(st.pair_label(&ctx.group, a)?);
    let (n, nd) = match role {
        Role::Active => (act, inact),
        Role::Inactive => (inact, act),
    };
    for &x in &thirds {
        let (k1, n1) = sig1[&x];
        let (k2, n2) = sig2[&x];
        out.set_lk(a, x, k1);
        out.set_lk(n, x, n1);
        out.set_lk(ad, x, k2);
        out.set_lk(nd, x, n2);
    }
    out.set_lk(a, ad, cross[0][0]);
    out.set_lk(a, nd, cross[0][1]);
    out.set_lk(n, ad, cross[1][0]);
    out.set_lk(n, nd, cross[1][1]);
    out.set_lk(a, n, nu1);
    let belt_ids = belts(&mut out, ctx, s.intersections, &[a, n]);
    out.set_lk(ad, nd, false);
    let forced = out.lk_total(a)? != out.lk_total(ad)?;
    let nu2 = match s.nu_second {
        Some(v) => {
            let v = bit(v)?;
            if ctx.lemma_parity_applies() && v != forced {
                return Err(MoveError::NuInconsistent {
                    given: u8::from(v),
                    forced: u8::from(forced),
                });
            }
            v
        }
        None => forced,
    };
    out.set_lk(ad, nd, nu2);
    let mut touched = vec![a, ad, n, nd];
    touched.extend(belt_ids);
    recompute_clasps(&mut out, &touched);
    Ok(out)
}

fn merge(st: &SingularLinkState, ctx: &AmbientContext, m: &MergeSpec) -> Result<SingularLinkState, MoveError> {
    let (x, y) = (m.first, m.second);
    let (_, xd) = type_i(st, x)?;
    let (_, yd) = type_i(st, y)?;
    if x == y {
        return Err(MoveError::SameCircle(x));
    }
    if y == xd {
        return Err(MoveError::SamePair(x, y));
    }
    let g = &ctx.group;
    if st.label(g, x)? != st.label(g, y)? {
        return Err(MoveError::LabelMismatch(x, y));
    }
    let mut out = st.clone();
    for z in st.ids() {
        if [x, xd, y, yd].contains(&z) {
            continue;
        }
        out.set_lk(x, z, st.lk(x, z) ^ st.lk(y, z));
        out.set_lk(xd, z, st.lk(xd, z) ^ st.lk(yd, z));
    }
    out.set_lk(x, xd, st.lk(x, xd) ^ st.lk(x, yd) ^ st.lk(y, xd) ^ st.lk(y, yd));
    out.remove_circle(y);
    out.remove_circle(yd);
    let belt_ids = belts(&mut out, ctx, m.intersections, &[]);
    let mut touched = vec![x, xd];
    touched.extend(belt_ids);
    recompute_clasps(&mut out, &touched);
    Ok(out)
}

fn type_ii(st: &SingularLinkState, ctx: &AmbientContext, t: &TypeIiSpec) -> Result<SingularLinkState, MoveError> {
    let (c, d) = (t.first, t.second);
    for x in [c, d] {
        if !st.circle(x)?.is_type_ii() {
            return Err(MoveError::NotTypeIi(x));
        }
    }
    if c == d {
        return Err(MoveError::SameCircle(c));
    }
    let label = st.circle(c)?.label.clone();
    if label != st.circle(d)?.label {
        return Err(MoveError::LabelMismatch(c, d));
    }
    let tw = st.tw(c, d).ok_or(MoveError::MissingTw(c, d))?;
    let thirds: Vec<CircleId> = st.ids().into_iter().filter(|&x| x != c && x != d).collect();
    let sig = resolve_sigma(st, &thirds, |x| st.lk(c, x) ^ st.lk(d, x), &t.sigma)?;
    let on_first = sig.values().fold(false, |acc, &(p, _)| acc ^ p);
    let forced = tw ^ on_first ^ (t.intersections % 2 == 1);
    let nu = match t.nu {
        Some(v) => {
            let v = bit(v)?;
            if ctx.lemma_parity_applies() && v != forced {
                return Err(MoveError::NuInconsistent {
                    given: u8::from(v),
                    forced: u8::from(forced),
                });
            }
            v
        }
        None => forced,
    };

    let mut out = st.clone();
    for (&x, &(p, q)) in &sig {
        out.set_lk(c, x, p);
        out.set_lk(d, x, q);
    }
    out.set_lk(c, d, nu);
    out.clear_tw(c);
    out.clear_tw(d);
    out.set_kind(
        c,
        CircleKind::TypeI {
            role: Role::Active,
            partner: d,
        },
        label,
    );
    out.set_kind(
        d,
        CircleKind::TypeI {
            role: Role::Inactive,
            partner: c,
        },
        None,
    );
    let belt_ids = belts(&mut out, ctx, t.intersections, &[c, d]);
    let mut touched = vec![c, d];
    touched.extend(belt_ids);
    recompute_clasps(&mut out, &touched);
    Ok(out)
}
