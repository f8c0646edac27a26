use std::collections::{BTreeMap, BTreeSet};

use grouprep::{Element, GroupModel};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::StateError;

pub type CircleId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Active,
    Inactive,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::Active => Role::Inactive,
            Role::Inactive => Role::Active,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircleKind {
    /// One circle of a dual pair mapping homeomorphically onto its image.
    TypeI { role: Role, partner: CircleId },
    /// A circle double covering its image.
    TypeII,
}

/// A component of the singular link.
///
/// `label` is stored on active and type II circles only; the label of an
/// inactive circle is the inverse of its partner's.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularCircle {
    pub id: CircleId,
    pub kind: CircleKind,
    pub label: Option<Element>,
}

impl SingularCircle {
    pub fn is_type_ii(&self) -> bool {
        matches!(self.kind, CircleKind::TypeII)
    }

    pub fn role(&self) -> Option<Role> {
        match self.kind {
            CircleKind::TypeI { role, .. } => Some(role),
            CircleKind::TypeII => None,
        }
    }

    pub fn partner(&self) -> Option<CircleId> {
        match self.kind {
            CircleKind::TypeI { partner, .. } => Some(partner),
            CircleKind::TypeII => None,
        }
    }
}

fn key(a: CircleId, b: CircleId) -> (CircleId, CircleId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The decorated singular link: typed and labeled circles, the mod-2 linking
/// matrix, a clasp multiset realizing it, relative twist bits between type II
/// circles with equal labels, and an opaque homology tag.
///
/// Values are immutable from the outside in the sense that every move builds
/// a new state; the mutators here are the building blocks those moves use.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SingularLinkState {
    circles: BTreeMap<CircleId, SingularCircle>,
    lk: BTreeSet<(CircleId, CircleId)>,
    clasps: BTreeMap<(CircleId, CircleId), u32>,
    tw: BTreeMap<(CircleId, CircleId), bool>,
    homology_tag: String,
}

impl SingularLinkState {
    pub fn new(homology_tag: impl Into<String>) -> Self {
        Self {
            homology_tag: homology_tag.into(),
            ..Self::default()
        }
    }

    pub fn homology_tag(&self) -> &str {
        &self.homology_tag
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn circles(&self) -> impl Iterator<Item = &SingularCircle> {
        self.circles.values()
    }

    pub fn ids(&self) -> Vec<CircleId> {
        self.circles.keys().copied().collect()
    }

    pub fn circle(&self, id: CircleId) -> Result<&SingularCircle, StateError> {
        self.circles.get(&id).ok_or(StateError::UnknownCircle(id))
    }

    pub fn contains(&self, id: CircleId) -> bool {
        self.circles.contains_key(&id)
    }

    /// Smallest id larger than every id in use.
    pub fn next_id(&self) -> CircleId {
        self.circles.keys().next_back().map_or(0, |&m| m + 1)
    }

    /// Active circles of dual pairs, in id order.
    pub fn actives(&self) -> Vec<CircleId> {
        self.circles
            .values()
            .filter(|c| c.role() == Some(Role::Active))
            .map(|c| c.id)
            .collect()
    }

    pub fn type_ii(&self) -> Vec<CircleId> {
        self.circles
            .values()
            .filter(|c| c.is_type_ii())
            .map(|c| c.id)
            .collect()
    }

    pub fn insert_circle(&mut self, c: SingularCircle) {
        self.circles.insert(c.id, c);
    }

    /// Appends an active/inactive pair and returns `(active, inactive)` ids.
    pub fn push_pair(&mut self, label: Element) -> (CircleId, CircleId) {
        let a = self.next_id();
        let b = a + 1;
        self.insert_circle(SingularCircle {
            id: a,
            kind: CircleKind::TypeI {
                role: Role::Active,
                partner: b,
            },
            label: Some(label),
        });
        self.insert_circle(SingularCircle {
            id: b,
            kind: CircleKind::TypeI {
                role: Role::Inactive,
                partner: a,
            },
            label: None,
        });
        (a, b)
    }

    pub fn push_type_ii(&mut self, label: Element) -> CircleId {
        let id = self.next_id();
        self.insert_circle(SingularCircle {
            id,
            kind: CircleKind::TypeII,
            label: Some(label),
        });
        id
    }

    /// Removes a circle with every linking, clasp and twist entry touching it.
    pub fn remove_circle(&mut self, id: CircleId) {
        self.circles.remove(&id);
        self.lk.retain(|&(a, b)| a != id && b != id);
        self.clasps.retain(|&(a, b), _| a != id && b != id);
        self.tw.retain(|&(a, b), _| a != id && b != id);
    }

    pub fn set_kind(&mut self, id: CircleId, kind: CircleKind, label: Option<Element>) {
        let c = self.circles.get_mut(&id).expect("circle exists");
        c.kind = kind;
        c.label = label;
    }

    /// Partner of a type I circle; a type II circle is its own dual.
    pub fn dual(&self, id: CircleId) -> Result<CircleId, StateError> {
        Ok(self.circle(id)?.partner().unwrap_or(id))
    }

    pub fn role(&self, id: CircleId) -> Result<Option<Role>, StateError> {
        Ok(self.circle(id)?.role())
    }

    /// The active member of the pair containing `id`.
    pub fn active_of(&self, id: CircleId) -> Result<CircleId, StateError> {
        let c = self.circle(id)?;
        match c.kind {
            CircleKind::TypeI {
                role: Role::Active, ..
            } => Ok(id),
            CircleKind::TypeI { partner, .. } => Ok(partner),
            CircleKind::TypeII => Err(StateError::NotTypeI(id)),
        }
    }

    /// The group element read along the circle: stored for active and type II
    /// circles, inverted from the partner for inactive ones.
    pub fn label(&self, group: &GroupModel, id: CircleId) -> Result<Element, StateError> {
        let c = self.circle(id)?;
        match (&c.kind, &c.label) {
            (CircleKind::TypeI { role: Role::Inactive, partner }, _) => {
                let p = self.circle(*partner)?;
                let l = p.label.as_ref().ok_or(StateError::MissingLabel(*partner))?;
                Ok(group.inverse(l))
            }
            (_, Some(l)) => Ok(l.clone()),
            (_, None) => Err(StateError::MissingLabel(id)),
        }
    }

    /// Label of the dual pair containing `id`, read on its active circle.
    pub fn pair_label(&self, group: &GroupModel, id: CircleId) -> Result<Element, StateError> {
        self.label(group, self.active_of(id)?)
    }

    pub fn lk(&self, a: CircleId, b: CircleId) -> bool {
        a != b && self.lk.contains(&key(a, b))
    }

    pub fn set_lk(&mut self, a: CircleId, b: CircleId, v: bool) {
        assert_ne!(a, b, "linking matrix has zero diagonal");
        if v {
            self.lk.insert(key(a, b));
        } else {
            self.lk.remove(&key(a, b));
        }
    }

    pub fn toggle_lk(&mut self, a: CircleId, b: CircleId) {
        let v = self.lk(a, b);
        self.set_lk(a, b, !v);
    }

    pub fn lk_pairs(&self) -> impl Iterator<Item = (CircleId, CircleId)> + '_ {
        self.lk.iter().copied()
    }

    /// Circles linking `a` an odd number of times, in id order.
    pub fn neighbors(&self, a: CircleId) -> Vec<CircleId> {
        let mut out: Vec<CircleId> = self
            .lk
            .iter()
            .filter_map(|&(x, y)| {
                if x == a {
                    Some(y)
                } else if y == a {
                    Some(x)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// `lk(c, L - c)` mod 2.
    pub fn lk_total(&self, c: CircleId) -> Result<bool, StateError> {
        self.circle(c)?;
        Ok(self.neighbors(c).len() % 2 == 1)
    }

    pub fn clasp_count(&self, a: CircleId, b: CircleId) -> u32 {
        self.clasps.get(&key(a, b)).copied().unwrap_or(0)
    }

    pub fn add_clasp(&mut self, a: CircleId, b: CircleId) {
        *self.clasps.entry(key(a, b)).or_insert(0) += 1;
    }

    /// Removes one clasp between `a` and `b`; false if there was none.
    pub fn remove_clasp(&mut self, a: CircleId, b: CircleId) -> bool {
        match self.clasps.get_mut(&key(a, b)) {
            Some(n) if *n > 1 => {
                *n -= 1;
                true
            }
            Some(_) => {
                self.clasps.remove(&key(a, b));
                true
            }
            None => false,
        }
    }

    /// Removes a clasp if one is present, otherwise adds one. Keeps the
    /// clasp multiset minimal when a linking parity is flipped.
    pub fn toggle_clasp(&mut self, a: CircleId, b: CircleId) {
        if !self.remove_clasp(a, b) {
            self.add_clasp(a, b);
        }
    }

    /// Clasps as `((a, b), multiplicity)` with `a <= b`.
    pub fn clasps(&self) -> impl Iterator<Item = ((CircleId, CircleId), u32)> + '_ {
        self.clasps.iter().map(|(&k, &n)| (k, n))
    }

    pub fn total_clasps(&self) -> u32 {
        self.clasps.values().sum()
    }

    /// Drops every clasp touching `id`.
    pub fn clear_clasps(&mut self, id: CircleId) {
        self.clasps.retain(|&(a, b), _| a != id && b != id);
    }

    pub fn clasps_touching(&self, id: CircleId) -> u32 {
        self.clasps
            .iter()
            .filter(|(&(a, b), _)| a == id || b == id)
            .map(|(_, &n)| n)
            .sum()
    }

    /// No linking and no clasps with anything.
    pub fn is_split(&self, id: CircleId) -> bool {
        self.neighbors(id).is_empty() && self.clasps_touching(id) == 0
    }

    pub fn tw(&self, a: CircleId, b: CircleId) -> Option<bool> {
        self.tw.get(&key(a, b)).copied()
    }

    pub fn set_tw(&mut self, a: CircleId, b: CircleId, v: bool) {
        assert_ne!(a, b, "tw is defined on distinct circles");
        self.tw.insert(key(a, b), v);
    }

    pub fn flip_tw(&mut self, a: CircleId, b: CircleId) {
        if let Some(v) = self.tw.get_mut(&key(a, b)) {
            *v = !*v;
        }
    }

    /// Drops every twist entry touching `id`.
    pub fn clear_tw(&mut self, id: CircleId) {
        self.tw.retain(|&(a, b), _| a != id && b != id);
    }

    pub fn tw_entries(&self) -> impl Iterator<Item = ((CircleId, CircleId), bool)> + '_ {
        self.tw.iter().map(|(&k, &v)| (k, v))
    }

    /// Swaps the roles in the dual pair containing `id`; the pair's label is inverted.
    pub fn flip_activity(&self, group: &GroupModel, id: CircleId) -> Result<Self, StateError> {
        let c = self.circle(id)?;
        let CircleKind::TypeI { partner, .. } = c.kind else {
            return Err(StateError::NotTypeI(id));
        };
        let active = self.active_of(id)?;
        let inactive = if active == id { partner } else { id };
        let label = self.pair_label(group, id)?;
        let mut out = self.clone();
        out.set_kind(
            active,
            CircleKind::TypeI {
                role: Role::Inactive,
                partner: inactive,
            },
            None,
        );
        out.set_kind(
            inactive,
            CircleKind::TypeI {
                role: Role::Active,
                partner: active,
            },
            Some(group.inverse(&label)),
        );
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serializes")
    }

    /// SHA-256 of the canonical JSON serialization, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum KindRepr {
    Active,
    Inactive,
    TypeIi,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleRepr {
    id: CircleId,
    kind: KindRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partner: Option<CircleId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Element>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRepr {
    circles: Vec<CircleRepr>,
    #[serde(default)]
    lk: Vec<[CircleId; 2]>,
    #[serde(default)]
    clasps: Vec<[CircleId; 2]>,
    #[serde(default)]
    tw: Vec<(CircleId, CircleId, u8)>,
    #[serde(default)]
    homology_tag: String,
}

impl Serialize for SingularLinkState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let circles = self
            .circles
            .values()
            .map(|c| {
                let (kind, partner) = match c.kind {
                    CircleKind::TypeI {
                        role: Role::Active,
                        partner,
                    } => (KindRepr::Active, Some(partner)),
                    CircleKind::TypeI {
                        role: Role::Inactive,
                        partner,
                    } => (KindRepr::Inactive, Some(partner)),
                    CircleKind::TypeII => (KindRepr::TypeIi, None),
                };
                CircleRepr {
                    id: c.id,
                    kind,
                    partner,
                    label: c.label.clone(),
                }
            })
            .collect();
        let clasps = self
            .clasps
            .iter()
            .flat_map(|(&(a, b), &n)| std::iter::repeat([a, b]).take(n as usize))
            .collect();
        StateRepr {
            circles,
            lk: self.lk.iter().map(|&(a, b)| [a, b]).collect(),
            clasps,
            tw: self.tw.iter().map(|(&(a, b), &v)| (a, b, u8::from(v))).collect(),
            homology_tag: self.homology_tag.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SingularLinkState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = StateRepr::deserialize(d)?;
        let mut st = SingularLinkState::new(r.homology_tag);
        for c in r.circles {
            if st.contains(c.id) {
                return Err(D::Error::custom(format!("duplicate circle id {}", c.id)));
            }
            let kind = match (c.kind, c.partner) {
                (KindRepr::Active, Some(p)) => CircleKind::TypeI {
                    role: Role::Active,
                    partner: p,
                },
                (KindRepr::Inactive, Some(p)) => CircleKind::TypeI {
                    role: Role::Inactive,
                    partner: p,
                },
                (KindRepr::TypeIi, None) => CircleKind::TypeII,
                (KindRepr::TypeIi, Some(_)) => {
                    return Err(D::Error::custom(format!(
                        "type II circle {} cannot have a partner",
                        c.id
                    )))
                }
                (_, None) => {
                    return Err(D::Error::custom(format!(
                        "type I circle {} needs a partner",
                        c.id
                    )))
                }
            };
            st.insert_circle(SingularCircle {
                id: c.id,
                kind,
                label: c.label,
            });
        }
        for [a, b] in r.lk {
            if a == b {
                return Err(D::Error::custom(format!("lk entry on the diagonal at {a}")));
            }
            if !st.lk.insert(key(a, b)) {
                return Err(D::Error::custom(format!("duplicate lk entry ({a},{b})")));
            }
        }
        for [a, b] in r.clasps {
            st.add_clasp(a, b);
        }
        for (a, b, v) in r.tw {
            if a == b || v > 1 {
                return Err(D::Error::custom(format!("bad tw entry ({a},{b},{v})")));
            }
            if st.tw.insert(key(a, b), v == 1).is_some() {
                return Err(D::Error::custom(format!("duplicate tw entry ({a},{b})")));
            }
        }
        Ok(st)
    }
}
