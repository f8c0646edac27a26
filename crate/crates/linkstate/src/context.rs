use std::sync::Arc;

use grouprep::{Element, F2Subspace, F2Vec, GroupModel};
use serde::{Deserialize, Serialize};

use crate::StateError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualSphere {
    #[default]
    None,
    Framed,
    Unframed,
}

/// Serialized `context` block of a scenario.
///
/// `mu_pi3` lists generators of the subspace `mu(pi_3 X)`, each written as the
/// set of order-two elements it sums. `delta_self` lists group elements whose
/// images under the mod-2 abelianization span `Delta(Self)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    #[serde(default)]
    pub s_characteristic: bool,
    #[serde(default)]
    pub dual_sphere: DualSphere,
    #[serde(default)]
    pub mu_pi3: Vec<Vec<Element>>,
    #[serde(default)]
    pub delta_self: Vec<Element>,
    #[serde(default)]
    pub based: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub boundary_note: String,
}

/// The ambient hypotheses under which a singular link is read.
#[derive(Clone, Debug)]
pub struct AmbientContext {
    pub group: Arc<GroupModel>,
    pub s_characteristic: bool,
    pub dual_sphere: DualSphere,
    pub mu_pi3: F2Subspace,
    pub delta_self: F2Subspace,
    pub based: bool,
    pub boundary_note: String,
}

impl AmbientContext {
    /// A context with trivial subspaces.
    pub fn new(group: Arc<GroupModel>, s_characteristic: bool, dual_sphere: DualSphere) -> Self {
        let t = group.two_torsion().len();
        let h = group.h1_dim();
        Self {
            group,
            s_characteristic,
            dual_sphere,
            mu_pi3: F2Subspace::zero(t),
            delta_self: F2Subspace::zero(h),
            based: false,
            boundary_note: String::new(),
        }
    }

    pub fn from_spec(group: Arc<GroupModel>, spec: &ContextSpec) -> Result<Self, StateError> {
        let mut ctx = Self::new(group.clone(), spec.s_characteristic, spec.dual_sphere);
        ctx.based = spec.based;
        ctx.boundary_note = spec.boundary_note.clone();
        let t = group.two_torsion().len();
        for gen in &spec.mu_pi3 {
            let mut v = F2Vec::zeros(t);
            for g in gen {
                let i = group
                    .two_torsion_index(&group.normalize(g)?)
                    .ok_or_else(|| StateError::NotTwoTorsion(g.clone()))?;
                v.flip(i);
            }
            ctx.mu_pi3.push(v)?;
        }
        for g in &spec.delta_self {
            ctx.delta_self.push(group.eps(&group.normalize(g)?)?)?;
        }
        Ok(ctx)
    }

    /// Whether the dual-pair linking parity constraint applies to states in this context.
    pub fn lemma_parity_applies(&self) -> bool {
        self.s_characteristic && self.dual_sphere != DualSphere::None
    }

    pub fn with_dual(&self, dual: DualSphere) -> Self {
        Self {
            dual_sphere: dual,
            ..self.clone()
        }
    }
}
