//! A small link-diagram kernel: components are circular sequences of visits
//! to signed crossings, and linking numbers are half the signed count of
//! crossings between two components.
//!
//! Diagrams are produced from 3D polyline [`scene`]s by a generic
//! projection, written in a line-based text codec, and used by
//! [`crosscheck`] to test the abstract move rules against geometry. Gauss
//! codes need not be planar.

mod codec;
pub mod crosscheck;
mod geometry;
pub mod scene;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crosscheck::{crosscheck, default_grid, CrosscheckReport, Mismatch, Rule};
pub use scene::{scene, Params, SCENES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("linking of component {0} with itself")]
    SameComponent(String),
    #[error("duplicate component {0}")]
    DuplicateComponent(String),
    #[error("crossing {0} must be visited once over and once under")]
    BadCrossing(usize),
    #[error("crossing {0} has inconsistent signs")]
    SignMismatch(usize),
    #[error("signed crossing count between {0} and {1} is odd")]
    HalfIntegral(String, String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown scene {0}")]
    UnknownScene(String),
    #[error("scene {scene} has no parameter {param}")]
    UnknownParam { scene: String, param: String },
    #[error("parameter {param} = {value} is out of range")]
    ParamRange { param: String, value: i64 },
    #[error("abstract rule failed: {0}")]
    Rule(String),
    #[error("projection is not generic near {0}")]
    Degenerate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub visits: Vec<Visit>,
}

/// Components with their visit sequences; `signs[c]` is the sign of crossing `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub components: Vec<Component>,
    pub signs: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linking {
    pub value: i64,
    pub bit: u8,
}

impl Diagram {
    /// Checks that every crossing is visited exactly once over and once
    /// under, signs are `+1` or `-1`, and names are distinct.
    pub fn check(&self) -> Result<(), DiagramError> {
        let mut names = std::collections::BTreeSet::new();
        let mut seen = vec![(0u32, 0u32); self.signs.len()];
        for c in &self.components {
            if !names.insert(c.name.as_str()) {
                return Err(DiagramError::DuplicateComponent(c.name.clone()));
            }
            for v in &c.visits {
                let slot = seen.get_mut(v.crossing).ok_or(DiagramError::BadCrossing(v.crossing))?;
                if v.over {
                    slot.0 += 1;
                } else {
                    slot.1 += 1;
                }
            }
        }
        for (i, (&(o, u), &s)) in seen.iter().zip(&self.signs).enumerate() {
            if o != 1 || u != 1 || s.abs() != 1 {
                return Err(DiagramError::BadCrossing(i));
            }
        }
        Ok(())
    }

    pub fn component(&self, name: &str) -> Result<&Component, DiagramError> {
        self.components
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| DiagramError::UnknownComponent(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.components.iter().map(|c| c.name.as_str()).collect()
    }

    /// Rotates the visit sequence of one component, which describes the same
    /// diagram.
    pub fn rotated(&self, name: &str, by: usize) -> Result<Diagram, DiagramError> {
        let mut out = self.clone();
        let c = out
            .components
            .iter_mut()
            .find(|c| c.name == name)
            .ok_or_else(|| DiagramError::UnknownComponent(name.to_string()))?;
        if !c.visits.is_empty() {
            let k = by % c.visits.len();
            c.visits.rotate_left(k);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        codec::encode(self)
    }

    pub fn from_text(s: &str) -> Result<Diagram, DiagramError> {
        codec::decode(s)
    }
}

/// Half the signed number of crossings between components `a` and `b`.
pub fn lk_diagram(d: &Diagram, a: &str, b: &str) -> Result<Linking, DiagramError> {
    let ca = d.component(a)?;
    let cb = d.component(b)?;
    if a == b {
        return Err(DiagramError::SameComponent(a.to_string()));
    }
    let mut on_a: BTreeMap<usize, u32> = BTreeMap::new();
    for v in &ca.visits {
        *on_a.entry(v.crossing).or_default() += 1;
    }
    let mut sum: i64 = 0;
    for v in &cb.visits {
        if on_a.contains_key(&v.crossing) {
            sum += i64::from(*d.signs.get(v.crossing).ok_or(DiagramError::BadCrossing(v.crossing))?);
        }
    }
    if sum % 2 != 0 {
        return Err(DiagramError::HalfIntegral(a.to_string(), b.to_string()));
    }
    let value = sum / 2;
    Ok(Linking {
        value,
        bit: u8::from(value.rem_euclid(2) == 1),
    })
}
