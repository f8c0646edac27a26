use linkstate::{AmbientContext, SingularLinkState};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{apply, Move, MoveError};

/// One step of a script or trace. Hashes are SHA-256 digests of the canonical
/// state JSON; when present in input they are checked during replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    #[serde(flatten)]
    pub mv: Move,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre_hash: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post_hash: Option<String>,
}

impl MoveRecord {
    pub fn bare(mv: Move) -> Self {
        Self {
            mv,
            pre_hash: None,
            post_hash: None,
        }
    }
}

impl From<Move> for MoveRecord {
    fn from(mv: Move) -> Self {
        Self::bare(mv)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    /// `step` counts from 1.
    #[error("step {step} ({name}) failed")]
    Move {
        step: usize,
        name: &'static str,
        #[source]
        source: MoveError,
    },
    #[error("step {step}: {which} hash mismatch, expected {expected}, found {found}")]
    Hash {
        step: usize,
        which: &'static str,
        expected: String,
        found: String,
    },
}

impl ScriptError {
    pub fn step(&self) -> usize {
        match self {
            ScriptError::Move { step, .. } | ScriptError::Hash { step, .. } => *step,
        }
    }
}

/// Runs `script` from `state`, returning the final state and a trace with both
/// hashes filled in. Fails at the first bad step without partial results.
pub fn apply_script(
    state: &SingularLinkState,
    ctx: &AmbientContext,
    script: &[MoveRecord],
) -> Result<(SingularLinkState, Vec<MoveRecord>), ScriptError> {
    let mut cur = state.clone();
    let mut trace = Vec::with_capacity(script.len());
    for (i, rec) in script.iter().enumerate() {
        let step = i + 1;
        let pre = cur.hash();
        check(step, "pre", rec.pre_hash.as_ref(), &pre)?;
        let next = apply(&cur, ctx, &rec.mv).map_err(|source| ScriptError::Move {
            step,
            name: rec.mv.name(),
            source,
        })?;
        let post = next.hash();
        check(step, "post", rec.post_hash.as_ref(), &post)?;
        trace.push(MoveRecord {
            mv: rec.mv.clone(),
            pre_hash: Some(pre),
            post_hash: Some(post),
        });
        cur = next;
    }
    Ok((cur, trace))
}

fn check(step: usize, which: &'static str, expected: Option<&String>, found: &str) -> Result<(), ScriptError> {
    match expected {
        Some(e) if e != found => Err(ScriptError::Hash {
            step,
            which,
            expected: e.clone(),
            found: found.to_string(),
        }),
        _ => Ok(()),
    }
}
