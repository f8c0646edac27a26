use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use grouprep::{GroupModel, GroupSpec};
use linkstate::{AmbientContext, ContextSpec, SingularLinkState};
use moves::MoveRecord;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

/// On-disk scenario: a group, an ambient context, a state and an optional script.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub group: GroupSpec,
    #[serde(default)]
    pub context: ContextSpec,
    pub state: SingularLinkState,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub script: Vec<MoveRecord>,
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub ctx: AmbientContext,
    pub state: SingularLinkState,
    pub script: Vec<MoveRecord>,
}

impl Scenario {
    pub fn load(self) -> Result<Loaded> {
        if self.schema != SCHEMA {
            bail!("unsupported scenario schema {} (expected {SCHEMA})", self.schema);
        }
        let group = Arc::new(GroupModel::build(self.group).context("invalid group block")?);
        let ctx = AmbientContext::from_spec(group, &self.context).context("invalid context block")?;
        Ok(Loaded {
            ctx,
            state: self.state,
            script: self.script,
        })
    }
}

pub fn load_scenario(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sc: Scenario = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    sc.load()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScriptFile {
    Bare(Vec<MoveRecord>),
    Wrapped {
        schema: u32,
        script: Vec<MoveRecord>,
    },
}

/// Reads a script: a JSON array of move records, or `{"schema": 1, "script": [...]}`.
pub fn load_script(path: &Path) -> Result<Vec<MoveRecord>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))? {
        ScriptFile::Bare(s) => Ok(s),
        ScriptFile::Wrapped { schema, script } => {
            if schema != SCHEMA {
                bail!("unsupported script schema {schema}");
            }
            Ok(script)
        }
    }
}
