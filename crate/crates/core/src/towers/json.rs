//! JSON tower files.
//!
//! ```json
//! {
//!   "name": "knotted_dyadic_solenoid",
//!   "initial": "torus(2,3)",
//!   "prefix": [],
//!   "cycle": [{ "kind": "wind", "w": 2 }]
//! }
//! ```
//!
//! Stage fields: `kind` (`core_parallel`, `swallow`, `wind`, `generic`),
//! `knot` (swallow only), `w`, `pattern_genus` (integer or `"unknown"`),
//! `pattern_delta`, `declared_genus`, `concentric`. Omitted fields take the
//! defaults of the stage kind.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knots::KnotExpr;
use crate::laurent::LaurentPoly;

use super::{Stage, StageKind, Tower};

#[derive(Debug, Error)]
pub enum TowerFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerFile {
    name: String,
    initial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial_genus: Option<u64>,
    #[serde(default)]
    prefix: Vec<StageFile>,
    cycle: Vec<StageFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    knot: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pattern_genus: Option<GenusField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pattern_delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    declared_genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    concentric: Option<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GenusField {
    Known(u64),
    Unknown(String),
}

fn field_err(path: &str, message: impl Into<String>) -> TowerFileError {
    TowerFileError::Field {
        path: path.to_string(),
        message: message.into(),
    }
}

impl StageFile {
    fn into_stage(self, path: &str) -> Result<Stage, TowerFileError> {
        let need_w = |w: Option<u64>| w.ok_or_else(|| field_err(path, format!("{} stage needs 'w'", self.kind)));
        let mut stage = match self.kind.as_str() {
            "core_parallel" => Stage::core_parallel(),
            "swallow" => {
                let text = self
                    .knot
                    .as_deref()
                    .ok_or_else(|| field_err(path, "swallow stage needs 'knot'"))?;
                let knot: KnotExpr = text
                    .parse()
                    .map_err(|e| field_err(&format!("{path}.knot"), format!("{e}")))?;
                Stage::swallow(knot)
            }
            "wind" => Stage::wind(need_w(self.w)?),
            "generic" => Stage::generic(need_w(self.w)?, None),
            other => {
                return Err(field_err(
                    &format!("{path}.kind"),
                    format!("unknown stage kind '{other}'"),
                ))
            }
        };
        if self.knot.is_some() && !matches!(stage.kind, StageKind::Swallow(_)) {
            return Err(field_err(&format!("{path}.knot"), "only swallow stages take a knot"));
        }
        if let Some(w) = self.w {
            stage.winding = w;
        }
        match self.pattern_genus {
            Some(GenusField::Known(g)) => stage.pattern_genus = Some(g),
            Some(GenusField::Unknown(s)) if s == "unknown" => stage.pattern_genus = None,
            Some(GenusField::Unknown(s)) => {
                return Err(field_err(
                    &format!("{path}.pattern_genus"),
                    format!("expected an integer or \"unknown\", got \"{s}\""),
                ))
            }
            None => {}
        }
        if let Some(text) = self.pattern_delta {
            let delta: LaurentPoly = text
                .parse()
                .map_err(|e| field_err(&format!("{path}.pattern_delta"), format!("{e}")))?;
            stage.pattern_delta = Some(delta);
        }
        stage.declared_genus = self.declared_genus;
        if let Some(c) = self.concentric {
            stage.concentric = c;
        }
        Ok(stage)
    }

    fn from_stage(s: &Stage) -> Self {
        Self {
            kind: s.kind.tag().to_string(),
            knot: match &s.kind {
                StageKind::Swallow(k) => Some(k.to_string()),
                _ => None,
            },
            w: Some(s.winding),
            pattern_genus: Some(match s.pattern_genus {
                Some(g) => GenusField::Known(g),
                None => GenusField::Unknown("unknown".into()),
            }),
            pattern_delta: s.pattern_delta.as_ref().map(|d| d.to_string()),
            declared_genus: s.declared_genus,
            concentric: Some(s.concentric),
        }
    }
}

impl Tower {
    pub fn from_json(text: &str) -> Result<Tower, TowerFileError> {
        let file: TowerFile = serde_json::from_str(text)?;
        let initial: KnotExpr = file.initial.parse().map_err(|e| field_err("initial", format!("{e}")))?;
        let stages = |list: Vec<StageFile>, label: &str| -> Result<Vec<Stage>, TowerFileError> {
            list.into_iter()
                .enumerate()
                .map(|(i, s)| s.into_stage(&format!("{label}[{i}]")))
                .collect()
        };
        Ok(Tower {
            name: file.name,
            initial,
            initial_genus: file.initial_genus,
            prefix: stages(file.prefix, "prefix")?,
            cycle: stages(file.cycle, "cycle")?,
        })
    }

    /// Pretty-printed JSON with every stage field written out.
    pub fn to_json(&self) -> String {
        let file = TowerFile {
            name: self.name.clone(),
            initial: self.initial.to_string(),
            initial_genus: self.initial_genus,
            prefix: self.prefix.iter().map(StageFile::from_stage).collect(),
            cycle: self.cycle.iter().map(StageFile::from_stage).collect(),
        };
        serde_json::to_string_pretty(&file).expect("tower serializes")
    }
}
