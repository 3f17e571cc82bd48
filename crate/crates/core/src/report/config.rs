//! Configuration files: named footprint profiles plus scenarios, either
//! inline or as paths relative to the config file.
//!
//! ```json
//! {"default_profile": "flash-prompt-2025",
//!  "profiles": {"flash-prompt-2025": {...}},
//!  "scenarios": ["scenarios/manual.json", {"name": "inline", ...}]}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ReportError;
use crate::footprint::{FootprintError, FootprintProfile, FootprintProfileRepr};
use crate::scenario::{PipelineStage, Scenario, ScenarioRepr, WorkforceParams};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default_profile: Option<String>,
    pub profiles: BTreeMap<String, FootprintProfile>,
    pub scenarios: Vec<Scenario>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigRepr {
    #[serde(default)]
    default_profile: Option<String>,
    profiles: BTreeMap<String, FootprintProfileRepr>,
    scenarios: Vec<serde_json::Value>,
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    path.iter()
        .filter_map(|seg| match seg {
            Segment::Seq { index } => Some(index.to_string()),
            Segment::Map { key } => Some(key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => Some(variant.clone()),
            Segment::Unknown => None,
        })
        .fold(String::new(), |acc, seg| acc + "/" + &seg)
}

fn schema<T: DeserializeOwned>(
    origin: &str,
    prefix: &str,
    de: impl serde::Deserializer<'static, Error = serde_json::Error>,
) -> Result<T, ReportError> {
    serde_path_to_error::deserialize(de).map_err(|err| ReportError::Schema {
        origin: origin.to_string(),
        pointer: format!("{prefix}{}", pointer_of(err.path())),
        message: err.into_inner().to_string(),
    })
}

fn invariant(origin: &str, base: &str, err: FootprintError) -> ReportError {
    let pointer = match &err {
        FootprintError::Invariant { field, .. } => format!("{base}/{field}"),
        _ => base.to_string(),
    };
    ReportError::Invariant {
        origin: origin.to_string(),
        pointer,
        source: err,
    }
}

fn validate_scenario(repr: ScenarioRepr, origin: &str, base: &str) -> Result<Scenario, ReportError> {
    WorkforceParams::try_from(repr.workforce.clone())
        .map_err(|e| invariant(origin, &format!("{base}/workforce"), e))?;
    for (i, stage) in repr.stages.iter().enumerate() {
        PipelineStage::try_from(stage.clone()).map_err(|e| invariant(origin, &format!("{base}/stages/{i}"), e))?;
    }
    Scenario::try_from(repr).map_err(|e| invariant(origin, base, e))
}

impl Config {
    /// Parse config text. Relative scenario paths resolve against `base_dir`;
    /// `origin` names the text in error messages.
    pub fn parse(text: &str, origin: &str, base_dir: &Path) -> Result<Config, ReportError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let repr: ConfigRepr = serde_path_to_error::deserialize(&mut de).map_err(|err| ReportError::Schema {
            origin: origin.to_string(),
            pointer: pointer_of(err.path()),
            message: err.into_inner().to_string(),
        })?;

        let mut profiles = BTreeMap::new();
        for (name, p) in repr.profiles {
            let profile =
                FootprintProfile::try_from(p).map_err(|e| invariant(origin, &format!("/profiles/{name}"), e))?;
            profiles.insert(name, profile);
        }
        if let Some(name) = &repr.default_profile {
            if !profiles.contains_key(name) {
                return Err(ReportError::UnknownProfile(name.clone()));
            }
        }

        let mut scenarios: Vec<Scenario> = Vec::new();
        for (i, entry) in repr.scenarios.into_iter().enumerate() {
            let scenario = match entry {
                serde_json::Value::String(rel) => {
                    let path = base_dir.join(&rel);
                    let text = read(&path)?;
                    let file_origin = path.display().to_string();
                    let mut de = serde_json::Deserializer::from_str(&text);
                    let repr: ScenarioRepr =
                        serde_path_to_error::deserialize(&mut de).map_err(|err| ReportError::Schema {
                            origin: file_origin.clone(),
                            pointer: pointer_of(err.path()),
                            message: err.into_inner().to_string(),
                        })?;
                    validate_scenario(repr, &file_origin, "")?
                }
                inline => {
                    let base = format!("/scenarios/{i}");
                    let repr: ScenarioRepr = schema(origin, &base, inline)?;
                    validate_scenario(repr, origin, &base)?
                }
            };
            if scenarios.iter().any(|s| s.name() == scenario.name()) {
                return Err(ReportError::DuplicateScenario(scenario.name().to_string()));
            }
            scenarios.push(scenario);
        }

        Ok(Config {
            default_profile: repr.default_profile,
            profiles,
            scenarios,
        })
    }

    /// Self-contained JSON with scenarios inlined; [`Config::parse`] reads it
    /// back to an equal value.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Hex SHA-256 over the canonical (sorted-key, compact) JSON form.
    pub fn hash(&self) -> String {
        canonical_digest(&serde_json::to_value(self).expect("config serializes"))
    }

    /// Resolve a profile: the named one, else the default, else the only one.
    pub fn profile(&self, name: Option<&str>) -> Result<(&str, &FootprintProfile), ReportError> {
        let wanted = match name.or(self.default_profile.as_deref()) {
            Some(n) => n,
            None if self.profiles.len() == 1 => self.profiles.keys().next().expect("one profile"),
            None => return Err(ReportError::UnknownProfile("(none given)".into())),
        };
        self.profiles
            .get_key_value(wanted)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| ReportError::UnknownProfile(wanted.to_string()))
    }

    pub fn scenario(&self, name: &str) -> Option<&Scenario> {
        self.scenarios.iter().find(|s| s.name() == name)
    }
}

/// Hex SHA-256 of a JSON value's compact serialization. Object keys are
/// already sorted because `serde_json::Map` is ordered.
pub fn canonical_digest(value: &serde_json::Value) -> String {
    let digest = Sha256::digest(value.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn read(path: &Path) -> Result<String, ReportError> {
    fs::read_to_string(path).map_err(|e| ReportError::Io {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

/// Load and validate a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<Config, ReportError> {
    let path = path.as_ref();
    let text = read(path)?;
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Config::parse(&text, &path.display().to_string(), &base)
}
