//! Input file formats. Element indices in a topology file refer to the
//! labels of the monoid file it accompanies.

use std::path::Path;
use std::sync::Arc;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use monact::bitset::ElementSet;
use monact::fraisse::{CategorySpec, FiniteCategory};
use monact::monogenic::MonogenicAction;
use monact::monoid::{detect_identity, validate_monoid, FiniteMonoid};
use monact::topology::{topology_from_base, MonoidTopology};

use crate::report::{CliError, InputDigest};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub size: usize,
    /// Row is the left factor.
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonogenicFile {
    pub step: Vec<usize>,
}

/// A monoid re-indexed so that its identity is `0`.
#[derive(Debug, Clone)]
pub struct LoadedMonoid {
    pub monoid: Arc<FiniteMonoid>,
    /// Input label of the identity.
    pub identity: usize,
    /// `old_to_new[x]` is the internal index of input element `x`.
    pub old_to_new: Vec<usize>,
}

pub fn read(path: &Path) -> Result<(String, InputDigest), CliError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    let digest = InputDigest::of(&shown, &bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Io {
        path: shown,
        message: e.to_string(),
    })?;
    Ok((text, digest))
}

pub fn parse<T: DeserializeOwned>(path: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Canonical JSON for any input file.
pub fn canonical<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("input files serialize")
}

impl MonoidFile {
    pub fn load(&self) -> Result<LoadedMonoid, CliError> {
        if self.table.len() != self.size {
            return Err(CliError::Invalid(format!(
                "size is {} but the table has {} rows",
                self.size,
                self.table.len()
            )));
        }
        let identity = detect_identity(&self.table).ok_or_else(|| {
            // re-run validation against 0 so the error names a witness
            match validate_monoid(&self.table, 0) {
                Err(e) => CliError::Core(e),
                Ok(_) => CliError::Invalid("no two-sided identity".into()),
            }
        })?;
        let relabeled = validate_monoid(&self.table, identity)?;
        Ok(LoadedMonoid {
            monoid: Arc::new(relabeled.monoid),
            identity,
            old_to_new: relabeled.old_to_new,
        })
    }
}

impl TopologyFile {
    pub fn load(&self, monoid: &LoadedMonoid) -> Result<MonoidTopology, CliError> {
        let n = monoid.monoid.size();
        let convert =
            |sets: &[Vec<usize>]| -> Result<Vec<ElementSet>, CliError> {
                sets.iter()
                    .map(|s| {
                        s.iter()
                            .map(|&x| {
                                monoid.old_to_new.get(x).copied().ok_or_else(|| {
                                    CliError::Invalid(format!("element {x} is out of range for size {n}"))
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                            .map(|v| ElementSet::from_indices(n, v))
                    })
                    .collect()
            };
        match (&self.base, &self.opens) {
            (Some(base), None) => Ok(topology_from_base(monoid.monoid.clone(), &convert(base)?)),
            (None, Some(opens)) => Ok(MonoidTopology::from_opens(monoid.monoid.clone(), convert(opens)?)?),
            _ => Err(CliError::Invalid(
                "a topology file has exactly one of `base` and `opens`".into(),
            )),
        }
    }
}

impl MonogenicFile {
    pub fn load(&self) -> Result<MonogenicAction, CliError> {
        Ok(MonogenicAction::new(self.step.clone())?)
    }
}

pub fn load_category(spec: &CategorySpec) -> Result<FiniteCategory, CliError> {
    Ok(FiniteCategory::from_spec(spec)?)
}
