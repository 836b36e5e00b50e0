//! JSON subgroup descriptions shared by the CLI, the C API and certificates.
//!
//! ```json
//! {"alphabet": ["a", "b"], "generators": ["a", "b^2", "b a^2 b"]}
//! {"alphabet": ["x", "y"], "kernel": {"d": 3, "f": {"x": 1, "y": 0}}}
//! ```
//!
//! Generators named in a kernel map's `f` default to `0` when omitted.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stallings::{KernelMap, SchreierSystem, SubgroupGraph};
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDescription {
    pub d: u64,
    pub f: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDescription {
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelDescription>,
}

/// A parsed description: the graph plus, for kernels, the generator used
/// to shape the transversal.
#[derive(Debug, Clone)]
pub struct LoadedSubgroup {
    pub alphabet: Arc<Alphabet>,
    pub graph: SubgroupGraph,
    pub preferred: Option<usize>,
}

impl LoadedSubgroup {
    /// Schreier system for rewriting; needs finite index.
    pub fn system(&self) -> Result<SchreierSystem> {
        SchreierSystem::new(self.graph.clone(), self.preferred)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.alphabet)
    }
}

impl SubgroupDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        SubgroupDescription::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }

    pub fn build(&self) -> Result<LoadedSubgroup> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        match (&self.generators, &self.kernel) {
            (Some(gens), None) => {
                let words = gens
                    .iter()
                    .map(|g| Word::parse(g, &alphabet))
                    .collect::<Result<Vec<_>>>()?;
                let graph = SubgroupGraph::from_generators(&words, &alphabet)?;
                Ok(LoadedSubgroup {
                    alphabet,
                    graph,
                    preferred: None,
                })
            }
            (None, Some(k)) => {
                let map = KernelMap::from_named(&alphabet, k.d, k.f.iter().map(|(n, v)| (n.as_str(), *v)))?;
                let graph = SubgroupGraph::kernel(&map)?;
                Ok(LoadedSubgroup {
                    alphabet,
                    graph,
                    preferred: map.unit_generator(),
                })
            }
            _ => Err(Error::InvalidArgument(
                "subgroup description needs exactly one of \"generators\" or \"kernel\"".into(),
            )),
        }
    }
}
