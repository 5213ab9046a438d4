//! The on-disk presentation format: a single human-writable JSON document.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "carrier": 2,
//!   "ops": { "join": { "arity": 2, "table": [0, 1, 1, 1] } },
//!   "profile": [0, 1, 2],
//!   "name": "slat.join_bot.2"
//! }
//! ```
//!
//! `carrier` is either the carrier size or a list of distinct element
//! labels; tables are flat arrays in the big-endian tuple encoding, checked
//! against `carrier^arity`. `format_version` is mandatory. Serialization is
//! deterministic: keys are sorted, generators are emitted in name order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::clone::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::ops::{Carrier, Element, FiniteOp};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierSpec {
    Size(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpSpec {
    pub arity: usize,
    pub table: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDocument {
    pub format_version: u32,
    pub carrier: CarrierSpec,
    pub ops: BTreeMap<String, OpSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl PresentationDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: PresentationDocument = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("malformed presentation document: {e}")))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(Error::input(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_presentation(&self) -> Result<AlgebraPresentation> {
        let carrier = match &self.carrier {
            CarrierSpec::Size(k) => Carrier::new(*k)?,
            CarrierSpec::Labels(labels) => Carrier::with_labels(labels.clone())?,
        };
        let mut generators = BTreeMap::new();
        for (name, spec) in &self.ops {
            let op = FiniteOp::from_table(carrier.size(), spec.arity, spec.table.clone())
                .map_err(|e| Error::input(format!("operation {name:?}: {e}")))?;
            generators.insert(name.clone(), op);
        }
        let profile: Option<BTreeSet<usize>> =
            self.profile.as_ref().map(|v| v.iter().copied().collect());
        let mut pres = AlgebraPresentation::with_profile(carrier, generators, profile)?;
        if let Some(name) = &self.name {
            pres = pres.named(name.clone());
        }
        if let Some(description) = &self.description {
            pres = pres.described(description.clone());
        }
        Ok(pres)
    }

    pub fn from_presentation(pres: &AlgebraPresentation) -> Self {
        let carrier = match pres.carrier().labels() {
            Some(labels) => CarrierSpec::Labels(labels.to_vec()),
            None => CarrierSpec::Size(pres.carrier_size()),
        };
        let ops = pres
            .generators()
            .iter()
            .map(|(name, op)| {
                (
                    name.clone(),
                    OpSpec {
                        arity: op.arity(),
                        table: op.table().to_vec(),
                    },
                )
            })
            .collect();
        PresentationDocument {
            format_version: FORMAT_VERSION,
            carrier,
            ops,
            profile: pres.profile().map(|set| set.iter().copied().collect()),
            name: pres.name().map(str::to_string),
            description: pres.description().map(str::to_string),
        }
    }

    /// Deterministic pretty rendering with a trailing newline.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.render())
            .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
    }
}

/// Load a presentation from a library name or a document path: an existing
/// file wins, then the catalog; `affine_bound` feeds affine library entries.
pub fn load_presentation(input: &str, affine_bound: usize) -> Result<AlgebraPresentation> {
    let path = std::path::Path::new(input);
    if path.is_file() {
        return PresentationDocument::read_file(path)?.to_presentation();
    }
    match crate::library::resolve(input, affine_bound) {
        Ok(pres) => Ok(pres),
        Err(_) if input.contains('/') || input.ends_with(".json") => Err(Error::input(format!(
            "no such file: {input}"
        ))),
        Err(e) => Err(Error::input(format!(
            "{input:?} is neither a readable file nor a library name ({e})"
        ))),
    }
}
