//! The JSON manifest: the single interchange format for built objects.
//!
//! Manifests are deterministic for fixed inputs; `timing_ms` is the one
//! field excluded from byte-level comparisons.

use serde::{Deserialize, Serialize};

use exotic4_core::assemble::{AssembledManifold, KeepNames};
use exotic4_core::blocks::BlockDescriptor;
use exotic4_core::constructions::{classify_homeo, HomeoType, Pi1Verdict};
use exotic4_core::grammar::{print_presentation, print_word};
use exotic4_core::presentation::Presentation;
use exotic4_core::snf::abelianize;

pub const TOOL_NAME: &str = "exotic4";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const MINIMALITY_NOTE: &str =
    "minimal per the symplectic-sum minimality criteria (cited result; not machine-checked)";

/// Build recipe: enough to reconstruct the object bit-for-bit.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Recipe {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharJson {
    pub e: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub chi_h: i64,
    pub b1: i64,
    pub b2plus: i64,
    pub b2minus: i64,
}

impl From<exotic4_core::blocks::CharNumbers> for CharJson {
    fn from(c: exotic4_core::blocks::CharNumbers) -> Self {
        CharJson {
            e: c.e,
            sigma: c.sigma,
            c1sq: c.c1sq,
            chi_h: c.chi_h,
            b1: c.b1,
            b2plus: c.b2plus,
            b2minus: c.b2minus,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundaryJson {
    pub genus: usize,
    pub marking: Vec<String>,
    pub meridian: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerdictJson {
    pub status: String,
    pub h1: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cosets_defined: Option<usize>,
    pub simplified_gens: usize,
    pub simplified_relators: usize,
    pub tietze_trace: Vec<String>,
}

impl VerdictJson {
    pub fn from_verdict(v: &Pi1Verdict) -> Self {
        VerdictJson {
            status: v.status.to_string(),
            h1: v.h1.to_string(),
            coset_index: v.coset_index,
            cosets_defined: v.cosets_defined,
            simplified_gens: v.simplified_gens,
            simplified_relators: v.simplified_relators,
            tietze_trace: v.tietze_trace.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomeoJson {
    pub b2plus: i64,
    pub b2minus: i64,
    pub parity: String,
    pub display: String,
}

impl From<HomeoType> for HomeoJson {
    fn from(h: HomeoType) -> Self {
        HomeoJson {
            b2plus: h.b2plus,
            b2minus: h.b2minus,
            parity: if h.odd { "odd" } else { "even" }.to_string(),
            display: h.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub recipe: Recipe,
    pub label: String,
    pub generators: Vec<String>,
    /// The presentation in the `<gens | relators>` text grammar. For
    /// assembled manifolds this is the identified (merged) form.
    pub presentation: String,
    pub h1: String,
    pub char: CharJson,
    pub symplectic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sections: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homeo: Option<HomeoJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimality: Option<String>,
    pub discrepancies: Vec<String>,
    pub timing_ms: u128,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(src)?)
    }
}

fn presentation_json(p: &Presentation) -> (Vec<String>, String, String) {
    let gens = p.generator_names().iter().map(|s| s.to_string()).collect();
    let text = print_presentation(p);
    let h1 = abelianize(p).to_string();
    (gens, text, h1)
}

/// Manifest for a building block.
pub fn block_manifest(recipe: Recipe, block: &BlockDescriptor, timing_ms: u128) -> Manifest {
    let names = block.complement_presentation.generator_names();
    let (gens, text, h1) = presentation_json(&block.complement_presentation);
    Manifest {
        tool: TOOL_NAME.to_string(),
        version: TOOL_VERSION.to_string(),
        recipe,
        label: block.label.clone(),
        generators: gens,
        presentation: text,
        h1,
        char: block.char_numbers.into(),
        symplectic: block.symplectic,
        sections: Some(block.sections),
        boundary: Some(BoundaryJson {
            genus: block.boundary_genus,
            marking: block
                .boundary_marking
                .iter()
                .map(|w| print_word(w, &names))
                .collect(),
            meridian: print_word(&block.meridian, &names),
        }),
        verdict: None,
        homeo: None,
        minimality: None,
        discrepancies: block.notes.iter().map(|s| s.to_string()).collect(),
        timing_ms,
    }
}

/// Manifest for an assembled manifold, with optional verification
/// verdict (and the homeomorphism type when the verdict allows it).
pub fn manifold_manifest(
    recipe: Recipe,
    m: &AssembledManifold,
    keep: KeepNames,
    verdict: Option<&Pi1Verdict>,
    timing_ms: u128,
) -> Manifest {
    let merged = m.identified(keep);
    let (gens, text, h1) = presentation_json(&merged);
    let homeo = verdict
        .and_then(|v| classify_homeo(m, v).ok())
        .map(HomeoJson::from);
    Manifest {
        tool: TOOL_NAME.to_string(),
        version: TOOL_VERSION.to_string(),
        recipe,
        label: m.label.clone(),
        generators: gens,
        presentation: text,
        h1,
        char: m.char_numbers.into(),
        symplectic: m.symplectic,
        sections: None,
        boundary: None,
        verdict: verdict.map(VerdictJson::from_verdict),
        homeo,
        minimality: m.symplectic.then(|| MINIMALITY_NOTE.to_string()),
        discrepancies: m.notes.iter().map(|s| s.to_string()).collect(),
        timing_ms,
    }
}

/// Strips the timing field; the rest of the manifest must be
/// byte-identical across runs.
pub fn strip_timing(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("valid manifest JSON");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing_ms");
    }
    let mut s = serde_json::to_string_pretty(&v).expect("manifest serializes");
    s.push('\n');
    s
}
