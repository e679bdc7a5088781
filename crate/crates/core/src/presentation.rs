//! Finitely presented groups: named generators plus relator words.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::word::Word;

/// A named generator. Its ordinal is its position in the owning
/// presentation's generator list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSymbol {
    pub name: String,
}

impl GeneratorSymbol {
    pub fn new(name: &str) -> Self {
        GeneratorSymbol {
            name: name.to_owned(),
        }
    }
}

/// A finitely presented group. Relators are stored cyclically reduced;
/// identity relators are dropped at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
    label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    DuplicateGenerator(String),
    /// A relator references generator index `gen` but only `ngens` exist.
    UndeclaredGenerator {
        gen: usize,
        ngens: usize,
    },
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::DuplicateGenerator(name) => {
                write!(f, "duplicate generator name `{name}`")
            }
            PresentationError::UndeclaredGenerator { gen, ngens } => {
                write!(
                    f,
                    "relator references generator #{gen} but only {ngens} are declared"
                )
            }
        }
    }
}

impl core::error::Error for PresentationError {}

impl Presentation {
    /// Builds a presentation, normalizing relators (free + cyclic
    /// reduction, identity relators dropped).
    pub fn new(
        generators: Vec<GeneratorSymbol>,
        relators: Vec<Word>,
        label: &str,
    ) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(PresentationError::DuplicateGenerator(g.name.clone()));
            }
        }
        let ngens = generators.len();
        let mut normalized = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(g) = r.max_gen() {
                if g >= ngens {
                    return Err(PresentationError::UndeclaredGenerator { gen: g, ngens });
                }
            }
            let (core, _) = r.cyclic_reduce();
            if !core.is_empty() {
                normalized.push(core);
            }
        }
        Ok(Presentation {
            generators,
            relators: normalized,
            label: label.to_owned(),
        })
    }

    /// Convenience constructor from plain name strings.
    pub fn from_names(
        names: &[&str],
        relators: Vec<Word>,
        label: &str,
    ) -> Result<Self, PresentationError> {
        Self::new(
            names.iter().map(|n| GeneratorSymbol::new(n)).collect(),
            relators,
            label,
        )
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Total relator length, a cheap size measure.
    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    /// The relator exponent-sum matrix (one row per relator, one column
    /// per generator), the input to abelianization.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_sums(self.ngens()))
            .collect()
    }

    /// Relator multiset up to rotation and inversion, deduplicated and
    /// sorted; the comparison key for golden-file structural equality.
    pub fn relator_canonical_set(&self) -> Vec<Word> {
        let mut set: Vec<Word> = self
            .relators
            .iter()
            .map(|r| r.relator_canonical())
            .collect();
        set.sort();
        set.dedup();
        set
    }

    /// Same generators and, up to free/cyclic reduction, rotation,
    /// inversion, duplicates, and order, the same relators.
    pub fn structurally_equal(&self, other: &Presentation) -> bool {
        self.generator_names() == other.generator_names()
            && self.relator_canonical_set() == other.relator_canonical_set()
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_owned();
        self
    }
}
