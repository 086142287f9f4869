//! Catalogs of similarity types.

use std::collections::{BTreeMap, BTreeSet};

use crate::similarity::diagram::SimilarityDiagram;
use crate::structure::StructureCode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub diagram: SimilarityDiagram,
    pub encoding: String,
    /// Isomorphism class of the structure the type represents.
    pub structure: StructureCode,
    /// Witness nodes as digit strings; `None` marks an unwitnessed (inconclusive) type.
    pub witness: Option<Vec<String>>,
}

impl CatalogEntry {
    pub fn new(diagram: SimilarityDiagram, structure: StructureCode, witness: Option<Vec<String>>) -> Self {
        let encoding = diagram.encoding();
        CatalogEntry { diagram, encoding, structure, witness }
    }

    /// `encoding<TAB>structure<TAB>witness`, witness nodes separated by spaces.
    pub fn line(&self) -> String {
        let witness = match &self.witness {
            Some(w) => w.iter().map(|s| if s.is_empty() { "()" } else { s.as_str() }).collect::<Vec<_>>().join(" "),
            None => "inconclusive".to_string(),
        };
        format!("{}\t{}\t{}", self.encoding, self.structure, witness)
    }
}

/// Pairwise non-similar types keyed by encoding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeCatalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl TypeCatalog {
    pub fn new() -> Self {
        TypeCatalog::default()
    }

    /// Adds an entry; for repeated types the least witness is kept, so results do not depend on
    /// insertion order.
    pub fn insert(&mut self, entry: CatalogEntry) {
        match self.entries.get_mut(&entry.encoding) {
            None => {
                self.entries.insert(entry.encoding.clone(), entry);
            }
            Some(old) => {
                debug_assert_eq!(old.structure, entry.structure);
                let better = match (&old.witness, &entry.witness) {
                    (None, Some(_)) => true,
                    (Some(a), Some(b)) => b < a,
                    _ => false,
                };
                if better {
                    old.witness = entry.witness;
                }
            }
        }
    }

    pub fn into_entries(self) -> impl Iterator<Item = CatalogEntry> {
        self.entries.into_values()
    }

    pub fn merge(mut self, other: TypeCatalog) -> TypeCatalog {
        for e in other.entries.into_values() {
            self.insert(e);
        }
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn encodings(&self) -> BTreeSet<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn contains(&self, encoding: &str) -> bool {
        self.entries.contains_key(encoding)
    }

    pub fn witnessed(&self) -> usize {
        self.entries.values().filter(|e| e.witness.is_some()).count()
    }

    pub fn inconclusive(&self) -> usize {
        self.len() - self.witnessed()
    }

    /// Entries representing the given isomorphism class.
    pub fn restricted_to(&self, structure: &StructureCode) -> TypeCatalog {
        TypeCatalog {
            entries: self
                .entries
                .iter()
                .filter(|(_, e)| e.structure == *structure)
                .map(|(k, e)| (k.clone(), e.clone()))
                .collect(),
        }
    }

    /// Number of types per represented structure.
    pub fn counts_by_structure(&self) -> BTreeMap<StructureCode, usize> {
        let mut out = BTreeMap::new();
        for e in self.entries.values() {
            *out.entry(e.structure.clone()).or_insert(0) += 1;
        }
        out
    }

    /// One line per type, sorted by encoding.
    pub fn export(&self) -> String {
        self.entries.values().map(|e| e.line() + "\n").collect()
    }
}
