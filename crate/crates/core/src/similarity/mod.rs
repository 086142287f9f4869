//! Similarity of node sets and catalogs of similarity types.

pub mod catalog;
pub mod diagram;
pub mod generate;
pub mod scan;

pub use catalog::{CatalogEntry, TypeCatalog};
pub use diagram::{
    canonical_form, canonical_form_of, is_similar, Flavor, NodeSet, Representation,
    SimilarityDiagram,
};
pub use generate::{enumerate_types, enumerate_types_with, GenerationOptions};
pub use scan::{
    enumerate_structures, realized_types_all_enumerations, realized_types_in_depth,
    realized_types_uc, scan_indices, scan_structure, sauer_normal, AntichainFilter,
};
