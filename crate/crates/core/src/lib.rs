//! Big Ramsey degrees of homogeneous binary structures via coding trees of 1-types.

pub mod amalgamation;
pub mod class;
pub mod coding;
pub mod degrees;
pub mod document;
pub mod error;
pub mod limit;
pub mod similarity;
pub mod structure;

pub use class::{ClassKind, ClassSpec};
pub use error::{CoreError, Result};
pub use structure::{
    embeddings, embeds, is_embedding, is_isomorphic, EmbeddingMap, FinStructure, Relation,
    Signature, StructureCode,
};
pub use amalgamation::{
    check_amalgamation_bounded, check_sdap_bounded, AmalgamationInstance, AmalgamationMode,
    AmalgamationOutcome, SdapOutcome,
};
pub use limit::{
    age, build_prefix, linear_order_from_keys, persistence_sample, sierpinski_color,
    sierpinski_coloring, EnumeratedPrefix, PairColoring, PersistenceReport, ScheduleEntry,
    SierpinskiColor,
};
pub use coding::sauer::{sauer_relation, UcFragment};
pub use coding::seq::{
    is_antichain, is_diagonal, is_strong_subtree, lex_compare, meet_closure, passing_number,
    SeqNode, TreeSubset,
};
pub use coding::{build_coding_tree, CodingTree, OneType};
pub use similarity::{
    canonical_form_of, enumerate_types, enumerate_types_with, is_similar, AntichainFilter,
    CatalogEntry, Flavor, GenerationOptions, NodeSet, SimilarityDiagram, TypeCatalog,
};
pub use degrees::{
    big_ramsey_degree, degree_table, devlin_degree, g3_clauses, g3_diagonal_check,
    integrality_holds, persistence_proxy, tangent_coefficients, DegreeRow, DegreeTable,
    DiagonalSubstructureCertificate, G3Clause, G3Verdict, Method, MethodValue, ProxyReport,
    TangentSeries,
};

/// Exact tangent coefficients over the rationals.
pub type ExactTangentSeries = TangentSeries<num_rational::BigRational>;
/// Floating-point tangent coefficients, for quick estimates only.
pub type FloatTangentSeries = TangentSeries<f64>;
