//! Big Ramsey degrees.

pub mod g3;
pub mod persistence;
pub mod table;
pub mod tangent;

pub use g3::{g3_clauses, g3_diagonal_check, DiagonalSubstructureCertificate, G3Clause, G3Verdict};
pub use persistence::{persistence_proxy, ProxyReport};
pub use table::{big_ramsey_degree, degree_table, DegreeRow, DegreeTable, Method, MethodValue};
pub use tangent::{devlin_degree, integrality_holds, tangent_coefficients, TangentSeries};
