//! Diagonal substructures of the generic triangle-free graph.

use std::collections::BTreeSet;
use std::fmt;

use crate::coding::seq::is_antichain;
use crate::error::{CoreError, Result};
use crate::limit::EnumeratedPrefix;
use crate::structure::{FinStructure, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum G3Clause {
    A,
    B,
    C,
}

impl fmt::Display for G3Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            G3Clause::A => "a",
            G3Clause::B => "b",
            G3Clause::C => "c",
        })
    }
}

/// Witnesses for clauses (a)–(c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSubstructureCertificate {
    pub indices: Vec<usize>,
    /// `(i, m_i)`: the least earlier neighbour of `v_i`.
    pub least_neighbour: Vec<(usize, usize)>,
    /// `((i, j), n(i, j))` for non-edges `i < j` with `m_j < i`.
    pub common_neighbour: Vec<((usize, usize), usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum G3Verdict {
    Certificate(DiagonalSubstructureCertificate),
    Violation { clause: G3Clause, detail: String },
}

impl G3Verdict {
    pub fn is_certificate(&self) -> bool {
        matches!(self, G3Verdict::Certificate(_))
    }
}

/// Checks clauses (a)–(c) on the vertices `indices` of an enumerated graph.
pub fn g3_clauses(g: &FinStructure, indices: &[usize]) -> G3Verdict {
    let idx: Vec<usize> = indices.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let in_i: BTreeSet<usize> = idx.iter().copied().collect();
    let e = |a: usize, b: usize| g.holds2(0, a, b);
    let mut least = Vec::with_capacity(idx.len());
    for &i in &idx {
        match (0..i).find(|&m| e(m, i)) {
            Some(m) => least.push((i, m)),
            None => {
                return G3Verdict::Violation {
                    clause: G3Clause::A,
                    detail: format!("v_{i} has no earlier neighbour"),
                }
            }
        }
    }
    let m_of = |i: usize| least.iter().find(|p| p.0 == i).map(|p| p.1).expect("computed");
    let mut common = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            if e(i, j) || m_of(j) >= i {
                continue;
            }
            match (0..i).find(|&n| e(i, n) && e(j, n)) {
                None => {
                    return G3Verdict::Violation {
                        clause: G3Clause::B,
                        detail: format!("v_{i}, v_{j} have no common neighbour below {i}"),
                    }
                }
                Some(n) if in_i.contains(&n) => {
                    return G3Verdict::Violation {
                        clause: G3Clause::B,
                        detail: format!("n({i},{j}) = {n} lies in I"),
                    }
                }
                Some(n) => common.push(((i, j), n)),
            }
        }
    }
    for (a, p) in common.iter().enumerate() {
        if let Some(q) = common[a + 1..].iter().find(|q| q.1 == p.1) {
            return G3Verdict::Violation {
                clause: G3Clause::C,
                detail: format!("n{:?} = n{:?} = {}", p.0, q.0, p.1),
            };
        }
    }
    G3Verdict::Certificate(DiagonalSubstructureCertificate {
        indices: idx,
        least_neighbour: least,
        common_neighbour: common,
    })
}

/// Checks clauses (a)–(c) for an index set of a triangle-free prefix whose coding nodes form an
/// antichain.
pub fn g3_diagonal_check(prefix: &EnumeratedPrefix, indices: &[usize]) -> Result<G3Verdict> {
    if **prefix.spec().signature() != *Signature::graph() {
        return Err(CoreError::Domain("the clause checker needs a graph prefix".into()));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= prefix.size()) {
        return Err(CoreError::Domain(format!("index {bad} outside the prefix")));
    }
    let nodes: Vec<&[u8]> = indices.iter().map(|&i| prefix.coding_type(i)).collect();
    if !is_antichain(&nodes) {
        return Err(CoreError::Domain("index set does not give an antichain of coding nodes".into()));
    }
    Ok(g3_clauses(prefix.structure(), indices))
}
