//! Canonical forms of node sets under similarity.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;

use crate::coding::seq::{is_initial_segment, level_lex_cmp, meet_closure};
use crate::error::{CoreError, Result};

/// Which similarity notion a canonical form records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// Shape, relative lengths, coding flags and every passing number `t(|s|)`, `|s| < |t|`.
    PassingNumbers,
    /// Shape, relative lengths, coding flags and lex order.
    LexOnly,
    /// Lex-only data plus the literals between coding nodes, i.e. the induced structure.
    Structural,
}

impl Flavor {
    fn tag(self) -> char {
        match self {
            Flavor::PassingNumbers => 'P',
            Flavor::LexOnly => 'L',
            Flavor::Structural => 'S',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Nodes of a coding tree of 1-types (entries are literal codes).
    OneTypes,
    /// Nodes of `k^{<ω}`.
    Sequences,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSet {
    pub repr: Representation,
    pub nodes: Vec<Vec<u8>>,
}

impl NodeSet {
    pub fn one_types(nodes: Vec<Vec<u8>>) -> Self {
        NodeSet { repr: Representation::OneTypes, nodes }
    }

    pub fn sequences(nodes: Vec<Vec<u8>>) -> Self {
        NodeSet { repr: Representation::Sequences, nodes }
    }
}

/// Meet-closure data relabeled in canonical order (by relative length, then lex).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimilarityDiagram {
    pub flavor: Flavor,
    /// Longest proper initial segment within the meet closure.
    pub parent: Vec<Option<usize>>,
    /// Dense rank of node lengths.
    pub height: Vec<usize>,
    /// Membership in the original set.
    pub coding: Vec<bool>,
    /// Rank of the node's branch among its siblings, by the entry at the parent's length.
    pub sibling: Vec<usize>,
    /// `(i, j, v)`: node `j`'s entry at node `i`'s length, for the pairs the flavor records.
    pub annotations: Vec<(usize, usize, u8)>,
}

impl SimilarityDiagram {
    pub fn m(&self) -> usize {
        self.parent.len()
    }

    /// Indices of flagged nodes, ascending (hence by height for diagonal sets).
    pub fn coding_nodes(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.coding[i]).collect()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.m())
            .filter(|&j| self.parent[j] == Some(i))
            .sorted_by_key(|&j| self.sibling[j])
            .collect()
    }

    pub fn annotation(&self, i: usize, j: usize) -> Option<u8> {
        self.annotations.iter().find(|a| a.0 == i && a.1 == j).map(|a| a.2)
    }

    /// Path from the root to `i`, inclusive.
    pub fn ancestors(&self, i: usize) -> Vec<usize> {
        let mut path = vec![i];
        let mut cur = i;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Lex comparison of two incomparable nodes through the sibling ranks at their meet.
    pub fn lex_less(&self, a: usize, b: usize) -> Option<bool> {
        let pa = self.ancestors(a);
        let pb = self.ancestors(b);
        let k = pa.iter().zip(&pb).take_while(|(x, y)| x == y).count();
        if k == pa.len() || k == pb.len() {
            return None;
        }
        Some(self.sibling[pa[k]] < self.sibling[pb[k]])
    }

    /// Stable text encoding; catalogs sort and compare by it.
    pub fn encoding(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{}{}|", self.flavor.tag(), self.m());
        s.push_str(&self.parent.iter().map(|p| p.map_or("-".into(), |v| v.to_string())).join(","));
        s.push('|');
        s.push_str(&self.height.iter().join(","));
        s.push('|');
        s.extend(self.coding.iter().map(|&c| if c { '1' } else { '0' }));
        s.push('|');
        s.push_str(&self.sibling.iter().join(","));
        s.push('|');
        s.push_str(&self.annotations.iter().map(|(i, j, v)| format!("{i}.{j}={v}")).join(","));
        s
    }
}

/// Canonical form of a node set.
pub fn canonical_form_of<T: AsRef<[u8]>>(nodes: &[T], flavor: Flavor) -> Result<SimilarityDiagram> {
    if nodes.is_empty() {
        return Err(CoreError::Domain("canonical form of an empty set".into()));
    }
    let a: BTreeSet<Vec<u8>> = nodes.iter().map(|n| n.as_ref().to_vec()).collect();
    let mut mc: Vec<Vec<u8>> = meet_closure(nodes).into_iter().collect();
    mc.sort_by(|s, t| level_lex_cmp(s, t));
    let m = mc.len();
    let lengths: Vec<usize> = mc.iter().map(|s| s.len()).dedup().collect();
    let height: Vec<usize> =
        mc.iter().map(|s| lengths.binary_search(&s.len()).expect("present")).collect();
    let parent: Vec<Option<usize>> = (0..m)
        .map(|k| (0..k).rev().find(|&j| mc[j].len() < mc[k].len() && is_initial_segment(&mc[j], &mc[k])))
        .collect();
    let sibling: Vec<usize> = (0..m)
        .map(|k| match parent[k] {
            None => 0,
            Some(p) => {
                let at = mc[p].len();
                let d = mc[k][at];
                (0..m).filter(|&j| parent[j] == Some(p) && mc[j][at] < d).count()
            }
        })
        .collect();
    let coding: Vec<bool> = mc.iter().map(|s| a.contains(s)).collect();
    let mut annotations = Vec::new();
    match flavor {
        Flavor::LexOnly => {}
        Flavor::PassingNumbers => {
            for i in 0..m {
                for j in 0..m {
                    if mc[i].len() < mc[j].len() {
                        annotations.push((i, j, mc[j][mc[i].len()]));
                    }
                }
            }
        }
        Flavor::Structural => {
            for i in 0..m {
                for j in 0..m {
                    if coding[i] && coding[j] && mc[i].len() < mc[j].len() {
                        annotations.push((i, j, mc[j][mc[i].len()]));
                    }
                }
            }
        }
    }
    Ok(SimilarityDiagram { flavor, parent, height, coding, sibling, annotations })
}

pub fn canonical_form(set: &NodeSet, flavor: Flavor) -> Result<SimilarityDiagram> {
    canonical_form_of(&set.nodes, flavor)
}

/// Similarity via equality of canonical forms.
pub fn is_similar(a: &NodeSet, b: &NodeSet, flavor: Flavor) -> Result<bool> {
    if a.repr != b.repr {
        return Err(CoreError::Domain("cannot compare node sets of different representations".into()));
    }
    Ok(canonical_form(a, flavor)? == canonical_form(b, flavor)?)
}
