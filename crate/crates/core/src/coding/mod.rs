//! Coding trees of 1-types over enumerated prefixes.

pub mod sauer;
pub mod seq;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Deref;

use rayon::prelude::*;

use crate::class::ClassSpec;
use crate::error::{CoreError, Result};
use crate::limit::EnumeratedPrefix;
use crate::structure::FinStructure;

/// A 1-type over `K_n`: entry `i` is the pair pattern `pattern(v_i, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneType(pub Vec<u8>);

impl OneType {
    pub fn stage(&self) -> usize {
        self.0.len()
    }

    pub fn literals(&self) -> &[u8] {
        &self.0
    }
}

impl Deref for OneType {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

/// Literal codes shown as their rank among the class's allowed patterns.
pub fn digit_string(spec: &ClassSpec, literals: &[u8]) -> String {
    literals
        .iter()
        .map(|&c| match spec.digit_of(c) {
            Some(d) => char::from_digit(d as u32, 36).unwrap_or('?'),
            None => '?',
        })
        .collect()
}

/// Inverse of [`digit_string`].
pub fn parse_digits(spec: &ClassSpec, digits: &str) -> Result<Vec<u8>> {
    digits
        .chars()
        .map(|ch| {
            ch.to_digit(36)
                .and_then(|d| spec.allowed_patterns().get(d as usize).copied())
                .ok_or_else(|| CoreError::Domain(format!("bad digit `{ch}` for {}", spec.name())))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub ty: OneType,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// `Some(n)` when this node is the coding node `c(n)`.
    pub coding: Option<usize>,
}

/// All realizable 1-types of stage at most `depth`, ordered by level and then lexicographically.
#[derive(Clone, Debug)]
pub struct CodingTree {
    spec: ClassSpec,
    structure: FinStructure,
    depth: usize,
    nodes: Vec<TreeNode>,
    level_start: Vec<usize>,
    coding: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
}

pub fn build_coding_tree(prefix: &EnumeratedPrefix, depth: usize) -> Result<CodingTree> {
    if depth > prefix.size() {
        return Err(CoreError::Domain(format!(
            "depth {depth} exceeds prefix size {}",
            prefix.size()
        )));
    }
    let spec = prefix.spec().clone();
    let base = prefix.structure();
    let mut nodes = vec![TreeNode { ty: OneType(Vec::new()), parent: None, children: Vec::new(), coding: None }];
    let mut level_start = vec![0, 1];
    for level in 0..depth {
        let (lo, hi) = (level_start[level], level_start[level + 1]);
        let kids: Vec<Vec<Vec<u8>>> = (lo..hi)
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                let mut lits = nodes[i].ty.0.clone();
                for &c in spec.allowed_patterns() {
                    lits.push(c);
                    if spec.last_literal_ok(base, &lits) {
                        out.push(lits.clone());
                    }
                    lits.pop();
                }
                out
            })
            .collect();
        for (off, list) in kids.into_iter().enumerate() {
            let parent = lo + off;
            for lits in list {
                let id = nodes.len();
                nodes[parent].children.push(id);
                nodes.push(TreeNode { ty: OneType(lits), parent: Some(parent), children: Vec::new(), coding: None });
            }
        }
        level_start.push(nodes.len());
    }
    let index: HashMap<Vec<u8>, usize> =
        nodes.iter().enumerate().map(|(i, n)| (n.ty.0.clone(), i)).collect();
    let top = depth.min(prefix.size() - 1);
    let mut coding = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let id = *index.get(prefix.coding_type(n)).ok_or_else(|| {
            CoreError::Internal(format!("type of v_{n} is not realizable over K_{n}"))
        })?;
        nodes[id].coding = Some(n);
        coding.push(id);
    }
    let structure = base.initial(top + 1);
    Ok(CodingTree { spec, structure, depth, nodes, level_start, coding, index })
}

impl CodingTree {
    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    /// The prefix structure on the coded vertices `v_0, .., v_top`.
    pub fn structure(&self) -> &FinStructure {
        &self.structure
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    /// Node ids on level `l`.
    pub fn level(&self, l: usize) -> std::ops::Range<usize> {
        self.level_start[l]..self.level_start[l + 1]
    }

    pub fn find(&self, literals: &[u8]) -> Option<usize> {
        self.index.get(literals).copied()
    }

    /// Node id of `c(n)`.
    pub fn coding_node(&self, n: usize) -> Option<usize> {
        self.coding.get(n).copied()
    }

    /// Number of coding nodes present.
    pub fn coding_len(&self) -> usize {
        self.coding.len()
    }

    /// Nodes on level `l` with at least two children.
    pub fn splitting_nodes(&self, l: usize) -> Vec<usize> {
        self.level(l).filter(|&i| self.nodes[i].children.len() >= 2).collect()
    }

    pub fn digits(&self, id: usize) -> String {
        digit_string(&self.spec, &self.nodes[id].ty)
    }

    /// One line per node: `level parent digits coding`, with `-` for absent fields.
    pub fn dump(&self) -> String {
        let mut out = String::from("# level parent literals coding\n");
        for (l, w) in self.level_start.windows(2).enumerate() {
            for i in w[0]..w[1] {
                let n = &self.nodes[i];
                let parent = n.parent.map_or("-".to_string(), |p| p.to_string());
                let digits = if n.ty.0.is_empty() { "-".to_string() } else { self.digits(i) };
                let coding = n.coding.map_or("-".to_string(), |c| format!("c{c}"));
                let _ = writeln!(out, "{l} {parent} {digits} {coding}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::build_prefix;

    #[test]
    fn rado_tree_is_full() {
        let p = build_prefix(&ClassSpec::rado(), 6).unwrap();
        let t = build_coding_tree(&p, 5).unwrap();
        for l in 0..=5 {
            assert_eq!(t.level(l).len(), 1 << l);
        }
        assert_eq!(t.coding_len(), 6);
    }

    #[test]
    fn depth_beyond_prefix_rejected() {
        let p = build_prefix(&ClassSpec::rado(), 3).unwrap();
        assert!(build_coding_tree(&p, 4).is_err());
        let t = build_coding_tree(&p, 3).unwrap();
        assert_eq!(t.coding_len(), 3);
    }

    #[test]
    fn digits_round_trip() {
        let spec = ClassSpec::linear_order();
        let lits = vec![1, 2, 2, 1];
        assert_eq!(digit_string(&spec, &lits), "0110");
        assert_eq!(parse_digits(&spec, "0110").unwrap(), lits);
    }
}
