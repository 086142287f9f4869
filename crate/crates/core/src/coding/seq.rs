//! Operations on finite sequences: meets, passing numbers, lex order, meet closures,
//! diagonality and strong subtrees.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::Deref;

use crate::error::{CoreError, Result};

/// A node of `k^{<ω}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqNode(pub Vec<u8>);

impl Deref for SeqNode {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<&[u8]> for SeqNode {
    fn from(s: &[u8]) -> Self {
        SeqNode(s.to_vec())
    }
}

/// Length of the longest common initial segment.
pub fn meet_len(s: &[u8], t: &[u8]) -> usize {
    s.iter().zip(t).take_while(|(a, b)| a == b).count()
}

/// `s ⊑ t`.
pub fn is_initial_segment(s: &[u8], t: &[u8]) -> bool {
    s.len() <= t.len() && t[..s.len()] == *s
}

pub fn comparable(s: &[u8], t: &[u8]) -> bool {
    is_initial_segment(s, t) || is_initial_segment(t, s)
}

/// `t(|s|)`, defined when `|s| < |t|`.
pub fn passing_number(t: &[u8], s: &[u8]) -> Result<u8> {
    if s.len() >= t.len() {
        return Err(CoreError::Domain(format!(
            "passing number needs |s| < |t|, got {} and {}",
            s.len(),
            t.len()
        )));
    }
    Ok(t[s.len()])
}

/// Lexicographic order of tree-incomparable nodes: compare the entries at the meet level.
pub fn lex_compare(s: &[u8], t: &[u8]) -> Result<Ordering> {
    if comparable(s, t) {
        return Err(CoreError::Domain("lex_compare needs tree-incomparable nodes".into()));
    }
    let k = meet_len(s, t);
    Ok(s[k].cmp(&t[k]))
}

/// Total order on nodes of one tree: shorter nodes first, then lexicographic.
pub fn level_lex_cmp(s: &[u8], t: &[u8]) -> Ordering {
    s.len().cmp(&t.len()).then_with(|| s.cmp(t))
}

/// `S` together with all pairwise meets.
pub fn meet_closure<T: AsRef<[u8]>>(nodes: &[T]) -> BTreeSet<Vec<u8>> {
    let mut out: BTreeSet<Vec<u8>> = nodes.iter().map(|s| s.as_ref().to_vec()).collect();
    for (i, s) in nodes.iter().enumerate() {
        for t in &nodes[i + 1..] {
            let (s, t) = (s.as_ref(), t.as_ref());
            out.insert(s[..meet_len(s, t)].to_vec());
        }
    }
    out
}

pub fn is_antichain<T: AsRef<[u8]>>(nodes: &[T]) -> bool {
    nodes.iter().enumerate().all(|(i, s)| {
        nodes[i + 1..].iter().all(|t| !comparable(s.as_ref(), t.as_ref()))
    })
}

/// A diagonal antichain: every meet is binary and all nodes of the meet closure have
/// distinct lengths.
pub fn is_diagonal<T: AsRef<[u8]>>(nodes: &[T]) -> Result<bool> {
    if !is_antichain(nodes) {
        return Err(CoreError::Domain("is_diagonal needs an antichain".into()));
    }
    let distinct: BTreeSet<&[u8]> = nodes.iter().map(|s| s.as_ref()).collect();
    if distinct.is_empty() {
        return Ok(true);
    }
    let mc = meet_closure(nodes);
    let lengths: BTreeSet<usize> = mc.iter().map(|s| s.len()).collect();
    Ok(lengths.len() == mc.len() && mc.len() == 2 * distinct.len() - 1)
}

/// A finite tree `T ⊆ k^{<ω}` with level set `L_T`, closed under restriction to its levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSubset {
    nodes: BTreeSet<Vec<u8>>,
    levels: BTreeSet<usize>,
}

impl TreeSubset {
    pub fn new(nodes: BTreeSet<Vec<u8>>, levels: BTreeSet<usize>) -> Result<Self> {
        for t in &nodes {
            if !levels.contains(&t.len()) {
                return Err(CoreError::Domain(format!("node {t:?} is not on a listed level")));
            }
            for &l in levels.range(..t.len()) {
                if !nodes.contains(&t[..l]) {
                    return Err(CoreError::Domain(format!(
                        "tree not closed: {t:?} restricted to {l} is missing"
                    )));
                }
            }
        }
        for &l in &levels {
            if !nodes.iter().any(|t| t.len() == l) {
                return Err(CoreError::Domain(format!("level {l} has no nodes")));
            }
        }
        Ok(TreeSubset { nodes, levels })
    }

    /// `k^{≤depth}`.
    pub fn full(k: u8, depth: usize) -> Self {
        let mut nodes = BTreeSet::new();
        let mut layer = vec![Vec::new()];
        for _ in 0..=depth {
            let mut next = Vec::new();
            for t in &layer {
                for d in 0..k {
                    let mut u = t.clone();
                    u.push(d);
                    next.push(u);
                }
            }
            nodes.extend(layer);
            layer = next;
        }
        TreeSubset { nodes, levels: (0..=depth).collect() }
    }

    pub fn nodes(&self) -> &BTreeSet<Vec<u8>> {
        &self.nodes
    }

    pub fn levels(&self) -> &BTreeSet<usize> {
        &self.levels
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn contains(&self, t: &[u8]) -> bool {
        self.nodes.contains(t)
    }

    /// Nodes on the next level above `|s|` that extend `s`.
    pub fn successors(&self, s: &[u8]) -> Vec<Vec<u8>> {
        match self.levels.range(s.len() + 1..).next() {
            Some(&l) => self
                .nodes
                .iter()
                .filter(|t| t.len() == l && is_initial_segment(s, t))
                .cloned()
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Whether `s` is a strong subtree of `t`.
///
/// `S` must have a single root, use levels of `T`, and every node of `S` below its top level must
/// have, for each immediate successor of it in `T`, exactly one immediate successor in `S`
/// extending it.
pub fn is_strong_subtree(t: &TreeSubset, s: &TreeSubset) -> bool {
    if s.nodes.is_empty() {
        return true;
    }
    if !s.levels.is_subset(&t.levels) || !s.nodes.is_subset(&t.nodes) {
        return false;
    }
    let min = *s.levels.iter().next().expect("nonempty");
    if s.nodes.iter().filter(|n| n.len() == min).count() != 1 {
        return false;
    }
    let top = *s.levels.iter().next_back().expect("nonempty");
    s.nodes.iter().filter(|n| n.len() < top).all(|n| {
        let succ_s = s.successors(n);
        let succ_t = t.successors(n);
        succ_s.len() == succ_t.len()
            && succ_t
                .iter()
                .all(|u| succ_s.iter().filter(|v| is_initial_segment(u, v)).count() == 1)
    })
}
