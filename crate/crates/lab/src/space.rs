use std::collections::HashMap;
use std::fmt;

use bigdeg_core::coding::seq::is_initial_segment;
use bigdeg_core::TreeSubset;
use itertools::Itertools;
use serde::Serialize;

use crate::search::Instance;
use crate::{LabError, Result};

/// What gets colored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Ground {
    /// The `k`-element subsets of `{0, .., n-1}`.
    Subsets { n: usize, k: usize },
    /// The nodes of `2^{≤depth}`.
    Nodes { depth: usize },
    /// The strong subtrees of `2^{≤depth}` with `height` levels.
    StrongSubtrees { depth: usize, height: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringSpace {
    pub ground: Ground,
    pub colors: usize,
}

/// One colored object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Subset(Vec<usize>),
    Node(Vec<u8>),
    Subtree(Vec<Vec<u8>>),
}

fn node_label(s: &[u8]) -> String {
    if s.is_empty() {
        "()".to_string()
    } else {
        s.iter().map(|d| d.to_string()).collect()
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Subset(s) => write!(f, "{}", s.iter().join("-")),
            Item::Node(s) => write!(f, "{}", node_label(s)),
            Item::Subtree(nodes) => write!(f, "{}", nodes.iter().map(|s| node_label(s)).join(" ")),
        }
    }
}

/// `k`-subsets of `0..n` in colex order, so those inside `0..m` come first.
fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// A tree under construction: all its nodes, and those on its current top level.
type Partial = (Vec<Vec<u8>>, Vec<Vec<u8>>);

/// Strong subtrees of `ambient` with `height` levels.
///
/// Each tree is grown level by level: every frontier node picks, through each of its immediate
/// successors in `ambient`, one extension on the next chosen level. Returns `None` once more than
/// `limit` partial or finished trees exist.
pub fn strong_subtrees(ambient: &TreeSubset, height: usize, limit: usize) -> Option<Vec<TreeSubset>> {
    let mut out = Vec::new();
    if height == 0 {
        return Some(out);
    }
    let levels: Vec<usize> = ambient.levels().iter().copied().collect();
    for root in ambient.nodes() {
        let above: Vec<usize> = levels.iter().copied().filter(|&l| l > root.len()).collect();
        for chosen in above.iter().copied().combinations(height - 1) {
            let mut partial: Vec<Partial> = vec![(vec![root.clone()], vec![root.clone()])];
            for &l in &chosen {
                let mut next = Vec::new();
                for (nodes, frontier) in &partial {
                    let picks: Vec<Vec<Vec<u8>>> = frontier
                        .iter()
                        .flat_map(|n| ambient.successors(n))
                        .map(|u| {
                            ambient
                                .nodes()
                                .iter()
                                .filter(|t| t.len() == l && is_initial_segment(&u, t))
                                .cloned()
                                .collect()
                        })
                        .collect();
                    if picks.is_empty() {
                        continue;
                    }
                    for choice in picks.into_iter().multi_cartesian_product() {
                        let mut grown = nodes.clone();
                        grown.extend(choice.iter().cloned());
                        next.push((grown, choice));
                    }
                }
                partial = next;
                if partial.len() > limit {
                    return None;
                }
            }
            let lv: std::collections::BTreeSet<usize> =
                std::iter::once(root.len()).chain(chosen.iter().copied()).collect();
            for (nodes, _) in partial {
                out.push(TreeSubset::new(nodes.into_iter().collect(), lv.clone()).expect("strong subtree is a tree"));
                if out.len() > limit {
                    return None;
                }
            }
        }
    }
    Some(out)
}

fn subtree_key(t: &TreeSubset) -> Vec<Vec<u8>> {
    t.nodes().iter().cloned().collect()
}

impl ColoringSpace {
    pub fn new(ground: Ground, colors: usize) -> Result<Self> {
        if colors == 0 {
            return Err(LabError::Precondition("at least one color is needed".into()));
        }
        match ground {
            Ground::Subsets { k: 0, .. } => Err(LabError::Precondition("k must be at least 1".into())),
            Ground::StrongSubtrees { height: 0, .. } => {
                Err(LabError::Precondition("subtrees need at least one level".into()))
            }
            _ => Ok(ColoringSpace { ground, colors }),
        }
    }

    /// The colored items, in the order the search assigns them.
    pub fn items(&self, limit: usize) -> Option<Vec<Item>> {
        let items: Vec<Item> = match self.ground {
            Ground::Subsets { n, k } => {
                if binomial(n, k) > limit as u128 {
                    return None;
                }
                colex_subsets(n, k).into_iter().map(Item::Subset).collect()
            }
            Ground::Nodes { depth } => {
                if depth >= 40 || (1usize << (depth + 1)) > limit {
                    return None;
                }
                level_order(&TreeSubset::full(2, depth)).into_iter().map(Item::Node).collect()
            }
            Ground::StrongSubtrees { depth, height } => {
                let mut trees: Vec<Vec<Vec<u8>>> = strong_subtrees(&TreeSubset::full(2, depth), height, limit)?
                    .iter()
                    .map(subtree_key)
                    .collect();
                trees.sort_by(|a, b| top_level(a).cmp(&top_level(b)).then_with(|| a.cmp(b)));
                trees.into_iter().map(Item::Subtree).collect()
            }
        };
        (items.len() <= limit).then_some(items)
    }

    /// Builds the search instance whose targets are the sets of items inside each copy of the
    /// target object. `None` means the tables would exceed `limit` entries.
    pub fn instance(&self, target: &Target, limit: usize) -> Result<Option<Instance>> {
        let Some(items) = self.items(limit) else {
            return Ok(None);
        };
        let index: HashMap<&Item, usize> = items.iter().enumerate().map(|(i, it)| (it, i)).collect();
        let mut targets: Vec<Vec<usize>> = Vec::new();
        let mut entries = 0usize;
        let mut push = |t: Vec<usize>, targets: &mut Vec<Vec<usize>>| {
            entries += t.len();
            targets.push(t);
            entries <= limit
        };
        match (&self.ground, target) {
            (Ground::Subsets { n, k }, Target::Subset(size)) => {
                if *size > *n || *size < *k {
                    return Err(LabError::Precondition(format!("need {k} <= target <= {n}, got {size}")));
                }
                if binomial(*n, *size) * binomial(*size, *k) > limit as u128 {
                    return Ok(None);
                }
                for big in (0..*n).combinations(*size) {
                    let t = big.iter().copied().combinations(*k).map(|s| index[&Item::Subset(s)]).collect();
                    if !push(t, &mut targets) {
                        return Ok(None);
                    }
                }
            }
            (Ground::Nodes { depth }, Target::Subtree(height)) => {
                let Some(trees) = strong_subtrees(&TreeSubset::full(2, *depth), *height, limit) else {
                    return Ok(None);
                };
                for s in trees {
                    let t = s.nodes().iter().map(|n| index[&Item::Node(n.clone())]).collect();
                    if !push(t, &mut targets) {
                        return Ok(None);
                    }
                }
            }
            (Ground::StrongSubtrees { depth, height }, Target::Subtree(big)) => {
                if big < height {
                    return Err(LabError::Precondition(format!("target height {big} is below {height}")));
                }
                let Some(trees) = strong_subtrees(&TreeSubset::full(2, *depth), *big, limit) else {
                    return Ok(None);
                };
                for s in trees {
                    let Some(inner) = strong_subtrees(&s, *height, limit) else {
                        return Ok(None);
                    };
                    let t = inner.iter().map(|u| index[&Item::Subtree(subtree_key(u))]).collect();
                    if !push(t, &mut targets) {
                        return Ok(None);
                    }
                }
            }
            (g, t) => return Err(LabError::Precondition(format!("target {t:?} does not fit ground {g:?}"))),
        }
        Ok(Some(Instance::new(items, targets, self.colors)))
    }
}

/// The object whose monochromatic copy is sought.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// A subset of this size; its `k`-subsets are the items.
    Subset(usize),
    /// A strong subtree of this height.
    Subtree(usize),
}

fn top_level(nodes: &[Vec<u8>]) -> usize {
    nodes.iter().map(|s| s.len()).max().unwrap_or(0)
}

fn level_order(t: &TreeSubset) -> Vec<Vec<u8>> {
    t.nodes().iter().cloned().sorted_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b))).collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_puts_small_sets_first() {
        let s = colex_subsets(4, 2);
        assert_eq!(s[..3], [vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
    }
}
