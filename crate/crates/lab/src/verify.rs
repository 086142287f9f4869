//! Rechecks of counterexample colorings that avoid the search's index tables.
//!
//! Colors are looked up by item label, and strong subtrees are confirmed with the core
//! predicate rather than trusted from the enumerator.

use std::collections::{BTreeSet, HashMap};

use bigdeg_core::{is_strong_subtree, TreeSubset};
use itertools::Itertools;

use crate::report::Coloring;
use crate::space::{binomial, strong_subtrees, Item};

fn lookup(coloring: &Coloring) -> HashMap<&str, u8> {
    coloring.items.iter().map(|c| (c.item.as_str(), c.color)).collect()
}

fn constant(colors: impl IntoIterator<Item = Option<u8>>) -> bool {
    let mut seen = None;
    for c in colors {
        match (c, seen) {
            (None, _) => return false,
            (Some(c), None) => seen = Some(c),
            (Some(c), Some(s)) if c != s => return false,
            _ => {}
        }
    }
    true
}

/// No `target`-subset of `0..n` has all its `k`-subsets the same color.
pub fn ramsey_counterexample_holds(n: usize, k: usize, target: usize, coloring: &Coloring) -> bool {
    let colors = lookup(coloring);
    coloring.items.len() as u128 == binomial(n, k)
        && (0..n).combinations(target).all(|big| {
            let inner = big
                .iter()
                .copied()
                .combinations(k)
                .map(|s| colors.get(Item::Subset(s).to_string().as_str()).copied());
            !constant(inner)
        })
}

/// No strong subtree of height `m` of `2^{≤depth}` is monochromatic, by trying every node set
/// of size `2^m - 1`.
pub fn hl_counterexample_holds(m: usize, depth: usize, coloring: &Coloring) -> bool {
    let full = TreeSubset::full(2, depth);
    let colors = lookup(coloring);
    if coloring.items.len() != full.nodes().len() || m >= 16 {
        return false;
    }
    let size = (1usize << m) - 1;
    full.nodes().iter().combinations(size).all(|nodes| {
        let levels: BTreeSet<usize> = nodes.iter().map(|s| s.len()).collect();
        let Ok(s) = TreeSubset::new(nodes.iter().map(|s| s.to_vec()).collect(), levels) else {
            return true;
        };
        if s.height() != m || !is_strong_subtree(&full, &s) {
            return true;
        }
        !constant(nodes.iter().map(|n| colors.get(Item::Node(n.to_vec()).to_string().as_str()).copied()))
    })
}

/// No strong subtree of height `big` of `2^{≤depth}` has all its height-`k` strong subtrees
/// the same color.
pub fn milliken_counterexample_holds(k: usize, big: usize, depth: usize, coloring: &Coloring) -> bool {
    let full = TreeSubset::full(2, depth);
    let colors = lookup(coloring);
    let Some(targets) = strong_subtrees(&full, big, usize::MAX) else {
        return false;
    };
    targets.iter().all(|s| {
        if !is_strong_subtree(&full, s) || s.height() != big {
            return false;
        }
        let inner = strong_subtrees(s, k, usize::MAX).expect("unbounded");
        if inner.iter().any(|u| !is_strong_subtree(s, u)) {
            return false;
        }
        let key = |u: &TreeSubset| Item::Subtree(u.nodes().iter().cloned().collect()).to_string();
        !constant(inner.iter().map(|u| colors.get(key(u).as_str()).copied()))
    })
}
