//! Backtracking search for a coloring with no monochromatic target.
//!
//! Items are colored in index order and a target is tested when its largest item gets a color,
//! so a branch dies as soon as it contains a monochromatic target.
//!
//! Color symmetry: whether a coloring has a monochromatic target does not change when the colors
//! are permuted, and every coloring can be permuted so that colors first appear in the order
//! 0, 1, 2, ... . Restricting item `i` to colors `<= 1 + max(color of items < i)` therefore visits
//! one representative of every orbit and leaves the verdict unchanged. No tree automorphisms are
//! quotiented out.
//!
//! Parallelism: the first few items are colored up front, each surviving prefix becomes a chunk,
//! and chunks run on the rayon pool. Each chunk gets an equal share of the node budget, so its
//! outcome does not depend on scheduling. A chunk that finds a counterexample cancels only chunks
//! with a larger index; the reported counterexample is the one from the lowest finding chunk,
//! which is the first one in search order.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::space::Item;
use crate::{LabError, Result};

/// Cap on explored search nodes (partial colorings).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(1 << 30)
    }
}

impl Budget {
    pub const ENV: &'static str = "BIGDEG_BUDGET";

    /// `BIGDEG_BUDGET` when set, otherwise `fallback`.
    pub fn from_env_or(fallback: Budget) -> Result<Budget> {
        match std::env::var(Self::ENV) {
            Ok(v) => Self::parse(&v),
            Err(std::env::VarError::NotPresent) => Ok(fallback),
            Err(e) => Err(LabError::Budget(e.to_string())),
        }
    }

    pub fn from_env() -> Result<Budget> {
        Self::from_env_or(Budget::default())
    }

    /// Accepts a plain integer or `2^k`.
    pub fn parse(s: &str) -> Result<Budget> {
        let s = s.trim();
        let value = match s.split_once('^') {
            Some(("2", e)) => e
                .parse::<u32>()
                .ok()
                .and_then(|e| 1u64.checked_shl(e))
                .ok_or_else(|| LabError::Budget(format!("bad exponent in {s:?}")))?,
            Some(_) => return Err(LabError::Budget(format!("only powers of two are accepted: {s:?}"))),
            None => s.parse::<u64>().map_err(|e| LabError::Budget(format!("{s:?}: {e}")))?,
        };
        if value == 0 {
            return Err(LabError::Budget("budget must be positive".into()));
        }
        Ok(Budget(value))
    }
}

/// Items to color and the item sets that must not be monochromatic.
#[derive(Clone, Debug)]
pub struct Instance {
    pub items: Vec<Item>,
    pub targets: Vec<Vec<usize>>,
    pub colors: usize,
    /// `ending[i]`: targets whose largest item is `i`.
    ending: Vec<Vec<usize>>,
}

/// How a search ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Every coloring has a monochromatic target.
    Exhausted,
    Found(Vec<u8>),
    OutOfBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub nodes: u64,
    pub chunks: usize,
}

enum Step {
    Done,
    Found,
    Stop,
}

struct Dfs<'a> {
    inst: &'a Instance,
    colors: Vec<u8>,
    nodes: u64,
    budget: u64,
    chunk: usize,
    cancel: &'a AtomicUsize,
    out_of_budget: bool,
}

impl Instance {
    pub fn new(items: Vec<Item>, mut targets: Vec<Vec<usize>>, colors: usize) -> Self {
        let mut ending = vec![Vec::new(); items.len()];
        for (t, members) in targets.iter_mut().enumerate() {
            members.sort_unstable();
            members.dedup();
            if let Some(&last) = members.last() {
                ending[last].push(t);
            }
        }
        Instance { items, targets, colors, ending }
    }

    /// Whether assigning `c` to item `i` completes a monochromatic target.
    fn closes_monochromatic(&self, colors: &[u8], i: usize, c: u8) -> bool {
        self.ending[i].iter().any(|&t| self.targets[t].iter().all(|&j| j == i || colors[j] == c))
    }

    /// Searches for a coloring with no monochromatic target.
    pub fn search(&self, budget: Budget) -> SearchResult {
        let n = self.items.len();
        let depth = n.min(if self.colors <= 2 { 12 } else { 8 });
        let never = AtomicUsize::new(usize::MAX);
        // canonical prefixes of the first `depth` items
        let mut head = Dfs::new(self, budget.0, usize::MAX, &never);
        let mut prefixes = Vec::new();
        head.collect_prefixes(depth, &mut prefixes);
        if head.out_of_budget {
            return SearchResult { outcome: Outcome::OutOfBudget, nodes: head.nodes, chunks: 0 };
        }
        let spent = head.nodes;
        if depth == n {
            let outcome = match prefixes.into_iter().next() {
                Some(c) => Outcome::Found(c),
                None => Outcome::Exhausted,
            };
            return SearchResult { outcome, nodes: spent, chunks: 1 };
        }
        let chunks = prefixes.len();
        let share = ((budget.0 - spent) / chunks.max(1) as u64).max(1);
        let cancel = AtomicUsize::new(usize::MAX);
        let results: Vec<(Option<Outcome>, u64)> = prefixes
            .into_par_iter()
            .enumerate()
            .map(|(k, prefix)| {
                if cancel.load(Ordering::Relaxed) < k {
                    return (None, 0);
                }
                let mut dfs = Dfs::new(self, share, k, &cancel);
                dfs.colors = prefix;
                let outcome = match dfs.run() {
                    Step::Found => {
                        cancel.fetch_min(k, Ordering::Relaxed);
                        Some(Outcome::Found(dfs.colors))
                    }
                    Step::Done if dfs.out_of_budget => Some(Outcome::OutOfBudget),
                    Step::Done => Some(Outcome::Exhausted),
                    Step::Stop => None,
                };
                (outcome, dfs.nodes)
            })
            .collect();
        let found = results.iter().position(|r| matches!(r.0, Some(Outcome::Found(_))));
        let upto = found.map_or(results.len(), |f| f + 1);
        let nodes = spent + results[..upto].iter().map(|r| r.1).sum::<u64>();
        let outcome = match found {
            Some(f) => results[f].0.clone().expect("found"),
            None if results.iter().any(|r| r.0 == Some(Outcome::OutOfBudget)) => Outcome::OutOfBudget,
            None => Outcome::Exhausted,
        };
        SearchResult { outcome, nodes, chunks }
    }

    /// Whether `colors` leaves every target non-monochromatic.
    pub fn avoids_all(&self, colors: &[u8]) -> bool {
        colors.len() == self.items.len()
            && self.targets.iter().all(|t| t.iter().any(|&j| colors[j] != colors[t[0]]))
    }
}

impl<'a> Dfs<'a> {
    fn new(inst: &'a Instance, budget: u64, chunk: usize, cancel: &'a AtomicUsize) -> Self {
        Dfs { inst, colors: Vec::new(), nodes: 0, budget, chunk, cancel, out_of_budget: false }
    }

    fn allowed(&self) -> u8 {
        let used = self.colors.iter().max().map_or(0, |&m| m as usize + 1);
        (used + 1).min(self.inst.colors) as u8
    }

    /// Tries `c` at the next item; false when it closes a monochromatic target or the budget ran out.
    fn extend(&mut self, c: u8) -> bool {
        if self.nodes >= self.budget {
            self.out_of_budget = true;
            return false;
        }
        self.nodes += 1;
        let i = self.colors.len();
        if self.inst.closes_monochromatic(&self.colors, i, c) {
            return false;
        }
        self.colors.push(c);
        true
    }

    fn collect_prefixes(&mut self, depth: usize, out: &mut Vec<Vec<u8>>) {
        if self.colors.len() == depth {
            out.push(self.colors.clone());
            return;
        }
        for c in 0..self.allowed() {
            if self.extend(c) {
                self.collect_prefixes(depth, out);
                self.colors.pop();
            }
            if self.out_of_budget {
                return;
            }
        }
    }

    fn run(&mut self) -> Step {
        if self.colors.len() == self.inst.items.len() {
            return Step::Found;
        }
        if self.nodes & 0x3ff == 0 && self.cancel.load(Ordering::Relaxed) < self.chunk {
            return Step::Stop;
        }
        for c in 0..self.allowed() {
            if self.extend(c) {
                match self.run() {
                    Step::Done => {
                        self.colors.pop();
                    }
                    other => return other,
                }
            }
            if self.out_of_budget {
                return Step::Done;
            }
        }
        Step::Done
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(colors: usize) -> Instance {
        let items = (0..3).map(|i| Item::Subset(vec![i])).collect();
        Instance::new(items, vec![vec![0, 1, 2]], colors)
    }

    #[test]
    fn single_target() {
        assert_eq!(triangle(1).search(Budget::default()).outcome, Outcome::Exhausted);
        assert_eq!(triangle(2).search(Budget::default()).outcome, Outcome::Found(vec![0, 0, 1]));
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(Budget::parse("2^10").unwrap(), Budget(1024));
        assert_eq!(Budget::parse(" 77 ").unwrap(), Budget(77));
        assert!(Budget::parse("3^2").is_err());
        assert!(Budget::parse("0").is_err());
        assert!(Budget::parse("2^99").is_err());
    }
}
