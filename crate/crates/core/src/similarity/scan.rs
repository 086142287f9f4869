//! Exhaustive scans for realized similarity types.

use itertools::Itertools;
use rayon::prelude::*;

use crate::class::ClassSpec;
use crate::coding::digit_string;
use crate::coding::sauer::UcFragment;
use crate::coding::seq::{is_antichain, is_diagonal, meet_closure};
use crate::coding::CodingTree;
use crate::degrees::g3::g3_clauses;
use crate::error::{CoreError, Result};
use crate::similarity::catalog::{CatalogEntry, TypeCatalog};
use crate::similarity::diagram::{canonical_form_of, Flavor};
use crate::structure::FinStructure;

/// Extra admissibility condition on antichains of coding nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntichainFilter {
    None,
    /// Clauses (a)–(c) for triangle-free graphs.
    G3,
}

impl AntichainFilter {
    pub fn accepts(self, structure: &FinStructure, indices: &[usize]) -> bool {
        match self {
            AntichainFilter::None => true,
            AntichainFilter::G3 => g3_clauses(structure, indices).is_certificate(),
        }
    }
}

/// Coding nodes of an enumerated structure: `c(i)` lists `pattern(v_j, v_i)` for `j < i`.
pub fn coding_nodes(s: &FinStructure) -> Vec<Vec<u8>> {
    (0..s.size()).map(|i| (0..i).map(|j| s.pattern(j, i)).collect()).collect()
}

/// Classifies all diagonal antichains of `n` coding nodes of one enumerated structure.
pub fn scan_structure(
    spec: &ClassSpec,
    s: &FinStructure,
    n: usize,
    flavor: Flavor,
    filter: AntichainFilter,
) -> TypeCatalog {
    let all: Vec<usize> = (0..s.size()).collect();
    scan_indices(spec, s, &all, n, flavor, filter)
}

/// [`scan_structure`] restricted to antichains drawn from the coding nodes of `pool`.
pub fn scan_indices(
    spec: &ClassSpec,
    s: &FinStructure,
    pool: &[usize],
    n: usize,
    flavor: Flavor,
    filter: AntichainFilter,
) -> TypeCatalog {
    let nodes = coding_nodes(s);
    let mut cat = TypeCatalog::new();
    if n == 0 || n > pool.len() {
        return cat;
    }
    for idx in pool.iter().copied().combinations(n) {
        let chosen: Vec<&[u8]> = idx.iter().map(|&i| nodes[i].as_slice()).collect();
        if !is_antichain(&chosen) || !is_diagonal(&chosen).unwrap_or(false) {
            continue;
        }
        if !filter.accepts(s, &idx) {
            continue;
        }
        let diagram = canonical_form_of(&chosen, flavor).expect("nonempty");
        let structure = s.induced(&idx).canonical_code().expect("small target");
        let witness = chosen.iter().map(|c| digit_string(spec, c)).collect();
        cat.insert(CatalogEntry::new(diagram, structure, Some(witness)));
    }
    cat
}

/// Types realized by diagonal antichains of `n` coding nodes of stage at most `depth` in a
/// coding tree. Nondecreasing in `depth`.
pub fn realized_types_in_depth(
    tree: &CodingTree,
    n: usize,
    depth: usize,
    flavor: Flavor,
    filter: AntichainFilter,
) -> Result<TypeCatalog> {
    if depth > tree.depth() {
        return Err(CoreError::Domain(format!(
            "scan depth {depth} exceeds tree depth {}",
            tree.depth()
        )));
    }
    let top = depth.min(tree.coding_len() - 1);
    let s = tree.structure().initial(top + 1);
    Ok(scan_structure(tree.spec(), &s, n, flavor, filter))
}

/// Every structure of the class on `{0, .., size-1}`, as enumerated structures.
pub fn enumerate_structures(spec: &ClassSpec, size: usize) -> Vec<FinStructure> {
    let mut layer = vec![FinStructure::empty(spec.signature().clone(), 0)];
    for k in 0..size {
        layer = layer
            .par_iter()
            .flat_map_iter(|s| {
                spec.realizable_types(s, k).into_iter().map(move |t| s.extended(&t))
            })
            .collect();
    }
    layer
}

/// Union of the scans over every enumerated structure of the given size.
///
/// This is the union over all enumerations of the limit of the types realized below level
/// `size`, so it does not depend on a reference enumeration. Structures are visited depth-first
/// below a breadth-first frontier, so memory stays proportional to the frontier.
pub fn realized_types_all_enumerations(
    spec: &ClassSpec,
    n: usize,
    size: usize,
    flavor: Flavor,
    filter: AntichainFilter,
) -> TypeCatalog {
    const FRONTIER: usize = 1024;
    let mut layer = vec![FinStructure::empty(spec.signature().clone(), 0)];
    while layer[0].size() < size && layer.len() < FRONTIER {
        let k = layer[0].size();
        layer = layer
            .iter()
            .flat_map(|s| spec.realizable_types(s, k).into_iter().map(move |t| s.extended(&t)))
            .collect();
        if layer.is_empty() {
            return TypeCatalog::new();
        }
    }
    layer
        .par_iter()
        .fold(TypeCatalog::new, |mut cat, s| {
            scan_below(spec, s, n, size, flavor, filter, &mut cat);
            cat
        })
        .reduce(TypeCatalog::new, TypeCatalog::merge)
}

fn scan_below(
    spec: &ClassSpec,
    s: &FinStructure,
    n: usize,
    size: usize,
    flavor: Flavor,
    filter: AntichainFilter,
    cat: &mut TypeCatalog,
) {
    if s.size() == size {
        let found = scan_structure(spec, s, n, flavor, filter);
        for e in found.into_entries() {
            cat.insert(e);
        }
        return;
    }
    for t in spec.realizable_types(s, s.size()) {
        scan_below(spec, &s.extended(&t), n, size, flavor, filter, cat);
    }
}

/// Whether an antichain of `k^{<ω}` has the normal form used for `U_C` scans: at each meet level
/// the two branches carry 0 (left) and 1 (right) and every other node carries 0. With
/// `zero_at_terminals`, nodes passing the level of a member of the set also carry 0.
pub fn sauer_normal(nodes: &[&[u8]], zero_at_terminals: bool) -> bool {
    let mc = meet_closure(nodes);
    for u in mc.iter().filter(|u| !nodes.contains(&u.as_slice())) {
        let l = u.len();
        for t in nodes {
            if t.len() <= l {
                continue;
            }
            let below = t[..l] == u[..];
            if !below && t[l] != 0 {
                return false;
            }
            if below && t[l] > 1 {
                return false;
            }
        }
    }
    if zero_at_terminals {
        for s in nodes {
            if nodes.iter().any(|t| t.len() > s.len() && t[s.len()] != 0) {
                return false;
            }
        }
    }
    true
}

/// Scan of diagonal antichains of `n` nodes of `k^{≤depth}` in normal form, classified with
/// passing numbers.
///
/// For unrestricted classes nodes are vertices of `U_C`. For linear orders the binary tree is used
/// with the lex order as the decoded order, and passing numbers at terminal levels are 0.
pub fn realized_types_uc(spec: &ClassSpec, n: usize, depth: usize) -> Result<TypeCatalog> {
    let (nodes, structure, terminal_zero) = if spec.is_linear_order() {
        let nodes = crate::coding::seq::TreeSubset::full(2, depth)
            .nodes()
            .iter()
            .cloned()
            .sorted_by(|a, b| crate::coding::seq::level_lex_cmp(a, b))
            .collect::<Vec<_>>();
        (nodes, None, true)
    } else {
        let frag = UcFragment::build(spec, depth)?;
        (frag.nodes().to_vec(), Some(frag.structure().clone()), false)
    };
    let cat = (0..nodes.len())
        .combinations(n)
        .par_bridge()
        .fold(TypeCatalog::new, |mut cat, idx| {
            let chosen: Vec<&[u8]> = idx.iter().map(|&i| nodes[i].as_slice()).collect();
            if !is_antichain(&chosen) || !is_diagonal(&chosen).unwrap_or(false) {
                return cat;
            }
            if !sauer_normal(&chosen, terminal_zero) {
                return cat;
            }
            let diagram = canonical_form_of(&chosen, Flavor::PassingNumbers).expect("nonempty");
            let decoded = match &structure {
                Some(s) => s.induced(&idx),
                None => lex_order_of(&chosen),
            };
            let code = decoded.canonical_code().expect("small target");
            let witness = chosen
                .iter()
                .map(|c| c.iter().map(|&d| char::from_digit(d as u32, 36).unwrap_or('?')).collect())
                .collect();
            cat.insert(CatalogEntry::new(diagram, code, Some(witness)));
            cat
        })
        .reduce(TypeCatalog::new, TypeCatalog::merge);
    Ok(cat)
}

/// Linear order on an antichain given by the lex order, vertices in the given order.
fn lex_order_of(nodes: &[&[u8]]) -> FinStructure {
    let order: Vec<usize> = (0..nodes.len())
        .sorted_by(|&a, &b| {
            crate::coding::seq::lex_compare(nodes[a], nodes[b]).expect("antichain")
        })
        .collect();
    FinStructure::chain(&order)
}
