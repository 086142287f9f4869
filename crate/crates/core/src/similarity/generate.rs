//! Direct generation of similarity types of diagonal antichains.
//!
//! A diagonal antichain of `n` coding nodes has a meet closure of `2n - 1` nodes on distinct
//! levels, so its shape is an increasing plane binary tree whose leaves are the coding nodes.
//! Between coding nodes the only recorded data is the literal a node carries at a coding level;
//! nodes passing a coding level inside the same branch share it. Candidates are built from that
//! data and kept when a witness antichain exists in some enumerated structure of the class.

use itertools::Itertools;
use rayon::prelude::*;

use crate::class::{ClassKind, ClassSpec};
use crate::coding::digit_string;
use crate::error::{CoreError, Result};
use crate::similarity::catalog::{CatalogEntry, TypeCatalog};
use crate::similarity::diagram::{canonical_form_of, Flavor, SimilarityDiagram};
use crate::similarity::scan::AntichainFilter;
use crate::structure::{FinStructure, StructureCode};

/// Largest target handled by generation.
pub const MAX_GENERATION_SIZE: usize = 5;

/// Default cap on witness-search nodes per candidate.
pub const DEFAULT_WITNESS_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationOptions {
    pub filter: AntichainFilter,
    /// Witness structures have at most `max_size_factor * n` vertices.
    pub max_size_factor: usize,
    pub budget: usize,
}

impl Default for GenerationOptions {
    fn default() -> Self {
        GenerationOptions { filter: AntichainFilter::None, max_size_factor: 4, budget: DEFAULT_WITNESS_BUDGET }
    }
}

/// An increasing plane binary tree; node `h` sits at height `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Shape {
    parent: Vec<Option<usize>>,
    side: Vec<usize>,
    leaf: Vec<bool>,
}

impl Shape {
    fn m(&self) -> usize {
        self.parent.len()
    }

    fn children(&self, u: usize) -> [usize; 2] {
        let mut out = [usize::MAX; 2];
        for x in 0..self.m() {
            if self.parent[x] == Some(u) {
                out[self.side[x]] = x;
            }
        }
        out
    }

    fn path(&self, x: usize) -> Vec<usize> {
        let mut p = vec![x];
        let mut cur = x;
        while let Some(q) = self.parent[cur] {
            p.push(q);
            cur = q;
        }
        p.reverse();
        p
    }

    /// Whether `x` lies left of `y`; the two must be incomparable.
    fn left_of(&self, x: usize, y: usize) -> bool {
        let (px, py) = (self.path(x), self.path(y));
        let k = px.iter().zip(&py).take_while(|(a, b)| a == b).count();
        self.side[px[k]] < self.side[py[k]]
    }

    /// Segments crossing height `h`: nodes above `h` whose parent is below it.
    fn crossing(&self, h: usize) -> Vec<usize> {
        (h + 1..self.m()).filter(|&x| self.parent[x].is_some_and(|p| p < h)).collect()
    }

    /// The segment crossing height `h` on the path to `x`.
    fn crossing_ancestor(&self, h: usize, x: usize) -> usize {
        *self.path(x).iter().find(|&&y| y > h).expect("x above h")
    }
}

fn shapes(n: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let m = 2 * n - 1;
    let mut s = Shape { parent: vec![None], side: vec![0], leaf: vec![n == 1] };
    if n == 1 {
        return vec![s];
    }
    let open = vec![(0, 0), (0, 1)];
    shapes_rec(m, n, n - 2, &mut s, open, &mut out);
    out
}

fn shapes_rec(
    m: usize,
    leaves: usize,
    meets: usize,
    s: &mut Shape,
    open: Vec<(usize, usize)>,
    out: &mut Vec<Shape>,
) {
    let h = s.m();
    if h == m {
        if open.is_empty() {
            out.push(s.clone());
        }
        return;
    }
    if open.len() > m - h {
        return;
    }
    for k in 0..open.len() {
        let (p, side) = open[k];
        for is_leaf in [true, false] {
            if (is_leaf && leaves == 0) || (!is_leaf && meets == 0) {
                continue;
            }
            let mut next = open.clone();
            next.remove(k);
            if !is_leaf {
                next.push((h, 0));
                next.push((h, 1));
            }
            s.parent.push(Some(p));
            s.side.push(side);
            s.leaf.push(is_leaf);
            let (l, mt) = if is_leaf { (leaves - 1, meets) } else { (leaves, meets - 1) };
            shapes_rec(m, l, mt, s, next, out);
            s.parent.pop();
            s.side.pop();
            s.leaf.pop();
        }
    }
}

/// A shape with a literal for each (coding level, crossing segment).
#[derive(Clone, Debug)]
struct Candidate {
    shape: Shape,
    /// `(coding height, segment, literal)`.
    literals: Vec<(usize, usize, u8)>,
}

impl Candidate {
    fn literal(&self, h: usize, x: usize) -> u8 {
        let seg = self.shape.crossing_ancestor(h, x);
        self.literals.iter().find(|l| l.0 == h && l.1 == seg).expect("assigned").2
    }

    fn leaves(&self) -> Vec<usize> {
        (0..self.shape.m()).filter(|&h| self.shape.leaf[h]).collect()
    }

    /// The structure coded by the leaves, in height order.
    fn structure(&self, spec: &ClassSpec) -> FinStructure {
        let leaves = self.leaves();
        let mut s = FinStructure::empty(spec.signature().clone(), leaves.len());
        for (a, &i) in leaves.iter().enumerate() {
            for (b, &j) in leaves.iter().enumerate().skip(a + 1) {
                s.set_pattern(a, b, self.literal(i, j));
            }
        }
        s
    }

    fn diagram(&self) -> SimilarityDiagram {
        let leaves = self.leaves();
        let mut annotations = Vec::new();
        for (a, &i) in leaves.iter().enumerate() {
            for &j in &leaves[a + 1..] {
                annotations.push((i, j, self.literal(i, j)));
            }
        }
        SimilarityDiagram {
            flavor: Flavor::Structural,
            parent: self.shape.parent.clone(),
            height: (0..self.shape.m()).collect(),
            coding: self.shape.leaf.clone(),
            sibling: self.shape.side.clone(),
            annotations,
        }
    }
}

fn candidates(spec: &ClassSpec, shape: &Shape) -> Vec<Candidate> {
    let slots: Vec<(usize, usize)> = (0..shape.m())
        .filter(|&h| shape.leaf[h])
        .flat_map(|h| shape.crossing(h).into_iter().map(move |x| (h, x)))
        .collect();
    if spec.is_linear_order() {
        // Lex order is the order of the coded vertices: left of c_i means below v_i.
        let literals = slots.iter().map(|&(h, x)| (h, x, if shape.left_of(x, h) { 1 } else { 2 })).collect();
        return vec![Candidate { shape: shape.clone(), literals }];
    }
    let allowed = spec.allowed_patterns();
    product(&vec![allowed.to_vec(); slots.len()])
        .into_iter()
        .map(|codes| Candidate {
            shape: shape.clone(),
            literals: slots.iter().zip(codes).map(|(&(h, x), c)| (h, x, c)).collect(),
        })
        .collect()
}

/// Cartesian product; one empty tuple for no factors.
fn product(lists: &[Vec<u8>]) -> Vec<Vec<u8>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter().flat_map(|p| list.iter().map(move |&c| [p.as_slice(), &[c]].concat())).collect()
    })
}

struct WitnessSearch<'a> {
    spec: &'a ClassSpec,
    cand: &'a Candidate,
    diagram: &'a SimilarityDiagram,
    filter: AntichainFilter,
    max_size: usize,
    budget: usize,
    visits: usize,
}

type Segments = Vec<(usize, Vec<u8>)>;

impl WitnessSearch<'_> {
    fn exhausted(&self) -> bool {
        self.visits >= self.budget
    }

    /// Literal choices for every segment over the extended structure, or `None` if one has none.
    fn options(&self, k: &FinStructure, segs: &Segments, fixed: impl Fn(usize) -> Option<u8>) -> Option<Vec<Vec<u8>>> {
        segs.iter()
            .map(|(x, seq)| {
                let choices: Vec<u8> = match fixed(*x) {
                    Some(c) => vec![c],
                    None => self.spec.allowed_patterns().to_vec(),
                };
                let ok: Vec<u8> = choices
                    .into_iter()
                    .filter(|&c| {
                        let mut s = seq.clone();
                        s.push(c);
                        self.spec.last_literal_ok(k, &s)
                    })
                    .collect();
                (!ok.is_empty()).then_some(ok)
            })
            .collect()
    }

    fn dfs(&mut self, k: &FinStructure, segs: &Segments, h: usize, leaves: &mut Vec<usize>) -> Option<FinStructure> {
        self.visits += 1;
        if self.exhausted() {
            return None;
        }
        let shape = &self.cand.shape;
        if h == shape.m() {
            return self.verify(k, leaves).then(|| k.clone());
        }
        let l = k.size();
        let remaining = shape.m() - h;
        if l + remaining > self.max_size {
            return None;
        }
        let pos = segs.iter().position(|s| s.0 == h).expect("next node is active");
        let seq = segs[pos].1.clone();
        let mut rest = segs.clone();
        rest.remove(pos);
        if shape.leaf[h] {
            let next = k.extended(&seq);
            if let Some(opts) = self.options(&next, &rest, |x| Some(self.cand.literal(h, x))) {
                let rest: Segments =
                    rest.iter().zip(opts).map(|((x, s), o)| (*x, [s.as_slice(), &o[..1]].concat())).collect();
                leaves.push(l);
                if let Some(w) = self.dfs(&next, &rest, h + 1, leaves) {
                    return Some(w);
                }
                leaves.pop();
            }
        } else {
            let [left, right] = shape.children(h);
            let allowed = self.spec.allowed_patterns().to_vec();
            for vt in self.spec.realizable_types(k, l) {
                let next = k.extended(&vt);
                let Some(opts) = self.options(&next, &rest, |_| None) else { continue };
                for (&a, &b) in allowed.iter().tuple_combinations() {
                    let mut ls = seq.clone();
                    ls.push(a);
                    let mut rs = seq.clone();
                    rs.push(b);
                    if !self.spec.last_literal_ok(&next, &ls) || !self.spec.last_literal_ok(&next, &rs) {
                        continue;
                    }
                    for choice in product(&opts) {
                        let mut segs2: Segments =
                            rest.iter().zip(&choice).map(|((x, s), &c)| (*x, [s.as_slice(), &[c]].concat())).collect();
                        segs2.push((left, ls.clone()));
                        segs2.push((right, rs.clone()));
                        if let Some(w) = self.dfs(&next, &segs2, h + 1, leaves) {
                            return Some(w);
                        }
                        if self.exhausted() {
                            return None;
                        }
                    }
                }
            }
        }
        if l + remaining < self.max_size {
            for vt in self.spec.realizable_types(k, l) {
                let next = k.extended(&vt);
                let Some(opts) = self.options(&next, segs, |_| None) else { continue };
                for choice in product(&opts) {
                    let segs2: Segments =
                        segs.iter().zip(&choice).map(|((x, s), &c)| (*x, [s.as_slice(), &[c]].concat())).collect();
                    if let Some(w) = self.dfs(&next, &segs2, h, leaves) {
                        return Some(w);
                    }
                    if self.exhausted() {
                        return None;
                    }
                }
            }
        }
        None
    }

    fn verify(&self, k: &FinStructure, leaves: &[usize]) -> bool {
        let nodes: Vec<Vec<u8>> = leaves.iter().map(|&i| (0..i).map(|j| k.pattern(j, i)).collect()).collect();
        canonical_form_of(&nodes, Flavor::Structural).is_ok_and(|d| d == *self.diagram)
            && self.filter.accepts(k, leaves)
    }
}

/// Searches for a witness by iterative deepening on the size of the enumerated structure.
fn witness(spec: &ClassSpec, cand: &Candidate, diagram: &SimilarityDiagram, opts: &GenerationOptions) -> Option<Vec<String>> {
    let n = cand.leaves().len();
    let mut search = WitnessSearch {
        spec,
        cand,
        diagram,
        filter: opts.filter,
        max_size: 0,
        budget: opts.budget,
        visits: 0,
    };
    let root: Segments = vec![(0, Vec::new())];
    let empty = FinStructure::empty(spec.signature().clone(), 0);
    for size in cand.shape.m()..=opts.max_size_factor * n {
        search.max_size = size;
        let mut leaves = Vec::new();
        if let Some(k) = search.dfs(&empty, &root, 0, &mut leaves) {
            return Some(
                leaves
                    .iter()
                    .map(|&i| {
                        let lits: Vec<u8> = (0..i).map(|j| k.pattern(j, i)).collect();
                        digit_string(spec, &lits)
                    })
                    .collect(),
            );
        }
        if search.exhausted() {
            break;
        }
    }
    None
}

/// Similarity types (structural flavor) of diagonal antichains representing `target`.
pub fn enumerate_types(spec: &ClassSpec, target: &FinStructure) -> Result<TypeCatalog> {
    if matches!(spec.kind(), ClassKind::Forb { .. }) {
        return Err(CoreError::Unsupported(format!(
            "type generation for {} needs an antichain filter",
            spec.name()
        )));
    }
    enumerate_types_with(spec, target, &GenerationOptions::default())
}

/// [`enumerate_types`] with an antichain filter and explicit witness bounds. Candidates without a
/// witness inside the bounds are kept with `witness: None`.
pub fn enumerate_types_with(spec: &ClassSpec, target: &FinStructure, opts: &GenerationOptions) -> Result<TypeCatalog> {
    if !spec.contains(target)? {
        return Err(CoreError::Domain(format!("target is not in {}", spec.name())));
    }
    let n = target.size();
    if n == 0 || n > MAX_GENERATION_SIZE {
        return Err(CoreError::Unsupported(format!("generation needs 1 <= n <= {MAX_GENERATION_SIZE}, got {n}")));
    }
    let code: StructureCode = target.canonical_code()?;
    let cands: Vec<Candidate> = shapes(n)
        .iter()
        .flat_map(|s| candidates(spec, s))
        .filter(|c| {
            let s = c.structure(spec);
            spec.member_unchecked(&s) && s.canonical_code().is_ok_and(|k| k == code)
        })
        .collect();
    let entries: Vec<CatalogEntry> = cands
        .par_iter()
        .map(|c| {
            let d = c.diagram();
            let w = witness(spec, c, &d, opts);
            CatalogEntry::new(d, code.clone(), w)
        })
        .collect();
    let mut cat = TypeCatalog::new();
    for e in entries {
        cat.insert(e);
    }
    Ok(cat)
}
