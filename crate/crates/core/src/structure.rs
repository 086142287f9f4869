//! Finite relational structures with unary and binary relations.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{CoreError, Result};

/// Largest size for which [`FinStructure::canonical_code`] enumerates permutations.
pub const MAX_CANONICAL_SIZE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub name: String,
    pub arity: u8,
    /// Only meaningful for arity 2.
    pub symmetric: bool,
}

impl Relation {
    pub fn binary(name: &str, symmetric: bool) -> Self {
        Relation { name: name.to_string(), arity: 2, symmetric }
    }

    pub fn unary(name: &str) -> Self {
        Relation { name: name.to_string(), arity: 1, symmetric: false }
    }
}

/// Ordered list of relation symbols. The order fixes literal encodings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    relations: Vec<Relation>,
}

impl Signature {
    pub fn new(relations: Vec<Relation>) -> Result<Arc<Self>> {
        for (i, r) in relations.iter().enumerate() {
            if r.name.is_empty() {
                return Err(CoreError::InvalidSignature("empty relation name".into()));
            }
            if r.arity != 1 && r.arity != 2 {
                return Err(CoreError::InvalidSignature(format!(
                    "relation {} has arity {}; only 1 and 2 are supported",
                    r.name, r.arity
                )));
            }
            if r.arity == 1 && r.symmetric {
                return Err(CoreError::InvalidSignature(format!(
                    "unary relation {} cannot be symmetric",
                    r.name
                )));
            }
            if relations[..i].iter().any(|q| q.name == r.name) {
                return Err(CoreError::InvalidSignature(format!("duplicate relation {}", r.name)));
            }
        }
        Ok(Arc::new(Signature { relations }))
    }

    /// One symmetric binary relation `E`.
    pub fn graph() -> Arc<Self> {
        Arc::new(Signature { relations: vec![Relation::binary("E", true)] })
    }

    /// One binary relation `<`.
    pub fn order() -> Arc<Self> {
        Arc::new(Signature { relations: vec![Relation::binary("<", false)] })
    }

    /// One non-symmetric binary relation `E`.
    pub fn digraph() -> Arc<Self> {
        Arc::new(Signature { relations: vec![Relation::binary("E", false)] })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn is_binary_only(&self) -> bool {
        self.relations.iter().all(|r| r.arity == 2)
    }

    /// Number of bits in a pair pattern: one per symmetric relation, two otherwise.
    pub fn pattern_width(&self) -> usize {
        self.relations
            .iter()
            .filter(|r| r.arity == 2)
            .map(|r| if r.symmetric { 1 } else { 2 })
            .sum()
    }
}

/// A finite structure on the universe `{0, .., size-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinStructure {
    signature: Arc<Signature>,
    size: usize,
    // One table per relation: length `size` for unary, `size * size` row-major for binary.
    tables: Vec<Vec<bool>>,
}

impl fmt::Debug for FinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinStructure(n={}", self.size)?;
        for (r, rel) in self.signature.relations().iter().enumerate() {
            write!(f, ", {}={:?}", rel.name, self.tuples(r))?;
        }
        write!(f, ")")
    }
}

impl FinStructure {
    pub fn empty(signature: Arc<Signature>, size: usize) -> Self {
        let tables = signature
            .relations()
            .iter()
            .map(|r| vec![false; if r.arity == 1 { size } else { size * size }])
            .collect();
        FinStructure { signature, size, tables }
    }

    /// Builds a structure from named tuple lists. Symmetric relations are closed under reversal.
    pub fn from_tuples(
        signature: Arc<Signature>,
        size: usize,
        tuples: &[(&str, Vec<Vec<usize>>)],
    ) -> Result<Self> {
        let mut s = FinStructure::empty(signature, size);
        for (name, list) in tuples {
            let r = s.signature.index_of(name).ok_or_else(|| {
                CoreError::InvalidStructure(format!("unknown relation symbol {name}"))
            })?;
            let arity = s.signature.relations()[r].arity as usize;
            for t in list {
                if t.len() != arity {
                    return Err(CoreError::InvalidStructure(format!(
                        "tuple {t:?} has wrong arity for {name}"
                    )));
                }
                if let Some(&bad) = t.iter().find(|&&v| v >= size) {
                    return Err(CoreError::InvalidStructure(format!(
                        "vertex {bad} out of range for size {size}"
                    )));
                }
                if arity == 1 {
                    s.set1(r, t[0], true);
                } else {
                    s.set2(r, t[0], t[1], true);
                }
            }
        }
        Ok(s)
    }

    /// Graph on `size` vertices with the given undirected edges.
    pub fn graph(size: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = FinStructure::empty(Signature::graph(), size);
        for &(a, b) in edges {
            assert!(a < size && b < size, "edge endpoint out of range");
            s.set2(0, a, b, true);
        }
        s
    }

    /// The linear order on `size` points in which vertex `order[0]` is least, and so on.
    pub fn chain(order: &[usize]) -> Self {
        let n = order.len();
        let mut s = FinStructure::empty(Signature::order(), n);
        for i in 0..n {
            for j in i + 1..n {
                s.set2(0, order[i], order[j], true);
            }
        }
        s
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn check_rel(&self, r: usize, arity: u8) {
        assert_eq!(self.signature.relations()[r].arity, arity, "relation arity mismatch");
    }

    pub fn holds1(&self, r: usize, a: usize) -> bool {
        self.tables[r][a]
    }

    pub fn holds2(&self, r: usize, a: usize, b: usize) -> bool {
        self.tables[r][a * self.size + b]
    }

    pub fn holds(&self, r: usize, tuple: &[usize]) -> bool {
        match tuple {
            [a] => {
                self.check_rel(r, 1);
                self.holds1(r, *a)
            }
            [a, b] => {
                self.check_rel(r, 2);
                self.holds2(r, *a, *b)
            }
            _ => panic!("tuple arity must be 1 or 2"),
        }
    }

    pub fn set1(&mut self, r: usize, a: usize, value: bool) {
        self.check_rel(r, 1);
        self.tables[r][a] = value;
    }

    /// Sets a binary relation, also setting the reverse pair for symmetric symbols.
    pub fn set2(&mut self, r: usize, a: usize, b: usize, value: bool) {
        self.check_rel(r, 2);
        let n = self.size;
        self.tables[r][a * n + b] = value;
        if self.signature.relations()[r].symmetric {
            self.tables[r][b * n + a] = value;
        }
    }

    /// All tuples of relation `r` in lexicographic order (both orientations for symmetric symbols).
    pub fn tuples(&self, r: usize) -> Vec<Vec<usize>> {
        let n = self.size;
        if self.signature.relations()[r].arity == 1 {
            (0..n).filter(|&a| self.holds1(r, a)).map(|a| vec![a]).collect()
        } else {
            (0..n)
                .cartesian_product(0..n)
                .filter(|&(a, b)| self.holds2(r, a, b))
                .map(|(a, b)| vec![a, b])
                .collect()
        }
    }

    pub fn has_loops(&self) -> bool {
        self.signature
            .relations()
            .iter()
            .enumerate()
            .any(|(r, rel)| rel.arity == 2 && (0..self.size).any(|a| self.holds2(r, a, a)))
    }

    /// Substructure induced on `vertices`; new vertex `i` is old vertex `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> FinStructure {
        let k = vertices.len();
        let mut s = FinStructure::empty(self.signature.clone(), k);
        for (r, rel) in self.signature.relations().iter().enumerate() {
            if rel.arity == 1 {
                for (i, &v) in vertices.iter().enumerate() {
                    s.tables[r][i] = self.holds1(r, v);
                }
            } else {
                for (i, &v) in vertices.iter().enumerate() {
                    for (j, &w) in vertices.iter().enumerate() {
                        s.tables[r][i * k + j] = self.holds2(r, v, w);
                    }
                }
            }
        }
        s
    }

    /// Induced substructure on the first `k` vertices.
    pub fn initial(&self, k: usize) -> FinStructure {
        self.induced(&(0..k).collect::<Vec<_>>())
    }

    /// Adds one isolated vertex without relations.
    pub fn push_vertex(&mut self) -> usize {
        let n = self.size;
        let m = n + 1;
        for (r, rel) in self.signature.relations().iter().enumerate() {
            if rel.arity == 1 {
                self.tables[r].push(false);
            } else {
                let old = std::mem::take(&mut self.tables[r]);
                let mut t = vec![false; m * m];
                for a in 0..n {
                    t[a * m..a * m + n].copy_from_slice(&old[a * n..a * n + n]);
                }
                self.tables[r] = t;
            }
        }
        self.size = m;
        n
    }

    /// Pair pattern of `(p, x)`: for each binary relation in signature order the bits
    /// `R(p,x)` and, unless symmetric, `R(x,p)`, packed most significant first.
    pub fn pattern(&self, p: usize, x: usize) -> u8 {
        let mut code = 0u8;
        for (r, rel) in self.signature.relations().iter().enumerate() {
            if rel.arity != 2 {
                continue;
            }
            code = (code << 1) | self.holds2(r, p, x) as u8;
            if !rel.symmetric {
                code = (code << 1) | self.holds2(r, x, p) as u8;
            }
        }
        code
    }

    /// Sets all binary relations between `p` and `x` according to a pair pattern.
    pub fn set_pattern(&mut self, p: usize, x: usize, code: u8) {
        let width = self.signature.pattern_width();
        let mut bit = width;
        let rels: Vec<Relation> = self.signature.relations().to_vec();
        for (r, rel) in rels.iter().enumerate() {
            if rel.arity != 2 {
                continue;
            }
            bit -= 1;
            self.set2(r, p, x, (code >> bit) & 1 == 1);
            if !rel.symmetric {
                bit -= 1;
                self.set2(r, x, p, (code >> bit) & 1 == 1);
            }
        }
    }

    /// Returns this structure extended by a vertex `x` with `pattern(v_i, x) = literals[i]`.
    /// The literal vector may be shorter than the universe; missing pairs get pattern 0.
    pub fn extended(&self, literals: &[u8]) -> FinStructure {
        let mut s = self.clone();
        let x = s.push_vertex();
        for (i, &c) in literals.iter().enumerate() {
            s.set_pattern(i, x, c);
        }
        s
    }

    /// Applies a permutation: vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn relabeled(&self, perm: &[usize]) -> FinStructure {
        assert_eq!(perm.len(), self.size);
        self.induced(perm)
    }

    fn code_under(&self, perm: &[usize], out: &mut Vec<bool>) {
        out.clear();
        for (r, rel) in self.signature.relations().iter().enumerate() {
            if rel.arity == 1 {
                out.extend(perm.iter().map(|&a| self.holds1(r, a)));
            } else {
                for &a in perm {
                    out.extend(perm.iter().map(|&b| self.holds2(r, a, b)));
                }
            }
        }
    }

    /// Canonical isomorphism invariant: the lexicographically least relation table over all
    /// vertex permutations. Complete for structures of size at most [`MAX_CANONICAL_SIZE`].
    pub fn canonical_code(&self) -> Result<StructureCode> {
        if self.size > MAX_CANONICAL_SIZE {
            return Err(CoreError::Domain(format!(
                "canonical code limited to size {MAX_CANONICAL_SIZE}, got {}",
                self.size
            )));
        }
        let mut best: Option<Vec<bool>> = None;
        let mut cur = Vec::new();
        for perm in (0..self.size).permutations(self.size) {
            self.code_under(&perm, &mut cur);
            if best.as_ref().is_none_or(|b| cur < *b) {
                best = Some(cur.clone());
            }
        }
        let bits = best.unwrap_or_default();
        Ok(StructureCode::new(&self.signature, self.size, &bits))
    }

    /// Canonical representative of the isomorphism class.
    pub fn canonical(&self) -> Result<FinStructure> {
        if self.size > MAX_CANONICAL_SIZE {
            return Err(CoreError::Domain("structure too large for canonical form".into()));
        }
        let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
        let mut cur = Vec::new();
        for perm in (0..self.size).permutations(self.size) {
            self.code_under(&perm, &mut cur);
            if best.as_ref().is_none_or(|(b, _)| cur < *b) {
                best = Some((cur.clone(), perm));
            }
        }
        let perm = best.map(|(_, p)| p).unwrap_or_default();
        Ok(self.relabeled(&perm))
    }
}

/// Printable canonical code, e.g. `n3[E:010101010]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct StructureCode(String);

impl StructureCode {
    fn new(sig: &Signature, size: usize, bits: &[bool]) -> Self {
        let mut s = format!("n{size}[");
        let mut pos = 0;
        for (i, rel) in sig.relations().iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let len = if rel.arity == 1 { size } else { size * size };
            s.push_str(&rel.name);
            s.push(':');
            s.extend(bits[pos..pos + len].iter().map(|&b| if b { '1' } else { '0' }));
            pos += len;
        }
        s.push(']');
        StructureCode(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StructureCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An injective vertex map from a structure of size `domain_size` into one of size `codomain_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddingMap {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub image: Vec<usize>,
}

impl EmbeddingMap {
    pub fn new(domain_size: usize, codomain_size: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain_size {
            return Err(CoreError::Domain("image length differs from domain size".into()));
        }
        if image.iter().any(|&v| v >= codomain_size) {
            return Err(CoreError::Domain("image vertex out of range".into()));
        }
        Ok(EmbeddingMap { domain_size, codomain_size, image })
    }

    pub fn identity(n: usize) -> Self {
        EmbeddingMap { domain_size: n, codomain_size: n, image: (0..n).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &EmbeddingMap) -> EmbeddingMap {
        EmbeddingMap {
            domain_size: self.domain_size,
            codomain_size: other.codomain_size,
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }
}

fn ensure_same_signature(a: &FinStructure, b: &FinStructure) -> Result<()> {
    if a.signature != b.signature {
        return Err(CoreError::SignatureMismatch(format!(
            "{:?} vs {:?}",
            a.signature.relations(),
            b.signature.relations()
        )));
    }
    Ok(())
}

/// True iff `m` is injective and preserves and reflects every relation.
pub fn is_embedding(a: &FinStructure, b: &FinStructure, m: &EmbeddingMap) -> Result<bool> {
    ensure_same_signature(a, b)?;
    if m.domain_size != a.size || m.codomain_size != b.size || m.image.len() != a.size {
        return Err(CoreError::Domain("embedding map sizes do not match structures".into()));
    }
    if m.image.iter().any(|&v| v >= b.size) || !m.image.iter().all_unique() {
        return Ok(false);
    }
    for (r, rel) in a.signature.relations().iter().enumerate() {
        if rel.arity == 1 {
            if (0..a.size).any(|i| a.holds1(r, i) != b.holds1(r, m.image[i])) {
                return Ok(false);
            }
        } else {
            for i in 0..a.size {
                for j in 0..a.size {
                    if a.holds2(r, i, j) != b.holds2(r, m.image[i], m.image[j]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Backtracking embedding search. `pinned` forces a domain vertex onto a codomain vertex.
/// The visitor returns `false` to stop the search.
pub(crate) fn search_embeddings(
    a: &FinStructure,
    b: &FinStructure,
    pinned: Option<(usize, usize)>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = a.size;
    if n > b.size {
        return;
    }
    let mut order: Vec<usize> = (0..n).collect();
    if let Some((p, _)) = pinned {
        order.retain(|&v| v != p);
        order.insert(0, p);
    }
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; b.size];
    let rels = a.signature.relations();

    let compatible = |img: &[usize], v: usize, w: usize| -> bool {
        for (r, rel) in rels.iter().enumerate() {
            if rel.arity == 1 {
                if a.holds1(r, v) != b.holds1(r, w) {
                    return false;
                }
            } else {
                if a.holds2(r, v, v) != b.holds2(r, w, w) {
                    return false;
                }
                for (u, &iu) in img.iter().enumerate() {
                    if iu == usize::MAX {
                        continue;
                    }
                    if a.holds2(r, v, u) != b.holds2(r, w, iu) || a.holds2(r, u, v) != b.holds2(r, iu, w)
                    {
                        return false;
                    }
                }
            }
        }
        true
    };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        order: &[usize],
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pinned: Option<(usize, usize)>,
        bsize: usize,
        compatible: &dyn Fn(&[usize], usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(img);
        }
        let v = order[depth];
        let candidates: Vec<usize> = match pinned {
            Some((p, w)) if p == v => vec![w],
            _ => (0..bsize).collect(),
        };
        for w in candidates {
            if used[w] || !compatible(img, v, w) {
                continue;
            }
            img[v] = w;
            used[w] = true;
            let go_on = rec(depth + 1, order, img, used, pinned, bsize, compatible, visit);
            used[w] = false;
            img[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(0, &order, &mut img, &mut used, pinned, b.size, &compatible, visit);
}

/// All embeddings of `a` into `b`, sorted lexicographically by image.
pub fn embeddings(a: &FinStructure, b: &FinStructure) -> Result<Vec<EmbeddingMap>> {
    ensure_same_signature(a, b)?;
    let mut out = Vec::new();
    search_embeddings(a, b, None, &mut |img| {
        out.push(EmbeddingMap { domain_size: a.size, codomain_size: b.size, image: img.to_vec() });
        true
    });
    out.sort();
    Ok(out)
}

/// Whether some embedding of `a` into `b` exists.
pub fn embeds(a: &FinStructure, b: &FinStructure) -> Result<bool> {
    ensure_same_signature(a, b)?;
    let mut found = false;
    search_embeddings(a, b, None, &mut |_| {
        found = true;
        false
    });
    Ok(found)
}

/// Whether some embedding of `a` into `b` has vertex `x` of `b` in its image.
pub(crate) fn embeds_through(a: &FinStructure, b: &FinStructure, x: usize) -> bool {
    let mut found = false;
    for p in 0..a.size {
        search_embeddings(a, b, Some((p, x)), &mut |_| {
            found = true;
            false
        });
        if found {
            return true;
        }
    }
    false
}

/// True iff a bijective embedding exists. Structures with different signatures are not isomorphic.
pub fn is_isomorphic(a: &FinStructure, b: &FinStructure) -> bool {
    if a.signature != b.signature || a.size != b.size {
        return false;
    }
    let mut found = false;
    search_embeddings(a, b, None, &mut |_| {
        found = true;
        false
    });
    found
}
