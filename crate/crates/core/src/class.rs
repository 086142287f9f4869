//! Fraïssé class specifications and membership.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::structure::{embeds, embeds_through, FinStructure, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassKind {
    LinearOrder,
    /// Structures all of whose two-element substructures are isomorphic to a member of the list.
    /// The list order is the bijection λ onto `0..k`.
    Unrestricted { constraints: Vec<FinStructure> },
    /// Structures into which no listed irreducible structure embeds.
    Forb { forbidden: Vec<FinStructure> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    name: String,
    signature: Arc<Signature>,
    kind: ClassKind,
    allowed: Vec<u8>,
}

fn swapped(s: &FinStructure) -> FinStructure {
    s.relabeled(&[1, 0])
}

impl ClassSpec {
    pub fn new(name: &str, signature: Arc<Signature>, kind: ClassKind) -> Result<Self> {
        if !signature.is_binary_only() || signature.is_empty() {
            return Err(CoreError::InvalidClass(
                "class signatures must consist of binary relations only".into(),
            ));
        }
        if signature.pattern_width() > 8 {
            return Err(CoreError::InvalidClass("too many relation symbols".into()));
        }
        match &kind {
            ClassKind::LinearOrder => {
                if *signature != *Signature::order() {
                    return Err(CoreError::InvalidClass(
                        "linear orders use the single relation `<`".into(),
                    ));
                }
            }
            ClassKind::Unrestricted { constraints } => {
                if constraints.is_empty() {
                    return Err(CoreError::InvalidClass("constraint set is empty".into()));
                }
                for (i, c) in constraints.iter().enumerate() {
                    if c.signature() != &signature || c.size() != 2 {
                        return Err(CoreError::InvalidClass(format!(
                            "constraint {i} must be a two-element structure in the class signature"
                        )));
                    }
                    if c.has_loops() {
                        return Err(CoreError::InvalidClass(format!("constraint {i} has a loop")));
                    }
                    if constraints[..i].contains(c) {
                        return Err(CoreError::InvalidClass(format!("constraint {i} is repeated")));
                    }
                    if !constraints.contains(&swapped(c)) {
                        return Err(CoreError::InvalidClass(format!(
                            "constraint set is not isomorphism-closed (constraint {i})"
                        )));
                    }
                }
            }
            ClassKind::Forb { forbidden } => {
                for (i, f) in forbidden.iter().enumerate() {
                    if f.signature() != &signature {
                        return Err(CoreError::InvalidClass(format!(
                            "forbidden structure {i} has a different signature"
                        )));
                    }
                    for a in 0..f.size() {
                        for b in a + 1..f.size() {
                            if f.pattern(a, b) == 0 {
                                return Err(CoreError::InvalidClass(format!(
                                    "forbidden structure {i} is not irreducible ({a},{b} unrelated)"
                                )));
                            }
                        }
                    }
                }
            }
        }
        let mut spec = ClassSpec { name: name.to_string(), signature, kind, allowed: Vec::new() };
        let base = FinStructure::empty(spec.signature.clone(), 1);
        let width = spec.signature.pattern_width();
        spec.allowed = (0u16..(1u16 << width))
            .map(|c| c as u8)
            .filter(|&c| spec.member_unchecked(&base.extended(&[c])))
            .collect();
        Ok(spec)
    }

    pub fn linear_order() -> Self {
        ClassSpec::new("linear-order", Signature::order(), ClassKind::LinearOrder)
            .expect("builtin class")
    }

    /// Countable random graph: λ(0) = non-edge, λ(1) = edge.
    pub fn rado() -> Self {
        let non_edge = FinStructure::graph(2, &[]);
        let edge = FinStructure::graph(2, &[(0, 1)]);
        ClassSpec::new(
            "rado",
            Signature::graph(),
            ClassKind::Unrestricted { constraints: vec![non_edge, edge] },
        )
        .expect("builtin class")
    }

    /// Triangle-free graphs.
    pub fn triangle_free() -> Self {
        ClassSpec::forb_clique(3).expect("builtin class")
    }

    pub fn forb_clique(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(CoreError::InvalidClass("forbidden clique needs at least 2 vertices".into()));
        }
        let edges: Vec<(usize, usize)> =
            (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        ClassSpec::new(
            &format!("forb-k{k}"),
            Signature::graph(),
            ClassKind::Forb { forbidden: vec![FinStructure::graph(k, &edges)] },
        )
    }

    /// All directed graphs without loops: λ = (none, 0→1, 1→0, both).
    pub fn digraph() -> Self {
        let sig = Signature::digraph();
        let mk = |t: Vec<Vec<usize>>| FinStructure::from_tuples(sig.clone(), 2, &[("E", t)]).unwrap();
        let constraints = vec![
            mk(vec![]),
            mk(vec![vec![0, 1]]),
            mk(vec![vec![1, 0]]),
            mk(vec![vec![0, 1], vec![1, 0]]),
        ];
        ClassSpec::new("digraph", sig, ClassKind::Unrestricted { constraints }).expect("builtin class")
    }

    /// Tournaments: exactly one arc between distinct vertices. λ = (0→1, 1→0).
    pub fn tournament() -> Self {
        let sig = Signature::digraph();
        let mk = |t: Vec<Vec<usize>>| FinStructure::from_tuples(sig.clone(), 2, &[("E", t)]).unwrap();
        let constraints = vec![mk(vec![vec![0, 1]]), mk(vec![vec![1, 0]])];
        ClassSpec::new("tournament", sig, ClassKind::Unrestricted { constraints })
            .expect("builtin class")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn is_linear_order(&self) -> bool {
        matches!(self.kind, ClassKind::LinearOrder)
    }

    /// Pair patterns `pattern(v, x)` allowed between two distinct vertices, ascending.
    pub fn allowed_patterns(&self) -> &[u8] {
        &self.allowed
    }

    /// Rank of a pattern among the allowed ones; this is the digit shown for a literal.
    pub fn digit_of(&self, code: u8) -> Option<usize> {
        self.allowed.binary_search(&code).ok()
    }

    /// Constraint list for unrestricted classes.
    pub fn constraints(&self) -> Option<&[FinStructure]> {
        match &self.kind {
            ClassKind::Unrestricted { constraints } => Some(constraints),
            _ => None,
        }
    }

    /// Pattern of λ(j) oriented 0 ↦ earlier, 1 ↦ later.
    pub fn lambda_pattern(&self, j: usize) -> Option<u8> {
        self.constraints().and_then(|c| c.get(j)).map(|s| s.pattern(0, 1))
    }

    fn check_signature(&self, a: &FinStructure) -> Result<()> {
        if a.signature() != &self.signature {
            return Err(CoreError::SignatureMismatch(format!(
                "structure signature does not match class {}",
                self.name
            )));
        }
        Ok(())
    }

    /// Membership in the class.
    pub fn contains(&self, a: &FinStructure) -> Result<bool> {
        self.check_signature(a)?;
        Ok(self.member_unchecked(a))
    }

    pub(crate) fn member_unchecked(&self, a: &FinStructure) -> bool {
        if a.has_loops() {
            return false;
        }
        let n = a.size();
        match &self.kind {
            ClassKind::LinearOrder => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j && a.holds2(0, i, j) == a.holds2(0, j, i) {
                            return false;
                        }
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        if !a.holds2(0, i, j) {
                            continue;
                        }
                        for k in 0..n {
                            if a.holds2(0, j, k) && !a.holds2(0, i, k) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
            ClassKind::Unrestricted { constraints } => (0..n).all(|i| {
                (i + 1..n).all(|j| {
                    let pair = a.induced(&[i, j]);
                    constraints.contains(&pair)
                })
            }),
            ClassKind::Forb { forbidden } => {
                forbidden.iter().all(|f| !embeds(f, a).expect("signature checked"))
            }
        }
    }

    /// Whether `base↾{0..j} + x` stays in the class, where `literals[i] = pattern(v_i, x)`,
    /// `j = literals.len()`, and only the last literal is new (earlier ones already checked).
    pub(crate) fn last_literal_ok(&self, base: &FinStructure, literals: &[u8]) -> bool {
        let Some((&last, earlier)) = literals.split_last() else {
            return true;
        };
        if self.allowed.binary_search(&last).is_err() {
            return false;
        }
        let l = earlier.len();
        match &self.kind {
            ClassKind::LinearOrder => {
                // pattern 1: x < v, pattern 2: v < x.
                earlier.iter().enumerate().all(|(i, &li)| {
                    if base.holds2(0, i, l) {
                        !(li == 1 && last == 2)
                    } else {
                        !(last == 1 && li == 2)
                    }
                })
            }
            ClassKind::Unrestricted { .. } => true,
            ClassKind::Forb { forbidden } => {
                if forbidden.iter().all(|f| f.size() <= 2) {
                    return true;
                }
                let ext = base.initial(l + 1).extended(literals);
                let x = l + 1;
                // A new copy of F must contain both x and v_l; requiring x suffices.
                forbidden.iter().filter(|f| f.size() > 2).all(|f| !embeds_through(f, &ext, x))
            }
        }
    }

    /// Whether the 1-type with the given literals over `base↾{0..literals.len()}` is realizable.
    pub fn extension_ok(&self, base: &FinStructure, literals: &[u8]) -> Result<bool> {
        self.check_signature(base)?;
        if literals.len() > base.size() {
            return Err(CoreError::Domain("more literals than base vertices".into()));
        }
        Ok((1..=literals.len()).all(|j| self.last_literal_ok(base, &literals[..j])))
    }

    /// All realizable 1-types over `base↾{0..m}`, in ascending literal order.
    pub fn realizable_types(&self, base: &FinStructure, m: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        self.types_rec(base, m, &mut cur, &mut out);
        out
    }

    fn types_rec(&self, base: &FinStructure, m: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for &c in &self.allowed {
            cur.push(c);
            if self.last_literal_ok(base, cur) {
                self.types_rec(base, m, cur, out);
            }
            cur.pop();
        }
    }

    /// Least realizable 1-type over `base↾{0..m}` extending `start` (which must be realizable).
    pub fn least_extension(&self, base: &FinStructure, start: &[u8], m: usize) -> Option<Vec<u8>> {
        let mut cur = start.to_vec();
        if self.least_rec(base, m, &mut cur) {
            Some(cur)
        } else {
            None
        }
    }

    fn least_rec(&self, base: &FinStructure, m: usize, cur: &mut Vec<u8>) -> bool {
        if cur.len() == m {
            return true;
        }
        for &c in &self.allowed {
            cur.push(c);
            if self.last_literal_ok(base, cur) && self.least_rec(base, m, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }

    /// The one-element structure of the class, if any.
    pub fn vertex(&self) -> Option<FinStructure> {
        let v = FinStructure::empty(self.signature.clone(), 1);
        self.member_unchecked(&v).then_some(v)
    }
}
