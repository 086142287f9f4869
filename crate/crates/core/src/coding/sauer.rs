//! Sauer's universal structure `U_C` on `k^{<ω}`.

use crate::class::{ClassKind, ClassSpec};
use crate::coding::seq::lex_compare;
use crate::error::{CoreError, Result};
use crate::structure::FinStructure;

fn constraints(spec: &ClassSpec) -> Result<&[FinStructure]> {
    match spec.kind() {
        ClassKind::Unrestricted { constraints } => Ok(constraints),
        _ => Err(CoreError::Domain("U_C needs an unrestricted class".into())),
    }
}

/// The structure induced on `{s, t}` with `s ↦ 0`, `t ↦ 1`.
///
/// For `|s| < |t|` this is `λ(t(|s|))`; for equal lengths it is `λ(0)` with the lex-smaller node
/// in the role of `0`.
pub fn sauer_relation(spec: &ClassSpec, s: &[u8], t: &[u8]) -> Result<FinStructure> {
    let lambda = constraints(spec)?;
    if s == t {
        return Err(CoreError::Domain("sauer_relation needs distinct nodes".into()));
    }
    let k = lambda.len();
    if s.iter().chain(t).any(|&d| d as usize >= k) {
        return Err(CoreError::Domain(format!("digit outside alphabet of size {k}")));
    }
    let rel = if s.len() < t.len() {
        lambda[t[s.len()] as usize].clone()
    } else if t.len() < s.len() {
        lambda[s[t.len()] as usize].relabeled(&[1, 0])
    } else if lex_compare(s, t)?.is_lt() {
        lambda[0].clone()
    } else {
        lambda[0].relabeled(&[1, 0])
    };
    Ok(rel)
}

/// `k^{≤depth}` with the relations of `U_C`.
#[derive(Clone, Debug)]
pub struct UcFragment {
    depth: usize,
    nodes: Vec<Vec<u8>>,
    structure: FinStructure,
}

impl UcFragment {
    pub fn build(spec: &ClassSpec, depth: usize) -> Result<Self> {
        let lambda = constraints(spec)?;
        let k = lambda.len() as u8;
        let mut nodes = vec![Vec::new()];
        let mut start = 0;
        for _ in 0..depth {
            let end = nodes.len();
            for i in start..end {
                for d in 0..k {
                    let mut t = nodes[i].clone();
                    t.push(d);
                    nodes.push(t);
                }
            }
            start = end;
        }
        let mut structure = FinStructure::empty(spec.signature().clone(), nodes.len());
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let rel = sauer_relation(spec, &nodes[i], &nodes[j])?;
                structure.set_pattern(i, j, rel.pattern(0, 1));
            }
        }
        Ok(UcFragment { depth, nodes, structure })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Nodes by length, then lexicographically; vertex `i` of the structure is `nodes()[i]`.
    pub fn nodes(&self) -> &[Vec<u8>] {
        &self.nodes
    }

    pub fn structure(&self) -> &FinStructure {
        &self.structure
    }

    pub fn index_of(&self, t: &[u8]) -> Option<usize> {
        self.nodes.iter().position(|n| n == t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fragment_size() {
        let f = UcFragment::build(&ClassSpec::rado(), 3).unwrap();
        assert_eq!(f.nodes().len(), 15);
        assert_eq!(f.index_of(&[1, 0]), Some(5));
    }

    #[test]
    fn longer_first_is_swapped() {
        let spec = ClassSpec::digraph();
        // t(|s|) = 1 selects λ(1) = arc 0→1, oriented from the shorter node.
        let r = sauer_relation(&spec, &[1], &[]).unwrap();
        assert!(r.holds2(0, 1, 0) && !r.holds2(0, 0, 1));
    }

    #[test]
    fn rejects_non_unrestricted() {
        assert!(sauer_relation(&ClassSpec::linear_order(), &[], &[0]).is_err());
    }
}
