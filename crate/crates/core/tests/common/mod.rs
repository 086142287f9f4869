//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use bigdeg_core::{FinStructure, Signature};
use itertools::Itertools;
use num_rational::Rational64;

/// Whether `map` is an embedding, checked on every relation and every ordered pair.
pub fn is_embedding_brute(a: &FinStructure, b: &FinStructure, map: &[usize]) -> bool {
    let rels = a.signature().relations().len();
    (0..rels).all(|r| {
        (0..a.size()).all(|x| (0..a.size()).all(|y| x == y || a.holds2(r, x, y) == b.holds2(r, map[x], map[y])))
    })
}

/// Number of embeddings by trying every injective map.
pub fn count_embeddings_brute(a: &FinStructure, b: &FinStructure) -> usize {
    (0..b.size())
        .permutations(a.size())
        .filter(|m| is_embedding_brute(a, b, m))
        .count()
}

pub fn isomorphic_brute(a: &FinStructure, b: &FinStructure) -> bool {
    a.size() == b.size() && count_embeddings_brute(a, b) > 0
}

/// All graphs on `{0, .., n-1}`.
pub fn all_graphs(n: usize) -> Vec<FinStructure> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            FinStructure::graph(n, &edges)
        })
        .collect()
}

pub fn has_triangle(g: &FinStructure) -> bool {
    (0..g.size()).tuple_combinations().any(|(a, b, c)| g.holds2(0, a, b) && g.holds2(0, b, c) && g.holds2(0, a, c))
}

/// Number of isomorphism classes, by pairwise brute-force comparison.
pub fn iso_classes_brute(structures: &[FinStructure]) -> usize {
    let mut reps: Vec<&FinStructure> = Vec::new();
    for s in structures {
        if !reps.iter().any(|r| isomorphic_brute(r, s)) {
            reps.push(s);
        }
    }
    reps.len()
}

pub fn empty_graph() -> FinStructure {
    FinStructure::empty(Signature::graph(), 0)
}

/// 1/2, 1/4, 3/4, 1/8, 3/8, ...
pub fn dyadic(n: usize) -> Vec<Rational64> {
    let mut out = Vec::new();
    let mut den = 2i64;
    while out.len() < n {
        let mut k = 1;
        while k < den && out.len() < n {
            out.push(Rational64::new(k, den));
            k += 2;
        }
        den *= 2;
    }
    out
}

/// The Calkin–Wilf sequence 1, 1/2, 2, 1/3, 3/2, ...
pub fn calkin_wilf(n: usize) -> Vec<Rational64> {
    let mut out = vec![Rational64::from_integer(1)];
    while out.len() < n {
        let q = *out.last().expect("nonempty");
        out.push(Rational64::from_integer(1) / (q.floor() * 2 - q + 1));
    }
    out
}

fn is_prefix(s: &[u8], t: &[u8]) -> bool {
    s.len() <= t.len() && t[..s.len()] == *s
}

fn meet(s: &[u8], t: &[u8]) -> Vec<u8> {
    s.iter().zip(t).take_while(|(a, b)| a == b).map(|(a, _)| *a).collect()
}

fn closure(nodes: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = nodes.to_vec();
    for (s, t) in nodes.iter().tuple_combinations() {
        out.push(meet(s, t));
    }
    out.sort();
    out.dedup();
    out
}

/// Which extra clause the bijection must preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `t(|s|)` for every `|s| < |t|`.
    PassingNumbers,
    /// Lex order of incomparable nodes.
    Lex,
    /// Lex order, plus `t(|s|)` whenever both are in the set.
    LexAndCoding,
}

/// Similarity by search over all bijections of the meet closures.
pub fn similar_brute(a: &[Vec<u8>], b: &[Vec<u8>], clause: Clause) -> bool {
    let ma = closure(a);
    let mb = closure(b);
    if ma.len() != mb.len() {
        return false;
    }
    let in_a = |s: &Vec<u8>| a.contains(s);
    let in_b = |s: &Vec<u8>| b.contains(s);
    (0..mb.len()).permutations(mb.len()).any(|perm| {
        let f = |i: usize| &mb[perm[i]];
        for i in 0..ma.len() {
            if in_a(&ma[i]) != in_b(f(i)) {
                return false;
            }
            for j in 0..ma.len() {
                let (s, t) = (&ma[i], &ma[j]);
                let (fs, ft) = (f(i), f(j));
                if is_prefix(s, t) != is_prefix(fs, ft) || (s.len() < t.len()) != (fs.len() < ft.len()) {
                    return false;
                }
                let incomparable = !is_prefix(s, t) && !is_prefix(t, s);
                if incomparable != (!is_prefix(fs, ft) && !is_prefix(ft, fs)) {
                    return false;
                }
                let lex = |x: &[u8], y: &[u8]| {
                    let k = meet(x, y).len();
                    x[k] < y[k]
                };
                if matches!(clause, Clause::Lex | Clause::LexAndCoding) && incomparable && lex(s, t) != lex(fs, ft) {
                    return false;
                }
                let passing = match clause {
                    Clause::PassingNumbers => true,
                    Clause::LexAndCoding => in_a(s) && in_a(t),
                    Clause::Lex => false,
                };
                if passing && s.len() < t.len() && t[s.len()] != ft[fs.len()] {
                    return false;
                }
            }
        }
        true
    })
}
