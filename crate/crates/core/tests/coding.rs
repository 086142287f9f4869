mod common;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use bigdeg_core::coding::parse_digits;
use bigdeg_core::*;
use common::*;

/// The enumeration of Figure 1's rationals: q2 < q5 < q0 < q3 < q1 < q4.
fn figure_one() -> EnumeratedPrefix {
    let keys = [2, 4, 0, 3, 5, 1];
    let s = linear_order_from_keys(&keys).unwrap();
    EnumeratedPrefix::from_structure(&ClassSpec::linear_order(), s).unwrap()
}

/// The triangle-free graph drawn with the G3 coding tree.
fn figure_two() -> EnumeratedPrefix {
    let edges = [(0, 1), (1, 2), (2, 3), (0, 4), (3, 4), (4, 5), (1, 6), (3, 6), (5, 6)];
    EnumeratedPrefix::from_structure(&ClassSpec::triangle_free(), FinStructure::graph(7, &edges)).unwrap()
}

fn position(t: &CodingTree, id: usize) -> String {
    let mut out = Vec::new();
    let mut cur = id;
    while let Some(p) = t.node(cur).parent {
        let kids = &t.node(p).children;
        out.push(if kids.len() > 1 && kids[1] == cur { '1' } else { '0' });
        cur = p;
    }
    out.iter().rev().collect()
}

#[test]
fn rationals_tree_golden() {
    let t = build_coding_tree(&figure_one(), 3).unwrap();
    let expected = "\
# level parent literals coding
0 - - c0
1 0 0 -
1 0 1 c1
2 1 00 c2
2 2 10 -
2 2 11 -
3 3 000 -
3 3 001 -
3 4 101 c3
3 5 111 -
";
    assert_eq!(t.dump(), expected);
    let digits: Vec<String> = (1..6)
        .map(|n| coding::digit_string(t.spec(), figure_one().coding_type(n)))
        .collect();
    assert_eq!(digits, vec!["1", "00", "101", "1111", "00100"]);
    // as drawn: a step through a non-splitting node is written 0
    let deep = build_coding_tree(&figure_one(), 5).unwrap();
    let drawn: Vec<String> = (1..6).map(|n| position(&deep, deep.coding_node(n).unwrap())).collect();
    assert_eq!(drawn, vec!["1", "00", "100", "1100", "00100"]);
    // c2 lies below both q0 and q1
    assert_eq!(figure_one().coding_type(2), &[1, 1]);
}

#[test]
fn triangle_free_tree_golden() {
    let p = figure_two();
    let digits: Vec<String> = (0..7).map(|n| coding::digit_string(p.spec(), p.coding_type(n))).collect();
    assert_eq!(digits, vec!["", "1", "01", "001", "1001", "00001", "010101"]);
    let t = build_coding_tree(&p, 4).unwrap();
    let sizes: Vec<usize> = (0..=4).map(|l| t.level(l).len()).collect();
    // types over a path avoid two consecutive edges
    assert_eq!(sizes, vec![1, 2, 3, 5, 8]);
    assert!(t.find(&[1, 1]).is_none());
    assert!(t.find(&[1, 0, 1]).is_some());
    let c4 = t.coding_node(4).unwrap();
    assert_eq!(t.digits(c4), "1001");
    // the left child of every node is the non-edge
    for id in 0..t.len() {
        if let Some(&first) = t.node(id).children.first() {
            assert_eq!(*t.node(first).ty.last().unwrap(), 0);
        }
    }
}

#[test]
fn rationals_split_once_per_level() {
    let p = build_prefix(&ClassSpec::linear_order(), 20).unwrap();
    let t = build_coding_tree(&p, 12).unwrap();
    for l in 0..12 {
        assert_eq!(t.splitting_nodes(l).len(), 1, "level {l}");
        assert_eq!(t.level(l).len(), l + 1);
        let others = t.level(l).filter(|&i| t.node(i).children.len() == 1).count();
        assert_eq!(others, l);
    }
}

#[test]
fn graph_tree_is_full_binary() {
    let p = build_prefix(&ClassSpec::rado(), 9).unwrap();
    let t = build_coding_tree(&p, 8).unwrap();
    for l in 0..=8 {
        assert_eq!(t.level(l).len(), 1 << l);
    }
}

#[test]
fn coding_trees_are_faithful() {
    for spec in [ClassSpec::linear_order(), ClassSpec::rado(), ClassSpec::triangle_free(), ClassSpec::digraph(), ClassSpec::tournament()] {
        let p = build_prefix(&spec, 9).unwrap();
        let t = build_coding_tree(&p, 8).unwrap();
        for n in 0..=8 {
            let node = t.node(t.coding_node(n).unwrap());
            assert_eq!(node.ty.stage(), n);
            for m in 0..n {
                assert_eq!(node.ty[m], p.structure().pattern(m, n), "{} ({m}, {n})", spec.name());
            }
        }
        // every node's children extend it
        for (id, node) in t.nodes().iter().enumerate() {
            for &c in &node.children {
                assert_eq!(t.node(c).parent, Some(id));
                assert_eq!(t.node(c).ty[..node.ty.len()], node.ty[..]);
            }
        }
    }
}

#[test]
fn tree_depth_bounded_by_prefix() {
    assert!(build_coding_tree(&figure_one(), 7).is_err());
}

#[test]
fn digits_parse_back() {
    let spec = ClassSpec::linear_order();
    assert_eq!(parse_digits(&spec, "0110").unwrap(), vec![1, 2, 2, 1]);
    assert!(parse_digits(&spec, "2").is_err());
}

#[test]
fn passing_numbers() {
    assert_eq!(passing_number(&[1, 0, 1], &[1]).unwrap(), 0);
    assert_eq!(passing_number(&[1, 0, 1], &[1, 0]).unwrap(), 1);
    assert!(passing_number(&[1, 0], &[0, 0]).is_err());
}

#[test]
fn lex_order() {
    assert_eq!(lex_compare(&[0, 1], &[1]).unwrap(), Ordering::Less);
    assert_eq!(lex_compare(&[1, 1], &[1, 0]).unwrap(), Ordering::Greater);
    assert!(lex_compare(&[1], &[1, 0]).is_err());
    // (x < q_i) before (q_i < x)
    assert_eq!(lex_compare(&[1, 1], &[1, 2]).unwrap(), Ordering::Less);
}

#[test]
fn meet_closures() {
    let s = vec![vec![0u8, 0], vec![0, 1]];
    let mc = meet_closure(&s);
    assert_eq!(mc, BTreeSet::from([vec![0], vec![0, 0], vec![0, 1]]));
    let chain = vec![vec![], vec![1u8], vec![1, 0]];
    assert_eq!(meet_closure(&chain), chain.iter().cloned().collect());
    let three = vec![vec![0u8, 0], vec![0, 1, 1], vec![1]];
    assert_eq!(meet_closure(&three).len(), 5);
    let again: Vec<Vec<u8>> = meet_closure(&three).into_iter().collect();
    assert_eq!(meet_closure(&again), meet_closure(&three));
}

#[test]
fn meet_closure_idempotent_and_monotone_on_small_trees() {
    let nodes: Vec<Vec<u8>> = TreeSubset::full(2, 3).nodes().iter().cloned().collect();
    for a in 0..nodes.len() {
        for b in a..nodes.len() {
            for c in b..nodes.len() {
                let set = vec![nodes[a].clone(), nodes[b].clone(), nodes[c].clone()];
                let mc: Vec<Vec<u8>> = meet_closure(&set).into_iter().collect();
                assert_eq!(meet_closure(&mc), meet_closure(&set));
                let sub = meet_closure(&set[..2]);
                assert!(sub.is_subset(&meet_closure(&set)));
            }
        }
    }
}

#[test]
fn diagonality() {
    let four = vec![vec![0u8, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    assert!(!is_diagonal(&four).unwrap());
    assert!(is_diagonal(&[vec![0u8, 1, 1]]).unwrap());
    assert!(is_diagonal(&[vec![0u8], vec![0, 1]]).is_err());
    // any two coding nodes of the rationals
    let p = build_prefix(&ClassSpec::linear_order(), 12).unwrap();
    for i in 0..12 {
        for j in i + 1..12 {
            let pair = [p.coding_type(i), p.coding_type(j)];
            if is_antichain(&pair) {
                assert!(is_diagonal(&pair).unwrap());
            }
        }
    }
}

#[test]
fn strong_subtrees() {
    let t = TreeSubset::full(2, 3);
    assert!(is_strong_subtree(&t, &t));
    let s = TreeSubset::new(
        BTreeSet::from([vec![0], vec![0, 0, 0], vec![0, 1, 0]]),
        BTreeSet::from([1, 3]),
    )
    .unwrap();
    assert!(is_strong_subtree(&t, &s));
    let lopsided = TreeSubset::new(
        BTreeSet::from([vec![0], vec![0, 0, 0], vec![0, 0, 1]]),
        BTreeSet::from([1, 3]),
    )
    .unwrap();
    assert!(!is_strong_subtree(&t, &lopsided));
    let one_side = TreeSubset::new(BTreeSet::from([vec![], vec![0]]), BTreeSet::from([0, 1])).unwrap();
    assert!(!is_strong_subtree(&t, &one_side));
    assert!(TreeSubset::new(BTreeSet::from([vec![0, 1]]), BTreeSet::from([1])).is_err());
}

#[test]
fn sauer_relations_for_graphs() {
    let spec = ClassSpec::rado();
    let edge = FinStructure::graph(2, &[(0, 1)]);
    let non_edge = FinStructure::graph(2, &[]);
    assert_eq!(sauer_relation(&spec, &[], &[1]).unwrap(), edge);
    assert_eq!(sauer_relation(&spec, &[0], &[1]).unwrap(), non_edge);
    assert_eq!(sauer_relation(&spec, &[1], &[1, 0, 1]).unwrap(), non_edge);
    assert!(sauer_relation(&spec, &[1], &[1]).is_err());
    assert!(sauer_relation(&ClassSpec::triangle_free(), &[], &[1]).is_err());
}

#[test]
fn sauer_relations_orient_digraph_arcs() {
    let spec = ClassSpec::digraph();
    let lambda = spec.constraints().unwrap();
    for j in 0..4u8 {
        assert_eq!(sauer_relation(&spec, &[], &[j]).unwrap(), lambda[j as usize]);
        assert_eq!(sauer_relation(&spec, &[j], &[]).unwrap(), lambda[j as usize].relabeled(&[1, 0]));
    }
}

#[test]
fn universal_graph_contains_small_graphs() {
    let u = UcFragment::build(&ClassSpec::rado(), 6).unwrap();
    assert_eq!(u.nodes().len(), 127);
    for n in 1..=4 {
        for g in all_graphs(n) {
            assert!(embeds(&g, u.structure()).unwrap(), "{g:?}");
        }
    }
}
