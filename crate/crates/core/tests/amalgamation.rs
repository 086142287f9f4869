mod common;

use bigdeg_core::*;
use common::*;
use proptest::prelude::*;

fn inclusion(a: usize, b: usize) -> EmbeddingMap {
    EmbeddingMap::new(a, b, (0..a).collect()).unwrap()
}

fn over_point(spec: &ClassSpec, b: FinStructure, c: FinStructure) -> AmalgamationInstance {
    assert!(spec.contains(&b).unwrap() && spec.contains(&c).unwrap());
    let a = b.initial(1);
    AmalgamationInstance { f: inclusion(1, b.size()), g: inclusion(1, c.size()), a, b, c }
}

fn witness_is_amalgam(inst: &AmalgamationInstance, out: &AmalgamationOutcome) -> bool {
    match out {
        AmalgamationOutcome::WitnessFound { d, r, s } => {
            is_embedding(&inst.b, d, r).unwrap()
                && is_embedding(&inst.c, d, s).unwrap()
                && (0..inst.a.size()).all(|x| r.apply(inst.f.apply(x)) == s.apply(inst.g.apply(x)))
        }
        AmalgamationOutcome::NoWitnessUpTo(_) => false,
    }
}

#[test]
fn triangle_free_edges_amalgamate_freely() {
    let spec = ClassSpec::triangle_free();
    let edge = FinStructure::graph(2, &[(0, 1)]);
    let inst = over_point(&spec, edge.clone(), edge);
    let out = check_amalgamation_bounded(&spec, &inst, 3, AmalgamationMode::Fap).unwrap();
    assert!(witness_is_amalgam(&inst, &out));
    if let AmalgamationOutcome::WitnessFound { d, .. } = &out {
        assert_eq!(d.size(), 3);
        assert!(!d.holds2(0, 1, 2));
    }
}

#[test]
fn linear_orders_have_no_free_amalgam() {
    let spec = ClassSpec::linear_order();
    let two = FinStructure::chain(&[0, 1]);
    let inst = over_point(&spec, two.clone(), two);
    let out = check_amalgamation_bounded(&spec, &inst, 3, AmalgamationMode::Fap).unwrap();
    assert_eq!(out, AmalgamationOutcome::NoWitnessUpTo(3));
    let out = check_amalgamation_bounded(&spec, &inst, 3, AmalgamationMode::Sap).unwrap();
    assert!(witness_is_amalgam(&inst, &out));
}

#[test]
fn strong_amalgamation_needs_room() {
    let spec = ClassSpec::rado();
    let edge = FinStructure::graph(2, &[(0, 1)]);
    let inst = over_point(&spec, edge.clone(), edge);
    let out = check_amalgamation_bounded(&spec, &inst, 2, AmalgamationMode::Sap).unwrap();
    assert_eq!(out, AmalgamationOutcome::NoWitnessUpTo(2));
    let out = check_amalgamation_bounded(&spec, &inst, 2, AmalgamationMode::Ap).unwrap();
    assert!(witness_is_amalgam(&inst, &out));
}

#[test]
fn sdap_graph_edge() {
    let spec = ClassSpec::rado();
    let c = FinStructure::graph(2, &[(0, 1)]);
    match check_sdap_bounded(&spec, &empty_graph(), &c, 4).unwrap() {
        SdapOutcome::VerifiedUpTo { bound, a_prime, c_prime } => {
            assert_eq!(bound, 4);
            assert_eq!(a_prime, empty_graph());
            assert_eq!(c_prime, c);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn sdap_triangle_free_non_edge() {
    let spec = ClassSpec::triangle_free();
    let c = FinStructure::graph(2, &[]);
    assert!(matches!(
        check_sdap_bounded(&spec, &empty_graph(), &c, 4).unwrap(),
        SdapOutcome::VerifiedUpTo { bound: 4, .. }
    ));
}

#[test]
fn sdap_linear_order_needs_larger_base() {
    let spec = ClassSpec::linear_order();
    let a = FinStructure::chain(&[]);
    let c = FinStructure::chain(&[0, 1]);
    match check_sdap_bounded(&spec, &a, &c, 4).unwrap() {
        SdapOutcome::VerifiedUpTo { a_prime, c_prime, .. } => {
            assert!(a_prime.size() > 0);
            assert_eq!(c_prime.size(), a_prime.size() + 2);
            assert!(spec.contains(&c_prime).unwrap());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn sdap_rejects_bad_shapes() {
    let spec = ClassSpec::rado();
    let c = FinStructure::graph(3, &[]);
    assert!(check_sdap_bounded(&spec, &empty_graph(), &c, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_amalgamate_strongly(
        na in 0usize..=3,
        bits in proptest::collection::vec(any::<bool>(), 3),
        lb in proptest::collection::vec(0u8..2, 3),
        lc in proptest::collection::vec(0u8..2, 3),
    ) {
        let edges: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .zip(bits)
            .filter(|&((_, y), on)| on && y < na)
            .map(|(e, _)| e)
            .collect();
        let a = FinStructure::graph(na, &edges);
        let b = a.extended(&lb[..na]);
        let c = a.extended(&lc[..na]);
        let spec = ClassSpec::rado();
        let inst = AmalgamationInstance {
            a: b.initial(na),
            f: inclusion(na, b.size()),
            g: inclusion(na, c.size()),
            b,
            c,
        };
        let bound = inst.b.size() + inst.c.size() - na;
        let out = check_amalgamation_bounded(&spec, &inst, bound, AmalgamationMode::Sap).unwrap();
        prop_assert!(witness_is_amalgam(&inst, &out));
    }

    #[test]
    fn triangle_free_amalgamates_freely(edges in proptest::collection::vec((0usize..3, 0usize..3), 0..3), lb in proptest::collection::vec(0u8..2, 3), lc in proptest::collection::vec(0u8..2, 3)) {
        let spec = ClassSpec::triangle_free();
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|(x, y)| x != y).collect();
        let a = FinStructure::graph(3, &edges);
        prop_assume!(spec.contains(&a).unwrap());
        let b = a.extended(&lb);
        let c = a.extended(&lc);
        prop_assume!(spec.contains(&b).unwrap() && spec.contains(&c).unwrap());
        let inst = AmalgamationInstance { f: inclusion(3, 4), g: inclusion(3, 4), a, b, c };
        let out = check_amalgamation_bounded(&spec, &inst, 5, AmalgamationMode::Fap).unwrap();
        prop_assert!(witness_is_amalgam(&inst, &out));
    }
}
