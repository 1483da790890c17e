//! Property tests for the algebraic invariants: exact ring laws, sign
//! soundness, the positivity decomposition, and the BFS root invariants
//! on arbitrary small graphs.

use std::sync::Arc;

use proptest::prelude::*;

use coxfold::form::FormMatrix;
use coxfold::graph::{parse::parse_document, CoxeterGraph, Label, VertexId};
use coxfold::roots::{enumerate_positive_roots, EnumerationCaps};
use coxfold::scalar::{Scalar, Sign};

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-12i64..=12, 1i64..=6), 8).prop_map(|coeffs| {
        let mut acc = Scalar::zero();
        for (k, (n, d)) in coeffs.into_iter().enumerate() {
            let basis = Scalar::sqrt(coxfold::scalar::BASIS_RADICANDS[k]);
            acc = acc + basis.scale(&num::BigRational::new(n.into(), d.into()));
        }
        acc
    })
}

proptest! {
    #[test]
    fn ring_laws_hold_exactly(a in scalar(), b in scalar(), c in scalar()) {
        // commutativity and associativity
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // distributivity
        let left = &a * &(b.clone() + c.clone());
        let right = (&a * &b) + (&a * &c);
        prop_assert_eq!(left, right);
        // additive inverse
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn squares_are_never_negative(a in scalar()) {
        let sq = &a * &a;
        prop_assert_ne!(sq.sign(), Sign::Negative);
        prop_assert_eq!(sq.is_zero(), a.is_zero());
    }

    #[test]
    fn sign_matches_rational_arithmetic(a in rational(), b in rational()) {
        let sum = a.clone() + b.clone();
        let expected = (a.as_rational().unwrap() + b.as_rational().unwrap()).cmp(
            &num::BigRational::from_integer(0.into()),
        );
        let got = match sum.sign() {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        };
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn positive_cone_decomposition(
        xs in prop::collection::vec(0i64..=9, 4),
        ys in prop::collection::vec(0i64..=9, 4),
        s in 0usize..4,
    ) {
        // if x + y is supported on one coordinate, both summands are
        let x: Vec<Scalar> = xs.iter().map(|&v| Scalar::from_integer(v)).collect();
        let y: Vec<Scalar> = ys.iter().map(|&v| Scalar::from_integer(v)).collect();
        let sum: Vec<Scalar> = x
            .iter()
            .zip(y.iter())
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        let supported_on_s = sum
            .iter()
            .enumerate()
            .all(|(i, c)| i == s || c.is_zero());
        if supported_on_s {
            for v in [&x, &y] {
                for (i, c) in v.iter().enumerate() {
                    if i != s {
                        prop_assert!(c.is_zero());
                    }
                }
            }
        }
    }
}

fn arbitrary_graph() -> impl Strategy<Value = CoxeterGraph> {
    // up to five vertices with arbitrary supported labels
    let label = prop_oneof![
        3 => Just(Label::Finite(3)),
        2 => Just(Label::Finite(2)),
        1 => Just(Label::Finite(4)),
        1 => Just(Label::Finite(5)),
        1 => Just(Label::Finite(6)),
        1 => Just(Label::Infinite),
    ];
    (2usize..=5, prop::collection::vec(label, 10)).prop_map(|(n, labels)| {
        let vertices: Vec<VertexId> = (1..=n as i64).map(VertexId).collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 1..=n as i64 {
            for j in (i + 1)..=n as i64 {
                edges.push((VertexId(i), VertexId(j), labels[k % labels.len()]));
                k += 1;
            }
        }
        CoxeterGraph::new(vertices, edges).expect("valid random graph")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bfs_roots_have_uniform_sign_and_norm_two(graph in arbitrary_graph()) {
        let graph = Arc::new(graph);
        let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
        let set = enumerate_positive_roots(&form, 4, EnumerationCaps::default()).unwrap();
        let two = Scalar::from_integer(2);
        for root in &set.roots {
            let mut saw_positive = false;
            for c in &root.coords {
                match c.sign() {
                    Sign::Negative => prop_assert!(false, "negative coordinate in a stored root"),
                    Sign::Positive => saw_positive = true,
                    Sign::Zero => {}
                }
            }
            prop_assert!(saw_positive);
            prop_assert_eq!(form.bilinear(&root.coords, &root.coords).unwrap(), two.clone());
        }
    }

    #[test]
    fn components_reassemble_the_label_function(graph in arbitrary_graph()) {
        let mut all: Vec<(VertexId, VertexId, Label)> = Vec::new();
        for comp in graph.component_sets() {
            let sub = graph.full_subgraph(&comp);
            all.extend(sub.edges());
        }
        all.sort();
        let mut orig: Vec<_> = graph.edges().collect();
        orig.sort();
        prop_assert_eq!(all, orig);
    }

    #[test]
    fn parse_round_trips_the_label_function(graph in arbitrary_graph()) {
        let mut text = String::new();
        let ids: Vec<i64> = graph.vertices().iter().map(|v| v.0).collect();
        text.push_str(&format!(
            "vertices {}\n",
            ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
        ));
        for (a, b, l) in graph.edges() {
            text.push_str(&format!("edge {}-{} label {}\n", a.0, b.0, l));
        }
        let parsed = parse_document(&text).unwrap();
        prop_assert_eq!(parsed.graph.n(), graph.n());
        for &a in graph.vertices() {
            for &b in graph.vertices() {
                prop_assert_eq!(parsed.graph.label(a, b), graph.label(a, b));
            }
        }
    }
}
