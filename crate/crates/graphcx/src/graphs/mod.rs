//! Labeled graphs with ordered edges, neutral/operational vertex split,
//! canonicalization with sign, and constrained enumeration.

pub mod canon;
mod enumerate;
mod graph;
mod perm;

pub use enumerate::{enumerate_classes, enumerate_graphs, enumerate_graphs_with_budget, Constraints, DEFAULT_VERTEX_BUDGET};
pub use graph::{
    act, act_neutral, cable, canonicalize, class_info, complete, components_of, connected_components, euler_char,
    is_connected, is_isomorphic_signed, polygon, Canonical, ClassInfo, Isomorphism, LabeledGraph, SignedGraph,
};
pub use perm::{all_permutations, cycle, shuffles, sort_parity_odd, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("graph is odd (vanishes under symmetrization)")]
    OddGraph,
    #[error("{vertices} vertices exceed the vertex budget {budget}")]
    BudgetExceeded { vertices: usize, budget: usize },
    #[error("a graph needs at least one vertex")]
    EmptyGraph,
    #[error("malformed graph: {0:?}")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(r: usize, n: usize, e: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(r, n, e.to_vec()).unwrap()
    }

    #[test]
    fn act_examples() {
        let edge = g(0, 2, &[(1, 2)]);
        assert_eq!(act(&Permutation::identity(2), &edge).unwrap(), edge);
        let swap = Permutation::from_images(vec![2, 1]).unwrap();
        let c = canonicalize(&act(&swap, &edge).unwrap());
        assert_eq!(c, Canonical::Signed(SignedGraph { graph: edge.clone(), sign: 1 }));
        let looped = g(0, 2, &[(1, 1)]);
        assert_eq!(act(&swap, &looped).unwrap(), g(0, 2, &[(2, 2)]));
        assert!(act(&Permutation::identity(3), &edge).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let square = g(4, 0, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert!(canonicalize(&square).is_zero());
        assert!(!canonicalize(&polygon(5)).is_zero());
        assert!(canonicalize(&g(2, 1, &[(1, 3), (1, 2), (3, 1)])).is_zero());
    }

    #[test]
    fn isomorphism_examples() {
        let p = polygon(5);
        assert_eq!(is_isomorphic_signed(&p, &p).unwrap(), Isomorphism::EqualPlus);
        let swapped = p.reorder_edges(&[1, 0, 2, 3, 4]);
        assert_eq!(is_isomorphic_signed(&p, &swapped).unwrap(), Isomorphism::EqualMinus);
        assert_eq!(is_isomorphic_signed(&g(2, 0, &[(1, 2)]), &g(2, 0, &[])).unwrap(), Isomorphism::Distinct);
        assert_eq!(is_isomorphic_signed(&polygon(4), &p), Err(GraphError::OddGraph));
    }

    #[test]
    fn enumeration_examples() {
        let c = Constraints { connected: true, min_valence: Some(3), no_loops: true, ..Default::default() };
        let k4 = enumerate_graphs(4, 0, 6, &c).unwrap();
        assert_eq!(k4.len(), 1);
        assert!(is_isomorphic_signed(&k4[0], &complete(4)).unwrap() != Isomorphism::Distinct);
        let single = enumerate_graphs(1, 0, 0, &Constraints::default()).unwrap();
        assert_eq!(single, vec![g(1, 0, &[])]);
        let c2 = Constraints { connected: true, exact_valence: Some(2), ..Default::default() };
        assert!(enumerate_graphs(4, 0, 4, &c2).unwrap().is_empty());
        assert!(matches!(enumerate_graphs(11, 0, 0, &Constraints::default()), Err(GraphError::BudgetExceeded { .. })));
    }

    #[test]
    fn components_and_euler() {
        assert_eq!(connected_components(&g(2, 0, &[(1, 2)])).len(), 1);
        assert_eq!(connected_components(&g(2, 0, &[])).len(), 2);
        assert_eq!(connected_components(&g(3, 0, &[(1, 1), (2, 3)])).len(), 2);
        assert_eq!(euler_char(&complete(4)), -2);
        assert_eq!(euler_char(&g(2, 0, &[(1, 2)])), 1);
        assert_eq!(euler_char(&polygon(5)), 0);
    }

    #[test]
    fn key_round_trip() {
        let x = g(2, 1, &[(1, 3), (2, 2)]);
        let s = x.to_string();
        assert_eq!(s, "g r=2 n=1 e=2 : 1-3, 2-2");
        assert_eq!(s.parse::<LabeledGraph>().unwrap(), x);
        assert_eq!("g r=1 n=0 e=0 :".parse::<LabeledGraph>().unwrap(), g(1, 0, &[]));
        assert!("g r=1 n=0 e=1 : 1-2".parse::<LabeledGraph>().is_err());
    }
}
