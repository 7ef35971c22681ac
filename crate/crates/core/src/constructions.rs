//! Generators for the extremal instances and the digraph reduction.
//!
//! Every generator is a pure function of its size parameter with a fixed
//! vertex, edge and column order, so written instances are byte-stable.

use thiserror::Error;

use crate::certificate::{CertificateError, CycleCertificate, CycleKind};
use crate::graph::{ColouredGraph, Digraph, Edge};
use crate::matroid::BinaryColouredMatroid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("n = {n} is too small, need n >= {min}")]
    NTooSmall { n: usize, min: usize },
    #[error("n = {0} must be even and at least 6")]
    NOddOrTooSmall(usize),
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("vertex {0} has outdegree 0")]
    IsolatedOutVertex(usize),
    #[error("not a properly edge-coloured cycle of the reduction: {0}")]
    NotPec(String),
    #[error("edge {0} does not come from the reduction")]
    EdgeNotFromReduction(usize),
}

/// Vertices `Z/nZ`, edges `i(i+1)` and `i(i+2)`, both coloured `i`.
/// Edge `2i` is `i(i+1)` and edge `2i+1` is `i(i+2)`.
pub fn circulant_instance(n: usize) -> Result<ColouredGraph, ConstructionError> {
    if n < 5 {
        return Err(ConstructionError::NTooSmall { n, min: 5 });
    }
    let edges = (0..n)
        .flat_map(|i| [Edge::new(i, (i + 1) % n, i), Edge::new(i, (i + 2) % n, i)])
        .collect();
    Ok(ColouredGraph::new(n, n, edges))
}

/// The wheel on `n` vertices with hub 0 and rim `1..n`. Colour `i - 1`
/// is the two-edge path formed by rim edge `i(i+1)` and spoke `0i`, so
/// every rainbow cycle avoids the hub.
pub fn wheel_instance(n: usize) -> Result<ColouredGraph, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::NTooSmall { n, min: 4 });
    }
    let rim = n - 1;
    let edges = (1..=rim)
        .flat_map(|i| {
            let next = if i == rim { 1 } else { i + 1 };
            [Edge::new(i, next, i - 1), Edge::new(0, i, i - 1)]
        })
        .collect();
    Ok(ColouredGraph::new(n, rim, edges))
}

/// [`wheel_instance`] with the class of rim edge `(n-2)(n-1)` removed and
/// the remaining colours renumbered. No rainbow cycle survives.
pub fn wheel_minus_class(n: usize) -> Result<ColouredGraph, ConstructionError> {
    let wheel = wheel_instance(n)?;
    let dropped = n - 3;
    let edges = wheel
        .edges()
        .iter()
        .filter(|e| e.colour != dropped)
        .map(|e| Edge::new(e.u, e.v, if e.colour > dropped { e.colour - 1 } else { e.colour }))
        .collect();
    Ok(ColouredGraph::new(n, n - 2, edges))
}

/// Forgets orientations: arc `(i, j)` becomes edge `ij` of colour `i`, at
/// the same position. A digon becomes two parallel edges.
pub fn ch_reduction(d: &Digraph) -> Result<ColouredGraph, ConstructionError> {
    if let Some(v) = d.outdegrees().iter().position(|&k| k == 0) {
        return Err(ConstructionError::IsolatedOutVertex(v));
    }
    let edges = d.arcs().iter().map(|&(t, h)| Edge::new(t, h, t)).collect();
    Ok(ColouredGraph::new(d.n_vertices(), d.n_vertices(), edges))
}

/// Maps a properly edge-coloured cycle of `ch_reduction(d)` back to the
/// directed cycle of `d` on the same arcs.
pub fn pec_to_directed(
    cycle: &CycleCertificate,
    d: &Digraph,
) -> Result<CycleCertificate, ConstructionError> {
    if let Some(&i) = cycle.edge_indices.iter().find(|&&i| i >= d.n_arcs()) {
        return Err(ConstructionError::EdgeNotFromReduction(i));
    }
    let g = ch_reduction(d)?;
    let as_pec = CycleCertificate::new(CycleKind::Pec, cycle.edge_indices.clone());
    let vertices = as_pec.verify(&g).map_err(|e| ConstructionError::NotPec(e.to_string()))?;

    let k = vertices.len();
    let forward = (0..k).all(|i| d.arc(cycle.edge_indices[i]) == (vertices[i], vertices[(i + 1) % k]));
    let arcs = if forward {
        cycle.edge_indices.clone()
    } else {
        cycle.edge_indices.iter().rev().copied().collect()
    };
    let directed = CycleCertificate::new(CycleKind::Directed, arcs);
    directed.verify_directed(d).map_err(|e: CertificateError| {
        ConstructionError::NotPec(format!("arcs are not consistently oriented ({e})"))
    })?;
    Ok(directed)
}

/// The binary matroid on `2n` columns over GF(2)^(n-1): first
/// `e_1, ..., e_{n-1}, 1`, then `e_i + e_{i+1}` for `i <= n-3`,
/// `e_1 + e_{n-2}`, `e_{n-2} + e_{n-1}`, `1 + e_{n-2}`. Column `j` has
/// colour `j mod n`, so each colour pairs column `j` with `n + j`.
/// Row `r` (0-based) holds the coordinate of `e_{r+1}`.
pub fn binary_counterexample(n: usize) -> Result<BinaryColouredMatroid, ConstructionError> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(ConstructionError::NOddOrTooSmall(n));
    }
    let rows = n - 1;
    let e = |i: usize| 1u128 << (i - 1);
    let ones = (1u128 << rows) - 1;
    let mut columns: Vec<u128> = (1..n).map(e).collect();
    columns.push(ones);
    columns.extend((1..=n - 3).map(|i| e(i) | e(i + 1)));
    columns.push(e(1) | e(n - 2));
    columns.push(e(n - 2) | e(n - 1));
    columns.push(ones ^ e(n - 2));
    let colours = (0..2 * n).map(|j| j % n).collect();
    Ok(BinaryColouredMatroid::new(rows, columns, colours, n)
        .expect("construction stays within the supported row count"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_transversal, girth, GraphError, Length, ValidationOptions};

    #[test]
    fn circulant_is_simple_with_pairs() {
        for n in 5..12 {
            let g = circulant_instance(n).unwrap();
            assert!(g.is_simple());
            assert_eq!(g.n_edges(), 2 * n);
            assert!(g.class_sizes().iter().all(|&s| s == 2));
        }
        let opts = ValidationOptions { require_simple: true, min_class_size: 2 };
        assert!(circulant_instance(7).unwrap().validate(&opts).is_valid());
        assert_eq!(girth(&circulant_instance(7).unwrap()), Length::Finite(3));
    }

    #[test]
    fn circulant_five_is_k5() {
        let g = circulant_instance(5).unwrap();
        let mut pairs: Vec<_> = g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 10);
    }

    #[test]
    fn small_n_is_rejected() {
        assert_eq!(circulant_instance(4), Err(ConstructionError::NTooSmall { n: 4, min: 5 }));
        assert!(wheel_instance(3).is_err());
        assert!(wheel_minus_class(3).is_err());
        assert_eq!(binary_counterexample(7), Err(ConstructionError::NOddOrTooSmall(7)));
        assert_eq!(binary_counterexample(4), Err(ConstructionError::NOddOrTooSmall(4)));
    }

    #[test]
    fn circulant_vertex_zero_repeats_its_colour() {
        let g = circulant_instance(7).unwrap();
        assert_eq!(
            find_transversal(&g, Some(0)),
            Err(GraphError::AvoidVertexHasRepeatedColour { vertex: 0, colour: 0 })
        );
    }

    #[test]
    fn wheel_five_matches_the_drawing() {
        let g = wheel_instance(5).unwrap();
        let expected = [(1, 2, 0), (0, 1, 0), (2, 3, 1), (0, 2, 1), (3, 4, 2), (0, 3, 2), (4, 1, 3), (0, 4, 3)];
        let got: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.colour)).collect();
        assert_eq!(got, expected);
        assert!(g.class_sizes().iter().all(|&s| s == 2));
    }

    #[test]
    fn wheel_minus_class_sizes() {
        for (n, m) in [(4, 4), (5, 6), (6, 8)] {
            let g = wheel_minus_class(n).unwrap();
            assert_eq!(g.n_edges(), m);
            assert_eq!(g.n_colours(), n - 2);
            assert!(g.class_sizes().iter().all(|&s| s == 2));
            assert!(!g.edges().iter().any(|e| (e.u, e.v) == (n - 2, n - 1)));
        }
    }

    #[test]
    fn reduction_of_directed_triangle() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let g = ch_reduction(&d).unwrap();
        let got: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.colour)).collect();
        assert_eq!(got, vec![(0, 1, 0), (1, 2, 1), (2, 0, 2)]);
        let pec = CycleCertificate::new(CycleKind::Pec, vec![2, 1, 0]);
        let directed = pec_to_directed(&pec, &d).unwrap();
        assert_eq!(directed.edge_indices, vec![0, 1, 2]);
    }

    #[test]
    fn reduction_keeps_digons_as_parallel_edges() {
        let d = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let g = ch_reduction(&d).unwrap();
        assert_eq!(g.n_edges(), 2);
        assert!(!g.is_simple());
        assert_eq!(g.class_sizes(), vec![1, 1]);
    }

    #[test]
    fn reduction_needs_every_outdegree_positive() {
        let d = Digraph::new(4, vec![(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(ch_reduction(&d), Err(ConstructionError::IsolatedOutVertex(0)));
    }

    #[test]
    fn class_sizes_equal_outdegrees() {
        let d = Digraph::new(4, vec![(0, 1), (0, 2), (1, 2), (2, 3), (3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(ch_reduction(&d).unwrap().class_sizes(), d.outdegrees());
    }

    #[test]
    fn directed_four_cycle_round_trips() {
        let d = Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pec = CycleCertificate::new(CycleKind::Pec, vec![0, 1, 2, 3]);
        assert_eq!(pec_to_directed(&pec, &d).unwrap().len(), 4);
    }

    #[test]
    fn non_pec_cycle_is_rejected() {
        // 0->1, 0->2, 1->2, 2->0: the triangle 01, 12, 20 is directed, but
        // 01, 12, 02 has two colour-0 edges at vertex 0
        let d = Digraph::new(3, vec![(0, 1), (0, 2), (1, 2), (2, 0)]).unwrap();
        let cycle = CycleCertificate::new(CycleKind::Pec, vec![0, 2, 1]);
        assert!(matches!(pec_to_directed(&cycle, &d), Err(ConstructionError::NotPec(_))));
        let cycle = CycleCertificate::new(CycleKind::Pec, vec![0, 9, 1]);
        assert_eq!(pec_to_directed(&cycle, &d), Err(ConstructionError::EdgeNotFromReduction(9)));
    }

    #[test]
    fn binary_counterexample_six_matches_the_printed_matrix() {
        let m = binary_counterexample(6).unwrap();
        // rows top to bottom, columns left to right
        let printed = [
            "100001100101",
            "010001110001",
            "001001011001",
            "000101001110",
            "000011000011",
        ];
        for (r, row) in printed.iter().enumerate() {
            for (j, bit) in row.chars().enumerate() {
                assert_eq!(m.columns()[j] >> r & 1 == 1, bit == '1', "row {r} column {j}");
            }
        }
        for j in 0..6 {
            assert_eq!(m.colours()[j], m.colours()[j + 6]);
        }
    }
}
