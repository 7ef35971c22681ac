use rgw_core::constructions::{binary_counterexample, ch_reduction, circulant_instance, pec_to_directed};
use rgw_core::format::{parse_bcm, parse_dg, parse_rcg, write_bcm, write_rcg};
use rgw_core::graph::{Digraph, Length};
use rgw_core::matroid::{cycle_matroid, min_rainbow_circuit};
use rgw_core::search::{shortest_directed_cycle, shortest_pec_cycle, shortest_rainbow_cycle, SearchBudget};
use rgw_core::verify::{recheck, run_suite, Family, SuiteParams};

#[test]
fn circulant_five_gives_triangle_both_ways() {
    let g = circulant_instance(5).unwrap();
    let graph = shortest_rainbow_cycle(&g, &SearchBudget::unlimited()).unwrap();
    let matroid = min_rainbow_circuit(&cycle_matroid(&g).unwrap(), &SearchBudget::unlimited()).unwrap();
    assert_eq!(graph.length(), Some(Length::Finite(3)));
    assert_eq!(matroid.length(), graph.length());
}

#[test]
fn written_instances_solve_like_the_originals() {
    for n in 5..=9 {
        let g = circulant_instance(n).unwrap();
        let reloaded = parse_rcg(&write_rcg(&g)).unwrap().graph;
        assert_eq!(
            shortest_rainbow_cycle(&g, &SearchBudget::unlimited()).unwrap(),
            shortest_rainbow_cycle(&reloaded, &SearchBudget::unlimited()).unwrap()
        );
    }
    let m = binary_counterexample(8).unwrap();
    let reloaded = parse_bcm(&write_bcm(&m)).unwrap();
    assert_eq!(
        min_rainbow_circuit(&m, &SearchBudget::unlimited()).unwrap(),
        min_rainbow_circuit(&reloaded, &SearchBudget::unlimited()).unwrap()
    );
}

#[test]
fn reduction_preserves_cycle_lengths() {
    let d = parse_dg("dg 5 10\n0 1\n0 2\n1 2\n1 3\n2 3\n2 4\n3 4\n3 0\n4 0\n4 1\n").unwrap();
    let directed = shortest_directed_cycle(&d).unwrap();
    let g = ch_reduction(&d).unwrap();
    let pec = shortest_pec_cycle(&g, &SearchBudget::unlimited()).unwrap();
    assert_eq!(directed.length(), pec.length());
    let mapped = pec_to_directed(&pec.certificate.unwrap(), &d).unwrap();
    assert_eq!(Some(Length::Finite(mapped.len())), directed.length());
    mapped.verify_directed(&d).unwrap();
}

#[test]
fn digon_reduction_has_a_two_cycle() {
    let d = Digraph::new(3, vec![(0, 1), (1, 0), (1, 2), (2, 0), (0, 2), (2, 1)]).unwrap();
    let g = ch_reduction(&d).unwrap();
    assert!(!g.is_simple());
    let pec = shortest_pec_cycle(&g, &SearchBudget::unlimited()).unwrap();
    assert_eq!(pec.length(), Some(Length::Finite(2)));
    let mapped = pec_to_directed(&pec.certificate.unwrap(), &d).unwrap();
    assert_eq!(mapped.edge_indices.len(), 2);
}

#[test]
fn suite_reports_are_independent_of_workers() {
    let one = SuiteParams { count: 200, seed: 9, workers: 1, ..Default::default() };
    let three = SuiteParams { workers: 3, ..one };
    for family in [Family::MainRandom, Family::ReductionRoundtrip] {
        let a = run_suite(family, &one).unwrap();
        let b = run_suite(family, &three).unwrap();
        assert_eq!((a.instances, &a.failures), (b.instances, &b.failures));
    }
}

#[test]
fn budget_failures_are_reproducible() {
    let params = SuiteParams { count: 30, seed: 1, node_limit: Some(2), ..Default::default() };
    let report = run_suite(Family::MainRandom, &params).unwrap();
    assert!(!report.passed());
    for failure in &report.failures {
        assert_eq!(recheck(Family::MainRandom, failure, Some(2)).unwrap().as_ref(), Some(&failure.reason));
    }
    let indices: Vec<u64> = report.failures.iter().map(|f| f.index).collect();
    let mut sorted = indices.clone();
    sorted.sort_unstable();
    assert_eq!(indices, sorted);
}
