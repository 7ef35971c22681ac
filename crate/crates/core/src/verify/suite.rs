use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{binary_counterexample, ch_reduction, pec_to_directed};
use crate::format::{parse_instance, write_bcm, write_dg, write_rcg, Instance};
use crate::graph::{ColouredGraph, Digraph};
use crate::matroid::{
    gf2_rank, matroid_validate, min_rainbow_circuit, min_rainbow_cocycle, rank_of, BinaryColouredMatroid,
};
use crate::search::{
    shortest_directed_cycle, shortest_pec_cycle, shortest_rainbow_cycle, SearchBudget, SearchStatus,
};

use super::enumerate::{complete_graph_pairs, fixed_weight_masks, pairings};
use super::random::{instance_rng, random_digraph, random_main_instance};
use super::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    K5Pairings,
    CubePairings,
    BinaryN5,
    MainRandom,
    DirectedRandom,
    CounterexampleFamily,
    ReductionRoundtrip,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::K5Pairings,
        Family::CubePairings,
        Family::BinaryN5,
        Family::MainRandom,
        Family::DirectedRandom,
        Family::CounterexampleFamily,
        Family::ReductionRoundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::K5Pairings => "k5-pairings",
            Family::CubePairings => "cube-pairings",
            Family::BinaryN5 => "binary-n5",
            Family::MainRandom => "main-random",
            Family::DirectedRandom => "directed-random",
            Family::CounterexampleFamily => "counterexample-family",
            Family::ReductionRoundtrip => "reduction-roundtrip",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| VerifyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    /// Fixes the instance size where a family allows it.
    pub n: Option<usize>,
    /// Number of instances for randomized families.
    pub count: usize,
    pub seed: u64,
    pub workers: usize,
    /// Per-instance search node limit; running out fails the instance.
    pub node_limit: Option<u64>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { n: None, count: 1000, seed: 0, workers: 1, node_limit: None }
    }
}

/// A failing instance, serialized so that it can be reloaded and checked
/// again with [`recheck`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: u64,
    pub format: String,
    pub instance: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub family: Family,
    pub instances: u64,
    /// Sorted by instance index.
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "instances": self.instances,
            "failures": self.failures,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

fn ceil_half(n: usize) -> usize {
    n.div_ceil(2)
}

fn budget(cap: usize, node_limit: Option<u64>) -> SearchBudget {
    SearchBudget { max_length: Some(cap.max(1)), node_limit, time_limit: None }
}

fn miss(status: SearchStatus, what: &str, cap: usize) -> String {
    match status {
        SearchStatus::BudgetExhausted => format!("budget exhausted before finding a {what} of size <= {cap}"),
        other => format!("no {what} of size <= {cap} ({other})"),
    }
}

fn check_rainbow_bound(g: &ColouredGraph, node_limit: Option<u64>) -> Result<(), String> {
    let cap = ceil_half(g.n_vertices());
    let out = shortest_rainbow_cycle(g, &budget(cap, node_limit)).map_err(|e| e.to_string())?;
    if out.is_found() {
        Ok(())
    } else {
        Err(miss(out.status, "rainbow cycle", cap))
    }
}

fn check_cocycle_bound(g: &ColouredGraph, node_limit: Option<u64>) -> Result<(), String> {
    let cap = ceil_half(g.n_colours());
    let out = min_rainbow_cocycle(g, &budget(cap, node_limit)).map_err(|e| e.to_string())?;
    if out.is_found() {
        Ok(())
    } else {
        Err(miss(out.status, "rainbow cocycle", cap))
    }
}

fn check_circuit_bound(m: &BinaryColouredMatroid, node_limit: Option<u64>) -> Result<(), String> {
    let cap = ceil_half(m.n_colours());
    let out = min_rainbow_circuit(m, &budget(cap, node_limit)).map_err(|e| e.to_string())?;
    if out.is_found() {
        Ok(())
    } else {
        Err(miss(out.status, "rainbow circuit", cap))
    }
}

fn check_directed_bound(d: &Digraph) -> Result<(), String> {
    if d.min_outdegree() < 2 {
        return Err(format!("minimum outdegree is {}", d.min_outdegree()));
    }
    let cap = ceil_half(d.n_vertices());
    let out = shortest_directed_cycle(d).map_err(|e| e.to_string())?;
    match out.length().and_then(|l| l.finite()) {
        Some(l) if l <= cap => Ok(()),
        _ => Err(format!("shortest directed cycle is {}, bound {cap}", out.length().unwrap())),
    }
}

fn check_roundtrip(d: &Digraph, node_limit: Option<u64>) -> Result<(), String> {
    check_directed_bound(d)?;
    let g = ch_reduction(d).map_err(|e| e.to_string())?;
    let cap = ceil_half(d.n_vertices());
    let out = shortest_pec_cycle(&g, &budget(cap, node_limit)).map_err(|e| e.to_string())?;
    let Some(pec) = out.certificate.clone() else {
        return Err(miss(out.status, "properly edge-coloured cycle", cap));
    };
    let directed = pec_to_directed(&pec, d).map_err(|e| e.to_string())?;
    directed.verify_directed(d).map_err(|e| e.to_string())?;
    if directed.len() != pec.len() {
        return Err(format!("cycle of length {} mapped to length {}", pec.len(), directed.len()));
    }
    let girth = shortest_directed_cycle(d).map_err(|e| e.to_string())?.length();
    if girth != out.length() {
        return Err(format!("reduction girth {:?} differs from directed girth {girth:?}", out.length()));
    }
    Ok(())
}

fn check_counterexample(m: &BinaryColouredMatroid, node_limit: Option<u64>) -> Result<(), String> {
    let n = m.n_colours();
    if !matroid_validate(m).simple {
        return Err("matroid is not simple".into());
    }
    if gf2_rank(m) != n - 1 {
        return Err(format!("rank {} differs from n - 1 = {}", gf2_rank(m), n - 1));
    }
    let out = min_rainbow_circuit(m, &budget(n / 2, node_limit)).map_err(|e| e.to_string())?;
    match out.status {
        SearchStatus::ProvenAboveCap | SearchStatus::ProvenInfinite => Ok(()),
        SearchStatus::Found => Err(format!("rainbow circuit of size {} <= n/2", out.certificate.unwrap().column_indices.len())),
        SearchStatus::BudgetExhausted => Err("budget exhausted".into()),
    }
}

fn kind_mismatch(family: Family, expected: &str) -> String {
    format!("{family} instances are {expected} files")
}

fn check_instance(family: Family, instance: &Instance, node_limit: Option<u64>) -> Result<(), String> {
    match (family, instance) {
        (Family::K5Pairings | Family::MainRandom, Instance::Graph(g)) => check_rainbow_bound(&g.graph, node_limit),
        (Family::CubePairings, Instance::Graph(g)) => check_cocycle_bound(&g.graph, node_limit),
        (Family::BinaryN5, Instance::Matroid(m)) => check_circuit_bound(m, node_limit),
        (Family::CounterexampleFamily, Instance::Matroid(m)) => check_counterexample(m, node_limit),
        (Family::DirectedRandom, Instance::Digraph(d)) => check_directed_bound(d),
        (Family::ReductionRoundtrip, Instance::Digraph(d)) => check_roundtrip(d, node_limit),
        (Family::K5Pairings | Family::MainRandom | Family::CubePairings, _) => Err(kind_mismatch(family, "rcg")),
        (Family::BinaryN5 | Family::CounterexampleFamily, _) => Err(kind_mismatch(family, "bcm")),
        (Family::DirectedRandom | Family::ReductionRoundtrip, _) => Err(kind_mismatch(family, "dg")),
    }
}

/// Reloads a failure payload and runs the family check on it again;
/// `Some(reason)` when it still fails.
pub fn recheck(family: Family, failure: &Failure, node_limit: Option<u64>) -> Result<Option<String>, VerifyError> {
    let instance = parse_instance(&failure.instance)
        .map_err(|e| VerifyError::InvalidParams(format!("failure payload does not parse: {e}")))?;
    Ok(check_instance(family, &instance, node_limit).err())
}

fn graph_failure(index: u64, g: &ColouredGraph, reason: String) -> Failure {
    Failure { index, format: "rcg".into(), instance: write_rcg(g), reason }
}

fn digraph_failure(index: u64, d: &Digraph, reason: String) -> Failure {
    Failure { index, format: "dg".into(), instance: write_dg(d), reason }
}

fn matroid_failure(index: u64, m: &BinaryColouredMatroid, reason: String) -> Failure {
    Failure { index, format: "bcm".into(), instance: write_bcm(m), reason }
}

fn pairing_graph(n: usize, pairs: &[(usize, usize)], colours: &[usize]) -> ColouredGraph {
    let triples: Vec<_> = pairs.iter().zip(colours).map(|(&(u, v), &c)| (u, v, c)).collect();
    ColouredGraph::from_triples(n, &triples)
}

fn cube_edges() -> Vec<(usize, usize)> {
    (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect()
}

fn require_n(family: Family, given: Option<usize>, fixed: usize) -> Result<(), VerifyError> {
    match given {
        Some(n) if n != fixed => Err(VerifyError::InvalidParams(format!("{family} is defined only for n = {fixed}"))),
        _ => Ok(()),
    }
}

/// Runs a whole suite. Exhaustive families ignore `count`; randomized ones
/// draw instance `i` from stream `i` of `seed`.
pub fn run_suite(family: Family, params: &SuiteParams) -> Result<SuiteReport, VerifyError> {
    let start = Instant::now();
    let pool = super::thread_pool(params.workers)?;
    let limit = params.node_limit;
    let (instances, failures) = pool.install(|| -> Result<(u64, Vec<Failure>), VerifyError> {
        Ok(match family {
            Family::K5Pairings | Family::CubePairings => {
                let (n, edges) = if family == Family::K5Pairings {
                    require_n(family, params.n, 5)?;
                    (5, complete_graph_pairs(5))
                } else {
                    require_n(family, params.n, 6)?;
                    (8, cube_edges())
                };
                let all = pairings(edges.len());
                let failures = all
                    .par_iter()
                    .enumerate()
                    .filter_map(|(i, colours)| {
                        let g = pairing_graph(n, &edges, colours);
                        let verdict = if family == Family::K5Pairings {
                            check_rainbow_bound(&g, limit)
                        } else {
                            check_cocycle_bound(&g, limit)
                        };
                        verdict.err().map(|r| graph_failure(i as u64, &g, r))
                    })
                    .collect();
                (all.len() as u64, failures)
            }
            Family::BinaryN5 => {
                require_n(family, params.n, 5)?;
                binary_n5(limit)
            }
            Family::MainRandom => {
                let n = size_param(params.n, 5, "main-random needs n >= 5")?;
                let failures = (0..params.count as u64)
                    .into_par_iter()
                    .filter_map(|i| {
                        let mut rng = instance_rng(params.seed, i);
                        let n = n.unwrap_or_else(|| rng.gen_range(5..=12));
                        let g = random_main_instance(&mut rng, n);
                        check_rainbow_bound(&g, limit).err().map(|r| graph_failure(i, &g, r))
                    })
                    .collect();
                (params.count as u64, failures)
            }
            Family::DirectedRandom | Family::ReductionRoundtrip => {
                let n = size_param(params.n, 3, "directed suites need n >= 3")?;
                let failures = (0..params.count as u64)
                    .into_par_iter()
                    .filter_map(|i| {
                        let mut rng = instance_rng(params.seed, i);
                        let n = n.unwrap_or_else(|| rng.gen_range(3..=14));
                        let d = random_digraph(&mut rng, n);
                        let verdict = if family == Family::DirectedRandom {
                            check_directed_bound(&d)
                        } else {
                            check_roundtrip(&d, limit)
                        };
                        verdict.err().map(|r| digraph_failure(i, &d, r))
                    })
                    .collect();
                (params.count as u64, failures)
            }
            Family::CounterexampleFamily => {
                let ns = match params.n {
                    Some(n) => vec![n],
                    None => vec![6, 8, 10],
                };
                let mut failures = Vec::new();
                for (i, &n) in ns.iter().enumerate() {
                    let m = binary_counterexample(n).map_err(|e| VerifyError::InvalidParams(e.to_string()))?;
                    if let Err(r) = check_counterexample(&m, limit) {
                        failures.push(matroid_failure(i as u64, &m, r));
                    }
                }
                (ns.len() as u64, failures)
            }
        })
    })?;
    Ok(SuiteReport { family, instances, failures, elapsed: start.elapsed() })
}

fn size_param(n: Option<usize>, min: usize, message: &str) -> Result<Option<usize>, VerifyError> {
    match n {
        Some(n) if n < min => Err(VerifyError::InvalidParams(message.into())),
        other => Ok(other),
    }
}

/// Every spanning set of 10 distinct nonzero vectors of GF(2)^4, coloured
/// by every pairing. Instance index is `set * 945 + pairing`.
fn binary_n5(limit: Option<u64>) -> (u64, Vec<Failure>) {
    let sets: Vec<Vec<u128>> = fixed_weight_masks(15, 10)
        .map(|mask| (0..15).filter(|&b| mask >> b & 1 == 1).map(|b| (b + 1) as u128).collect::<Vec<_>>())
        .filter(|cols| rank_of(cols.iter().copied()) == 4)
        .collect();
    let colourings = pairings(10);
    let per_set = colourings.len() as u64;
    let failures: Vec<Vec<Failure>> = sets
        .par_iter()
        .enumerate()
        .map(|(s, cols)| {
            let mut out = Vec::new();
            for (p, colours) in colourings.iter().enumerate() {
                let m = BinaryColouredMatroid::new(4, cols.clone(), colours.clone(), 5)
                    .expect("four rows and five colours are in range");
                if let Err(r) = check_circuit_bound(&m, limit) {
                    out.push(matroid_failure(s as u64 * per_set + p as u64, &m, r));
                }
            }
            out
        })
        .collect();
    (sets.len() as u64 * per_set, failures.into_iter().flatten().collect())
}
