//! Checkers for the extremal statements: the exhaustive f-table, the girth
//! bound on transversals, and the small-case verification suites.

mod bound;
pub mod enumerate;
mod ftable;
pub mod random;
mod suite;

use thiserror::Error;

use crate::certificate::{CycleCertificate, CycleKind};
use crate::graph::{find_transversal, shortest_cycle, ColouredGraph, Length, ValidationOptions};
use crate::matroid::MatroidError;
use crate::search::SearchError;

pub use bound::{bs_bound, LogBase};
pub use ftable::{compute_f, FTableEntry, MAX_EXHAUSTIVE_N};
pub use suite::{recheck, run_suite, Failure, Family, SuiteParams, SuiteReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("n = {n} is beyond the exhaustive range (n <= {max}); use a randomized suite instead")]
    NTooLargeForExhaustive { n: usize, max: usize },
    #[error("2t = {} edges do not fit in K_{n}, which has {available}", 2 * t)]
    InfeasibleEdgeCount { n: usize, t: usize, available: usize },
    #[error("bound needs n >= 4 and k >= 2, got n = {n}, k = {k}")]
    OutOfDomain { n: usize, k: usize },
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

pub(crate) fn thread_pool(workers: usize) -> Result<rayon::ThreadPool, VerifyError> {
    if workers == 0 {
        return Err(VerifyError::InvalidParams("workers must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| VerifyError::InvalidParams(e.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GirthBoundCheck {
    pub n: usize,
    pub k: usize,
    pub transversal: Vec<usize>,
    pub girth: Length,
    pub bound: f64,
    /// A shortest cycle of the transversal, in edge indices of the input.
    pub cycle: Option<CycleCertificate>,
    pub passed: bool,
}

/// For a simple graph with `n` vertices and `n + k` colour classes of size
/// exactly 2: a transversal has `n + k` edges, so its girth is bounded by
/// [`bs_bound`], and any of its cycles is rainbow.
pub fn check_rainbow_girth_bound(g: &ColouredGraph, base: LogBase) -> Result<GirthBoundCheck, VerifyError> {
    let n = g.n_vertices();
    let opts = ValidationOptions { require_simple: true, min_class_size: 2 };
    let report = g.validate(&opts);
    if !report.is_valid() {
        return Err(VerifyError::HypothesesNotMet(report.to_string().trim_end().to_string()));
    }
    if let Some(c) = g.class_sizes().iter().position(|&s| s != 2) {
        return Err(VerifyError::HypothesesNotMet(format!("colour {c} does not have exactly 2 edges")));
    }
    if g.n_colours() < n + 2 {
        return Err(VerifyError::HypothesesNotMet(format!(
            "{} colours on {n} vertices, need at least n + 2",
            g.n_colours()
        )));
    }
    let k = g.n_colours() - n;
    let bound = bs_bound(n, k, base).map_err(|e| VerifyError::HypothesesNotMet(e.to_string()))?;
    let transversal = find_transversal(g, None).map_err(|e| VerifyError::HypothesesNotMet(e.to_string()))?;
    let h = transversal.subgraph(g);
    let cycle = shortest_cycle(&h).map(|local| {
        let edges = local.iter().map(|&i| transversal.edge_indices[i]).collect();
        CycleCertificate::new(CycleKind::Rainbow, edges)
    });
    let girth = Length::from(cycle.as_ref().map(CycleCertificate::len));
    let rainbow = cycle.as_ref().is_some_and(|c| c.verify(g).is_ok());
    let passed = rainbow && girth.finite().is_some_and(|l| l as f64 <= bound);
    Ok(GirthBoundCheck { n, k, transversal: transversal.edge_indices, girth, bound, cycle, passed })
}
