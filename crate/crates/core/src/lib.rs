//! Exact solvers and checkers for short rainbow cycles in edge-coloured
//! graphs, directed cycles under minimum outdegree, and rainbow circuits of
//! coloured binary and cographic matroids.

pub mod certificate;
pub mod constructions;
pub mod format;
pub mod graph;
pub mod matroid;
pub mod search;
pub mod verify;

pub use certificate::{CertificateError, CycleCertificate, CycleKind};
pub use graph::{ColouredGraph, Digraph, Edge, GraphError, Length};
pub use search::{SearchBudget, SearchError, SearchOutcome, SearchStatus};
