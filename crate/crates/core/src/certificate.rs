//! Cycle certificates and their independent re-verification.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColouredGraph, Digraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    Rainbow,
    Pec,
    Directed,
    Plain,
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleKind::Rainbow => "rainbow",
            CycleKind::Pec => "pec",
            CycleKind::Directed => "directed",
            CycleKind::Plain => "plain",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("a cycle needs at least two edges")]
    TooShort,
    #[error("edge {0} is not in the host")]
    EdgeOutOfRange(usize),
    #[error("edge {0} is used twice")]
    RepeatedEdge(usize),
    #[error("edges do not form a closed walk")]
    NotClosed,
    #[error("vertex {0} is visited twice")]
    RepeatedVertex(usize),
    #[error("colour {0} appears twice")]
    RepeatedColour(usize),
    #[error("edges at positions {0} and {1} are consecutive and share a colour")]
    AdjacentSameColour(usize, usize),
    #[error("a {0} certificate cannot be checked against this host")]
    WrongHost(CycleKind),
}

/// A cycle given as edge (or arc) positions in its host, in walk order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCertificate {
    pub kind: CycleKind,
    pub edge_indices: Vec<usize>,
}

/// JSON shape of a certificate: edges are `[u, v, colour]` for undirected
/// kinds and `[tail, head]` for directed ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: CycleKind,
    pub length: usize,
    pub edges: Vec<Vec<usize>>,
    pub edge_indices: Vec<usize>,
}

impl CycleCertificate {
    pub fn new(kind: CycleKind, edge_indices: Vec<usize>) -> Self {
        CycleCertificate { kind, edge_indices }
    }

    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    /// Checks the certificate against an undirected host and returns the
    /// vertex sequence `v0, v1, ...` where edge `i` joins `v_i` and `v_{i+1}`.
    pub fn verify(&self, g: &ColouredGraph) -> Result<Vec<usize>, CertificateError> {
        if self.kind == CycleKind::Directed {
            return Err(CertificateError::WrongHost(self.kind));
        }
        let vertices = closed_walk(g, &self.edge_indices)?;
        let colours: Vec<usize> = self.edge_indices.iter().map(|&i| g.edge(i).colour).collect();
        match self.kind {
            CycleKind::Rainbow => {
                let mut seen = std::collections::HashSet::new();
                if let Some(&c) = colours.iter().find(|&&c| !seen.insert(c)) {
                    return Err(CertificateError::RepeatedColour(c));
                }
            }
            CycleKind::Pec => {
                let k = colours.len();
                for i in 0..k {
                    if colours[i] == colours[(i + 1) % k] {
                        return Err(CertificateError::AdjacentSameColour(i, (i + 1) % k));
                    }
                }
            }
            CycleKind::Plain | CycleKind::Directed => {}
        }
        Ok(vertices)
    }

    /// Checks a directed certificate and returns the tails in cycle order.
    pub fn verify_directed(&self, d: &Digraph) -> Result<Vec<usize>, CertificateError> {
        if self.kind != CycleKind::Directed {
            return Err(CertificateError::WrongHost(self.kind));
        }
        let k = self.edge_indices.len();
        if k < 2 {
            return Err(CertificateError::TooShort);
        }
        if let Some(&i) = self.edge_indices.iter().find(|&&i| i >= d.n_arcs()) {
            return Err(CertificateError::EdgeOutOfRange(i));
        }
        let mut seen_arcs = std::collections::HashSet::new();
        let mut seen_vertices = std::collections::HashSet::new();
        let mut tails = Vec::with_capacity(k);
        for (pos, &i) in self.edge_indices.iter().enumerate() {
            if !seen_arcs.insert(i) {
                return Err(CertificateError::RepeatedEdge(i));
            }
            let (t, h) = d.arc(i);
            let (next_tail, _) = d.arc(self.edge_indices[(pos + 1) % k]);
            if h != next_tail {
                return Err(CertificateError::NotClosed);
            }
            if !seen_vertices.insert(t) {
                return Err(CertificateError::RepeatedVertex(t));
            }
            tails.push(t);
        }
        Ok(tails)
    }

    pub fn to_json(&self, g: &ColouredGraph) -> CertificateJson {
        let edges = self
            .edge_indices
            .iter()
            .map(|&i| {
                let e = g.edge(i);
                vec![e.u, e.v, e.colour]
            })
            .collect();
        CertificateJson {
            kind: self.kind,
            length: self.len(),
            edges,
            edge_indices: self.edge_indices.clone(),
        }
    }

    pub fn to_json_directed(&self, d: &Digraph) -> CertificateJson {
        let edges = self
            .edge_indices
            .iter()
            .map(|&i| {
                let (t, h) = d.arc(i);
                vec![t, h]
            })
            .collect();
        CertificateJson {
            kind: self.kind,
            length: self.len(),
            edges,
            edge_indices: self.edge_indices.clone(),
        }
    }
}

/// Walks the edges in order and checks they close up into a cycle with
/// pairwise distinct vertices.
fn closed_walk(g: &ColouredGraph, edges: &[usize]) -> Result<Vec<usize>, CertificateError> {
    if edges.len() < 2 {
        return Err(CertificateError::TooShort);
    }
    let mut seen = std::collections::HashSet::new();
    for &i in edges {
        if i >= g.n_edges() {
            return Err(CertificateError::EdgeOutOfRange(i));
        }
        if !seen.insert(i) {
            return Err(CertificateError::RepeatedEdge(i));
        }
        if g.edge(i).is_loop() {
            return Err(CertificateError::NotClosed);
        }
    }
    let first = g.edge(edges[0]);
    let mut err = CertificateError::NotClosed;
    for start in [first.u, first.v] {
        match walk_from(g, edges, start) {
            Ok(vs) => return Ok(vs),
            Err(CertificateError::NotClosed) => {}
            Err(e) => err = e,
        }
    }
    Err(err)
}

fn walk_from(g: &ColouredGraph, edges: &[usize], start: usize) -> Result<Vec<usize>, CertificateError> {
    let mut vertices = Vec::with_capacity(edges.len());
    let mut at = start;
    for &i in edges {
        let e = g.edge(i);
        if !e.touches(at) {
            return Err(CertificateError::NotClosed);
        }
        if vertices.contains(&at) {
            return Err(CertificateError::RepeatedVertex(at));
        }
        vertices.push(at);
        at = e.other(at);
    }
    if at != start {
        return Err(CertificateError::NotClosed);
    }
    Ok(vertices)
}
