//! Edge-coloured multigraphs, simple digraphs and the basic procedures on
//! them: validation, girth and transversal extraction.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("vertex {vertex} is incident to two edges of colour {colour}")]
    AvoidVertexHasRepeatedColour { vertex: usize, colour: usize },
    #[error("colour {colour} has no eligible edge")]
    NoEligibleEdge { colour: usize },
}

/// A cycle length, girth or extremal value, where "no cycle at all" is an
/// explicit state rather than a sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(l) => Some(l),
            Length::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Length::Infinite)
    }
}

impl From<Option<usize>> for Length {
    fn from(value: Option<usize>) -> Self {
        value.map_or(Length::Infinite, Length::Finite)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(l) => write!(f, "{l}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Length {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(Length::Infinite),
            other => other
                .parse()
                .map(Length::Finite)
                .map_err(|_| format!("expected a length or \"inf\", got {other:?}")),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(l) => serializer.serialize_u64(*l as u64),
            Length::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(usize),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(l) => Ok(Length::Finite(l)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub colour: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize, colour: usize) -> Self {
        Edge { u, v, colour }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`. `x` must be an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn same_ends(&self, other: &Edge) -> bool {
        (self.u == other.u && self.v == other.v) || (self.u == other.v && self.v == other.u)
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// An edge-coloured multigraph. Edges are addressed by their position in
/// the edge list; parallel edges are allowed.
///
/// Construction performs no checks so that malformed input can still be
/// described by [`ColouredGraph::validate`]. Solvers call
/// [`ColouredGraph::ensure_well_formed`] and reject what it rejects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    n_vertices: usize,
    n_colours: usize,
    edges: Vec<Edge>,
}

impl ColouredGraph {
    pub fn new(n_vertices: usize, n_colours: usize, edges: Vec<Edge>) -> Self {
        ColouredGraph { n_vertices, n_colours, edges }
    }

    /// Builds a graph from `(u, v, colour)` triples with `n_colours` one more
    /// than the largest colour used.
    pub fn from_triples(n_vertices: usize, triples: &[(usize, usize, usize)]) -> Self {
        let n_colours = triples.iter().map(|t| t.2 + 1).max().unwrap_or(0);
        let edges = triples.iter().map(|&(u, v, c)| Edge::new(u, v, c)).collect();
        ColouredGraph::new(n_vertices, n_colours, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_colours(&self) -> usize {
        self.n_colours
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Edge indices of each colour class, ascending.
    pub fn colour_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.n_colours];
        for (i, e) in self.edges.iter().enumerate() {
            if e.colour < self.n_colours {
                classes[e.colour].push(i);
            }
        }
        classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.colour_classes().iter().map(Vec::len).collect()
    }

    pub fn min_class_size(&self) -> usize {
        self.class_sizes().into_iter().min().unwrap_or(0)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(x)).count()
    }

    /// No self-loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| !e.is_loop() && seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    /// For every vertex, the incident `(edge index, neighbour)` pairs in
    /// ascending edge order. Self-loops are skipped.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() || e.u >= self.n_vertices || e.v >= self.n_vertices {
                continue;
            }
            adj[e.u].push((i, e.v));
            adj[e.v].push((i, e.u));
        }
        adj
    }

    /// Connected component id of each vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            if e.u < self.n_vertices && e.v < self.n_vertices {
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut ids = vec![usize::MAX; self.n_vertices];
        let mut count = 0;
        let comp = (0..self.n_vertices)
            .map(|x| {
                let root = find(&mut parent, x);
                if ids[root] == usize::MAX {
                    ids[root] = count;
                    count += 1;
                }
                ids[root]
            })
            .collect();
        (comp, count)
    }

    /// The spanning subgraph keeping only the given edges, with the same
    /// vertex set and palette.
    pub fn edge_subgraph(&self, indices: &[usize]) -> ColouredGraph {
        let edges = indices.iter().map(|&i| self.edges[i]).collect();
        ColouredGraph::new(self.n_vertices, self.n_colours, edges)
    }

    pub fn validate(&self, options: &ValidationOptions) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= self.n_vertices || e.v >= self.n_vertices {
                violations.push(Violation::EndpointOutOfRange { edge: i });
            } else if e.is_loop() {
                violations.push(Violation::SelfLoop { edge: i, vertex: e.u });
            }
            if e.colour >= self.n_colours {
                violations.push(Violation::ColourOutOfRange { edge: i, colour: e.colour });
            }
        }
        if options.require_simple {
            let mut first = std::collections::HashMap::new();
            for (i, e) in self.edges.iter().enumerate() {
                if e.is_loop() {
                    continue;
                }
                let key = (e.u.min(e.v), e.u.max(e.v));
                if let Some(&j) = first.get(&key) {
                    violations.push(Violation::ParallelEdge { first: j, second: i });
                } else {
                    first.insert(key, i);
                }
            }
        }
        for (colour, size) in self.class_sizes().into_iter().enumerate() {
            if size == 0 {
                violations.push(Violation::UnusedColour { colour });
            } else if size < options.min_class_size {
                violations.push(Violation::SmallColourClass {
                    colour,
                    size,
                    required: options.min_class_size,
                });
            }
        }
        ValidationReport { violations }
    }

    /// Endpoints and colours in range and no self-loops.
    pub fn ensure_well_formed(&self) -> Result<(), GraphError> {
        let report = self.validate(&ValidationOptions::default());
        let fatal: Vec<String> = report
            .violations
            .iter()
            .filter(|v| !matches!(v, Violation::UnusedColour { .. }))
            .map(ToString::to_string)
            .collect();
        if fatal.is_empty() {
            Ok(())
        } else {
            Err(GraphError::InvalidInstance(fatal.join("; ")))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    pub require_simple: bool,
    pub min_class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoop { edge: usize, vertex: usize },
    EndpointOutOfRange { edge: usize },
    ColourOutOfRange { edge: usize, colour: usize },
    ParallelEdge { first: usize, second: usize },
    SmallColourClass { colour: usize, size: usize, required: usize },
    UnusedColour { colour: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { edge, vertex } => {
                write!(f, "edge {edge} is a self-loop at vertex {vertex}")
            }
            Violation::EndpointOutOfRange { edge } => {
                write!(f, "edge {edge} has an endpoint out of range")
            }
            Violation::ColourOutOfRange { edge, colour } => {
                write!(f, "edge {edge} has colour {colour} out of range")
            }
            Violation::ParallelEdge { first, second } => {
                write!(f, "edges {first} and {second} are parallel")
            }
            Violation::SmallColourClass { colour, size, required } => {
                write!(f, "colour {colour} has {size} edge(s), at least {required} required")
            }
            Violation::UnusedColour { colour } => write!(f, "colour {colour} is unused"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        writeln!(f, "invalid:")?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

/// Edges of a shortest cycle, ignoring colours, listed in walk order.
/// Two parallel edges form a cycle of length 2. Self-loops are ignored.
pub fn shortest_cycle(g: &ColouredGraph) -> Option<Vec<usize>> {
    let adj = g.adjacency();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; g.n_vertices()];
    let mut via = vec![usize::MAX; g.n_vertices()];
    for (skip, e) in g.edges().iter().enumerate() {
        if e.is_loop() || e.u >= g.n_vertices() || e.v >= g.n_vertices() {
            continue;
        }
        // Shortest u-v path avoiding `skip`; only paths that beat `best` matter.
        let limit = best.as_ref().map_or(usize::MAX, |b| b.len() - 1);
        dist.fill(usize::MAX);
        dist[e.u] = 0;
        let mut queue = VecDeque::from([e.u]);
        'bfs: while let Some(x) = queue.pop_front() {
            if dist[x] + 1 >= limit {
                break;
            }
            for &(f, y) in &adj[x] {
                if f != skip && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    via[y] = f;
                    if y == e.v {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        if dist[e.v] == usize::MAX {
            continue;
        }
        let mut cycle = Vec::with_capacity(dist[e.v] + 1);
        let mut x = e.v;
        while x != e.u {
            let f = via[x];
            cycle.push(f);
            x = g.edge(f).other(x);
        }
        cycle.reverse();
        cycle.push(skip);
        let done = cycle.len() == 2;
        best = Some(cycle);
        if done {
            break;
        }
    }
    best
}

/// Length of a shortest cycle, ignoring colours.
pub fn girth(g: &ColouredGraph) -> Length {
    shortest_cycle(g).map(|c| c.len()).into()
}

/// One edge of every colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// Indexed by colour.
    pub edge_indices: Vec<usize>,
}

impl Transversal {
    pub fn subgraph(&self, g: &ColouredGraph) -> ColouredGraph {
        g.edge_subgraph(&self.edge_indices)
    }
}

/// Picks the lowest-indexed eligible edge of every colour. With `avoid`,
/// no chosen edge touches that vertex, which requires the edges at `avoid`
/// to carry pairwise distinct colours.
pub fn find_transversal(
    g: &ColouredGraph,
    avoid: Option<usize>,
) -> Result<Transversal, GraphError> {
    if let Some(x) = avoid {
        let mut seen = vec![false; g.n_colours()];
        for e in g.edges().iter().filter(|e| e.touches(x)) {
            if e.colour < seen.len() {
                if seen[e.colour] {
                    return Err(GraphError::AvoidVertexHasRepeatedColour {
                        vertex: x,
                        colour: e.colour,
                    });
                }
                seen[e.colour] = true;
            }
        }
    }
    let mut pick = vec![None; g.n_colours()];
    for (i, e) in g.edges().iter().enumerate() {
        if e.colour >= g.n_colours() || avoid.is_some_and(|x| e.touches(x)) {
            continue;
        }
        pick[e.colour].get_or_insert(i);
    }
    let edge_indices = pick
        .into_iter()
        .enumerate()
        .map(|(colour, p)| p.ok_or(GraphError::NoEligibleEdge { colour }))
        .collect::<Result<_, _>>()?;
    Ok(Transversal { edge_indices })
}

/// A simple digraph: no self-arcs and at most one arc per ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n_vertices: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n_vertices: usize, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = std::collections::HashSet::with_capacity(arcs.len());
        for (i, &(t, h)) in arcs.iter().enumerate() {
            if t >= n_vertices || h >= n_vertices {
                return Err(GraphError::InvalidDigraph(format!(
                    "arc {i} ({t},{h}) has an endpoint out of range"
                )));
            }
            if t == h {
                return Err(GraphError::InvalidDigraph(format!("arc {i} is a self-arc at {t}")));
            }
            if !seen.insert((t, h)) {
                return Err(GraphError::InvalidDigraph(format!("arc ({t},{h}) repeated")));
            }
        }
        Ok(Digraph { n_vertices, arcs })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> (usize, usize) {
        self.arcs[index]
    }

    pub fn outdegrees(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_vertices];
        for &(t, _) in &self.arcs {
            out[t] += 1;
        }
        out
    }

    pub fn min_outdegree(&self) -> usize {
        self.outdegrees().into_iter().min().unwrap_or(0)
    }

    /// Outgoing `(arc index, head)` pairs per vertex, ascending arc order.
    pub fn out_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for (i, &(t, h)) in self.arcs.iter().enumerate() {
            adj[t].push((i, h));
        }
        adj
    }
}
