use crate::graph::ColouredGraph;
use crate::search::{Certificate, Meter, SearchBudget, SearchOutcome, SearchStatus};

use super::{BinaryColouredMatroid, MatroidError, MAX_ROWS};

/// Largest vertex count the cut enumeration accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// An inclusion-minimal edge cut `δ(S)`, with `S` the side containing the
/// smallest vertex of its component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CocycleCertificate {
    pub edge_indices: Vec<usize>,
    pub side: Vec<usize>,
}

impl Certificate for CocycleCertificate {
    fn size(&self) -> usize {
        self.edge_indices.len()
    }
}

impl CocycleCertificate {
    pub fn verify(&self, g: &ColouredGraph) -> Result<(), String> {
        let n = g.n_vertices();
        if self.side.is_empty() || self.side.iter().any(|&v| v >= n) {
            return Err("side is empty or out of range".into());
        }
        let mut in_side = vec![false; n];
        for &v in &self.side {
            if std::mem::replace(&mut in_side[v], true) {
                return Err(format!("vertex {v} repeated in side"));
            }
        }
        let (comp, count) = g.components();
        let c = comp[self.side[0]];
        if self.side.iter().any(|&v| comp[v] != c) {
            return Err("side spans several components".into());
        }
        let other: Vec<usize> = (0..n).filter(|&v| comp[v] == c && !in_side[v]).collect();
        if other.is_empty() {
            return Err("side is a whole component".into());
        }
        let mut cut: Vec<usize> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| in_side[e.u] != in_side[e.v])
            .map(|(i, _)| i)
            .collect();
        cut.sort_unstable();
        let mut claimed = self.edge_indices.clone();
        claimed.sort_unstable();
        if cut != claimed {
            return Err("edge set is not the cut of the side".into());
        }
        for part in [&self.side, &other] {
            if !induced_connected(g, part) {
                return Err("a side of the cut is disconnected, so the cut is not minimal".into());
            }
        }
        let kept: Vec<usize> = (0..g.n_edges()).filter(|i| claimed.binary_search(i).is_err()).collect();
        if g.edge_subgraph(&kept).components().1 <= count {
            return Err("removing the edges does not disconnect".into());
        }
        Ok(())
    }
}

fn induced_connected(g: &ColouredGraph, part: &[usize]) -> bool {
    let inside: std::collections::HashSet<usize> = part.iter().copied().collect();
    let adj = g.adjacency();
    let mut seen = std::collections::HashSet::from([part[0]]);
    let mut stack = vec![part[0]];
    while let Some(x) = stack.pop() {
        for &(_, y) in &adj[x] {
            if inside.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == part.len()
}

/// All cocycles with at most `max_size` edges, sorted by size and then by
/// edge indices. Vertex sides are enumerated per connected component and a
/// cut is kept when both sides induce connected subgraphs.
pub fn enumerate_cocycles(
    g: &ColouredGraph,
    max_size: usize,
) -> Result<Vec<CocycleCertificate>, MatroidError> {
    enumerate_cocycles_with_cap(g, max_size, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_cocycles_with_cap(
    g: &ColouredGraph,
    max_size: usize,
    vertex_cap: usize,
) -> Result<Vec<CocycleCertificate>, MatroidError> {
    let mut out = Vec::new();
    let mut meter = Meter::new(&SearchBudget::unlimited());
    CutScan::new(g, vertex_cap)?.run(max_size, &mut meter, |c| out.push(c));
    out.sort();
    out.dedup();
    out.sort_by_key(|c| c.edge_indices.len());
    Ok(out)
}

/// Smallest cocycle whose edges carry pairwise distinct colours, i.e. a
/// smallest rainbow circuit of the cocycle matroid. Ties go to the
/// lexicographically smallest edge set.
pub fn min_rainbow_cocycle(
    g: &ColouredGraph,
    budget: &SearchBudget,
) -> Result<SearchOutcome<CocycleCertificate>, MatroidError> {
    budget.validate().map_err(|e| MatroidError::InvalidBudget(e.to_string()))?;
    let scan = CutScan::new(g, DEFAULT_ENUMERATION_CAP)?;
    let cap = budget.max_length.unwrap_or(g.n_edges()).min(g.n_edges());
    let mut meter = Meter::new(budget);
    let mut best: Option<CocycleCertificate> = None;
    let mut seen = vec![false; g.n_colours()];
    scan.run(cap, &mut meter, |c| {
        seen.fill(false);
        let rainbow = c.edge_indices.iter().all(|&i| !std::mem::replace(&mut seen[g.edge(i).colour], true));
        let better = best.as_ref().is_none_or(|b| {
            (c.edge_indices.len(), &c.edge_indices) < (b.edge_indices.len(), &b.edge_indices)
        });
        if rainbow && better {
            best = Some(c);
        }
    });
    if meter.exhausted() {
        return Ok(SearchOutcome::without(SearchStatus::BudgetExhausted, meter.explored(), 0));
    }
    match best {
        Some(cert) => {
            cert.verify(g).map_err(MatroidError::CertificateRejected)?;
            Ok(SearchOutcome::found(cert, meter.explored()))
        }
        None if cap >= g.n_edges() => {
            Ok(SearchOutcome::without(SearchStatus::ProvenInfinite, meter.explored(), cap))
        }
        None => Ok(SearchOutcome::without(SearchStatus::ProvenAboveCap, meter.explored(), cap)),
    }
}

struct CutScan<'a> {
    g: &'a ColouredGraph,
    neighbours: Vec<u64>,
    components: Vec<u64>,
}

impl<'a> CutScan<'a> {
    fn new(g: &'a ColouredGraph, vertex_cap: usize) -> Result<Self, MatroidError> {
        g.ensure_well_formed().map_err(|e| MatroidError::InvalidMatroid(e.to_string()))?;
        let n = g.n_vertices();
        if n > vertex_cap.min(64) {
            return Err(MatroidError::TooLargeForEnumeration { vertices: n, cap: vertex_cap.min(64) });
        }
        let mut neighbours = vec![0u64; n];
        for e in g.edges() {
            neighbours[e.u] |= 1 << e.v;
            neighbours[e.v] |= 1 << e.u;
        }
        let (comp, count) = g.components();
        let mut components = vec![0u64; count];
        for (v, &c) in comp.iter().enumerate() {
            components[c] |= 1 << v;
        }
        Ok(CutScan { g, neighbours, components })
    }

    fn connected(&self, mask: u64) -> bool {
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.neighbours[v];
            }
            frontier = next & mask & !seen;
            seen |= frontier;
        }
        seen == mask
    }

    fn run(&self, max_size: usize, meter: &mut Meter, mut visit: impl FnMut(CocycleCertificate)) {
        for &comp in &self.components {
            if comp.count_ones() < 2 {
                continue;
            }
            let edges: Vec<(usize, u64, u64)> = self
                .g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| comp >> e.u & 1 == 1)
                .map(|(i, e)| (i, 1u64 << e.u, 1u64 << e.v))
                .collect();
            let root = comp & comp.wrapping_neg();
            let rest = comp & !root;
            let mut sub = 0u64;
            loop {
                if !meter.tick() {
                    return;
                }
                let side = root | sub;
                if side != comp {
                    let cut = edges.iter().filter(|&&(_, a, b)| (side & a == 0) != (side & b == 0)).count();
                    if cut <= max_size && self.connected(side) && self.connected(comp & !side) {
                        let edge_indices = edges
                            .iter()
                            .filter(|&&(_, a, b)| (side & a == 0) != (side & b == 0))
                            .map(|&(i, _, _)| i)
                            .collect();
                        let side = (0..64).filter(|&v| side >> v & 1 == 1).collect();
                        visit(CocycleCertificate { edge_indices, side });
                    }
                }
                sub = sub.wrapping_sub(rest) & rest;
                if sub == 0 {
                    break;
                }
            }
        }
    }
}

/// The vertex-edge incidence matrix over GF(2); its circuits are the cycles
/// of `g`, with parallel edges giving equal columns.
pub fn cycle_matroid(g: &ColouredGraph) -> Result<BinaryColouredMatroid, MatroidError> {
    g.ensure_well_formed().map_err(|e| MatroidError::InvalidMatroid(e.to_string()))?;
    if g.n_vertices() > MAX_ROWS {
        return Err(MatroidError::InvalidMatroid(format!(
            "{} vertices exceed the supported {MAX_ROWS} rows",
            g.n_vertices()
        )));
    }
    let columns = g.edges().iter().map(|e| 1u128 << e.u | 1u128 << e.v).collect();
    let colours = g.edges().iter().map(|e| e.colour).collect();
    BinaryColouredMatroid::new(g.n_vertices(), columns, colours, g.n_colours())
}
