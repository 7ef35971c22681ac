use crate::graph::ColouredGraph;

use super::{Meter, SearchBudget, SearchError};

/// One of the three branches of a theta, from `x` to `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Two branch vertices joined by three internally disjoint paths whose
/// edges carry pairwise distinct colours. Paths are ordered by vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta {
    pub x: usize,
    pub y: usize,
    pub paths: [ThetaPath; 3],
}

impl Theta {
    pub fn n_vertices(&self) -> usize {
        2 + self.paths.iter().map(|p| p.vertices.len() - 2).sum::<usize>()
    }

    pub fn edges(&self) -> Vec<usize> {
        self.paths.iter().flat_map(|p| p.edges.iter().copied()).collect()
    }

    pub fn verify(&self, g: &ColouredGraph) -> Result<(), String> {
        let mut colours = std::collections::HashSet::new();
        let mut interior = std::collections::HashSet::new();
        for (k, p) in self.paths.iter().enumerate() {
            if p.vertices.len() != p.edges.len() + 1 || p.edges.is_empty() {
                return Err(format!("path {k} is malformed"));
            }
            if p.vertices[0] != self.x || *p.vertices.last().unwrap() != self.y {
                return Err(format!("path {k} does not run from x to y"));
            }
            for (i, &e) in p.edges.iter().enumerate() {
                let edge = g.edges().get(e).ok_or(format!("edge {e} out of range"))?;
                let (a, b) = (p.vertices[i], p.vertices[i + 1]);
                if !(edge.touches(a) && edge.other(a) == b) {
                    return Err(format!("edge {e} does not join {a} and {b}"));
                }
                if !colours.insert(edge.colour) {
                    return Err(format!("colour {} repeated", edge.colour));
                }
            }
            for &v in &p.vertices[1..p.vertices.len() - 1] {
                if v == self.x || v == self.y || !interior.insert(v) {
                    return Err(format!("vertex {v} is shared"));
                }
            }
        }
        if self.paths.windows(2).any(|w| w[0].vertices.len() > w[1].vertices.len()) {
            return Err("paths are not ordered by vertex count".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSearch {
    pub theta: Option<Theta>,
    /// True when the search ran to completion, so `theta` has the fewest
    /// vertices possible (or none exists).
    pub exhaustive: bool,
    pub explored: u64,
}

struct RawPath {
    edges: Vec<usize>,
    vertices: Vec<usize>,
    interior: u128,
    colours: u128,
}

/// Rainbow theta with the fewest vertices. `budget.max_length`, when set,
/// caps the number of vertices of the theta.
pub fn find_rainbow_theta(
    g: &ColouredGraph,
    budget: &SearchBudget,
) -> Result<ThetaSearch, SearchError> {
    g.ensure_well_formed()?;
    budget.validate()?;
    if g.n_vertices() > 128 || g.n_colours() > 128 {
        return Err(SearchError::TooLarge(
            "theta search supports at most 128 vertices and 128 colours".into(),
        ));
    }
    let n = g.n_vertices();
    let adj = g.adjacency();
    let mut meter = Meter::new(budget);
    // Total edge count of a theta is its vertex count plus one.
    let mut best_edges = budget.max_length.map_or(n + 2, |cap| cap.min(n) + 2);
    let mut best: Option<Theta> = None;

    'pairs: for x in 0..n {
        if adj[x].len() < 3 {
            continue;
        }
        for y in x + 1..n {
            if adj[y].len() < 3 {
                continue;
            }
            // each branch has at least one edge, so one branch has at most
            // best_edges - 3 edges
            if best_edges < 4 {
                break 'pairs;
            }
            let max_path = best_edges - 3;
            let mut paths = Vec::new();
            let mut walk = PathWalk {
                g,
                adj: &adj,
                target: y,
                max_edges: max_path,
                edges: Vec::new(),
                vertices: vec![x],
                interior: 0,
                colours: 0,
            };
            walk.run(x, &mut paths, &mut meter);
            if meter.exhausted() {
                break 'pairs;
            }
            paths.sort_by(|a, b| a.edges.len().cmp(&b.edges.len()).then_with(|| a.edges.cmp(&b.edges)));
            if let Some((i, j, k)) = best_triple(&paths, best_edges, &mut meter) {
                best_edges = paths[i].edges.len() + paths[j].edges.len() + paths[k].edges.len();
                let take = |p: &RawPath| ThetaPath { vertices: p.vertices.clone(), edges: p.edges.clone() };
                best = Some(Theta { x, y, paths: [take(&paths[i]), take(&paths[j]), take(&paths[k])] });
            }
            if meter.exhausted() {
                break 'pairs;
            }
        }
    }

    if let Some(theta) = &best {
        theta.verify(g).map_err(SearchError::CertificateRejected)?;
    }
    Ok(ThetaSearch { theta: best, exhaustive: !meter.exhausted(), explored: meter.explored() })
}

/// Pairwise compatible triple `i < j < k` with total edge count below
/// `bound`, minimising the total.
fn best_triple(paths: &[RawPath], mut bound: usize, meter: &mut Meter) -> Option<(usize, usize, usize)> {
    let mut best = None;
    let disjoint = |a: &RawPath, b: &RawPath| a.interior & b.interior == 0 && a.colours & b.colours == 0;
    for i in 0..paths.len() {
        let li = paths[i].edges.len();
        if 3 * li >= bound {
            break;
        }
        for j in i + 1..paths.len() {
            let lj = paths[j].edges.len();
            if li + 2 * lj >= bound {
                break;
            }
            if !disjoint(&paths[i], &paths[j]) {
                continue;
            }
            for k in j + 1..paths.len() {
                let lk = paths[k].edges.len();
                if li + lj + lk >= bound {
                    break;
                }
                if !meter.tick() {
                    return best;
                }
                if disjoint(&paths[i], &paths[k]) && disjoint(&paths[j], &paths[k]) {
                    bound = li + lj + lk;
                    best = Some((i, j, k));
                    break;
                }
            }
        }
    }
    best
}

struct PathWalk<'a> {
    g: &'a ColouredGraph,
    adj: &'a [Vec<(usize, usize)>],
    target: usize,
    max_edges: usize,
    edges: Vec<usize>,
    vertices: Vec<usize>,
    interior: u128,
    colours: u128,
}

impl PathWalk<'_> {
    /// Collects every rainbow path from the current end to `target`.
    fn run(&mut self, at: usize, out: &mut Vec<RawPath>, meter: &mut Meter) {
        if !meter.tick() || self.edges.len() == self.max_edges {
            return;
        }
        for &(e, w) in &self.adj[at] {
            let c = self.g.edge(e).colour;
            if self.colours >> c & 1 == 1 {
                continue;
            }
            if w == self.target {
                let mut edges = self.edges.clone();
                edges.push(e);
                let mut vertices = self.vertices.clone();
                vertices.push(w);
                out.push(RawPath { edges, vertices, interior: self.interior, colours: self.colours | 1 << c });
                continue;
            }
            if w == self.vertices[0] || self.interior >> w & 1 == 1 {
                continue;
            }
            self.edges.push(e);
            self.vertices.push(w);
            self.interior |= 1 << w;
            self.colours |= 1 << c;
            self.run(w, out, meter);
            self.edges.pop();
            self.vertices.pop();
            self.interior &= !(1 << w);
            self.colours &= !(1 << c);
            if meter.exhausted() {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn distinct(n: usize, pairs: &[(usize, usize)]) -> ColouredGraph {
        let t: Vec<_> = pairs.iter().enumerate().map(|(i, &(u, v))| (u, v, i)).collect();
        ColouredGraph::from_triples(n, &t)
    }

    #[test]
    fn k4_has_a_four_vertex_theta() {
        let g = distinct(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let found = find_rainbow_theta(&g, &SearchBudget::unlimited()).unwrap();
        assert!(found.exhaustive);
        let theta = found.theta.unwrap();
        assert_eq!(theta.n_vertices(), 4);
        theta.verify(&g).unwrap();
        assert_eq!(theta.paths[0].vertices.len(), 2);
    }

    #[test]
    fn five_cycle_has_no_theta() {
        let g = distinct(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let found = find_rainbow_theta(&g, &SearchBudget::unlimited()).unwrap();
        assert!(found.exhaustive);
        assert!(found.theta.is_none());
    }

    #[test]
    fn theta_graph_is_its_own_witness() {
        // branches 0-1, 0-2-1, 0-3-4-1
        let g = distinct(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]);
        let theta = find_rainbow_theta(&g, &SearchBudget::unlimited()).unwrap().theta.unwrap();
        assert_eq!((theta.x, theta.y), (0, 1));
        assert_eq!(theta.n_vertices(), 5);
        let mut edges = theta.edges();
        edges.sort_unstable();
        assert_eq!(edges, vec![0, 1, 2, 3, 4, 5]);
        let sizes: Vec<usize> = theta.paths.iter().map(|p| p.vertices.len()).collect();
        assert_eq!(sizes, vec![2, 3, 4]);
    }

    #[test]
    fn repeated_colour_blocks_the_theta() {
        let g = ColouredGraph::from_triples(
            5,
            &[(0, 1, 0), (0, 2, 1), (2, 1, 2), (0, 3, 3), (3, 4, 4), (4, 1, 0)],
        );
        assert!(find_rainbow_theta(&g, &SearchBudget::unlimited()).unwrap().theta.is_none());
    }

    #[test]
    fn vertex_cap_excludes_larger_thetas() {
        let g = distinct(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]);
        let found = find_rainbow_theta(&g, &SearchBudget::with_cap(4)).unwrap();
        assert!(found.theta.is_none());
    }
}
