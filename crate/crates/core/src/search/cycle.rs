use std::collections::VecDeque;

use crate::certificate::{CycleCertificate, CycleKind};
use crate::graph::{shortest_cycle, ColouredGraph};

use super::{
    ColourSet, Meter, SearchBudget, SearchError, SearchOutcome, SearchStatus, WideColourSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    /// All colours on the cycle distinct.
    Rainbow,
    /// Cyclically consecutive edges differ in colour.
    Proper,
}

/// Shortest cycle whose edges have pairwise distinct colours.
///
/// Iterative deepening over the cycle length, starting from the plain
/// girth. At each length, every edge is tried as the smallest-indexed edge
/// of the cycle and a depth-first path search extends it under the colour
/// rule. A branch is cut when the edges used so far plus the BFS distance
/// back to the start vertex exceed the target length. Among shortest
/// cycles the one whose canonical edge sequence (rotated to start at its
/// smallest edge, oriented so the second edge is the smaller neighbour) is
/// lexicographically smallest is returned.
///
/// Two parallel edges of different colours count as a rainbow 2-cycle.
pub fn shortest_rainbow_cycle(
    g: &ColouredGraph,
    budget: &SearchBudget,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    solve(g, budget, Rule::Rainbow)
}

/// Shortest properly edge-coloured cycle; same contract as
/// [`shortest_rainbow_cycle`].
pub fn shortest_pec_cycle(
    g: &ColouredGraph,
    budget: &SearchBudget,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    solve(g, budget, Rule::Proper)
}

fn solve(
    g: &ColouredGraph,
    budget: &SearchBudget,
    rule: Rule,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    g.ensure_well_formed()?;
    budget.validate()?;
    if g.n_colours() <= 128 {
        run::<u128>(g, budget, rule)
    } else {
        run::<WideColourSet>(g, budget, rule)
    }
}

fn run<S: ColourSet>(
    g: &ColouredGraph,
    budget: &SearchBudget,
    rule: Rule,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    let (kind, longest) = match rule {
        Rule::Rainbow => (CycleKind::Rainbow, g.n_vertices().min(g.n_colours())),
        Rule::Proper => (CycleKind::Pec, g.n_vertices()),
    };
    let cap = budget.max_length.map_or(longest, |c| c.min(longest));
    let Some(girth) = shortest_cycle(g).map(|c| c.len()) else {
        return Ok(SearchOutcome::without(SearchStatus::ProvenInfinite, 0, longest));
    };

    let mut meter = Meter::new(budget);
    let mut search = CycleSearch::<S>::new(g, rule);
    for len in girth.max(2)..=cap {
        match search.cycle_of_length(len, &mut meter) {
            Some(edges) => {
                let cert = CycleCertificate::new(kind, edges);
                cert.verify(g)
                    .map_err(|e| SearchError::CertificateRejected(e.to_string()))?;
                return Ok(SearchOutcome::found(cert, meter.explored()));
            }
            None if meter.exhausted() => {
                return Ok(SearchOutcome::without(
                    SearchStatus::BudgetExhausted,
                    meter.explored(),
                    len - 1,
                ));
            }
            None => {}
        }
    }
    let status = if cap >= longest {
        SearchStatus::ProvenInfinite
    } else {
        SearchStatus::ProvenAboveCap
    };
    Ok(SearchOutcome::without(status, meter.explored(), cap))
}

struct CycleSearch<'a, S> {
    graph: &'a ColouredGraph,
    adj: Vec<Vec<(usize, usize)>>,
    rule: Rule,
    on_path: Vec<bool>,
    path: Vec<usize>,
    used: S,
    /// BFS distance to `start` over edges above `root`, one table per
    /// endpoint of `root`.
    dist: [Vec<usize>; 2],
    which: usize,
    queue: VecDeque<usize>,
    target: usize,
    root: usize,
    second: usize,
    start: usize,
}

impl<'a, S: ColourSet> CycleSearch<'a, S> {
    fn new(graph: &'a ColouredGraph, rule: Rule) -> Self {
        let n = graph.n_vertices();
        CycleSearch {
            graph,
            adj: graph.adjacency(),
            rule,
            on_path: vec![false; n],
            path: Vec::with_capacity(n),
            used: S::with_palette(graph.n_colours()),
            dist: [vec![usize::MAX; n], vec![usize::MAX; n]],
            which: 0,
            queue: VecDeque::with_capacity(n),
            target: 0,
            root: 0,
            second: 0,
            start: 0,
        }
    }

    #[inline]
    fn colour(&self, edge: usize) -> usize {
        self.graph.edge(edge).colour
    }

    fn cycle_of_length(&mut self, len: usize, meter: &mut Meter) -> Option<Vec<usize>> {
        self.target = len;
        let mut seconds = Vec::new();
        for root in 0..self.graph.n_edges() {
            let e0 = self.graph.edge(root);
            seconds.clear();
            seconds.extend(
                self.adj[e0.u].iter().chain(&self.adj[e0.v]).map(|&(f, _)| f).filter(|&f| f > root),
            );
            if seconds.is_empty() {
                continue;
            }
            seconds.sort_unstable();
            seconds.dedup();
            self.root = root;
            let mut dist_ready = [false; 2];

            for &second in &seconds {
                if !meter.tick() {
                    return None;
                }
                let e1 = self.graph.edge(second);
                if e0.colour == e1.colour {
                    continue;
                }
                if e1.same_ends(&e0) {
                    if len == 2 {
                        return Some(vec![root, second]);
                    }
                    continue;
                }
                if len == 2 {
                    continue;
                }
                let shared = if e1.touches(e0.u) { e0.u } else { e0.v };
                let start = e0.other(shared);
                let next = e1.other(shared);
                self.which = usize::from(start == e0.v);
                if !dist_ready[self.which] {
                    self.distances_to(start);
                    dist_ready[self.which] = true;
                }
                let d = self.dist[self.which][next];
                if d == usize::MAX || d + 2 > len {
                    continue;
                }

                self.start = start;
                self.second = second;
                self.path.clear();
                self.path.extend([root, second]);
                for x in [start, shared, next] {
                    self.on_path[x] = true;
                }
                if self.rule == Rule::Rainbow {
                    self.used.insert(e0.colour);
                    self.used.insert(e1.colour);
                }

                let found = self.extend(next, 2, meter);

                if found {
                    let cycle = std::mem::take(&mut self.path);
                    self.reset();
                    return Some(cycle);
                }
                for x in [start, shared, next] {
                    self.on_path[x] = false;
                }
                if self.rule == Rule::Rainbow {
                    self.used.remove(e0.colour);
                    self.used.remove(e1.colour);
                }
                if meter.exhausted() {
                    return None;
                }
            }
        }
        None
    }

    fn reset(&mut self) {
        self.on_path.fill(false);
        self.used = S::with_palette(self.graph.n_colours());
    }

    fn distances_to(&mut self, start: usize) {
        let dist = &mut self.dist[self.which];
        dist.fill(usize::MAX);
        dist[start] = 0;
        self.queue.clear();
        self.queue.push_back(start);
        while let Some(x) = self.queue.pop_front() {
            for &(f, y) in &self.adj[x] {
                if f > self.root && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    self.queue.push_back(y);
                }
            }
        }
    }

    #[inline]
    fn step_ok(&self, colour: usize) -> bool {
        match self.rule {
            Rule::Rainbow => !self.used.contains(colour),
            Rule::Proper => colour != self.colour(*self.path.last().unwrap()),
        }
    }

    #[inline]
    fn closing_ok(&self, colour: usize) -> bool {
        match self.rule {
            Rule::Rainbow => !self.used.contains(colour),
            Rule::Proper => {
                colour != self.colour(*self.path.last().unwrap()) && colour != self.colour(self.root)
            }
        }
    }

    /// Extends the current path, which has `depth` edges and ends at `at`.
    fn extend(&mut self, at: usize, depth: usize, meter: &mut Meter) -> bool {
        if !meter.tick() {
            return false;
        }
        if depth + 1 == self.target {
            for i in 0..self.adj[at].len() {
                let (f, w) = self.adj[at][i];
                // the closing edge must exceed the second edge so each cycle
                // is met in one orientation only
                if w == self.start && f > self.second && self.closing_ok(self.colour(f)) {
                    self.path.push(f);
                    return true;
                }
            }
            return false;
        }
        for i in 0..self.adj[at].len() {
            let (f, w) = self.adj[at][i];
            if f <= self.root || self.on_path[w] {
                continue;
            }
            let d = self.dist[self.which][w];
            if d == usize::MAX || depth + 1 + d > self.target {
                continue;
            }
            let c = self.colour(f);
            if !self.step_ok(c) {
                continue;
            }
            self.path.push(f);
            self.on_path[w] = true;
            if self.rule == Rule::Rainbow {
                self.used.insert(c);
            }
            if self.extend(w, depth + 1, meter) {
                return true;
            }
            self.path.pop();
            self.on_path[w] = false;
            if self.rule == Rule::Rainbow {
                self.used.remove(c);
            }
            if meter.exhausted() {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Length};

    fn rg(g: &ColouredGraph) -> Length {
        shortest_rainbow_cycle(g, &SearchBudget::unlimited()).unwrap().length().unwrap()
    }

    fn pec(g: &ColouredGraph) -> Length {
        shortest_pec_cycle(g, &SearchBudget::unlimited()).unwrap().length().unwrap()
    }

    fn triangle(c: [usize; 3]) -> ColouredGraph {
        ColouredGraph::from_triples(3, &[(0, 1, c[0]), (1, 2, c[1]), (2, 0, c[2])])
    }

    #[test]
    fn rainbow_triangle() {
        assert_eq!(rg(&triangle([0, 1, 2])), Length::Finite(3));
    }

    #[test]
    fn pec_triangles() {
        assert_eq!(pec(&triangle([0, 0, 1])), Length::Infinite);
        assert_eq!(pec(&triangle([0, 1, 2])), Length::Finite(3));
    }

    #[test]
    fn alternating_square_is_pec_not_rainbow() {
        let g = ColouredGraph::from_triples(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]);
        assert_eq!(pec(&g), Length::Finite(4));
        assert_eq!(rg(&g), Length::Infinite);
    }

    #[test]
    fn parallel_pair_with_distinct_colours_is_a_two_cycle() {
        let g = ColouredGraph::from_triples(3, &[(0, 1, 0), (1, 2, 1), (2, 0, 2), (1, 0, 1)]);
        let out = shortest_rainbow_cycle(&g, &SearchBudget::unlimited()).unwrap();
        assert_eq!(out.certificate.unwrap().edge_indices, vec![0, 3]);
        let same = ColouredGraph::from_triples(2, &[(0, 1, 0), (1, 0, 0)]);
        assert_eq!(rg(&same), Length::Infinite);
    }

    #[test]
    fn returns_lexicographically_smallest_shortest_cycle() {
        // K4 with distinct colours: every triangle is a shortest rainbow cycle
        let g = ColouredGraph::from_triples(
            4,
            &[(0, 1, 0), (0, 2, 1), (0, 3, 2), (1, 2, 3), (1, 3, 4), (2, 3, 5)],
        );
        let out = shortest_rainbow_cycle(&g, &SearchBudget::unlimited()).unwrap();
        // canonical sequences: 0,1,3 / 0,2,4 / 1,2,5 / 3,4,5
        assert_eq!(out.certificate.unwrap().edge_indices, vec![0, 1, 3]);
        assert_eq!(out.none_up_to, 2);
    }

    #[test]
    fn cap_below_optimum_reports_above_cap() {
        let g = ColouredGraph::from_triples(
            5,
            &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 0, 4)],
        );
        let out = shortest_rainbow_cycle(&g, &SearchBudget::with_cap(4)).unwrap();
        assert_eq!(out.status, SearchStatus::ProvenAboveCap);
        assert_eq!(out.none_up_to, 4);
        assert_eq!(out.length(), None);
        let out = shortest_rainbow_cycle(&g, &SearchBudget::with_cap(5)).unwrap();
        assert_eq!(out.length(), Some(Length::Finite(5)));
    }

    #[test]
    fn node_limit_yields_budget_exhausted() {
        let mut t = Vec::new();
        for u in 0..7 {
            for v in u + 1..7 {
                t.push((u, v, u % 3));
            }
        }
        // both edges at the smallest vertex of any cycle share a colour
        let g = ColouredGraph::from_triples(7, &t);
        let budget = SearchBudget { node_limit: Some(5), ..Default::default() };
        let out = shortest_rainbow_cycle(&g, &budget).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExhausted);
        assert!(out.certificate.is_none());
        assert_eq!(out.none_up_to, 2);
    }

    #[test]
    fn self_loops_are_rejected() {
        let g = ColouredGraph::new(2, 1, vec![Edge::new(1, 1, 0)]);
        assert!(matches!(
            shortest_rainbow_cycle(&g, &SearchBudget::unlimited()),
            Err(SearchError::InvalidInstance(_))
        ));
    }

    #[test]
    fn wide_palette_uses_the_same_search() {
        // a 6-cycle whose colours are spread over a big palette
        let colours = [0, 150, 299, 3, 200, 77];
        let edges = (0..6).map(|i| Edge::new(i, (i + 1) % 6, colours[i])).collect();
        let g = ColouredGraph::new(6, 300, edges);
        assert_eq!(rg(&g), Length::Finite(6));
    }

    #[test]
    fn forest_is_proven_infinite_without_search() {
        let g = ColouredGraph::from_triples(4, &[(0, 1, 0), (1, 2, 1), (1, 3, 2)]);
        let out = shortest_rainbow_cycle(&g, &SearchBudget::unlimited()).unwrap();
        assert_eq!(out.status, SearchStatus::ProvenInfinite);
        assert_eq!(out.explored, 0);
    }
}
