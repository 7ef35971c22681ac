use std::collections::VecDeque;

use crate::certificate::{CycleCertificate, CycleKind};
use crate::graph::Digraph;

use super::{SearchError, SearchOutcome, SearchStatus};

/// Shortest directed cycle by a breadth-first search from every vertex.
/// The first vertex (in index order) lying on a shortest cycle is the
/// cycle's starting point; arcs are listed in direction of travel.
pub fn shortest_directed_cycle(
    d: &Digraph,
) -> Result<SearchOutcome<CycleCertificate>, SearchError> {
    let n = d.n_vertices();
    let out = d.out_adjacency();
    let mut dist = vec![usize::MAX; n];
    let mut via = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut explored = 0u64;
    let mut best: Option<Vec<usize>> = None;

    for s in 0..n {
        let limit = best.as_ref().map_or(usize::MAX, Vec::len);
        dist.fill(usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        let mut closing = None;
        'bfs: while let Some(x) = queue.pop_front() {
            explored += 1;
            if dist[x] + 1 >= limit {
                break;
            }
            for &(a, y) in &out[x] {
                if y == s {
                    closing = Some((x, a));
                    break 'bfs;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if let Some((x, last)) = closing {
            let mut arcs = vec![last];
            let mut at = x;
            while at != s {
                let a = via[at];
                arcs.push(a);
                at = d.arc(a).0;
            }
            arcs.reverse();
            let done = arcs.len() == 2;
            best = Some(arcs);
            if done {
                break;
            }
        }
    }

    match best {
        Some(arcs) => {
            let cert = CycleCertificate::new(CycleKind::Directed, arcs);
            cert.verify_directed(d)
                .map_err(|e| SearchError::CertificateRejected(e.to_string()))?;
            Ok(SearchOutcome::found(cert, explored))
        }
        None => Ok(SearchOutcome::without(SearchStatus::ProvenInfinite, explored, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Length;

    /// Length of the shortest directed cycle by trying every ordered
    /// sequence of distinct vertices.
    fn brute_force(d: &Digraph) -> Length {
        let n = d.n_vertices();
        let has = |t: usize, h: usize| d.arcs().contains(&(t, h));
        fn rec(
            path: &mut Vec<usize>,
            len: usize,
            n: usize,
            has: &dyn Fn(usize, usize) -> bool,
        ) -> bool {
            if path.len() == len {
                return has(*path.last().unwrap(), path[0]);
            }
            for v in 0..n {
                if !path.contains(&v) && has(*path.last().unwrap(), v) {
                    path.push(v);
                    if rec(path, len, n, has) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        for len in 2..=n {
            for s in 0..n {
                if rec(&mut vec![s], len, n, &has) {
                    return Length::Finite(len);
                }
            }
        }
        Length::Infinite
    }

    #[test]
    fn circulant_digraph_on_z5() {
        let arcs = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)]).collect();
        let d = Digraph::new(5, arcs).unwrap();
        assert_eq!(brute_force(&d), Length::Finite(3));
        let out = shortest_directed_cycle(&d).unwrap();
        assert_eq!(out.length(), Some(Length::Finite(3)));
        let tails = out.certificate.unwrap().verify_directed(&d).unwrap();
        assert_eq!(tails, vec![0, 1, 3]);
    }

    #[test]
    fn digon() {
        let d = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let out = shortest_directed_cycle(&d).unwrap();
        assert_eq!(out.length(), Some(Length::Finite(2)));
    }

    #[test]
    fn dag_is_proven_infinite() {
        let arcs = vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 3)];
        let d = Digraph::new(4, arcs).unwrap();
        let out = shortest_directed_cycle(&d).unwrap();
        assert_eq!(out.status, SearchStatus::ProvenInfinite);
    }

    #[test]
    fn agrees_with_brute_force_on_small_digraphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let mut arcs = Vec::new();
            for t in 0..n {
                for h in 0..n {
                    if t != h && rng.gen_bool(0.25) {
                        arcs.push((t, h));
                    }
                }
            }
            let d = Digraph::new(n, arcs).unwrap();
            let out = shortest_directed_cycle(&d).unwrap();
            assert_eq!(out.length().unwrap(), brute_force(&d));
        }
    }
}
