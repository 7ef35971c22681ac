//! Seeded instance generators. Instance `i` of a run with seed `s` is drawn
//! from its own ChaCha stream, so it does not depend on how work is split.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{ColouredGraph, Digraph};

use super::enumerate::complete_graph_pairs;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Simple graph on `n` vertices with `n` colours, every class of size at
/// least 2. The edge count is uniform in `2n ..= min(3n, n(n-1)/2)`.
pub fn random_main_instance<R: Rng>(rng: &mut R, n: usize) -> ColouredGraph {
    assert!(n >= 5, "n colours of size 2 need n >= 5");
    let mut pairs = complete_graph_pairs(n);
    let m = rng.gen_range(2 * n..=(3 * n).min(pairs.len()));
    pairs.shuffle(rng);
    pairs.truncate(m);
    pairs.sort_unstable();
    let mut colours: Vec<usize> = (0..n).flat_map(|c| [c, c]).collect();
    colours.extend((2 * n..m).map(|_| rng.gen_range(0..n)));
    colours.shuffle(rng);
    let triples: Vec<_> = pairs.iter().zip(&colours).map(|(&(u, v), &c)| (u, v, c)).collect();
    ColouredGraph::from_triples(n, &triples)
}

/// Simple graph on `n` vertices with `2(n + k)` edges coloured by `n + k`
/// classes of size exactly 2.
pub fn random_pairing_instance<R: Rng>(rng: &mut R, n: usize, k: usize) -> ColouredGraph {
    let m = 2 * (n + k);
    let mut pairs = complete_graph_pairs(n);
    assert!(m <= pairs.len(), "K_{n} has fewer than {m} edges");
    pairs.shuffle(rng);
    pairs.truncate(m);
    pairs.sort_unstable();
    let mut colours: Vec<usize> = (0..n + k).flat_map(|c| [c, c]).collect();
    colours.shuffle(rng);
    let triples: Vec<_> = pairs.iter().zip(&colours).map(|(&(u, v), &c)| (u, v, c)).collect();
    ColouredGraph::from_triples(n, &triples)
}

/// Simple digraph on `n >= 3` vertices where each vertex has outdegree
/// uniform in `2 ..= min(4, n - 1)`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    assert!(n >= 3, "minimum outdegree 2 needs n >= 3");
    let mut arcs = Vec::new();
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        let d = rng.gen_range(2..=4.min(n - 1));
        let mut heads: Vec<usize> = others.choose_multiple(rng, d).copied().collect();
        heads.sort_unstable();
        arcs.extend(heads.into_iter().map(|w| (v, w)));
    }
    Digraph::new(n, arcs).expect("generated arcs are simple")
}

/// Arbitrary simple graph on `n` vertices: each edge of `K_n` present
/// with probability 1/2, colours uniform among `1 ..= n` colours.
pub fn random_coloured_graph<R: Rng>(rng: &mut R, n: usize) -> ColouredGraph {
    let k = rng.gen_range(1..=n.max(1));
    let mut triples = Vec::new();
    for (u, v) in complete_graph_pairs(n) {
        if rng.gen_bool(0.5) {
            triples.push((u, v, rng.gen_range(0..k)));
        }
    }
    ColouredGraph::from_triples(n, &triples)
}
