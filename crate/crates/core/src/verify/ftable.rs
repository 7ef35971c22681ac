use rayon::prelude::*;

use crate::graph::{ColouredGraph, Edge, Length};
use crate::search::{shortest_rainbow_cycle, SearchBudget, SearchStatus};

use super::enumerate::{complete_graph_pairs, fixed_weight_masks, pairings};
use super::VerifyError;

/// Largest `n` accepted by the exhaustive f-table computation.
pub const MAX_EXHAUSTIVE_N: usize = 7;

const CHUNK: usize = 16;
const CHUNKS_PER_ROUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTableEntry {
    pub n: usize,
    pub t: usize,
    pub value: Length,
    /// First instance in enumeration order whose rainbow girth is `value`.
    pub witness: ColouredGraph,
    pub instances_checked: u64,
}

#[derive(Clone, Debug)]
struct Best {
    value: Option<Length>,
    witness: Option<ColouredGraph>,
    checked: u64,
}

/// Maximum rainbow girth over all simple graphs on `n` vertices with `2t`
/// edges whose colouring pairs the edges into `t` classes of size 2.
///
/// Edge sets of `K_n` are visited in increasing bitmask order and, for each,
/// the pairings in the order of [`pairings`](super::enumerate::pairings).
/// Work is split into fixed chunks processed in rounds, so the result
/// (including the witness and the count) does not depend on `workers`. The
/// scan stops after the round in which an acyclic colouring is found.
pub fn compute_f(n: usize, t: usize, workers: usize) -> Result<FTableEntry, VerifyError> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(VerifyError::NTooLargeForExhaustive { n, max: MAX_EXHAUSTIVE_N });
    }
    let pairs = complete_graph_pairs(n);
    if 2 * t > pairs.len() {
        return Err(VerifyError::InfeasibleEdgeCount { n, t, available: pairs.len() });
    }
    let colourings = pairings(2 * t);
    let masks: Vec<u64> = fixed_weight_masks(pairs.len() as u32, 2 * t as u32).collect();
    let pool = super::thread_pool(workers)?;

    let mut best = Best { value: None, witness: None, checked: 0 };
    for round in masks.chunks(CHUNK * CHUNKS_PER_ROUND) {
        let floor = best.value;
        let results: Vec<Result<Best, VerifyError>> = pool.install(|| {
            round
                .par_chunks(CHUNK)
                .map(|chunk| scan_chunk(n, t, &pairs, &colourings, chunk, floor))
                .collect()
        });
        for r in results {
            let r = r?;
            best.checked += r.checked;
            if r.value > best.value {
                best.value = r.value;
                best.witness = r.witness;
            }
        }
        if best.value == Some(Length::Infinite) {
            break;
        }
    }
    Ok(FTableEntry {
        n,
        t,
        value: best.value.unwrap_or(Length::Infinite),
        witness: best.witness.unwrap_or_else(|| ColouredGraph::new(n, t, Vec::new())),
        instances_checked: best.checked,
    })
}

fn scan_chunk(
    n: usize,
    t: usize,
    pairs: &[(usize, usize)],
    colourings: &[Vec<usize>],
    masks: &[u64],
    floor: Option<Length>,
) -> Result<Best, VerifyError> {
    let mut best = Best { value: floor, witness: None, checked: 0 };
    let mut edges = Vec::with_capacity(2 * t);
    for &mask in masks {
        let ends: Vec<(usize, usize)> =
            (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        for colours in colourings {
            edges.clear();
            edges.extend(ends.iter().zip(colours).map(|(&(u, v), &c)| Edge::new(u, v, c)));
            let g = ColouredGraph::new(n, t, edges.clone());
            best.checked += 1;
            if let Some(value) = exceeds(&g, best.value)? {
                best.value = Some(value);
                best.witness = Some(g);
                if value == Length::Infinite {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}

/// The rainbow girth of `g` when it is larger than `floor`, else `None`.
fn exceeds(g: &ColouredGraph, floor: Option<Length>) -> Result<Option<Length>, VerifyError> {
    match floor {
        Some(Length::Infinite) => return Ok(None),
        Some(Length::Finite(b)) if b > 0 => {
            let out = shortest_rainbow_cycle(g, &SearchBudget::with_cap(b))?;
            match out.status {
                SearchStatus::Found => return Ok(None),
                SearchStatus::ProvenInfinite => return Ok(Some(Length::Infinite)),
                _ => {}
            }
        }
        _ => {}
    }
    let out = shortest_rainbow_cycle(g, &SearchBudget::unlimited())?;
    let value = out.length().expect("unlimited searches always conclude");
    Ok((Some(value) > floor).then_some(value))
}
