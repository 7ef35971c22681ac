//! Fixed-order enumerators for the exhaustive suites.

/// All ways to split `0..m` into `m / 2` unordered pairs, as colour vectors:
/// `colours[i]` is the pair holding element `i`. The smallest unpaired
/// element is always matched first, and pairs are numbered in the order
/// they are formed.
pub fn pairings(m: usize) -> Vec<Vec<usize>> {
    assert!(m.is_multiple_of(2), "pairings need an even number of elements");
    let mut out = Vec::new();
    let mut colours = vec![usize::MAX; m];
    pair_up(&mut colours, 0, &mut out);
    out
}

fn pair_up(colours: &mut [usize], next: usize, out: &mut Vec<Vec<usize>>) {
    let Some(first) = colours.iter().position(|&c| c == usize::MAX) else {
        out.push(colours.to_vec());
        return;
    };
    colours[first] = next;
    for partner in first + 1..colours.len() {
        if colours[partner] == usize::MAX {
            colours[partner] = next;
            pair_up(colours, next + 1, out);
            colours[partner] = usize::MAX;
        }
    }
    colours[first] = usize::MAX;
}

/// `(2m - 1)!! = m! / (2^(m/2) (m/2)!)` for even `m`.
pub fn pairing_count(m: usize) -> u64 {
    (1..m as u64).step_by(2).product()
}

/// Edges of `K_n` in lexicographic order.
pub fn complete_graph_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Bitmasks over `width` bits with exactly `k` ones, in increasing order.
pub fn fixed_weight_masks(width: u32, k: u32) -> impl Iterator<Item = u64> {
    assert!(width < 64 && k <= width);
    let end = 1u64 << width;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < end).then_some(succ)
        };
        Some(cur)
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
