use crate::search::{Meter, SearchBudget, SearchOutcome, SearchStatus};

use super::{gf2_rank, BinaryColouredMatroid, CircuitCertificate, Gf2Basis, MatroidError};

/// Smallest rainbow circuit.
///
/// A smallest nonempty rainbow set with zero sum is itself a circuit: any
/// zero-sum set splits into disjoint circuits, and subsets of rainbow sets
/// are rainbow. So the search looks for zero-sum selections taking at most
/// one column per colour class, by iterative deepening on the size. Classes
/// are visited smallest first; a branch is abandoned once the running sum
/// leaves the span of the columns still available.
pub fn min_rainbow_circuit(
    m: &BinaryColouredMatroid,
    budget: &SearchBudget,
) -> Result<SearchOutcome<CircuitCertificate>, MatroidError> {
    budget.validate().map_err(|e| MatroidError::InvalidBudget(e.to_string()))?;
    if let Some(j) = m.columns().iter().position(|&c| c == 0) {
        return Err(MatroidError::InvalidMatroid(format!("column {j} is zero")));
    }

    let mut classes: Vec<Vec<usize>> = m.colour_classes().into_iter().filter(|c| !c.is_empty()).collect();
    classes.sort_by_key(Vec::len);
    let class_columns: Vec<Vec<(usize, u128)>> = classes
        .iter()
        .map(|c| c.iter().map(|&j| (j, m.columns()[j])).collect())
        .collect();
    // suffix[p] spans every column in classes p..
    let mut suffix = vec![Gf2Basis::new(); classes.len() + 1];
    for p in (0..classes.len()).rev() {
        suffix[p] = suffix[p + 1].clone();
        for &(_, v) in &class_columns[p] {
            suffix[p].insert(v);
        }
    }

    let longest = classes.len().min(gf2_rank(m) + 1);
    let cap = budget.max_length.map_or(longest, |c| c.min(longest));
    let mut meter = Meter::new(budget);
    let mut search = CircuitSearch { classes: &class_columns, suffix: &suffix, target: 0, chosen: Vec::new() };
    for size in 1..=cap {
        search.target = size;
        search.chosen.clear();
        if search.extend(0, 0, &mut meter) {
            let mut column_indices = std::mem::take(&mut search.chosen);
            column_indices.sort_unstable();
            let cert = CircuitCertificate { column_indices };
            cert.verify(m, true).map_err(MatroidError::CertificateRejected)?;
            return Ok(SearchOutcome::found(cert, meter.explored()));
        }
        if meter.exhausted() {
            return Ok(SearchOutcome::without(SearchStatus::BudgetExhausted, meter.explored(), size - 1));
        }
    }
    let status = if cap >= longest { SearchStatus::ProvenInfinite } else { SearchStatus::ProvenAboveCap };
    Ok(SearchOutcome::without(status, meter.explored(), cap))
}

struct CircuitSearch<'a> {
    classes: &'a [Vec<(usize, u128)>],
    suffix: &'a [Gf2Basis],
    target: usize,
    chosen: Vec<usize>,
}

impl CircuitSearch<'_> {
    fn extend(&mut self, class: usize, sum: u128, meter: &mut Meter) -> bool {
        if !meter.tick() {
            return false;
        }
        if !self.chosen.is_empty() && sum == 0 {
            return true;
        }
        if class == self.classes.len() || self.chosen.len() == self.target {
            return false;
        }
        if !self.suffix[class].spans(sum) {
            return false;
        }
        // with one pick left, only a column equal to the running sum helps
        let last_pick = self.chosen.len() + 1 == self.target && sum != 0;
        for &(j, v) in &self.classes[class] {
            if last_pick && v != sum {
                continue;
            }
            self.chosen.push(j);
            if self.extend(class + 1, sum ^ v, meter) {
                return true;
            }
            self.chosen.pop();
            if meter.exhausted() {
                return false;
            }
        }
        self.extend(class + 1, sum, meter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::binary_counterexample;
    use crate::graph::Length;

    fn solve(m: &BinaryColouredMatroid) -> Length {
        min_rainbow_circuit(m, &SearchBudget::unlimited()).unwrap().length().unwrap()
    }

    #[test]
    fn unique_triangle_circuit() {
        let m = BinaryColouredMatroid::new(2, vec![0b01, 0b10, 0b11], vec![0, 1, 2], 3).unwrap();
        let out = min_rainbow_circuit(&m, &SearchBudget::unlimited()).unwrap();
        assert_eq!(out.certificate.unwrap().column_indices, vec![0, 1, 2]);
    }

    #[test]
    fn monochromatic_pair_is_not_rainbow() {
        let m = BinaryColouredMatroid::new(1, vec![1, 1], vec![0, 0], 1).unwrap();
        assert_eq!(solve(&m), Length::Infinite);
    }

    #[test]
    fn counterexample_circuits_exceed_half() {
        // minima from an exhaustive scan of all 3^n selections
        for (n, expected) in [(6, 4), (8, 5), (10, 6)] {
            assert_eq!(solve(&binary_counterexample(n).unwrap()), Length::Finite(expected));
        }
    }

    #[test]
    fn zero_column_is_rejected() {
        let m = BinaryColouredMatroid::new(1, vec![0, 1], vec![0, 1], 2).unwrap();
        assert!(matches!(
            min_rainbow_circuit(&m, &SearchBudget::unlimited()),
            Err(MatroidError::InvalidMatroid(_))
        ));
    }

    #[test]
    fn cap_and_node_limit() {
        let m = binary_counterexample(6).unwrap();
        let out = min_rainbow_circuit(&m, &SearchBudget::with_cap(3)).unwrap();
        assert_eq!(out.status, SearchStatus::ProvenAboveCap);
        assert_eq!(out.none_up_to, 3);
        let budget = SearchBudget { node_limit: Some(10), ..Default::default() };
        let out = min_rainbow_circuit(&m, &budget).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExhausted);
    }

    #[test]
    fn independent_columns_have_no_circuit() {
        let m = BinaryColouredMatroid::new(3, vec![1, 2, 4], vec![0, 1, 2], 3).unwrap();
        let out = min_rainbow_circuit(&m, &SearchBudget::unlimited()).unwrap();
        assert_eq!(out.status, SearchStatus::ProvenInfinite);
    }
}
