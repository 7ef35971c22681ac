//! Coloured binary matroids given by GF(2) column vectors, and cographic
//! matroids handled through their host graph.

mod circuit;
mod cocycle;

use thiserror::Error;

use crate::search::Certificate;

pub use circuit::min_rainbow_circuit;
pub use cocycle::{
    cycle_matroid, enumerate_cocycles, enumerate_cocycles_with_cap, min_rainbow_cocycle,
    CocycleCertificate, DEFAULT_ENUMERATION_CAP,
};

/// Column vectors are bitmasks: bit `r` is the entry in row `r`.
pub const MAX_ROWS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("{vertices} vertices exceed the enumeration cap of {cap}")]
    TooLargeForEnumeration { vertices: usize, cap: usize },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("solver produced a certificate that failed re-verification: {0}")]
    CertificateRejected(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryColouredMatroid {
    n_rows: usize,
    columns: Vec<u128>,
    colours: Vec<usize>,
    n_colours: usize,
}

impl BinaryColouredMatroid {
    pub fn new(
        n_rows: usize,
        columns: Vec<u128>,
        colours: Vec<usize>,
        n_colours: usize,
    ) -> Result<Self, MatroidError> {
        if n_rows > MAX_ROWS {
            return Err(MatroidError::InvalidMatroid(format!(
                "{n_rows} rows exceed the supported {MAX_ROWS}"
            )));
        }
        if columns.len() != colours.len() {
            return Err(MatroidError::InvalidMatroid(format!(
                "{} columns but {} colours",
                columns.len(),
                colours.len()
            )));
        }
        let mask = if n_rows == 128 { u128::MAX } else { (1u128 << n_rows) - 1 };
        if let Some(j) = columns.iter().position(|&c| c & !mask != 0) {
            return Err(MatroidError::InvalidMatroid(format!("column {j} has bits beyond row {n_rows}")));
        }
        if let Some(j) = colours.iter().position(|&c| c >= n_colours) {
            return Err(MatroidError::InvalidMatroid(format!("column {j} has colour out of range")));
        }
        Ok(BinaryColouredMatroid { n_rows, columns, colours, n_colours })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn n_colours(&self) -> usize {
        self.n_colours
    }

    pub fn columns(&self) -> &[u128] {
        &self.columns
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn colour_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.n_colours];
        for (j, &c) in self.colours.iter().enumerate() {
            classes[c].push(j);
        }
        classes
    }
}

/// Row-echelon basis over GF(2), kept sorted by decreasing leading bit so
/// a single pass reduces any vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gf2Basis {
    rows: Vec<u128>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Gf2Basis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn reduce(&self, mut v: u128) -> u128 {
        for &b in &self.rows {
            v = v.min(v ^ b);
        }
        v
    }

    #[inline]
    pub fn spans(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; false if it was already in the span.
    pub fn insert(&mut self, v: u128) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pos = self.rows.partition_point(|&b| b.leading_zeros() < r.leading_zeros());
        self.rows.insert(pos, r);
        true
    }
}

pub fn rank_of(vectors: impl IntoIterator<Item = u128>) -> usize {
    let mut basis = Gf2Basis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Rank of the column matroid by Gaussian elimination over GF(2).
pub fn gf2_rank(m: &BinaryColouredMatroid) -> usize {
    rank_of(m.columns.iter().copied())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidReport {
    pub simple: bool,
    pub zero_columns: Vec<usize>,
    /// Pairs of equal columns, i.e. circuits of size 2.
    pub parallel_pairs: Vec<(usize, usize)>,
    pub class_sizes: Vec<usize>,
}

impl std::fmt::Display for MatroidReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "simple: {}", self.simple)?;
        if !self.zero_columns.is_empty() {
            writeln!(f, "zero columns: {:?}", self.zero_columns)?;
        }
        if !self.parallel_pairs.is_empty() {
            writeln!(f, "parallel pairs: {:?}", self.parallel_pairs)?;
        }
        write!(f, "colour class sizes: {:?}", self.class_sizes)
    }
}

pub fn matroid_validate(m: &BinaryColouredMatroid) -> MatroidReport {
    let zero_columns: Vec<usize> =
        m.columns.iter().enumerate().filter(|(_, &c)| c == 0).map(|(j, _)| j).collect();
    let mut parallel_pairs = Vec::new();
    for i in 0..m.columns.len() {
        for j in i + 1..m.columns.len() {
            if m.columns[i] != 0 && m.columns[i] == m.columns[j] {
                parallel_pairs.push((i, j));
            }
        }
    }
    let class_sizes = m.colour_classes().iter().map(Vec::len).collect();
    MatroidReport {
        simple: zero_columns.is_empty() && parallel_pairs.is_empty(),
        zero_columns,
        parallel_pairs,
        class_sizes,
    }
}

/// A circuit given by its column indices, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitCertificate {
    pub column_indices: Vec<usize>,
}

impl Certificate for CircuitCertificate {
    fn size(&self) -> usize {
        self.column_indices.len()
    }
}

impl CircuitCertificate {
    /// Zero sum, inclusion-minimal, and (if asked) rainbow.
    pub fn verify(&self, m: &BinaryColouredMatroid, rainbow: bool) -> Result<(), String> {
        let idx = &self.column_indices;
        if idx.is_empty() {
            return Err("empty circuit".into());
        }
        if let Some(&j) = idx.iter().find(|&&j| j >= m.n_columns()) {
            return Err(format!("column {j} out of range"));
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != idx.len() {
            return Err("repeated column".into());
        }
        if idx.iter().fold(0u128, |s, &j| s ^ m.columns[j]) != 0 {
            return Err("columns do not sum to zero".into());
        }
        for skip in 0..idx.len() {
            let rest = idx.iter().enumerate().filter(|&(p, _)| p != skip).map(|(_, &j)| m.columns[j]);
            if rank_of(rest) != idx.len() - 1 {
                return Err(format!("dropping column {} leaves a dependent set", idx[skip]));
            }
        }
        if rainbow {
            let mut colours: Vec<usize> = idx.iter().map(|&j| m.colours[j]).collect();
            colours.sort_unstable();
            if colours.windows(2).any(|w| w[0] == w[1]) {
                return Err("colour repeated".into());
            }
        }
        Ok(())
    }
}
