//! Exact solvers for shortest rainbow, properly edge-coloured and directed
//! cycles, plus rainbow theta search.
//!
//! Every solver either proves its answer or reports that the budget ran out,
//! together with the largest length `L` for which "nothing of size <= L"
//! is already settled.

mod colour_set;
mod cycle;
mod directed;
mod theta;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{GraphError, Length};

pub use colour_set::{ColourSet, WideColourSet};
pub use cycle::{shortest_pec_cycle, shortest_rainbow_cycle};
pub use directed::shortest_directed_cycle;
pub use theta::{find_rainbow_theta, Theta, ThetaPath, ThetaSearch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("solver produced a certificate that failed re-verification: {0}")]
    CertificateRejected(String),
}

impl From<GraphError> for SearchError {
    fn from(e: GraphError) -> Self {
        SearchError::InvalidInstance(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    /// Only look for certificates of size at most this.
    pub max_length: Option<usize>,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn with_cap(max_length: usize) -> Self {
        SearchBudget { max_length: Some(max_length), ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_length == Some(0) {
            return Err(SearchError::InvalidBudget("max_length must be positive".into()));
        }
        if self.node_limit == Some(0) {
            return Err(SearchError::InvalidBudget("node_limit must be positive".into()));
        }
        if self.time_limit.is_some_and(|t| t.is_zero()) {
            return Err(SearchError::InvalidBudget("time_limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    Found,
    ProvenInfinite,
    ProvenAboveCap,
    BudgetExhausted,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "found",
            SearchStatus::ProvenInfinite => "proven-infinite",
            SearchStatus::ProvenAboveCap => "proven-above-cap",
            SearchStatus::BudgetExhausted => "budget-exhausted",
        })
    }
}

/// Anything a solver can return as a witness.
pub trait Certificate {
    fn size(&self) -> usize;
}

impl Certificate for crate::certificate::CycleCertificate {
    fn size(&self) -> usize {
        self.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<C> {
    pub status: SearchStatus,
    /// Present exactly when `status` is `Found`.
    pub certificate: Option<C>,
    /// Search-tree nodes visited.
    pub explored: u64,
    /// No certificate of size `<= none_up_to` exists.
    pub none_up_to: usize,
}

impl<C: Certificate> SearchOutcome<C> {
    pub(crate) fn found(certificate: C, explored: u64) -> Self {
        let none_up_to = certificate.size().saturating_sub(1);
        SearchOutcome { status: SearchStatus::Found, certificate: Some(certificate), explored, none_up_to }
    }

    pub(crate) fn without(status: SearchStatus, explored: u64, none_up_to: usize) -> Self {
        debug_assert_ne!(status, SearchStatus::Found);
        SearchOutcome { status, certificate: None, explored, none_up_to }
    }

    /// The proven optimum, if the search settled it.
    pub fn length(&self) -> Option<Length> {
        match self.status {
            SearchStatus::Found => self.certificate.as_ref().map(|c| Length::Finite(c.size())),
            SearchStatus::ProvenInfinite => Some(Length::Infinite),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

/// Node and time accounting shared by the solvers.
pub(crate) struct Meter {
    explored: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    exhausted: bool,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        Meter {
            explored: 0,
            node_limit: budget.node_limit.unwrap_or(u64::MAX),
            deadline: budget.time_limit.map(|t| Instant::now() + t),
            exhausted: false,
        }
    }

    /// Counts one node; false once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.explored += 1;
        if self.explored > self.node_limit {
            self.exhausted = true;
        } else if self.explored.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                self.exhausted = Instant::now() >= deadline;
            }
        }
        !self.exhausted
    }

    pub(crate) fn explored(&self) -> u64 {
        self.explored
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }
}
