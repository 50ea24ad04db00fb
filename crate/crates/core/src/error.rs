use thiserror::Error;

use crate::finder::ChainEntry;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("component budget exceeded: need {needed} components, budget is {budget}; use windowed construction")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("no construction stage has gap length {0}")]
    NoSuchGapLength(String),

    #[error("base case failed: [0,1] has {witness_count} witnesses, threshold is {threshold}")]
    BaseCaseFailed { witness_count: u64, threshold: u64 },

    #[error("{0}")]
    RefinementFailed(Box<RefinementFailure>),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

/// Diagnostics for a refinement step where no block reached the threshold.
#[derive(Debug, Clone)]
pub struct RefinementFailure {
    /// Level of the good interval that could not be refined.
    pub k: u32,
    pub threshold: u64,
    /// Surviving packing count of every block, left to right.
    pub block_counts: Vec<u64>,
    pub translates: usize,
    pub max_translates: u64,
    /// Chain built before the failing step (filled in by the driver).
    pub chain: Vec<ChainEntry>,
}

impl RefinementFailure {
    pub fn within_guarantee(&self) -> bool {
        self.translates as u64 <= self.max_translates
    }
}

impl std::fmt::Display for RefinementFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let best = self.block_counts.iter().max().copied().unwrap_or(0);
        write!(
            f,
            "refinement failed at k={}: {} blocks, best count {} < threshold {}; ",
            self.k,
            self.block_counts.len(),
            best,
            self.threshold
        )?;
        if self.within_guarantee() {
            write!(
                f,
                "r={} <= max_translates={}: this is inside the guaranteed regime and indicates a bug",
                self.translates, self.max_translates
            )
        } else {
            write!(
                f,
                "r={} > max_translates={}: outside the guaranteed regime",
                self.translates, self.max_translates
            )
        }
    }
}
