//! Polynomial baseline distances and the exhaustive mapping oracle.

mod cuted;
mod oracle;
mod ted;

use thiserror::Error;

use crate::cost::CostError;

pub use cuted::{cuted_constrained, cuted_constrained_costs};
pub use oracle::{
    oracle_distance, oracle_distance_costs, oracle_distance_rooted, oracle_search, OracleOptions,
    ORACLE_SIZE_LIMIT,
};
pub use ted::{ted_ordered, ted_ordered_costs};

pub use crate::mapping::{mapping_valid, MappingClass};

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("input tree is empty")]
    EmptyTree,
    #[error("oracle refuses m + n = {total} > {limit}")]
    TooLarge { total: usize, limit: usize },
    #[error(transparent)]
    Cost(#[from] CostError),
}
