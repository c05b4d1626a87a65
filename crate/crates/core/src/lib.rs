//! Exact unordered tree edit distance with custom metric costs.
//!
//! The centerpiece is [`astar::astar_uted`], an A* search over partial
//! mappings guided by one of three admissible lower bounds
//! ([`heuristics::HeuristicKind`]) that work for any metric cost function.
//! Around it sit the polynomial baselines (ordered and constrained edit
//! distance), an exhaustive oracle for testing, SMILES ingestion for
//! molecular data, and an evaluation harness for distance matrices,
//! search-effort benchmarks and k-NN regression.
//!
//! ```
//! use uted_core::{astar_uted, parse_tree, unit_costs, HeuristicKind};
//!
//! let x = parse_tree("a(b(c,d),e)").unwrap();
//! let y = parse_tree("a(e,d,c)").unwrap();
//! let result = astar_uted(&x, &y, &unit_costs(), HeuristicKind::H3).unwrap();
//! assert_eq!(result.distance, 1.0);
//! ```

pub mod assignment;
pub mod astar;
pub mod baselines;
mod bitset;
pub mod chem;
pub mod cost;
pub mod eval;
pub mod heuristics;
pub mod mapping;
pub mod tree;

pub use assignment::{solve_assignment, AssignmentProblem, AssignmentSolution};
pub use astar::{
    astar_uted, astar_uted_costs, astar_uted_forest_costs, astar_uted_forest_entry,
    astar_uted_with, DistanceResult, PartialMapping, SearchError, SearchOptions, SearchStats,
};
pub use baselines::{
    cuted_constrained, oracle_distance, oracle_distance_rooted, ted_ordered, BaselineError,
};
pub use cost::{
    mapping_cost, numeric_diff_costs, unit_costs, validate_metric, CostError, CostFunction,
    CostMatrix, CostTable, MappingCost, NumericDiffCosts, UnitCosts,
};
pub use heuristics::{h1, h2, h3, Heuristic, HeuristicKind};
pub use mapping::{mapping_valid, Mapping, MappingClass};
pub use tree::{parse_tree, serialize_tree, Label, Tree, TreeError};
