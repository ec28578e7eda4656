pub mod decomposition;
pub mod dp;

pub use decomposition::{
    elimination_decomposition, heuristic_tree_decomposition, parse_decomposition,
    serialize_decomposition, validate_decomposition, EliminationRule, TreeDecomposition, Violation,
};
pub use dp::{dp_kway_cut, dp_trace, NodeTable};
