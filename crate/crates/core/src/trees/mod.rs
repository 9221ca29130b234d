//! Decision trees as witnesses for `D_u(f)` and `D(f)`.

mod search;
mod tree;

pub use search::{query_complexity, query_complexity_u, Model, QuerySearch};
pub use tree::DecisionTree;
