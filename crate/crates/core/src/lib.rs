//! Query complexity of hazard-free (Kleene K3) extensions of Boolean
//! functions.
//!
//! The crate computes `f_u` for small truth tables, exact combinatorial
//! measures (u-sensitivity, u-block sensitivity, u-certificate complexity and
//! their classical counterparts), exact `D_u` and `D` with witness decision
//! trees, and runs oracle-interactive solvers and reductions against hidden
//! ternary inputs.

pub mod algorithms;
pub mod error;
pub mod function;
pub mod generate;
pub mod hazard;
pub mod measures;
pub mod ternary;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use function::{all_functions, BooleanFunction, Orientation};
pub use generate::{generate, FunctionSpec};
pub use hazard::{Caps, HazardFreeTable};
pub use ternary::{PartialAssignment, TernaryString, Trit};
