//! Oracle-interactive procedures: the certificate-based u-query algorithm,
//! the monotone/unate two-pass simulations, the downward-closure wrapper and
//! the OR-to-Indexing reduction.

mod algorithm1;
mod oracle;
mod simulate;

pub use algorithm1::{
    algorithm1_solve, instrumented_claims_check, Algorithm1, Algorithm1Run, ClaimsReport, Exit,
};
pub use oracle::{
    FillUnknown, IndexingFromOr, OnesAsUnknown, Oracle, QueryOracle, QueryRecord, USolver,
};
pub use simulate::{
    downward_closure_solve, monotone_simulate, or_via_ind_reduction, unate_simulate, TwoPassOutcome,
};
