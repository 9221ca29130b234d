//! Two-pass simulations of a classical tree in the u-model, and the
//! downward-closure and OR-to-Indexing wrappers.

use serde::Serialize;

use super::oracle::{FillUnknown, IndexingFromOr, OnesAsUnknown, QueryOracle, USolver};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, Orientation};
use crate::ternary::Trit;
use crate::trees::DecisionTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoPassOutcome {
    pub output: Trit,
    /// `f(y^0)`: every u answer read as `s_j`.
    pub low: bool,
    /// `f(y^1)`: every u answer read as `1 xor s_j`.
    pub high: bool,
}

fn bit(t: Trit) -> bool {
    t.to_bool()
        .expect("a tree computing f outputs a bit on binary answers")
}

/// Runs `tree` twice, once with u answers replaced by `s_j` and once by
/// `1 xor s_j`; outputs 1 if the low pass gives 1, 0 if the high pass gives
/// 0, and u otherwise.
pub fn unate_simulate(
    f: &BooleanFunction,
    orientation: &Orientation,
    tree: &DecisionTree,
    oracle: &mut dyn QueryOracle,
) -> Result<TwoPassOutcome> {
    if orientation.bits().len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: orientation.bits().len(),
        });
    }
    if oracle.arity() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: oracle.arity(),
        });
    }
    if !f.is_monotone_under(orientation.mask()) {
        return Err(Error::InvalidOrientation(orientation.to_string()));
    }
    let s = orientation.bits().to_vec();
    let low = bit(tree.run(&mut FillUnknown::new(oracle, s.clone())));
    let flipped = s.iter().map(|b| !b).collect();
    let high = bit(tree.run(&mut FillUnknown::new(oracle, flipped)));
    let output = if low {
        Trit::One
    } else if !high {
        Trit::Zero
    } else {
        Trit::U
    };
    Ok(TwoPassOutcome { output, low, high })
}

/// [`unate_simulate`] with the zero orientation.
pub fn monotone_simulate(
    f: &BooleanFunction,
    tree: &DecisionTree,
    oracle: &mut dyn QueryOracle,
) -> Result<TwoPassOutcome> {
    if !f.is_monotone() {
        return Err(Error::NotMonotone);
    }
    unate_simulate(f, &Orientation::zero(f.arity()), tree, oracle)
}

/// Computes the downward closure of `f` at the binary input held by
/// `binary_oracle` using any u-solver for `f`: ones are presented as u, and
/// an answer of 0 maps to 0, anything else to 1.
pub fn downward_closure_solve(u_solver: &dyn USolver, binary_oracle: &mut dyn QueryOracle) -> bool {
    let out = u_solver.solve(&mut OnesAsUnknown::new(binary_oracle));
    out != Trit::Zero
}

/// Computes `OR` over the `2^n` bits held by `or_oracle` using a u-solver
/// for `IND_n`: addressing bits read u, target `k` reads bit `k`; an answer
/// of 0 maps to 0, anything else to 1.
pub fn or_via_ind_reduction(
    address_bits: usize,
    ind_solver: &dyn USolver,
    or_oracle: &mut dyn QueryOracle,
) -> bool {
    let out = ind_solver.solve(&mut IndexingFromOr::new(or_oracle, address_bits));
    out != Trit::Zero
}
