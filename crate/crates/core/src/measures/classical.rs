//! Classical sensitivity, block sensitivity and certificate complexity over
//! binary inputs, for comparison with the u-model measures.

use itertools::Itertools;
use serde::Serialize;

use super::blocks::{max_disjoint_packing, BlockSet};
use crate::function::BooleanFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StandardMeasures {
    pub s: usize,
    pub bs: usize,
    pub c: usize,
}

/// Binary-index mask of a block (variable `i` is bit `n - 1 - i`).
fn flip_mask(f: &BooleanFunction, block: BlockSet) -> usize {
    block.indices().iter().fold(0, |m, &i| m | f.var_mask(i))
}

pub fn sensitivity_at(f: &BooleanFunction, x: usize) -> usize {
    (0..f.arity())
        .filter(|&i| f.eval_index(x) != f.eval_index(x ^ f.var_mask(i)))
        .count()
}

pub fn minimal_blocks_at(f: &BooleanFunction, x: usize) -> Vec<BlockSet> {
    let n = f.arity();
    let mut found: Vec<BlockSet> = Vec::new();
    for size in 1..=n {
        for combo in (0..n).combinations(size) {
            let block = BlockSet::from_indices(&combo);
            if found.iter().any(|b| b.is_subset_of(block)) {
                continue;
            }
            if f.eval_index(x) != f.eval_index(x ^ flip_mask(f, block)) {
                found.push(block);
            }
        }
    }
    found
}

pub fn block_sensitivity_at(f: &BooleanFunction, x: usize) -> usize {
    max_disjoint_packing(&minimal_blocks_at(f, x)).len()
}

/// Smallest set of positions whose values at `x` force `f`.
pub fn certificate_at(f: &BooleanFunction, x: usize) -> BlockSet {
    let n = f.arity();
    let value = f.eval_index(x);
    for size in 0..=n {
        for keep in (0..n).combinations(size) {
            let fixed = flip_mask(f, BlockSet::from_indices(&keep));
            let free: Vec<usize> = (0..n)
                .filter(|i| !keep.contains(i))
                .map(|i| f.var_mask(i))
                .collect();
            let forced = (0..1usize << free.len()).all(|setting| {
                let y = free.iter().enumerate().fold(x & fixed, |y, (k, &m)| {
                    if setting >> k & 1 == 1 {
                        y | m
                    } else {
                        y
                    }
                });
                f.eval_index(y) == value
            });
            if forced {
                return BlockSet::from_indices(&keep);
            }
        }
    }
    unreachable!("fixing every variable forces the value")
}

pub fn standard_measures(f: &BooleanFunction) -> StandardMeasures {
    let inputs = 0..f.table().len();
    StandardMeasures {
        s: inputs
            .clone()
            .map(|x| sensitivity_at(f, x))
            .max()
            .unwrap_or(0),
        bs: inputs
            .clone()
            .map(|x| block_sensitivity_at(f, x))
            .max()
            .unwrap_or(0),
        c: inputs
            .map(|x| certificate_at(f, x).len())
            .max()
            .unwrap_or(0),
    }
}
