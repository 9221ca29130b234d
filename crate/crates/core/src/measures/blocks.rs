//! Sensitive blocks of `f_u`, u-sensitivity and u-block sensitivity.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::hazard::HazardFreeTable;
use crate::ternary::{weight3, TernaryString, Trit};

/// A set of variable positions, bit `i` standing for variable `i` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BlockSet(pub u32);

impl BlockSet {
    pub fn from_indices(indices: &[usize]) -> Self {
        BlockSet(indices.iter().fold(0, |m, &i| m | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: BlockSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: BlockSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Positions in increasing order, 0-based.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Serialized as a list of 1-based variable indices.
impl Serialize for BlockSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.indices().iter().map(|i| i + 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitiveBlockWitness {
    pub base: TernaryString,
    pub block: BlockSet,
    /// Agrees with `base` outside `block` and has a different `f_u` value.
    pub altered: TernaryString,
}

impl SensitiveBlockWitness {
    /// Re-checks the witness against the table.
    pub fn is_valid(&self, t: &HazardFreeTable) -> bool {
        self.base.len() == self.altered.len()
            && (0..self.base.len())
                .all(|i| self.block.contains(i) || self.base.get(i) == self.altered.get(i))
            && t.at(self.base.index()) != t.at(self.altered.index())
    }
}

/// Block sensitivity at one input with a maximum disjoint family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockFamily {
    pub count: usize,
    pub blocks: Vec<SensitiveBlockWitness>,
}

/// Whether `block` is sensitive at the input with base-3 index `x`, and if
/// so the least binary refilling of the block whose value differs.
///
/// The block is sensitive iff `f_u` is not constant on the completions of
/// `x` with the block starred; since `x` is itself such a completion, a
/// non-constant grid always contains a binary refilling with another value.
fn sensitive_refill(t: &HazardFreeTable, x: usize, block: BlockSet) -> Option<usize> {
    let n = t.arity();
    let value = t.at(x);
    let weights: Vec<usize> = block.indices().iter().map(|&i| weight3(n, i)).collect();
    let mut base = x;
    for (&i, &w) in block.indices().iter().zip(&weights) {
        base -= TernaryString::digit_at(x, n, i) as usize * w;
    }
    // enumerate in lexicographic order: first weight is the most significant
    let k = weights.len();
    (0..1usize << k)
        .map(|mask| {
            base + (0..k)
                .filter(|&j| mask >> (k - 1 - j) & 1 == 1)
                .map(|j| weights[j])
                .sum::<usize>()
        })
        .find(|&y| t.at(y) != value)
}

pub fn is_sensitive_block(t: &HazardFreeTable, x: &TernaryString, block: BlockSet) -> bool {
    sensitive_refill(t, x.index(), block).is_some()
}

fn witness(
    t: &HazardFreeTable,
    x: &TernaryString,
    block: BlockSet,
) -> Option<SensitiveBlockWitness> {
    sensitive_refill(t, x.index(), block).map(|y| SensitiveBlockWitness {
        base: x.clone(),
        block,
        altered: TernaryString::from_index(t.arity(), y),
    })
}

/// Number of positions where some single-trit change alters `f_u`.
pub fn sensitivity_u_at(t: &HazardFreeTable, x: &TernaryString) -> usize {
    sensitive_positions(t, x.index()).len()
}

fn sensitive_positions(t: &HazardFreeTable, x: usize) -> Vec<usize> {
    let n = t.arity();
    let value = t.at(x);
    (0..n)
        .filter(|&i| {
            let w = weight3(n, i);
            let d = TernaryString::digit_at(x, n, i) as usize;
            let base = x - d * w;
            (0..3).any(|a| a != d && t.at(base + a * w) != value)
        })
        .collect()
}

/// `s_u(f)` together with an input attaining it.
pub fn sensitivity_u(t: &HazardFreeTable) -> (usize, TernaryString) {
    let n = t.arity();
    let (best, idx) = (0..t.values().len())
        .map(|x| (sensitive_positions(t, x).len(), x))
        .fold((0, 0), |acc, cur| if cur.0 > acc.0 { cur } else { acc });
    (best, TernaryString::from_index(n, idx))
}

/// All inclusion-minimal sensitive blocks at `x`, by size then lexicographic.
pub fn minimal_sensitive_blocks(
    t: &HazardFreeTable,
    x: &TernaryString,
) -> Vec<SensitiveBlockWitness> {
    let n = t.arity();
    let mut found: Vec<SensitiveBlockWitness> = Vec::new();
    for size in 1..=n {
        for combo in (0..n).combinations(size) {
            let block = BlockSet::from_indices(&combo);
            if found.iter().any(|w| w.block.is_subset_of(block)) {
                continue;
            }
            if let Some(w) = witness(t, x, block) {
                found.push(w);
            }
        }
    }
    found
}

/// Indices of a maximum pairwise-disjoint subfamily of `blocks`.
///
/// Branch and bound over the blocks in order; ties resolve to the family
/// found first, i.e. the lexicographically least index vector.
pub fn max_disjoint_packing(blocks: &[BlockSet]) -> Vec<usize> {
    fn go(
        blocks: &[BlockSet],
        start: usize,
        used: u32,
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
        min_size: usize,
    ) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        let free = (0..32)
            .filter(|&i| blocks.iter().any(|b| b.contains(i)) && used >> i & 1 == 0)
            .count();
        let compatible = blocks[start..].iter().filter(|b| b.0 & used == 0).count();
        let bound = compatible.min(free / min_size.max(1));
        if chosen.len() + bound <= best.len() {
            return;
        }
        for j in start..blocks.len() {
            if blocks[j].0 & used == 0 {
                chosen.push(j);
                go(blocks, j + 1, used | blocks[j].0, chosen, best, min_size);
                chosen.pop();
            }
        }
    }
    let min_size = blocks.iter().map(|b| b.len()).min().unwrap_or(1);
    let mut best = Vec::new();
    go(blocks, 0, 0, &mut Vec::new(), &mut best, min_size);
    best
}

/// `bs(f_u, x)`: exact maximum packing over the minimal sensitive blocks.
/// Any disjoint family of sensitive blocks shrinks member-wise to minimal
/// ones with the same count, so restricting to minimal blocks is exact.
pub fn block_sensitivity_u_at(t: &HazardFreeTable, x: &TernaryString) -> BlockFamily {
    let minimal = minimal_sensitive_blocks(t, x);
    let sets: Vec<BlockSet> = minimal.iter().map(|w| w.block).collect();
    let picked = max_disjoint_packing(&sets);
    BlockFamily {
        count: picked.len(),
        blocks: picked.into_iter().map(|j| minimal[j].clone()).collect(),
    }
}

/// `bs_u(f)` and the per-value maxima `bs_{u,b}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSensitivity {
    pub total: usize,
    /// Indexed by `Trit as usize`: maxima over `f_u^{-1}(0)`, `f_u^{-1}(1)`, `f_u^{-1}(u)`.
    pub by_value: [usize; 3],
    /// For each value with a nonempty preimage, an input attaining the
    /// maximum and a disjoint family realizing it.
    pub witnesses: [Option<BlockFamily>; 3],
}

impl BlockSensitivity {
    pub fn of(&self, value: Trit) -> usize {
        self.by_value[value as usize]
    }
}

pub fn block_sensitivity_u(t: &HazardFreeTable) -> BlockSensitivity {
    let n = t.arity();
    let per_input: Vec<(Trit, BlockFamily)> = super::map_inputs(t, |x| {
        let y = TernaryString::from_index(n, x);
        (t.at(x), block_sensitivity_u_at(t, &y))
    });
    let mut by_value = [0usize; 3];
    let mut witnesses: [Option<BlockFamily>; 3] = [None, None, None];
    for (value, family) in per_input {
        let slot = value as usize;
        if witnesses[slot].is_none() || family.count > by_value[slot] {
            by_value[slot] = family.count;
            witnesses[slot] = Some(family);
        }
    }
    BlockSensitivity {
        total: by_value.iter().copied().max().unwrap_or(0),
        by_value,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::BooleanFunction;

    fn table(n: usize, bits: &str) -> HazardFreeTable {
        let f = BooleanFunction::new(n, bits.chars().map(|c| c == '1').collect()).unwrap();
        HazardFreeTable::new(&f).unwrap()
    }

    fn ts(s: &str) -> TernaryString {
        s.parse().unwrap()
    }

    #[test]
    fn sensitivity_examples() {
        assert_eq!(sensitivity_u_at(&table(2, "0111"), &ts("00")), 2);
        assert_eq!(sensitivity_u_at(&table(2, "0110"), &ts("11")), 2);
        assert_eq!(sensitivity_u_at(&table(2, "0000"), &ts("u1")), 0);
        assert_eq!(sensitivity_u(&table(2, "0111")).0, 2);
        assert_eq!(sensitivity_u(&table(3, "01101001")).0, 3);
        assert_eq!(sensitivity_u(&table(2, "0000")).0, 0);
    }

    #[test]
    fn minimal_blocks_examples() {
        let and2 = table(2, "0001");
        let blocks: Vec<String> = minimal_sensitive_blocks(&and2, &ts("11"))
            .iter()
            .map(|w| w.block.to_string())
            .collect();
        assert_eq!(blocks, ["{1}", "{2}"]);
        for w in minimal_sensitive_blocks(&and2, &ts("11")) {
            assert!(w.is_valid(&and2));
        }
        // OR_2 at uu: setting x1 := 1 forces 1, so {1} and {2} are sensitive
        let or2 = table(2, "0111");
        let at_uu = minimal_sensitive_blocks(&or2, &ts("uu"));
        assert_eq!(at_uu.len(), 2);
        assert_eq!(at_uu[0].altered.to_string(), "1u");
        assert!(minimal_sensitive_blocks(&table(2, "1111"), &ts("0u")).is_empty());
    }

    #[test]
    fn block_sensitivity_examples() {
        assert_eq!(
            block_sensitivity_u_at(&table(3, "01101001"), &ts("000")).count,
            3
        );
        assert_eq!(
            block_sensitivity_u_at(&table(2, "0001"), &ts("11")).count,
            2
        );
        assert_eq!(
            block_sensitivity_u_at(&table(2, "0000"), &ts("1u")).count,
            0
        );
        assert_eq!(block_sensitivity_u(&table(3, "01111111")).total, 3);
        let and2 = block_sensitivity_u(&table(2, "0001"));
        assert_eq!(and2.of(Trit::One), 2);
        assert_eq!(and2.of(Trit::Zero), 1);
        assert_eq!(block_sensitivity_u(&table(2, "1111")).total, 0);
    }

    #[test]
    fn packing_prefers_more_small_blocks() {
        let blocks = [
            BlockSet::from_indices(&[0, 1]),
            BlockSet::from_indices(&[0]),
            BlockSet::from_indices(&[1]),
            BlockSet::from_indices(&[2, 3]),
        ];
        assert_eq!(max_disjoint_packing(&blocks), [1, 2, 3]);
        assert!(max_disjoint_packing(&[]).is_empty());
    }
}
