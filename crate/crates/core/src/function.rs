//! Total Boolean functions stored as full truth tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::ternary::TernaryString;

/// An `n`-variate Boolean function. Entry `bin(x)` of the table holds
/// `f(x)`, where `bin` reads variable 1 as the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    arity: usize,
    table: Vec<bool>,
}

/// An orientation `s` such that `x -> f(x xor s)` is monotone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation(pub Vec<bool>);

impl Orientation {
    pub fn zero(n: usize) -> Self {
        Orientation(vec![false; n])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Orientation as a binary-index mask (variable 1 most significant).
    pub fn mask(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

impl BooleanFunction {
    pub fn new(arity: usize, table: Vec<bool>) -> Result<Self> {
        if arity == 0 || arity >= usize::BITS as usize {
            return Err(Error::InvalidSpec {
                spec: format!("arity {arity}"),
                reason: "arity must be at least 1".into(),
            });
        }
        if table.len() != 1usize << arity {
            return Err(Error::ArityMismatch {
                expected: 1 << arity,
                found: table.len(),
            });
        }
        Ok(BooleanFunction { arity, table })
    }

    /// Builds a function from a predicate on the binary index of the input.
    pub fn from_index_fn(arity: usize, f: impl FnMut(usize) -> bool) -> Self {
        assert!(arity >= 1);
        BooleanFunction {
            arity,
            table: (0..1usize << arity).map(f).collect(),
        }
    }

    /// Builds a function from a predicate on the input bits (variable 1 first).
    pub fn from_bits_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Self {
        let mut bits = vec![false; arity];
        Self::from_index_fn(arity, |idx| {
            for (i, b) in bits.iter_mut().enumerate() {
                *b = (idx >> (arity - 1 - i)) & 1 == 1;
            }
            f(&bits)
        })
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        Self::from_index_fn(arity, |_| value)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    #[inline]
    pub fn eval_index(&self, index: usize) -> bool {
        self.table[index]
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: x.len(),
            });
        }
        let idx = x.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Ok(self.table[idx])
    }

    /// Evaluates on a u-free ternary string.
    pub fn eval_ternary(&self, x: &TernaryString) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: x.len(),
            });
        }
        let idx = x.binary_index().ok_or_else(|| Error::BadLiteral {
            literal: x.to_string(),
            position: x.u_positions()[0],
        })?;
        Ok(self.table[idx])
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&b| b == self.table[0])
    }

    /// Mask of the binary-index bit of variable `i` (0-based).
    #[inline]
    pub fn var_mask(&self, i: usize) -> usize {
        1 << (self.arity - 1 - i)
    }

    /// Indices (0-based) of the variables `f` depends on.
    pub fn dependent_variables(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&i| {
                let m = self.var_mask(i);
                (0..self.table.len()).any(|x| self.table[x] != self.table[x ^ m])
            })
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dependent_variables().len() == self.arity
    }

    pub fn is_monotone(&self) -> bool {
        self.is_monotone_under(0)
    }

    /// Whether `x -> f(x xor s)` is monotone, for `s` given as a binary-index mask.
    pub fn is_monotone_under(&self, s: usize) -> bool {
        (0..self.arity).all(|i| {
            let m = self.var_mask(i);
            (0..self.table.len())
                .filter(|x| x & m == 0)
                .all(|x| self.table[x ^ s] <= self.table[(x | m) ^ s])
        })
    }

    /// Per-variable direction test; indifferent variables get orientation 0.
    pub fn unate_orientation(&self) -> Option<Orientation> {
        let mut bits = Vec::with_capacity(self.arity);
        for i in 0..self.arity {
            let m = self.var_mask(i);
            let (mut rises, mut falls) = (false, false);
            for x in (0..self.table.len()).filter(|x| x & m == 0) {
                match (self.table[x], self.table[x | m]) {
                    (false, true) => rises = true,
                    (true, false) => falls = true,
                    _ => {}
                }
            }
            match (rises, falls) {
                (true, true) => return None,
                (false, true) => bits.push(true),
                _ => bits.push(false),
            }
        }
        Some(Orientation(bits))
    }

    /// `f_down(x) = OR_{z <= x} f(z)`, via a subset-sum pass per variable.
    pub fn downward_closure(&self) -> BooleanFunction {
        let mut table = self.table.clone();
        for i in 0..self.arity {
            let m = self.var_mask(i);
            for x in 0..table.len() {
                if x & m != 0 && table[x ^ m] {
                    table[x] = true;
                }
            }
        }
        BooleanFunction {
            arity: self.arity,
            table,
        }
    }

    /// Hex encoding of the table: first entry in the most significant bit of
    /// the first digit, zero padding in the low bits of the last digit.
    pub fn to_hex(&self) -> String {
        self.table
            .chunks(4)
            .map(|chunk| {
                let nibble = (0..4).fold(0u32, |acc, k| {
                    (acc << 1) | chunk.get(k).copied().unwrap_or(false) as u32
                });
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(hex: &str, arity: usize) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidSpec {
            spec: format!("table:{hex}:{arity}"),
            reason: reason.to_string(),
        };
        if arity == 0 || arity >= usize::BITS as usize {
            return Err(bad("arity must be at least 1"));
        }
        let len = 1usize << arity;
        if hex.len() != len.div_ceil(4) {
            return Err(bad(&format!(
                "expected {} hex digits for {} table entries",
                len.div_ceil(4),
                len
            )));
        }
        let mut table = Vec::with_capacity(hex.len() * 4);
        for c in hex.chars() {
            let nibble = c.to_digit(16).ok_or_else(|| bad("non-hex digit"))?;
            table.extend((0..4).rev().map(|k| (nibble >> k) & 1 == 1));
        }
        if table[len..].iter().any(|&b| b) {
            return Err(bad("nonzero padding bits"));
        }
        table.truncate(len);
        Ok(BooleanFunction { arity, table })
    }

    /// Text form `table:<hex>:<n>`.
    pub fn table_spec(&self) -> String {
        format!("table:{}:{}", self.to_hex(), self.arity)
    }

    pub fn table_string(&self) -> String {
        self.table
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table_spec())
    }
}

/// Every function of the given arity, in increasing order of the table read
/// as a number with the first entry least significant.
pub fn all_functions(arity: usize) -> impl Iterator<Item = BooleanFunction> {
    assert!(arity <= 4, "exhaustive enumeration is limited to arity 4");
    let len = 1usize << arity;
    (0..1u64 << len)
        .map(move |code| BooleanFunction::from_index_fn(arity, |x| (code >> x) & 1 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, bits: &str) -> BooleanFunction {
        BooleanFunction::new(n, bits.chars().map(|c| c == '1').collect()).unwrap()
    }

    #[test]
    fn eval_reads_msb_first() {
        let or2 = table(2, "0111");
        let and2 = table(2, "0001");
        assert!(!or2.eval(&[false, false]).unwrap());
        assert!(or2.eval(&[true, false]).unwrap());
        assert!(and2.eval(&[true, true]).unwrap());
        assert_eq!(
            or2.eval(&[true]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn dependent_variables_examples() {
        assert_eq!(table(2, "0011").dependent_variables(), [0]);
        assert_eq!(table(2, "0111").dependent_variables(), [0, 1]);
        assert!(table(2, "0000").dependent_variables().is_empty());
    }

    #[test]
    fn monotone_examples() {
        assert!(table(2, "0111").is_monotone());
        assert!(!table(2, "0110").is_monotone());
    }

    #[test]
    fn unate_examples() {
        assert_eq!(
            table(2, "0111").unate_orientation(),
            Some(Orientation::zero(2))
        );
        // (not x1) or x2: 00->1, 01->1, 10->0, 11->1
        let g = table(2, "1101");
        let s = g.unate_orientation().unwrap();
        assert_eq!(s.to_string(), "10");
        // enumerate x -> g(x xor 10) and check every edge is nondecreasing
        let shifted = BooleanFunction::from_index_fn(2, |x| g.eval_index(x ^ 0b10));
        for x in 0..4usize {
            for y in 0..4usize {
                if x & y == x {
                    assert!(shifted.eval_index(x) <= shifted.eval_index(y));
                }
            }
        }
        assert_eq!(table(2, "0110").unate_orientation(), None);
    }

    #[test]
    fn downward_closure_examples() {
        assert_eq!(table(2, "0110").downward_closure(), table(2, "0111"));
        assert_eq!(table(2, "0111").downward_closure(), table(2, "0111"));
        assert_eq!(table(2, "1111").downward_closure(), table(2, "1111"));
    }

    #[test]
    fn hex_layout() {
        let or2 = table(2, "0111");
        assert_eq!(or2.to_hex(), "7");
        assert_eq!(table(1, "10").to_hex(), "8");
        assert_eq!(table(3, "10000001").to_hex(), "81");
        assert_eq!(BooleanFunction::from_hex("8", 1).unwrap(), table(1, "10"));
        assert!(BooleanFunction::from_hex("9", 1).is_err());
        assert!(BooleanFunction::from_hex("7g", 3).is_err());
        assert!(BooleanFunction::from_hex("77", 2).is_err());
    }

    #[test]
    fn exhaustive_enumeration_counts() {
        assert_eq!(all_functions(2).count(), 16);
        assert_eq!(all_functions(3).count(), 256);
        assert_eq!(all_functions(4).filter(|f| f.is_monotone()).count(), 168);
        assert_eq!(all_functions(3).filter(|f| f.is_monotone()).count(), 20);
    }
}
