//! The hazard-free (K3) extension `f_u` of a Boolean function, cached over
//! all `3^n` ternary inputs.

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::ternary::{pow3, PartialAssignment, TernaryString, Trit};

/// Arity limits for the exponential-size tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest arity for which the `3^n` hazard-free table is built.
    pub table: usize,
    /// Largest arity for the `4^n`-state decision-tree search.
    pub search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table: 16,
            search: 12,
        }
    }
}

impl Caps {
    /// Caps clamped to a single maximum arity.
    pub fn uniform(max_arity: usize) -> Self {
        Caps {
            table: max_arity,
            search: max_arity,
        }
    }

    pub fn check_table(&self, arity: usize) -> Result<()> {
        check(arity, self.table)
    }

    pub fn check_search(&self, arity: usize) -> Result<()> {
        check(arity, self.search)
    }
}

fn check(arity: usize, cap: usize) -> Result<()> {
    if arity > cap {
        Err(Error::ArityCap { arity, cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct HazardFreeTable {
    function: BooleanFunction,
    values: Vec<Trit>,
}

impl HazardFreeTable {
    /// Builds the table with the default caps.
    pub fn new(function: &BooleanFunction) -> Result<Self> {
        Self::with_caps(function, &Caps::default())
    }

    /// Fills entries in increasing index order. An entry with a u digit
    /// merges its two one-step refinements (u -> 0, u -> 1), which both have
    /// smaller indices; u-free entries read the truth table.
    pub fn with_caps(function: &BooleanFunction, caps: &Caps) -> Result<Self> {
        let n = function.arity();
        caps.check_table(n)?;
        let size = pow3(n);
        let mut values = Vec::with_capacity(size);
        for idx in 0..size {
            // scan digits from the least significant end until a u appears
            let mut rest = idx;
            let mut weight = 1usize;
            let mut bin = 0usize;
            let mut value = None;
            for k in 0..n {
                match rest % 3 {
                    2 => {
                        let lo: Trit = values[idx - 2 * weight];
                        let hi: Trit = values[idx - weight];
                        value = Some(lo.merge(hi));
                        break;
                    }
                    d => bin |= d << k,
                }
                rest /= 3;
                weight *= 3;
            }
            values.push(value.unwrap_or_else(|| Trit::from(function.eval_index(bin))));
        }
        Ok(HazardFreeTable {
            function: function.clone(),
            values,
        })
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.function
    }

    pub fn arity(&self) -> usize {
        self.function.arity()
    }

    pub fn values(&self) -> &[Trit] {
        &self.values
    }

    #[inline]
    pub fn at(&self, index: usize) -> Trit {
        self.values[index]
    }

    pub fn eval(&self, y: &TernaryString) -> Result<Trit> {
        if y.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: y.len(),
            });
        }
        Ok(self.values[y.index()])
    }

    /// The common value of `f_u` over every ternary string consistent with
    /// `p`, or `None` if the completions disagree.
    ///
    /// Only binary settings of the `*` cells are inspected: if they all give
    /// `b`, every ternary completion is a union of them and also gives `b`;
    /// if they all give u, adding u cells only enlarges the resolution set.
    pub fn constant_on(&self, p: &PartialAssignment) -> Option<Trit> {
        let (base, stars) = p.split_index();
        self.constant_on_index(base, &stars)
    }

    /// [`Self::constant_on`] on a base index (stars read as 0) and the
    /// weights of the starred positions.
    pub fn constant_on_index(&self, base: usize, star_weights: &[usize]) -> Option<Trit> {
        let first = self.values[base];
        for mask in 1usize..1 << star_weights.len() {
            let offset: usize = star_weights
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, w)| w)
                .sum();
            if self.values[base + offset] != first {
                return None;
            }
        }
        Some(first)
    }

    /// Inputs `x` with `f_u(x) = value`, in lexicographic order.
    pub fn preimage(&self, value: Trit) -> impl Iterator<Item = usize> + '_ {
        (0..self.values.len()).filter(move |&i| self.values[i] == value)
    }
}
