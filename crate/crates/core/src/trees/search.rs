//! Exact `D_u(f)` and `D(f)` by memoized minimax over partial assignments.
//!
//! A state is a partial assignment packed two bits per variable (variable 1
//! in the high bits; 0, 1, u = 2, * = 3). Replacing a `*` by an answer
//! always lowers the code, so a single increasing sweep over all `4^n`
//! codes sees every child before its parent.

use crate::error::Result;
use crate::function::BooleanFunction;
use crate::hazard::{Caps, HazardFreeTable};
use crate::ternary::{PartialAssignment, Trit};

use super::tree::DecisionTree;

const STAR: usize = 3;
const MIXED: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Answers in `{0, 1, u}`; the tree must compute `f_u`.
    Ternary,
    /// Answers in `{0, 1}`; the tree must compute `f`.
    Binary,
}

impl Model {
    fn answers(self) -> &'static [usize] {
        match self {
            Model::Ternary => &[0, 1, 2],
            Model::Binary => &[0, 1],
        }
    }
}

/// Solved game table: for every state, the constant value of the function on
/// its completions (or mixed) and the optimal remaining depth.
#[derive(Debug, Clone)]
pub struct QuerySearch {
    arity: usize,
    model: Model,
    class: Vec<u8>,
    value: Vec<u8>,
}

#[inline]
fn shift(n: usize, i: usize) -> usize {
    2 * (n - 1 - i)
}

impl QuerySearch {
    /// Solves the u-model game for `f_u`.
    pub fn ternary(t: &HazardFreeTable, caps: &Caps) -> Result<Self> {
        caps.check_search(t.arity())?;
        Ok(Self::solve(t.arity(), Model::Ternary, |code| {
            let n = t.arity();
            let idx = (0..n).fold(0usize, |acc, i| acc * 3 + (code >> shift(n, i) & 3));
            Some(t.at(idx) as u8)
        }))
    }

    /// Solves the classical game for `f`.
    pub fn binary(f: &BooleanFunction, caps: &Caps) -> Result<Self> {
        caps.check_search(f.arity())?;
        Ok(Self::solve(f.arity(), Model::Binary, |code| {
            let n = f.arity();
            let mut bin = 0usize;
            for i in 0..n {
                match code >> shift(n, i) & 3 {
                    2 => return None,
                    d => bin = bin << 1 | d,
                }
            }
            Some(f.eval_index(bin) as u8)
        }))
    }

    fn solve(n: usize, model: Model, leaf: impl Fn(usize) -> Option<u8>) -> Self {
        let size = 1usize << (2 * n);
        let mut class = vec![MIXED; size];
        let mut value = vec![0u8; size];
        let answers = model.answers();
        let mut stars = Vec::with_capacity(n);
        for code in 0..size {
            stars.clear();
            let mut reachable = true;
            for i in 0..n {
                match code >> shift(n, i) & 3 {
                    STAR => stars.push(i),
                    2 if model == Model::Binary => reachable = false,
                    _ => {}
                }
            }
            if !reachable {
                continue;
            }
            let Some(&last) = stars.last() else {
                class[code] = leaf(code).expect("reachable full assignment");
                continue;
            };
            // binary settings of the stars decide constancy (see HazardFreeTable::constant_on)
            let s = shift(n, last);
            let lo = class[code & !(3 << s)];
            let hi = class[(code & !(3 << s)) | 1 << s];
            class[code] = if lo == hi { lo } else { MIXED };
            if class[code] != MIXED {
                continue;
            }
            let mut best = u8::MAX;
            for &i in &stars {
                let s = shift(n, i);
                let cleared = code & !(3 << s);
                let worst = answers
                    .iter()
                    .map(|&a| value[cleared | a << s])
                    .max()
                    .unwrap();
                best = best.min(worst + 1);
            }
            value[code] = best;
        }
        QuerySearch {
            arity: n,
            model,
            class,
            value,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn model(&self) -> Model {
        self.model
    }

    fn root(&self) -> usize {
        (1usize << (2 * self.arity)) - 1
    }

    pub fn encode(&self, p: &PartialAssignment) -> usize {
        assert_eq!(p.len(), self.arity);
        p.cells().iter().fold(0usize, |acc, c| {
            acc << 2 | c.map_or(STAR, |t| t.digit() as usize)
        })
    }

    /// `D_u(f)` or `D(f)`, depending on the model.
    pub fn depth(&self) -> usize {
        self.value[self.root()] as usize
    }

    /// Optimal remaining depth after the knowledge `p`.
    pub fn value_at(&self, p: &PartialAssignment) -> usize {
        self.value[self.encode(p)] as usize
    }

    /// The common value on all completions of `p`, if constant.
    pub fn constant_at(&self, p: &PartialAssignment) -> Option<Trit> {
        match self.class[self.encode(p)] {
            MIXED => None,
            c => Some(Trit::from_digit(c)),
        }
    }

    /// Optimal tree; ties go to the lowest variable index. In the binary
    /// model the `u` branch of every node is the leaf u and is never taken.
    pub fn tree(&self) -> DecisionTree {
        self.subtree(self.root())
    }

    fn subtree(&self, code: usize) -> DecisionTree {
        let n = self.arity;
        if self.class[code] != MIXED {
            return DecisionTree::Leaf(Trit::from_digit(self.class[code]));
        }
        let target = self.value[code];
        let var = (0..n)
            .filter(|&i| code >> shift(n, i) & 3 == STAR)
            .find(|&i| {
                let s = shift(n, i);
                let cleared = code & !(3 << s);
                self.model
                    .answers()
                    .iter()
                    .map(|&a| self.value[cleared | a << s])
                    .max()
                    .unwrap()
                    + 1
                    == target
            })
            .expect("an optimal query exists");
        let s = shift(n, var);
        let cleared = code & !(3 << s);
        let on_u = match self.model {
            Model::Ternary => self.subtree(cleared | 2 << s),
            Model::Binary => DecisionTree::Leaf(Trit::U),
        };
        DecisionTree::query(
            var,
            self.subtree(cleared),
            self.subtree(cleared | 1 << s),
            on_u,
        )
    }
}

/// `D_u(f)` with an optimal witness tree.
pub fn query_complexity_u(t: &HazardFreeTable, caps: &Caps) -> Result<(usize, DecisionTree)> {
    let search = QuerySearch::ternary(t, caps)?;
    Ok((search.depth(), search.tree()))
}

/// Classical `D(f)` with an optimal witness tree.
pub fn query_complexity(f: &BooleanFunction, caps: &Caps) -> Result<(usize, DecisionTree)> {
    let search = QuerySearch::binary(f, caps)?;
    Ok((search.depth(), search.tree()))
}
