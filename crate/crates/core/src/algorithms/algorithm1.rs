//! The certificate / block-sensitivity u-query algorithm.
//!
//! Phase 1 runs `bs_{u,1}` rounds: take the lexicographically least 0-input
//! consistent with the knowledge `x*`, query the domain of its minimum
//! 0-certificate, and stop as soon as `x*` certifies 0 or 1. Phase 2 runs
//! `bs_{u,0}` rounds with 1-inputs and 1-certificates and stops when `x*`
//! certifies 0. Otherwise the answer is u.
//!
//! A phase ends early when no input of the wanted value is consistent with
//! `x*`. If Phase 1 ends that way a 1-input may still be consistent, so
//! Phase 2 also stops when `x*` certifies 1; after a full Phase 1 that exit
//! never fires.

use serde::Serialize;

use super::oracle::{QueryOracle, USolver};
use crate::error::{Error, Result};
use crate::hazard::HazardFreeTable;
use crate::measures::{block_sensitivity_u, certificate_complexity_u, certificate_u_at};
use crate::ternary::{PartialAssignment, TernaryString, Trit};

/// Where a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    Constant,
    Phase1,
    Phase2,
    Final,
}

#[derive(Debug, Clone, Serialize)]
pub struct Algorithm1Run {
    pub output: Trit,
    pub exit: Exit,
    /// Distinct positions queried.
    pub queries: usize,
    /// `bs_{u,1} * C_{u,0} + bs_{u,0} * C_{u,1}`.
    pub bound: usize,
    /// Rounds actually executed in each phase.
    pub rounds: [usize; 2],
    /// `x*` when the second loop was entered.
    pub phase2_entry: Option<PartialAssignment>,
    /// Whether Phase 1 ran all `bs_{u,1}` rounds.
    pub phase1_complete: bool,
    /// `x*` at the end of the run.
    pub knowledge: PartialAssignment,
}

/// Precomputed loop bounds for one function.
#[derive(Debug, Clone)]
pub struct Algorithm1<'a> {
    table: &'a HazardFreeTable,
    bs_u_1: usize,
    bs_u_0: usize,
    c_u_0: usize,
    c_u_1: usize,
}

impl<'a> Algorithm1<'a> {
    pub fn new(table: &'a HazardFreeTable) -> Self {
        let bs = block_sensitivity_u(table);
        let c = certificate_complexity_u(table);
        Algorithm1 {
            table,
            bs_u_1: bs.of(Trit::One),
            bs_u_0: bs.of(Trit::Zero),
            c_u_0: c.of(Trit::Zero),
            c_u_1: c.of(Trit::One),
        }
    }

    pub fn table(&self) -> &HazardFreeTable {
        self.table
    }

    /// `(bs_{u,1}, bs_{u,0})`, the two loop lengths.
    pub fn rounds(&self) -> (usize, usize) {
        (self.bs_u_1, self.bs_u_0)
    }

    pub fn bound(&self) -> usize {
        self.bs_u_1 * self.c_u_0 + self.bs_u_0 * self.c_u_1
    }

    /// Lexicographically least input of value `b` consistent with `p`.
    pub fn least_consistent(&self, p: &PartialAssignment, b: Trit) -> Option<TernaryString> {
        p.completions().find(|y| self.table.at(y.index()) == b)
    }

    pub fn run(&self, oracle: &mut dyn QueryOracle) -> Result<Algorithm1Run> {
        let n = self.table.arity();
        if oracle.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: oracle.arity(),
            });
        }
        let mut knowledge = PartialAssignment::unset(n);
        let mut rounds = [0usize; 2];
        let finish =
            |output, exit, knowledge: PartialAssignment, rounds: [usize; 2], phase2_entry| {
                Ok(Algorithm1Run {
                    output,
                    exit,
                    queries: knowledge.size(),
                    bound: self.bound(),
                    rounds,
                    phase2_entry,
                    phase1_complete: rounds[0] == self.bs_u_1,
                    knowledge,
                })
            };

        if self.table.function().is_constant() {
            let v = Trit::from(self.table.function().eval_index(0));
            return finish(v, Exit::Constant, knowledge, rounds, None);
        }

        for _ in 0..self.bs_u_1 {
            let Some(base) = self.least_consistent(&knowledge, Trit::Zero) else {
                break;
            };
            rounds[0] += 1;
            self.query_certificate(&base, &mut knowledge, oracle);
            match self.table.constant_on(&knowledge) {
                Some(Trit::Zero) => {
                    return finish(Trit::Zero, Exit::Phase1, knowledge, rounds, None)
                }
                Some(Trit::One) => return finish(Trit::One, Exit::Phase1, knowledge, rounds, None),
                _ => {}
            }
        }

        let entry = knowledge.clone();
        for _ in 0..self.bs_u_0 {
            let Some(base) = self.least_consistent(&knowledge, Trit::One) else {
                break;
            };
            rounds[1] += 1;
            self.query_certificate(&base, &mut knowledge, oracle);
            match self.table.constant_on(&knowledge) {
                Some(v @ (Trit::Zero | Trit::One)) => {
                    return finish(v, Exit::Phase2, knowledge, rounds, Some(entry))
                }
                _ => {}
            }
        }
        finish(Trit::U, Exit::Final, knowledge, rounds, Some(entry))
    }

    /// Queries every not-yet-known position in the domain of a minimum
    /// certificate at `base` and folds the answers into `knowledge`.
    fn query_certificate(
        &self,
        base: &TernaryString,
        knowledge: &mut PartialAssignment,
        oracle: &mut dyn QueryOracle,
    ) {
        let cert = certificate_u_at(self.table, base);
        for i in cert.assignment.domain() {
            if knowledge.get(i).is_none() {
                knowledge.set(i, Some(oracle.query(i)));
            }
        }
    }
}

impl USolver for Algorithm1<'_> {
    fn solve(&self, oracle: &mut dyn QueryOracle) -> Trit {
        self.run(oracle).expect("oracle arity matches").output
    }
}

/// Runs the algorithm once against a fresh oracle holding `hidden`.
pub fn algorithm1_solve(table: &HazardFreeTable, hidden: &TernaryString) -> Result<Algorithm1Run> {
    let mut oracle = super::Oracle::new(hidden.clone());
    Algorithm1::new(table).run(&mut oracle)
}

/// Outcome of the instrumented consistency checks.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimsReport {
    pub run: Algorithm1Run,
    /// A 1-input consistent with `x*` when the second loop starts after a
    /// full first loop.
    pub phase2_violation: Option<TernaryString>,
    /// A 1-input consistent with `x*` when the second loop starts after the
    /// first loop ran out of consistent 0-inputs. Informational only.
    pub early_entry_one_input: Option<TernaryString>,
    /// A 0- or 1-input consistent with `x*` when u is output.
    pub final_violation: Option<TernaryString>,
}

impl ClaimsReport {
    pub fn holds(&self) -> bool {
        self.phase2_violation.is_none() && self.final_violation.is_none()
    }
}

/// Runs the algorithm and checks: on entering the second loop after a full
/// first loop no 1-input is consistent with `x*`; on outputting u no 0-input
/// and no 1-input is.
pub fn instrumented_claims_check(
    table: &HazardFreeTable,
    hidden: &TernaryString,
) -> Result<ClaimsReport> {
    Algorithm1::new(table).check_claims(hidden)
}

impl Algorithm1<'_> {
    /// [`instrumented_claims_check`] reusing precomputed loop bounds.
    pub fn check_claims(&self, hidden: &TernaryString) -> Result<ClaimsReport> {
        let mut oracle = super::Oracle::new(hidden.clone());
        let run = self.run(&mut oracle)?;
        let entry_one_input = run
            .phase2_entry
            .as_ref()
            .and_then(|p| self.least_consistent(p, Trit::One));
        let (phase2_violation, early_entry_one_input) = if run.phase1_complete {
            (entry_one_input, None)
        } else {
            (None, entry_one_input)
        };
        let final_violation = if run.exit == Exit::Final {
            run.knowledge
                .completions()
                .find(|y| self.table.at(y.index()) != Trit::U)
        } else {
            None
        };
        Ok(ClaimsReport {
            run,
            phase2_violation,
            early_entry_one_input,
            final_violation,
        })
    }
}
