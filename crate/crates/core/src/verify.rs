//! Property sweeps over function populations: exhaustive for small arity,
//! seeded samples above it. Each suite checks a family of invariants per
//! function and reports pass/fail counts per check with counterexamples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{
    downward_closure_solve, monotone_simulate, or_via_ind_reduction, unate_simulate, Algorithm1,
    Oracle,
};
use crate::error::{Error, Result};
use crate::function::{all_functions, BooleanFunction};
use crate::generate::FunctionSpec;
use crate::hazard::{Caps, HazardFreeTable};
use crate::measures::MeasureReport;
use crate::ternary::{TernaryString, Trit};
use crate::trees::query_complexity;

/// Largest arity swept exhaustively by default.
pub const EXHAUSTIVE_ARITY: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Core,
    Algorithm1,
    Monotone,
    Closure,
    Reduction,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "all",
        "core",
        "algorithm1",
        "monotone",
        "closure",
        "reduction",
    ];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "core" => Suite::Core,
            "algorithm1" => Suite::Algorithm1,
            "monotone" => Suite::Monotone,
            "closure" => Suite::Closure,
            "reduction" => Suite::Reduction,
            _ => {
                return Err(Error::InvalidSpec {
                    spec: s.to_string(),
                    reason: format!("unknown suite; expected one of {}", Suite::NAMES.join(", ")),
                })
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::All,
            Suite::Core,
            Suite::Algorithm1,
            Suite::Monotone,
            Suite::Closure,
            Suite::Reduction,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

/// Which functions a sweep covers.
#[derive(Debug, Clone, Serialize)]
pub struct Population {
    /// Arities `min_arity..=max_arity` are covered.
    pub min_arity: usize,
    pub max_arity: usize,
    pub seed: u64,
    /// Samples per arity above [`EXHAUSTIVE_ARITY`].
    pub samples: usize,
    /// Sweep arity 4 exhaustively instead of sampling.
    pub exhaustive_four: bool,
}

impl Population {
    pub fn new(max_arity: usize, seed: u64, samples: usize) -> Self {
        Population {
            min_arity: 1,
            max_arity,
            seed,
            samples,
            exhaustive_four: false,
        }
    }

    /// Functions of one arity, in a fixed order.
    pub fn functions(&self, arity: usize) -> Vec<BooleanFunction> {
        if arity <= EXHAUSTIVE_ARITY || (arity == 4 && self.exhaustive_four) {
            all_functions(arity).collect()
        } else {
            sample_functions(arity, self.samples, self.seed)
        }
    }

    /// Monotone functions of one arity: all of them up to arity 4.
    pub fn monotone_functions(&self, arity: usize) -> Vec<BooleanFunction> {
        if arity <= 4 {
            all_functions(arity).filter(|f| f.is_monotone()).collect()
        } else {
            sample_monotone(arity, self.samples, self.seed)
        }
    }
}

/// `count` uniformly random functions of the given arity, seeded per arity.
pub fn sample_functions(arity: usize, count: usize, seed: u64) -> Vec<BooleanFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (arity as u64).rotate_left(32));
    (0..count)
        .map(|_| BooleanFunction::from_index_fn(arity, |_| rng.gen()))
        .collect()
}

/// Monotone functions as downward closures of sparse random seed sets.
fn sample_monotone(arity: usize, count: usize, seed: u64) -> Vec<BooleanFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f6e6f ^ arity as u64);
    (0..count)
        .map(|_| {
            let density = rng.gen_range(1..=arity as u32 + 1);
            BooleanFunction::from_index_fn(arity, |_| rng.gen_ratio(1, 1 << density.min(8)))
                .downward_closure()
        })
        .collect()
}

/// `f_u(x)` straight from the definition: the common value of `f` over the
/// resolutions of `x`, or u if they disagree.
pub fn reference_value(f: &BooleanFunction, x: &TernaryString) -> Trit {
    let mut values = x
        .resolutions()
        .into_iter()
        .map(|r| f.eval_index(r.binary_index().expect("resolutions are binary")));
    let first = values.next().expect("every string has a resolution");
    if values.all(|v| v == first) {
        Trit::from(first)
    } else {
        Trit::U
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub function: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
}

/// Outcome of one sweep.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub population: Population,
    pub functions: usize,
    pub checks: BTreeMap<String, CheckTally>,
    /// The first few counterexamples per check, in population order.
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
    pub duration_ms: u128,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.checks.values().map(|t| t.failed).sum()
    }

    /// One line per check, sorted by check id. Durations are left out so
    /// the text is reproducible.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "suite={} n={}..{} seed={} samples={} functions={}\n",
            self.suite,
            self.population.min_arity,
            self.population.max_arity,
            self.population.seed,
            self.population.samples,
            self.functions
        );
        for (id, t) in &self.checks {
            let status = if t.failed == 0 { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {id} passed={} failed={}\n",
                t.passed, t.failed
            ));
        }
        for c in &self.counterexamples {
            out.push_str(&format!("  counterexample {} {}", c.check, c.function));
            if let Some(x) = &c.input {
                out.push_str(&format!(" at {x}"));
            }
            out.push_str(&format!(": {}\n", c.detail));
        }
        out.push_str(if self.passed {
            "result=pass\n"
        } else {
            "result=fail\n"
        });
        out
    }
}

/// Per-function check results, merged in population order.
#[derive(Default)]
struct Outcome {
    results: Vec<(&'static str, Option<Counterexample>)>,
}

impl Outcome {
    fn check(
        &mut self,
        id: &'static str,
        f: &BooleanFunction,
        ok: bool,
        detail: impl FnOnce() -> (Option<String>, String),
    ) {
        let failure = (!ok).then(|| {
            let (input, detail) = detail();
            Counterexample {
                check: id.to_string(),
                function: f.table_spec(),
                input,
                detail,
            }
        });
        self.results.push((id, failure));
    }
}

const COUNTEREXAMPLES_PER_CHECK: usize = 3;

fn merge(
    outcomes: Vec<Outcome>,
    checks: &mut BTreeMap<String, CheckTally>,
    examples: &mut Vec<Counterexample>,
) {
    let mut shown: BTreeMap<&'static str, usize> = BTreeMap::new();
    for o in outcomes {
        for (id, failure) in o.results {
            let tally = checks.entry(id.to_string()).or_default();
            match failure {
                None => tally.passed += 1,
                Some(c) => {
                    tally.failed += 1;
                    let n = shown.entry(id).or_default();
                    if *n < COUNTEREXAMPLES_PER_CHECK {
                        *n += 1;
                        examples.push(c);
                    }
                }
            }
        }
    }
}

/// Runs a suite over a population on the current rayon pool.
pub fn run_suite(suite: Suite, population: &Population, caps: &Caps) -> Result<VerificationReport> {
    let start = Instant::now();
    if population.min_arity == 0 || population.min_arity > population.max_arity {
        return Err(Error::InvalidSpec {
            spec: format!("{}..{}", population.min_arity, population.max_arity),
            reason: "the arity range must be nonempty and start at 1 or more".into(),
        });
    }
    caps.check_search(population.max_arity)?;
    let mut checks = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut functions = 0;

    for arity in population.min_arity..=population.max_arity {
        let fs = population.functions(arity);
        let per_function = suite.includes(Suite::Core)
            || suite.includes(Suite::Algorithm1)
            || suite.includes(Suite::Closure);
        if per_function {
            functions += fs.len();
            let outcomes: Vec<Outcome> = fs
                .par_iter()
                .map(|f| check_function(suite, f, caps))
                .collect::<Result<_>>()?;
            merge(outcomes, &mut checks, &mut counterexamples);
        }
        if suite.includes(Suite::Monotone) {
            let ms = population.monotone_functions(arity);
            if !per_function {
                functions += ms.len();
            }
            let outcomes: Vec<Outcome> = ms
                .par_iter()
                .map(|f| check_monotone(f, caps))
                .collect::<Result<_>>()?;
            merge(outcomes, &mut checks, &mut counterexamples);
            let unate: Vec<&BooleanFunction> = fs
                .iter()
                .filter(|f| f.unate_orientation().is_some())
                .collect();
            let outcomes: Vec<Outcome> = unate
                .par_iter()
                .map(|f| check_unate(f, caps))
                .collect::<Result<_>>()?;
            merge(outcomes, &mut checks, &mut counterexamples);
        }
    }
    if suite.includes(Suite::Reduction) {
        let outcomes = (population.min_arity..=population.max_arity.min(2))
            .map(|k| check_reduction(k, caps))
            .collect::<Result<Vec<_>>>()?;
        functions += outcomes.len();
        merge(outcomes, &mut checks, &mut counterexamples);
    }

    let passed = checks.values().all(|t: &CheckTally| t.failed == 0);
    Ok(VerificationReport {
        suite,
        population: population.clone(),
        functions,
        checks,
        counterexamples,
        passed,
        duration_ms: start.elapsed().as_millis(),
    })
}

fn inequality(id: &'static str, o: &mut Outcome, f: &BooleanFunction, lhs: usize, rhs: usize) {
    o.check(id, f, lhs <= rhs, || (None, format!("{lhs} > {rhs}")));
}

fn check_function(suite: Suite, f: &BooleanFunction, caps: &Caps) -> Result<Outcome> {
    let n = f.arity();
    let t = HazardFreeTable::with_caps(f, caps)?;
    let mut o = Outcome::default();

    if suite.includes(Suite::Core) {
        let mismatch = TernaryString::all(n).find(|x| t.at(x.index()) != reference_value(f, x));
        o.check("fu_matches_resolutions", f, mismatch.is_none(), || {
            let x = mismatch.clone().unwrap();
            (
                Some(x.to_string()),
                format!(
                    "table {} vs definition {}",
                    t.at(x.index()),
                    reference_value(f, &x)
                ),
            )
        });

        let r = MeasureReport::compute(&t, caps)?;
        inequality("s_u<=bs_u", &mut o, f, r.s_u, r.bs_u);
        inequality("bs_u<=C_u", &mut o, f, r.bs_u, r.C_u);
        inequality("bs_u01<=C_u", &mut o, f, r.bs_u_0.max(r.bs_u_1), r.C_u);
        inequality("C_u<=D_u", &mut o, f, r.C_u, r.D_u);
        inequality("bs_u<=D_u", &mut o, f, r.bs_u, r.D_u);
        inequality("D_u<=n", &mut o, f, r.D_u, n);
        inequality("D<=D_u", &mut o, f, r.D, r.D_u);
        inequality("s<=s_u", &mut o, f, r.s, r.s_u);
        inequality("bs<=bs_u", &mut o, f, r.bs, r.bs_u);
        inequality("C<=C_u", &mut o, f, r.C, r.C_u);
        inequality("C_u<=bs_u*s_u", &mut o, f, r.C_u, r.bs_u * r.s_u);
        inequality("C_uu<=2C_u", &mut o, f, r.C_u_uval, 2 * r.C_u);
        inequality("D<=C*bs", &mut o, f, r.D, r.C * r.bs);

        let w = r.witnesses.as_ref().expect("compute attaches witnesses");
        let tree_u = w.tree_u.verify(&t);
        o.check(
            "tree_u_verifies",
            f,
            tree_u.is_ok() && w.tree_u.depth() == r.D_u,
            || {
                (
                    tree_u.clone().err().map(|x| x.to_string()),
                    format!("depth {} vs D_u {}", w.tree_u.depth(), r.D_u),
                )
            },
        );
        let tree = w.tree.verify_binary(f);
        o.check(
            "tree_verifies",
            f,
            tree.is_ok() && w.tree.depth() == r.D,
            || {
                (
                    tree.clone().err().map(|x| x.to_string()),
                    format!("depth {} vs D {}", w.tree.depth(), r.D),
                )
            },
        );
        let certs_ok = w.certificates.iter().flatten().all(|c| c.is_valid(&t));
        o.check("certificate_witnesses", f, certs_ok, || {
            (None, "invalid certificate witness".into())
        });
        let blocks_ok = w.blocks.iter().flatten().all(|fam| {
            fam.count == fam.blocks.len()
                && fam.blocks.iter().all(|b| b.is_valid(&t))
                && fam.blocks.iter().enumerate().all(|(i, a)| {
                    fam.blocks[i + 1..]
                        .iter()
                        .all(|b| a.block.is_disjoint(b.block) && a.base == b.base)
                })
        });
        o.check("block_witnesses", f, blocks_ok, || {
            (None, "invalid block family".into())
        });
    }

    if suite.includes(Suite::Algorithm1) {
        let solver = Algorithm1::new(&t);
        for x in TernaryString::all(n) {
            let c = solver.check_claims(&x)?;
            let want = t.at(x.index());
            o.check("algorithm1_output", f, c.run.output == want, || {
                (
                    Some(x.to_string()),
                    format!("output {} vs f_u {}", c.run.output, want),
                )
            });
            o.check("algorithm1_bound", f, c.run.queries <= c.run.bound, || {
                (
                    Some(x.to_string()),
                    format!("{} queries > bound {}", c.run.queries, c.run.bound),
                )
            });
            o.check("algorithm1_claim1", f, c.phase2_violation.is_none(), || {
                (
                    Some(x.to_string()),
                    format!(
                        "1-input {} consistent at second loop",
                        c.phase2_violation.clone().unwrap()
                    ),
                )
            });
            o.check("algorithm1_claim2", f, c.final_violation.is_none(), || {
                (
                    Some(x.to_string()),
                    format!(
                        "input {} consistent at final u",
                        c.final_violation.clone().unwrap()
                    ),
                )
            });
        }
    }

    if suite.includes(Suite::Closure) {
        let (d_u, tree_u) = crate::trees::query_complexity_u(&t, caps)?;
        let closure = f.downward_closure();
        let wrong = (0..1usize << n).find(|&x| {
            let mut oracle = Oracle::new(TernaryString::from_binary_index(n, x));
            downward_closure_solve(&tree_u, &mut oracle) != closure.eval_index(x)
        });
        o.check("closure_pointwise", f, wrong.is_none(), || {
            let x = wrong.unwrap();
            (
                Some(TernaryString::from_binary_index(n, x).to_string()),
                "solver disagrees with closure".into(),
            )
        });
        let (d_closure, _) = query_complexity(&closure, caps)?;
        inequality("D(closure)<=D_u", &mut o, f, d_closure, d_u);
    }
    Ok(o)
}

fn check_monotone(f: &BooleanFunction, caps: &Caps) -> Result<Outcome> {
    let n = f.arity();
    let t = HazardFreeTable::with_caps(f, caps)?;
    let (d, tree) = query_complexity(f, caps)?;
    let (d_u, _) = crate::trees::query_complexity_u(&t, caps)?;
    let mut o = Outcome::default();
    inequality("monotone_D<=D_u", &mut o, f, d, d_u);
    inequality("monotone_D_u<=2D", &mut o, f, d_u, 2 * d);
    for x in TernaryString::all(n) {
        let mut oracle = Oracle::new(x.clone());
        let r = monotone_simulate(f, &tree, &mut oracle)?;
        let want = t.at(x.index());
        o.check(
            "monotone_simulate",
            f,
            r.output == want && oracle.queries() <= 2 * d,
            || {
                (
                    Some(x.to_string()),
                    format!(
                        "output {} vs {}, {} queries vs 2D = {}",
                        r.output,
                        want,
                        oracle.queries(),
                        2 * d
                    ),
                )
            },
        );
    }
    Ok(o)
}

fn check_unate(f: &BooleanFunction, caps: &Caps) -> Result<Outcome> {
    let n = f.arity();
    let t = HazardFreeTable::with_caps(f, caps)?;
    let s = f
        .unate_orientation()
        .expect("caller filters unate functions");
    let (d, tree) = query_complexity(f, caps)?;
    let mut o = Outcome::default();
    for x in TernaryString::all(n) {
        let mut oracle = Oracle::new(x.clone());
        let r = unate_simulate(f, &s, &tree, &mut oracle)?;
        let want = t.at(x.index());
        o.check(
            "unate_simulate",
            f,
            r.output == want && oracle.queries() <= 2 * d,
            || {
                (
                    Some(x.to_string()),
                    format!("output {} vs {} under orientation {s}", r.output, want),
                )
            },
        );
    }
    Ok(o)
}

fn check_reduction(address_bits: usize, caps: &Caps) -> Result<Outcome> {
    let ind = FunctionSpec::Indexing(address_bits).build(caps.search)?;
    let t = HazardFreeTable::with_caps(&ind, caps)?;
    let (d_u, tree) = crate::trees::query_complexity_u(&t, caps)?;
    let width = 1usize << address_bits;
    let mut o = Outcome::default();
    inequality("ind_D_u>=2^k", &mut o, &ind, width, d_u);
    for x in 0..1usize << width {
        let input = TernaryString::from_binary_index(width, x);
        let mut oracle = Oracle::new(input.clone());
        let got = or_via_ind_reduction(address_bits, &tree, &mut oracle);
        o.check("or_via_ind", &ind, got == (x != 0), || {
            (
                Some(input.to_string()),
                format!("reduction answered {}", got as u8),
            )
        });
    }
    Ok(o)
}
