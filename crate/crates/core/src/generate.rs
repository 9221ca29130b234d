//! Named function families and the `family:params` text format.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Or(usize),
    And(usize),
    Parity(usize),
    /// Odd arity only.
    Majority(usize),
    /// `n` addressing variables followed by `2^n` targets.
    Indexing(usize),
    /// Even `n`; `n` addressing variables followed by `C(n, n/2)` targets.
    MonotoneIndexing(usize),
    Table {
        hex: String,
        arity: usize,
    },
    Random {
        arity: usize,
        seed: u64,
    },
}

fn invalid(spec: &str, reason: impl Into<String>) -> Error {
    Error::InvalidSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl FunctionSpec {
    pub fn family(&self) -> &'static str {
        match self {
            FunctionSpec::Or(_) => "or",
            FunctionSpec::And(_) => "and",
            FunctionSpec::Parity(_) => "parity",
            FunctionSpec::Majority(_) => "maj",
            FunctionSpec::Indexing(_) => "ind",
            FunctionSpec::MonotoneIndexing(_) => "mind",
            FunctionSpec::Table { .. } => "table",
            FunctionSpec::Random { .. } => "random",
        }
    }

    /// Parameters as they appear after the family name.
    pub fn params(&self) -> String {
        let s = self.to_string();
        s.split_once(':')
            .map(|(_, p)| p.to_string())
            .unwrap_or_default()
    }

    /// Total number of variables of the generated function.
    pub fn arity(&self) -> usize {
        match *self {
            FunctionSpec::Or(n)
            | FunctionSpec::And(n)
            | FunctionSpec::Parity(n)
            | FunctionSpec::Majority(n) => n,
            FunctionSpec::Indexing(n) => n + (1usize << n),
            FunctionSpec::MonotoneIndexing(n) => n + binomial(n, n / 2),
            FunctionSpec::Table { arity, .. } | FunctionSpec::Random { arity, .. } => arity,
        }
    }

    /// Generates the function, refusing arities above `max_arity`.
    pub fn build(&self, max_arity: usize) -> Result<BooleanFunction> {
        let arity = self.arity();
        if arity > max_arity {
            return Err(Error::ArityCap {
                arity,
                cap: max_arity,
            });
        }
        Ok(match *self {
            FunctionSpec::Or(n) => BooleanFunction::from_index_fn(n, |x| x != 0),
            FunctionSpec::And(n) => BooleanFunction::from_index_fn(n, |x| x == (1 << n) - 1),
            FunctionSpec::Parity(n) => {
                BooleanFunction::from_index_fn(n, |x| x.count_ones() % 2 == 1)
            }
            FunctionSpec::Majority(n) => {
                BooleanFunction::from_index_fn(n, |x| 2 * x.count_ones() as usize > n)
            }
            FunctionSpec::Indexing(n) => indexing(n),
            FunctionSpec::MonotoneIndexing(n) => monotone_indexing(n),
            FunctionSpec::Table { ref hex, arity } => BooleanFunction::from_hex(hex, arity)?,
            FunctionSpec::Random { arity, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                BooleanFunction::from_index_fn(arity, |_| rng.gen::<bool>())
            }
        })
    }
}

/// `IND_n(x, y) = y_{bin(x)}` with `bin(x)` in `1..=2^n` read most
/// significant bit first, so address `0^n` selects the first target.
fn indexing(n: usize) -> BooleanFunction {
    let targets = 1usize << n;
    BooleanFunction::from_index_fn(n + targets, |idx| {
        let address = idx >> targets;
        (idx >> (targets - 1 - address)) & 1 == 1
    })
}

/// Weight-`n/2` address strings in lexicographic order, as integers.
pub fn balanced_addresses(n: usize) -> Vec<usize> {
    (0..1usize << n)
        .filter(|x| x.count_ones() as usize == n / 2)
        .collect()
}

fn monotone_indexing(n: usize) -> BooleanFunction {
    let addresses = balanced_addresses(n);
    let targets = addresses.len();
    BooleanFunction::from_index_fn(n + targets, |idx| {
        let address = idx >> targets;
        let weight = address.count_ones() as usize;
        if 2 * weight < n {
            false
        } else if 2 * weight > n {
            true
        } else {
            let slot = addresses.binary_search(&address).unwrap();
            (idx >> (targets - 1 - slot)) & 1 == 1
        }
    })
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str, what: &str| -> Result<usize> {
            p.parse::<usize>()
                .map_err(|_| invalid(s, format!("{what} must be a nonnegative integer")))
        };
        let positive = |p: &str| -> Result<usize> {
            let n = num(p, "n")?;
            if n == 0 {
                Err(invalid(s, "n must be at least 1"))
            } else {
                Ok(n)
            }
        };
        match parts.as_slice() {
            ["or", n] => Ok(FunctionSpec::Or(positive(n)?)),
            ["and", n] => Ok(FunctionSpec::And(positive(n)?)),
            ["parity", n] => Ok(FunctionSpec::Parity(positive(n)?)),
            ["maj", n] => {
                let n = positive(n)?;
                if n % 2 == 0 {
                    return Err(invalid(s, "majority requires odd n"));
                }
                Ok(FunctionSpec::Majority(n))
            }
            ["ind", n] => {
                let n = positive(n)?;
                if n > 5 {
                    return Err(invalid(
                        s,
                        "indexing address width above 5 is not supported",
                    ));
                }
                Ok(FunctionSpec::Indexing(n))
            }
            ["mind", n] => {
                let n = positive(n)?;
                if n % 2 == 1 {
                    return Err(invalid(s, "monotone indexing requires even n"));
                }
                if n > 8 {
                    return Err(invalid(
                        s,
                        "monotone indexing address width above 8 is not supported",
                    ));
                }
                Ok(FunctionSpec::MonotoneIndexing(n))
            }
            ["table", hex, n] => {
                let arity = positive(n)?;
                if arity >= 32 {
                    return Err(invalid(s, "arity too large"));
                }
                // validate eagerly so malformed hex is a parse error
                BooleanFunction::from_hex(hex, arity)?;
                Ok(FunctionSpec::Table {
                    hex: hex.to_ascii_lowercase(),
                    arity,
                })
            }
            ["random", n, seed] => {
                let arity = positive(n)?;
                if arity >= 32 {
                    return Err(invalid(s, "arity too large"));
                }
                let seed = seed
                    .parse::<u64>()
                    .map_err(|_| invalid(s, "seed must be an unsigned integer"))?;
                Ok(FunctionSpec::Random { arity, seed })
            }
            [family, ..] => Err(invalid(
                s,
                format!("unknown family or arguments for {family:?}"),
            )),
            [] => Err(invalid(s, "empty spec")),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Or(n) => write!(f, "or:{n}"),
            FunctionSpec::And(n) => write!(f, "and:{n}"),
            FunctionSpec::Parity(n) => write!(f, "parity:{n}"),
            FunctionSpec::Majority(n) => write!(f, "maj:{n}"),
            FunctionSpec::Indexing(n) => write!(f, "ind:{n}"),
            FunctionSpec::MonotoneIndexing(n) => write!(f, "mind:{n}"),
            FunctionSpec::Table { hex, arity } => write!(f, "table:{hex}:{arity}"),
            FunctionSpec::Random { arity, seed } => write!(f, "random:{arity}:{seed}"),
        }
    }
}

/// Parses and builds a function spec under the given arity cap.
pub fn generate(spec: &str, max_arity: usize) -> Result<BooleanFunction> {
    spec.parse::<FunctionSpec>()?.build(max_arity)
}
