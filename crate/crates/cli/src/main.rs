use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use uquery::algorithms::{monotone_simulate, unate_simulate, Algorithm1, Oracle};
use uquery::measures::MeasureReport;
use uquery::trees::{query_complexity, query_complexity_u};
use uquery::verify::{run_suite, Population, Suite};
use uquery::{BooleanFunction, Caps, FunctionSpec, HazardFreeTable, TernaryString};

/// Query complexity of hazard-free extensions of Boolean functions.
///
/// FUNCTION arguments take a spec (`or:3`, `and:2`, `parity:4`, `maj:3`,
/// `ind:2`, `mind:2`, `table:<hex>:<n>`, `random:<n>:<seed>`) or the path
/// of a file written by `gen`.
#[derive(Parser)]
#[command(name = "uquery", version)]
struct Cli {
    /// Largest arity accepted for tables and searches.
    #[arg(long, global = true, env = "UQUERY_CAP")]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a function file (TOML) for a spec.
    Gen {
        spec: String,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate f_u on a ternary string such as `0u1`.
    Eval { function: String, input: String },
    /// Print every measure as `key=value` lines.
    Measures {
        function: String,
        /// Also print the witnesses behind each measure.
        #[arg(long)]
        witnesses: bool,
        /// Write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a u-query solver against a hidden input and print its transcript.
    Solve {
        function: String,
        hidden: String,
        #[arg(long, value_enum, default_value_t = Method::Algorithm1)]
        method: Method,
    },
    /// Compute D_u or D exactly with an optimal tree.
    Tree {
        function: String,
        #[arg(long, value_enum, default_value_t = TreeModel::U)]
        model: TreeModel,
        /// Write the tree JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the invariants over a function population.
    Verify {
        #[arg(default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Arity range: `3` means 1..3, `2..3` is inclusive.
        #[arg(long, default_value = "1..3", value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled functions per arity above 3.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Sweep arity 4 exhaustively instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Worker threads (default: available processors).
        #[arg(long)]
        workers: Option<usize>,
        /// Write the full report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Algorithm1,
    Tree,
    Monotone,
    Unate,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeModel {
    U,
    Binary,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: uquery::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad arity `{t}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (1, num(s)?),
    };
    if lo == 0 || lo > hi {
        return Err(format!("empty or zero-based arity range `{s}`"));
    }
    Ok((lo, hi))
}

/// Contents of a function file.
#[derive(Serialize, Deserialize)]
struct FunctionFile {
    family: String,
    params: String,
    arity: usize,
    /// `table:<hex>:<n>`.
    table: String,
}

/// Failures that map to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    Usage(e.to_string()).into()
}

fn load_function(arg: &str, caps: &Caps) -> anyhow::Result<BooleanFunction> {
    let path = Path::new(arg);
    let spec = if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let file: FunctionFile = toml::from_str(&text).map_err(|e| usage(format!("{arg}: {e}")))?;
        file.table
    } else {
        arg.to_string()
    };
    let spec: FunctionSpec = spec.parse().map_err(usage)?;
    spec.build(caps.table).map_err(usage)
}

fn parse_input(s: &str, arity: usize) -> anyhow::Result<TernaryString> {
    let x: TernaryString = s.parse().map_err(usage)?;
    if x.len() != arity {
        return Err(usage(uquery::Error::ArityMismatch {
            expected: arity,
            found: x.len(),
        }));
    }
    Ok(x)
}

fn table_for(f: &BooleanFunction, caps: &Caps) -> anyhow::Result<HazardFreeTable> {
    HazardFreeTable::with_caps(f, caps).map_err(usage)
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let caps = cli.cap.map(Caps::uniform).unwrap_or_default();
    match cli.command {
        Command::Gen { spec, out } => {
            let parsed: FunctionSpec = spec.parse().map_err(usage)?;
            let f = parsed.build(caps.table).map_err(usage)?;
            let file = FunctionFile {
                family: parsed.family().to_string(),
                params: parsed.params(),
                arity: f.arity(),
                table: f.table_spec(),
            };
            write_or_print(out.as_deref(), &toml::to_string(&file)?)?;
        }
        Command::Eval { function, input } => {
            let f = load_function(&function, &caps)?;
            let x = parse_input(&input, f.arity())?;
            println!("{}", table_for(&f, &caps)?.eval(&x)?);
        }
        Command::Measures {
            function,
            witnesses,
            json,
        } => {
            let f = load_function(&function, &caps)?;
            let t = table_for(&f, &caps)?;
            let report = MeasureReport::compute(&t, &caps).map_err(usage)?;
            let report = if witnesses {
                report
            } else {
                report.without_witnesses()
            };
            print!("{}", report.to_kv());
            if let Some(w) = &report.witnesses {
                println!("witness.s_u_input={}", w.s_u_input);
                for (v, fam) in ["0", "1", "u"].iter().zip(&w.blocks) {
                    if let Some(fam) = fam {
                        let blocks: Vec<String> =
                            fam.blocks.iter().map(|b| b.block.to_string()).collect();
                        let at = fam
                            .blocks
                            .first()
                            .map(|b| b.base.to_string())
                            .unwrap_or_default();
                        println!("witness.bs_u_{v}=at {at} blocks {}", blocks.join(" "));
                    }
                }
                for (v, c) in ["0", "1", "u"].iter().zip(&w.certificates) {
                    if let Some(c) = c {
                        println!(
                            "witness.C_u_{v}=at {} certificate {}",
                            c.input, c.assignment
                        );
                    }
                }
                println!("witness.tree_u={}", w.tree_u.to_json());
                println!("witness.tree={}", w.tree.to_json());
            }
            if let Some(path) = json {
                fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Solve {
            function,
            hidden,
            method,
        } => return solve(&function, &hidden, method, &caps),
        Command::Tree {
            function,
            model,
            out,
        } => {
            let f = load_function(&function, &caps)?;
            let (depth, tree) = match model {
                TreeModel::U => query_complexity_u(&table_for(&f, &caps)?, &caps),
                TreeModel::Binary => query_complexity(&f, &caps),
            }
            .map_err(usage)?;
            println!("depth={depth}");
            write_or_print(out.as_deref(), &(tree.to_json_pretty() + "\n"))?;
        }
        Command::Verify {
            suite,
            n,
            seed,
            samples,
            exhaustive,
            workers,
            json,
        } => {
            let population = Population {
                min_arity: n.0,
                max_arity: n.1,
                seed,
                samples,
                exhaustive_four: exhaustive,
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(w) = workers {
                pool = pool.num_threads(w);
            }
            let pool = pool.build()?;
            let start = Instant::now();
            let report = pool
                .install(|| run_suite(suite, &population, &caps))
                .map_err(usage)?;
            print!("{}", report.summary());
            eprintln!("elapsed {:.2?}", start.elapsed());
            if let Some(path) = json {
                fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn solve(function: &str, hidden: &str, method: Method, caps: &Caps) -> anyhow::Result<ExitCode> {
    let f = load_function(function, caps)?;
    let x = parse_input(hidden, f.arity())?;
    let t = table_for(&f, caps)?;
    let mut oracle = Oracle::new(x.clone());
    let mut record = match method {
        Method::Algorithm1 => {
            let run = Algorithm1::new(&t).run(&mut oracle)?;
            json!({
                "method": "algorithm1",
                "output": run.output,
                "exit": run.exit,
                "bound": run.bound,
            })
        }
        Method::Tree => {
            let (depth, tree) = query_complexity_u(&t, caps).map_err(usage)?;
            let output = tree.run(&mut oracle);
            json!({"method": "tree", "output": output, "depth": depth})
        }
        Method::Monotone | Method::Unate => {
            let (d, tree) = query_complexity(&f, caps).map_err(usage)?;
            let (name, outcome) = if matches!(method, Method::Monotone) {
                ("monotone", monotone_simulate(&f, &tree, &mut oracle))
            } else {
                let Some(s) = f.unate_orientation() else {
                    bail!(usage(format!("{} is not unate", f.table_spec())));
                };
                ("unate", unate_simulate(&f, &s, &tree, &mut oracle))
            };
            let r = outcome.map_err(usage)?;
            json!({
                "method": name,
                "output": r.output,
                "low": r.low as u8,
                "high": r.high as u8,
                "bound": 2 * d,
            })
        }
    };
    let expected = t.at(x.index());
    record["queries"] = json!(oracle.queries());
    record["transcript"] = serde_json::to_value(oracle.transcript())?;
    record["expected"] = json!(expected);
    println!("{record}");
    Ok(if record["output"] == json!(expected) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
