//! Fixtures shared by the benchmarks.

use uquery::{generate, BooleanFunction};

/// Named functions spanning the arities the benchmarks sweep.
pub fn fixtures(max_arity: usize) -> Vec<(String, BooleanFunction)> {
    [
        "or:4",
        "maj:5",
        "ind:2",
        "random:6:1",
        "parity:7",
        "random:8:2",
    ]
    .iter()
    .filter_map(|spec| {
        generate(spec, max_arity)
            .ok()
            .map(|f| (spec.to_string(), f))
    })
    .collect()
}
