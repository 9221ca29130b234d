//! Exact combinatorial measures of `f_u` and of `f`.

mod blocks;
mod certificate;
mod classical;

use rayon::prelude::*;
use serde::Serialize;

pub use blocks::{
    block_sensitivity_u, block_sensitivity_u_at, is_sensitive_block, max_disjoint_packing,
    minimal_sensitive_blocks, sensitivity_u, sensitivity_u_at, BlockFamily, BlockSensitivity,
    BlockSet, SensitiveBlockWitness,
};
pub use certificate::{
    certificate_complexity_u, certificate_u_at, CertificateComplexity, CertificateWitness,
};
pub use classical::{
    block_sensitivity_at, certificate_at, minimal_blocks_at, sensitivity_at, standard_measures,
    StandardMeasures,
};

use crate::error::Result;
use crate::hazard::{Caps, HazardFreeTable};
use crate::ternary::{TernaryString, Trit};
use crate::trees::{query_complexity, query_complexity_u, DecisionTree};

/// Inputs per function above which the per-input loop fans out to rayon.
const PARALLEL_INPUTS: usize = 729;

/// Maps every input index of the table, in order.
pub(crate) fn map_inputs<T, F>(t: &HazardFreeTable, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let size = t.values().len();
    if size >= PARALLEL_INPUTS {
        (0..size).into_par_iter().map(f).collect()
    } else {
        (0..size).map(f).collect()
    }
}

/// Witnesses backing a [`MeasureReport`].
#[derive(Debug, Clone, Serialize)]
pub struct MeasureWitnesses {
    pub s_u_input: TernaryString,
    pub blocks: [Option<BlockFamily>; 3],
    pub certificates: [Option<CertificateWitness>; 3],
    pub tree_u: DecisionTree,
    pub tree: DecisionTree,
}

/// All measures of one function. Field names are the stable serialization keys.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub s_u: usize,
    pub bs_u: usize,
    pub bs_u_0: usize,
    pub bs_u_1: usize,
    pub bs_u_uval: usize,
    pub C_u_0: usize,
    pub C_u_1: usize,
    pub C_u: usize,
    pub C_u_uval: usize,
    pub s: usize,
    pub bs: usize,
    pub C: usize,
    pub D: usize,
    pub D_u: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<MeasureWitnesses>,
}

impl MeasureReport {
    pub fn compute(t: &HazardFreeTable, caps: &Caps) -> Result<Self> {
        let (s_u, s_u_input) = sensitivity_u(t);
        let bs = block_sensitivity_u(t);
        let cert = certificate_complexity_u(t);
        let classical = standard_measures(t.function());
        let (d_u, tree_u) = query_complexity_u(t, caps)?;
        let (d, tree) = query_complexity(t.function(), caps)?;
        Ok(MeasureReport {
            s_u,
            bs_u: bs.total,
            bs_u_0: bs.of(Trit::Zero),
            bs_u_1: bs.of(Trit::One),
            bs_u_uval: bs.of(Trit::U),
            C_u_0: cert.of(Trit::Zero),
            C_u_1: cert.of(Trit::One),
            C_u: cert.c_u(),
            C_u_uval: cert.of(Trit::U),
            s: classical.s,
            bs: classical.bs,
            C: classical.c,
            D: d,
            D_u: d_u,
            witnesses: Some(MeasureWitnesses {
                s_u_input,
                blocks: bs.witnesses,
                certificates: cert.witnesses,
                tree_u,
                tree,
            }),
        })
    }

    pub fn without_witnesses(mut self) -> Self {
        self.witnesses = None;
        self
    }

    /// `(key, value)` pairs in the stable field order.
    pub fn fields(&self) -> [(&'static str, usize); 14] {
        [
            ("s_u", self.s_u),
            ("bs_u", self.bs_u),
            ("bs_u_0", self.bs_u_0),
            ("bs_u_1", self.bs_u_1),
            ("bs_u_uval", self.bs_u_uval),
            ("C_u_0", self.C_u_0),
            ("C_u_1", self.C_u_1),
            ("C_u", self.C_u),
            ("C_u_uval", self.C_u_uval),
            ("s", self.s),
            ("bs", self.bs),
            ("C", self.C),
            ("D", self.D),
            ("D_u", self.D_u),
        ]
    }

    /// Flat `key=value` lines.
    pub fn to_kv(&self) -> String {
        self.fields()
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }
}
