//! Query oracles over hidden ternary inputs, and the per-query rewriting
//! wrappers used by the simulations.

use serde::Serialize;

use crate::ternary::{TernaryString, Trit};
use crate::trees::DecisionTree;

/// Something that answers queries `i -> x_i` (0-based).
pub trait QueryOracle {
    fn arity(&self) -> usize;
    fn query(&mut self, i: usize) -> Trit;
}

/// One answered query, serialized with a 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryRecord {
    pub index: usize,
    pub answer: Trit,
}

impl Serialize for QueryRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QueryRecord", 2)?;
        st.serialize_field("i", &(self.index + 1))?;
        st.serialize_field("a", &self.answer)?;
        st.end()
    }
}

/// Holds a hidden input and counts distinct queries; repeated indices are
/// answered from the cache without being counted again.
#[derive(Debug, Clone)]
pub struct Oracle {
    hidden: TernaryString,
    seen: Vec<bool>,
    transcript: Vec<QueryRecord>,
}

impl Oracle {
    pub fn new(hidden: TernaryString) -> Self {
        let n = hidden.len();
        Oracle {
            hidden,
            seen: vec![false; n],
            transcript: Vec::new(),
        }
    }

    pub fn hidden(&self) -> &TernaryString {
        &self.hidden
    }

    /// Distinct indices queried so far.
    pub fn queries(&self) -> usize {
        self.transcript.len()
    }

    /// First-time queries in order.
    pub fn transcript(&self) -> &[QueryRecord] {
        &self.transcript
    }

    pub fn transcript_json(&self) -> String {
        serde_json::to_string(&self.transcript).expect("transcript serialization cannot fail")
    }
}

impl QueryOracle for Oracle {
    fn arity(&self) -> usize {
        self.hidden.len()
    }

    fn query(&mut self, i: usize) -> Trit {
        let answer = self.hidden.get(i);
        if !self.seen[i] {
            self.seen[i] = true;
            self.transcript.push(QueryRecord { index: i, answer });
        }
        answer
    }
}

/// Replaces a u answer at position `j` by the bit `fill[j]`; 0/1 answers
/// pass through.
pub struct FillUnknown<'a> {
    inner: &'a mut dyn QueryOracle,
    fill: Vec<bool>,
}

impl<'a> FillUnknown<'a> {
    pub fn new(inner: &'a mut dyn QueryOracle, fill: Vec<bool>) -> Self {
        assert_eq!(inner.arity(), fill.len());
        FillUnknown { inner, fill }
    }

    pub fn constant(inner: &'a mut dyn QueryOracle, bit: bool) -> Self {
        let n = inner.arity();
        Self::new(inner, vec![bit; n])
    }
}

impl QueryOracle for FillUnknown<'_> {
    fn arity(&self) -> usize {
        self.fill.len()
    }

    fn query(&mut self, i: usize) -> Trit {
        match self.inner.query(i) {
            Trit::U => Trit::from(self.fill[i]),
            t => t,
        }
    }
}

/// Presents a binary input `x` as the ternary input with every 1 read as u,
/// whose resolutions are exactly the points below `x`.
pub struct OnesAsUnknown<'a> {
    inner: &'a mut dyn QueryOracle,
}

impl<'a> OnesAsUnknown<'a> {
    pub fn new(inner: &'a mut dyn QueryOracle) -> Self {
        OnesAsUnknown { inner }
    }
}

impl QueryOracle for OnesAsUnknown<'_> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn query(&mut self, i: usize) -> Trit {
        match self.inner.query(i) {
            Trit::Zero => Trit::Zero,
            _ => Trit::U,
        }
    }
}

/// Presents an OR input over `2^n` bits as an `IND_n` input whose
/// addressing variables are all u: addressing queries are answered u
/// without touching the inner oracle, target `k` forwards to bit `k`.
pub struct IndexingFromOr<'a> {
    inner: &'a mut dyn QueryOracle,
    address_bits: usize,
}

impl<'a> IndexingFromOr<'a> {
    pub fn new(inner: &'a mut dyn QueryOracle, address_bits: usize) -> Self {
        assert_eq!(inner.arity(), 1 << address_bits);
        IndexingFromOr {
            inner,
            address_bits,
        }
    }
}

impl QueryOracle for IndexingFromOr<'_> {
    fn arity(&self) -> usize {
        self.address_bits + self.inner.arity()
    }

    fn query(&mut self, i: usize) -> Trit {
        if i < self.address_bits {
            Trit::U
        } else {
            self.inner.query(i - self.address_bits)
        }
    }
}

/// A procedure that computes `f_u` of whatever input the oracle holds.
pub trait USolver {
    fn solve(&self, oracle: &mut dyn QueryOracle) -> Trit;
}

impl DecisionTree {
    /// Walks the tree, querying the oracle at each internal node.
    pub fn run(&self, oracle: &mut dyn QueryOracle) -> Trit {
        let mut node = self;
        loop {
            match node {
                DecisionTree::Leaf(v) => return *v,
                DecisionTree::Query { var, .. } => {
                    let answer = oracle.query(*var);
                    node = node.child(answer).unwrap();
                }
            }
        }
    }
}

impl USolver for DecisionTree {
    fn solve(&self, oracle: &mut dyn QueryOracle) -> Trit {
        self.run(oracle)
    }
}
