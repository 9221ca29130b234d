//! Ternary decision trees and their JSON form.
//!
//! `{"leaf":"0"|"1"|"u"}` or `{"query":i,"on0":T,"on1":T,"onU":T}` with a
//! 1-based variable index `i`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::hazard::HazardFreeTable;
use crate::ternary::{TernaryString, Trit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(Trit),
    Query {
        /// 0-based variable index.
        var: usize,
        on0: Box<DecisionTree>,
        on1: Box<DecisionTree>,
        on_u: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn leaf(value: Trit) -> Self {
        DecisionTree::Leaf(value)
    }

    pub fn query(var: usize, on0: DecisionTree, on1: DecisionTree, on_u: DecisionTree) -> Self {
        DecisionTree::Query {
            var,
            on0: Box::new(on0),
            on1: Box::new(on1),
            on_u: Box::new(on_u),
        }
    }

    pub fn child(&self, answer: Trit) -> Option<&DecisionTree> {
        match self {
            DecisionTree::Leaf(_) => None,
            DecisionTree::Query { on0, on1, on_u, .. } => Some(match answer {
                Trit::Zero => on0,
                Trit::One => on1,
                Trit::U => on_u,
            }),
        }
    }

    /// Longest root-to-leaf path, in queries.
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { on0, on1, on_u, .. } => {
                1 + on0.depth().max(on1.depth()).max(on_u.depth())
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Query { on0, on1, on_u, .. } => {
                1 + on0.node_count() + on1.node_count() + on_u.node_count()
            }
        }
    }

    /// Checks indices are below `arity` and never repeat along a path.
    pub fn validate(&self, arity: usize) -> Result<()> {
        fn go(t: &DecisionTree, arity: usize, seen: &mut Vec<bool>) -> Result<()> {
            if let DecisionTree::Query {
                var,
                on0,
                on1,
                on_u,
            } = t
            {
                if *var >= arity {
                    return Err(Error::MalformedTree(format!(
                        "query index {} exceeds arity {arity}",
                        var + 1
                    )));
                }
                if seen[*var] {
                    return Err(Error::MalformedTree(format!(
                        "variable {} queried twice on one path",
                        var + 1
                    )));
                }
                seen[*var] = true;
                for c in [on0, on1, on_u] {
                    go(c, arity, seen)?;
                }
                seen[*var] = false;
            }
            Ok(())
        }
        go(self, arity, &mut vec![false; arity])
    }

    /// Follows the answers of `y` from the root to a leaf.
    pub fn evaluate(&self, y: &TernaryString) -> Result<Trit> {
        let mut node = self;
        let mut depth = 0;
        loop {
            match node {
                DecisionTree::Leaf(v) => return Ok(*v),
                DecisionTree::Query { var, .. } => {
                    if *var >= y.len() {
                        return Err(Error::MalformedTree(format!(
                            "query index {} exceeds input length {}",
                            var + 1,
                            y.len()
                        )));
                    }
                    depth += 1;
                    if depth > y.len() {
                        return Err(Error::MalformedTree("path repeats a variable".into()));
                    }
                    node = node.child(y.get(*var)).unwrap();
                }
            }
        }
    }

    /// Agreement with `f_u` on all `3^n` inputs; on failure, the
    /// lexicographically least counterexample.
    pub fn verify(&self, t: &HazardFreeTable) -> std::result::Result<(), TernaryString> {
        TernaryString::all(t.arity())
            .find(|y| self.evaluate(y).ok() != Some(t.at(y.index())))
            .map_or(Ok(()), Err)
    }

    /// Agreement with `f` on all binary inputs (u answers are never followed).
    pub fn verify_binary(&self, f: &BooleanFunction) -> std::result::Result<(), TernaryString> {
        (0..f.table().len())
            .map(|x| TernaryString::from_binary_index(f.arity(), x))
            .find(|y| {
                self.evaluate(y).ok() != Some(Trit::from(f.eval_index(y.binary_index().unwrap())))
            })
            .map_or(Ok(()), Err)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::TreeParse {
            path: format!("line {} column {}", e.line(), e.column()),
            reason: e.to_string(),
        })?;
        Self::from_value(&value, "$")
    }

    fn from_value(value: &Value, path: &str) -> Result<Self> {
        let fail = |reason: String| Error::TreeParse {
            path: path.to_string(),
            reason,
        };
        let obj = value
            .as_object()
            .ok_or_else(|| fail("expected an object".into()))?;
        if let Some(label) = obj.get("leaf") {
            if obj.len() != 1 {
                return Err(fail("a leaf has no other keys".into()));
            }
            let trit = label
                .as_str()
                .filter(|s| s.len() == 1)
                .and_then(|s| Trit::from_char(s.chars().next().unwrap()))
                .ok_or_else(|| fail(format!("bad leaf label {label}")))?;
            return Ok(DecisionTree::Leaf(trit));
        }
        let index = obj
            .get("query")
            .and_then(Value::as_u64)
            .ok_or_else(|| fail("expected \"leaf\" or a positive integer \"query\"".into()))?;
        if index == 0 {
            return Err(fail("query indices are 1-based".into()));
        }
        if obj.len() != 4 {
            return Err(fail(
                "a query node has exactly the keys query, on0, on1, onU".into(),
            ));
        }
        let child = |key: &str| -> Result<DecisionTree> {
            let v = obj
                .get(key)
                .ok_or_else(|| fail(format!("missing child {key:?}")))?;
            Self::from_value(v, &format!("{path}.{key}"))
        };
        Ok(DecisionTree::query(
            index as usize - 1,
            child("on0")?,
            child("on1")?,
            child("onU")?,
        ))
    }
}

impl Serialize for DecisionTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DecisionTree::Leaf(v) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("leaf", v)?;
                m.end()
            }
            DecisionTree::Query {
                var,
                on0,
                on1,
                on_u,
            } => {
                let mut m = s.serialize_map(Some(4))?;
                m.serialize_entry("query", &(var + 1))?;
                m.serialize_entry("on0", on0)?;
                m.serialize_entry("on1", on1)?;
                m.serialize_entry("onU", on_u)?;
                m.end()
            }
        }
    }
}
