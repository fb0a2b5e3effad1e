use serde::{Deserialize, Serialize};

use crate::table::{Point, TruthTable};

/// A deterministic decision tree over the original coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionTree {
    Leaf(bool),
    Query {
        var: usize,
        zero: Box<DecisionTree>,
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    pub fn evaluate(&self, x: Point) -> bool {
        self.walk(x).0
    }

    /// Output on `x` and the queried coordinates in order.
    pub fn walk(&self, x: Point) -> (bool, Vec<usize>) {
        let mut node = self;
        let mut path = Vec::new();
        loop {
            match node {
                DecisionTree::Leaf(v) => return (*v, path),
                DecisionTree::Query { var, zero, one } => {
                    path.push(*var);
                    node = if x >> var & 1 == 1 { one } else { zero };
                }
            }
        }
    }

    /// Evaluates correctly on all inputs of `t`, queries only coordinates
    /// below its arity and never repeats a query on a path.
    pub fn computes(&self, t: &TruthTable) -> bool {
        self.well_formed(t.arity(), 0) && (0..t.len()).all(|x| self.evaluate(x) == t.get(x))
    }

    fn well_formed(&self, n: usize, seen: usize) -> bool {
        match self {
            DecisionTree::Leaf(_) => true,
            DecisionTree::Query { var, zero, one } => {
                *var < n
                    && seen >> var & 1 == 0
                    && zero.well_formed(n, seen | 1 << var)
                    && one.well_formed(n, seen | 1 << var)
            }
        }
    }
}
