use serde::{Deserialize, Serialize};

use super::matrix::Composition;
use crate::extremal::DecisionTree;
use crate::table::{Point, TruthTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Party {
    Alice,
    Bob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub speaker: Party,
    pub bit: bool,
}

/// Bits exchanged by a protocol run, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub messages: Vec<Message>,
}

impl Transcript {
    pub fn cost(&self) -> usize {
        self.messages.len()
    }
}

/// Runs the query-simulation protocol: each query of coordinate `i` is
/// answered by Alice sending `x_i` and Bob sending `y_i`; both combine the
/// bits locally and follow the tree.
pub fn simulate_tree_protocol(
    tree: &DecisionTree,
    composition: Composition,
    x: Point,
    y: Point,
) -> (bool, Transcript) {
    let mut transcript = Transcript::default();
    let mut node = tree;
    loop {
        match node {
            DecisionTree::Leaf(v) => return (*v, transcript),
            DecisionTree::Query { var, zero, one } => {
                let a = x >> var & 1 == 1;
                let b = y >> var & 1 == 1;
                transcript.messages.push(Message {
                    speaker: Party::Alice,
                    bit: a,
                });
                transcript.messages.push(Message {
                    speaker: Party::Bob,
                    bit: b,
                });
                node = if composition.combine_bit(a, b) {
                    one
                } else {
                    zero
                };
            }
        }
    }
}

/// Outcome of running a tree protocol on every input pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolCheck {
    pub composition: Composition,
    pub pairs: usize,
    pub correct: bool,
    pub max_cost: usize,
    pub tree_depth: usize,
}

/// Simulates on all `(x, y)` and compares with `f(x ∘ y)`.
pub fn check_tree_protocol(
    tree: &DecisionTree,
    t: &TruthTable,
    composition: Composition,
) -> ProtocolCheck {
    let mut correct = true;
    let mut max_cost = 0;
    for x in 0..t.len() {
        for y in 0..t.len() {
            let (out, tr) = simulate_tree_protocol(tree, composition, x, y);
            correct &= out == t.get(composition.combine(x, y));
            max_cost = max_cost.max(tr.cost());
        }
    }
    ProtocolCheck {
        composition,
        pairs: t.len() * t.len(),
        correct,
        max_cost,
        tree_depth: tree.depth(),
    }
}
