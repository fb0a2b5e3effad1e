use std::collections::HashMap;

use crate::caps;
use crate::error::{check_cap, Result};
use crate::extremal::DecisionTree;
use crate::table::TruthTable;

/// Exact decision-tree depth search, memoised on the induced truth table of
/// each subfunction. One memo per top-level call.
struct DepthSearch {
    memo: HashMap<TruthTable, usize>,
}

impl DepthSearch {
    fn new() -> Self {
        DepthSearch {
            memo: HashMap::new(),
        }
    }

    fn depth(&mut self, t: &TruthTable) -> usize {
        if t.is_constant() {
            return 0;
        }
        if let Some(&d) = self.memo.get(t) {
            return d;
        }
        let n = t.arity();
        let mut best = n;
        for i in 0..n {
            let lo = t.fix(i, false).expect("coordinate in range");
            let hi = t.fix(i, true).expect("coordinate in range");
            if lo == hi {
                continue;
            }
            let a = self.depth(&lo);
            if a + 1 >= best {
                continue;
            }
            let b = self.depth(&hi);
            best = best.min(1 + a.max(b));
        }
        self.memo.insert(t.clone(), best);
        best
    }

    /// An optimal tree; queries the smallest coordinate achieving the depth.
    fn tree(&mut self, t: &TruthTable, coords: &[usize]) -> DecisionTree {
        if let Some(v) = t.constant_value() {
            return DecisionTree::Leaf(v);
        }
        let target = self.depth(t);
        for i in 0..t.arity() {
            let lo = t.fix(i, false).expect("coordinate in range");
            let hi = t.fix(i, true).expect("coordinate in range");
            if lo == hi || 1 + self.depth(&lo).max(self.depth(&hi)) != target {
                continue;
            }
            let mut rest = coords.to_vec();
            let var = rest.remove(i);
            return DecisionTree::Query {
                var,
                zero: Box::new(self.tree(&lo, &rest)),
                one: Box::new(self.tree(&hi, &rest)),
            };
        }
        unreachable!("the optimal depth is realised by some coordinate")
    }
}

/// `dt(f)`: minimum depth of a decision tree computing `t`.
pub fn dt_depth(t: &TruthTable) -> Result<usize> {
    check_cap("decision tree", t.arity(), caps::DECISION_TREE)?;
    Ok(DepthSearch::new().depth(t))
}

/// A decision tree of depth exactly `dt(f)`.
pub fn optimal_tree(t: &TruthTable) -> Result<DecisionTree> {
    check_cap("decision tree", t.arity(), caps::DECISION_TREE)?;
    let coords: Vec<usize> = (0..t.arity()).collect();
    Ok(DepthSearch::new().tree(t, &coords))
}
