//! Per-operation arity caps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const BLOCK_SENSITIVITY: usize = 12;
pub const CERTIFICATE: usize = 12;
pub const CMIN_CLOSURE: usize = 8;
pub const DECISION_TREE: usize = 10;
pub const TREE_BUILDER: usize = 10;
pub const COMM_MATRIX: usize = 6;
pub const EXACT_COVER: usize = 4;
pub const SWEEP_EXHAUSTIVE: usize = 4;

/// Caps used by report-level entry points. Each may only be lowered below
/// the hard cap of its operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub block_sensitivity: usize,
    pub certificate: usize,
    pub cmin_closure: usize,
    pub decision_tree: usize,
    pub tree_builder: usize,
    pub comm_matrix: usize,
    pub exact_cover: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            block_sensitivity: BLOCK_SENSITIVITY,
            certificate: CERTIFICATE,
            cmin_closure: CMIN_CLOSURE,
            decision_tree: DECISION_TREE,
            tree_builder: TREE_BUILDER,
            comm_matrix: COMM_MATRIX,
            exact_cover: EXACT_COVER,
        }
    }
}

impl Caps {
    /// Rejects any cap above its hard limit.
    pub fn validate(&self) -> Result<()> {
        let hard = Caps::default();
        let pairs = [
            (
                "block sensitivity",
                self.block_sensitivity,
                hard.block_sensitivity,
            ),
            ("certificate", self.certificate, hard.certificate),
            ("cmin closure", self.cmin_closure, hard.cmin_closure),
            ("decision tree", self.decision_tree, hard.decision_tree),
            ("tree builder", self.tree_builder, hard.tree_builder),
            ("comm matrix", self.comm_matrix, hard.comm_matrix),
            ("exact cover", self.exact_cover, hard.exact_cover),
        ];
        for (what, got, max) in pairs {
            if got > max {
                return Err(Error::Precondition(format!(
                    "{what} cap {got} exceeds hard cap {max}"
                )));
            }
        }
        Ok(())
    }
}
