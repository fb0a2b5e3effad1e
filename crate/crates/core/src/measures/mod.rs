//! Query-side complexity measures, each with a witness that can be checked
//! against its definition.

mod alt;
mod certificate;
mod dt;
mod sensitivity;

use serde::{Deserialize, Serialize};

pub use self::alt::{alt, alt_at, alt_profile, alternations_along, Alternation};
pub use self::certificate::{
    certificate, certificate_at, certificate_profile, cmin, cmin_closure, cmin_value,
    is_certificate, Certificate, CminClosure,
};
pub use self::dt::{dt_depth, optimal_tree};
pub use self::sensitivity::{
    block_sensitivity, block_sensitivity_at, block_sensitivity_value, minimal_sensitive_blocks,
    sensitivity, sensitivity_at, BlockSensitivity, Witnessed,
};

use crate::caps::Caps;
use crate::error::{check_cap, Result};
use crate::table::TruthTable;

/// Every query measure of one function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub arity: usize,
    pub sensitivity: Witnessed,
    pub block_sensitivity: BlockSensitivity,
    pub certificate: Certificate,
    pub cmin: Certificate,
    pub cmin_closure: CminClosure,
    pub dt_depth: usize,
    pub alt: Alternation,
}

impl MeasureReport {
    pub fn compute(t: &TruthTable, caps: &Caps) -> Result<Self> {
        caps.validate()?;
        let n = t.arity();
        check_cap("block sensitivity", n, caps.block_sensitivity)?;
        check_cap("certificate", n, caps.certificate)?;
        check_cap("cmin closure", n, caps.cmin_closure)?;
        check_cap("decision tree", n, caps.decision_tree)?;
        Ok(MeasureReport {
            arity: n,
            sensitivity: sensitivity(t),
            block_sensitivity: block_sensitivity(t)?,
            certificate: certificate(t)?,
            cmin: cmin(t)?,
            cmin_closure: cmin_closure(t)?,
            dt_depth: dt_depth(t)?,
            alt: alt(t),
        })
    }

    /// Re-checks every witness against the definition it certifies.
    pub fn witnesses_verify(&self, t: &TruthTable) -> bool {
        let s_ok = sensitivity_at(t, self.sensitivity.witness) == self.sensitivity.value;
        let bs = &self.block_sensitivity;
        let fx = t.get(bs.witness);
        let mut used = 0usize;
        let mut bs_ok = bs.blocks.len() == bs.value;
        for block in &bs.blocks {
            let mask = block.iter().fold(0, |m, &i| m | 1 << i);
            bs_ok &= used & mask == 0 && t.get(bs.witness ^ mask) != fx;
            used |= mask;
        }
        let cert_ok = |c: &Certificate| {
            c.coordinates.len() == c.value && is_certificate(t, c.witness, &c.coordinates)
        };
        let closure_ok = t
            .restrict(&self.cmin_closure.restriction)
            .and_then(|sub| cmin_value(&sub))
            .map(|v| v == self.cmin_closure.value)
            .unwrap_or(false);
        let alt_ok = alternations_along(t, &self.alt.chain) == self.alt.value;
        s_ok && bs_ok && cert_ok(&self.certificate) && cert_ok(&self.cmin) && closure_ok && alt_ok
    }
}
