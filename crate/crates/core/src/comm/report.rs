use serde::Serialize;

use super::cover::rectangle_cover;
use super::exact::exact_cover_number;
use super::matrix::{build_comm_matrix, Composition};
use super::rank::exact_rank;
use crate::caps;
use crate::error::{check_cap, Result};
use crate::measures::{alt, dt_depth};
use crate::spectra::{fourier_sparsity, mono_sparsity};
use crate::table::TruthTable;

/// Both sides of `rank(M_{f∘⊕}) = Fourier sparsity` and
/// `rank(M_{f∘∧}) = mono(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankIdentities {
    pub xor_rank: usize,
    pub fourier_sparsity: usize,
    pub and_rank: usize,
    pub mono_sparsity: usize,
    pub xor_holds: bool,
    pub and_holds: bool,
}

impl RankIdentities {
    pub fn holds(&self) -> bool {
        self.xor_holds && self.and_holds
    }
}

/// Computes both ranks by elimination and both sparsities by transform.
/// A mismatch is reported in the flags, not raised.
pub fn verify_rank_identities(t: &TruthTable) -> Result<RankIdentities> {
    let xor_rank = exact_rank(&build_comm_matrix(t, Composition::Xor)?);
    let and_rank = exact_rank(&build_comm_matrix(t, Composition::And)?);
    let fs = fourier_sparsity(t);
    let mono = mono_sparsity(t);
    Ok(RankIdentities {
        xor_rank,
        fourier_sparsity: fs,
        and_rank,
        mono_sparsity: mono,
        xor_holds: xor_rank == fs,
        and_holds: and_rank == mono,
    })
}

/// Cover and rank figures for one composition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionBounds {
    pub composition: Composition,
    pub rank: usize,
    /// Exact 1-covering number.
    pub cover_number: usize,
    /// `log₂ C₁ · log₂ rank`, 0 when either factor is below 1.
    pub cover_rank_product: f64,
    /// XOR only: `2 · alt · log₂² rank`.
    pub alternation_bound: Option<f64>,
    /// AND only: size of the constructed min-term 1-cover.
    pub constructed_cover: Option<usize>,
}

/// Numeric side-by-side of the cover/rank product, the query-simulation
/// protocol cost `2·dt` and the alternation bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LovaszReport {
    pub function: TruthTable,
    pub dt: usize,
    pub alt: usize,
    pub protocol_cost: usize,
    /// Constant functions: every bound is degenerate.
    pub trivial: bool,
    pub and: CompositionBounds,
    pub xor: CompositionBounds,
}

fn log2(v: usize) -> f64 {
    if v <= 1 {
        0.0
    } else {
        (v as f64).log2()
    }
}

pub fn lovasz_bound_report(t: &TruthTable) -> Result<LovaszReport> {
    check_cap("exact cover", t.arity(), caps::EXACT_COVER)?;
    let dt = dt_depth(t)?;
    let a = alt(t).value;
    let side = |c: Composition| -> Result<CompositionBounds> {
        let m = build_comm_matrix(t, c)?;
        let rank = exact_rank(&m);
        let cover_number = exact_cover_number(&m, true)?;
        let (alternation_bound, constructed_cover) = match c {
            Composition::Xor => (Some(2.0 * a as f64 * log2(rank).powi(2)), None),
            Composition::And => (None, Some(rectangle_cover(t, true)?.cover.size())),
        };
        Ok(CompositionBounds {
            composition: c,
            rank,
            cover_number,
            cover_rank_product: log2(cover_number) * log2(rank),
            alternation_bound,
            constructed_cover,
        })
    };
    Ok(LovaszReport {
        function: t.clone(),
        dt,
        alt: a,
        protocol_cost: 2 * dt,
        trivial: t.is_constant(),
        and: side(Composition::And)?,
        xor: side(Composition::Xor)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    #[test]
    fn rank_identity_examples() {
        let maj3 = verify_rank_identities(&t("3:E8")).unwrap();
        assert_eq!((maj3.xor_rank, maj3.fourier_sparsity), (5, 5));
        assert_eq!((maj3.and_rank, maj3.mono_sparsity), (4, 4));
        let one = verify_rank_identities(&t("2:F")).unwrap();
        assert_eq!((one.xor_rank, one.and_rank), (1, 1));
        assert!(one.holds());
        let or3 = verify_rank_identities(&t("3:FE")).unwrap();
        assert_eq!((or3.xor_rank, or3.fourier_sparsity), (8, 8));
        assert_eq!((or3.and_rank, or3.mono_sparsity), (7, 7));
    }

    #[test]
    fn lovasz_examples() {
        let r = lovasz_bound_report(&t("2:E")).unwrap();
        assert_eq!(r.and.rank, 3);
        assert_eq!(r.and.cover_number, 2);
        assert!((r.and.cover_rank_product - 3f64.log2()).abs() < 1e-12);
        assert_eq!(r.and.constructed_cover, Some(2));

        let c = lovasz_bound_report(&t("2:F")).unwrap();
        assert!(c.trivial);
        assert_eq!(c.protocol_cost, 0);
        assert_eq!(c.xor.cover_rank_product, 0.0);

        let m = lovasz_bound_report(&t("3:E8")).unwrap();
        assert!(m.protocol_cost <= 6);
        let expected = 2.0 * 5f64.log2().powi(2);
        assert!((m.xor.alternation_bound.unwrap() - expected).abs() < 1e-12);
    }
}
