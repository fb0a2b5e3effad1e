//! Checkers for the inequalities linking the measures, one verdict per
//! function, and the sweep engine that runs them over whole spaces.

mod sweep;

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use self::sweep::{
    sweep, LabeledFunction, SweepResult, SweepSpace, TheoremSummary, Tightness, Violation,
};

use crate::caps::Caps;
use crate::comm::{build_comm_matrix, rectangle_cover, verify_rank_identities, Composition};
use crate::error::{check_cap, Error, Result};
use crate::extremal::{build_dt_via_min_certificates, certificate_at_extreme, Extreme};
use crate::measures::{
    alt, block_sensitivity, certificate, certificate_at, cmin_closure, dt_depth, sensitivity,
    BlockSensitivity, Certificate, Witnessed,
};
use crate::spectra::{deg2, fourier_sparsity};
use crate::table::{full, Point, TruthTable};

/// `C_t = t(t+5)/2`, the constant in the explicit block-sensitivity bound.
pub fn c_t(t: usize) -> usize {
    t * (t + 5) / 2
}

macro_rules! theorems {
    ($($variant:ident => $id:literal, $desc:literal;)*) => {
        /// Inequalities and identities the checkers know about.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum TheoremId {
            $(#[serde(rename = $id)] $variant,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn id(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $id,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $desc,)*
                }
            }
        }
    };
}

theorems! {
    BsAltExplicit => "bs-alt-explicit",
        "bs <= C_t*s if alt = 2t, (C_t+1)*s if alt = 2t+1, C_t = t(t+5)/2";
    BsAltSquared => "bs-alt-squared",
        "bs <= (C_floor(alt/2) + 1)*s, the explicit form of bs = O(alt^2 s)";
    ExtremeCertSensitivity => "extreme-cert-sensitivity",
        "max(C(f,0^n), C(f,1^n)) <= alt*s";
    ExtremeCertDegree => "extreme-cert-degree",
        "max(C(f,0^n), C(f,1^n)) <= alt*deg2";
    ExtremeCertConstructive => "extreme-cert-constructive",
        "max-term certificates at 0^n and 1^n fix f and have size <= alt*min(s, deg2)";
    OddWeightFullDegree => "odd-weight-full-degree",
        "|f^-1(1)| odd <=> deg2 = n; const 0 skipped";
    DegreeLogSparsity => "degree-log-sparsity",
        "deg2 <= log2(Fourier sparsity), checked as 2^deg2 <= sparsity; const 0 skipped";
    MonotoneEqualities => "monotone-s-bs-c",
        "monotone f: s = bs = C";
    MonotoneSensitivityDegree => "monotone-s-degree",
        "monotone f: s <= deg2";
    DtAltDegree => "dt-alt-degree",
        "dt <= alt*deg2^2";
    DtAltSensitivityDegree => "dt-alt-s-degree",
        "dt <= alt*s*deg2";
    MinCertTreeDepth => "min-cert-tree-depth",
        "the min-certificate query tree computes f with depth <= Cmin_closure*deg2";
    XorLogRank => "xor-log-rank",
        "2dt <= 2*alt*deg2^2 <= 2*alt*log2^2(rank of f(x xor y)); const 0 skipped";
    RankIdentities => "rank-identities",
        "rank of f(x xor y) = Fourier sparsity and rank of f(x and y) = mono";
    MintermCover => "minterm-cover",
        "min-term 1-cover of f(x and y) (of the negation when f(0^n) = 1) is valid, \
         follows the size recursion and has depth <= alt";
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.id() == s)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "unknown theorem {s:?}; known: {}",
                    TheoremId::ALL
                        .iter()
                        .map(|t| t.id())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }
}

/// Parses a comma-separated theorem list, or `all`.
pub fn parse_theorems(list: &str) -> Result<Vec<TheoremId>> {
    if list.trim() == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut out: Vec<TheoremId> = list
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Outcome of one checker on one function. `holds` covers the inequality
/// `lhs ≤ rhs` (or `lhs = rhs` for identities) together with any
/// correctness condition the checker attaches; `note` explains a failure
/// that is not visible in the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub applicable: bool,
    pub holds: bool,
    pub lhs: u64,
    pub rhs: u64,
    pub slack: i64,
    pub witnesses: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremVerdict {
    fn skipped(theorem: TheoremId) -> Self {
        TheoremVerdict {
            theorem,
            applicable: false,
            holds: true,
            lhs: 0,
            rhs: 0,
            slack: 0,
            witnesses: Vec::new(),
            note: None,
        }
    }

    fn at_most(theorem: TheoremId, lhs: usize, rhs: usize, witnesses: Vec<Point>) -> Self {
        TheoremVerdict {
            theorem,
            applicable: true,
            holds: lhs <= rhs,
            lhs: lhs as u64,
            rhs: rhs as u64,
            slack: rhs as i64 - lhs as i64,
            witnesses,
            note: None,
        }
    }

    fn equal(theorem: TheoremId, lhs: usize, rhs: usize, witnesses: Vec<Point>) -> Self {
        TheoremVerdict {
            holds: lhs == rhs,
            slack: 0,
            ..TheoremVerdict::at_most(theorem, lhs, rhs, witnesses)
        }
    }

    fn also(mut self, ok: bool, why: impl FnOnce() -> String) -> Self {
        if !ok {
            self.holds = false;
            self.note.get_or_insert_with(why);
        }
        self
    }
}

/// Measures of one function, computed on first use.
pub struct Profile<'a> {
    t: &'a TruthTable,
    s: OnceCell<Witnessed>,
    bs: OnceCell<BlockSensitivity>,
    c: OnceCell<Certificate>,
    c_extremes: OnceCell<(usize, usize)>,
    alt: OnceCell<usize>,
    deg2: OnceCell<usize>,
    fs: OnceCell<usize>,
    dt: OnceCell<usize>,
    cmin_cl: OnceCell<usize>,
}

impl<'a> Profile<'a> {
    pub fn new(t: &'a TruthTable) -> Self {
        Profile {
            t,
            s: OnceCell::new(),
            bs: OnceCell::new(),
            c: OnceCell::new(),
            c_extremes: OnceCell::new(),
            alt: OnceCell::new(),
            deg2: OnceCell::new(),
            fs: OnceCell::new(),
            dt: OnceCell::new(),
            cmin_cl: OnceCell::new(),
        }
    }

    fn s(&self) -> &Witnessed {
        self.s.get_or_init(|| sensitivity(self.t))
    }

    fn bs(&self) -> &BlockSensitivity {
        self.bs
            .get_or_init(|| block_sensitivity(self.t).expect("caps checked"))
    }

    fn c(&self) -> &Certificate {
        self.c
            .get_or_init(|| certificate(self.t).expect("caps checked"))
    }

    fn c_extremes(&self) -> (usize, usize) {
        *self.c_extremes.get_or_init(|| {
            let at = |x| certificate_at(self.t, x).expect("caps checked").value;
            (at(0), at(full(self.t.arity())))
        })
    }

    fn alt(&self) -> usize {
        *self.alt.get_or_init(|| alt(self.t).value)
    }

    fn deg2(&self) -> usize {
        *self.deg2.get_or_init(|| deg2(self.t))
    }

    fn fs(&self) -> usize {
        *self.fs.get_or_init(|| fourier_sparsity(self.t))
    }

    fn dt(&self) -> usize {
        *self
            .dt
            .get_or_init(|| dt_depth(self.t).expect("caps checked"))
    }

    fn cmin_cl(&self) -> usize {
        *self
            .cmin_cl
            .get_or_init(|| cmin_closure(self.t).expect("caps checked").value)
    }
}

/// Arity limits each checker relies on.
fn needed_caps(theorem: TheoremId, caps: &Caps) -> Vec<(&'static str, usize)> {
    use TheoremId::*;
    let mut v = Vec::new();
    match theorem {
        BsAltExplicit | BsAltSquared => v.push(("block sensitivity", caps.block_sensitivity)),
        MonotoneEqualities => {
            v.push(("block sensitivity", caps.block_sensitivity));
            v.push(("certificate", caps.certificate));
        }
        ExtremeCertSensitivity | ExtremeCertDegree | ExtremeCertConstructive => {
            v.push(("certificate", caps.certificate))
        }
        DtAltDegree | DtAltSensitivityDegree | XorLogRank => {
            v.push(("decision tree", caps.decision_tree))
        }
        MinCertTreeDepth => {
            v.push(("tree builder", caps.tree_builder));
            v.push(("cmin closure", caps.cmin_closure));
        }
        RankIdentities | MintermCover => v.push(("comm matrix", caps.comm_matrix)),
        OddWeightFullDegree | DegreeLogSparsity | MonotoneSensitivityDegree => {}
    }
    v
}

/// Fails with a cap error if any checker in `theorems` cannot run at
/// `arity` under `caps`.
pub fn check_caps(arity: usize, theorems: &[TheoremId], caps: &Caps) -> Result<()> {
    caps.validate()?;
    for &th in theorems {
        for (what, cap) in needed_caps(th, caps) {
            check_cap(what, arity, cap)?;
        }
    }
    Ok(())
}

/// Runs one checker. Caps must have been checked.
pub fn check_with(theorem: TheoremId, p: &Profile<'_>) -> TheoremVerdict {
    use TheoremId::*;
    let t = p.t;
    let n = t.arity();
    let ends = vec![0, full(n)];
    match theorem {
        BsAltExplicit => {
            let a = p.alt();
            let k = c_t(a / 2) + a % 2;
            TheoremVerdict::at_most(
                theorem,
                p.bs().value,
                k * p.s().value,
                vec![p.bs().witness, p.s().witness],
            )
        }
        BsAltSquared => TheoremVerdict::at_most(
            theorem,
            p.bs().value,
            (c_t(p.alt() / 2) + 1) * p.s().value,
            vec![p.bs().witness, p.s().witness],
        ),
        ExtremeCertSensitivity => {
            let (c0, c1) = p.c_extremes();
            TheoremVerdict::at_most(theorem, c0.max(c1), p.alt() * p.s().value, ends)
        }
        ExtremeCertDegree => {
            let (c0, c1) = p.c_extremes();
            TheoremVerdict::at_most(theorem, c0.max(c1), p.alt() * p.deg2(), ends)
        }
        ExtremeCertConstructive => {
            let bound = p.alt() * p.s().value.min(p.deg2());
            let mut size = 0;
            let mut failure = None;
            for end in [Extreme::Zero, Extreme::One] {
                match certificate_at_extreme(t, end) {
                    Ok(c) => size = size.max(c.coordinates.len()),
                    Err(e) => failure = Some(e.to_string()),
                }
            }
            TheoremVerdict::at_most(theorem, size, bound, ends)
                .also(failure.is_none(), || failure.unwrap_or_default())
        }
        OddWeightFullDegree => {
            // The zero polynomial has no degree; at n = 0 it would read as
            // full degree with even weight.
            if t.constant_value() == Some(false) {
                return TheoremVerdict::skipped(theorem);
            }
            let odd = t.count_ones() % 2 == 1;
            let full_degree = p.deg2() == n;
            TheoremVerdict::equal(theorem, odd as usize, full_degree as usize, Vec::new())
        }
        DegreeLogSparsity => {
            if t.constant_value() == Some(false) {
                return TheoremVerdict::skipped(theorem);
            }
            TheoremVerdict::at_most(theorem, 1 << p.deg2(), p.fs(), Vec::new())
        }
        MonotoneEqualities => {
            if !t.is_monotone() {
                return TheoremVerdict::skipped(theorem);
            }
            let (s, bs, c) = (p.s().value, p.bs().value, p.c().value);
            TheoremVerdict::equal(
                theorem,
                s,
                c,
                vec![p.s().witness, p.bs().witness, p.c().witness],
            )
            .also(s == bs, || format!("s = {s} but bs = {bs}"))
        }
        MonotoneSensitivityDegree => {
            if !t.is_monotone() {
                return TheoremVerdict::skipped(theorem);
            }
            TheoremVerdict::at_most(theorem, p.s().value, p.deg2(), vec![p.s().witness])
        }
        DtAltDegree => {
            let d = p.deg2();
            TheoremVerdict::at_most(theorem, p.dt(), p.alt() * d * d, Vec::new())
        }
        DtAltSensitivityDegree => TheoremVerdict::at_most(
            theorem,
            p.dt(),
            p.alt() * p.s().value * p.deg2(),
            Vec::new(),
        ),
        MinCertTreeDepth => {
            let bound = p.cmin_cl() * p.deg2();
            match build_dt_via_min_certificates(t) {
                Ok(tree) => TheoremVerdict::at_most(theorem, tree.depth(), bound, Vec::new())
                    .also(tree.computes(t), || "tree does not compute f".into()),
                Err(e) => TheoremVerdict::at_most(theorem, 0, bound, Vec::new())
                    .also(false, || e.to_string()),
            }
        }
        XorLogRank => {
            if t.constant_value() == Some(false) {
                return TheoremVerdict::skipped(theorem);
            }
            let (d, fs) = (p.deg2(), p.fs());
            TheoremVerdict::at_most(theorem, 2 * p.dt(), 2 * p.alt() * d * d, Vec::new())
                .also(1 << d <= fs, || {
                    format!("deg2 = {d} exceeds log2 of sparsity {fs}")
                })
        }
        RankIdentities => match verify_rank_identities(t) {
            Ok(r) => TheoremVerdict::equal(
                theorem,
                r.xor_rank + r.and_rank,
                r.fourier_sparsity + r.mono_sparsity,
                Vec::new(),
            )
            .also(r.holds(), || format!("{r:?}")),
            Err(e) => TheoremVerdict::skipped(theorem).also(false, || e.to_string()),
        },
        MintermCover => {
            let g = if t.get(0) {
                t.negate_output()
            } else {
                t.clone()
            };
            let checked = rectangle_cover(&g, true).and_then(|mc| {
                let m = build_comm_matrix(&g, Composition::And)?;
                Ok((mc.cover.check(&m), mc))
            });
            match checked {
                Ok((check, mc)) => {
                    TheoremVerdict::at_most(theorem, mc.max_depth, mc.alt, Vec::new())
                        .also(check.valid(), || format!("{check:?}"))
                        .also(mc.recursion_holds(), || "size recursion fails".into())
                }
                Err(e) => TheoremVerdict::skipped(theorem).also(false, || e.to_string()),
            }
        }
    }
}

/// Runs every requested checker on one function.
pub fn check_all(
    t: &TruthTable,
    theorems: &[TheoremId],
    caps: &Caps,
) -> Result<Vec<TheoremVerdict>> {
    check_caps(t.arity(), theorems, caps)?;
    let p = Profile::new(t);
    Ok(theorems.iter().map(|&th| check_with(th, &p)).collect())
}

/// Runs one checker on one function.
pub fn check(t: &TruthTable, theorem: TheoremId) -> Result<TheoremVerdict> {
    Ok(check_all(t, &[theorem], &Caps::default())?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use TheoremId::*;

    fn t(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!((0..4).map(c_t).collect::<Vec<_>>(), vec![0, 3, 7, 12]);
    }

    #[test]
    fn explicit_bound_examples() {
        let v = check(&t("3:E8"), BsAltExplicit).unwrap();
        assert_eq!((v.lhs, v.rhs, v.slack, v.holds), (2, 2, 0, true));
        let v = check(&t("2:0"), BsAltExplicit).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (0, 0, true));
        let v = check(&t("2:6"), BsAltExplicit).unwrap();
        assert_eq!((v.lhs, v.rhs), (2, 6));
    }

    #[test]
    fn squared_bound_examples() {
        let p3 = TruthTable::from_fn(3, |x| x.count_ones() % 2 == 1).unwrap();
        let v = check(&p3, BsAltSquared).unwrap();
        assert_eq!((v.lhs, v.rhs), (3, 12));
        let v = check(&t("3:E8"), BsAltSquared).unwrap();
        assert_eq!((v.lhs, v.rhs), (2, 2));
        assert_eq!(check(&t("3:FF"), BsAltSquared).unwrap().rhs, 0);
    }

    #[test]
    fn fact_examples() {
        let p3 = TruthTable::from_fn(3, |x| x.count_ones() % 2 == 1).unwrap();
        let v = check(&p3, OddWeightFullDegree).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (0, 0, true));
        let and3 = TruthTable::from_fn(3, |x| x == 7).unwrap();
        let v = check(&and3, MonotoneEqualities).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (3, 3, true));
        let v = check(&t("2:F"), DtAltDegree).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (0, 0, true));
        assert!(!check(&t("2:6"), MonotoneEqualities).unwrap().applicable);
        assert!(!check(&t("2:0"), DegreeLogSparsity).unwrap().applicable);
        assert!(check(&t("2:F"), DegreeLogSparsity).unwrap().applicable);
    }

    #[test]
    fn every_checker_holds_on_all_three_ary_functions() {
        for bits in 0..256 {
            let f = TruthTable::from_u64(3, bits).unwrap();
            for v in check_all(&f, TheoremId::ALL, &Caps::default()).unwrap() {
                assert!(v.holds, "{f}: {v:?}");
                assert!(v.slack >= 0);
            }
        }
    }

    #[test]
    fn theorem_list_parsing() {
        assert_eq!(parse_theorems("all").unwrap().len(), TheoremId::ALL.len());
        assert_eq!(
            parse_theorems("dt-alt-degree,bs-alt-explicit").unwrap(),
            vec![BsAltExplicit, DtAltDegree]
        );
        assert!(parse_theorems("3.2").is_err());
        assert_eq!(
            serde_json::to_string(&XorLogRank).unwrap(),
            "\"xor-log-rank\""
        );
    }

    #[test]
    fn caps_are_checked_before_running() {
        let big = TruthTable::constant(7, false).unwrap();
        assert!(check_all(&big, &[RankIdentities], &Caps::default())
            .unwrap_err()
            .is_cap());
        let low = Caps {
            decision_tree: 2,
            ..Caps::default()
        };
        assert!(check_all(&t("3:E8"), &[DtAltDegree], &low)
            .unwrap_err()
            .is_cap());
        assert!(check_all(&t("3:E8"), &[OddWeightFullDegree], &low).is_ok());
    }
}
