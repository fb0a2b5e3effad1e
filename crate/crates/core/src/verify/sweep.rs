use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{check_caps, check_with, Profile, TheoremId, TheoremVerdict};
use crate::caps::{self, Caps};
use crate::error::{check_cap, Error, Result};
use crate::table::TruthTable;

/// Version of the JSON and CSV layouts.
pub const SCHEMA_VERSION: u32 = 1;

/// Violations listed per theorem; the count is always complete.
const VIOLATION_EXAMPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledFunction {
    pub label: String,
    pub table: TruthTable,
}

/// Functions a sweep runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepSpace {
    /// All `2^(2^n)` functions of arity `n`, in table order.
    Exhaustive(usize),
    Functions(Vec<LabeledFunction>),
}

impl SweepSpace {
    pub fn describe(&self) -> String {
        match self {
            SweepSpace::Exhaustive(n) => format!("exhaustive:{n}"),
            SweepSpace::Functions(fs) => format!("functions:{}", fs.len()),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SweepSpace::Exhaustive(n) => 1 << (1 << n),
            SweepSpace::Functions(fs) => fs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn function(&self, i: usize) -> (TruthTable, Option<&str>) {
        match self {
            SweepSpace::Exhaustive(n) => (
                TruthTable::from_u64(*n, i as u64).expect("arity within sweep cap"),
                None,
            ),
            SweepSpace::Functions(fs) => (fs[i].table.clone(), Some(fs[i].label.as_str())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub function: TruthTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub lhs: u64,
    pub rhs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn ratio_string<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

/// Largest `lhs / rhs` seen, with the first function attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tightness {
    #[serde(serialize_with = "ratio_string")]
    pub ratio: Ratio<u64>,
    pub ratio_decimal: String,
    pub index: usize,
    pub function: TruthTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub lhs: u64,
    pub rhs: u64,
}

/// Rounds half up to four decimals.
pub fn four_decimals(r: &Ratio<u64>) -> String {
    let (n, d) = (*r.numer() as u128, *r.denom() as u128);
    let scaled = (n * 20_000 + d) / (2 * d);
    format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    pub description: &'static str,
    pub checked: usize,
    pub skipped: usize,
    pub holds: usize,
    pub violations: usize,
    pub violation_examples: Vec<Violation>,
    pub tightest: Option<Tightness>,
}

impl TheoremSummary {
    fn empty(theorem: TheoremId) -> Self {
        TheoremSummary {
            theorem,
            description: theorem.description(),
            checked: 0,
            skipped: 0,
            holds: 0,
            violations: 0,
            violation_examples: Vec::new(),
            tightest: None,
        }
    }

    fn record(&mut self, index: usize, f: &TruthTable, label: Option<&str>, v: TheoremVerdict) {
        if !v.applicable && v.holds {
            self.skipped += 1;
            return;
        }
        self.checked += 1;
        if v.holds {
            self.holds += 1;
        } else {
            self.violations += 1;
            self.violation_examples.push(Violation {
                index,
                function: f.clone(),
                label: label.map(str::to_string),
                lhs: v.lhs,
                rhs: v.rhs,
                note: v.note,
            });
        }
        if v.rhs > 0 {
            let ratio = Ratio::new(v.lhs, v.rhs);
            let candidate = Tightness {
                ratio_decimal: four_decimals(&ratio),
                ratio,
                index,
                function: f.clone(),
                label: label.map(str::to_string),
                lhs: v.lhs,
                rhs: v.rhs,
            };
            self.tightest = pick_tighter(self.tightest.take(), Some(candidate));
        }
    }

    /// Order-independent merge: counts add, examples keep the smallest
    /// indices, ties on the ratio go to the smaller index.
    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.holds += other.holds;
        self.violations += other.violations;
        self.violation_examples.extend(other.violation_examples);
        self.violation_examples.sort_by_key(|v| v.index);
        self.violation_examples.truncate(VIOLATION_EXAMPLES);
        self.tightest = pick_tighter(self.tightest, other.tightest);
        self
    }
}

fn pick_tighter(a: Option<Tightness>, b: Option<Tightness>) -> Option<Tightness> {
    match (a, b) {
        (Some(a), Some(b)) => match a.ratio.cmp(&b.ratio).then(b.index.cmp(&a.index)) {
            Ordering::Less => Some(b),
            _ => Some(a),
        },
        (a, b) => a.or(b),
    }
}

/// Aggregated verdicts of a sweep. Identical for any thread count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub schema_version: u32,
    pub space: String,
    pub functions: usize,
    pub total_violations: usize,
    pub theorems: Vec<TheoremSummary>,
}

impl SweepResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep results serialize")
    }

    /// One row per theorem.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
        w.write_record([
            "schema_version",
            "space",
            "theorem",
            "checked",
            "skipped",
            "holds",
            "violations",
            "max_ratio",
            "max_ratio_decimal",
            "tightest_function",
        ])
        .map_err(io)?;
        for s in &self.theorems {
            let (ratio, decimal, function) = match &s.tightest {
                Some(t) => (
                    format!("{}/{}", t.ratio.numer(), t.ratio.denom()),
                    t.ratio_decimal.clone(),
                    t.label.clone().unwrap_or_else(|| t.function.to_string()),
                ),
                None => Default::default(),
            };
            w.write_record([
                SCHEMA_VERSION.to_string(),
                self.space.clone(),
                s.theorem.to_string(),
                s.checked.to_string(),
                s.skipped.to_string(),
                s.holds.to_string(),
                s.violations.to_string(),
                ratio,
                decimal,
                function,
            ])
            .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invariant(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// Runs `theorems` on every function of `space` with `jobs` worker
/// threads (0 means one per core).
pub fn sweep(
    space: &SweepSpace,
    theorems: &[TheoremId],
    jobs: usize,
    caps: &Caps,
) -> Result<SweepResult> {
    match space {
        SweepSpace::Exhaustive(n) => {
            check_cap("exhaustive sweep", *n, caps::SWEEP_EXHAUSTIVE)?;
            check_caps(*n, theorems, caps)?;
        }
        SweepSpace::Functions(fs) => {
            for f in fs {
                check_caps(f.table.arity(), theorems, caps)?;
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let empty = || -> Vec<TheoremSummary> {
        theorems
            .iter()
            .map(|&th| TheoremSummary::empty(th))
            .collect()
    };
    let summaries = pool.install(|| {
        (0..space.len())
            .into_par_iter()
            .fold(empty, |mut acc, i| {
                let (f, label) = space.function(i);
                let p = Profile::new(&f);
                for (slot, &th) in acc.iter_mut().zip(theorems) {
                    slot.record(i, &f, label, check_with(th, &p));
                }
                acc
            })
            .reduce(empty, |a, b| {
                a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()
            })
    });
    Ok(SweepResult {
        schema_version: SCHEMA_VERSION,
        space: space.describe(),
        functions: space.len(),
        total_violations: summaries.iter().map(|s| s.violations).sum(),
        theorems: summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(four_decimals(&Ratio::new(2, 3)), "0.6667");
        assert_eq!(four_decimals(&Ratio::new(1, 1)), "1.0000");
        assert_eq!(four_decimals(&Ratio::new(1, 8)), "0.1250");
        assert_eq!(four_decimals(&Ratio::new(1, 20_000)), "0.0001");
        assert_eq!(four_decimals(&Ratio::new(7, 2)), "3.5000");
    }

    #[test]
    fn small_sweeps() {
        let r = sweep(
            &SweepSpace::Exhaustive(0),
            TheoremId::ALL,
            1,
            &Caps::default(),
        )
        .unwrap();
        assert_eq!((r.functions, r.total_violations), (2, 0));
        let r = sweep(
            &SweepSpace::Exhaustive(3),
            TheoremId::ALL,
            2,
            &Caps::default(),
        )
        .unwrap();
        assert_eq!((r.functions, r.total_violations), (256, 0));
        for s in &r.theorems {
            assert_eq!(s.checked + s.skipped, 256);
        }
    }

    #[test]
    fn parity_tightness() {
        let fs = (1..=4)
            .map(|k| LabeledFunction {
                label: format!("family:parity(n={k})"),
                table: TruthTable::from_fn(k, |x| x.count_ones() % 2 == 1).unwrap(),
            })
            .collect();
        let r = sweep(
            &SweepSpace::Functions(fs),
            &[TheoremId::BsAltExplicit],
            3,
            &Caps::default(),
        )
        .unwrap();
        let tight = r.theorems[0].tightest.as_ref().unwrap();
        assert_eq!(tight.ratio, Ratio::new(1, 1));
        assert_eq!(tight.index, 0);
        assert_eq!(tight.label.as_deref(), Some("family:parity(n=1)"));
    }

    #[test]
    fn sweep_cap() {
        let err = sweep(
            &SweepSpace::Exhaustive(5),
            &[TheoremId::DtAltDegree],
            1,
            &Caps::default(),
        )
        .unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn csv_has_a_row_per_theorem() {
        let r = sweep(
            &SweepSpace::Exhaustive(2),
            TheoremId::ALL,
            1,
            &Caps::default(),
        )
        .unwrap();
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 1 + TheoremId::ALL.len());
        assert!(csv.lines().nth(1).unwrap().starts_with("1,exhaustive:2,"));
    }
}
