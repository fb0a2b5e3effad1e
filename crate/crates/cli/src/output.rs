//! Report assembly and rendering for each subcommand.

use std::fmt::Write as _;
use std::io::Write as _;

use serde::Serialize;

use boolcx::comm::{
    build_comm_matrix, check_tree_protocol, exact_cover_number, exact_rank, lovasz_bound_report,
    rectangle_cover, CommMatrix, Composition, LovaszReport, ProtocolCheck, Rectangle,
};
use boolcx::extremal::{find_terms, TermSet};
use boolcx::families::PRNG_ALGORITHM;
use boolcx::measures::{optimal_tree, MeasureReport};
use boolcx::spectra::{fourier_sparsity, mono_sparsity, SpectraSummary};
use boolcx::verify::{check_all, check_caps, SweepResult, TheoremId, TheoremVerdict};
use boolcx::{caps, Caps, Error, TruthTable};

use crate::{Config, Failure, Format};

pub const SCHEMA_VERSION: u32 = 1;

pub trait Render {
    fn json(&self) -> String;
    fn csv(&self) -> Result<String, Error>;
    fn text(&self) -> String;
}

pub fn emit(config: &Config, report: &dyn Render) -> Result<(), Failure> {
    let mut body = match config.format {
        Format::Json => report.json(),
        Format::Csv => report.csv()?,
        Format::Text => report.text(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &config.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Internal(format!("stdout: {e}"))),
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
pub struct MeasureOutput {
    schema_version: u32,
    function: TruthTable,
    arity: usize,
    weight: usize,
    monotone: bool,
    measures: MeasureReport,
    spectra: SpectraSummary,
    terms: TermSet,
    verdicts: Vec<TheoremVerdict>,
    /// Checkers whose caps the arity exceeds.
    omitted_theorems: Vec<TheoremId>,
}

impl MeasureOutput {
    pub fn compute(t: &TruthTable, caps: &Caps) -> Result<Self, Error> {
        let measures = MeasureReport::compute(t, caps)?;
        let (runnable, omitted): (Vec<TheoremId>, Vec<TheoremId>) = TheoremId::ALL
            .iter()
            .partition(|&&th| check_caps(t.arity(), &[th], caps).is_ok());
        Ok(MeasureOutput {
            schema_version: SCHEMA_VERSION,
            function: t.clone(),
            arity: t.arity(),
            weight: t.count_ones(),
            monotone: t.is_monotone(),
            measures,
            spectra: SpectraSummary::compute(t),
            terms: find_terms(t),
            verdicts: check_all(t, &runnable, caps)?,
            omitted_theorems: omitted,
        })
    }

    pub fn violations(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.holds).count()
    }

    fn scalars(&self) -> Vec<(&'static str, usize)> {
        let m = &self.measures;
        vec![
            ("s", m.sensitivity.value),
            ("bs", m.block_sensitivity.value),
            ("C", m.certificate.value),
            ("Cmin", m.cmin.value),
            ("Cmin_closure", m.cmin_closure.value),
            ("dt", m.dt_depth),
            ("alt", m.alt.value),
            ("deg2", self.spectra.deg2),
            ("mono", self.spectra.mono_sparsity),
            ("fs", self.spectra.fourier_sparsity),
        ]
    }
}

impl Render for MeasureOutput {
    fn json(&self) -> String {
        pretty(self)
    }

    fn csv(&self) -> Result<String, Error> {
        let scalars = self.scalars();
        let mut header = vec!["schema_version", "function"];
        header.extend(scalars.iter().map(|(k, _)| *k));
        header.push("violations");
        let mut row = vec![SCHEMA_VERSION.to_string(), self.function.to_string()];
        row.extend(scalars.iter().map(|(_, v)| v.to_string()));
        row.push(self.violations().to_string());
        csv_rows(&header, &[row])
    }

    fn text(&self) -> String {
        let mut out = format!("{} (arity {})\n", self.function, self.arity);
        for (k, v) in self.scalars() {
            let _ = writeln!(out, "  {k:<13} {v}");
        }
        let _ = writeln!(out, "  max terms     {:?}", self.terms.max_terms);
        let _ = writeln!(out, "  min terms     {:?}", self.terms.min_terms);
        for v in &self.verdicts {
            let status = match (v.applicable, v.holds) {
                (false, true) => "n/a ",
                (_, true) => "ok  ",
                _ => "FAIL",
            };
            let _ = writeln!(
                out,
                "  {status} {:<26} {} vs {}",
                v.theorem.id(),
                v.lhs,
                v.rhs
            );
        }
        out
    }
}

pub struct SweepOutput<'a>(pub &'a SweepResult);

impl Render for SweepOutput<'_> {
    fn json(&self) -> String {
        self.0.to_json()
    }

    fn csv(&self) -> Result<String, Error> {
        self.0.to_csv()
    }

    fn text(&self) -> String {
        let r = self.0;
        let mut out = format!(
            "{}: {} functions, {} violations\n",
            r.space, r.functions, r.total_violations
        );
        for s in &r.theorems {
            let tight = s
                .tightest
                .as_ref()
                .map(|t| {
                    let f = t.label.clone().unwrap_or_else(|| t.function.to_string());
                    format!("max ratio {} at {f}", t.ratio_decimal)
                })
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  {:<26} checked {:>6}  skipped {:>6}  violations {:>3}  {tight}",
                s.theorem.id(),
                s.checked,
                s.skipped,
                s.violations
            );
        }
        out
    }
}

#[derive(Serialize)]
struct OneCover {
    size: usize,
    valid: bool,
    max_depth: usize,
    alt: usize,
    recursion_holds: bool,
    rectangles: Vec<Rectangle>,
}

#[derive(Serialize)]
struct CommSide {
    composition: Composition,
    matrix: CommMatrix,
    rank: usize,
    /// Fourier sparsity for XOR, monomial count for AND.
    sparsity: usize,
    identity_holds: bool,
    protocol: ProtocolCheck,
    dt: usize,
    /// Constructed 1-cover (AND only).
    #[serde(skip_serializing_if = "Option::is_none")]
    one_cover: Option<OneCover>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_cover_number: Option<usize>,
}

impl CommSide {
    fn consistent(&self) -> bool {
        let cover_ok = self.one_cover.as_ref().is_none_or(|c| {
            c.valid && c.recursion_holds && self.exact_cover_number.is_none_or(|e| e <= c.size)
        });
        self.identity_holds
            && self.protocol.correct
            && self.protocol.max_cost <= 2 * self.dt
            && cover_ok
    }
}

#[derive(Serialize)]
pub struct CommOutput {
    schema_version: u32,
    function: TruthTable,
    sides: Vec<CommSide>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lovasz: Option<LovaszReport>,
}

impl CommOutput {
    pub fn compute(
        t: &TruthTable,
        compositions: &[Composition],
        caps: &Caps,
    ) -> Result<Self, Error> {
        boolcx::error::check_cap("comm matrix", t.arity(), caps.comm_matrix)?;
        let tree = optimal_tree(t)?;
        let exact_ok = t.arity() <= caps.exact_cover.min(caps::EXACT_COVER);
        let sides = compositions
            .iter()
            .map(|&c| {
                let matrix = build_comm_matrix(t, c)?;
                let rank = exact_rank(&matrix);
                let sparsity = match c {
                    Composition::Xor => fourier_sparsity(t),
                    Composition::And => mono_sparsity(t),
                };
                let one_cover = match c {
                    Composition::And => {
                        let mc = rectangle_cover(t, true)?;
                        Some(OneCover {
                            size: mc.cover.size(),
                            valid: mc.cover.check(&matrix).valid(),
                            max_depth: mc.max_depth,
                            alt: mc.alt,
                            recursion_holds: mc.recursion_holds(),
                            rectangles: mc.cover.rectangles,
                        })
                    }
                    Composition::Xor => None,
                };
                let exact_cover_number = if exact_ok {
                    Some(exact_cover_number(&matrix, true)?)
                } else {
                    None
                };
                Ok(CommSide {
                    composition: c,
                    protocol: check_tree_protocol(&tree, t, c),
                    dt: tree.depth(),
                    matrix,
                    rank,
                    sparsity,
                    identity_holds: rank == sparsity,
                    one_cover,
                    exact_cover_number,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let lovasz = if exact_ok {
            Some(lovasz_bound_report(t)?)
        } else {
            None
        };
        Ok(CommOutput {
            schema_version: SCHEMA_VERSION,
            function: t.clone(),
            sides,
            lovasz,
        })
    }

    pub fn consistent(&self) -> bool {
        self.sides.iter().all(CommSide::consistent)
    }
}

fn opt(v: Option<usize>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl Render for CommOutput {
    fn json(&self) -> String {
        pretty(self)
    }

    fn csv(&self) -> Result<String, Error> {
        let rows: Vec<Vec<String>> = self
            .sides
            .iter()
            .map(|s| {
                vec![
                    SCHEMA_VERSION.to_string(),
                    self.function.to_string(),
                    s.composition.to_string(),
                    s.rank.to_string(),
                    s.sparsity.to_string(),
                    s.identity_holds.to_string(),
                    s.protocol.correct.to_string(),
                    s.protocol.max_cost.to_string(),
                    s.dt.to_string(),
                    opt(s.one_cover.as_ref().map(|c| c.size)),
                    opt(s.exact_cover_number),
                ]
            })
            .collect();
        csv_rows(
            &[
                "schema_version",
                "function",
                "composition",
                "rank",
                "sparsity",
                "identity_holds",
                "protocol_correct",
                "protocol_max_cost",
                "dt",
                "constructed_cover",
                "exact_cover_number",
            ],
            &rows,
        )
    }

    fn text(&self) -> String {
        let mut out = format!("{}\n", self.function);
        for s in &self.sides {
            let _ = writeln!(
                out,
                "  {}: rank {} (sparsity {}, identity {}), protocol cost {} <= 2*dt = {}, correct {}",
                s.composition,
                s.rank,
                s.sparsity,
                if s.identity_holds { "ok" } else { "FAILS" },
                s.protocol.max_cost,
                2 * s.dt,
                s.protocol.correct
            );
            if let Some(c) = &s.one_cover {
                let _ = writeln!(
                    out,
                    "    constructed 1-cover: {} rectangles, valid {}, depth {} <= alt {}",
                    c.size, c.valid, c.max_depth, c.alt
                );
            }
            if let Some(e) = s.exact_cover_number {
                let _ = writeln!(out, "    exact 1-cover number: {e}");
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct GenerateOutput {
    schema_version: u32,
    spec: String,
    arity: usize,
    table: TruthTable,
    prng: &'static str,
}

impl GenerateOutput {
    pub fn new(spec: &str, table: TruthTable) -> Self {
        GenerateOutput {
            schema_version: SCHEMA_VERSION,
            spec: spec.to_string(),
            arity: table.arity(),
            table,
            prng: PRNG_ALGORITHM,
        }
    }
}

impl Render for GenerateOutput {
    fn json(&self) -> String {
        pretty(self)
    }

    fn csv(&self) -> Result<String, Error> {
        csv_rows(
            &["schema_version", "spec", "table"],
            &[vec![
                SCHEMA_VERSION.to_string(),
                self.spec.clone(),
                self.table.to_string(),
            ]],
        )
    }

    fn text(&self) -> String {
        self.table.to_string()
    }
}

pub struct TheoremList;

#[derive(Serialize)]
struct TheoremEntry {
    id: TheoremId,
    description: &'static str,
}

fn entries() -> Vec<TheoremEntry> {
    TheoremId::ALL
        .iter()
        .map(|&id| TheoremEntry {
            id,
            description: id.description(),
        })
        .collect()
}

impl Render for TheoremList {
    fn json(&self) -> String {
        #[derive(Serialize)]
        struct List {
            schema_version: u32,
            theorems: Vec<TheoremEntry>,
        }
        pretty(&List {
            schema_version: SCHEMA_VERSION,
            theorems: entries(),
        })
    }

    fn csv(&self) -> Result<String, Error> {
        let rows: Vec<Vec<String>> = entries()
            .into_iter()
            .map(|e| vec![e.id.to_string(), e.description.to_string()])
            .collect();
        csv_rows(&["id", "description"], &rows)
    }

    fn text(&self) -> String {
        entries()
            .iter()
            .map(|e| format!("{:<26} {}\n", e.id.id(), e.description))
            .collect()
    }
}
