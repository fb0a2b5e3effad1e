use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use super::matrix::{build_comm_matrix, CommMatrix, Composition};
use crate::caps;
use crate::error::{check_cap, Error, Result};
use crate::extremal::{find_terms, uniform_cone};
use crate::measures::alt;
use crate::spectra::mono_sparsity;
use crate::table::{coords_of, full, Point, Restriction, TruthTable};

/// A subcube of `{0,1}^n`: the points agreeing with `values` on `mask`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subcube {
    pub arity: usize,
    pub mask: usize,
    pub values: usize,
}

impl Subcube {
    pub fn new(arity: usize, mask: usize, values: usize) -> Self {
        Subcube {
            arity,
            mask,
            values: values & mask,
        }
    }

    #[inline]
    pub fn contains(&self, x: Point) -> bool {
        x & self.mask == self.values
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let free = full(self.arity) & !self.mask;
        let mut s = 0usize;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let p = self.values | s;
            s = (s | !free).wrapping_add(1) & free;
            done = s == 0;
            Some(p)
        })
    }
}

/// Pattern over `x_{n-1} … x_0` with `*` for free coordinates.
impl fmt::Display for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (0..self.arity).rev() {
            let c = match (self.mask >> j & 1, self.values >> j & 1) {
                (0, _) => '*',
                (_, 0) => '0',
                _ => '1',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Subcube {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Reached only through min-term descents.
    #[serde(rename = "minterm")]
    Minterm,
    /// A cell of a max-term decomposition.
    #[serde(rename = "maxterm-cell")]
    MaxtermCell,
    /// A cell of a lower set found inside the recursion.
    #[serde(rename = "recursive")]
    Recursive,
}

/// Rows × columns, each a subcube; `depth` is the recursion level that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rectangle {
    pub rows: Subcube,
    pub cols: Subcube,
    pub provenance: Provenance,
    pub depth: usize,
}

impl Rectangle {
    pub fn contains(&self, x: Point, y: Point) -> bool {
        self.rows.contains(x) && self.cols.contains(y)
    }
}

/// Rectangles meant to cover every `target` entry of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub composition: Composition,
    pub target: bool,
    pub rectangles: Vec<Rectangle>,
}

/// Validity of a cover against a concrete matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverCheck {
    /// Every `target` entry lies in some rectangle.
    pub covers_all: bool,
    /// No rectangle contains an entry of the other value.
    pub monochromatic: bool,
}

impl CoverCheck {
    pub fn valid(&self) -> bool {
        self.covers_all && self.monochromatic
    }
}

impl Cover {
    pub fn size(&self) -> usize {
        self.rectangles.len()
    }

    pub fn check(&self, m: &CommMatrix) -> CoverCheck {
        let monochromatic = self.rectangles.iter().all(|r| {
            r.rows
                .points()
                .all(|x| r.cols.points().all(|y| m.entry(x, y) == self.target))
        });
        let dim = m.dim();
        let covers_all = (0..dim).all(|x| {
            (0..dim).all(|y| {
                m.entry(x, y) != self.target || self.rectangles.iter().any(|r| r.contains(x, y))
            })
        });
        CoverCheck {
            covers_all,
            monochromatic,
        }
    }
}

/// One node of the min-term recursion: the subfunction on the cube where
/// `fixed_ones` are set to 1 in both inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeRecord {
    pub depth: usize,
    pub fixed_ones: Point,
    pub arity: usize,
    pub target: bool,
    pub value_at_zero: bool,
    pub min_terms: usize,
    pub mono: usize,
    /// Lower-set cells (or the single constant rectangle) emitted here.
    pub own_rectangles: usize,
    pub child_sizes: Vec<usize>,
    pub total: usize,
}

impl NodeRecord {
    /// Min-term count within `mono`, no own cells when the value at zero
    /// differs from the target, and the size recursion
    /// `total = own + Σ children ≤ own + #min terms · max child`.
    pub fn inequalities_hold(&self) -> bool {
        let max_child = self.child_sizes.iter().copied().max().unwrap_or(0);
        let sum: usize = self.child_sizes.iter().sum();
        self.min_terms <= self.mono
            && self.child_sizes.len() == self.min_terms
            && self.total == self.own_rectangles + sum
            && self.total <= self.own_rectangles + self.min_terms * max_child
            && (self.value_at_zero == self.target || self.own_rectangles == 0)
    }
}

/// A constructed cover together with the recursion trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MintermCover {
    pub cover: Cover,
    pub nodes: Vec<NodeRecord>,
    pub max_depth: usize,
    pub alt: usize,
}

impl MintermCover {
    pub fn depth_within_alt(&self) -> bool {
        self.max_depth <= self.alt
    }

    pub fn recursion_holds(&self) -> bool {
        self.nodes.iter().all(NodeRecord::inequalities_hold)
    }
}

struct CoverBuilder<'a> {
    t: &'a TruthTable,
    target: bool,
    rectangles: Vec<Rectangle>,
    nodes: Vec<NodeRecord>,
    max_depth: usize,
}

impl CoverBuilder<'_> {
    /// Covers the `target` entries of the block where both inputs are 1 on
    /// `fixed`; returns the number of rectangles emitted.
    fn node(&mut self, fixed: Point, depth: usize) -> Result<usize> {
        let n = self.t.arity();
        let g = self.t.restrict(&Restriction::from_masks(n, fixed, fixed))?;
        let free = coords_of(full(n) & !fixed);
        let lift = |m: usize| coords_of(m).iter().fold(0, |acc, &k| acc | 1 << free[k]);
        let cube = |zeros: usize| Subcube::new(n, fixed | zeros, fixed);
        self.max_depth = self.max_depth.max(depth);
        let slot = self.nodes.len();
        self.nodes.push(NodeRecord {
            depth,
            fixed_ones: fixed,
            arity: g.arity(),
            target: self.target,
            value_at_zero: g.get(0),
            min_terms: 0,
            mono: mono_sparsity(&g),
            own_rectangles: 0,
            child_sizes: Vec::new(),
            total: 0,
        });

        let mut own = 0;
        let mut child_sizes = Vec::new();
        if let Some(v) = g.constant_value() {
            if v == self.target {
                self.rectangles.push(Rectangle {
                    rows: cube(0),
                    cols: cube(0),
                    provenance: if depth == 0 {
                        Provenance::Recursive
                    } else {
                        Provenance::Minterm
                    },
                    depth,
                });
                own = 1;
            }
        } else {
            if g.get(0) == self.target {
                // Entries with x ∧ y inside the target-valued lower set: for
                // each maximal m, every coordinate outside m has x_i = 0 or
                // y_i = 0.
                let down = uniform_cone(&g, self.target, false);
                let top = full(g.arity());
                for m in (0..g.len()).filter(|&m| {
                    down[m] && (0..g.arity()).all(|i| m >> i & 1 == 1 || !down[m | 1 << i])
                }) {
                    let outside = top & !m;
                    let mut a = outside;
                    loop {
                        self.rectangles.push(Rectangle {
                            rows: cube(lift(a)),
                            cols: cube(lift(outside & !a)),
                            provenance: Provenance::Recursive,
                            depth,
                        });
                        own += 1;
                        if a == 0 {
                            break;
                        }
                        a = (a - 1) & outside;
                    }
                }
            }
            for d in find_terms(&g).min_terms {
                child_sizes.push(self.node(fixed | lift(d), depth + 1)?);
            }
        }
        let total = own + child_sizes.iter().sum::<usize>();
        let rec = &mut self.nodes[slot];
        rec.min_terms = child_sizes.len();
        rec.own_rectangles = own;
        rec.child_sizes = child_sizes;
        rec.total = total;
        Ok(total)
    }
}

/// A `target`-cover of the AND matrix of `t`, built by descending into
/// min terms: every `target` entry `(x, y)` either has `x ∧ y` in the lower
/// set where the function is uniformly `target` (covered by cells there),
/// or lies above a min term `d`, i.e. inside `{x_D = y_D = 1}`, where the
/// construction recurses on the subfunction above `d`.
pub fn rectangle_cover(t: &TruthTable, target: bool) -> Result<MintermCover> {
    check_cap("comm matrix", t.arity(), caps::COMM_MATRIX)?;
    let mut b = CoverBuilder {
        t,
        target,
        rectangles: Vec::new(),
        nodes: Vec::new(),
        max_depth: 0,
    };
    b.node(0, 0)?;
    Ok(MintermCover {
        cover: Cover {
            composition: Composition::And,
            target,
            rectangles: b.rectangles,
        },
        nodes: b.nodes,
        max_depth: b.max_depth,
        alt: alt(t).value,
    })
}

/// The 1-cover of the AND matrix for `f(0^n) = 0`. Each level descends into
/// the min terms; below a min term the subfunction starts at value 1, so
/// the next level covers it through its lower set and descends again.
pub fn minterm_cover(t: &TruthTable) -> Result<MintermCover> {
    if t.get(0) {
        return Err(Error::Precondition(
            "minterm cover needs f(0^n) = 0; negate the output first".into(),
        ));
    }
    let mc = rectangle_cover(t, true)?;
    let m = build_comm_matrix(t, Composition::And)?;
    let check = mc.cover.check(&m);
    if !check.valid() || !mc.recursion_holds() || !mc.depth_within_alt() {
        return Err(Error::Invariant(format!(
            "minterm cover of {t}: {check:?}, depth {} vs alt {}",
            mc.max_depth, mc.alt
        )));
    }
    Ok(mc)
}

/// Cells of one max term `u`: each zero coordinate of `u` takes
/// `(x_i, y_i) ∈ {00, 01, 10}`, all other coordinates stay free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxtermBlock {
    pub max_term: Point,
    pub zeros: Vec<usize>,
    pub cells: Vec<Rectangle>,
    /// The function under `u`, over the one coordinates of `u`.
    pub subfunction: TruthTable,
    pub sub_alt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxtermDecomposition {
    pub blocks: Vec<MaxtermBlock>,
    pub alt: usize,
    pub mono: usize,
    /// Every 1-entry of the AND matrix lies in some cell.
    pub covers_ones: bool,
    /// `alt(f_u) ≤ alt(f) − 1` for every block.
    pub alt_drops: bool,
    /// Whether the counting bound (`k ≤ ⌊log₂ mono⌋` for every block and at
    /// most `C(n, ⌊log₂ mono⌋)` max terms) happens to hold. Reported only.
    pub counting_bound_informative: bool,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Splits the 1-entries of the AND matrix by max terms, for `f(0^n) = 0`
/// and even alternation (so `f(1^n) = 0` as well).
pub fn maxterm_decomposition(t: &TruthTable) -> Result<MaxtermDecomposition> {
    check_cap("comm matrix", t.arity(), caps::COMM_MATRIX)?;
    let n = t.arity();
    let a = alt(t).value;
    if t.get(0) || a % 2 == 1 {
        return Err(Error::Precondition(
            "max-term decomposition needs f(0^n) = 0 and even alternation".into(),
        ));
    }
    let mut blocks = Vec::new();
    for u in find_terms(t).max_terms {
        let zeros = coords_of(full(n) & !u);
        let k = zeros.len();
        let mut cells = Vec::with_capacity(3usize.pow(k as u32));
        for code in 0..3usize.pow(k as u32) {
            let (mut x_ones, mut y_ones, mut c) = (0, 0, code);
            for &i in &zeros {
                match c % 3 {
                    1 => y_ones |= 1 << i,
                    2 => x_ones |= 1 << i,
                    _ => {}
                }
                c /= 3;
            }
            let zero_mask = full(n) & !u;
            cells.push(Rectangle {
                rows: Subcube::new(n, zero_mask, x_ones),
                cols: Subcube::new(n, zero_mask, y_ones),
                provenance: Provenance::MaxtermCell,
                depth: 0,
            });
        }
        let subfunction = t.under(u)?;
        let sub_alt = alt(&subfunction).value;
        blocks.push(MaxtermBlock {
            max_term: u,
            zeros,
            cells,
            subfunction,
            sub_alt,
        });
    }

    let m = build_comm_matrix(t, Composition::And)?;
    let covers_ones = (0..m.dim()).all(|x| {
        (0..m.dim()).all(|y| {
            !m.entry(x, y)
                || blocks
                    .iter()
                    .any(|b| b.cells.iter().any(|c| c.contains(x, y)))
        })
    });
    let alt_drops = blocks.iter().all(|b| b.sub_alt < a);
    let mono = mono_sparsity(t);
    let ell = if mono == 0 { 0 } else { mono.ilog2() as usize };
    let counting_bound_informative = !blocks.is_empty()
        && blocks.iter().all(|b| b.zeros.len() <= ell)
        && blocks.len() <= binomial(n, ell);
    if !covers_ones || !alt_drops {
        return Err(Error::Invariant(format!(
            "max-term decomposition of {t}: covers {covers_ones}, alt drops {alt_drops}"
        )));
    }
    Ok(MaxtermDecomposition {
        blocks,
        alt: a,
        mono,
        covers_ones,
        alt_drops,
        counting_bound_informative,
    })
}
