use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{check_cap, Result};
use crate::table::{Point, TruthTable};

/// Bit-wise inner function combining the two parties' inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Composition {
    And,
    Xor,
}

impl Composition {
    #[inline]
    pub fn combine(self, x: Point, y: Point) -> Point {
        match self {
            Composition::And => x & y,
            Composition::Xor => x ^ y,
        }
    }

    #[inline]
    pub fn combine_bit(self, a: bool, b: bool) -> bool {
        match self {
            Composition::And => a & b,
            Composition::Xor => a ^ b,
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Composition::And => "and",
            Composition::Xor => "xor",
        })
    }
}

/// `M[x][y] = f(x ∧ y)` or `f(x ⊕ y)`; each row is a column bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommMatrix {
    pub composition: Composition,
    pub outer: TruthTable,
    rows: Vec<u64>,
}

impl CommMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn entry(&self, x: Point, y: Point) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn row(&self, x: Point) -> u64 {
        self.rows[x]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Rows restricted to entries equal to `b`.
    pub fn rows_with_value(&self, b: bool) -> Vec<u64> {
        let all = if self.dim() == 64 {
            u64::MAX
        } else {
            (1u64 << self.dim()) - 1
        };
        self.rows
            .iter()
            .map(|&r| if b { r } else { !r & all })
            .collect()
    }

    /// Row-major hex: one string per row, in the truth-table digit order.
    pub fn to_hex_rows(&self) -> Vec<String> {
        let digits = self.dim().div_ceil(4);
        self.rows
            .iter()
            .map(|r| format!("{:0width$X}", r, width = digits))
            .collect()
    }
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    composition: Composition,
    outer: &'a TruthTable,
    rows: Vec<String>,
}

impl Serialize for CommMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            composition: self.composition,
            outer: &self.outer,
            rows: self.to_hex_rows(),
        }
        .serialize(s)
    }
}

/// The `2^n × 2^n` communication matrix of `f ∘ composition`.
pub fn build_comm_matrix(t: &TruthTable, composition: Composition) -> Result<CommMatrix> {
    check_cap("comm matrix", t.arity(), caps::COMM_MATRIX)?;
    let size = t.len();
    let rows = (0..size)
        .map(|x| {
            (0..size)
                .filter(|&y| t.get(composition.combine(x, y)))
                .fold(0u64, |r, y| r | 1 << y)
        })
        .collect();
    Ok(CommMatrix {
        composition,
        outer: t.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let m = build_comm_matrix(&t("1:2"), Composition::And).unwrap();
        assert_eq!(m.rows(), &[0b00, 0b10]);
        let p = build_comm_matrix(&t("1:2"), Composition::Xor).unwrap();
        assert_eq!(p.rows(), &[0b10, 0b01]);
        let or2 = build_comm_matrix(&t("2:E"), Composition::And).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(or2.entry(x, y), x & y != 0);
            }
        }
        assert_eq!(or2.to_hex_rows(), vec!["0", "A", "C", "E"]);
    }

    #[test]
    fn symmetry() {
        for bits in 0..256 {
            let f = TruthTable::from_u64(3, bits).unwrap();
            let a = build_comm_matrix(&f, Composition::And).unwrap();
            let x = build_comm_matrix(&f, Composition::Xor).unwrap();
            for i in 0..8 {
                for j in 0..8 {
                    assert_eq!(a.entry(i, j), a.entry(j, i));
                    assert_eq!(x.entry(i, j), x.entry(0, i ^ j));
                }
            }
        }
    }

    #[test]
    fn cap() {
        let f = TruthTable::constant(7, false).unwrap();
        assert!(build_comm_matrix(&f, Composition::And)
            .unwrap_err()
            .is_cap());
    }
}
