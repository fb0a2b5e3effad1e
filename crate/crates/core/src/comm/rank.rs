use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::CommMatrix;

/// Rank over the rationals of an integer matrix, by fraction-free
/// (Bareiss) elimination. Every division is exact; a nonzero remainder
/// would indicate a bug and panics. Runs in `i128` and restarts with big
/// integers if an intermediate overflows.
pub fn integer_rank(matrix: &[Vec<i64>]) -> usize {
    small_rank(matrix).unwrap_or_else(|| big_rank(matrix))
}

fn small_rank(matrix: &[Vec<i64>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(p, rank);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for k in c + 1..cols {
                let num = pivot
                    .checked_mul(row[k])?
                    .checked_sub(factor.checked_mul(pivot_row[k])?)?;
                assert!(num % prev == 0, "inexact Bareiss division");
                row[k] = num / prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn big_rank(matrix: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for k in c + 1..cols {
                let num = pivot * &row[k] - &factor * &pivot_row[k];
                let (q, r) = (&num / &prev, &num % &prev);
                assert!(r.is_zero(), "inexact Bareiss division");
                row[k] = q;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Exact rank of a communication matrix.
pub fn exact_rank(m: &CommMatrix) -> usize {
    let dense: Vec<Vec<i64>> = (0..m.dim())
        .map(|x| (0..m.dim()).map(|y| m.entry(x, y) as i64).collect())
        .collect();
    integer_rank(&dense)
}
