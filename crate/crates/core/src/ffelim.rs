//! Independent fraction-free Gaussian elimination (Bareiss).
//!
//! Test-support oracle: deliberately shares no code with the HNF/SNF
//! elimination kernels so that rank and determinant agreement between the
//! two routes is a meaningful cross-check.

use num_traits::{Signed, Zero};

use crate::{Int, IntMatrix};

/// Rank and, for full-rank square inputs, the determinant, via one-step
/// fraction-free elimination.
pub fn bareiss(m: &IntMatrix) -> (usize, Option<Int>) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Int>> = (0..rows).map(|i| m.row(i)).collect();
    let mut prev = Int::from(1);
    let mut sign = 1i64;
    let mut rank = 0;
    for pc in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][pc].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for c in pc + 1..cols {
                let num = &a[rank][pc] * &a[r][c] - &a[r][pc] * &a[rank][c];
                a[r][c] = num / &prev;
            }
            a[r][pc] = Int::zero();
        }
        prev = a[rank][pc].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows {
        Some(if sign < 0 { -prev } else { prev })
    } else if rows == cols {
        Some(Int::zero())
    } else {
        None
    };
    (rank, det)
}

pub fn rank(m: &IntMatrix) -> usize {
    bareiss(m).0
}

pub fn det(m: &IntMatrix) -> Int {
    assert_eq!(m.rows(), m.cols());
    bareiss(m).1.expect("square input")
}

/// Whether the determinant of a square integer matrix is plus or minus one.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && det(m).abs() == Int::from(1)
}
