//! Row-style Hermite normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Hermite normal form of the row lattice of `rows`, zero rows dropped.
///
/// The result is in row echelon form with positive pivots, and every entry
/// above a pivot lies in `[0, pivot)`. Two row sets span the same lattice
/// exactly when their normal forms agree.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut top = 0;
    for col in 0..width {
        if top == a.len() {
            break;
        }
        // Euclid on column `col` among rows top..
        loop {
            let mut best: Option<usize> = None;
            for r in top..a.len() {
                if a[r][col].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| a[r][col].abs() < a[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            a.swap(top, b);
            let mut done = true;
            for r in (top + 1)..a.len() {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].div_floor(&a[top][col]);
                if !f.is_zero() {
                    let pivot_row = a[top].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top >= a.len() || a[top][col].is_zero() {
            continue;
        }
        if a[top][col].is_negative() {
            for x in a[top].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[top].clone();
        for r in 0..top {
            let f = a[r][col].div_floor(&pivot_row[col]);
            if !f.is_zero() {
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        top += 1;
    }
    a.truncate(top);
    a
}

/// Pivot column of each row of a matrix in echelon form.
pub fn pivots(rows: &[Vec<BigInt>]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero echelon row"))
        .collect()
}

/// Basis of the integer relations `c` with `Σ c_i rows_i = 0`.
pub fn integer_kernel(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let width = rows[0].len();
    let augmented: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| BigInt::from((i == j) as i64)));
            row
        })
        .collect();
    hnf(&augmented)
        .into_iter()
        .filter(|r| r[..width].iter().all(Zero::is_zero))
        .map(|r| r[width..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(hnf(&m(&[&[2, 0], &[0, 2], &[1, 1]])), m(&[&[1, 1], &[0, 2]]));
        assert_eq!(hnf(&m(&[&[6], &[10]])), m(&[&[2]]));
        assert_eq!(hnf(&m(&[&[0, 0]])), m(&[]));
        assert_eq!(hnf(&m(&[&[-3, 5], &[0, -7]])), m(&[&[3, 2], &[0, 7]]));
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let k = integer_kernel(&m(&[&[1, 2], &[2, 4], &[0, 1]]));
        assert_eq!(k.len(), 1);
        let c = &k[0];
        // 2·r0 - r1 = 0
        assert_eq!(c[2], BigInt::from(0));
        assert_eq!(&c[0] * 2 + &c[1] * 4 + &c[2], BigInt::from(0));
        assert_eq!(&c[0] + &c[1] * 2, BigInt::from(0));
    }
}
