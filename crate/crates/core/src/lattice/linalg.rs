//! Small dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut result = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            result = -result;
        }
        let pivot = a[col][col].clone();
        result *= &pivot;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
        }
    }
    result
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &pivot;
            inv[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let da = &f * &a[col][c];
                a[r][c] -= da;
                let di = &f * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some(inv)
}

pub fn gram(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|u| rows.iter().map(|v| dot(u, v)).collect())
        .collect()
}

pub fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// Incrementally maintained row echelon form, for independence tests.
#[derive(Debug, Clone, Default)]
pub struct RankTracker {
    rows: Vec<(usize, Vec<Q>)>,
}

impl RankTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the vectors seen so far.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = &w[*p] / &row[*p];
            for (x, r) in w.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    #[test]
    fn determinant_and_inverse() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(det(&m), q(5));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![qr(3, 5), qr(-1, 5)], vec![qr(-1, 5), qr(2, 5)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn rank_tracker() {
        let mut t = RankTracker::new();
        assert!(t.insert(&[q(1), q(2), q(0)]));
        assert!(!t.insert(&[q(2), q(4), q(0)]));
        assert!(t.insert(&[q(0), q(1), q(1)]));
        assert!(!t.insert(&[q(1), q(3), q(1)]));
        assert_eq!(t.rank(), 2);
    }
}
