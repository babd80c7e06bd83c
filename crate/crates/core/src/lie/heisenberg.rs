//! Matrix model of the Heisenberg group.
//!
//! The Lie algebra element `(a, b, c)` is the strictly upper triangular
//! matrix with entries `a` (row 0, col 1), `b` (row 1, col 2) and `c`
//! (row 0, col 2); the same layout is used for unipotent group matrices.

use num_traits::{One, Zero};

use super::algebra::{Algebra, LieElement};
use crate::error::{Error, Result};
use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

fn check_shape(m: &Matrix) -> Result<()> {
    if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
        return Err(Error::usage(format!(
            "expected a 3x3 matrix, got {} rows of lengths {:?}",
            m.len(),
            m.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

fn identity() -> Matrix {
    (0..3)
        .map(|i| (0..3).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| (0..3).fold(Q::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn algebra_matrix(a: &Q, b: &Q, c: &Q) -> Matrix {
    let z = Q::zero;
    vec![
        vec![z(), a.clone(), c.clone()],
        vec![z(), z(), b.clone()],
        vec![z(), z(), z()],
    ]
}

pub fn group_matrix(a: &Q, b: &Q, c: &Q) -> Matrix {
    let mut m = algebra_matrix(a, b, c);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

/// `exp(M) = I + M + M²/2` for strictly upper triangular `M`.
pub fn heisenberg_exp(m: &Matrix) -> Result<Matrix> {
    check_shape(m)?;
    for i in 0..3 {
        for j in 0..=i {
            if !m[i][j].is_zero() {
                return Err(Error::usage(format!("entry ({i},{j}) of a Lie algebra matrix must be 0")));
            }
        }
    }
    let m2 = mat_mul(m, m);
    let half = Q::new(1.into(), 2.into());
    let id = identity();
    Ok((0..3)
        .map(|i| (0..3).map(|j| &id[i][j] + &m[i][j] + &m2[i][j] * &half).collect())
        .collect())
}

/// `log(U) = N - N²/2` with `N = U - I`, for unipotent upper triangular `U`.
pub fn heisenberg_log(u: &Matrix) -> Result<Matrix> {
    check_shape(u)?;
    for i in 0..3 {
        for j in 0..i {
            if !u[i][j].is_zero() {
                return Err(Error::usage(format!("entry ({i},{j}) of a unipotent matrix must be 0")));
            }
        }
        if !u[i][i].is_one() {
            return Err(Error::usage(format!("diagonal entry ({i},{i}) of a unipotent matrix must be 1")));
        }
    }
    let id = identity();
    let n: Matrix = (0..3).map(|i| (0..3).map(|j| &u[i][j] - &id[i][j]).collect()).collect();
    let n2 = mat_mul(&n, &n);
    let half = Q::new(1.into(), 2.into());
    Ok((0..3)
        .map(|i| (0..3).map(|j| &n[i][j] - &n2[i][j] * &half).collect())
        .collect())
}

/// Group entries `(a, b, c + ab/2)` of `exp(a, b, c)`.
pub fn exp_coords(x: &LieElement) -> Result<[Q; 3]> {
    let c = heisenberg_coords(x)?;
    let m = heisenberg_exp(&algebra_matrix(&c[0], &c[1], &c[2]))?;
    Ok([m[0][1].clone(), m[1][2].clone(), m[0][2].clone()])
}

/// Lie coordinates of the unipotent matrix with entries `(a, b, c)`.
pub fn log_coords(a: &Q, b: &Q, c: &Q) -> LieElement {
    let m = heisenberg_log(&group_matrix(a, b, c)).expect("well-formed unipotent matrix");
    Algebra::Heisenberg
        .element(vec![m[0][1].clone(), m[1][2].clone(), m[0][2].clone()])
        .expect("three coordinates")
}

fn heisenberg_coords(x: &LieElement) -> Result<&[Q]> {
    match x.algebra() {
        Algebra::Heisenberg => Ok(x.coords()),
        other => Err(Error::usage(format!("expected a Heisenberg element, got {}", other.id()))),
    }
}
