//! Exact enumeration of lattice points inside a convex body.
//!
//! Points are produced by walking the echelon basis row by row: the pivot
//! coordinate of row `i` depends only on the first `i` coefficients, so the
//! bounding box of the body restricts each coefficient to an interval.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::body::{BodyKind, ConvexBody};
use super::lattice::IntegerLattice;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};

pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

struct Walk<'a> {
    lattice: &'a IntegerLattice,
    body: &'a ConvexBody,
    pivots: Vec<usize>,
    bounds: Vec<Q>,
    budget: u64,
    visited: u64,
    /// Every coordinate is a pivot and the body is a box, so the coefficient
    /// intervals already encode membership.
    intervals_exact: bool,
}

impl Walk<'_> {
    fn range(&self, level: usize, partial: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let row = &self.lattice.scaled_rows()[level];
        let p = self.pivots[level];
        let piv = qi(&row[p]);
        let s = qi(&partial[p]);
        let lo = ((-&self.bounds[p] - &s) / &piv).ceil().to_integer();
        let hi = ((&self.bounds[p] - &s) / &piv).floor().to_integer();
        (lo <= hi).then_some((lo, hi))
    }

    fn charge(&mut self, n: &BigInt) -> Result<()> {
        let n = n.to_u64().unwrap_or(u64::MAX);
        self.visited = self.visited.saturating_add(n);
        if self.visited > self.budget {
            return Err(Error::resource(
                format!("lattice point enumeration in {}", self.body.label()),
                self.budget,
            ));
        }
        Ok(())
    }

    fn visit(&mut self, level: usize, partial: &mut Vec<BigInt>, f: &mut dyn FnMut(&[Q])) -> Result<()> {
        let rank = self.lattice.rank();
        if level == rank {
            self.charge(&BigInt::from(1))?;
            let d = qi(self.lattice.denominator());
            let x: Vec<Q> = partial.iter().map(|v| qi(v) / &d).collect();
            if self.intervals_exact || self.body.contains(&x) {
                f(&x);
            }
            return Ok(());
        }
        let Some((lo, hi)) = self.range(level, partial) else {
            return Ok(());
        };
        let row = self.lattice.scaled_rows()[level].clone();
        let mut c = lo;
        while c <= hi {
            for (x, r) in partial.iter_mut().zip(&row) {
                *x += &c * r;
            }
            let res = self.visit(level + 1, partial, f);
            for (x, r) in partial.iter_mut().zip(&row) {
                *x -= &c * r;
            }
            res?;
            c += 1;
        }
        Ok(())
    }

    fn count(&mut self, level: usize, partial: &mut Vec<BigInt>) -> Result<BigInt> {
        let rank = self.lattice.rank();
        if self.intervals_exact && level + 1 == rank {
            return Ok(match self.range(level, partial) {
                Some((lo, hi)) => {
                    let n = hi - lo + 1;
                    self.charge(&n)?;
                    n
                }
                None => BigInt::zero(),
            });
        }
        if level == rank {
            let mut n = BigInt::zero();
            self.visit(level, partial, &mut |_| n += 1)?;
            return Ok(n);
        }
        let Some((lo, hi)) = self.range(level, partial) else {
            return Ok(BigInt::zero());
        };
        let row = self.lattice.scaled_rows()[level].clone();
        let mut total = BigInt::zero();
        let mut c = lo;
        while c <= hi {
            for (x, r) in partial.iter_mut().zip(&row) {
                *x += &c * r;
            }
            let res = self.count(level + 1, partial);
            for (x, r) in partial.iter_mut().zip(&row) {
                *x -= &c * r;
            }
            total += res?;
            c += 1;
        }
        Ok(total)
    }
}

fn walker<'a>(lattice: &'a IntegerLattice, body: &'a ConvexBody, budget: u64) -> Result<Walk<'a>> {
    if lattice.dim() != body.dim() {
        return Err(Error::usage(format!(
            "lattice of dimension {} with a body of dimension {}",
            lattice.dim(),
            body.dim()
        )));
    }
    let d = qi(lattice.denominator());
    let bounds = body.bounding_half_widths().iter().map(|w| w * &d).collect();
    let boxlike = matches!(body.kind(), BodyKind::Box { .. } | BodyKind::GradedBox { .. });
    Ok(Walk {
        lattice,
        body,
        pivots: lattice.pivots(),
        bounds,
        budget,
        visited: 0,
        intervals_exact: boxlike && lattice.is_full_rank(),
    })
}

/// Calls `f` on every point of `lattice ∩ body`, origin included, in
/// lexicographic order of basis coefficients.
pub fn for_each_point(
    lattice: &IntegerLattice,
    body: &ConvexBody,
    budget: u64,
    mut f: impl FnMut(&[Q]),
) -> Result<()> {
    let mut w = walker(lattice, body, budget)?;
    let mut partial = vec![BigInt::zero(); lattice.dim()];
    w.visit(0, &mut partial, &mut f)
}

pub fn lattice_points(lattice: &IntegerLattice, body: &ConvexBody, budget: u64) -> Result<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for_each_point(lattice, body, budget, |x| out.push(x.to_vec()))?;
    Ok(out)
}

/// `|lattice ∩ body|`.
pub fn count_points(lattice: &IntegerLattice, body: &ConvexBody, budget: u64) -> Result<BigInt> {
    let mut w = walker(lattice, body, budget)?;
    if lattice.rank() == 0 {
        return Ok(BigInt::from(1));
    }
    let mut partial = vec![BigInt::zero(); lattice.dim()];
    w.count(0, &mut partial)
}

/// Number of points `x ∈ Z` with `|x| <= b`.
pub fn integers_in(b: &Q) -> BigInt {
    let f = b.floor().to_integer();
    if f < BigInt::zero() {
        BigInt::zero()
    } else {
        f * 2 + 1
    }
}
