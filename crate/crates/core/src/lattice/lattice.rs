//! Discrete additive subgroups of `Q^d` in canonical form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::hnf::{hnf, integer_kernel, pivots};
use super::linalg::{det, gram};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, fmt_q, qi, ExactReal, Q};

/// Index of one lattice in another.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A lattice `Λ ⊂ Q^d` stored as the Hermite normal form of `D·Λ`.
///
/// `D` is the least positive integer making `D·Λ` integral, so the pair
/// `(denominator, rows)` is a canonical representative and derived
/// equality is lattice equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    dim: usize,
    denominator: BigInt,
    rows: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    pub fn zero(dim: usize) -> Self {
        IntegerLattice {
            dim,
            denominator: BigInt::one(),
            rows: Vec::new(),
        }
    }

    /// The standard lattice `Z^d`.
    pub fn standard(dim: usize) -> Self {
        IntegerLattice {
            dim,
            denominator: BigInt::one(),
            rows: (0..dim)
                .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect(),
        }
    }

    /// `span_Z` of rational vectors of dimension `dim`.
    pub fn span(dim: usize, vectors: &[Vec<Q>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::usage(format!(
                "vector of length {} in a lattice of dimension {dim}",
                v.len()
            )));
        }
        let d = vectors.iter().fold(BigInt::one(), |acc, v| acc.lcm(&common_denominator(v)));
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(|x| (x * qi(&d)).to_integer()).collect())
            .collect();
        Ok(Self::from_scaled_rows(dim, d, rows))
    }

    pub fn span_integer(dim: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let v: Vec<Vec<Q>> = vectors
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
            .collect();
        Self::span(dim, &v)
    }

    fn from_scaled_rows(dim: usize, denominator: BigInt, rows: Vec<Vec<BigInt>>) -> Self {
        let mut rows = hnf(&rows);
        let mut denominator = denominator;
        let g = rows.iter().flatten().fold(denominator.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for x in rows.iter_mut().flatten() {
                *x /= &g;
            }
            denominator /= &g;
        }
        IntegerLattice {
            dim,
            denominator,
            rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Integer rows of `D·Λ` in Hermite normal form.
    pub fn scaled_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        pivots(&self.rows)
    }

    /// Canonical basis of `Λ` itself.
    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| Q::new(x.clone(), self.denominator.clone())).collect())
            .collect()
    }

    /// Integer coordinates of `v` in the canonical basis, if `v ∈ Λ`.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        if v.len() != self.dim {
            return None;
        }
        let d = qi(&self.denominator);
        let mut w: Vec<BigInt> = Vec::with_capacity(self.dim);
        for x in v {
            let y = x * &d;
            if !y.is_integer() {
                return None;
            }
            w.push(y.to_integer());
        }
        let mut coeffs = Vec::with_capacity(self.rank());
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            let (c, rem) = w[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (x, r) in w.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
            coeffs.push(c);
        }
        if w.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    /// First basis vector of `other` lying outside `self`.
    pub fn non_member_of(&self, other: &IntegerLattice) -> Option<Vec<Q>> {
        other.basis().into_iter().find(|b| !self.contains(b))
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.dim == self.dim && self.non_member_of(other).is_none()
    }

    pub fn join(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Self::span(self.dim, &vs)
    }

    pub fn scale(&self, c: &Q) -> IntegerLattice {
        let vs: Vec<Vec<Q>> = self.basis().iter().map(|v| v.iter().map(|x| x * c).collect()).collect();
        Self::span(self.dim, &vs).expect("dimension preserved")
    }

    /// `[super : self]`; the basis of `self` must lie in `sup`.
    pub fn index_in(&self, sup: &IntegerLattice) -> Result<Index> {
        if self.dim != sup.dim {
            return Err(Error::usage(format!(
                "index of a dimension-{} lattice in a dimension-{} lattice",
                self.dim, sup.dim
            )));
        }
        let mut coords = Vec::with_capacity(self.rank());
        for b in self.basis() {
            match sup.coordinates(&b) {
                Some(c) => coords.push(c),
                None => {
                    let shown: Vec<String> = b.iter().map(fmt_q).collect();
                    return Err(Error::usage(format!(
                        "not a sublattice: ({}) is missing from the larger lattice",
                        shown.join(", ")
                    )));
                }
            }
        }
        if self.rank() < sup.rank() {
            return Ok(Index::Infinite);
        }
        let m: Vec<Vec<Q>> = coords.iter().map(|r| r.iter().map(qi).collect()).collect();
        Ok(Index::Finite(det(&m).abs().to_integer()))
    }

    /// Covolume, i.e. the `rank`-dimensional volume of a fundamental domain.
    pub fn covolume(&self) -> Result<ExactReal> {
        if self.rank() == 0 {
            return Err(Error::usage("covolume of the zero lattice"));
        }
        let b = self.basis();
        if self.is_full_rank() {
            Ok(ExactReal::Rational(det(&b).abs()))
        } else {
            Ok(ExactReal::sqrt_of(det(&gram(&b))))
        }
    }

    pub fn intersect(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        if self.dim != other.dim {
            return Err(Error::usage("intersection of lattices of different dimension"));
        }
        let d = self.denominator.lcm(&other.denominator);
        let scale_rows = |l: &IntegerLattice, sign: i64| -> Vec<Vec<BigInt>> {
            let f = &d / &l.denominator * BigInt::from(sign);
            l.rows.iter().map(|r| r.iter().map(|x| x * &f).collect()).collect()
        };
        let mut rows = scale_rows(self, 1);
        rows.extend(scale_rows(other, -1));
        let kernel = integer_kernel(&rows);
        let basis = self.basis();
        let vs: Vec<Vec<Q>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![Q::zero(); self.dim];
                for (ci, b) in c.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += qi(ci) * y;
                    }
                }
                v
            })
            .collect();
        Self::span(self.dim, &vs)
    }

    pub fn basis_strings(&self) -> Vec<Vec<String>> {
        self.basis().iter().map(|r| r.iter().map(fmt_q).collect()).collect()
    }
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis_strings().iter().map(|r| format!("({})", r.join(","))).collect();
        write!(f, "Lattice[{}]{{{}}}", self.dim, rows.join(" "))
    }
}

impl Serialize for IntegerLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IntegerLattice", 4)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("denominator", &self.denominator.to_string())?;
        st.serialize_field("basis", &self.basis_strings())?;
        st.end()
    }
}
