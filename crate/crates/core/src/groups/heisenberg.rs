//! The discrete Heisenberg group `H(Z)` and canonical forms of its
//! finitely generated subgroups.
//!
//! Elements are upper unitriangular integer matrices written `(a, b, c)`
//! with `a` and `b` on the superdiagonal and `c` in the corner, so that
//! `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::lattice::{Index, IntegerLattice};
use crate::lie::{Algebra, LieElement};
use crate::rational::{q, qr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HeisElem {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeisElem {
    pub const ID: HeisElem = HeisElem { a: 0, b: 0, c: 0 };
    pub const X: HeisElem = HeisElem { a: 1, b: 0, c: 0 };
    pub const Y: HeisElem = HeisElem { a: 0, b: 1, c: 0 };
    pub const Z: HeisElem = HeisElem { a: 0, b: 0, c: 1 };

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        HeisElem { a, b, c }
    }

    pub fn mul(self, o: HeisElem) -> HeisElem {
        HeisElem {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c + self.a * o.b,
        }
    }

    pub fn inv(self) -> HeisElem {
        HeisElem {
            a: -self.a,
            b: -self.b,
            c: -self.c + self.a * self.b,
        }
    }

    pub fn pow(self, n: i64) -> HeisElem {
        // (a,b,c)^n = (na, nb, nc + ab·n(n-1)/2)
        HeisElem {
            a: n * self.a,
            b: n * self.b,
            c: n * self.c + self.a * self.b * (n * (n - 1) / 2),
        }
    }

    /// `g h g⁻¹ h⁻¹`.
    pub fn commutator(self, h: HeisElem) -> HeisElem {
        self.mul(h).mul(self.inv()).mul(h.inv())
    }

    pub fn is_central(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Lie coordinates `(a, b, c - ab/2)` of the logarithm.
    pub fn log(self) -> LieElement {
        Algebra::Heisenberg
            .element(vec![q(self.a), q(self.b), q(self.c) - qr(self.a * self.b, 2)])
            .expect("three coordinates")
    }
}

impl fmt::Display for HeisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Canonical form of a subgroup `H ≤ H(Z)`.
///
/// `image` is the projection to `Z²` in Hermite normal form, `center` is the
/// `m ≥ 0` with `H ∩ Z(H(Z)) = ⟨z^m⟩`, and `offsets[i]` is the corner entry
/// of the preimage of the `i`-th image basis row, reduced mod `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HeisenbergSubgroup {
    image: IntegerLattice,
    center: i64,
    offsets: Vec<i64>,
    #[serde(skip)]
    rows: Vec<(i64, i64)>,
}

fn reduce_mod(c: i64, m: i64) -> i64 {
    if m == 0 {
        c
    } else {
        c.mod_floor(&m)
    }
}

impl HeisenbergSubgroup {
    pub fn trivial() -> Self {
        Self::generated(&[])
    }

    pub fn whole() -> Self {
        Self::generated(&[HeisElem::X, HeisElem::Y])
    }

    /// Subgroup generated by `gens`.
    pub fn generated(gens: &[HeisElem]) -> Self {
        let mut rows: Vec<HeisElem> = gens.iter().copied().filter(|g| *g != HeisElem::ID).collect();
        let mut central: i64 = 0;
        let mut pivots: Vec<HeisElem> = Vec::new();
        for col in 0..2 {
            let entry = |g: &HeisElem| if col == 0 { g.a } else { g.b };
            loop {
                let best = rows
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| entry(g) != 0)
                    .min_by_key(|(_, g)| entry(g).abs())
                    .map(|(i, _)| i);
                let Some(bi) = best else { break };
                let pivot = rows.swap_remove(bi);
                let mut all_zero = true;
                for g in rows.iter_mut() {
                    let f = Integer::div_floor(&entry(g), &entry(&pivot));
                    if f != 0 {
                        *g = g.mul(pivot.pow(-f));
                    }
                    if entry(g) != 0 {
                        all_zero = false;
                    }
                }
                if all_zero {
                    pivots.push(if entry(&pivot) < 0 { pivot.inv() } else { pivot });
                    break;
                }
                rows.push(pivot);
            }
            // rows with vanishing image are central
            rows.retain(|g| {
                if g.is_central() {
                    central = central.gcd(&g.c);
                    false
                } else {
                    true
                }
            });
        }
        debug_assert!(rows.is_empty());
        if pivots.len() == 2 {
            let (p0, p1) = (pivots[0], pivots[1]);
            if p0.a != 0 {
                let f = Integer::div_floor(&p0.b, &p1.b);
                if f != 0 {
                    pivots[0] = p0.mul(p1.pow(-f));
                }
            }
            let det = pivots[0].a * pivots[1].b - pivots[1].a * pivots[0].b;
            central = central.gcd(&det);
        }
        let image = IntegerLattice::span_integer(2, &pivots.iter().map(|g| vec![g.a, g.b]).collect::<Vec<_>>())
            .expect("two-dimensional image");
        debug_assert_eq!(
            image.scaled_rows().iter().map(|r| (r[0].clone(), r[1].clone())).collect::<Vec<_>>(),
            pivots.iter().map(|g| (g.a.into(), g.b.into())).collect::<Vec<_>>()
        );
        HeisenbergSubgroup {
            image,
            center: central,
            offsets: pivots.iter().map(|g| reduce_mod(g.c, central)).collect(),
            rows: pivots.iter().map(|g| (g.a, g.b)).collect(),
        }
    }

    pub fn image(&self) -> &IntegerLattice {
        &self.image
    }

    pub fn center(&self) -> i64 {
        self.center
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// Preimages of the image basis followed by `z^m` when `m > 0`.
    pub fn generators(&self) -> Vec<HeisElem> {
        let mut g: Vec<HeisElem> = self
            .rows
            .iter()
            .zip(&self.offsets)
            .map(|(&(a, b), &c)| HeisElem::new(a, b, c))
            .collect();
        if self.center != 0 {
            g.push(HeisElem::new(0, 0, self.center));
        }
        g
    }

    /// Corner entry of the canonical-order word with abelianization
    /// `(a, b)`, or `None` when `(a, b)` is outside the image.
    pub fn corner_over(&self, mut a: i64, mut b: i64) -> Option<i64> {
        let mut word = HeisElem::ID;
        for (&(pa, pb), &c) in self.rows.iter().zip(&self.offsets) {
            let p = HeisElem::new(pa, pb, c);
            let (col_val, piv) = if pa != 0 { (a, pa) } else { (b, pb) };
            if col_val % piv != 0 {
                return None;
            }
            let n = col_val / piv;
            word = word.mul(p.pow(n));
            a -= n * pa;
            b -= n * pb;
        }
        (a == 0 && b == 0).then_some(word.c)
    }

    pub fn contains(&self, g: HeisElem) -> bool {
        let Some(c) = self.corner_over(g.a, g.b) else {
            return false;
        };
        let diff = g.c - c;
        if self.center == 0 {
            diff == 0
        } else {
            diff % self.center == 0
        }
    }

    pub fn contains_subgroup(&self, other: &HeisenbergSubgroup) -> bool {
        other.generators().into_iter().all(|g| self.contains(g))
    }

    pub fn join(&self, other: &HeisenbergSubgroup) -> HeisenbergSubgroup {
        let mut g = self.generators();
        g.extend(other.generators());
        Self::generated(&g)
    }

    pub fn with(&self, extra: &[HeisElem]) -> HeisenbergSubgroup {
        let mut g = self.generators();
        g.extend_from_slice(extra);
        Self::generated(&g)
    }

    /// `[sup : self]`, or `None` when `self` is not contained in `sup`.
    pub fn index_in(&self, sup: &HeisenbergSubgroup) -> Option<Index> {
        if !sup.contains_subgroup(self) {
            return None;
        }
        let img = self.image.index_in(&sup.image).ok()?;
        Some(match img {
            Index::Infinite => Index::Infinite,
            Index::Finite(n) => match (self.center, sup.center) {
                (0, 0) => Index::Finite(n),
                (0, _) => Index::Infinite,
                (m1, m2) => Index::Finite(n * (m1 / m2)),
            },
        })
    }

    /// Short deterministic fingerprint of the canonical form.
    pub fn canonical_string(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .zip(&self.offsets)
            .map(|((a, b), c)| format!("{a},{b},{c}"))
            .collect();
        format!("[{}|m={}]", rows.join(";"), self.center)
    }
}

pub fn logs(gens: &[HeisElem]) -> Vec<LieElement> {
    gens.iter().map(|g| g.log()).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    /// All elements of word length at most `r` in the given generators.
    fn bfs(gens: &[HeisElem], r: usize) -> HashSet<HeisElem> {
        let mut s: Vec<HeisElem> = gens.to_vec();
        s.extend(gens.iter().map(|g| g.inv()));
        let mut seen = HashSet::from([HeisElem::ID]);
        let mut frontier = VecDeque::from([(HeisElem::ID, 0)]);
        while let Some((g, d)) = frontier.pop_front() {
            if d == r {
                continue;
            }
            for h in &s {
                let n = g.mul(*h);
                if seen.insert(n) {
                    frontier.push_back((n, d + 1));
                }
            }
        }
        seen
    }

    #[test]
    fn group_law() {
        let g = HeisElem::new(2, -3, 5);
        assert_eq!(g.mul(g.inv()), HeisElem::ID);
        assert_eq!(g.pow(3), g.mul(g).mul(g));
        assert_eq!(g.pow(-2), g.inv().mul(g.inv()));
        assert_eq!(HeisElem::X.commutator(HeisElem::Y), HeisElem::Z);
    }

    #[test]
    fn spec_examples() {
        let full = HeisenbergSubgroup::generated(&[HeisElem::X, HeisElem::Y]);
        assert_eq!(full.image(), &IntegerLattice::standard(2));
        assert_eq!(full.center(), 1);
        let cyc = HeisenbergSubgroup::generated(&[HeisElem::X.pow(2)]);
        assert_eq!(cyc.image(), &IntegerLattice::span_integer(2, &[vec![2, 0]]).unwrap());
        assert_eq!(cyc.center(), 0);
        let sq = HeisenbergSubgroup::generated(&[HeisElem::X.pow(2), HeisElem::Y.pow(2)]);
        assert_eq!(sq.image(), &IntegerLattice::span_integer(2, &[vec![2, 0], vec![0, 2]]).unwrap());
        assert_eq!(sq.center(), 4);
    }

    #[test]
    fn canonical_form_ignores_generating_set() {
        let a = HeisenbergSubgroup::generated(&[HeisElem::new(1, 2, 3), HeisElem::new(0, 3, 1)]);
        let b = HeisenbergSubgroup::generated(&[
            HeisElem::new(1, 2, 3).mul(HeisElem::new(0, 3, 1)),
            HeisElem::new(0, 3, 1).inv(),
            HeisElem::new(1, 2, 3).commutator(HeisElem::new(0, 3, 1)),
        ]);
        assert_eq!(a, b);
    }

    #[test]
    fn membership_matches_bfs_oracle() {
        let gens = [HeisElem::new(2, 1, 0), HeisElem::new(0, 3, 1)];
        let h = HeisenbergSubgroup::generated(&gens);
        let big = bfs(&gens, 12);
        for g in bfs(&gens, 6) {
            assert!(h.contains(g), "{g}");
        }
        for g in bfs(&[HeisElem::X, HeisElem::Y], 5) {
            // members close to the identity are short words in the generators
            if h.contains(g) {
                assert!(big.contains(&g), "{g}");
            } else {
                assert!(!big.contains(&g), "{g}");
            }
        }
    }

    #[test]
    fn index_formula() {
        let inner = HeisenbergSubgroup::generated(&[HeisElem::X.pow(2), HeisElem::Y.pow(2)]);
        let whole = HeisenbergSubgroup::whole();
        assert_eq!(inner.index_in(&whole), Some(Index::Finite(16.into())));
        assert_eq!(whole.index_in(&inner), None);
        let line = HeisenbergSubgroup::generated(&[HeisElem::X]);
        assert_eq!(line.index_in(&whole), Some(Index::Infinite));
    }
}
