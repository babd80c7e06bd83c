//! Truncated free associative algebra on `k` letters.
//!
//! Elements are stored degree by degree; a word of length `d` over letters
//! `0..k` is indexed in base `k` with the first letter most significant.

use num_traits::{One, Zero};

use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    k: usize,
    max_degree: usize,
    parts: Vec<Vec<Q>>,
}

impl Tensor {
    pub fn zero(k: usize, max_degree: usize) -> Self {
        let parts = (0..=max_degree).map(|d| vec![Q::zero(); k.pow(d as u32)]).collect();
        Tensor { k, max_degree, parts }
    }

    pub fn one(k: usize, max_degree: usize) -> Self {
        let mut t = Self::zero(k, max_degree);
        t.parts[0][0] = Q::one();
        t
    }

    pub fn letter(k: usize, max_degree: usize, letter: usize) -> Self {
        let mut t = Self::zero(k, max_degree);
        if max_degree >= 1 {
            t.parts[1][letter] = Q::one();
        }
        t
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn part(&self, degree: usize) -> &[Q] {
        &self.parts[degree]
    }

    pub fn part_mut(&mut self, degree: usize) -> &mut Vec<Q> {
        &mut self.parts[degree]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.iter().all(Zero::is_zero))
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (a, b) in out.parts.iter_mut().zip(&other.parts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        let mut out = self.clone();
        for p in &mut out.parts {
            for x in p.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn mul(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.k, self.max_degree);
        for da in 0..=self.max_degree {
            for db in 0..=(self.max_degree - da) {
                let width = self.k.pow(db as u32);
                let target = &mut out.parts[da + db];
                for (ia, xa) in self.parts[da].iter().enumerate() {
                    if xa.is_zero() {
                        continue;
                    }
                    for (ib, xb) in other.parts[db].iter().enumerate() {
                        if xb.is_zero() {
                            continue;
                        }
                        target[ia * width + ib] += xa * xb;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Tensor) -> Tensor {
        self.mul(other).sub(&other.mul(self))
    }

    /// `exp` of an element without constant term.
    pub fn exp(&self) -> Tensor {
        debug_assert!(self.parts[0][0].is_zero());
        let mut result = Tensor::one(self.k, self.max_degree);
        let mut power = Tensor::one(self.k, self.max_degree);
        for n in 1..=self.max_degree {
            power = power.mul(self).scale(&Q::new(1.into(), (n as i64).into()));
            result = result.add(&power);
        }
        result
    }

    /// `log` of an element with constant term one.
    pub fn log(&self) -> Tensor {
        debug_assert!(self.parts[0][0].is_one());
        let nil = self.sub(&Tensor::one(self.k, self.max_degree));
        let mut result = Tensor::zero(self.k, self.max_degree);
        let mut power = Tensor::one(self.k, self.max_degree);
        for n in 1..=self.max_degree {
            power = power.mul(&nil);
            let sign = if n % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&Q::new(sign.into(), (n as i64).into())));
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_inverse() {
        let x = Tensor::letter(2, 4, 0).add(&Tensor::letter(2, 4, 1).scale(&q(3)));
        assert_eq!(x.exp().log(), x);
    }

    #[test]
    fn commuting_exponentials_add() {
        let x = Tensor::letter(2, 5, 0);
        let a = x.scale(&q(2)).exp().mul(&x.scale(&q(-5)).exp());
        assert_eq!(a, x.scale(&q(-3)).exp());
    }

    #[test]
    fn bch_low_degree_terms() {
        let x = Tensor::letter(2, 3, 0);
        let y = Tensor::letter(2, 3, 1);
        let z = x.exp().mul(&y.exp()).log();
        let xy = x.commutator(&y);
        let expected = x
            .add(&y)
            .add(&xy.scale(&Q::new(1.into(), 2.into())))
            .add(&x.commutator(&xy).scale(&Q::new(1.into(), 12.into())))
            .sub(&y.commutator(&xy).scale(&Q::new(1.into(), 12.into())));
        assert_eq!(z, expected);
    }
}
