//! Minkowski's second theorem, `2^d covol / d! <= vol(K) Π λ_i <= 2^d covol`.

use num_traits::One;
use serde::Serialize;

use super::body::{ConvexBody, Volume};
use super::lattice::IntegerLattice;
use super::minima::{successive_minima, SuccessiveMinima};
use crate::error::{Error, Result};
use crate::rational::{factorial, pi_interval, q, qi, ExactReal, Interval, Q};

#[derive(Debug, Clone, Serialize)]
pub struct MinkowskiReport {
    pub dim: usize,
    pub minima: SuccessiveMinima,
    pub covolume: ExactReal,
    pub volume: Interval,
    /// `ρ = 2^d covol / (vol(K) Π λ_i)` when it is exactly representable.
    pub ratio_exact: Option<ExactReal>,
    pub ratio: Interval,
    /// `ρ / 4^d`, the quantity obtained when `2^d vol(K)` is placed in the
    /// denominator.
    pub ratio_alt: Interval,
    pub upper: Q,
    pub holds: bool,
}

impl MinkowskiReport {
    pub fn ratio_f64(&self) -> f64 {
        match &self.ratio_exact {
            Some(r) => r.to_f64(),
            None => self.ratio.midpoint_f64(),
        }
    }
}

pub fn minkowski_second_check(lattice: &IntegerLattice, body: &ConvexBody, budget: u64) -> Result<MinkowskiReport> {
    if !lattice.is_full_rank() {
        return Err(Error::usage(format!(
            "Minkowski's second theorem needs a full-rank lattice, got rank {} in dimension {}",
            lattice.rank(),
            lattice.dim()
        )));
    }
    let d = lattice.dim();
    let minima = successive_minima(lattice, body, budget)?;
    let covolume = lattice.covolume()?;
    let covol = covolume.as_rational().expect("full-rank covolume is rational").clone();
    let lambda_sq = minima.values.iter().fold(Q::one(), |acc, l| acc * l.square());
    let four_d = (0..d).fold(Q::one(), |acc, _| acc * q(4));
    // ρ² = 4^d covol² / (vol² Π λ_i²)
    let numerator = &four_d * &covol * &covol / &lambda_sq;
    let volume = body.volume();
    let (ratio_exact, ratio) = match &volume {
        Volume::Exact(v) => {
            let r = ExactReal::sqrt_of(numerator / (v * v));
            let enclosure = match &r {
                ExactReal::Rational(x) => Interval::point(x.clone()),
                ExactReal::Sqrt(x) => Interval::point(x.clone()).sqrt_pos(128),
            };
            (Some(r), enclosure)
        }
        Volume::PiPower {
            squared_coefficient,
            pi_exponent,
        } => {
            let pi = pi_interval();
            let mut p = Interval::point(Q::one());
            for _ in 0..*pi_exponent {
                p = p.mul_pos(&pi);
            }
            let sq = p.recip_pos().scale(&(numerator / squared_coefficient));
            (None, sq.sqrt_pos(128))
        }
    };
    let upper = qi(&factorial(d as u32));
    let holds = ratio.within(&Q::one(), &upper);
    let ratio_alt = ratio.scale(&(Q::one() / &four_d));
    Ok(MinkowskiReport {
        dim: d,
        minima,
        covolume,
        volume: volume.enclosure(),
        ratio_exact,
        ratio,
        ratio_alt,
        upper,
        holds,
    })
}
