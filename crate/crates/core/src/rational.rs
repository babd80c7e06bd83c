//! Arbitrary-precision rationals and the few exact-real helpers built on them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Formats as `p/q`, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: scale down through the bit lengths
        let shift = x.numer().bits().max(x.denom().bits()) as i64 - 60;
        let n = (x.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let d = (x.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        n / d
    })
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| if x.is_zero() { acc } else { acc.lcm(x) })
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Least common multiple of the denominators of a rational vector.
pub fn common_denominator(v: &[Q]) -> BigInt {
    lcm_all(v.iter().map(|x| x.denom()))
}

/// Exact `k`-th root of a non-negative rational when it is rational.
pub fn rational_root(x: &Q, k: u32) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let rn = n.nth_root(k);
    let rd = d.nth_root(k);
    if num_traits::pow(rn.clone(), k as usize) == *n && num_traits::pow(rd.clone(), k as usize) == *d {
        Some(Q::new(
            BigInt::from_biguint(Sign::Plus, rn),
            BigInt::from_biguint(Sign::Plus, rd),
        ))
    } else {
        None
    }
}

/// A positive real that is either rational or the square root of a rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactReal {
    Rational(Q),
    Sqrt(Q),
}

impl ExactReal {
    /// Normalises `sqrt(x)` to a rational when `x` is a perfect square.
    pub fn sqrt_of(x: Q) -> Self {
        match rational_root(&x, 2) {
            Some(r) => ExactReal::Rational(r),
            None => ExactReal::Sqrt(x),
        }
    }

    pub fn square(&self) -> Q {
        match self {
            ExactReal::Rational(r) => r * r,
            ExactReal::Sqrt(x) => x.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            ExactReal::Rational(r) => Some(r),
            ExactReal::Sqrt(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rational(r) => q_to_f64(r),
            ExactReal::Sqrt(x) => q_to_f64(x).sqrt(),
        }
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        // both values are non-negative, so squares order them
        Some(self.square().cmp(&other.square()))
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => write!(f, "{r}"),
            ExactReal::Sqrt(x) => write!(f, "sqrt({x})"),
        }
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(with = "qstr")]
    pub lo: Q,
    #[serde(with = "qstr")]
    pub hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn within(&self, lo: &Q, hi: &Q) -> bool {
        &self.lo >= lo && &self.hi <= hi
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Product of two intervals of positive numbers.
    pub fn mul_pos(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo * &other.lo, &self.hi * &other.hi)
    }

    /// Reciprocal of an interval of positive numbers.
    pub fn recip_pos(&self) -> Interval {
        Interval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn scale(&self, c: &Q) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Certified enclosure of the square root of a positive interval, with
    /// endpoints rounded outward on a grid of `2^-bits`.
    pub fn sqrt_pos(&self, bits: u32) -> Interval {
        Interval::new(sqrt_bound(&self.lo, bits, false), sqrt_bound(&self.hi, bits, true))
    }

    pub fn midpoint_f64(&self) -> f64 {
        (q_to_f64(&self.lo) + q_to_f64(&self.hi)) / 2.0
    }
}

fn sqrt_bound(x: &Q, bits: u32, upper: bool) -> Q {
    if let Some(r) = rational_root(x, 2) {
        return r;
    }
    let scale = BigInt::one() << (2 * bits as usize);
    // floor(sqrt(x * 4^bits)) / 2^bits  <= sqrt(x)
    let scaled = (x * Q::from_integer(scale)).floor().to_integer();
    let mut r = scaled.sqrt();
    if upper {
        r += 1;
    }
    Q::new(r, BigInt::one() << bits as usize)
}

/// Rational enclosure of pi, good to about 1e-30.
pub fn pi_interval() -> Interval {
    let lo: BigInt = "3141592653589793238462643383279".parse().unwrap();
    let den: BigInt = num_traits::pow(BigInt::from(10), 30);
    Interval::new(Q::new(lo.clone(), den.clone()), Q::new(lo + 1, den))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn cmp_abs(a: &Q, b: &Q) -> Ordering {
    a.abs().cmp(&b.abs())
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod qstr {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Serde adapter for `Vec<Q>` as an array of `"p/q"` strings.
pub mod qvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

/// Serde adapter for matrices of rationals.
pub mod qmat {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|row| row.iter().map(fmt_q).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let m = Vec::<Vec<String>>::deserialize(d)?;
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_q(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_q("6/4").unwrap(), qr(3, 2));
        assert_eq!(fmt_q(&qr(-3, 2)), "-3/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("x").is_none());
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&qr(9, 4), 2), Some(qr(3, 2)));
        assert_eq!(rational_root(&q(27), 3), Some(q(3)));
        assert_eq!(rational_root(&q(2), 2), None);
        assert_eq!(ExactReal::sqrt_of(q(16)), ExactReal::Rational(q(4)));
    }

    #[test]
    fn sqrt_enclosure_brackets() {
        let iv = Interval::point(q(2)).sqrt_pos(40);
        assert!(&iv.lo * &iv.lo <= q(2));
        assert!(&iv.hi * &iv.hi >= q(2));
        assert!(q_to_f64(&(&iv.hi - &iv.lo)) < 1e-11);
    }

    #[test]
    fn pi_enclosure() {
        let pi = pi_interval();
        assert!(pi.lo < pi.hi);
        assert!((pi.midpoint_f64() - std::f64::consts::PI).abs() < 1e-15);
    }
}
