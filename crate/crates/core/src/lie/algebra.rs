//! Graded nilpotent Lie algebras and their elements.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hall::HallBasis;
use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, rational_root, Q};

/// A graded nilpotent Lie algebra with a fixed linear basis.
///
/// `Heisenberg` is the three-dimensional algebra in `(a, b, c)` coordinates
/// with `[(a,b,c), (x,y,z)] = (0, 0, ay - bx)`.
#[derive(Clone)]
pub enum Algebra {
    Free(Arc<HallBasis>),
    Heisenberg,
}

const HEISENBERG_DEGREES: [usize; 3] = [1, 1, 2];

impl Algebra {
    pub fn free(generators: usize, step: usize) -> Result<Self> {
        Ok(Algebra::Free(Arc::new(HallBasis::new(generators, step)?)))
    }

    /// Parses identifiers produced by [`Algebra::id`].
    pub fn from_id(id: &str) -> Result<Self> {
        if id == "heisenberg" {
            return Ok(Algebra::Heisenberg);
        }
        let parsed = id.strip_prefix("free-k").and_then(|rest| {
            let (k, s) = rest.split_once("-s")?;
            Some((k.parse::<usize>().ok()?, s.parse::<usize>().ok()?))
        });
        match parsed {
            Some((k, s)) => Algebra::free(k, s),
            None => Err(Error::usage(format!("unknown basis id `{id}`"))),
        }
    }

    pub fn id(&self) -> String {
        match self {
            Algebra::Free(b) => b.id(),
            Algebra::Heisenberg => "heisenberg".into(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Algebra::Free(b) => b.dimension(),
            Algebra::Heisenberg => 3,
        }
    }

    pub fn step(&self) -> usize {
        match self {
            Algebra::Free(b) => b.step(),
            Algebra::Heisenberg => 2,
        }
    }

    pub fn degree(&self, index: usize) -> usize {
        match self {
            Algebra::Free(b) => b.degree(index),
            Algebra::Heisenberg => HEISENBERG_DEGREES[index],
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.dimension()).map(|i| self.degree(i)).collect()
    }

    /// Homogeneous dimension `sum_i i * dim V_i`.
    pub fn homogeneous_dimension(&self) -> usize {
        self.degrees().iter().sum()
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        match (self, other) {
            (Algebra::Heisenberg, Algebra::Heisenberg) => true,
            (Algebra::Free(a), Algebra::Free(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => false,
        }
    }

    pub fn bracket_coords(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        match self {
            Algebra::Free(b) => b.bracket_coords(x, y),
            Algebra::Heisenberg => {
                vec![Q::zero(), Q::zero(), &x[0] * &y[1] - &x[1] * &y[0]]
            }
        }
    }

    pub fn zero(&self) -> LieElement {
        LieElement {
            algebra: self.clone(),
            coords: vec![Q::zero(); self.dimension()],
        }
    }

    pub fn element(&self, coords: Vec<Q>) -> Result<LieElement> {
        if coords.len() != self.dimension() {
            return Err(Error::usage(format!(
                "expected {} coordinates for {}, got {}",
                self.dimension(),
                self.id(),
                coords.len()
            )));
        }
        Ok(LieElement {
            algebra: self.clone(),
            coords,
        })
    }

    /// Basis vector `e_index`.
    pub fn unit(&self, index: usize) -> LieElement {
        let mut e = self.zero();
        e.coords[index] = Q::one();
        e
    }

    /// The `g`-th generator of the algebra.
    pub fn generator(&self, g: usize) -> LieElement {
        self.unit(g)
    }

    pub fn generator_count(&self) -> usize {
        match self {
            Algebra::Free(b) => b.generators(),
            Algebra::Heisenberg => 2,
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Algebra {}

/// An element of a graded nilpotent Lie algebra in basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    algebra: Algebra,
    coords: Vec<Q>,
}

impl LieElement {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &LieElement) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "basis mismatch: {} vs {}",
                self.algebra.id(),
                other.algebra.id()
            )))
        }
    }

    fn with_coords(&self, coords: Vec<Q>) -> LieElement {
        LieElement {
            algebra: self.algebra.clone(),
            coords,
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check_same(other)?;
        Ok(self.with_coords(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.check_same(other)?;
        Ok(self.with_coords(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> LieElement {
        self.with_coords(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Q) -> LieElement {
        self.with_coords(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        self.check_same(other)?;
        Ok(self.with_coords(self.algebra.bracket_coords(&self.coords, &other.coords)))
    }

    /// Group law `X ⋄ Y = log(exp X exp Y)` given by the truncated BCH series.
    pub fn bch(&self, other: &LieElement) -> Result<LieElement> {
        self.check_same(other)?;
        Ok(match &self.algebra {
            Algebra::Heisenberg => {
                let (x, y) = (&self.coords, &other.coords);
                let half = Q::new(1.into(), 2.into());
                let c = &x[2] + &y[2] + (&x[0] * &y[1] - &x[1] * &y[0]) * half;
                self.with_coords(vec![&x[0] + &y[0], &x[1] + &y[1], c])
            }
            Algebra::Free(_) => bch_series(self.algebra.step()).evaluate(self, other),
        })
    }

    /// Group commutator `log(e^X e^Y e^{-X} e^{-Y})`.
    pub fn group_commutator(&self, other: &LieElement) -> Result<LieElement> {
        self.bch(other)?.bch(&self.neg())?.bch(&other.neg())
    }

    /// Degree-`i` homogeneous part, as a full-length coordinate vector.
    pub fn graded_part(&self, degree: usize) -> LieElement {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if self.algebra.degree(i) == degree { c.clone() } else { Q::zero() })
            .collect();
        self.with_coords(coords)
    }

    /// Dilation `δ_λ`, scaling the degree-`i` part by `λ^i`.
    pub fn dilate(&self, lambda: &Q) -> Result<LieElement> {
        if !lambda.is_positive() {
            return Err(Error::usage(format!("dilation factor must be positive, got {lambda}")));
        }
        let powers: Vec<Q> = (0..=self.algebra.step())
            .scan(Q::one(), |p, _| {
                let cur = p.clone();
                *p *= lambda;
                Some(cur)
            })
            .collect();
        Ok(self.with_coords(
            self.coords
                .iter()
                .enumerate()
                .map(|(i, c)| c * &powers[self.algebra.degree(i)])
                .collect(),
        ))
    }

    /// `max |coordinate|` over basis elements of each degree, `norms[i-1]`.
    pub fn degree_norms(&self) -> Vec<Q> {
        let mut norms = vec![Q::zero(); self.algebra.step()];
        for (i, c) in self.coords.iter().enumerate() {
            let slot = &mut norms[self.algebra.degree(i) - 1];
            if c.abs() > *slot {
                *slot = c.abs();
            }
        }
        norms
    }

    /// Exact test of `pnorm(X) <= λ`, i.e. `‖X_i‖∞ <= λ^i` for every degree.
    pub fn pnorm_le(&self, lambda: &Q) -> bool {
        if lambda.is_negative() {
            return false;
        }
        let mut power = Q::one();
        for norm in self.degree_norms() {
            power *= lambda;
            if norm > power {
                return false;
            }
        }
        true
    }

    /// The quasi-norm `max_i ‖X_i‖∞^{1/i}` when it is rational.
    pub fn pnorm_exact(&self) -> Option<Q> {
        let mut best = Q::zero();
        for (i, norm) in self.degree_norms().iter().enumerate() {
            let root = rational_root(norm, (i + 1) as u32)?;
            if root > best {
                best = root;
            }
        }
        Some(best)
    }

    pub fn pnorm_f64(&self) -> f64 {
        self.degree_norms()
            .iter()
            .enumerate()
            .map(|(i, n)| crate::rational::q_to_f64(n).powf(1.0 / (i + 1) as f64))
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "{}({})", self.algebra.id(), coords.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct LieElementRepr {
    basis_id: String,
    coords: Vec<String>,
}

impl Serialize for LieElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieElementRepr {
            basis_id: self.algebra.id(),
            coords: self.coords.iter().map(fmt_q).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LieElementRepr::deserialize(d)?;
        let algebra = Algebra::from_id(&repr.basis_id).map_err(D::Error::custom)?;
        let coords = repr
            .coords
            .iter()
            .map(|c| parse_q(c).ok_or_else(|| D::Error::custom(format!("bad rational `{c}`"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        algebra.element(coords).map_err(D::Error::custom)
    }
}

/// `log(exp X exp Y)` written in the Hall basis on two generators.
pub struct BchSeries {
    basis: HallBasis,
    coefficients: Vec<Q>,
}

impl BchSeries {
    fn compute(step: usize) -> Self {
        let basis = HallBasis::new(2, step).expect("two-generator basis within limits");
        let x = Tensor::letter(2, step, 0);
        let y = Tensor::letter(2, step, 1);
        let z = x.exp().mul(&y.exp()).log();
        let coefficients = basis.from_tensor(&z);
        BchSeries { basis, coefficients }
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coefficients
    }

    /// Substitutes `x1 = X`, `x2 = Y` into the series.
    pub fn evaluate(&self, x: &LieElement, y: &LieElement) -> LieElement {
        use super::hall::HallTree;
        let step = x.algebra.step();
        let mut values: Vec<Option<LieElement>> = Vec::with_capacity(self.basis.dimension());
        let mut out = x.algebra.zero().coords;
        for (i, e) in self.basis.elements().iter().enumerate() {
            let value = if e.degree > step {
                None
            } else {
                match e.tree {
                    HallTree::Generator(0) => Some(x.clone()),
                    HallTree::Generator(_) => Some(y.clone()),
                    HallTree::Bracket(u, v) => match (&values[u], &values[v]) {
                        (Some(a), Some(b)) => {
                            let br = a.algebra.bracket_coords(&a.coords, &b.coords);
                            if br.iter().all(Zero::is_zero) {
                                None
                            } else {
                                Some(a.with_coords(br))
                            }
                        }
                        _ => None,
                    },
                }
            };
            if let Some(v) = &value {
                let c = &self.coefficients[i];
                if !c.is_zero() {
                    for (o, vi) in out.iter_mut().zip(&v.coords) {
                        *o += c * vi;
                    }
                }
            }
            values.push(value);
        }
        x.with_coords(out)
    }
}

/// Shared, lazily computed BCH series truncated at `step`.
pub fn bch_series(step: usize) -> Arc<BchSeries> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BchSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(step)
        .or_insert_with(|| Arc::new(BchSeries::compute(step)))
        .clone()
}
