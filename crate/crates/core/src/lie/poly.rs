//! Formal Lie polynomials in a handful of variables, and the Zassenhaus
//! factors computed from the BCH group law.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::algebra::{Algebra, LieElement};
use super::hall::{HallBasis, HallTree};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Bracketing tree over formal variables `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LieMonomial {
    Var(usize),
    Bracket(Box<LieMonomial>, Box<LieMonomial>),
}

impl LieMonomial {
    pub fn bracket(a: LieMonomial, b: LieMonomial) -> Self {
        LieMonomial::Bracket(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            LieMonomial::Var(_) => 1,
            LieMonomial::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn from_hall(basis: &HallBasis, index: usize) -> Self {
        match basis.elements()[index].tree {
            HallTree::Generator(g) => LieMonomial::Var(g),
            HallTree::Bracket(u, v) => {
                LieMonomial::bracket(Self::from_hall(basis, u), Self::from_hall(basis, v))
            }
        }
    }

    pub fn evaluate(&self, vars: &[LieElement]) -> Result<LieElement> {
        match self {
            LieMonomial::Var(i) => vars
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::usage(format!("monomial uses variable {i}, only {} given", vars.len()))),
            LieMonomial::Bracket(a, b) => a.evaluate(vars)?.bracket(&b.evaluate(vars)?),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, names: &[&str]) -> fmt::Result {
        match self {
            LieMonomial::Var(i) => match names.get(*i) {
                Some(n) => f.write_str(n),
                None => write!(f, "x{}", i + 1),
            },
            LieMonomial::Bracket(a, b) => {
                f.write_str("[")?;
                a.write(f, names)?;
                f.write_str(",")?;
                b.write(f, names)?;
                f.write_str("]")
            }
        }
    }
}

const XY: [&str; 2] = ["X", "Y"];

impl fmt::Display for LieMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, &XY)
    }
}

impl Serialize for LieMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiePolynomialTerm {
    #[serde(with = "crate::rational::qstr")]
    pub coefficient: Q,
    pub monomial: LieMonomial,
    pub degree: usize,
}

impl LiePolynomialTerm {
    pub fn new(coefficient: Q, monomial: LieMonomial) -> Self {
        let degree = monomial.degree();
        LiePolynomialTerm {
            coefficient,
            monomial,
            degree,
        }
    }
}

/// Evaluates `Σ c·m(vars)` inside the algebra of the variables.
pub fn evaluate_polynomial(terms: &[LiePolynomialTerm], vars: &[LieElement]) -> Result<LieElement> {
    let Some(first) = vars.first() else {
        return Err(Error::usage("polynomial evaluation needs at least one variable"));
    };
    let mut acc = first.algebra().zero();
    for t in terms {
        acc = acc.add(&t.monomial.evaluate(vars)?.scale(&t.coefficient))?;
    }
    Ok(acc)
}

/// Homogeneous Zassenhaus factors `L̃_2 .. L̃_s` with
/// `exp(X+Y) = exp(X) exp(Y) exp(L̃_2) ⋯ exp(L̃_s)`, each written in the
/// Hall basis on `X = x1`, `Y = x2`.
pub fn zassenhaus_terms(step: usize) -> Result<Vec<Vec<LiePolynomialTerm>>> {
    if step == 0 {
        return Err(Error::usage("step must be at least 1"));
    }
    if step == 1 {
        return Ok(Vec::new());
    }
    let algebra = Algebra::free(2, step)?;
    let Algebra::Free(basis) = &algebra else { unreachable!() };
    let x = algebra.generator(0);
    let y = algebra.generator(1);
    // R = log(e^{-Y} e^{-X} e^{X+Y}) = L̃_2 ⋄ L̃_3 ⋄ ⋯
    let mut rest = y.neg().bch(&x.neg())?.bch(&x.add(&y)?)?;
    let mut out = Vec::with_capacity(step - 1);
    for m in 2..=step {
        let factor = rest.graded_part(m);
        out.push(
            basis
                .degree_range(m)
                .filter(|&i| !factor.coords()[i].is_zero())
                .map(|i| LiePolynomialTerm::new(factor.coords()[i].clone(), LieMonomial::from_hall(basis, i)))
                .collect(),
        );
        rest = factor.neg().bch(&rest)?;
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

/// Right-hand side `X ⋄ Y ⋄ L̃_2(X,Y) ⋄ ⋯ ⋄ L̃_s(X,Y)` of the Zassenhaus identity.
pub fn zassenhaus_product(
    terms: &[Vec<LiePolynomialTerm>],
    x: &LieElement,
    y: &LieElement,
) -> Result<LieElement> {
    let vars = [x.clone(), y.clone()];
    let mut acc = x.bch(y)?;
    for group in terms {
        acc = acc.bch(&evaluate_polynomial(group, &vars)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn var(i: usize) -> LieMonomial {
        LieMonomial::Var(i)
    }

    fn br(a: LieMonomial, b: LieMonomial) -> LieMonomial {
        LieMonomial::bracket(a, b)
    }

    #[test]
    fn step_one_is_empty() {
        assert!(zassenhaus_terms(1).unwrap().is_empty());
    }

    #[test]
    fn degree_two_factor() {
        let terms = zassenhaus_terms(2).unwrap();
        assert_eq!(terms.len(), 1);
        let alg = Algebra::free(2, 2).unwrap();
        let vars = [alg.generator(0), alg.generator(1)];
        let printed = [LiePolynomialTerm::new(qr(-1, 2), br(var(0), var(1)))];
        assert_eq!(
            evaluate_polynomial(&terms[0], &vars).unwrap(),
            evaluate_polynomial(&printed, &vars).unwrap()
        );
    }

    #[test]
    fn degree_three_and_four_factors() {
        let terms = zassenhaus_terms(4).unwrap();
        let alg = Algebra::free(2, 4).unwrap();
        let vars = [alg.generator(0), alg.generator(1)];
        let (x, y) = (var(0), var(1));
        let xy = br(x.clone(), y.clone());
        let l3 = [
            LiePolynomialTerm::new(qr(2, 6), br(y.clone(), xy.clone())),
            LiePolynomialTerm::new(qr(1, 6), br(x.clone(), xy.clone())),
        ];
        assert_eq!(
            evaluate_polynomial(&terms[1], &vars).unwrap(),
            evaluate_polynomial(&l3, &vars).unwrap()
        );
        let xyx = br(xy.clone(), x.clone());
        let xyy = br(xy.clone(), y.clone());
        let l4 = [
            LiePolynomialTerm::new(qr(-1, 24), br(xyx.clone(), x.clone())),
            LiePolynomialTerm::new(qr(-3, 24), br(xyx, y.clone())),
            LiePolynomialTerm::new(qr(-3, 24), br(xyy, y)),
        ];
        assert_eq!(
            evaluate_polynomial(&terms[2], &vars).unwrap(),
            evaluate_polynomial(&l4, &vars).unwrap()
        );
    }

    #[test]
    fn terms_are_homogeneous() {
        for (i, group) in zassenhaus_terms(5).unwrap().iter().enumerate() {
            assert!(!group.is_empty());
            assert!(group.iter().all(|t| t.degree == i + 2 && t.monomial.degree() == t.degree));
        }
    }

    #[test]
    fn identity_holds_on_a_sample() {
        let alg = Algebra::free(2, 4).unwrap();
        let terms = zassenhaus_terms(4).unwrap();
        let x = alg.element(vec![q(1), qr(2, 3), q(-1), q(0), qr(1, 5), q(2), q(0), qr(-7, 2)]).unwrap();
        let y = alg.element(vec![qr(-1, 2), q(3), q(0), q(1), q(0), qr(1, 3), q(1), q(0)]).unwrap();
        assert_eq!(zassenhaus_product(&terms, &x, &y).unwrap(), x.add(&y).unwrap());
    }

    #[test]
    fn display_uses_x_and_y() {
        assert_eq!(br(var(1), br(var(0), var(1))).to_string(), "[Y,[X,Y]]");
    }
}
