//! Finitely generated subgroups of `(𝔤, ⋄)` given by generators.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::closure::show;
use crate::error::{Error, Result};
use crate::groups::{HeisElem, HeisenbergSubgroup};
use crate::lattice::IntegerLattice;
use crate::lie::{Algebra, LieElement};
use crate::rational::{lcm_all, qi, Q};

/// Scaling `(A, B, C) ↦ (αA, βB, αβC)` of group entries that sends a
/// subgroup of `H(Q)` into `H(Z)`; it is an automorphism of `H(Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Embedding {
    alpha: BigInt,
    beta: BigInt,
    subgroup: HeisenbergSubgroup,
}

fn group_entries(x: &LieElement) -> [Q; 3] {
    let c = x.coords();
    let half = Q::new(1.into(), 2.into());
    [c[0].clone(), c[1].clone(), &c[2] + &c[0] * &c[1] * half]
}

impl Embedding {
    fn new(gens: &[LieElement]) -> Result<Self> {
        let entries: Vec<[Q; 3]> = gens.iter().map(group_entries).collect();
        let alpha = lcm_all(entries.iter().map(|e| e[0].denom()));
        let q0 = lcm_all(entries.iter().map(|e| e[1].denom()));
        let scaled_c: Vec<Q> = entries.iter().map(|e| &e[2] * qi(&alpha) * qi(&q0)).collect();
        let m = lcm_all(scaled_c.iter().map(|c| c.denom()));
        let beta = q0 * m;
        let mut ints = Vec::with_capacity(gens.len());
        for e in &entries {
            ints.push(Self::to_int(&alpha, &beta, e).ok_or_else(|| Error::usage("generator escaped the integer scaling"))?);
        }
        Ok(Embedding {
            subgroup: HeisenbergSubgroup::generated(&ints),
            alpha,
            beta,
        })
    }

    fn to_int(alpha: &BigInt, beta: &BigInt, e: &[Q; 3]) -> Option<HeisElem> {
        let a = &e[0] * qi(alpha);
        let b = &e[1] * qi(beta);
        let c = &e[2] * qi(alpha) * qi(beta);
        if !(a.is_integer() && b.is_integer() && c.is_integer()) {
            return None;
        }
        Some(HeisElem::new(
            a.to_integer().to_i64()?,
            b.to_integer().to_i64()?,
            c.to_integer().to_i64()?,
        ))
    }

    fn contains(&self, x: &LieElement) -> bool {
        match Self::to_int(&self.alpha, &self.beta, &group_entries(x)) {
            Some(g) => self.subgroup.contains(g),
            None => false,
        }
    }
}

/// The subgroup `Γ = ⟨exp g_1, ..., exp g_k⟩`, stored by the logarithms of
/// its generators. Heisenberg subgroups carry an exact membership test.
#[derive(Debug, Clone)]
pub struct DiscreteGroup {
    algebra: Algebra,
    generators: Vec<LieElement>,
    exact: Option<Embedding>,
}

impl DiscreteGroup {
    pub fn new(algebra: &Algebra, generators: Vec<LieElement>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.algebra() != algebra) {
            return Err(Error::usage(format!("generator in {} for a group in {}", g.algebra().id(), algebra.id())));
        }
        let exact = match algebra {
            Algebra::Heisenberg => Some(Embedding::new(&generators)?),
            Algebra::Free(_) => None,
        };
        Ok(DiscreteGroup {
            algebra: algebra.clone(),
            generators,
            exact,
        })
    }

    /// `⟨exp L⟩`, generated by the exponentials of the lattice basis.
    pub fn from_lattice(algebra: &Algebra, lattice: &IntegerLattice) -> Result<Self> {
        let gens = lattice
            .basis()
            .into_iter()
            .map(|v| algebra.element(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, gens)
    }

    /// The integer Heisenberg group `H(Z)`.
    pub fn integer_heisenberg() -> Self {
        Self::new(&Algebra::Heisenberg, vec![HeisElem::X.log(), HeisElem::Y.log()]).expect("Heisenberg generators")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[LieElement] {
        &self.generators
    }

    pub fn has_exact_membership(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact membership of `x ∈ log Γ`, when available.
    pub fn contains(&self, x: &LieElement) -> Option<bool> {
        self.exact.as_ref().map(|e| x.algebra() == &self.algebra && e.contains(x))
    }

    pub fn heisenberg_subgroup(&self) -> Option<&HeisenbergSubgroup> {
        self.exact.as_ref().map(|e| &e.subgroup)
    }

    /// Logarithms of the elements of word length at most `radius` whose
    /// quasi-norm is at most `pnorm_cap`, in coordinate order.
    pub fn enumerate(&self, radius: usize, pnorm_cap: &Q, budget: u64) -> Result<Vec<LieElement>> {
        let mut steps: Vec<LieElement> = self.generators.clone();
        steps.extend(self.generators.iter().map(LieElement::neg));
        let zero = self.algebra.zero();
        let mut seen: HashSet<Vec<Q>> = HashSet::from([zero.coords().to_vec()]);
        let mut frontier = vec![zero];
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &frontier {
                for s in &steps {
                    let y = x.bch(s)?;
                    if seen.insert(y.coords().to_vec()) {
                        if seen.len() as u64 > budget {
                            return Err(Error::resource("elements of the word ball", budget));
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<Q>> = seen.into_iter().collect();
        out.sort();
        Ok(out
            .into_iter()
            .map(|c| self.algebra.element(c).expect("dimension preserved"))
            .filter(|x| x.pnorm_le(pnorm_cap))
            .collect())
    }
}

/// `[Γ_sup : Γ_sub]` by breadth-first enumeration of right cosets `Γ_sub g`.
pub fn multiplicative_index(sub: &DiscreteGroup, sup: &DiscreteGroup, budget: u64) -> Result<BigInt> {
    if sub.algebra != sup.algebra {
        return Err(Error::usage("subgroups live in different algebras"));
    }
    if !sub.has_exact_membership() || !sup.has_exact_membership() {
        return Err(Error::usage(format!(
            "coset enumeration needs exact membership, unavailable in {}",
            sub.algebra.id()
        )));
    }
    for g in &sub.generators {
        if sup.contains(g) != Some(true) {
            return Err(Error::usage(format!("not a subgroup: generator {} is missing from the larger group", show(g))));
        }
    }
    let mut steps: Vec<LieElement> = sup.generators.clone();
    steps.extend(sup.generators.iter().map(LieElement::neg));
    let mut reps: Vec<LieElement> = vec![sup.algebra.zero()];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for s in &steps {
            let g = reps[i].bch(s)?;
            let known = reps
                .iter()
                .any(|r| sub.contains(&g.bch(&r.neg()).expect("same algebra")) == Some(true));
            if !known {
                if reps.len() as u64 >= budget {
                    return Err(Error::resource("cosets in the enumeration", budget));
                }
                reps.push(g);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    Ok(BigInt::from(reps.len()))
}

/// Canonical forms of distinct generating sets, for tests and reports.
pub fn canonical_strings(groups: &[DiscreteGroup]) -> BTreeSet<String> {
    groups
        .iter()
        .filter_map(|g| g.heisenberg_subgroup().map(|h| h.canonical_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn heis(a: Q, b: Q, c: Q) -> LieElement {
        Algebra::Heisenberg.element(vec![a, b, c]).unwrap()
    }

    #[test]
    fn integer_heisenberg_membership() {
        let g = DiscreteGroup::integer_heisenberg();
        assert_eq!(g.contains(&heis(q(1), q(1), qr(1, 2))), Some(true));
        assert_eq!(g.contains(&heis(q(1), q(1), q(0))), Some(false));
        assert_eq!(g.contains(&heis(q(1), q(1), qr(-1, 2))), Some(true));
        assert_eq!(g.contains(&heis(q(0), q(0), q(1))), Some(true));
        assert_eq!(g.contains(&heis(q(0), q(0), qr(1, 2))), Some(false));
    }

    #[test]
    fn rational_generators_are_embedded() {
        let l = IntegerLattice::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), qr(1, 2)]]).unwrap();
        let g = DiscreteGroup::from_lattice(&Algebra::Heisenberg, &l).unwrap();
        assert_eq!(g.contains(&heis(q(1), q(1), q(0))), Some(true));
        assert_eq!(g.contains(&heis(q(3), q(-1), qr(7, 2))), Some(true));
        assert_eq!(g.contains(&heis(q(0), q(0), qr(1, 4))), Some(false));
    }

    #[test]
    fn coset_enumeration() {
        let whole = DiscreteGroup::integer_heisenberg();
        assert_eq!(multiplicative_index(&whole, &whole, 100).unwrap(), BigInt::from(1));
        let sq = DiscreteGroup::new(&Algebra::Heisenberg, vec![HeisElem::X.pow(2).log(), HeisElem::Y.pow(2).log()]).unwrap();
        assert_eq!(multiplicative_index(&sq, &whole, 100).unwrap(), BigInt::from(16));
        assert!(matches!(multiplicative_index(&whole, &sq, 100), Err(Error::Usage(_))));
        assert!(matches!(multiplicative_index(&sq, &whole, 5), Err(Error::Resource { .. })));
    }

    #[test]
    fn enumeration_is_symmetric_and_bounded() {
        let g = DiscreteGroup::integer_heisenberg();
        let elems = g.enumerate(4, &q(64), 10_000).unwrap();
        for x in &elems {
            assert!(elems.contains(&x.neg()));
        }
        assert!(elems.iter().any(|x| x.coords() == [q(0), q(0), q(1)]));
    }
}
