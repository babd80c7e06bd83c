//! Desk checks of the combinatorial lemmas behind the reduction to
//! nilpotent groups: generating sets of finite-index subgroups, counting
//! along two chains, and balls of cyclic quotients.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::concrete::{ConcreteGroup, Element};
use crate::error::{Error, Result};
use crate::lattice::{Index, IntegerLattice};

/// Rooted Cayley ball as a labelled graph: vertices in breadth-first order
/// and, for each vertex and each generator of `S̄ \ {id}`, the index of the
/// neighbour inside the ball.
pub fn labelled_ball(g: &ConcreteGroup, radius: usize, budget: u64) -> Result<Vec<Vec<Option<usize>>>> {
    let order: Vec<Element> = g.ball_layers(radius, budget)?.concat();
    let position: std::collections::HashMap<&Element, usize> = order.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let steps = g.closed_generators();
    Ok(order
        .iter()
        .map(|x| steps[1..].iter().map(|s| position.get(&g.mul(x, s)).copied()).collect())
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityVerdict {
    pub n: i64,
    pub k: u32,
    pub radius: usize,
    pub free_ball_size: usize,
    pub quotient_ball_size: usize,
    pub isomorphic: bool,
}

/// Compares the balls of radius `2^{k-1} - 1` in `Z` and `Z/n` for the
/// generator `1`.
pub fn injectivity_radius_check(n: i64, k: u32, budget: u64) -> Result<InjectivityVerdict> {
    if n < 1 || !(1..=40).contains(&k) {
        return Err(Error::usage("need n ≥ 1 and 1 ≤ k ≤ 40"));
    }
    let radius = (1usize << (k - 1)) - 1;
    let z = labelled_ball(&ConcreteGroup::finite_abelian(vec![0])?, radius, budget)?;
    let zn = labelled_ball(&ConcreteGroup::finite_abelian(vec![n])?, radius, budget)?;
    Ok(InjectivityVerdict {
        n,
        k,
        radius,
        free_ball_size: z.len(),
        quotient_ball_size: zn.len(),
        isomorphic: z == zn,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteIndexVerdict {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub radius: usize,
    pub intersection_size: usize,
    pub generated_order: usize,
    pub holds: bool,
}

/// Checks that `(S̄)^{2n-1} ∩ H` generates `H` when `[G : H] = n`.
pub fn finite_index_generating_check(g: &ConcreteGroup, h_gens: &[Element], budget: u64) -> Result<FiniteIndexVerdict> {
    let group = g.elements(budget)?;
    let h = g.subgroup_elements(h_gens, budget)?;
    let index = group.len() / h.len();
    let radius = 2 * index - 1;
    let members: HashSet<&Element> = h.iter().collect();
    let inside: Vec<Element> = g
        .ball(radius, budget)?
        .into_iter()
        .filter(|x| members.contains(x))
        .collect();
    let generated = g.subgroup_elements(&inside, budget)?;
    Ok(FiniteIndexVerdict {
        group_order: group.len(),
        subgroup_order: h.len(),
        index,
        radius,
        intersection_size: inside.len(),
        holds: generated == h,
        generated_order: generated.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainVerdict {
    pub distinct: usize,
    pub sub_distinct: usize,
    pub max_index: String,
    pub bound: usize,
    pub holds: bool,
}

fn distinct(chain: &[IntegerLattice]) -> usize {
    let mut seen: Vec<&IntegerLattice> = Vec::new();
    for l in chain {
        if !seen.contains(&l) {
            seen.push(l);
        }
    }
    seen.len()
}

fn floor_log2(n: &BigInt) -> usize {
    (n.bits() - 1) as usize
}

fn check_increasing(chain: &[IntegerLattice], name: &str) -> Result<()> {
    for (i, w) in chain.windows(2).enumerate() {
        if !w[1].contains_lattice(&w[0]) {
            return Err(Error::usage(format!("{name} is not increasing at position {i}")));
        }
    }
    Ok(())
}

/// `#{Hᵢ} ≤ (1 + ⌊log₂ maxᵢ [Hᵢ : H′ᵢ]⌋) · #{H′ᵢ}` for chains of subgroups
/// of `Z^d`.
pub fn chain_count_check(chain: &[IntegerLattice], subchain: &[IntegerLattice]) -> Result<ChainVerdict> {
    if chain.len() != subchain.len() || chain.is_empty() {
        return Err(Error::usage("the chains must be non-empty and of equal length"));
    }
    check_increasing(chain, "the chain")?;
    check_increasing(subchain, "the subchain")?;
    let mut max_index = BigInt::from(1);
    for (i, (h, hp)) in chain.iter().zip(subchain).enumerate() {
        match hp.index_in(h)? {
            Index::Finite(n) => max_index = max_index.max(n),
            Index::Infinite => return Err(Error::usage(format!("infinite index at position {i}"))),
        }
    }
    Ok(verdict(distinct(chain), distinct(subchain), max_index))
}

fn verdict(d: usize, sd: usize, max_index: BigInt) -> ChainVerdict {
    let bound = (1 + floor_log2(&max_index)) * sd;
    ChainVerdict {
        distinct: d,
        sub_distinct: sd,
        max_index: max_index.to_string(),
        bound,
        holds: d <= bound,
    }
}

/// The specialization `H′ᵢ = Hᵢ ∩ G′` with the index `[Z^d : G′]` in the bound.
pub fn chain_count_check_finite_index(chain: &[IntegerLattice], g_prime: &IntegerLattice) -> Result<ChainVerdict> {
    let d = g_prime.dim();
    let index = match g_prime.index_in(&IntegerLattice::standard(d))? {
        Index::Finite(n) => n,
        Index::Infinite => return Err(Error::usage("G′ must have finite index")),
    };
    let sub = chain.iter().map(|h| h.intersect(g_prime)).collect::<Result<Vec<_>>>()?;
    let lemma = chain_count_check(chain, &sub)?;
    let mut v = verdict(lemma.distinct, lemma.sub_distinct, index);
    v.holds = v.holds && lemma.holds;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn injectivity_examples() {
        let v = injectivity_radius_check(5, 2, 1000).unwrap();
        assert!(v.isomorphic && v.radius == 1 && v.free_ball_size == 3);
        let v = injectivity_radius_check(100, 5, 1000).unwrap();
        assert!(v.isomorphic && v.radius == 15);
        let v = injectivity_radius_check(5, 3, 1000).unwrap();
        assert_eq!(v.radius, 3);
        assert!(!v.isomorphic);
        let v = injectivity_radius_check(6, 3, 1000).unwrap();
        assert!(!v.isomorphic, "radius 3 reaches the antipode of Z/6");
    }

    #[test]
    fn finite_index_examples() {
        let z6 = ConcreteGroup::finite_abelian(vec![6]).unwrap();
        let v = finite_index_generating_check(&z6, &[vec![2]], 1000).unwrap();
        assert_eq!((v.index, v.radius, v.intersection_size), (2, 3, 3));
        assert!(v.holds);
        let v = finite_index_generating_check(&z6, &[vec![1]], 1000).unwrap();
        assert!(v.holds && v.index == 1);
        let h3 = ConcreteGroup::heisenberg_mod(3).unwrap();
        let v = finite_index_generating_check(&h3, &[vec![0, 0, 1]], 1000).unwrap();
        assert_eq!((v.group_order, v.index, v.radius), (27, 9, 17));
        assert!(v.holds);
    }

    fn lat(rows: &[Vec<i64>]) -> IntegerLattice {
        IntegerLattice::span_integer(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn chain_examples() {
        let chain = vec![
            lat(&[vec![8, 0], vec![0, 8]]),
            lat(&[vec![4, 0], vec![0, 8]]),
            lat(&[vec![4, 0], vec![0, 4]]),
            lat(&[vec![1, 0], vec![0, 4]]),
        ];
        let doubled: Vec<IntegerLattice> = chain.iter().map(|l| l.scale(&q(2))).collect();
        let v = chain_count_check(&chain, &doubled).unwrap();
        assert_eq!((v.distinct, v.sub_distinct, v.bound), (4, 4, 12));
        assert!(v.holds);
        let v = chain_count_check(&chain, &chain).unwrap();
        assert_eq!((v.bound, v.holds), (4, true));

        let tight: Vec<IntegerLattice> = [8, 4, 2, 1].iter().map(|&n| lat(&[vec![n]])).collect();
        let fixed = vec![lat(&[vec![8]]); 4];
        let v = chain_count_check(&tight, &fixed).unwrap();
        assert_eq!((v.distinct, v.bound), (4, 4));
        assert!(v.holds);

        let v = chain_count_check_finite_index(&chain, &lat(&[vec![2, 0], vec![0, 2]])).unwrap();
        assert!(v.holds && v.max_index == "4");

        let line = vec![lat(&[vec![1, 0]]), lat(&[vec![1, 0], vec![0, 1]])];
        assert!(matches!(chain_count_check(&line, &[IntegerLattice::zero(2), lat(&[vec![1, 0]])]), Err(Error::Usage(_))));
    }
}
