//! Breadth-first exploration of subgroups by dyadic word-length scales and
//! the abelian detector of new relations.

use serde::Serialize;

use super::concrete::{ConcreteGroup, Element, GroupKind};
use super::heisenberg::{HeisElem, HeisenbergSubgroup};
use super::interval::IntervalBall;
use crate::error::{Error, Result};
use crate::lattice::{explore_with_scales, lattice_points, ConvexBody, IntegerLattice};
use crate::rational::q;

/// One row per scale `n`; `changed[i]` records `H_{n+1} ≠ H_n`.
#[derive(Debug, Clone, Serialize)]
pub struct ScaleReport {
    pub scales: Vec<i64>,
    pub objects: Vec<String>,
    pub changed: Vec<bool>,
    pub change_scales: Vec<i64>,
    pub change_count: usize,
    /// Scales below the detector's floor.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub not_computed: Vec<i64>,
}

impl ScaleReport {
    pub const CSV_HEADER: [&'static str; 3] = ["scale", "canonical", "changed"];

    /// Builds the report from the terms `H_{first}, ..., H_{last+1}`.
    fn from_chain(first: i64, objects: Vec<String>) -> Self {
        let rows = objects.len() - 1;
        let scales: Vec<i64> = (0..rows as i64).map(|i| first + i).collect();
        let changed: Vec<bool> = objects.windows(2).map(|w| w[0] != w[1]).collect();
        let change_scales: Vec<i64> = scales.iter().zip(&changed).filter(|(_, c)| **c).map(|(s, _)| *s).collect();
        ScaleReport {
            change_count: change_scales.len(),
            scales,
            objects: objects[..rows].to_vec(),
            changed,
            change_scales,
            not_computed: (0..first).collect(),
        }
    }

    pub fn csv_rows(&self) -> Vec<[String; 3]> {
        self.scales
            .iter()
            .zip(&self.objects)
            .zip(&self.changed)
            .map(|((s, o), c)| [s.to_string(), o.clone(), c.to_string()])
            .collect()
    }
}

fn lattice_string(l: &IntegerLattice) -> String {
    let rows: Vec<String> = l.basis_strings().iter().map(|r| format!("({})", r.join(","))).collect();
    format!("<{}>", rows.join(","))
}

fn relation_lattice(moduli: &[i64]) -> Result<IntegerLattice> {
    let k = moduli.len();
    let rows: Vec<Vec<i64>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, &n)| n != 0)
        .map(|(i, &n)| (0..k).map(|j| if i == j { n } else { 0 }).collect())
        .collect();
    IntegerLattice::span_integer(k, &rows)
}

/// `H_n = ⟨h ∈ H : |h|_S ≤ 2ⁿ⟩` for `n = 0..=n_max`.
///
/// Products of cyclic groups need the standard generators and are lifted to
/// `Z^k` together with the relations `nᵢ eᵢ`; `H(Z)` uses exact balls of
/// radius `2ⁿ` and canonical joins.
pub fn subgroup_scales(g: &ConcreteGroup, h_gens: &[Element], n_max: u32, budget: u64) -> Result<ScaleReport> {
    if n_max > 20 {
        return Err(Error::usage("scales above 20 are not supported"));
    }
    match g.kind() {
        GroupKind::FiniteAbelian { moduli } => abelian_subgroup_scales(g, moduli, h_gens, n_max, budget),
        GroupKind::HeisenbergZ => {
            let gens: Vec<HeisElem> = h_gens.iter().map(|e| HeisElem::new(e[0], e[1], e[2])).collect();
            heisenberg_subgroup_scales(g, &HeisenbergSubgroup::generated(&gens), n_max, budget)
        }
        GroupKind::HeisenbergModM { .. } => Err(Error::usage("subgroup exploration in H(Z/m) is not supported")),
    }
}

fn abelian_subgroup_scales(
    g: &ConcreteGroup,
    moduli: &[i64],
    h_gens: &[Element],
    n_max: u32,
    budget: u64,
) -> Result<ScaleReport> {
    if !g.has_standard_generators() {
        return Err(Error::usage("abelian exploration needs the standard generators"));
    }
    let k = moduli.len();
    let relations = relation_lattice(moduli)?;
    let lift = IntegerLattice::span_integer(k, h_gens)?.join(&relations)?;
    let mut objects = Vec::new();
    for n in 0..=n_max + 1 {
        let ball = ConvexBody::l1_ball(k, q(1i64 << n))?;
        let pts = lattice_points(&lift, &ball, budget)?;
        let term = IntegerLattice::span(k, &pts)?.join(&relations)?;
        objects.push(lattice_string(&term));
        if term == lift {
            break;
        }
    }
    objects.resize(n_max as usize + 2, lattice_string(&lift));
    Ok(ScaleReport::from_chain(0, objects))
}

/// Adds the elements of `target` lying in the ball to `current`.
fn absorb(current: HeisenbergSubgroup, target: &HeisenbergSubgroup, ball: &IntervalBall) -> HeisenbergSubgroup {
    let m = target.center();
    let mut cur = current;
    for ((a, b), fiber) in ball.cells() {
        let Some(c0) = target.corner_over(a, b) else { continue };
        for &(lo, hi) in fiber {
            let first = if m == 0 {
                c0
            } else {
                lo + (c0 - lo).rem_euclid(m)
            };
            if first < lo || first > hi {
                continue;
            }
            let mut candidates = vec![HeisElem::new(a, b, first)];
            if m != 0 && first + m <= hi {
                candidates.push(HeisElem::new(0, 0, m));
            }
            for g in candidates {
                if !cur.contains(g) {
                    cur = cur.with(&[g]);
                }
            }
        }
    }
    cur
}

fn heisenberg_subgroup_scales(
    g: &ConcreteGroup,
    target: &HeisenbergSubgroup,
    n_max: u32,
    budget: u64,
) -> Result<ScaleReport> {
    let gens: Vec<(i64, i64, i64)> = g.generators().iter().map(|e| (e[0], e[1], e[2])).collect();
    let mut ball = IntervalBall::from_generators(&gens, budget)?;
    let mut current = HeisenbergSubgroup::trivial();
    let mut objects = Vec::new();
    for n in 0..=n_max + 1 {
        ball.grow_to(1usize << n)?;
        current = absorb(current, target, &ball);
        objects.push(current.canonical_string());
        if &current == target {
            break;
        }
    }
    objects.resize(n_max as usize + 2, target.canonical_string());
    Ok(ScaleReport::from_chain(0, objects))
}

/// New relations on scales `2..=k_max` for `Π Z/nᵢ` with standard
/// generators: scale `n` is new when the relation lattice spanned inside the
/// `ℓ1`-ball of radius `2^{n+1}` exceeds the one inside radius `2ⁿ`.
pub fn abelian_relation_scales(moduli: &[i64], k_max: u32, budget: u64) -> Result<ScaleReport> {
    if moduli.is_empty() || moduli.iter().any(|&n| n < 0) {
        return Err(Error::usage("moduli must be a non-empty list of non-negative integers"));
    }
    if !(2..=40).contains(&k_max) {
        return Err(Error::usage("the maximal scale must lie in 2..=40"));
    }
    let k = moduli.len();
    let relations = relation_lattice(moduli)?;
    let exps: Vec<u32> = (2..=k_max + 1).collect();
    let bodies = exps
        .iter()
        .map(|&j| ConvexBody::l1_ball(k, q(1i64 << j)))
        .collect::<Result<Vec<_>>>()?;
    let report = explore_with_scales(&relations, &bodies, exps.iter().map(|&j| j as i64).collect(), budget)?;
    Ok(ScaleReport::from_chain(2, report.chain.iter().map(lattice_string).collect()))
}
