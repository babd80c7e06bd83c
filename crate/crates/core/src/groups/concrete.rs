//! Concrete groups with explicit generating sets: products of cyclic groups,
//! `H(Z)` and `H(Z/m)`.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::heisenberg::HeisElem;
use crate::error::{Error, Result};

pub type Element = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupKind {
    /// `Π Z/nᵢ`; a modulus of `0` stands for a factor `Z`.
    FiniteAbelian { moduli: Vec<i64> },
    #[serde(rename = "heisenberg-Z")]
    HeisenbergZ,
    HeisenbergModM { m: i64 },
}

/// JSON description `{kind, moduli?, N?, generators?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<i64>>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteGroup {
    kind: GroupKind,
    generators: Vec<Element>,
}

fn heis(g: &[i64]) -> HeisElem {
    HeisElem::new(g[0], g[1], g[2])
}

impl ConcreteGroup {
    pub fn new(kind: GroupKind, generators: Vec<Element>) -> Result<Self> {
        let arity = match &kind {
            GroupKind::FiniteAbelian { moduli } => {
                if moduli.is_empty() || moduli.iter().any(|&n| n < 0) {
                    return Err(Error::usage("moduli must be a non-empty list of non-negative integers"));
                }
                moduli.len()
            }
            GroupKind::HeisenbergZ => 3,
            GroupKind::HeisenbergModM { m } => {
                if *m < 2 {
                    return Err(Error::usage(format!("Heisenberg modulus {m} must be at least 2")));
                }
                3
            }
        };
        if generators.is_empty() {
            return Err(Error::usage("a generating set must be non-empty"));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != arity) {
            return Err(Error::usage(format!("generator {g:?} should have {arity} entries")));
        }
        let mut group = ConcreteGroup { kind, generators: Vec::new() };
        group.generators = generators.iter().map(|g| group.normalize(g.clone())).collect();
        Ok(group)
    }

    /// `Π Z/nᵢ` with the standard generators `eᵢ`.
    pub fn finite_abelian(moduli: Vec<i64>) -> Result<Self> {
        let k = moduli.len();
        let gens = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(GroupKind::FiniteAbelian { moduli }, gens)
    }

    pub fn heisenberg_z() -> Self {
        Self::new(GroupKind::HeisenbergZ, vec![vec![1, 0, 0], vec![0, 1, 0]]).expect("standard generators")
    }

    pub fn heisenberg_mod(m: i64) -> Result<Self> {
        Self::new(GroupKind::HeisenbergModM { m }, vec![vec![1, 0, 0], vec![0, 1, 0]])
    }

    /// `H(Z)` generated by the box `[-N,N]² × [-N³,N³]`.
    pub fn heisenberg_tao(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("N must be positive"));
        }
        let c = n.pow(3);
        let mut gens = Vec::new();
        for a in -n..=n {
            for b in -n..=n {
                for z in -c..=c {
                    if (a, b, z) != (0, 0, 0) {
                        gens.push(vec![a, b, z]);
                    }
                }
            }
        }
        Self::new(GroupKind::HeisenbergZ, gens)
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let explicit = spec.generators.clone();
        let build = |kind: GroupKind, default: Result<Self>| match &explicit {
            Some(g) => Self::new(kind, g.iter().map(|g| matrix_entries(g)).collect::<Result<Vec<_>>>()?),
            None => default,
        };
        match spec.kind.as_str() {
            "finite-abelian" => {
                let moduli = spec.moduli.clone().ok_or_else(|| Error::usage("finite-abelian needs moduli"))?;
                build(GroupKind::FiniteAbelian { moduli: moduli.clone() }, Self::finite_abelian(moduli))
            }
            "heisenberg-Z" => build(GroupKind::HeisenbergZ, Ok(Self::heisenberg_z())),
            "heisenberg-mod-m" => {
                let m = match spec.moduli.as_deref() {
                    Some([m]) => *m,
                    _ => return Err(Error::usage("heisenberg-mod-m needs moduli: [m]")),
                };
                build(GroupKind::HeisenbergModM { m }, Self::heisenberg_mod(m))
            }
            "heisenberg-tao" => Self::heisenberg_tao(spec.n.ok_or_else(|| Error::usage("heisenberg-tao needs N"))?),
            other => Err(Error::usage(format!("unknown group kind {other:?}"))),
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn is_heisenberg(&self) -> bool {
        !matches!(self.kind, GroupKind::FiniteAbelian { .. })
    }

    /// True when the generators are exactly the standard ones.
    pub fn has_standard_generators(&self) -> bool {
        let k = self.identity().len();
        let expect: Vec<Element> = match self.kind {
            GroupKind::FiniteAbelian { .. } => (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect(),
            _ => vec![vec![1, 0, 0], vec![0, 1, 0]],
        };
        self.generators == expect.into_iter().map(|g| self.normalize(g)).collect::<Vec<_>>()
    }

    /// Group order, or `None` for infinite groups.
    pub fn order(&self) -> Option<u128> {
        match &self.kind {
            GroupKind::FiniteAbelian { moduli } => {
                moduli.iter().try_fold(1u128, |acc, &n| (n > 0).then(|| acc * n as u128))
            }
            GroupKind::HeisenbergZ => None,
            GroupKind::HeisenbergModM { m } => Some((*m as u128).pow(3)),
        }
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            GroupKind::FiniteAbelian { moduli } => vec![0; moduli.len()],
            _ => vec![0; 3],
        }
    }

    pub fn normalize(&self, mut g: Element) -> Element {
        let reduce = |x: &mut i64, n: i64| {
            if n > 0 {
                *x = x.mod_floor(&n);
            }
        };
        match &self.kind {
            GroupKind::FiniteAbelian { moduli } => {
                for (x, &n) in g.iter_mut().zip(moduli) {
                    reduce(x, n);
                }
            }
            GroupKind::HeisenbergZ => {}
            GroupKind::HeisenbergModM { m } => {
                for x in g.iter_mut() {
                    reduce(x, *m);
                }
            }
        }
        g
    }

    pub fn mul(&self, g: &[i64], h: &[i64]) -> Element {
        let raw = match self.kind {
            GroupKind::FiniteAbelian { .. } => g.iter().zip(h).map(|(x, y)| x + y).collect(),
            _ => {
                let p = heis(g).mul(heis(h));
                vec![p.a, p.b, p.c]
            }
        };
        self.normalize(raw)
    }

    pub fn inv(&self, g: &[i64]) -> Element {
        let raw = match self.kind {
            GroupKind::FiniteAbelian { .. } => g.iter().map(|x| -x).collect(),
            _ => {
                let p = heis(g).inv();
                vec![p.a, p.b, p.c]
            }
        };
        self.normalize(raw)
    }

    /// `S̄ = S ∪ {id} ∪ S⁻¹`, identity first, then `S`, then the new inverses.
    pub fn closed_generators(&self) -> Vec<Element> {
        let mut out = vec![self.identity()];
        let mut seen: HashSet<Element> = HashSet::from([self.identity()]);
        let inverses: Vec<Element> = self.generators.iter().map(|g| self.inv(g)).collect();
        for g in self.generators.iter().chain(&inverses) {
            if seen.insert(g.clone()) {
                out.push(g.clone());
            }
        }
        out
    }

    /// Breadth-first layers of the Cayley graph up to radius `r`.
    pub fn ball_layers(&self, r: usize, budget: u64) -> Result<Vec<Vec<Element>>> {
        let steps = self.closed_generators();
        let mut seen: HashSet<Element> = HashSet::from([self.identity()]);
        let mut layers = vec![vec![self.identity()]];
        for _ in 0..r {
            let mut next = Vec::new();
            for g in layers.last().expect("non-empty") {
                for s in &steps[1..] {
                    let h = self.mul(g, s);
                    if seen.insert(h.clone()) {
                        if seen.len() as u64 > budget {
                            return Err(Error::resource("elements of the ball", budget));
                        }
                        next.push(h);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layers.push(next);
        }
        Ok(layers)
    }

    /// The ball of radius `r`, sorted.
    pub fn ball(&self, r: usize, budget: u64) -> Result<Vec<Element>> {
        let mut all: Vec<Element> = self.ball_layers(r, budget)?.concat();
        all.sort();
        Ok(all)
    }

    /// Word length of every element of the ball of radius `r`.
    pub fn word_lengths(&self, r: usize, budget: u64) -> Result<HashMap<Element, usize>> {
        Ok(self
            .ball_layers(r, budget)?
            .into_iter()
            .enumerate()
            .flat_map(|(d, layer)| layer.into_iter().map(move |g| (g, d)))
            .collect())
    }

    /// Every element of the group, when it is finite.
    pub fn elements(&self, budget: u64) -> Result<Vec<Element>> {
        let order = self
            .order()
            .ok_or_else(|| Error::usage("enumerating all elements needs a finite group"))?;
        if order > budget as u128 {
            return Err(Error::resource("group elements", budget));
        }
        let all = self.ball(usize::MAX, budget)?;
        if all.len() as u128 != order {
            return Err(Error::usage(format!(
                "the generators span a subgroup of order {} in a group of order {order}",
                all.len()
            )));
        }
        Ok(all)
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup_elements(&self, gens: &[Element], budget: u64) -> Result<Vec<Element>> {
        let gens: Vec<Element> = gens.iter().map(|g| self.normalize(g.clone())).collect();
        let mut steps: Vec<Element> = gens.clone();
        steps.extend(gens.iter().map(|g| self.inv(g)));
        let mut seen: HashSet<Element> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &steps {
                    let h = self.mul(g, s);
                    if seen.insert(h.clone()) {
                        if seen.len() as u64 > budget {
                            return Err(Error::resource("subgroup elements", budget));
                        }
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Element> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

/// Accepts `[a, b, c]` or a row-major unipotent `3×3` matrix; abelian
/// vectors pass through.
fn matrix_entries(g: &[i64]) -> Result<Element> {
    if g.len() != 9 {
        return Ok(g.to_vec());
    }
    if g[0] != 1 || g[4] != 1 || g[8] != 1 || g[3] != 0 || g[6] != 0 || g[7] != 0 {
        return Err(Error::usage(format!("{g:?} is not an upper unitriangular matrix")));
    }
    Ok(vec![g[1], g[5], g[2]])
}

/// Word length in `Π Z/nᵢ` for the standard generators:
/// `Σ min(|xᵢ|, nᵢ - |xᵢ|)`.
pub fn abelian_word_length(moduli: &[i64], x: &[i64]) -> i64 {
    moduli
        .iter()
        .zip(x)
        .map(|(&n, &v)| {
            if n == 0 {
                v.abs()
            } else {
                let r = v.mod_floor(&n);
                r.min(n - r)
            }
        })
        .sum()
}
