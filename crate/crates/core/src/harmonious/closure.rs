//! Bracket-closed lattices and harmonicity verdicts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::IntegerLattice;
use crate::lie::{Algebra, LieElement};
use crate::rational::{fmt_q, Q};

/// Three-valued outcome of a check that may be cut off by a budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    Yes,
    No,
    Inconclusive,
}

impl Truth {
    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::No, _) | (_, Truth::No) => Truth::No,
            (Truth::Yes, Truth::Yes) => Truth::Yes,
            _ => Truth::Inconclusive,
        }
    }
}

pub(crate) fn show(x: &LieElement) -> String {
    let c: Vec<String> = x.coords().iter().map(fmt_q).collect();
    format!("({})", c.join(","))
}

/// An additive lattice inside a graded nilpotent Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedLattice {
    #[serde(serialize_with = "ser_algebra")]
    algebra: Algebra,
    lattice: IntegerLattice,
    bracket_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    bracket_witness: Option<String>,
}

fn ser_algebra<S: serde::Serializer>(a: &Algebra, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&a.id())
}

impl GradedLattice {
    pub fn new(algebra: Algebra, lattice: IntegerLattice) -> Result<Self> {
        if lattice.dim() != algebra.dimension() {
            return Err(Error::usage(format!(
                "lattice of dimension {} in an algebra of dimension {}",
                lattice.dim(),
                algebra.dimension()
            )));
        }
        let basis = lattice.basis();
        let mut witness = None;
        'outer: for (i, u) in basis.iter().enumerate() {
            for v in &basis[i + 1..] {
                let br = algebra.bracket_coords(u, v);
                if !lattice.contains(&br) {
                    let (eu, ev) = (algebra.element(u.clone())?, algebra.element(v.clone())?);
                    witness = Some(format!("[{}, {}] = {}", show(&eu), show(&ev), show(&algebra.element(br)?)));
                    break 'outer;
                }
            }
        }
        Ok(GradedLattice {
            algebra,
            lattice,
            bracket_closed: witness.is_none(),
            bracket_witness: witness,
        })
    }

    pub fn span(algebra: &Algebra, elements: &[LieElement]) -> Result<Self> {
        let vs = coords_of(algebra, elements)?;
        Self::new(algebra.clone(), IntegerLattice::span(algebra.dimension(), &vs)?)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn is_bracket_closed(&self) -> bool {
        self.bracket_closed
    }

    pub fn bracket_witness(&self) -> Option<&str> {
        self.bracket_witness.as_deref()
    }

    pub fn basis_elements(&self) -> Vec<LieElement> {
        self.lattice
            .basis()
            .into_iter()
            .map(|v| self.algebra.element(v).expect("dimension checked"))
            .collect()
    }

    pub fn contains(&self, x: &LieElement) -> bool {
        x.algebra() == &self.algebra && self.lattice.contains(x.coords())
    }

    pub fn scale(&self, c: &Q) -> Result<Self> {
        Self::new(self.algebra.clone(), self.lattice.scale(c))
    }
}

fn coords_of(algebra: &Algebra, elements: &[LieElement]) -> Result<Vec<Vec<Q>>> {
    elements
        .iter()
        .map(|e| {
            if e.algebra() == algebra {
                Ok(e.coords().to_vec())
            } else {
                Err(Error::usage(format!("element of {} in {}", e.algebra().id(), algebra.id())))
            }
        })
        .collect()
}

/// Smallest bracket-closed lattice containing `elements`.
pub fn bracket_closure(algebra: &Algebra, elements: &[LieElement]) -> Result<GradedLattice> {
    let dim = algebra.dimension();
    let mut lattice = IntegerLattice::span(dim, &coords_of(algebra, elements)?)?;
    // each round raises the minimal degree of missing brackets, so `step`
    // rounds reach the fixed point
    for _ in 0..=algebra.step() {
        let basis = lattice.basis();
        let mut vs = basis.clone();
        for (i, u) in basis.iter().enumerate() {
            for v in &basis[i + 1..] {
                vs.push(algebra.bracket_coords(u, v));
            }
        }
        let next = IntegerLattice::span(dim, &vs)?;
        if next == lattice {
            break;
        }
        lattice = next;
    }
    let out = GradedLattice::new(algebra.clone(), lattice)?;
    debug_assert!(out.is_bracket_closed());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarmoniousVerdict {
    pub is_additive_subgroup: Truth,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub additive_witness: Option<String>,
    pub is_bracket_closed: Truth,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_witness: Option<String>,
    pub conclusion: Truth,
}

impl HarmoniousVerdict {
    fn new(additive: (Truth, Option<String>), bracket: (Truth, Option<String>)) -> Self {
        HarmoniousVerdict {
            conclusion: additive.0.and(bracket.0),
            is_additive_subgroup: additive.0,
            additive_witness: additive.1,
            is_bracket_closed: bracket.0,
            bracket_witness: bracket.1,
        }
    }
}

/// Is `exp(L)` a subgroup whose logarithm `L` is bracket-closed?
///
/// `L` is additive by construction; the group condition is that `L` is
/// closed under `⋄`. In step at most two `X ⋄ Y = X + Y + ½[X,Y]`, so this
/// holds exactly when `½[u,v] ∈ L` for basis vectors `u, v`, which is
/// decided here. In higher step `⋄`-closure is probed on products of up to
/// `depth` signed basis vectors and can only be refuted.
pub fn is_harmonious(l: &GradedLattice, depth: usize) -> HarmoniousVerdict {
    let bracket = if l.bracket_closed {
        (Truth::Yes, None)
    } else {
        (Truth::No, l.bracket_witness.clone())
    };
    let basis = l.basis_elements();
    if l.algebra.step() <= 2 {
        let half = Q::new(1.into(), 2.into());
        for (i, u) in basis.iter().enumerate() {
            for v in &basis[i + 1..] {
                let prod = u.bch(v).expect("same algebra");
                if !l.contains(&prod) {
                    let w = format!("{} ⋄ {} = {} is not in the lattice", show(u), show(v), show(&prod));
                    return HarmoniousVerdict::new((Truth::No, Some(w)), bracket);
                }
                debug_assert!(l.contains(&u.bracket(v).expect("same algebra").scale(&half)));
            }
        }
        return HarmoniousVerdict::new((Truth::Yes, None), bracket);
    }
    let mut signed: Vec<LieElement> = basis.to_vec();
    signed.extend(basis.iter().map(LieElement::neg));
    let mut layer = vec![l.algebra.zero()];
    for _ in 0..depth.max(2) {
        let mut next = Vec::with_capacity(layer.len() * signed.len());
        for x in &layer {
            for s in &signed {
                let p = x.bch(s).expect("same algebra");
                if !l.contains(&p) {
                    let w = format!("{} ⋄ {} = {} is not in the lattice", show(x), show(s), show(&p));
                    return HarmoniousVerdict::new((Truth::No, Some(w)), bracket);
                }
                next.push(p);
            }
        }
        next.sort_by(|a, b| a.coords().cmp(b.coords()));
        next.dedup();
        layer = next;
    }
    HarmoniousVerdict::new((Truth::Inconclusive, None), bracket)
}

/// Harmonicity of a `⋄`-closed set given by a membership oracle, probed on
/// sums, negatives and brackets of `probes`; never answers `Yes`.
pub fn is_harmonious_set(probes: &[LieElement], contains: impl Fn(&LieElement) -> bool) -> Result<HarmoniousVerdict> {
    let mut additive = (Truth::Inconclusive, None);
    let mut bracket = (Truth::Inconclusive, None);
    for (i, x) in probes.iter().enumerate() {
        if additive.0 != Truth::No && !contains(&x.neg()) {
            additive = (Truth::No, Some(format!("-{} is not in the set", show(x))));
        }
        for y in &probes[i..] {
            if additive.0 != Truth::No {
                let s = x.add(y)?;
                if !contains(&s) {
                    additive = (Truth::No, Some(format!("{} + {} = {} is not in the set", show(x), show(y), show(&s))));
                }
            }
            if bracket.0 != Truth::No {
                let b = x.bracket(y)?;
                if !contains(&b) {
                    bracket = (Truth::No, Some(format!("[{}, {}] = {} is not in the set", show(x), show(y), show(&b))));
                }
            }
        }
    }
    Ok(HarmoniousVerdict::new(additive, bracket))
}
