//! Exploration of a lattice through an increasing family of convex bodies.

use serde::Serialize;

use super::body::ConvexBody;
use super::enumerate::lattice_points;
use super::lattice::{Index, IntegerLattice};
use crate::error::{Error, Result};
use crate::rational::{factorial, ExactReal};

/// `d + 1 + Σ_{ℓ=1}^{d} ⌊log₂ ℓ!⌋`.
pub fn exploration_bound(d: usize) -> usize {
    d + 1 + (1..=d).map(|l| (factorial(l as u32).bits() - 1) as usize).sum::<usize>()
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplorationReport {
    pub dim: usize,
    pub scales: Vec<i64>,
    pub bodies: Vec<String>,
    pub chain: Vec<IntegerLattice>,
    pub changed: Vec<bool>,
    pub change_scales: Vec<i64>,
    pub change_count: usize,
    /// Index of the previous term in each term; `None` where nothing changed.
    pub indices: Vec<Option<Index>>,
    pub bound: usize,
    pub within_bound: bool,
}

impl ExplorationReport {
    pub const CSV_HEADER: [&'static str; 5] = ["scale", "rank", "covolume", "changed", "index_from_previous"];

    pub fn csv_rows(&self) -> Vec<[String; 5]> {
        self.scales
            .iter()
            .zip(&self.chain)
            .zip(self.changed.iter().zip(&self.indices))
            .map(|((s, l), (c, i))| {
                [
                    s.to_string(),
                    l.rank().to_string(),
                    l.covolume().map(|v| v.to_string()).unwrap_or_default(),
                    c.to_string(),
                    i.as_ref().map(ToString::to_string).unwrap_or_default(),
                ]
            })
            .collect()
    }

    /// Smallest index among consecutive changes of equal rank.
    pub fn min_equal_rank_index(&self) -> Option<num_bigint::BigInt> {
        self.indices
            .iter()
            .filter_map(|i| match i {
                Some(Index::Finite(n)) => Some(n.clone()),
                _ => None,
            })
            .min()
    }
}

/// Explores with scales labelled `0, 1, 2, ...`.
pub fn explore(lattice: &IntegerLattice, bodies: &[ConvexBody], budget: u64) -> Result<ExplorationReport> {
    let scales = (0..bodies.len() as i64).collect();
    explore_with_scales(lattice, bodies, scales, budget)
}

/// `Λ_n = span_Z(Λ ∩ K_n)` for weakly nested bodies `K_n`; the chain starts
/// from the zero lattice, so the first nonzero term counts as a change.
pub fn explore_with_scales(
    lattice: &IntegerLattice,
    bodies: &[ConvexBody],
    scales: Vec<i64>,
    budget: u64,
) -> Result<ExplorationReport> {
    if scales.len() != bodies.len() {
        return Err(Error::usage("one scale label per body is required"));
    }
    for (i, pair) in bodies.windows(2).enumerate() {
        if !pair[0].is_nested_in(&pair[1])? {
            return Err(Error::usage(format!(
                "bodies are not nested: {} at position {i} is not inside {}",
                pair[0].label(),
                pair[1].label()
            )));
        }
    }
    let dim = lattice.dim();
    let mut previous = IntegerLattice::zero(dim);
    let mut report = ExplorationReport {
        dim,
        scales: scales.clone(),
        bodies: bodies.iter().map(ConvexBody::label).collect(),
        chain: Vec::with_capacity(bodies.len()),
        changed: Vec::with_capacity(bodies.len()),
        change_scales: Vec::new(),
        change_count: 0,
        indices: Vec::with_capacity(bodies.len()),
        bound: exploration_bound(dim),
        within_bound: true,
    };
    for (body, scale) in bodies.iter().zip(scales) {
        let points = lattice_points(lattice, body, budget)?;
        let current = IntegerLattice::span(dim, &points)?;
        let changed = current != previous;
        report.indices.push(if changed { Some(previous.index_in(&current)?) } else { None });
        if changed {
            report.change_scales.push(scale);
        }
        report.changed.push(changed);
        report.chain.push(current.clone());
        previous = current;
    }
    report.change_count = report.change_scales.len();
    report.within_bound = report.change_count <= report.bound;
    Ok(report)
}

/// Covolume as a display string, empty for the zero lattice.
pub fn covolume_string(l: &IntegerLattice) -> String {
    l.covolume().map(|c: ExactReal| c.to_string()).unwrap_or_default()
}
