//! Seeded randomized suites over the lattice, harmonious and group modules.
//!
//! Every suite draws from `ChaCha8Rng::seed_from_u64(seed)`, recorded in
//! reports as [`PRNG`].

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{format_sig, subgroup_scales, ConcreteGroup, Element, HeisElem, HeisenbergSubgroup, ScaleReport};
use crate::harmonious::{is_harmonious, multiplicative_index, random_harmonious_pair, DiscreteGroup, Truth};
use crate::lattice::{
    exploration_bound, explore, minkowski_second_check, ConvexBody, ExplorationReport, Index, IntegerLattice,
    MinkowskiReport,
};
use crate::rational::{q, qr, Q};

pub const PRNG: &str = "chacha8-v1";

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut impl Rng, max_num: i64, dens: &[i64]) -> Q {
    let d = *dens.choose(rng).expect("non-empty");
    qr(rng.gen_range(1..=max_num), d)
}

/// Full-rank lattice spanned by a random small integer matrix, sometimes
/// refined by a rational glue vector.
pub fn random_lattice(rng: &mut impl Rng, d: usize) -> IntegerLattice {
    loop {
        let rows: Vec<Vec<Q>> = (0..d).map(|_| (0..d).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
        let Ok(l) = IntegerLattice::span(d, &rows) else { continue };
        if !l.is_full_rank() {
            continue;
        }
        if rng.gen_bool(0.3) {
            let den = rng.gen_range(2..=3);
            let glue: Vec<Q> = (0..d).map(|_| qr(rng.gen_range(0..den), den)).collect();
            let mut all = l.basis();
            all.push(glue);
            return IntegerLattice::span(d, &all).expect("same dimension");
        }
        return l;
    }
}

pub fn random_body(rng: &mut impl Rng, d: usize) -> ConvexBody {
    let dens = [1, 2, 3];
    match rng.gen_range(0..5) {
        0 => ConvexBody::boxed((0..d).map(|_| small_rational(rng, 5, &dens)).collect()),
        1 => ConvexBody::cube(d, small_rational(rng, 4, &dens)),
        2 => ConvexBody::l1_ball(d, small_rational(rng, 6, &dens)),
        3 => ConvexBody::l2_ball(d, small_rational(rng, 5, &dens)),
        _ => loop {
            let g: Vec<Vec<Q>> = (0..d).map(|_| (0..d).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
            if let Ok(b) = ConvexBody::parallelotope(g, small_rational(rng, 3, &dens)) {
                break Ok(b);
            }
        },
    }
    .expect("valid random body")
}

#[derive(Debug, Clone, Serialize)]
pub struct MinkowskiRow {
    pub trial: usize,
    pub dim: usize,
    pub body: String,
    pub covolume: String,
    /// Exact ratio when the volume is rational, empty otherwise.
    pub ratio: String,
    pub ratio_approx: String,
    pub holds: bool,
}

impl MinkowskiRow {
    pub const CSV_HEADER: [&'static str; 7] = ["trial", "dim", "body", "covolume", "ratio", "ratio_approx", "holds"];

    pub fn csv_row(&self) -> [String; 7] {
        [
            self.trial.to_string(),
            self.dim.to_string(),
            self.body.clone(),
            self.covolume.clone(),
            self.ratio.clone(),
            self.ratio_approx.clone(),
            self.holds.to_string(),
        ]
    }

    fn new(trial: usize, body: &ConvexBody, r: &MinkowskiReport) -> Self {
        MinkowskiRow {
            trial,
            dim: r.dim,
            body: body.label(),
            covolume: r.covolume.to_string(),
            ratio: r.ratio_exact.as_ref().map(ToString::to_string).unwrap_or_default(),
            ratio_approx: format_sig(r.ratio_f64()),
            holds: r.holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinkowskiSuite {
    pub prng: &'static str,
    pub seed: u64,
    pub rows: Vec<MinkowskiRow>,
    pub all_hold: bool,
}

/// `trials` random (lattice, body) pairs with `d` drawn from `dims`.
pub fn minkowski_suite(seed: u64, dims: (usize, usize), trials: usize, budget: u64) -> Result<MinkowskiSuite> {
    if dims.0 < 1 || dims.0 > dims.1 || dims.1 > 6 {
        return Err(Error::usage("dimensions must satisfy 1 ≤ lo ≤ hi ≤ 6"));
    }
    let mut rng = seeded(seed);
    let mut rows = Vec::with_capacity(trials);
    for trial in 0..trials {
        let d = rng.gen_range(dims.0..=dims.1);
        let lattice = random_lattice(&mut rng, d);
        let body = random_body(&mut rng, d);
        let r = minkowski_second_check(&lattice, &body, budget)?;
        rows.push(MinkowskiRow::new(trial, &body, &r));
    }
    Ok(MinkowskiSuite {
        prng: PRNG,
        seed,
        all_hold: rows.iter().all(|r| r.holds),
        rows,
    })
}

/// `Z²` with the unit square, the unit disc and the box `[-2,2]×[-1/2,1/2]`.
pub fn minkowski_worked_examples(budget: u64) -> Result<Vec<(ConvexBody, MinkowskiReport)>> {
    let z2 = IntegerLattice::standard(2);
    [
        ConvexBody::cube(2, q(1))?,
        ConvexBody::l2_ball(2, q(1))?,
        ConvexBody::boxed(vec![q(2), qr(1, 2)])?,
    ]
    .into_iter()
    .map(|b| Ok((b.clone(), minkowski_second_check(&z2, &b, budget)?)))
    .collect()
}

/// Bodies whose bounding box holds more integer points than this end a
/// random chain.
pub const CHAIN_BOX_POINTS: u64 = 200_000;

fn bounding_box_points(b: &ConvexBody) -> f64 {
    b.bounding_half_widths()
        .iter()
        .map(|w| 2.0 * crate::rational::q_to_f64(w) + 1.0)
        .product()
}

/// A weakly increasing chain of at most `len` bodies from one of several
/// families, cut short before the bodies get large.
pub fn random_nested_chain(rng: &mut impl Rng, d: usize, len: usize) -> (String, Vec<ConvexBody>) {
    let (family, mut bodies) = nested_chain_family(rng, d, len);
    let keep = bodies
        .iter()
        .position(|b| bounding_box_points(b) > CHAIN_BOX_POINTS as f64)
        .unwrap_or(bodies.len())
        .max(2);
    bodies.truncate(keep);
    (family, bodies)
}

fn ceil_sqrt(d: usize) -> i64 {
    (1..).find(|k: &i64| (k * k) as usize >= d).expect("unbounded")
}

fn nested_chain_family(rng: &mut impl Rng, d: usize, len: usize) -> (String, Vec<ConvexBody>) {
    match rng.gen_range(0..4) {
        0 => {
            let base = random_body(rng, d);
            let mut t = qr(1, rng.gen_range(2..=4));
            let mut out = Vec::with_capacity(len);
            for _ in 0..len {
                out.push(base.scaled(&t));
                t *= qr(rng.gen_range(4..=8), 4);
            }
            ("scaled".into(), out)
        }
        1 => {
            // one long axis first, the others opened up later
            let mut w: Vec<Q> = (0..d).map(|_| qr(1, 10)).collect();
            w[rng.gen_range(0..d)] = q(rng.gen_range(1..=3));
            let mut out = Vec::with_capacity(len);
            for _ in 0..len {
                out.push(ConvexBody::boxed(w.clone()).expect("positive widths"));
                let i = rng.gen_range(0..d);
                w[i] = &w[i] + small_rational(rng, 3, &[1, 2, 4]);
            }
            ("thin-boxes".into(), out)
        }
        2 => {
            let g: Vec<Vec<Q>> = loop {
                let g: Vec<Vec<Q>> = (0..d).map(|_| (0..d).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
                if ConvexBody::parallelotope(g.clone(), q(1)).is_ok() {
                    break g;
                }
            };
            let mut t = qr(1, 4);
            let mut out = Vec::with_capacity(len);
            for _ in 0..len {
                out.push(ConvexBody::parallelotope(g.clone(), t.clone()).expect("independent"));
                t *= qr(rng.gen_range(5..=8), 4);
            }
            ("parallelotopes".into(), out)
        }
        _ => {
            let m = small_rational(rng, 2, &[1, 2]);
            let mut w: Vec<Q> = (0..d).map(|_| qr(1, 4)).collect();
            w[0] = m.clone();
            let r = q(ceil_sqrt(d));
            let mut out = vec![
                ConvexBody::boxed(w).expect("positive"),
                ConvexBody::cube(d, m.clone()).expect("positive"),
                ConvexBody::l2_ball(d, &m * &r).expect("positive"),
                ConvexBody::l1_ball(d, &m * &r * &r).expect("positive"),
            ];
            out.truncate(len.max(2));
            ("mixed".into(), out)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplorationRow {
    pub trial: usize,
    pub dim: usize,
    pub family: String,
    pub bodies: usize,
    pub change_count: usize,
    pub bound: usize,
    pub within_bound: bool,
}

impl ExplorationRow {
    pub const CSV_HEADER: [&'static str; 7] = ["trial", "dim", "family", "bodies", "change_count", "bound", "within_bound"];

    pub fn csv_row(&self) -> [String; 7] {
        [
            self.trial.to_string(),
            self.dim.to_string(),
            self.family.clone(),
            self.bodies.to_string(),
            self.change_count.to_string(),
            self.bound.to_string(),
            self.within_bound.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplorationSuite {
    pub prng: &'static str,
    pub seed: u64,
    pub rows: Vec<ExplorationRow>,
    pub all_within_bound: bool,
}

pub fn exploration_suite(seed: u64, dims: (usize, usize), trials: usize, budget: u64) -> Result<ExplorationSuite> {
    if dims.0 < 1 || dims.0 > dims.1 || dims.1 > 6 {
        return Err(Error::usage("dimensions must satisfy 1 ≤ lo ≤ hi ≤ 6"));
    }
    let mut rng = seeded(seed);
    let mut rows = Vec::with_capacity(trials);
    for trial in 0..trials {
        let d = rng.gen_range(dims.0..=dims.1);
        let lattice = random_lattice(&mut rng, d);
        let len = rng.gen_range(3..=7);
        let (family, bodies) = random_nested_chain(&mut rng, d, len);
        let r = explore(&lattice, &bodies, budget)?;
        rows.push(ExplorationRow {
            trial,
            dim: d,
            family,
            bodies: bodies.len(),
            change_count: r.change_count,
            bound: r.bound,
            within_bound: r.within_bound,
        });
    }
    Ok(ExplorationSuite {
        prng: PRNG,
        seed,
        all_within_bound: rows.iter().all(|r| r.within_bound),
        rows,
    })
}

/// Body-centred cubic lattice `Z³ ∪ (Z³ + ½(1,1,1))` explored by a
/// one-axis parallelotope, a planar diamond and two `ℓ1` balls: the
/// chain passes through `Ze₁`, `Ze₁ + Ze₂` and `Z³` before reaching the
/// whole lattice.
pub fn bcc_exploration(budget: u64) -> Result<ExplorationReport> {
    let lattice = IntegerLattice::span(
        3,
        &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![qr(1, 2), qr(1, 2), qr(1, 2)]],
    )?;
    let eps = qr(1, 8);
    let bodies = vec![
        ConvexBody::parallelotope(
            vec![vec![qr(1, 2), eps.clone(), q(0)], vec![qr(1, 2), -eps.clone(), q(0)], vec![q(0), q(0), eps.clone()]],
            q(1),
        )?,
        ConvexBody::parallelotope(
            vec![vec![qr(1, 2), qr(1, 2), q(0)], vec![qr(1, 2), qr(-1, 2), q(0)], vec![q(0), q(0), eps.clone()]],
            q(1),
        )?,
        ConvexBody::l1_ball(3, qr(5, 4))?,
        ConvexBody::l1_ball(3, qr(3, 2))?,
    ];
    explore(&lattice, &bodies, budget)
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanarSearch {
    pub prng: &'static str,
    pub seed: u64,
    pub attempts: usize,
    pub bound: usize,
    pub best_changes: usize,
    pub best: Option<ExplorationReport>,
}

/// Random search for a planar exploration with many changes; keeps the run
/// with the largest change count.
pub fn adversarial_planar_search(seed: u64, attempts: usize, budget: u64) -> Result<PlanarSearch> {
    let mut rng = seeded(seed);
    let mut best: Option<ExplorationReport> = None;
    for _ in 0..attempts {
        let lattice = random_lattice(&mut rng, 2);
        let len = rng.gen_range(3..=8);
        let (_, bodies) = random_nested_chain(&mut rng, 2, len);
        let r = explore(&lattice, &bodies, budget)?;
        if best.as_ref().is_none_or(|b| r.change_count > b.change_count) {
            best = Some(r);
        }
    }
    Ok(PlanarSearch {
        prng: PRNG,
        seed,
        attempts,
        bound: exploration_bound(2),
        best_changes: best.as_ref().map_or(0, |b| b.change_count),
        best,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub trial: usize,
    pub inner_basis: Vec<Vec<String>>,
    pub outer_basis: Vec<Vec<String>>,
    pub both_harmonious: bool,
    pub additive_index: Index,
    pub multiplicative_index: String,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSuite {
    pub prng: &'static str,
    pub seed: u64,
    pub rows: Vec<PairRow>,
    pub all_equal: bool,
}

/// Random harmonious pairs `L1 ⊆ L2` in the Heisenberg algebra with
/// additive and coset-enumerated indices compared.
pub fn harmonious_pair_suite(seed: u64, trials: usize, budget: u64) -> Result<PairSuite> {
    let mut rng = seeded(seed);
    let mut rows = Vec::with_capacity(trials);
    for trial in 0..trials {
        let (inner, outer, _) = random_harmonious_pair(&mut rng);
        let algebra = inner.algebra().clone();
        let both = is_harmonious(&inner, 2).conclusion == Truth::Yes && is_harmonious(&outer, 2).conclusion == Truth::Yes;
        let additive = inner.lattice().index_in(outer.lattice())?;
        let mult = multiplicative_index(
            &DiscreteGroup::from_lattice(&algebra, inner.lattice())?,
            &DiscreteGroup::from_lattice(&algebra, outer.lattice())?,
            budget,
        )?;
        rows.push(PairRow {
            trial,
            inner_basis: inner.lattice().basis_strings(),
            outer_basis: outer.lattice().basis_strings(),
            both_harmonious: both,
            equal: both && additive == Index::Finite(mult.clone()),
            additive_index: additive,
            multiplicative_index: mult.to_string(),
        });
    }
    Ok(PairSuite {
        prng: PRNG,
        seed,
        all_equal: rows.iter().all(|r| r.equal),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaleRow {
    pub trial: usize,
    pub group: String,
    pub subgroup: String,
    pub n_max: u32,
    pub change_count: usize,
    pub change_scales: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaleSuite {
    pub prng: &'static str,
    pub seed: u64,
    pub max_changes: usize,
    pub rows: Vec<ScaleRow>,
}

pub const SCALE_SUITE_CEILING: usize = 10;

pub fn random_scale_instance(rng: &mut impl Rng) -> Result<(String, ConcreteGroup, Vec<Element>, u32)> {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3usize);
        let moduli: Vec<i64> = (0..k)
            .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(2..=40) })
            .collect();
        let gens: Vec<Element> = (0..rng.gen_range(1..=3))
            .map(|_| (0..k).map(|_| rng.gen_range(-6..=6)).collect())
            .collect();
        let n_max = [10, 8, 5][k - 1];
        Ok((format!("abelian{moduli:?}"), ConcreteGroup::finite_abelian(moduli)?, gens, n_max))
    } else {
        let gens: Vec<Element> = (0..rng.gen_range(1..=3))
            .map(|_| vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4)])
            .collect();
        Ok(("heisenberg-Z".into(), ConcreteGroup::heisenberg_z(), gens, 5))
    }
}

fn subgroup_label(g: &ConcreteGroup, gens: &[Element]) -> String {
    if g.is_heisenberg() {
        let h: Vec<HeisElem> = gens.iter().map(|e| HeisElem::new(e[0], e[1], e[2])).collect();
        HeisenbergSubgroup::generated(&h).canonical_string()
    } else {
        format!("{gens:?}")
    }
}

/// Breadth-first subgroup exploration on random abelian and Heisenberg
/// instances.
pub fn subgroup_scale_suite(seed: u64, runs: usize, budget: u64) -> Result<ScaleSuite> {
    let mut rng = seeded(seed);
    let mut rows = Vec::with_capacity(runs);
    for trial in 0..runs {
        let (group, g, gens, n_max) = random_scale_instance(&mut rng)?;
        let r: ScaleReport = subgroup_scales(&g, &gens, n_max, budget)?;
        rows.push(ScaleRow {
            trial,
            group,
            subgroup: subgroup_label(&g, &gens),
            n_max,
            change_count: r.change_count,
            change_scales: r.change_scales,
        });
    }
    Ok(ScaleSuite {
        prng: PRNG,
        seed,
        max_changes: rows.iter().map(|r| r.change_count).max().unwrap_or(0),
        rows,
    })
}

/// `|F_λ ∩ Z³| / λ⁴` for the Heisenberg grading.
pub fn folner_ratio(lambda: i64, budget: u64) -> Result<(BigInt, Q)> {
    let l = crate::harmonious::GradedLattice::new(crate::lie::Algebra::Heisenberg, IntegerLattice::standard(3))?;
    let count = crate::harmonious::folner_count(&l, &q(lambda), budget)?;
    let ratio = Q::new(count.clone(), BigInt::from(lambda).pow(4));
    Ok((count, ratio))
}
