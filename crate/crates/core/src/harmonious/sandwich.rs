//! The sandwich `H₋(Γ) ≤ Γ ≤ H₊(Γ)` of harmonious subgroups and its
//! index bound, plus Følner-set counting.

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use super::closure::{bracket_closure, is_harmonious, show, GradedLattice, HarmoniousVerdict, Truth};
use super::constants::ConstantTable;
use super::discrete::{multiplicative_index, DiscreteGroup};
use crate::error::{Error, Result};
use crate::lattice::{count_points, lattice_points, ConvexBody, Index, IntegerLattice};
use crate::lie::{Algebra, LieElement};
use crate::rational::{q, qr, Q};

#[derive(Debug, Clone)]
pub struct SandwichOptions {
    /// Word radius of the `⋄`-closure enumeration of `Γ`.
    pub word_radius: usize,
    /// Enumerated elements are kept when their quasi-norm is at most this.
    pub pnorm_cap: Q,
    /// Containments are probed on lattice points of quasi-norm at most this.
    pub probe_radius: Q,
    pub budget: u64,
}

impl Default for SandwichOptions {
    fn default() -> Self {
        SandwichOptions {
            word_radius: 6,
            pnorm_cap: q(64),
            probe_radius: q(4),
            budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentChecks {
    pub enumerated: usize,
    pub probes: usize,
    /// Probes that could not be decided for lack of an exact membership test.
    pub unverified: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sandwich {
    pub constants: ConstantTable,
    pub log_span: GradedLattice,
    pub minus: GradedLattice,
    pub plus: GradedLattice,
    pub minus_verdict: HarmoniousVerdict,
    pub plus_verdict: HarmoniousVerdict,
    pub checks: ContainmentChecks,
}

fn too_small(constants: &ConstantTable, what: &str) -> Error {
    Error::BoundViolation(format!(
        "constants C1 = {}, C2 = {} are too small: {what}",
        constants.c1, constants.c2
    ))
}

fn probe_points(l: &GradedLattice, radius: &Q, budget: u64) -> Result<Vec<LieElement>> {
    let body = ConvexBody::graded_box(l.algebra().degrees(), radius.clone())?;
    Ok(lattice_points(l.lattice(), &body, budget)?
        .into_iter()
        .map(|v| l.algebra().element(v).expect("dimension matches"))
        .collect())
}

/// Builds `log H₋ = C1·span_Z(log Γ)` and `log H₊ = C1·B(span_Z(log Γ)/C1)`
/// and checks the chain `C1·log Γ ⊆ log H₋ ⊆ log Γ ⊆ log H₊ ⊆ log Γ / C2`
/// on enumerated elements.
pub fn sandwich(gamma: &DiscreteGroup, constants: &ConstantTable, opts: &SandwichOptions) -> Result<Sandwich> {
    let algebra = gamma.algebra();
    let c1 = q(constants.c1 as i64);
    let c2 = q(constants.c2 as i64);
    let elements = gamma.enumerate(opts.word_radius, &opts.pnorm_cap, opts.budget)?;
    let log_span = GradedLattice::span(algebra, &elements)?;
    let minus = log_span.scale(&c1)?;
    let shrunk: Vec<LieElement> = log_span.basis_elements().iter().map(|x| x.scale(&(Q::one() / &c1))).collect();
    let plus = bracket_closure(algebra, &shrunk)?.scale(&c1)?;

    let minus_verdict = is_harmonious(&minus, 3);
    let plus_verdict = is_harmonious(&plus, 3);
    for (name, v) in [("H₋", &minus_verdict), ("H₊", &plus_verdict)] {
        if v.conclusion == Truth::No {
            let w = v.additive_witness.clone().or_else(|| v.bracket_witness.clone()).unwrap_or_default();
            return Err(too_small(constants, &format!("{name} is not harmonious, {w}")));
        }
    }

    for x in &elements {
        if !minus.contains(&x.scale(&c1)) {
            return Err(too_small(constants, &format!("C1·{} is not in log H₋", show(x))));
        }
        if !plus.contains(x) {
            return Err(too_small(constants, &format!("{} is not in log H₊", show(x))));
        }
    }
    let enumerated: HashSetQ = elements.iter().map(|x| x.coords().to_vec()).collect();
    let member = |x: &LieElement| -> Option<bool> {
        gamma.contains(x).or_else(|| enumerated.contains(x.coords()).then_some(true))
    };
    let mut probes = 0;
    let mut unverified = 0;
    for y in probe_points(&minus, &opts.probe_radius, opts.budget)? {
        probes += 1;
        match member(&y) {
            Some(true) => {}
            Some(false) => return Err(too_small(constants, &format!("{} ∈ log H₋ is not in log Γ", show(&y)))),
            None => unverified += 1,
        }
    }
    for y in probe_points(&plus, &opts.probe_radius, opts.budget)? {
        probes += 1;
        match member(&y.scale(&c2)) {
            Some(true) => {}
            Some(false) => {
                return Err(too_small(constants, &format!("C2·{} is not in log Γ although {} ∈ log H₊", show(&y), show(&y))))
            }
            None => unverified += 1,
        }
    }
    Ok(Sandwich {
        constants: constants.clone(),
        log_span,
        minus,
        plus,
        minus_verdict,
        plus_verdict,
        checks: ContainmentChecks {
            enumerated: elements.len(),
            probes,
            unverified,
        },
    })
}

type HashSetQ = std::collections::HashSet<Vec<Q>>;

pub fn h_minus(gamma: &DiscreteGroup, constants: &ConstantTable, opts: &SandwichOptions) -> Result<GradedLattice> {
    Ok(sandwich(gamma, constants, opts)?.minus)
}

pub fn h_plus(gamma: &DiscreteGroup, constants: &ConstantTable, opts: &SandwichOptions) -> Result<GradedLattice> {
    Ok(sandwich(gamma, constants, opts)?.plus)
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub gamma_spec: String,
    #[serde(rename = "C1")]
    pub c1: u64,
    #[serde(rename = "C2")]
    pub c2: u64,
    pub h_minus_basis: Vec<Vec<String>>,
    pub h_plus_basis: Vec<Vec<String>>,
    pub additive_index: Index,
    pub multiplicative_index: Option<String>,
    pub bound: String,
    pub verdict: bool,
}

pub fn gamma_spec(gamma: &DiscreteGroup) -> String {
    let gens: Vec<String> = gamma.generators().iter().map(show).collect();
    format!("{}<{}>", gamma.algebra().id(), gens.join(","))
}

/// `[H₊ : H₋]` computed additively and, where membership is exact, by coset
/// enumeration, against the ceiling `(C2·C1)^d`.
pub fn index_sandwich_bound_check(
    gamma: &DiscreteGroup,
    constants: &ConstantTable,
    opts: &SandwichOptions,
) -> Result<SandwichReport> {
    let s = sandwich(gamma, constants, opts)?;
    let algebra = gamma.algebra();
    let additive = s.minus.lattice().index_in(s.plus.lattice())?;
    let multiplicative = if gamma.has_exact_membership() {
        let minus = DiscreteGroup::from_lattice(algebra, s.minus.lattice())?;
        let plus = DiscreteGroup::from_lattice(algebra, s.plus.lattice())?;
        Some(multiplicative_index(&minus, &plus, opts.budget)?)
    } else {
        None
    };
    let bound = BigInt::from(constants.c1 * constants.c2).pow(algebra.dimension() as u32);
    let verdict = match &additive {
        Index::Finite(n) => n <= &bound && multiplicative.as_ref().is_none_or(|m| m == n),
        Index::Infinite => false,
    };
    Ok(SandwichReport {
        gamma_spec: gamma_spec(gamma),
        c1: constants.c1,
        c2: constants.c2,
        h_minus_basis: s.minus.lattice().basis_strings(),
        h_plus_basis: s.plus.lattice().basis_strings(),
        additive_index: additive,
        multiplicative_index: multiplicative.map(|m| m.to_string()),
        bound: bound.to_string(),
        verdict,
    })
}

/// Number of lattice points with `pnorm(X) <= λ`.
pub fn folner_count(l: &GradedLattice, lambda: &Q, budget: u64) -> Result<BigInt> {
    if !l.lattice().is_full_rank() {
        return Err(Error::usage("Følner counting needs a full-rank lattice"));
    }
    let body = ConvexBody::graded_box(l.algebra().degrees(), lambda.clone())?;
    count_points(l.lattice(), &body, budget)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingClosure {
    pub pairs: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

/// Checks `C·X + Y ∈ log Γ` for enumerated `X, Y ∈ log Γ`.
pub fn scaling_closure_check(gamma: &DiscreteGroup, c: &Q, opts: &SandwichOptions) -> Result<ScalingClosure> {
    if !gamma.has_exact_membership() {
        return Err(Error::usage("scaling closure needs exact membership"));
    }
    let elements = gamma.enumerate(opts.word_radius, &opts.pnorm_cap, opts.budget)?;
    let mut out = ScalingClosure {
        pairs: 0,
        failures: 0,
        witness: None,
    };
    for x in &elements {
        let cx = x.scale(c);
        for y in &elements {
            out.pairs += 1;
            let s = cx.add(y)?;
            if gamma.contains(&s) != Some(true) {
                out.failures += 1;
                out.witness.get_or_insert_with(|| format!("{}·{} + {}", c, show(x), show(y)));
            }
        }
    }
    Ok(out)
}

/// A harmonious pair `L1 ⊆ L2` of full-rank Heisenberg lattices with known
/// additive index.
///
/// `L2 = span{u1, u2, w}` with `w = (0, 0, D/(2j))`, `D = a1 b2 - a2 b1`,
/// and `L1 = span{k1 u1, k2 u2 + r w, k3 w}` with `k3 | k1 k2 j`.
pub fn random_harmonious_pair(rng: &mut impl Rng) -> (GradedLattice, GradedLattice, BigInt) {
    loop {
        let mut v = || rng.gen_range(-3i64..=3);
        let (a1, b1, c1, a2, b2, c2) = (v(), v(), v(), v(), v(), v());
        let d = a1 * b2 - a2 * b1;
        if d == 0 {
            continue;
        }
        let j = rng.gen_range(1i64..=3);
        let k1 = rng.gen_range(1i64..=3);
        let k2 = rng.gen_range(1i64..=3);
        let n = k1 * k2 * j;
        let divisors: Vec<i64> = (1..=n).filter(|x| n % x == 0).collect();
        let k3 = divisors[rng.gen_range(0..divisors.len())];
        let r = rng.gen_range(0..k3);
        let w = qr(d, 2 * j);
        let u1 = [q(a1), q(b1), q(c1)];
        let u2 = [q(a2), q(b2), q(c2)];
        let outer = vec![u1.to_vec(), u2.to_vec(), vec![q(0), q(0), w.clone()]];
        let inner = vec![
            u1.iter().map(|x| x * q(k1)).collect(),
            vec![&u2[0] * q(k2), &u2[1] * q(k2), &u2[2] * q(k2) + &w * q(r)],
            vec![q(0), q(0), &w * q(k3)],
        ];
        let mk = |rows: Vec<Vec<Q>>| {
            GradedLattice::new(Algebra::Heisenberg, IntegerLattice::span(3, &rows).expect("3 coordinates"))
                .expect("Heisenberg lattice")
        };
        return (mk(inner), mk(outer), BigInt::from(k1 * k2 * k3));
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::HeisElem;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn integer_heisenberg_sandwich() {
        let gamma = DiscreteGroup::integer_heisenberg();
        let constants = ConstantTable::for_step(2).unwrap();
        let s = sandwich(&gamma, &constants, &SandwichOptions::default()).unwrap();
        let lat = |rows: Vec<Vec<Q>>| IntegerLattice::span(3, &rows).unwrap();
        assert_eq!(
            s.minus.lattice(),
            &lat(vec![vec![q(2), q(0), q(0)], vec![q(0), q(2), q(0)], vec![q(0), q(0), q(1)]])
        );
        assert_eq!(
            s.plus.lattice(),
            &lat(vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), qr(1, 2)]])
        );
        assert_eq!(s.checks.unverified, 0);
        let r = index_sandwich_bound_check(&gamma, &constants, &SandwichOptions::default()).unwrap();
        assert_eq!(r.additive_index, Index::Finite(8.into()));
        assert_eq!(r.multiplicative_index.as_deref(), Some("8"));
        assert_eq!(r.bound, "64");
        assert!(r.verdict);
    }

    #[test]
    fn abelian_and_cyclic_cases() {
        let alg = Algebra::free(2, 1).unwrap();
        let gamma = DiscreteGroup::new(&alg, vec![alg.generator(0), alg.generator(1)]).unwrap();
        let constants = ConstantTable::for_step(1).unwrap();
        let s = sandwich(&gamma, &constants, &SandwichOptions::default()).unwrap();
        assert_eq!(s.minus.lattice(), &IntegerLattice::standard(2));
        assert_eq!(s.plus.lattice(), &IntegerLattice::standard(2));

        let cyc = DiscreteGroup::new(&Algebra::Heisenberg, vec![HeisElem::X.log()]).unwrap();
        let s = sandwich(&cyc, &ConstantTable::for_step(2).unwrap(), &SandwichOptions::default()).unwrap();
        assert_eq!(s.minus.lattice().basis(), vec![vec![q(2), q(0), q(0)]]);
    }

    #[test]
    fn harmonious_lattice_is_a_fixed_point_of_h_plus() {
        let l = IntegerLattice::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), qr(1, 2)]]).unwrap();
        let gamma = DiscreteGroup::from_lattice(&Algebra::Heisenberg, &l).unwrap();
        let plus = h_plus(&gamma, &ConstantTable::for_step(2).unwrap(), &SandwichOptions::default()).unwrap();
        assert_eq!(plus.lattice(), &l);
    }

    #[test]
    fn too_small_constants_fail_loudly() {
        let gamma = DiscreteGroup::integer_heisenberg();
        let err = sandwich(&gamma, &ConstantTable::user(2, 1, 1).unwrap(), &SandwichOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BoundViolation(_)), "{err:?}");
    }

    #[test]
    fn folner_examples() {
        let z3 = GradedLattice::new(Algebra::Heisenberg, IntegerLattice::standard(3)).unwrap();
        assert_eq!(folner_count(&z3, &q(4), 100_000).unwrap(), BigInt::from(9 * 9 * 33));
        assert_eq!(folner_count(&z3, &qr(1, 2), 100).unwrap(), BigInt::from(1));
    }

    #[test]
    fn scaling_closure_for_step_two() {
        let gamma = DiscreteGroup::integer_heisenberg();
        let opts = SandwichOptions { word_radius: 3, ..Default::default() };
        let r = scaling_closure_check(&gamma, &q(2), &opts).unwrap();
        assert_eq!(r.failures, 0);
        assert!(r.pairs > 100);
        let r1 = scaling_closure_check(&gamma, &q(1), &opts).unwrap();
        assert!(r1.failures > 0);
    }

    #[test]
    fn random_pairs_are_harmonious_and_indices_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let (inner, outer, k) = random_harmonious_pair(&mut rng);
            assert_eq!(is_harmonious(&inner, 2).conclusion, Truth::Yes);
            assert_eq!(is_harmonious(&outer, 2).conclusion, Truth::Yes);
            assert_eq!(inner.lattice().index_in(outer.lattice()).unwrap(), Index::Finite(k.clone()));
            let a = DiscreteGroup::from_lattice(&Algebra::Heisenberg, inner.lattice()).unwrap();
            let b = DiscreteGroup::from_lattice(&Algebra::Heisenberg, outer.lattice()).unwrap();
            assert_eq!(multiplicative_index(&a, &b, 10_000).unwrap(), k);
        }
    }
}
