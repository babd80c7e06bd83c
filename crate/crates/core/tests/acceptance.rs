//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use nilgrowth::groups::{
    chain_count_check, chain_count_check_finite_index, check_tao_relations, finite_index_generating_check,
    injectivity_radius_check, subgroup_scales, tao_example_profile, abelian_relation_scales, ConcreteGroup,
    HeisElem, HeisenbergSubgroup,
};
use nilgrowth::harmonious::{
    index_sandwich_bound_check, is_harmonious_set, sandwich, ConstantTable, DiscreteGroup, SandwichOptions, Truth,
};
use nilgrowth::lattice::{exploration_bound, Index, IntegerLattice, DEFAULT_POINT_BUDGET};
use nilgrowth::lie::heisenberg::{algebra_matrix, heisenberg_exp, heisenberg_log};
use nilgrowth::lie::{
    evaluate_polynomial, zassenhaus_product, zassenhaus_terms, Algebra, LieElement, LieMonomial, LiePolynomialTerm,
};
use nilgrowth::rational::{q, q_to_f64, qr, ExactReal, Q};
use nilgrowth::suites::{
    adversarial_planar_search, bcc_exploration, exploration_suite, folner_ratio, harmonious_pair_suite,
    minkowski_suite, minkowski_worked_examples, seeded, subgroup_scale_suite, SCALE_SUITE_CEILING,
};
use rand::Rng;

const SEED: u64 = 7;
const BUDGET: u64 = DEFAULT_POINT_BUDGET;

/// Relative tolerance of the Følner count against `vol = 8`.
const FOLNER_TOLERANCE: f64 = 0.15;
/// Slope bands for the Tao example below and above the kink.
const TAO_SMALL: (f64, f64) = (2.5, 3.5);
const TAO_LARGE: (f64, f64) = (3.5, 4.5);
/// Width allowed for the certified interval around `4/π`.
const PI_RATIO_WIDTH: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_q(rng: &mut impl Rng) -> Q {
    qr(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_element(rng: &mut impl Rng, alg: &Algebra) -> LieElement {
    alg.element((0..alg.dimension()).map(|_| random_q(rng)).collect()).unwrap()
}

fn bch_and_zassenhaus() -> Outcome {
    let mut rng = seeded(SEED);
    let mut failures = Vec::new();
    for (k, s) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        let alg = Algebra::free(k, s).unwrap();
        let terms = zassenhaus_terms(s).unwrap();
        for _ in 0..200 {
            let (x, y, z) = (random_element(&mut rng, &alg), random_element(&mut rng, &alg), random_element(&mut rng, &alg));
            if zassenhaus_product(&terms, &x, &y).unwrap() != x.add(&y).unwrap() {
                failures.push(format!("zassenhaus ({k},{s})"));
            }
            if x.bch(&y).unwrap().bch(&z).unwrap() != x.bch(&y.bch(&z).unwrap()).unwrap() {
                failures.push(format!("associativity ({k},{s})"));
            }
        }
    }
    let alg = Algebra::free(2, 3).unwrap();
    let vars = [alg.generator(0), alg.generator(1)];
    let (x, y) = (LieMonomial::Var(0), LieMonomial::Var(1));
    let xy = LieMonomial::bracket(x.clone(), y.clone());
    let printed2 = [LiePolynomialTerm::new(qr(-1, 2), xy.clone())];
    let printed3 = [
        LiePolynomialTerm::new(qr(2, 6), LieMonomial::bracket(y, xy.clone())),
        LiePolynomialTerm::new(qr(1, 6), LieMonomial::bracket(x, xy)),
    ];
    let terms = zassenhaus_terms(3).unwrap();
    let eval = |t: &[LiePolynomialTerm]| evaluate_polynomial(t, &vars).unwrap();
    if eval(&terms[0]) != eval(&printed2) {
        failures.push("degree-2 term".into());
    }
    if eval(&terms[1]) != eval(&printed3) {
        failures.push("degree-3 term".into());
    }
    outcome(failures.is_empty(), format!("800 pairs, failures {failures:?}"))
}

fn heisenberg_identities() -> Outcome {
    let mut rng = seeded(SEED);
    let h = Algebra::Heisenberg;
    let mut ok = true;
    for _ in 0..100 {
        let (a, b, c, x, y, z) = (
            random_q(&mut rng),
            random_q(&mut rng),
            random_q(&mut rng),
            random_q(&mut rng),
            random_q(&mut rng),
            random_q(&mut rng),
        );
        let p = h.element(vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let r = h.element(vec![x.clone(), y.clone(), z.clone()]).unwrap();
        let expected = vec![&a + &x, &b + &y, &c + &z + (&a * &y - &b * &x) / q(2)];
        ok &= p.bch(&r).unwrap().coords() == expected.as_slice();
        let m = algebra_matrix(&a, &b, &c);
        ok &= heisenberg_log(&heisenberg_exp(&m).unwrap()).unwrap() == m;
    }
    let member = |x: &LieElement| {
        let c = x.coords();
        c[0].is_integer() && c[1].is_integer() && (&c[2] + &c[0] * &c[1] / q(2)).is_integer()
    };
    let probes = [HeisElem::X.log(), HeisElem::Y.log()];
    let v = is_harmonious_set(&probes, member).unwrap();
    let witness = v.additive_witness.clone().unwrap_or_default();
    ok &= v.conclusion == Truth::No && witness == "(1,0,0) + (0,1,0) = (1,1,0) is not in the set";
    outcome(ok, format!("diamond formula and exp/log on 100 samples; witness \"{witness}\""))
}

fn minkowski() -> Outcome {
    let suite = minkowski_suite(SEED, (2, 4), 500, BUDGET).unwrap();
    let examples = minkowski_worked_examples(BUDGET).unwrap();
    let four_over_pi = 4.0 / std::f64::consts::PI;
    let cube = matches!(&examples[0].1.ratio_exact, Some(ExactReal::Rational(r)) if *r == q(1));
    let disc = &examples[1].1.ratio;
    let disc_ok = q_to_f64(&disc.lo) <= four_over_pi
        && four_over_pi <= q_to_f64(&disc.hi)
        && q_to_f64(&disc.hi) - q_to_f64(&disc.lo) < PI_RATIO_WIDTH;
    let boxed = matches!(&examples[2].1.ratio_exact, Some(ExactReal::Rational(r)) if *r == q(1));
    let held = suite.rows.iter().filter(|r| r.holds).count();
    outcome(
        suite.all_hold && cube && disc_ok && boxed,
        format!("{held}/500 ratios in [1, d!]; examples cube {cube}, disc {disc_ok}, box {boxed}"),
    )
}

fn exploration() -> Outcome {
    let suite = exploration_suite(SEED, (1, 4), 500, BUDGET).unwrap();
    let max = suite.rows.iter().map(|r| r.change_count).max().unwrap_or(0);
    let bcc = bcc_exploration(BUDGET).unwrap();
    let planar = adversarial_planar_search(SEED, 1000, BUDGET).unwrap();
    let pass = suite.all_within_bound && bcc.within_bound && exploration_bound(2) == 4 && planar.best_changes >= 3;
    outcome(
        pass,
        format!(
            "500 runs within bound {}, max changes {max}; bcc {} changes; d = 2 bound {}, best planar instance {} changes (need ≥ 3)",
            suite.all_within_bound,
            bcc.change_count,
            exploration_bound(2),
            planar.best_changes
        ),
    )
}

fn heisenberg_sandwich() -> Outcome {
    let gamma = DiscreteGroup::integer_heisenberg();
    let constants = ConstantTable::user(2, 2, 2).unwrap();
    let opts = SandwichOptions::default();
    let s = sandwich(&gamma, &constants, &opts).unwrap();
    let lat = |rows: Vec<Vec<Q>>| IntegerLattice::span(3, &rows).unwrap();
    let minus = lat(vec![vec![q(2), q(0), q(0)], vec![q(0), q(2), q(0)], vec![q(0), q(0), q(1)]]);
    let plus = lat(vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), qr(1, 2)]]);
    let r = index_sandwich_bound_check(&gamma, &constants, &opts).unwrap();
    let pass = s.minus.lattice() == &minus
        && s.plus.lattice() == &plus
        && r.additive_index == Index::Finite(8.into())
        && r.multiplicative_index.as_deref() == Some("8")
        && r.bound == "64"
        && r.verdict;
    outcome(
        pass,
        format!(
            "H- {:?}, H+ {:?}, indices {:?}/{:?} ≤ {}",
            r.h_minus_basis, r.h_plus_basis, r.additive_index, r.multiplicative_index, r.bound
        ),
    )
}

fn index_sandwich() -> Outcome {
    let suite = harmonious_pair_suite(SEED, 10, BUDGET).unwrap();
    let idx: Vec<&str> = suite.rows.iter().map(|r| r.multiplicative_index.as_str()).collect();
    outcome(suite.all_equal && suite.rows.len() == 10, format!("10 pairs, multiplicative indices {idx:?}"))
}

fn folner() -> Outcome {
    let (count, ratio) = folner_ratio(32, BUDGET).unwrap();
    let r = q_to_f64(&ratio);
    outcome(
        ((r - 8.0) / 8.0).abs() <= FOLNER_TOLERANCE,
        format!("count {count}, ratio {r:.5}"),
    )
}

fn ceil_log2(n: i64) -> i64 {
    64 - (n - 1).leading_zeros() as i64
}

fn relation_scales() -> Outcome {
    let mut bad = Vec::new();
    for n in 5..=1024 {
        if abelian_relation_scales(&[n], 10, BUDGET).unwrap().change_scales != vec![ceil_log2(n) - 1] {
            bad.push(n);
        }
    }
    let pair = abelian_relation_scales(&[8, 64], 10, BUDGET).unwrap().change_scales;
    let triple = abelian_relation_scales(&[8, 64, 1024], 10, BUDGET).unwrap().change_scales;
    outcome(
        bad.is_empty() && pair == vec![2, 5] && triple == vec![2, 5, 9],
        format!("cyclic mismatches {bad:?}; Z/8×Z/64 {pair:?}; Z/8×Z/64×Z/1024 {triple:?}"),
    )
}

fn subgroup_exploration() -> Outcome {
    let z2 = ConcreteGroup::finite_abelian(vec![0, 0]).unwrap();
    let long = subgroup_scales(&z2, &[vec![1, 0], vec![0, 5]], 6, BUDGET).unwrap();
    let whole = subgroup_scales(&z2, &[vec![1, 0], vec![0, 1]], 6, BUDGET).unwrap();
    let h = ConcreteGroup::heisenberg_z();
    let squares = subgroup_scales(&h, &[vec![2, 0, 0], vec![0, 2, 0]], 7, BUDGET).unwrap();
    let target = HeisenbergSubgroup::generated(&[HeisElem::X.pow(2), HeisElem::Y.pow(2)]);
    let suite = subgroup_scale_suite(SEED, 100, BUDGET).unwrap();
    let pass = long.change_scales == vec![2]
        && whole.change_count == 0
        && squares.change_count <= 4
        && squares.objects.last() == Some(&target.canonical_string())
        && suite.max_changes <= SCALE_SUITE_CEILING;
    outcome(
        pass,
        format!(
            "Z² ⟨(1,0),(0,5)⟩ {:?}; H(Z) ⟨x²,y²⟩ {:?}; suite max {} changes",
            long.change_scales, squares.change_scales, suite.max_changes
        ),
    )
}

fn tao_example() -> Outcome {
    let mut rng = seeded(SEED);
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let p = tao_example_profile(n, 24, 100_000_000).unwrap();
        let (small, large) = (p.slope_small.unwrap_or(f64::NAN), p.slope_large.unwrap_or(f64::NAN));
        let in_band = |x: f64, (lo, hi): (f64, f64)| lo <= x && x <= hi;
        let rel = check_tao_relations(n, 50, &mut rng);
        pass &= in_band(small, TAO_SMALL)
            && in_band(large, TAO_LARGE)
            && rel.all_hold
            && rel.max_word_length <= 5
            && rel.letters_in_generating_set;
        parts.push(format!(
            "N={n}: |S|={} slopes {small:.4}/{large:.4}, {} relations hold {} max length {}",
            p.sizes[0], rel.checked, rel.all_hold, rel.max_word_length
        ));
    }
    outcome(pass, parts.join("; "))
}

fn lemmas() -> Outcome {
    let mut ok = true;
    let inj = [(5, 2, true), (100, 5, true), (5, 3, false)];
    for (n, k, iso) in inj {
        ok &= injectivity_radius_check(n, k, BUDGET).unwrap().isomorphic == iso;
    }
    let z6 = ConcreteGroup::finite_abelian(vec![6]).unwrap();
    let a = finite_index_generating_check(&z6, &[vec![2]], BUDGET).unwrap();
    let b = finite_index_generating_check(&z6, &[vec![1]], BUDGET).unwrap();
    let h3 = ConcreteGroup::heisenberg_mod(3).unwrap();
    let c = finite_index_generating_check(&h3, &[vec![0, 0, 1]], BUDGET).unwrap();
    ok &= a.holds && (a.index, a.radius, a.intersection_size) == (2, 3, 3);
    ok &= b.holds && b.index == 1;
    ok &= c.holds && (c.group_order, c.index, c.radius) == (27, 9, 17);

    let lat = |rows: &[Vec<i64>]| IntegerLattice::span_integer(rows[0].len(), rows).unwrap();
    let chain = vec![
        lat(&[vec![8, 0], vec![0, 8]]),
        lat(&[vec![4, 0], vec![0, 8]]),
        lat(&[vec![4, 0], vec![0, 4]]),
        lat(&[vec![1, 0], vec![0, 4]]),
    ];
    let doubled: Vec<IntegerLattice> = chain.iter().map(|l| l.scale(&q(2))).collect();
    let v1 = chain_count_check(&chain, &doubled).unwrap();
    let v2 = chain_count_check(&chain, &chain).unwrap();
    let tight: Vec<IntegerLattice> = [8, 4, 2, 1].iter().map(|&n| lat(&[vec![n]])).collect();
    let v3 = chain_count_check(&tight, &vec![lat(&[vec![8]]); 4]).unwrap();
    let v4 = chain_count_check_finite_index(&chain, &lat(&[vec![2, 0], vec![0, 2]])).unwrap();
    ok &= v1.holds && (v1.distinct, v1.bound) == (4, 12);
    ok &= v2.holds && v2.bound == v2.distinct;
    ok &= v3.holds && v3.bound - v3.distinct <= 1;
    ok &= v4.holds;
    outcome(ok, "injectivity 3/3, finite-index generation 3/3, chain counting 3/3 plus the finite-index form")
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 11] = [
        (1, "BCH/Zassenhaus exactness", Duration::from_secs(30), bch_and_zassenhaus),
        (2, "Heisenberg identities", Duration::from_secs(1), heisenberg_identities),
        (3, "Minkowski suite", Duration::from_secs(120), minkowski),
        (4, "exploration bound", Duration::from_secs(120), exploration),
        (5, "harmonious sandwich", Duration::from_secs(10), heisenberg_sandwich),
        (6, "index sandwich", Duration::from_secs(60), index_sandwich),
        (7, "Følner counting", Duration::from_secs(30), folner),
        (8, "abelian relation scales", Duration::from_secs(60), relation_scales),
        (9, "subgroup exploration", Duration::from_secs(180), subgroup_exploration),
        (10, "Tao example", Duration::from_secs(600), tao_example),
        (11, "lemma checks", Duration::from_secs(30), lemmas),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= limit;
        println!(
            "{} criterion {id} ({name}): {} [{:.2}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("all criteria pass");
    } else {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
