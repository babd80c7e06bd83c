use nilgrowth::groups::{
    abelian_relation_scales, check_tao_relations, format_sig, growth_profile, subgroup_scales, tao_example_profile,
    ConcreteGroup, GroupSpec, GrowthProfile, ScaleReport, TaoProfile,
};
use nilgrowth::harmonious::{
    bracket_closure, folner_count, index_sandwich_bound_check, is_harmonious, sandwich, scaling_closure_check,
    ConstantTable, DiscreteGroup, GradedLattice, SandwichOptions,
};
use nilgrowth::lattice::explore::covolume_string;
use nilgrowth::lattice::{
    explore, minkowski_second_check, successive_minima, ConvexBody, ExplorationReport, Index, IntegerLattice,
};
use nilgrowth::lie::{zassenhaus_terms, Algebra, LieElement};
use nilgrowth::rational::{parse_q, q, q_to_f64, Q};
use nilgrowth::suites::{
    adversarial_planar_search, exploration_suite, folner_ratio, harmonious_pair_suite, minkowski_suite, seeded,
    subgroup_scale_suite, ExplorationRow, MinkowskiRow, PRNG, SCALE_SUITE_CEILING,
};
use nilgrowth::{Error, Result};
use serde_json::json;

use crate::args::*;
use crate::report::{to_value, Report, Table};

pub struct Budgets {
    pub points: u64,
    pub elements: u64,
}

fn rational(s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| Error::usage(format!("not a rational number: `{s}`")))
}

fn rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(rational).collect()
}

fn rows(s: &str) -> Result<Vec<Vec<Q>>> {
    s.split(';').filter(|r| !r.trim().is_empty()).map(rationals).collect()
}

fn integer_rows(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::usage(format!("not an integer: `{x}`"))))
                .collect()
        })
        .collect()
}

fn required<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::usage(format!("--{flag} is required here")))
}

fn index_string(i: &Index) -> String {
    match i {
        Index::Finite(n) => n.to_string(),
        Index::Infinite => "infinite".into(),
    }
}

/// `name(args)` in the syntax printed by body labels.
pub fn parse_body(spec: &str, dim: usize) -> Result<ConvexBody> {
    let bad = || Error::usage(format!("cannot parse body `{spec}`"));
    let (name, rest) = spec.trim().split_once('(').ok_or_else(bad)?;
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let body = match name.trim() {
        "cube" => ConvexBody::cube(dim, rational(inner)?)?,
        "box" => ConvexBody::boxed(rationals(inner)?)?,
        "l1" => ConvexBody::l1_ball(dim, rational(inner)?)?,
        "l2" => ConvexBody::l2_ball(dim, rational(inner)?)?,
        "parallelotope" => {
            let (scale, gens) = inner.split_once(';').ok_or_else(bad)?;
            ConvexBody::parallelotope(rows(gens)?, rational(scale)?)?
        }
        _ => return Err(bad()),
    };
    if body.dim() != dim {
        return Err(Error::usage(format!("body `{spec}` has dimension {}, lattice has {dim}", body.dim())));
    }
    Ok(body)
}

/// `lo..hi`, `lo..=hi` or a single dimension.
pub fn parse_dims(s: &str) -> Result<(usize, usize)> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::usage(format!("bad dimension range `{s}`")));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((num(lo)?, num(hi.trim_start_matches('='))?)),
        None => {
            let d = num(s)?;
            Ok((d, d))
        }
    }
}

fn element(alg: &Algebra, coords: &Option<String>, flag: &str) -> Result<LieElement> {
    alg.element(rationals(required(coords, flag)?)?)
}

fn lie(a: &LieArgs) -> Result<Report> {
    let alg = Algebra::from_id(&a.algebra)?;
    let binary = |f: fn(&LieElement, &LieElement) -> Result<LieElement>| -> Result<Report> {
        let (x, y) = (element(&alg, &a.x, "x")?, element(&alg, &a.y, "y")?);
        let result = f(&x, &y)?;
        Report::json(json!({ "x": x, "y": y, "result": result }))
    };
    match a.op {
        LieOp::Bch => binary(LieElement::bch),
        LieOp::Bracket => binary(LieElement::bracket),
        LieOp::Commutator => binary(LieElement::group_commutator),
        LieOp::Dilate => {
            let x = element(&alg, &a.x, "x")?;
            let lambda = rational(required(&a.lambda, "lambda")?)?;
            Report::json(json!({ "x": x, "lambda": lambda.to_string(), "result": x.dilate(&lambda)? }))
        }
        LieOp::Pnorm => {
            let x = element(&alg, &a.x, "x")?;
            Report::json(json!({
                "x": x,
                "pnorm": x.pnorm_exact().map(|p| p.to_string()),
                "pnorm_approx": format_sig(x.pnorm_f64()),
            }))
        }
        LieOp::Zassenhaus => {
            let step = a.step.unwrap_or_else(|| alg.step());
            Report::json(json!({ "step": step, "factors": zassenhaus_terms(step)? }))
        }
        LieOp::Basis => match &alg {
            Algebra::Free(b) => Ok(Report::json(json!({ "basis_id": b.id(), "rows": b.table_rows() }))?
                .with_table(Table::new(["index", "degree", "tree", "structure"], b.table_rows()))),
            Algebra::Heisenberg => Report::json(json!({ "basis_id": "heisenberg", "degrees": alg.degrees() })),
        },
    }
}

fn lattice(a: &LatticeArgs, b: &Budgets) -> Result<Report> {
    let basis = rows(&a.basis)?;
    let dim = basis.first().map_or(0, Vec::len);
    let l = IntegerLattice::span(dim, &basis)?;
    match a.op {
        LatticeOp::Hnf => Report::json(json!({
            "dim": dim,
            "rank": l.rank(),
            "basis": l.basis_strings(),
            "covolume": covolume_string(&l),
        })),
        LatticeOp::Minima => {
            let body = parse_body(required(&a.body, "body")?, dim)?;
            Report::json(successive_minima(&l, &body, b.points)?)
        }
        LatticeOp::Minkowski => {
            let body = parse_body(required(&a.body, "body")?, dim)?;
            let r = minkowski_second_check(&l, &body, b.points)?;
            let failed = !r.holds;
            let value = to_value(&r)?;
            Ok(Report::json(&r)?.violated_if(failed, || format!("Minkowski bounds fail for {}: {value}", body.label())))
        }
        LatticeOp::Explore => {
            let bodies = required(&a.bodies, "bodies")?
                .split('|')
                .map(|s| parse_body(s, dim))
                .collect::<Result<Vec<_>>>()?;
            let r = explore(&l, &bodies, b.points)?;
            let table = Table::new(ExplorationReport::CSV_HEADER, r.csv_rows());
            Ok(Report::json(&r)?.with_table(table).violated_if(!r.within_bound, || {
                format!("{} changes exceed the bound {} at scales {:?}", r.change_count, r.bound, r.change_scales)
            }))
        }
    }
}

fn harmonious(a: &HarmoniousArgs, b: &Budgets) -> Result<Report> {
    let alg = Algebra::from_id(&a.algebra)?;
    let gens: Vec<LieElement> = match &a.generators {
        Some(g) => rows(g)?.into_iter().map(|r| alg.element(r)).collect::<Result<_>>()?,
        None if matches!(alg, Algebra::Heisenberg) => DiscreteGroup::integer_heisenberg().generators().to_vec(),
        None => return Err(Error::usage("--generators is required outside the Heisenberg algebra")),
    };
    let gamma = DiscreteGroup::new(&alg, gens.clone())?;
    let constants = match (a.c1, a.c2) {
        (Some(c1), Some(c2)) => ConstantTable::user(alg.step(), c1, c2)?,
        (None, None) => ConstantTable::for_step(alg.step())?,
        _ => return Err(Error::usage("give both --c1 and --c2 or neither")),
    };
    let opts = SandwichOptions {
        word_radius: a.word_radius,
        budget: b.elements,
        ..SandwichOptions::default()
    };
    match a.op {
        HarmoniousOp::Closure => {
            let l = bracket_closure(&alg, &gens)?;
            let verdict = is_harmonious(&l, alg.step());
            Report::json(json!({ "lattice": l.lattice().basis_strings(), "verdict": verdict }))
        }
        HarmoniousOp::Sandwich => Report::json(sandwich(&gamma, &constants, &opts)?),
        HarmoniousOp::Index => {
            let r = index_sandwich_bound_check(&gamma, &constants, &opts)?;
            let failed = !r.verdict;
            let value = to_value(&r)?;
            Ok(Report::json(&r)?.violated_if(failed, || format!("index sandwich fails: {value}")))
        }
        HarmoniousOp::Scaling => {
            let r = scaling_closure_check(&gamma, &q(constants.c1 as i64), &opts)?;
            let witness = r.witness.clone().unwrap_or_default();
            Ok(Report::json(&r)?.violated_if(r.failures > 0, || format!("C1·X + Y leaves log Γ: {witness}")))
        }
        HarmoniousOp::Folner => {
            let lambda = rational(required(&a.lambda, "lambda")?)?;
            let l = GradedLattice::span(&alg, &gens)?;
            let count = folner_count(&l, &lambda, b.points)?;
            let qdim = alg.homogeneous_dimension() as i32;
            let ratio = Q::from_integer(count.clone()) / num_pow(&lambda, qdim);
            Report::json(json!({
                "lambda": lambda.to_string(),
                "homogeneous_dimension": qdim,
                "count": count.to_string(),
                "ratio": ratio.to_string(),
                "ratio_approx": format_sig(q_to_f64(&ratio)),
            }))
        }
    }
}

fn num_pow(x: &Q, e: i32) -> Q {
    (0..e).fold(q(1), |acc, _| acc * x)
}

fn tao_report(p: &TaoProfile) -> Result<Report> {
    let slope = |s: Option<f64>| s.map(format_sig);
    let summary = json!({
        "N": p.n,
        "size_S": p.sizes[0] as u64,
        "slope_small": slope(p.slope_small),
        "slope_large": slope(p.slope_large),
    });
    let sizes: Vec<u64> = p.sizes.iter().map(|&s| s as u64).collect();
    let mut report = Report::json(json!({
        "N": p.n,
        "sizes": sizes,
        "slope_small": slope(p.slope_small),
        "slope_large": slope(p.slope_large),
    }))?
    .with_table(Table::new(TaoProfile::CSV_HEADER, p.csv_rows()))
    .csv_by_default();
    report.summary = Some(summary);
    Ok(report)
}

fn growth(a: &GrowthArgs, b: &Budgets) -> Result<Report> {
    if a.group == "heisenberg-tao" {
        let n = *required(&a.n, "N")?;
        let p = tao_example_profile(n, a.n_max.unwrap_or(24), b.elements)?;
        return tao_report(&p);
    }
    let spec = GroupSpec {
        kind: a.group.clone(),
        moduli: a.moduli.clone(),
        n: a.n,
        generators: None,
    };
    let g = ConcreteGroup::from_spec(&spec)?;
    let r_max = a.r_max.or(a.n_max).unwrap_or(16);
    let p: GrowthProfile = growth_profile(&g, r_max, b.elements)?;
    Ok(Report::json(&p)?
        .with_table(Table::new(GrowthProfile::CSV_HEADER, p.csv_rows()))
        .csv_by_default())
}

fn scale_report(r: &ScaleReport) -> Result<Report> {
    Ok(Report::json(r)?.with_table(Table::new(ScaleReport::CSV_HEADER, r.csv_rows())))
}

fn relations(a: &RelationsArgs, b: &Budgets) -> Result<Report> {
    match (&a.abelian, &a.group) {
        (Some(moduli), None) => scale_report(&abelian_relation_scales(moduli, a.max_scale, b.points)?),
        (None, Some(kind)) => {
            let g = ConcreteGroup::from_spec(&GroupSpec {
                kind: kind.clone(),
                moduli: a.moduli.clone(),
                n: None,
                generators: None,
            })?;
            let gens = integer_rows(required(&a.subgroup, "subgroup")?)?;
            scale_report(&subgroup_scales(&g, &gens, a.max_scale, b.elements)?)
        }
        _ => Err(Error::usage("give exactly one of --abelian and --group")),
    }
}

fn verify(a: &VerifyArgs, b: &Budgets) -> Result<Report> {
    let lead = [("prng", PRNG.to_string()), ("seed", a.seed.to_string())];
    let report = match a.suite {
        Suite::Minkowski => {
            let s = minkowski_suite(a.seed, parse_dims(&a.dims)?, a.trials, b.points)?;
            let bad: Vec<&MinkowskiRow> = s.rows.iter().filter(|r| !r.holds).collect();
            let detail = to_value(&bad)?;
            Report::json(&s)?
                .with_table(Table::new(MinkowskiRow::CSV_HEADER, s.rows.iter().map(MinkowskiRow::csv_row)))
                .violated_if(!s.all_hold, || format!("ratios outside [1, d!]: {detail}"))
        }
        Suite::Exploration => {
            let s = exploration_suite(a.seed, parse_dims(&a.dims)?, a.trials, b.points)?;
            let bad: Vec<&ExplorationRow> = s.rows.iter().filter(|r| !r.within_bound).collect();
            let detail = to_value(&bad)?;
            Report::json(&s)?
                .with_table(Table::new(ExplorationRow::CSV_HEADER, s.rows.iter().map(ExplorationRow::csv_row)))
                .violated_if(!s.all_within_bound, || format!("explorations over the bound: {detail}"))
        }
        Suite::Planar => {
            let s = adversarial_planar_search(a.seed, a.trials, b.points)?;
            let row = [s.attempts.to_string(), s.bound.to_string(), s.best_changes.to_string()];
            let failed = s.best_changes > s.bound;
            let detail = to_value(&s.best)?;
            Report::json(&s)?
                .with_table(Table::new(["attempts", "bound", "best_changes"], [row]))
                .violated_if(failed, || format!("planar exploration over the bound: {detail}"))
        }
        Suite::Pairs => {
            let s = harmonious_pair_suite(a.seed, a.trials, b.elements)?;
            let rows = s.rows.iter().map(|r| {
                [
                    r.trial.to_string(),
                    r.both_harmonious.to_string(),
                    index_string(&r.additive_index),
                    r.multiplicative_index.clone(),
                    r.equal.to_string(),
                ]
            });
            let table = Table::new(
                ["trial", "both_harmonious", "additive_index", "multiplicative_index", "equal"],
                rows,
            );
            let detail = to_value(s.rows.iter().filter(|r| !r.equal).collect::<Vec<_>>())?;
            Report::json(&s)?
                .with_table(table)
                .violated_if(!s.all_equal, || format!("index mismatch: {detail}"))
        }
        Suite::Scales => {
            let s = subgroup_scale_suite(a.seed, a.trials, b.elements)?;
            let rows = s.rows.iter().map(|r| {
                let scales: Vec<String> = r.change_scales.iter().map(ToString::to_string).collect();
                [
                    r.trial.to_string(),
                    r.group.clone(),
                    r.subgroup.clone(),
                    r.n_max.to_string(),
                    r.change_count.to_string(),
                    scales.join(" "),
                ]
            });
            let table = Table::new(["trial", "group", "subgroup", "n_max", "change_count", "change_scales"], rows);
            let over = to_value(s.rows.iter().filter(|r| r.change_count > SCALE_SUITE_CEILING).collect::<Vec<_>>())?;
            Report::json(&s)?
                .with_table(table)
                .violated_if(s.max_changes > SCALE_SUITE_CEILING, || format!("more than {SCALE_SUITE_CEILING} changes: {over}"))
        }
        Suite::Folner => {
            let (count, ratio) = folner_ratio(a.lambda, b.points)?;
            let approx = q_to_f64(&ratio);
            let row = [a.lambda.to_string(), count.to_string(), ratio.to_string(), format_sig(approx)];
            let failed = ((approx - 8.0) / 8.0).abs() > 0.15;
            Report::json(json!({
                "lambda": a.lambda,
                "count": count.to_string(),
                "ratio": ratio.to_string(),
                "ratio_approx": format_sig(approx),
            }))?
            .with_table(Table::new(["lambda", "count", "ratio", "ratio_approx"], [row]))
            .violated_if(failed, || format!("count/λ⁴ = {} is not within 15% of 8", format_sig(approx)))
        }
        Suite::TaoRelations => {
            let r = check_tao_relations(a.n, a.trials, &mut seeded(a.seed));
            let row = [
                a.n.to_string(),
                r.checked.to_string(),
                r.max_word_length.to_string(),
                r.letters_in_generating_set.to_string(),
                r.all_hold.to_string(),
            ];
            let failed = !r.all_hold || r.max_word_length > 5 || !r.letters_in_generating_set;
            let failures = r.failures.join("; ");
            let max = r.max_word_length;
            Report::json(json!({ "prng": PRNG, "seed": a.seed, "N": a.n, "check": r }))?
                .with_table(Table::new(
                    ["N", "checked", "max_word_length", "letters_in_generating_set", "all_hold"],
                    [row],
                ))
                .violated_if(failed, || format!("relations fail or exceed length 5 (max {max}): {failures}"))
        }
    };
    let mut report = report;
    report.table = report.table.take().map(|t| t.with_leading(&lead));
    Ok(report.csv_by_default())
}

pub fn run(command: &Command, budgets: &Budgets) -> Result<Report> {
    match command {
        Command::Lie(a) => lie(a),
        Command::Lattice(a) => lattice(a, budgets),
        Command::Harmonious(a) => harmonious(a, budgets),
        Command::Growth(a) => growth(a, budgets),
        Command::Relations(a) => relations(a, budgets),
        Command::Verify(a) => verify(a, budgets),
    }
}
