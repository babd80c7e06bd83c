//! Growth functions `Gr(r) = |B(r)|` and the two-regime box example in
//! `H(Z)`.

use rand::Rng;
use serde::Serialize;

use super::concrete::{ConcreteGroup, GroupKind};
use super::heisenberg::HeisElem;
use super::interval::{CellStep, IntervalBall};
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Debug, Clone, Serialize)]
pub struct DoublingRatio {
    pub r: usize,
    #[serde(with = "crate::rational::qstr")]
    pub ratio: Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthProfile {
    pub sizes: Vec<u128>,
    /// `K(r) = Gr(3r)/Gr(r)` for every `r ≥ 1` with `3r` in range.
    pub doubling: Vec<DoublingRatio>,
}

impl GrowthProfile {
    pub const CSV_HEADER: [&'static str; 3] = ["radius", "size", "changed"];

    pub fn csv_rows(&self) -> Vec<[String; 3]> {
        self.sizes
            .iter()
            .enumerate()
            .map(|(r, s)| [r.to_string(), s.to_string(), (r > 0 && self.sizes[r - 1] != *s).to_string()])
            .collect()
    }
}

fn heisenberg_steps(g: &ConcreteGroup) -> Vec<(i64, i64, i64)> {
    g.generators().iter().map(|e| (e[0], e[1], e[2])).collect()
}

/// `Gr(0..=r_max)`; balls in `H(Z)` are counted through interval sets.
pub fn growth_profile(g: &ConcreteGroup, r_max: usize, budget: u64) -> Result<GrowthProfile> {
    let sizes: Vec<u128> = if matches!(g.kind(), GroupKind::HeisenbergZ) {
        let mut ball = IntervalBall::from_generators(&heisenberg_steps(g), budget)?;
        let mut out = vec![1];
        for _ in 0..r_max {
            ball.grow()?;
            out.push(ball.size());
        }
        out
    } else {
        let layers = g.ball_layers(r_max, budget)?;
        let mut acc = 0u128;
        let mut out: Vec<u128> = layers
            .iter()
            .map(|l| {
                acc += l.len() as u128;
                acc
            })
            .collect();
        out.resize(r_max + 1, acc);
        out
    };
    let doubling = (1..=r_max / 3)
        .map(|r| DoublingRatio {
            r,
            ratio: Q::new(sizes[3 * r].into(), sizes[r].into()),
        })
        .collect();
    Ok(GrowthProfile { sizes, doubling })
}

/// `log₂ Gr(2^{j+1}) - log₂ Gr(2^j)` for `j < j_max`.
pub fn dyadic_exponents(g: &ConcreteGroup, j_max: u32, budget: u64) -> Result<Vec<f64>> {
    let p = growth_profile(g, 1usize << j_max, budget)?;
    Ok((0..j_max)
        .map(|j| {
            let lo = p.sizes[1usize << j] as f64;
            let hi = p.sizes[1usize << (j + 1)] as f64;
            (hi / lo).log2()
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct TaoProfile {
    #[serde(rename = "N")]
    pub n: i64,
    /// `|Sⁿ|` for `n = 1..=n_max`.
    pub sizes: Vec<u128>,
    /// Least-squares slope of `log(|Sⁿ|/|S|)` against `log n` for `n ≤ N`.
    pub slope_small: Option<f64>,
    /// The same for `N < n ≤ n_max`.
    pub slope_large: Option<f64>,
}

impl TaoProfile {
    pub const CSV_HEADER: [&'static str; 3] = ["n", "size", "log_ratio"];

    pub fn csv_rows(&self) -> Vec<[String; 3]> {
        let s1 = self.sizes[0] as f64;
        self.sizes
            .iter()
            .enumerate()
            .map(|(i, &s)| [(i + 1).to_string(), s.to_string(), format_sig((s as f64 / s1).ln())])
            .collect()
    }
}

/// Six significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = 6 - 1 - x.abs().log10().floor() as i32;
    if digits >= 0 {
        format!("{:.*}", digits as usize, x)
    } else {
        format!("{:.5e}", x)
    }
}

/// Ordinary least-squares slope; `None` with fewer than two points.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Box generators `[-N,N]² × [-N³,N³]` as interval steps.
pub fn tao_steps(n: i64) -> Vec<CellStep> {
    let c = n.pow(3);
    (-n..=n)
        .flat_map(|a| (-n..=n).map(move |b| CellStep { a, b, lo: -c, hi: c }))
        .collect()
}

pub const TAO_MAX_N: i64 = 4;
pub const TAO_MAX_POWER: usize = 24;

/// Exact `|Sⁿ|` for the box generating set, with the fitted two-segment
/// slopes split at `n = N`.
pub fn tao_example_profile(n: i64, n_max: usize, budget: u64) -> Result<TaoProfile> {
    if !(1..=TAO_MAX_N).contains(&n) || !(1..=TAO_MAX_POWER).contains(&n_max) {
        return Err(Error::usage(format!(
            "the box example needs 1 ≤ N ≤ {TAO_MAX_N} and 1 ≤ n ≤ {TAO_MAX_POWER}"
        )));
    }
    let mut ball = IntervalBall::new(tao_steps(n), budget)?;
    let mut sizes = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        ball.grow()?;
        sizes.push(ball.size());
    }
    let s1 = sizes[0] as f64;
    let pts: Vec<(f64, f64)> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| (((i + 1) as f64).ln(), (s as f64 / s1).ln()))
        .collect();
    let split = (n as usize).min(n_max);
    Ok(TaoProfile {
        n,
        slope_small: least_squares_slope(&pts[..split]),
        slope_large: least_squares_slope(&pts[split..]),
        sizes,
    })
}

/// A relator: the product of its letters is the identity.
#[derive(Debug, Clone, Serialize)]
pub struct Relator {
    pub family: &'static str,
    pub letters: Vec<HeisElem>,
}

impl Relator {
    pub fn holds(&self) -> bool {
        self.letters.iter().fold(HeisElem::ID, |acc, g| acc.mul(*g)) == HeisElem::ID
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub checked: usize,
    pub max_word_length: usize,
    /// Every letter lies in `S ∪ S⁻¹`.
    pub letters_in_generating_set: bool,
    pub all_hold: bool,
    pub failures: Vec<String>,
}

pub fn in_tao_box(n: i64, g: &HeisElem) -> bool {
    g.a.abs() <= n && g.b.abs() <= n && g.c.abs() <= n.pow(3)
}

/// The Heisenberg relations together with `samples` random instances of
/// each exchange family `(a±1,b,c) = (a,b,c)x^{±1}`,
/// `(a,b±1,c) = y^{±1}(a,b,c)` and `(a,b,c±1) = (a,b,c)z^{±1}`.
pub fn tao_relators(n: i64, samples: usize, rng: &mut impl Rng) -> Vec<Relator> {
    use HeisElem as H;
    let (x, y, z) = (H::X, H::Y, H::Z);
    let mut out = vec![
        Relator { family: "commutator", letters: vec![x, y, x.inv(), y.inv(), z.inv()] },
        Relator { family: "x-z", letters: vec![x, z, x.inv(), z.inv()] },
        Relator { family: "y-z", letters: vec![y, z, y.inv(), z.inv()] },
    ];
    let c3 = n.pow(3);
    for _ in 0..samples {
        for (family, axis) in [("exchange-a", 0), ("exchange-b", 1), ("exchange-c", 2)] {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let bound = [n, n, c3];
            let mut v = [0i64; 3];
            for (i, x) in v.iter_mut().enumerate() {
                let lo = -bound[i] + if i == axis && sign < 0 { 1 } else { 0 };
                let hi = bound[i] - if i == axis && sign > 0 { 1 } else { 0 };
                *x = rng.gen_range(lo..=hi);
            }
            let g = H::new(v[0], v[1], v[2]);
            let mut w = v;
            w[axis] += sign;
            let lhs = H::new(w[0], w[1], w[2]);
            let letters = match axis {
                0 => vec![lhs.inv(), g, x.pow(sign)],
                1 => vec![lhs.inv(), y.pow(sign), g],
                _ => vec![lhs.inv(), g, z.pow(sign)],
            };
            out.push(Relator { family, letters });
        }
    }
    out
}

pub fn check_tao_relations(n: i64, samples: usize, rng: &mut impl Rng) -> RelationCheck {
    let relators = tao_relators(n, samples, rng);
    let failures: Vec<String> = relators
        .iter()
        .filter(|r| !r.holds())
        .map(|r| {
            let w: Vec<String> = r.letters.iter().map(ToString::to_string).collect();
            format!("{}: {}", r.family, w.join(" "))
        })
        .collect();
    RelationCheck {
        checked: relators.len(),
        max_word_length: relators.iter().map(|r| r.letters.len()).max().unwrap_or(0),
        letters_in_generating_set: relators
            .iter()
            .all(|r| r.letters.iter().all(|g| in_tao_box(n, g) || in_tao_box(n, &g.inv()))),
        all_hold: failures.is_empty(),
        failures,
    }
}
