//! Symmetric convex bodies with exact membership.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::linalg::{det, dot, inverse};
use crate::error::{Error, Result};
use crate::rational::{factorial, pi_interval, q, qi, qmat, qstr, qvec, ExactReal, Interval, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BodyKind {
    /// `Π [-w_i, w_i]`.
    Box {
        #[serde(with = "qvec")]
        half_widths: Vec<Q>,
    },
    L1Ball {
        #[serde(with = "qstr")]
        radius: Q,
    },
    L2Ball {
        #[serde(with = "qstr")]
        radius: Q,
    },
    /// `scale · {Σ t_j g_j : |t_j| <= 1}` for `d` independent generators `g_j`.
    Parallelotope {
        #[serde(with = "qmat")]
        generators: Vec<Vec<Q>>,
        #[serde(with = "qstr")]
        scale: Q,
    },
    /// `{x : |x_i| <= λ^{deg_i}}`, the ∞-norm ball of a graded quasi-norm.
    GradedBox {
        degrees: Vec<usize>,
        #[serde(with = "qstr")]
        lambda: Q,
    },
}

/// Volume of a body: exact, or `sqrt(c · π^e)` for Euclidean balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Volume {
    Exact(Q),
    PiPower { squared_coefficient: Q, pi_exponent: u32 },
}

impl Volume {
    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Volume::Exact(v) => Some(v),
            Volume::PiPower { .. } => None,
        }
    }

    /// Certified enclosure of the volume.
    pub fn enclosure(&self) -> Interval {
        match self {
            Volume::Exact(v) => Interval::point(v.clone()),
            Volume::PiPower {
                squared_coefficient,
                pi_exponent,
            } => {
                let pi = pi_interval();
                let mut p = Interval::point(Q::one());
                for _ in 0..*pi_exponent {
                    p = p.mul_pos(&pi);
                }
                p.scale(squared_coefficient).sqrt_pos(128)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexBody {
    dim: usize,
    #[serde(flatten)]
    kind: BodyKind,
    #[serde(skip)]
    inverse: Option<Vec<Vec<Q>>>,
}

impl ConvexBody {
    pub fn new(dim: usize, kind: BodyKind) -> Result<Self> {
        let positive = |x: &Q, what: &str| {
            if x.is_positive() {
                Ok(())
            } else {
                Err(Error::usage(format!("{what} must be positive, got {x}")))
            }
        };
        if dim == 0 {
            return Err(Error::usage("convex bodies need dimension at least 1"));
        }
        let mut inv = None;
        match &kind {
            BodyKind::Box { half_widths } => {
                if half_widths.len() != dim {
                    return Err(Error::usage(format!("box has {} half-widths for dimension {dim}", half_widths.len())));
                }
                for w in half_widths {
                    positive(w, "box half-width")?;
                }
            }
            BodyKind::L1Ball { radius } | BodyKind::L2Ball { radius } => positive(radius, "radius")?,
            BodyKind::Parallelotope { generators, scale } => {
                positive(scale, "parallelotope scale")?;
                if generators.len() != dim || generators.iter().any(|g| g.len() != dim) {
                    return Err(Error::usage(format!("parallelotope needs {dim} generators of length {dim}")));
                }
                // columns of A are the generators, so A = transpose(generators)
                let a = transpose(generators);
                inv = Some(inverse(&a).ok_or_else(|| Error::usage("parallelotope generators are dependent"))?);
            }
            BodyKind::GradedBox { degrees, lambda } => {
                positive(lambda, "graded box λ")?;
                if degrees.len() != dim || degrees.contains(&0) {
                    return Err(Error::usage(format!("graded box needs {dim} positive degrees")));
                }
            }
        }
        Ok(ConvexBody { dim, kind, inverse: inv })
    }

    pub fn boxed(half_widths: Vec<Q>) -> Result<Self> {
        Self::new(half_widths.len(), BodyKind::Box { half_widths })
    }

    pub fn cube(dim: usize, half_width: Q) -> Result<Self> {
        Self::boxed(vec![half_width; dim])
    }

    pub fn l1_ball(dim: usize, radius: Q) -> Result<Self> {
        Self::new(dim, BodyKind::L1Ball { radius })
    }

    pub fn l2_ball(dim: usize, radius: Q) -> Result<Self> {
        Self::new(dim, BodyKind::L2Ball { radius })
    }

    pub fn parallelotope(generators: Vec<Vec<Q>>, scale: Q) -> Result<Self> {
        Self::new(generators.len(), BodyKind::Parallelotope { generators, scale })
    }

    pub fn graded_box(degrees: Vec<usize>, lambda: Q) -> Result<Self> {
        Self::new(degrees.len(), BodyKind::GradedBox { degrees, lambda })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn is_polyhedral(&self) -> bool {
        !matches!(self.kind, BodyKind::L2Ball { .. })
    }

    /// Minkowski functional `inf { t : v ∈ tK }`.
    pub fn gauge(&self, v: &[Q]) -> ExactReal {
        ExactReal::Rational(match &self.kind {
            BodyKind::Box { half_widths } => v
                .iter()
                .zip(half_widths)
                .map(|(x, w)| x.abs() / w)
                .max()
                .unwrap_or_else(Q::zero),
            BodyKind::L1Ball { radius } => v.iter().fold(Q::zero(), |acc, x| acc + x.abs()) / radius,
            BodyKind::L2Ball { radius } => return ExactReal::sqrt_of(dot(v, v) / (radius * radius)),
            BodyKind::Parallelotope { scale, .. } => {
                let inv = self.inverse.as_ref().expect("inverse cached at construction");
                inv.iter().map(|row| dot(row, v).abs()).max().unwrap_or_else(Q::zero) / scale
            }
            BodyKind::GradedBox { degrees, lambda } => v
                .iter()
                .zip(degrees)
                .map(|(x, d)| x.abs() / pow(lambda, *d))
                .max()
                .unwrap_or_else(Q::zero),
        })
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        match &self.kind {
            BodyKind::L2Ball { radius } => dot(v, v) <= radius * radius,
            _ => self.gauge(v).square() <= Q::one(),
        }
    }

    /// `tK` for `t > 0`; a scaled graded box is an ordinary box.
    pub fn scaled(&self, t: &Q) -> ConvexBody {
        let kind = match &self.kind {
            BodyKind::Box { half_widths } => BodyKind::Box {
                half_widths: half_widths.iter().map(|w| w * t).collect(),
            },
            BodyKind::L1Ball { radius } => BodyKind::L1Ball { radius: radius * t },
            BodyKind::L2Ball { radius } => BodyKind::L2Ball { radius: radius * t },
            BodyKind::Parallelotope { generators, scale } => BodyKind::Parallelotope {
                generators: generators.clone(),
                scale: scale * t,
            },
            BodyKind::GradedBox { .. } => BodyKind::Box {
                half_widths: self.bounding_half_widths().iter().map(|w| w * t).collect(),
            },
        };
        ConvexBody::new(self.dim, kind).expect("scaling by a positive factor keeps the body valid")
    }

    /// Per-coordinate bounds `|x_i| <= w_i` valid on the whole body.
    pub fn bounding_half_widths(&self) -> Vec<Q> {
        match &self.kind {
            BodyKind::Box { half_widths } => half_widths.clone(),
            BodyKind::L1Ball { radius } | BodyKind::L2Ball { radius } => vec![radius.clone(); self.dim],
            BodyKind::Parallelotope { generators, scale } => (0..self.dim)
                .map(|i| generators.iter().fold(Q::zero(), |acc, g| acc + g[i].abs()) * scale)
                .collect(),
            BodyKind::GradedBox { degrees, lambda } => degrees.iter().map(|d| pow(lambda, *d)).collect(),
        }
    }

    /// `R` with `K ⊆ [-R, R]^d`.
    pub fn outer_radius(&self) -> Q {
        self.bounding_half_widths().into_iter().max().unwrap_or_else(Q::zero)
    }

    pub fn volume(&self) -> Volume {
        let d = self.dim as u32;
        let two = q(2);
        match &self.kind {
            BodyKind::Box { .. } | BodyKind::GradedBox { .. } => {
                Volume::Exact(self.bounding_half_widths().iter().fold(Q::one(), |acc, w| acc * w * &two))
            }
            BodyKind::L1Ball { radius } => Volume::Exact(pow(&(radius * &two), self.dim) / qi(&factorial(d))),
            BodyKind::Parallelotope { generators, scale } => {
                Volume::Exact(pow(&two, self.dim) * det(generators).abs() * pow(scale, self.dim))
            }
            BodyKind::L2Ball { radius } => {
                let (coef, e) = unit_ball_volume_squared(self.dim);
                Volume::PiPower {
                    squared_coefficient: coef * pow(radius, 2 * self.dim),
                    pi_exponent: e,
                }
            }
        }
    }

    /// Vertices of a polyhedral body.
    pub fn vertices(&self) -> Option<Vec<Vec<Q>>> {
        let signs = |d: usize| -> Vec<Vec<Q>> {
            (0..1usize << d)
                .map(|mask| (0..d).map(|i| if mask >> i & 1 == 1 { -Q::one() } else { Q::one() }).collect())
                .collect()
        };
        match &self.kind {
            BodyKind::L2Ball { .. } => None,
            BodyKind::L1Ball { radius } => Some(
                (0..self.dim)
                    .flat_map(|i| {
                        [radius.clone(), -radius.clone()].map(|r| {
                            let mut v = vec![Q::zero(); self.dim];
                            v[i] = r;
                            v
                        })
                    })
                    .collect(),
            ),
            BodyKind::Parallelotope { generators, scale } => Some(
                signs(self.dim)
                    .iter()
                    .map(|s| {
                        (0..self.dim)
                            .map(|i| generators.iter().zip(s).fold(Q::zero(), |acc, (g, e)| acc + &g[i] * e) * scale)
                            .collect()
                    })
                    .collect(),
            ),
            BodyKind::Box { .. } | BodyKind::GradedBox { .. } => {
                let w = self.bounding_half_widths();
                Some(
                    signs(self.dim)
                        .iter()
                        .map(|s| s.iter().zip(&w).map(|(e, x)| e * x).collect())
                        .collect(),
                )
            }
        }
    }

    /// Exact test of `self ⊆ outer`.
    pub fn is_nested_in(&self, outer: &ConvexBody) -> Result<bool> {
        if self.dim != outer.dim {
            return Err(Error::usage(format!(
                "cannot nest a dimension-{} body in a dimension-{} body",
                self.dim, outer.dim
            )));
        }
        if let Some(monotone) = self.same_kind_monotone(outer) {
            if monotone {
                return Ok(true);
            }
        }
        if let Some(vs) = self.vertices() {
            return Ok(vs.iter().all(|v| outer.contains(v)));
        }
        let BodyKind::L2Ball { radius } = &self.kind else { unreachable!() };
        let r2 = radius * radius;
        Ok(match &outer.kind {
            BodyKind::L2Ball { radius: big } => radius <= big,
            BodyKind::L1Ball { radius: big } => r2 * q(self.dim as i64) <= big * big,
            BodyKind::Box { .. } | BodyKind::GradedBox { .. } => {
                outer.bounding_half_widths().iter().all(|w| r2 <= w * w)
            }
            BodyKind::Parallelotope { scale, .. } => {
                let inv = outer.inverse.as_ref().expect("inverse cached at construction");
                inv.iter().all(|row| &r2 * dot(row, row) <= scale * scale)
            }
        })
    }

    fn same_kind_monotone(&self, outer: &ConvexBody) -> Option<bool> {
        Some(match (&self.kind, &outer.kind) {
            (BodyKind::Box { half_widths: a }, BodyKind::Box { half_widths: b }) => a.iter().zip(b).all(|(x, y)| x <= y),
            (BodyKind::L1Ball { radius: a }, BodyKind::L1Ball { radius: b })
            | (BodyKind::L2Ball { radius: a }, BodyKind::L2Ball { radius: b }) => a <= b,
            (
                BodyKind::Parallelotope { generators: g, scale: a },
                BodyKind::Parallelotope { generators: h, scale: b },
            ) if g == h => a <= b,
            (
                BodyKind::GradedBox { degrees: d, lambda: a },
                BodyKind::GradedBox { degrees: e, lambda: b },
            ) if d == e => a <= b,
            _ => return None,
        })
    }

    pub fn label(&self) -> String {
        let join = |v: &[Q]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match &self.kind {
            BodyKind::Box { half_widths } => format!("box({})", join(half_widths)),
            BodyKind::L1Ball { radius } => format!("l1({radius})"),
            BodyKind::L2Ball { radius } => format!("l2({radius})"),
            BodyKind::Parallelotope { scale, .. } => format!("parallelotope({scale})"),
            BodyKind::GradedBox { lambda, .. } => format!("graded({lambda})"),
        }
    }
}

fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn pow(x: &Q, e: usize) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

/// `(c, e)` with `vol(B_2^d)^2 = c · π^e`.
pub fn unit_ball_volume_squared(d: usize) -> (Q, u32) {
    let m = d / 2;
    let mf = qi(&factorial(m as u32));
    if d.is_multiple_of(2) {
        (Q::one() / (&mf * &mf), d as u32)
    } else {
        let num = q(2) * &mf * pow(&q(4), m);
        let v = num / qi(&factorial(d as u32));
        (&v * &v, (d - 1) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn gauges() {
        let b = ConvexBody::boxed(vec![q(2), qr(1, 2)]).unwrap();
        assert_eq!(b.gauge(&[q(1), q(0)]), ExactReal::Rational(qr(1, 2)));
        assert_eq!(b.gauge(&[q(0), q(1)]), ExactReal::Rational(q(2)));
        let l2 = ConvexBody::l2_ball(2, q(1)).unwrap();
        assert_eq!(l2.gauge(&[q(1), q(1)]), ExactReal::Sqrt(q(2)));
        assert_eq!(l2.gauge(&[q(3), q(4)]), ExactReal::Rational(q(5)));
        let p = ConvexBody::parallelotope(vec![vec![q(1), q(1)], vec![q(1), q(-1)]], q(1)).unwrap();
        assert_eq!(p.gauge(&[q(2), q(0)]), ExactReal::Rational(q(1)));
        assert!(p.contains(&[q(2), q(0)]));
        assert!(!p.contains(&[q(2), q(1)]));
    }

    #[test]
    fn volumes() {
        assert_eq!(ConvexBody::cube(2, q(1)).unwrap().volume(), Volume::Exact(q(4)));
        assert_eq!(ConvexBody::l1_ball(3, q(1)).unwrap().volume(), Volume::Exact(qr(8, 6)));
        let p = ConvexBody::parallelotope(vec![vec![q(1), q(1)], vec![q(1), q(-1)]], q(1)).unwrap();
        assert_eq!(p.volume(), Volume::Exact(q(8)));
        assert_eq!(unit_ball_volume_squared(1), (q(4), 0));
        assert_eq!(unit_ball_volume_squared(2), (q(1), 2));
        assert_eq!(unit_ball_volume_squared(3), (qr(16, 9), 2));
        assert_eq!(unit_ball_volume_squared(4), (qr(1, 4), 4));
        let disk = ConvexBody::l2_ball(2, q(1)).unwrap().volume().enclosure();
        assert!(disk.lo < qr(314160, 100000) && disk.hi > qr(314158, 100000));
        assert!(&disk.hi - &disk.lo < qr(1, 1_000_000_000));
    }

    #[test]
    fn nesting() {
        let small = ConvexBody::boxed(vec![qr(3, 2), qr(1, 4)]).unwrap();
        let big = ConvexBody::cube(2, qr(3, 2)).unwrap();
        assert!(small.is_nested_in(&big).unwrap());
        assert!(!big.is_nested_in(&small).unwrap());
        let disk = ConvexBody::l2_ball(2, q(1)).unwrap();
        assert!(disk.is_nested_in(&big).unwrap());
        assert!(!disk.is_nested_in(&ConvexBody::l1_ball(2, qr(7, 5)).unwrap()).unwrap());
        assert!(disk.is_nested_in(&ConvexBody::l1_ball(2, qr(3, 2)).unwrap()).unwrap());
        assert!(ConvexBody::l1_ball(2, q(1)).unwrap().is_nested_in(&disk).unwrap());
        let diamond = ConvexBody::parallelotope(vec![vec![q(1), q(1)], vec![q(1), q(-1)]], q(1)).unwrap();
        assert!(disk.is_nested_in(&diamond).unwrap());
        assert!(!ConvexBody::l2_ball(2, qr(3, 2)).unwrap().is_nested_in(&diamond).unwrap());
    }

    #[test]
    fn graded_box_scaling() {
        let g = ConvexBody::graded_box(vec![1, 1, 2], q(2)).unwrap();
        assert_eq!(g.bounding_half_widths(), vec![q(2), q(2), q(4)]);
        assert_eq!(g.volume(), Volume::Exact(q(128)));
        assert!(g.is_nested_in(&ConvexBody::graded_box(vec![1, 1, 2], q(3)).unwrap()).unwrap());
    }
}
