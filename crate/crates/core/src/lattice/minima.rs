//! Successive minima by exhaustive enumeration.

use num_traits::One;
use serde::Serialize;

use super::body::ConvexBody;
use super::enumerate::lattice_points;
use super::lattice::IntegerLattice;
use super::linalg::RankTracker;
use crate::error::{Error, Result};
use crate::rational::{qvec, ExactReal, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuccessiveMinima {
    pub values: Vec<ExactReal>,
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: Vec<Vec<Q>>,
}

fn serialize_witnesses<S: serde::Serializer>(w: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Row<'a>(&'a [Q]);
    impl Serialize for Row<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            qvec::serialize(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for r in w {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

/// A rational `r >= x`, not much larger.
fn rational_upper(x: &ExactReal) -> Q {
    match x {
        ExactReal::Rational(r) => r.clone(),
        ExactReal::Sqrt(s) => (s + Q::one()) / Q::from_integer(2.into()),
    }
}

/// `λ_1 <= ... <= λ_r` of `lattice` (rank `r`) with respect to `body`, with
/// independent witness vectors attaining them.
pub fn successive_minima(lattice: &IntegerLattice, body: &ConvexBody, budget: u64) -> Result<SuccessiveMinima> {
    if lattice.dim() != body.dim() {
        return Err(Error::usage(format!(
            "lattice of dimension {} with a body of dimension {}",
            lattice.dim(),
            body.dim()
        )));
    }
    if lattice.rank() == 0 {
        return Err(Error::usage("successive minima of the zero lattice"));
    }
    let basis_gauges: Vec<Q> = lattice.basis().iter().map(|b| rational_upper(&body.gauge(b))).collect();
    let t_max = basis_gauges.iter().max().cloned().expect("nonempty basis");
    let mut t = basis_gauges.iter().min().cloned().expect("nonempty basis");
    let mut spent = 0u64;
    loop {
        let remaining = budget.saturating_sub(spent);
        let mut points: Vec<(ExactReal, Vec<Q>)> = lattice_points(lattice, &body.scaled(&t), remaining)
            .map_err(|e| match e {
                Error::Resource { what, .. } => Error::resource(what, budget),
                other => other,
            })?
            .into_iter()
            .filter(|v| v.iter().any(|x| *x != Q::from_integer(0.into())))
            .map(|v| (body.gauge(&v), v))
            .collect();
        spent = spent.saturating_add(points.len() as u64);
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("total order").then_with(|| a.1.cmp(&b.1)));
        let mut tracker = RankTracker::new();
        let mut out = SuccessiveMinima {
            values: Vec::new(),
            witnesses: Vec::new(),
        };
        for (g, v) in points {
            if tracker.insert(&v) {
                out.values.push(g);
                out.witnesses.push(v);
                if tracker.rank() == lattice.rank() {
                    return Ok(out);
                }
            }
        }
        assert!(t < t_max, "basis vectors lie in t_max·K");
        t = (&t * Q::from_integer(2.into())).min(t_max.clone());
    }
}
