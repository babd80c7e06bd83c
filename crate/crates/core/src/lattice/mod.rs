//! Integer lattices, convex bodies and the geometry of numbers.

pub mod body;
pub mod enumerate;
pub mod explore;
pub mod hnf;
#[allow(clippy::module_inception)]
pub mod lattice;
pub mod linalg;
pub mod minima;
pub mod minkowski;

pub use body::{BodyKind, ConvexBody, Volume};
pub use enumerate::{count_points, lattice_points, DEFAULT_POINT_BUDGET};
pub use explore::{exploration_bound, explore, explore_with_scales, ExplorationReport};
pub use lattice::{Index, IntegerLattice};
pub use minima::{successive_minima, SuccessiveMinima};
pub use minkowski::{minkowski_second_check, MinkowskiReport};
