//! Free nilpotent Lie algebras, the BCH group law and the Heisenberg model.

pub mod algebra;
pub mod hall;
pub mod heisenberg;
pub mod poly;
pub mod tensor;

pub use algebra::{bch_series, Algebra, BchSeries, LieElement};
pub use hall::{witt_dimension, BasisLimits, HallBasis, HallElement, HallTree};
pub use poly::{evaluate_polynomial, zassenhaus_product, zassenhaus_terms, LieMonomial, LiePolynomialTerm};
