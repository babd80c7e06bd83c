//! Concrete finitely generated groups and their word metrics.

pub mod concrete;
pub mod growth;
pub mod heisenberg;
pub mod interval;
pub mod lemmas;
pub mod scales;

pub use concrete::{abelian_word_length, ConcreteGroup, Element, GroupKind, GroupSpec};
pub use growth::{
    check_tao_relations, dyadic_exponents, format_sig, growth_profile, least_squares_slope, tao_example_profile, tao_steps,
    GrowthProfile, RelationCheck, TaoProfile,
};
pub use heisenberg::{HeisElem, HeisenbergSubgroup};
pub use interval::{CellStep, IntervalBall};
pub use lemmas::{
    chain_count_check, chain_count_check_finite_index, finite_index_generating_check, injectivity_radius_check,
    ChainVerdict, FiniteIndexVerdict, InjectivityVerdict,
};
pub use scales::{abelian_relation_scales, subgroup_scales, ScaleReport};
