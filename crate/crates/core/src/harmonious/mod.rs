//! Harmonious subgroups: lattices in a nilpotent Lie algebra whose
//! exponentials form subgroups.

pub mod closure;
pub mod constants;
pub mod discrete;
pub mod sandwich;

pub use closure::{bracket_closure, is_harmonious, is_harmonious_set, GradedLattice, HarmoniousVerdict, Truth};
pub use constants::{ConstantTable, Provenance};
pub use discrete::{multiplicative_index, DiscreteGroup};
pub use sandwich::{
    folner_count, h_minus, h_plus, index_sandwich_bound_check, random_harmonious_pair, sandwich,
    scaling_closure_check, Sandwich, SandwichOptions, SandwichReport,
};
