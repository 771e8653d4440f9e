//! Graded vector spaces, algebras and modules, with sign-rule Hom spaces,
//! projectivity tests and Ext.

mod algebra;
mod module;
mod space;

pub use algebra::GradedAlgebra;
pub use module::{
    ext_graded, hom_graded, is_injective_graded, is_projective_graded, is_sign_rule_map, resolve,
    restrictions_from_free, GradedModule, HomSpace, Resolution,
};
pub use space::{degree_violation, GradedMap, GradedSpace, GradingGroup, DEFAULT_WINDOW_CAP};
