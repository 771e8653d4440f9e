//! CDG-rings, left and right CDG-modules and their Hom complexes.

mod hom;
mod module;
mod ring;

pub use hom::{
    coboundaries, cocycles, contracting_homotopy, h_n, hom_degree_range, hom_differential, hom_space, homotopic,
    solve_boundary, HomCohomology, HomComplex, HomElement,
};
pub use module::{validate_module, validate_right_module, CdgModule, RightCdgModule};
pub use ring::{validate_ring, CdgRing};
