//! Cones, the functor Ξ, Maurer–Cartan twists and totalizations.

mod cone;
mod tot;
mod twist;

pub use cone::{cone, shift_hom, verify_short_exact, xi, xi_cokernel_presentation, ConeData, XiData};
pub use tot::{totalize, totalize_morphism, FiniteComplex};
pub use twist::{is_maurer_cartan, twist, twist_comparison};
