use crate::cdg::{CdgModule, HomElement};
use crate::error::Error;

/// Checks the Maurer–Cartan equation `d(a) + a² = 0` for an endomorphism of degree 1.
pub fn is_maurer_cartan(a: &HomElement) -> bool {
    a.degree == a.source.grading().normalize(1)
        && a.source == a.target
        && (&a.differential().map + &(&a.map * &a.map)).is_zero()
}

/// `M(a)`: the same graded module with differential `d_M + a`.
pub fn twist(m: &CdgModule, a: &HomElement) -> Result<CdgModule, Error> {
    if a.source != *m || a.target != *m {
        return Err(Error::DimensionMismatch("twisting cochain must be an endomorphism of the module".into()));
    }
    if a.degree != m.grading().normalize(1) {
        return Err(Error::WrongDegree { expected: 1, found: a.degree });
    }
    if !is_maurer_cartan(a) {
        return Err(Error::MaurerCartan);
    }
    m.with_differential(m.d() + &a.map)
}

/// The identity grid `f: M → M(a)`; it is invertible and satisfies `d(f) = f a`.
pub fn twist_comparison(m: &CdgModule, twisted: &CdgModule) -> HomElement {
    HomElement::from_parts(m, twisted, 0, m.identity())
}
