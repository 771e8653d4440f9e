//! The category of pairs `(X, σ)` with `d(σ) = id`, `σ² = 0`, the functors
//! Φ, Ψ⁺, Ψ⁻, Φ̃ and the bec-bec embedding.

use crate::cdg::{cocycles, hom_differential, hom_space, CdgModule, HomElement};
use crate::constructions::{xi, XiData};
use crate::error::Error;
use crate::graded::{is_sign_rule_map, HomSpace};
use crate::linalg::{Matrix, Scalar, Subspace};

/// A CDG-module with a contracting homotopy of square zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BecObject {
    pub base: CdgModule,
    pub sigma: Matrix,
}

impl BecObject {
    pub fn new(base: CdgModule, sigma: Matrix) -> Result<Self, Error> {
        check_sigma(&base, &sigma)?;
        Ok(Self { base, sigma })
    }

    /// `Xb[m] = (X[-m], (-1)^m σ)`.
    pub fn shift(&self, m: i64) -> Result<BecObject, Error> {
        let base = self.base.shift(-m)?;
        let sigma = self.sigma.scale(&base.field().sign(base.grading().parity(m)));
        BecObject::new(base, sigma)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

fn check_sigma(base: &CdgModule, sigma: &Matrix) -> Result<(), Error> {
    if sigma.shape() != (base.dim(), base.dim()) {
        return Err(Error::BecInvariant("sigma has the wrong size".into()));
    }
    if !is_sign_rule_map(base.module(), base.module(), base.grading().normalize(-1), sigma) {
        return Err(Error::BecInvariant("sigma is not a degree -1 sign-rule map".into()));
    }
    if !(sigma * sigma).is_zero() {
        return Err(Error::BecInvariant("sigma^2 != 0".into()));
    }
    if !hom_differential(base, base, sigma, -1).is_identity() {
        return Err(Error::BecInvariant("d(sigma) != id".into()));
    }
    Ok(())
}

/// `Hom^n_bec(Xb, Yb)`: closed maps `X → Y` of degree `-n`.
pub fn bec_hom(xb: &BecObject, yb: &BecObject, n: i64) -> Result<HomSpace, Error> {
    cocycles(&xb.base, &yb.base, -n)
}

/// `d^bec(f) = σ_Y f - (-1)^n f σ_X` for `f` in bec degree `n`.
pub fn bec_differential(xb: &BecObject, yb: &BecObject, f: &Matrix, n: i64) -> Matrix {
    let s = xb.base.field().sign(xb.base.grading().parity(n));
    &(&yb.sigma * f) - &(f * &xb.sigma).scale(&s)
}

/// Checks `(d^bec)² = 0` and that `d^bec` maps bec degree `n` into degree `n + 1`.
pub fn bec_squares_to_zero(xb: &BecObject, yb: &BecObject, n: i64) -> Result<bool, Error> {
    let space = bec_hom(xb, yb, n)?;
    let next = bec_hom(xb, yb, n + 1)?;
    Ok(space.basis().iter().all(|f| {
        let df = bec_differential(xb, yb, f, n);
        next.contains(&df) && bec_differential(xb, yb, &df, n + 1).is_zero()
    }))
}

/// Solves linear conditions `Σ c_j B_j ∈ ker(L)` inside a Hom space: returns
/// the subspace of elements `g` of `space` with `cond(g) = 0`.
fn restrict(space: &HomSpace, cond: impl Fn(&Matrix) -> Matrix) -> HomSpace {
    let f = space.field();
    let (rows, cols) = space.shape();
    let basis = space.basis();
    if basis.is_empty() {
        return space.clone();
    }
    let images: Vec<Vec<Scalar>> = basis.iter().map(|b| cond(b).vectorize()).collect();
    let len = images[0].len();
    let vectors: Vec<Vec<Scalar>> = if len == 0 {
        space.subspace().basis_vectors()
    } else {
        Matrix::from_columns(f, len, &images)
            .kernel()
            .basis_vectors()
            .iter()
            .map(|c| space.subspace().combine(c))
            .collect()
    };
    HomSpace::from_subspace(space.degree, rows, cols, Subspace::from_vectors(f, rows * cols, &vectors))
}

/// `Hom_{Z⁰(bec)}(Xb, Yb)`: closed degree-0 maps commuting with σ.
pub fn z0_bec(xb: &BecObject, yb: &BecObject) -> Result<HomSpace, Error> {
    let closed = cocycles(&xb.base, &yb.base, 0)?;
    Ok(restrict(&closed, |g| bec_differential(xb, yb, g, 0)))
}

/// A contracting homotopy of `Xb` inside the bec category: `s` closed of base
/// degree 1 with `σ s + s σ = id`.
pub fn bec_contracting_homotopy(xb: &BecObject) -> Result<Option<Matrix>, Error> {
    let space = bec_hom(xb, xb, -1)?;
    let f = xb.base.field();
    let basis = space.basis();
    let target = xb.base.identity();
    if basis.is_empty() {
        return Ok(target.is_zero().then(|| Matrix::zeros(f, 0, 0)));
    }
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| bec_differential(xb, xb, b, -1).vectorize()).collect();
    let system = Matrix::from_columns(f, target.rows() * target.cols(), &columns);
    Ok(system.solve(&target.vectorize())?.map(|c| space.element(&c)))
}

/// `Φ(A) = (Ξ(A), ι′π′)`, returned with the Ξ data.
pub fn phi(a: &CdgModule) -> Result<(BecObject, XiData), Error> {
    let data = xi(a)?;
    let sigma = &data.iota_prime.map * &data.pi_prime.map;
    Ok((BecObject::new(data.object.clone(), sigma)?, data))
}

pub fn psi_plus(xb: &BecObject) -> CdgModule {
    xb.base.clone()
}

pub fn psi_minus(xb: &BecObject) -> Result<CdgModule, Error> {
    xb.base.shift(1)
}

/// `Φ̃(f) = ι′ f π + ι f π′ + ι′ d(f) π′`, i.e. the block matrix `[[F, 0], [dF, F]]`.
pub fn phi_tilde(f: &HomElement) -> Result<HomElement, Error> {
    if f.degree != 0 {
        return Err(Error::WrongDegree { expected: 0, found: f.degree });
    }
    becbec_mor(f)
}

/// The isomorphism `Φ(A[n]) → Φ(A)[-n]`, `diag((-1)^n, 1)`.
pub fn phi_shift_iso(a: &CdgModule, n: i64) -> Result<(BecObject, BecObject, Matrix), Error> {
    let (lhs, _) = phi(&a.shift(n)?)?;
    let (base, _) = phi(a)?;
    let rhs = base.shift(-n)?;
    let field = a.field();
    let k = a.dim();
    let mut t = Matrix::identity(field, 2 * k);
    let s = field.sign(a.grading().parity(n));
    for i in 0..k {
        t[(i, i)] = s.clone();
    }
    Ok((lhs, rhs, t))
}

/// An object with two anticommuting square-zero homotopies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BecBecObject {
    pub base: CdgModule,
    pub sigma: Matrix,
    pub tau: Matrix,
}

impl BecBecObject {
    /// Checks `σ² = 0 = τ²`, `στ + τσ = id`, `d(σ) = id`, `d(τ) = 0`.
    pub fn validate(&self) -> Result<(), Error> {
        check_sigma(&self.base, &self.sigma)?;
        let b = &self.base;
        if !is_sign_rule_map(b.module(), b.module(), b.grading().normalize(1), &self.tau) {
            return Err(Error::BecInvariant("tau is not a degree 1 sign-rule map".into()));
        }
        if !(&self.tau * &self.tau).is_zero() {
            return Err(Error::BecInvariant("tau^2 != 0".into()));
        }
        if !(&(&self.sigma * &self.tau) + &(&self.tau * &self.sigma)).is_identity() {
            return Err(Error::BecInvariant("sigma tau + tau sigma != id".into()));
        }
        if !hom_differential(b, b, &self.tau, 1).is_zero() {
            return Err(Error::BecInvariant("d(tau) != 0".into()));
        }
        Ok(())
    }
}

/// `becbec(A) = (Ξ(A), σ = ι′π′, τ = ιπ)`.
pub fn becbec(a: &CdgModule) -> Result<BecBecObject, Error> {
    let (xb, data) = phi(a)?;
    let tau = &data.iota.map * &data.pi.map;
    let obj = BecBecObject { base: xb.base, sigma: xb.sigma, tau };
    obj.validate()?;
    Ok(obj)
}

/// `becbec(f) = (-1)^n ι′ f π + ι f π′ + ι′ d(f) π′` for `f` of degree `n`,
/// i.e. `[[F, 0], [dF, (-1)^n F]]` on `A[-1] ⊕ A`.
pub fn becbec_mor(f: &HomElement) -> Result<HomElement, Error> {
    let la = xi(&f.source)?.object;
    let lb = xi(&f.target)?.object;
    let field = la.field();
    let (m, k) = (f.target.dim(), f.source.dim());
    let s = field.sign(la.grading().parity(f.degree));
    let mut g = Matrix::zeros(field, 2 * m, 2 * k);
    g.set_block(0, 0, &f.map);
    g.set_block(m, 0, &f.differential().map);
    g.set_block(m, k, &f.map.scale(&s));
    Ok(HomElement::from_parts(&la, &lb, f.degree, g))
}

/// `d^becbec(g) = τ_B g - (-1)^n g τ_A`.
pub fn becbec_differential(a: &BecBecObject, b: &BecBecObject, g: &Matrix, n: i64) -> Matrix {
    let s = a.base.field().sign(a.base.grading().parity(n));
    &(&b.tau * g) - &(g * &a.tau).scale(&s)
}

/// `Hom^n_becbec(W1, W2)`: closed maps of base degree `n` with `σ g = (-1)^n g σ`.
pub fn becbec_hom(a: &BecBecObject, b: &BecBecObject, n: i64) -> Result<HomSpace, Error> {
    let closed = cocycles(&a.base, &b.base, n)?;
    let s = a.base.field().sign(a.base.grading().parity(n));
    Ok(restrict(&closed, |g| &(&b.sigma * g) - &(g * &a.sigma).scale(&s)))
}

/// Degreewise comparison of `Hom^n(A, B)` with `Hom^n_becbec(becbec A, becbec B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BecBecCheck {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    /// `becbec_mor` is closed, commutes with σ, intertwines the differentials and is injective.
    pub map_ok: bool,
}

impl BecBecCheck {
    pub fn passed(&self) -> bool {
        self.map_ok && self.source_dim == self.target_dim
    }
}

pub fn becbec_check(a: &CdgModule, b: &CdgModule, n: i64) -> Result<BecBecCheck, Error> {
    let wa = becbec(a)?;
    let wb = becbec(b)?;
    let hom = hom_space(a, b, n)?;
    let target = becbec_hom(&wa, &wb, n)?;
    let mut map_ok = true;
    let mut images = Vec::new();
    for basis in hom.basis() {
        let f = HomElement::new(a, b, n, basis)?;
        let g = becbec_mor(&f)?;
        let dg = becbec_mor(&f.differential())?;
        map_ok &= target.contains(&g.map);
        map_ok &= becbec_differential(&wa, &wb, &g.map, n) == dg.map;
        images.push(g.map.vectorize());
    }
    let rank = Subspace::from_vectors(a.field(), 4 * a.dim() * b.dim(), &images).dim();
    map_ok &= rank == hom.dim();
    Ok(BecBecCheck { degree: n, source_dim: hom.dim(), target_dim: target.dim(), map_ok })
}

/// `dim Hom⁰(A, B)` against `dim Hom_{Z⁰(bec)}(ΦA, ΦB)`, with `Φ̃` checked to be
/// closed, σ-compatible and injective on a basis.
pub fn phi_tilde_check(a: &CdgModule, b: &CdgModule) -> Result<BecBecCheck, Error> {
    let (pa, _) = phi(a)?;
    let (pb, _) = phi(b)?;
    let hom = hom_space(a, b, 0)?;
    let target = z0_bec(&pa, &pb)?;
    let mut map_ok = true;
    let mut images = Vec::new();
    for basis in hom.basis() {
        let g = phi_tilde(&HomElement::new(a, b, 0, basis)?)?;
        map_ok &= target.contains(&g.map);
        images.push(g.map.vectorize());
    }
    let rank = Subspace::from_vectors(a.field(), 4 * a.dim() * b.dim(), &images).dim();
    map_ok &= rank == hom.dim();
    Ok(BecBecCheck { degree: 0, source_dim: hom.dim(), target_dim: target.dim(), map_ok })
}

/// Result of checking both adjunction isomorphisms on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `dim Hom_{Z⁰}(Ψ⁺ Xb, A)` and `dim Hom_{Z⁰(bec)}(Xb, Φ A)`.
    pub left: (usize, usize),
    /// `dim Hom_{Z⁰}(A, Ψ⁻ Xb)` and `dim Hom_{Z⁰(bec)}(Φ A, Xb)`.
    pub right: (usize, usize),
    /// The explicit grids land in the right spaces and are mutually inverse.
    pub grids_inverse: bool,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.grids_inverse && self.left.0 == self.left.1 && self.right.0 == self.right.1
    }
}

/// Checks `Hom_{Z⁰}(Ψ⁺Xb, A) ≅ Hom_{Z⁰(bec)}(Xb, ΦA)` via `φ ↦ ιφσ_X + ι′φ`
/// (inverse `g ↦ πg`) and `Hom_{Z⁰}(A, Ψ⁻Xb) ≅ Hom_{Z⁰(bec)}(ΦA, Xb)` via
/// `ψ ↦ ψπ′ + σ_X ψ π` (inverse `g ↦ gι`).
pub fn check_adjunction_instance(xb: &BecObject, a: &CdgModule) -> Result<AdjunctionReport, Error> {
    let x = &xb.base;
    if !x.same_ring(a) {
        return Err(Error::RingMismatch);
    }
    let (pa, data) = phi(a)?;
    let mut ok = true;

    let left_src = cocycles(x, a, 0)?;
    let left_tgt = z0_bec(xb, &pa)?;
    for phi_map in left_src.basis() {
        let g = &(&(&data.iota.map * &phi_map) * &xb.sigma) + &(&data.iota_prime.map * &phi_map);
        ok &= left_tgt.contains(&g);
        ok &= &data.pi.map * &g == phi_map;
    }
    for g in left_tgt.basis() {
        let back = &data.pi.map * &g;
        ok &= left_src.contains(&back);
        let again = &(&(&data.iota.map * &back) * &xb.sigma) + &(&data.iota_prime.map * &back);
        ok &= again == g;
    }

    // Closed degree-0 maps A → X[1] are the closed degree-1 maps A → X.
    let right_src = cocycles(a, x, 1)?;
    let right_tgt = z0_bec(&pa, xb)?;
    let forward = |psi: &Matrix| &(psi * &data.pi_prime.map) + &(&(&xb.sigma * psi) * &data.pi.map);
    for psi in right_src.basis() {
        let g = forward(&psi);
        ok &= right_tgt.contains(&g);
        ok &= &g * &data.iota.map == psi;
    }
    for g in right_tgt.basis() {
        let back = &g * &data.iota.map;
        ok &= right_src.contains(&back);
        ok &= forward(&back) == g;
    }
    Ok(AdjunctionReport {
        left: (left_src.dim(), left_tgt.dim()),
        right: (right_src.dim(), right_tgt.dim()),
        grids_inverse: ok,
    })
}

/// The identification `Ψ⁺Φ(A) = Ξ(A)`: returns the identity grid after
/// checking it is a closed isomorphism between the two objects.
pub fn psi_phi_iso(a: &CdgModule) -> Result<HomElement, Error> {
    let (pa, data) = phi(a)?;
    let lhs = psi_plus(&pa);
    let iso = HomElement::new(&lhs, &data.object, 0, lhs.identity())?;
    if !iso.is_closed() || iso.map.inverse().is_none() {
        return Err(Error::Internal("Psi+ Phi is not identified with Xi".into()));
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cdg::CdgRing;
    use crate::graded::{GradedAlgebra, GradedModule, GradingGroup};
    use crate::linalg::Field;

    fn ground_complex(f: Field, degrees: &[i64], d: &[&[i64]]) -> CdgModule {
        let k = Arc::new(GradedAlgebra::ground(f, GradingGroup::integers()));
        let ring = Arc::new(CdgRing::trivial(k.clone()).unwrap());
        let gens: Vec<(i64, String)> = degrees.iter().enumerate().map(|(i, &g)| (g, format!("x{i}"))).collect();
        CdgModule::new(ring, GradedModule::free(k, &gens), Matrix::from_i64(f, d)).unwrap()
    }

    #[test]
    fn phi_object_and_contractibility_over_field() {
        let f = Field::Rational;
        let a = ground_complex(f, &[0, 1, 1], &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0]]);
        let (pa, _) = phi(&a).unwrap();
        assert_eq!(pa.dim(), 2 * a.dim());
        assert!(bec_contracting_homotopy(&pa).unwrap().is_some());
        for n in -2..=2 {
            assert!(bec_squares_to_zero(&pa, &pa, n).unwrap());
        }
        let id = pa.base.identity();
        assert!(bec_hom(&pa, &pa, 0).unwrap().contains(&id));
        assert!(bec_differential(&pa, &pa, &id, 0).is_zero());
        psi_phi_iso(&a).unwrap();
    }

    #[test]
    fn phi_tilde_and_becbec_dimensions() {
        let f = Field::Prime(3);
        let a = ground_complex(f, &[0, 1], &[&[0, 0], &[1, 0]]);
        let b = ground_complex(f, &[0, 0, 1], &[&[0, 0, 0], &[0, 0, 0], &[1, 1, 0]]);
        let c = phi_tilde_check(&a, &b).unwrap();
        assert!(c.passed(), "{c:?}");
        for n in -2..=2 {
            let c = becbec_check(&a, &b, n).unwrap();
            assert!(c.passed(), "{c:?}");
        }
        let id = phi_tilde(&HomElement::identity(&a)).unwrap();
        assert!(id.map.is_identity());
    }

    #[test]
    fn adjunction_and_shift_interchange() {
        let f = Field::Rational;
        let a = ground_complex(f, &[0, 1], &[&[0, 0], &[1, 0]]);
        let b = ground_complex(f, &[1], &[&[0]]);
        let (pb, _) = phi(&b).unwrap();
        let report = check_adjunction_instance(&pb, &a).unwrap();
        assert!(report.passed(), "{report:?}");
        for n in -2..=2 {
            let (lhs, rhs, t) = phi_shift_iso(&a, n).unwrap();
            let iso = HomElement::new(&lhs.base, &rhs.base, 0, t.clone()).unwrap();
            assert!(iso.is_closed());
            assert!(bec_differential(&lhs, &rhs, &t, 0).is_zero());
        }
    }
}
