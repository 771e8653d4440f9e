use crate::cdg::{CdgModule, HomElement};
use crate::error::Error;
use crate::graded::GradedModule;
use crate::linalg::Matrix;

/// The cone `C = Y ⊕ X[1]` of a closed degree-0 morphism `f: X → Y` with
/// `d_C(y, x) = (d_Y y + f x, -d_X x)`, together with its structure maps.
#[derive(Clone, Debug)]
pub struct ConeData {
    pub cone: CdgModule,
    /// Closed degree-0 inclusion `Y → C`.
    pub inclusion: HomElement,
    /// Closed degree-0 projection `C → X[1]`.
    pub projection: HomElement,
    /// Degree-0 splitting `X[1] → C`, not closed in general.
    pub section: HomElement,
    /// Degree-0 splitting `C → Y`, not closed in general.
    pub retraction: HomElement,
}

pub fn cone(f: &HomElement) -> Result<ConeData, Error> {
    if f.degree != 0 {
        return Err(Error::WrongDegree { expected: 0, found: f.degree });
    }
    if !f.is_closed() {
        return Err(Error::NotClosed);
    }
    let x = &f.source;
    let y = &f.target;
    let x1 = x.shift(1)?;
    let field = y.field();
    let module = GradedModule::direct_sum(&[y.module(), x1.module()])?
        .with_labels(cone_labels(y, &x1));
    y.grading().check_window(module.space().support())?;
    let (ny, nx) = (y.dim(), x.dim());
    let mut d = Matrix::block_diagonal(field, &[y.d(), x1.d()]);
    d.set_block(0, ny, &f.map);
    let cone = CdgModule::from_parts(y.ring().clone(), module, d);
    let n = ny + nx;
    let mut inc = Matrix::zeros(field, n, ny);
    inc.set_block(0, 0, &Matrix::identity(field, ny));
    let mut proj = Matrix::zeros(field, nx, n);
    proj.set_block(0, ny, &Matrix::identity(field, nx));
    Ok(ConeData {
        inclusion: HomElement::from_parts(y, &cone, 0, inc.clone()),
        projection: HomElement::from_parts(&cone, &x1, 0, proj.clone()),
        section: HomElement::from_parts(&x1, &cone, 0, proj.transpose()),
        retraction: HomElement::from_parts(&cone, y, 0, inc.transpose()),
        cone,
    })
}

fn cone_labels(y: &CdgModule, x1: &CdgModule) -> Vec<String> {
    let mut labels: Vec<String> = (0..y.dim()).map(|i| y.label(i).to_string()).collect();
    labels.extend((0..x1.dim()).map(|i| format!("s{}", x1.label(i))));
    labels
}

/// `Ξ(A) = cone(id_{A[-1]})`, with underlying module `A[-1] ⊕ A`, and its four
/// structure maps to and from `A`.
#[derive(Clone, Debug)]
pub struct XiData {
    pub object: CdgModule,
    /// `a ↦ (a, 0)`, degree 1, closed.
    pub iota: HomElement,
    /// `(y, a) ↦ a`, degree 0, closed.
    pub pi: HomElement,
    /// `a ↦ (0, a)`, degree 0, `d(ι′) = ι`.
    pub iota_prime: HomElement,
    /// `(y, a) ↦ y`, degree -1, `d(π′) = π`.
    pub pi_prime: HomElement,
    /// The cone data of `id_{A[-1]}`.
    pub cone: ConeData,
}

pub fn xi(a: &CdgModule) -> Result<XiData, Error> {
    let a_minus = a.shift(-1)?;
    let data = cone(&HomElement::identity(&a_minus))?;
    let l = data.cone.clone();
    let field = a.field();
    let n = a.dim();
    let mut first = Matrix::zeros(field, 2 * n, n);
    first.set_block(0, 0, &Matrix::identity(field, n));
    let mut second = Matrix::zeros(field, 2 * n, n);
    second.set_block(n, 0, &Matrix::identity(field, n));
    Ok(XiData {
        iota: HomElement::from_parts(a, &l, 1, first.clone()),
        pi: HomElement::from_parts(&l, a, 0, second.transpose()),
        iota_prime: HomElement::from_parts(a, &l, 0, second),
        pi_prime: HomElement::from_parts(&l, a, -1, first.transpose()),
        object: l,
        cone: data,
    })
}

impl XiData {
    /// Checks `π′ι′ = 0 = πι`, `π′ι = id = πι′`, `ιπ′ + ι′π = id`,
    /// `d(ι) = 0 = d(π)`, `d(π′) = π`, `d(ι′) = ι`; returns the failing identity.
    pub fn verify_identities(&self) -> Result<(), String> {
        let ida = Matrix::identity(self.object.field(), self.iota.source.dim());
        let idl = self.object.identity();
        let checks: [(&str, bool); 9] = [
            ("pi' iota' = 0", (&self.pi_prime.map * &self.iota_prime.map).is_zero()),
            ("pi iota = 0", (&self.pi.map * &self.iota.map).is_zero()),
            ("pi' iota = id", (&self.pi_prime.map * &self.iota.map) == ida),
            ("pi iota' = id", (&self.pi.map * &self.iota_prime.map) == ida),
            (
                "iota pi' + iota' pi = id",
                &(&self.iota.map * &self.pi_prime.map) + &(&self.iota_prime.map * &self.pi.map) == idl,
            ),
            ("d(iota) = 0", self.iota.is_closed()),
            ("d(pi) = 0", self.pi.is_closed()),
            ("d(pi') = pi", self.pi_prime.differential().map == self.pi.map),
            ("d(iota') = iota", self.iota_prime.differential().map == self.iota.map),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err((*name).to_string()),
            None => Ok(()),
        }
    }
}

/// The same matrix viewed as a map `X[i] → Y[i]`. Closed morphisms stay closed;
/// in general `d(f[i]) = (-1)^i d(f)[i]`.
pub fn shift_hom(f: &HomElement, i: i64) -> Result<HomElement, Error> {
    Ok(HomElement::from_parts(&f.source.shift(i)?, &f.target.shift(i)?, f.degree, f.map.clone()))
}

/// Outcome of checking that `0 → A → B → C → 0` is exact in `Z⁰`.
pub fn verify_short_exact(i: &HomElement, p: &HomElement) -> Result<(), String> {
    if i.degree != 0 || p.degree != 0 {
        return Err("maps must have degree 0".into());
    }
    if !i.is_closed() {
        return Err("first map is not closed".into());
    }
    if !p.is_closed() {
        return Err("second map is not closed".into());
    }
    if i.target.dim() != p.source.dim() || i.target != p.source {
        return Err("maps are not composable".into());
    }
    if !(&p.map * &i.map).is_zero() {
        return Err("composite is not zero".into());
    }
    let ri = i.map.rank();
    if ri != i.source.dim() {
        return Err("first map is not injective".into());
    }
    let rp = p.map.rank();
    if rp != p.target.dim() {
        return Err("second map is not surjective".into());
    }
    if p.source.dim() - rp != ri {
        return Err("image of the first map differs from the kernel of the second".into());
    }
    Ok(())
}

/// Exhibits `A` as the cokernel of `Ξ(A)[-1] → A[-1] → Ξ(A)`; returns that
/// composite and the cokernel map `π`, after checking exactness at `Ξ(A)` and
/// surjectivity of `π`.
pub fn xi_cokernel_presentation(a: &CdgModule) -> Result<(HomElement, HomElement), Error> {
    let data = xi(a)?;
    let shifted_pi = shift_hom(&data.pi, -1)?;
    let g = data.cone.inclusion.compose(&shifted_pi)?;
    let pi = data.pi.clone();
    let ok = g.is_closed()
        && pi.is_closed()
        && (&pi.map * &g.map).is_zero()
        && pi.map.rank() == a.dim()
        && data.object.dim() - a.dim() == g.map.rank();
    if !ok {
        return Err(Error::Internal("Xi cokernel presentation failed".into()));
    }
    Ok((g, pi))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cdg::{contracting_homotopy, hom_differential, CdgRing};
    use crate::graded::{GradedAlgebra, GradingGroup};
    use crate::linalg::Field;

    fn mf2_factorization(f: Field) -> CdgModule {
        let alg = Arc::new(GradedAlgebra::truncated_polynomial(f, GradingGroup::Z2, "u", 0, 2));
        let ring = Arc::new(CdgRing::new(alg.clone(), Matrix::zeros(f, 2, 2), vec![f.zero(), f.one()]).unwrap());
        let free = GradedModule::free(alg, &[(0, "e0".into()), (1, "e1".into())]);
        let mut d = Matrix::zeros(f, 4, 4);
        d[(2, 0)] = f.one();
        d[(3, 1)] = f.one();
        d[(1, 2)] = f.one();
        CdgModule::new(ring, free, d).unwrap()
    }

    #[test]
    fn xi_identities_and_contractibility() {
        for f in [Field::Rational, Field::Prime(2)] {
            let a = mf2_factorization(f);
            let data = xi(&a).unwrap();
            assert_eq!(data.object.dim(), 2 * a.dim());
            data.verify_identities().unwrap();
            let s = contracting_homotopy(&data.object).unwrap().unwrap();
            assert_eq!(hom_differential(&data.object, &data.object, &s, -1), data.object.identity());
            verify_short_exact(&data.cone.inclusion, &data.cone.projection).unwrap();
            xi_cokernel_presentation(&a).unwrap();
        }
    }

    #[test]
    fn cone_rejects_non_closed() {
        let a = mf2_factorization(Field::Rational);
        let f = Field::Rational;
        // projection onto e0-line is degree 0 and linear but not closed
        let mut p = Matrix::zeros(f, 4, 4);
        p[(0, 0)] = f.one();
        p[(1, 1)] = f.one();
        let h = HomElement::new(&a, &a, 0, p).unwrap();
        assert!(matches!(cone(&h), Err(Error::NotClosed)));
    }
}
