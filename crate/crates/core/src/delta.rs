//! The graded ring `R[δ]` of a CDG-ring, its odd derivation `∂/∂δ`, the
//! dictionary between CDG-modules and graded `R[δ]`-modules, the free and
//! cofree functors `G⁺`, `G⁻` and the equivalence `Υ`.

use std::sync::Arc;

use crate::bec::{z0_bec, BecObject};
use crate::cdg::{cocycles, CdgModule, CdgRing, HomElement};
use crate::error::Error;
use crate::graded::{hom_graded, GradedAlgebra, GradedModule, GradedSpace};
use crate::linalg::{Matrix, Scalar};
use crate::validation::{Axiom, ValidationReport};

/// `R[δ]` with basis `b_0, …, b_{n-1}, b_0δ, …, b_{n-1}δ` and the derivation
/// `∂` of degree -1 with `∂(r) = 0`, `∂(δ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaRing {
    pub base: Arc<CdgRing>,
    pub algebra: Arc<GradedAlgebra>,
    pub partial: Matrix,
}

impl DeltaRing {
    /// Index of `b_i δ`.
    pub fn delta_index(&self, i: usize) -> usize {
        self.base.dim() + i
    }

    /// Coordinates of `δ`.
    pub fn delta(&self) -> Vec<Scalar> {
        let n = self.base.dim();
        let mut v = vec![self.base.field().zero(); 2 * n];
        for (i, c) in self.base.algebra().unit().iter().enumerate() {
            v[n + i] = c.clone();
        }
        v
    }

    /// Coordinates of a base-ring element inside `R[δ]`.
    pub fn embed(&self, r: &[Scalar]) -> Vec<Scalar> {
        let mut v = r.to_vec();
        v.extend(std::iter::repeat_n(self.base.field().zero(), self.base.dim()));
        v
    }

    /// Checks the two defining relations, `δ² = h`, freeness over `R` on `1, δ`
    /// (built in), and the odd Leibniz rule for `∂`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.algebra.validate();
        let alg = &self.algebra;
        let ring = &self.base;
        let f = ring.field();
        let delta = self.delta();
        for r in 0..ring.dim() {
            let e = self.embed(&ring.algebra().basis_vector(r));
            let dr = alg.mul(&delta, &e);
            let rd = alg.mul(&e, &delta);
            let s = f.sign(ring.algebra().parity(r));
            let lhs: Vec<Scalar> = dr.iter().zip(&rd).map(|(a, b)| a - &(&s * b)).collect();
            if lhs != self.embed(&ring.d_of(r)) {
                report.push(Axiom::Leibniz, format!("delta {} - (-1)^|r| {} delta", alg.label(r), alg.label(r)));
            }
        }
        if alg.mul(&delta, &delta) != self.embed(ring.h()) {
            report.push(Axiom::DifferentialSquare, "delta^2 != h");
        }
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                let lhs = self.partial.mul_vec(&alg.product_basis(x, y)).expect("dimension");
                let first = alg.mul(&self.partial.column(x), &alg.basis_vector(y));
                let second = alg.mul(&alg.basis_vector(x), &self.partial.column(y));
                let s = f.sign(alg.parity(x));
                let rhs: Vec<Scalar> = first.iter().zip(&second).map(|(a, b)| a + &(&s * b)).collect();
                if lhs != rhs {
                    report.push(Axiom::Leibniz, format!("partial on ({}, {})", alg.label(x), alg.label(y)));
                }
            }
        }
        report
    }

    /// `dim H^g(R[δ], ∂)` for every degree `g` that occurs.
    pub fn partial_cohomology(&self) -> Vec<(i64, usize)> {
        let space = self.algebra.space();
        space
            .dims_by_degree()
            .keys()
            .map(|&g| {
                let cols = space.indices_in_degree(g);
                let all_rows: Vec<usize> = (0..space.dim()).collect();
                let kernel = cols.len() - self.partial.select(&all_rows, &cols).rank();
                let incoming = space.indices_in_degree(space.grading.add(g, 1));
                let image = self.partial.select(&all_rows, &incoming).rank();
                (g, kernel - image)
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.partial_cohomology().iter().all(|&(_, h)| h == 0)
    }
}

pub fn build_delta_ring(ring: &Arc<CdgRing>) -> Result<DeltaRing, Error> {
    let base = ring.algebra();
    let f = ring.field();
    let n = base.dim();
    let mut degrees: Vec<i64> = (0..n).map(|i| base.degree(i)).collect();
    degrees.extend((0..n).map(|i| base.degree(i) + 1));
    let mut labels: Vec<String> = (0..n).map(|i| base.label(i).to_string()).collect();
    labels.extend((0..n).map(|i| if base.unit()[i].is_one() && i == 0 { "δ".to_string() } else { format!("{}δ", base.label(i)) }));
    let space = GradedSpace::new(ring.grading(), degrees, labels);
    let zero = vec![f.zero(); n];
    let join = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> { a.iter().chain(b).cloned().collect() };
    let mut table = vec![vec![Vec::new(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let bij = base.product_basis(i, j);
            let bidj = base.left_mult(i).mul_vec(&ring.d_of(j)).expect("dimension");
            let s = f.sign(base.parity(j));
            table[i][j] = join(&bij, &zero);
            table[i][n + j] = join(&zero, &bij);
            let signed: Vec<Scalar> = bij.iter().map(|x| &s * x).collect();
            table[n + i][j] = join(&bidj, &signed);
            let bijh = base.mul(&bij, ring.h());
            let signed_h: Vec<Scalar> = bijh.iter().map(|x| &s * x).collect();
            table[n + i][n + j] = join(&signed_h, &bidj);
        }
    }
    let unit = join(base.unit(), &zero);
    let algebra = Arc::new(GradedAlgebra::from_table(f, space, &table, unit)?);
    let mut partial = Matrix::zeros(f, 2 * n, 2 * n);
    for i in 0..n {
        partial[(i, n + i)] = f.sign(base.parity(i));
    }
    let delta = DeltaRing { base: ring.clone(), algebra, partial };
    let report = delta.validate();
    if !report.is_valid() {
        return Err(Error::Internal(format!("delta ring failed validation:\n{report}")));
    }
    Ok(delta)
}

/// The graded `R[δ]`-module of a CDG-module: `b_i` acts by `A_i`, `b_i δ` by `A_i d_M`.
pub fn to_delta_module(delta: &DeltaRing, m: &CdgModule) -> Result<GradedModule, Error> {
    if m.ring().as_ref() != delta.base.as_ref() {
        return Err(Error::RingMismatch);
    }
    let mut action: Vec<Matrix> = m.module().action().to_vec();
    action.extend(m.module().action().iter().map(|a| a * m.d()));
    GradedModule::new(delta.algebra.clone(), m.space().clone(), action)
}

/// Restriction of scalars from `R[δ]` to `R`.
pub fn restrict_to_base(delta: &DeltaRing, n: &GradedModule) -> Result<GradedModule, Error> {
    if n.algebra().as_ref() != delta.algebra.as_ref() {
        return Err(Error::RingMismatch);
    }
    let k = delta.base.dim();
    GradedModule::new(delta.base.algebra().clone(), n.space().clone(), n.action()[..k].to_vec())
}

/// The CDG-module of a graded `R[δ]`-module, with `d = δ·`. Fails when the
/// data does not satisfy the CDG axioms or `b_i δ` does not act as `A_i d`.
pub fn from_delta_module(delta: &DeltaRing, n: &GradedModule) -> Result<CdgModule, Error> {
    let base = restrict_to_base(delta, n)?;
    let d = n.act_by(&delta.delta());
    let k = delta.base.dim();
    for i in 0..k {
        if n.act(k + i) != &(base.act(i) * &d) {
            return Err(Error::NotAMorphism(format!("{} does not act as {} d", delta.algebra.label(k + i), delta.algebra.label(i))));
        }
    }
    CdgModule::new(delta.base.clone(), base, d)
}

/// `G⁺(M) = R[δ] ⊗_R M`: basis `m_j`, `δm_j`; `r·δm = (-1)^{|r|}(δ(rm) - d(r)m)`,
/// `d(m) = δm`, `d(δm) = hm`.
pub fn g_plus(ring: &Arc<CdgRing>, m: &GradedModule) -> Result<CdgModule, Error> {
    if m.algebra().as_ref() != ring.algebra().as_ref() {
        return Err(Error::RingMismatch);
    }
    let f = ring.field();
    let n = m.dim();
    let alg = ring.algebra();
    let mut degrees: Vec<i64> = m.space().degrees().to_vec();
    degrees.extend(m.space().degrees().iter().map(|g| g + 1));
    let mut labels: Vec<String> = m.space().labels().to_vec();
    labels.extend(m.space().labels().iter().map(|l| format!("δ{l}")));
    let space = GradedSpace::new(ring.grading(), degrees, labels);
    let action = (0..alg.dim())
        .map(|r| {
            let s = f.sign(alg.parity(r));
            let mut a = Matrix::zeros(f, 2 * n, 2 * n);
            a.set_block(0, 0, m.act(r));
            a.set_block(0, n, &m.act_by(&ring.d_of(r)).scale(&-s.clone()));
            a.set_block(n, n, &m.act(r).scale(&s));
            a
        })
        .collect();
    let mut d = Matrix::zeros(f, 2 * n, 2 * n);
    d.set_block(0, n, &m.act_by(ring.h()));
    d.set_block(n, 0, &Matrix::identity(f, n));
    let module = GradedModule::new(alg.clone(), space, action)?;
    CdgModule::new(ring.clone(), module, d)
}

/// `G⁻(M) = Hom_R(R[δ], M)`: basis `φ_(1,m_j)` of degree `|m_j|` and
/// `φ_(δ,m_j)` of degree `|m_j| - 1`.
pub fn g_minus(ring: &Arc<CdgRing>, m: &GradedModule) -> Result<CdgModule, Error> {
    if m.algebra().as_ref() != ring.algebra().as_ref() {
        return Err(Error::RingMismatch);
    }
    let f = ring.field();
    let n = m.dim();
    let alg = ring.algebra();
    let mut degrees: Vec<i64> = m.space().degrees().to_vec();
    degrees.extend(m.space().degrees().iter().map(|g| g - 1));
    let mut labels: Vec<String> = m.space().labels().iter().map(|l| format!("φ1:{l}")).collect();
    labels.extend(m.space().labels().iter().map(|l| format!("φδ:{l}")));
    let space = GradedSpace::new(ring.grading(), degrees, labels);
    let action = (0..alg.dim())
        .map(|r| {
            let mut a = Matrix::zeros(f, 2 * n, 2 * n);
            a.set_block(0, 0, m.act(r));
            a.set_block(n, n, m.act(r));
            let adr = m.act_by(&ring.d_of(r));
            for j in 0..n {
                let s = f.sign(alg.parity(r) ^ m.parity(j));
                for i in 0..n {
                    a[(n + i, j)] = &s * &adr[(i, j)];
                }
            }
            a
        })
        .collect();
    let ah = m.act_by(ring.h());
    let mut d = Matrix::zeros(f, 2 * n, 2 * n);
    for j in 0..n {
        let s = f.sign(!m.parity(j));
        for i in 0..n {
            d[(n + i, j)] = &s * &ah[(i, j)];
        }
        d[(j, n + j)] = s;
    }
    let module = GradedModule::new(alg.clone(), space, action)?;
    CdgModule::new(ring.clone(), module, d)
}

/// The isomorphism `G⁺(M)[1] → G⁻(M)`: `δm ↦ -φ_(1,m)`, `m ↦ (-1)^{|m|+1} φ_(δ,m)`.
pub fn g_plus_minus_iso(ring: &Arc<CdgRing>, m: &GradedModule) -> Result<HomElement, Error> {
    let plus = g_plus(ring, m)?.shift(1)?;
    let minus = g_minus(ring, m)?;
    let f = ring.field();
    let n = m.dim();
    let mut t = Matrix::zeros(f, 2 * n, 2 * n);
    for j in 0..n {
        t[(j, n + j)] = -f.one();
        t[(n + j, j)] = f.sign(!m.parity(j));
    }
    let iso = HomElement::new(&plus, &minus, 0, t)?;
    if !iso.is_closed() || iso.map.inverse().is_none() {
        return Err(Error::Internal("G+[1] -> G- comparison is not a closed isomorphism".into()));
    }
    Ok(iso)
}

/// `Υ(M) = (G⁺(M), σ)` with `σ(m) = 0`, `σ(δm) = m`.
pub fn upsilon(ring: &Arc<CdgRing>, m: &GradedModule) -> Result<BecObject, Error> {
    let base = g_plus(ring, m)?;
    let n = m.dim();
    let mut sigma = Matrix::zeros(ring.field(), 2 * n, 2 * n);
    sigma.set_block(0, n, &Matrix::identity(ring.field(), n));
    BecObject::new(base, sigma)
}

/// `Υ⁻¹(X, σ) = ker σ` as a graded `R`-module, with its inclusion into `X`.
pub fn upsilon_inverse(xb: &BecObject) -> Result<(GradedModule, Matrix), Error> {
    xb.base.module().kernel_of(&xb.sigma)
}

/// The comparison `Υ(ker σ) → (X, σ)`, `m + δm′ ↦ m + d_X(m′)`, after checking
/// that it is a bijective closed morphism commuting with σ.
pub fn upsilon_comparison(xb: &BecObject) -> Result<(BecObject, Matrix), Error> {
    let (k, inclusion) = upsilon_inverse(xb)?;
    let rebuilt = upsilon(xb.base.ring(), &k)?;
    let map = inclusion.hstack(&(xb.base.d() * &inclusion));
    if map.shape().0 != map.shape().1 || map.inverse().is_none() {
        return Err(Error::BecInvariant("comparison map is not bijective".into()));
    }
    if !z0_bec(&rebuilt, xb)?.contains(&map) {
        return Err(Error::BecInvariant("comparison map is not a closed bec morphism".into()));
    }
    Ok((rebuilt, map))
}

/// `dim Hom_{Z⁰}(G⁺M, N)` and `dim Hom⁰_graded(M, N#)`.
pub fn g_plus_adjunction_dims(ring: &Arc<CdgRing>, m: &GradedModule, n: &CdgModule) -> Result<(usize, usize), Error> {
    let gp = g_plus(ring, m)?;
    Ok((cocycles(&gp, n, 0)?.dim(), hom_graded(m, n.module(), 0)?.dim()))
}

/// `dim Hom_{Z⁰}(N, G⁻M)` and `dim Hom⁰_graded(N#, M)`.
pub fn g_minus_adjunction_dims(ring: &Arc<CdgRing>, m: &GradedModule, n: &CdgModule) -> Result<(usize, usize), Error> {
    let gm = g_minus(ring, m)?;
    Ok((cocycles(n, &gm, 0)?.dim(), hom_graded(n.module(), m, 0)?.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bec::phi;
    use crate::graded::GradingGroup;
    use crate::linalg::Field;

    fn mf2(f: Field) -> Arc<CdgRing> {
        let alg = Arc::new(GradedAlgebra::truncated_polynomial(f, GradingGroup::Z2, "u", 0, 2));
        Arc::new(CdgRing::new(alg, Matrix::zeros(f, 2, 2), vec![f.zero(), f.one()]).unwrap())
    }

    fn ground(f: Field) -> Arc<CdgRing> {
        Arc::new(CdgRing::trivial(Arc::new(GradedAlgebra::ground(f, GradingGroup::integers()))).unwrap())
    }

    #[test]
    fn delta_ring_of_field_is_exterior_algebra() {
        let d = build_delta_ring(&ground(Field::Rational)).unwrap();
        assert_eq!(d.algebra.dim(), 2);
        assert!(d.algebra.product_basis(1, 1).iter().all(Scalar::is_zero));
        assert!(d.is_acyclic());
    }

    #[test]
    fn delta_ring_of_mf2() {
        for f in [Field::Rational, Field::Prime(2)] {
            let d = build_delta_ring(&mf2(f)).unwrap();
            assert_eq!(d.algebra.dim(), 4);
            let delta = d.delta();
            assert_eq!(d.algebra.mul(&delta, &delta), d.embed(&[f.zero(), f.one()]));
            assert!(d.is_acyclic());
        }
    }

    #[test]
    fn g_plus_g_minus_and_upsilon() {
        for f in [Field::Rational, Field::Prime(3)] {
            let ring = mf2(f);
            let free = GradedModule::free(ring.algebra().clone(), &[(0, "g".into())]);
            let k = GradedModule::new(
                ring.algebra().clone(),
                GradedSpace::new(GradingGroup::Z2, vec![1], vec!["k".into()]),
                vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)],
            )
            .unwrap();
            for m in [&free, &k] {
                let gp = g_plus(&ring, m).unwrap();
                assert_eq!(gp.dim(), 2 * m.dim());
                g_minus(&ring, m).unwrap();
                g_plus_minus_iso(&ring, m).unwrap();
                let ub = upsilon(&ring, m).unwrap();
                let (back, _) = upsilon_inverse(&ub).unwrap();
                assert_eq!(&back, m);
                upsilon_comparison(&ub).unwrap();
                let (a, b) = g_plus_adjunction_dims(&ring, m, &gp).unwrap();
                assert_eq!(a, b);
                let (a, b) = g_minus_adjunction_dims(&ring, m, &gp).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn delta_module_roundtrip_and_phi_comparison() {
        let f = Field::Rational;
        let ring = mf2(f);
        let delta = build_delta_ring(&ring).unwrap();
        let free = GradedModule::free(ring.algebra().clone(), &[(0, "e0".into()), (1, "e1".into())]);
        let mut d = Matrix::zeros(f, 4, 4);
        d[(2, 0)] = f.one();
        d[(3, 1)] = f.one();
        d[(1, 2)] = f.one();
        let m = CdgModule::new(ring.clone(), free, d).unwrap();
        let dm = to_delta_module(&delta, &m).unwrap();
        assert!(dm.validate().is_valid());
        assert_eq!(from_delta_module(&delta, &dm).unwrap(), m);
        let (pm, _) = phi(&m).unwrap();
        upsilon_comparison(&pm).unwrap();
    }
}
