use crate::error::Error;
use crate::graded::{hom_graded, is_sign_rule_map, HomSpace};
use crate::linalg::{quotient_basis, Matrix, Scalar, Subspace};

use super::module::CdgModule;

/// A homogeneous sign-rule map between CDG-modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomElement {
    pub source: CdgModule,
    pub target: CdgModule,
    pub degree: i64,
    pub map: Matrix,
}

impl HomElement {
    /// Checks ring compatibility, shape, degree and the sign rule.
    pub fn new(source: &CdgModule, target: &CdgModule, degree: i64, map: Matrix) -> Result<Self, Error> {
        if !source.same_ring(target) {
            return Err(Error::RingMismatch);
        }
        if map.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                map.rows(),
                map.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let degree = source.grading().normalize(degree);
        if !is_sign_rule_map(source.module(), target.module(), degree, &map) {
            return Err(Error::NotAMorphism(format!("map is not a degree-{degree} sign-rule map")));
        }
        Ok(Self { source: source.clone(), target: target.clone(), degree, map })
    }

    pub(crate) fn from_parts(source: &CdgModule, target: &CdgModule, degree: i64, map: Matrix) -> Self {
        debug_assert!(is_sign_rule_map(source.module(), target.module(), degree, &map));
        Self { source: source.clone(), target: target.clone(), degree: source.grading().normalize(degree), map }
    }

    pub fn identity(m: &CdgModule) -> Self {
        Self::from_parts(m, m, 0, m.identity())
    }

    pub fn zero(source: &CdgModule, target: &CdgModule, degree: i64) -> Self {
        Self::from_parts(source, target, degree, Matrix::zeros(source.field(), target.dim(), source.dim()))
    }

    /// `d(f) = d_M f - (-1)^{|f|} f d_L`.
    pub fn differential(&self) -> HomElement {
        let map = hom_differential(&self.source, &self.target, &self.map, self.degree);
        HomElement {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.source.grading().normalize(self.degree + 1),
            map,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.differential().map.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomElement) -> Result<HomElement, Error> {
        if other.target.dim() != self.source.dim() || !other.target.same_ring(&self.source) {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        Ok(HomElement {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.source.grading().normalize(self.degree + other.degree),
            map: &self.map * &other.map,
        })
    }

    pub fn add(&self, other: &HomElement) -> Result<HomElement, Error> {
        if self.degree != other.degree || self.map.shape() != other.map.shape() {
            return Err(Error::DimensionMismatch("summands differ in degree or shape".into()));
        }
        Ok(HomElement { map: &self.map + &other.map, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> HomElement {
        HomElement { map: self.map.scale(c), ..self.clone() }
    }

    pub fn neg(&self) -> HomElement {
        HomElement { map: -&self.map, ..self.clone() }
    }
}

/// The matrix of `d(f) = d_M f - (-1)^{deg} f d_L`.
pub fn hom_differential(l: &CdgModule, m: &CdgModule, f: &Matrix, degree: i64) -> Matrix {
    let s = l.field().sign(l.grading().parity(degree));
    &(m.d() * f) - &(f * l.d()).scale(&s)
}

/// `Hom^i(L, M)` of the underlying graded modules.
pub fn hom_space(l: &CdgModule, m: &CdgModule, i: i64) -> Result<HomSpace, Error> {
    if !l.same_ring(m) {
        return Err(Error::RingMismatch);
    }
    hom_graded(l.module(), m.module(), l.grading().normalize(i))
}

/// Degrees in which `Hom^•(L, M)` can be nonzero.
pub fn hom_degree_range(l: &CdgModule, m: &CdgModule) -> Vec<i64> {
    if l.grading().is_z2() {
        return vec![0, 1];
    }
    match (l.space().support(), m.space().support()) {
        (Some((llo, lhi)), Some((mlo, mhi))) => (mlo - lhi..=mhi - llo).collect(),
        _ => Vec::new(),
    }
}

/// The Hom complex, materialized over its support.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: CdgModule,
    pub target: CdgModule,
    pub degrees: Vec<i64>,
    pub spaces: Vec<HomSpace>,
}

impl HomComplex {
    pub fn new(l: &CdgModule, m: &CdgModule) -> Result<Self, Error> {
        if !l.same_ring(m) {
            return Err(Error::RingMismatch);
        }
        let degrees = hom_degree_range(l, m);
        let spaces = degrees.iter().map(|&i| hom_space(l, m, i)).collect::<Result<_, _>>()?;
        Ok(Self { source: l.clone(), target: m.clone(), degrees, spaces })
    }

    pub fn space(&self, i: i64) -> Option<&HomSpace> {
        let i = self.source.grading().normalize(i);
        self.degrees.iter().position(|&g| g == i).map(|k| &self.spaces[k])
    }

    /// Matrix of `d: Hom^i → Hom^{i+1}` in the canonical bases; `None` when
    /// `Hom^i` is outside the support.
    pub fn differential_matrix(&self, i: i64) -> Option<Matrix> {
        let src = self.space(i)?;
        let f = self.source.field();
        let next = self.space(i + 1);
        let columns: Vec<Vec<Scalar>> = src
            .basis()
            .iter()
            .map(|b| {
                let db = hom_differential(&self.source, &self.target, b, i);
                match next {
                    Some(t) => t.coordinates(&db).expect("differential leaves the Hom complex"),
                    None => {
                        assert!(db.is_zero(), "differential leaves the Hom complex support");
                        Vec::new()
                    }
                }
            })
            .collect();
        let rows = next.map_or(0, HomSpace::dim);
        Some(Matrix::from_columns(f, rows, &columns))
    }

    /// Checks exactly that every differential lands in the next space and `d² = 0`.
    pub fn squares_to_zero(&self) -> bool {
        self.degrees.iter().all(|&i| {
            let space = self.space(i).expect("degree in range");
            space.basis().iter().all(|b| {
                let db = hom_differential(&self.source, &self.target, b, i);
                let in_next = match self.space(i + 1) {
                    Some(t) => t.contains(&db),
                    None => db.is_zero(),
                };
                in_next && hom_differential(&self.source, &self.target, &db, i + 1).is_zero()
            })
        })
    }
}

/// Closed elements `Z^n Hom(L, M)`.
pub fn cocycles(l: &CdgModule, m: &CdgModule, n: i64) -> Result<HomSpace, Error> {
    let space = hom_space(l, m, n)?;
    let f = l.field();
    let basis = space.basis();
    let ambient = m.dim() * l.dim();
    if basis.is_empty() {
        return Ok(HomSpace::from_subspace(space.degree, m.dim(), l.dim(), Subspace::zero(f, ambient)));
    }
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| hom_differential(l, m, b, n).vectorize()).collect();
    let system = Matrix::from_columns(f, ambient, &columns);
    let vectors: Vec<Vec<Scalar>> = system
        .kernel()
        .basis_vectors()
        .iter()
        .map(|c| space.subspace().combine(c))
        .collect();
    Ok(HomSpace::from_subspace(space.degree, m.dim(), l.dim(), Subspace::from_vectors(f, ambient, &vectors)))
}

/// Boundaries `d(Hom^{n-1}(L, M))`.
pub fn coboundaries(l: &CdgModule, m: &CdgModule, n: i64) -> Result<HomSpace, Error> {
    let prev = hom_space(l, m, n - 1)?;
    let f = l.field();
    let vectors: Vec<Vec<Scalar>> =
        prev.basis().iter().map(|b| hom_differential(l, m, b, n - 1).vectorize()).collect();
    let degree = l.grading().normalize(n);
    Ok(HomSpace::from_subspace(degree, m.dim(), l.dim(), Subspace::from_vectors(f, m.dim() * l.dim(), &vectors)))
}

/// `H^n Hom(L, M) = Hom_{H^0}(L, M[n])` with a canonical basis of representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCohomology {
    pub degree: i64,
    pub dim: usize,
    pub representatives: Vec<Matrix>,
}

pub fn h_n(l: &CdgModule, m: &CdgModule, n: i64) -> Result<HomCohomology, Error> {
    let z = cocycles(l, m, n)?;
    let b = coboundaries(l, m, n)?;
    let reps = quotient_basis(z.subspace(), b.subspace()).map_err(|_| {
        Error::Internal("boundaries are not contained in cocycles; the Hom complex does not square to zero".into())
    })?;
    let representatives: Vec<Matrix> = reps.iter().map(|v| z.to_matrix(v)).collect();
    Ok(HomCohomology { degree: z.degree, dim: representatives.len(), representatives })
}

/// Solves `d(s) = target` for `s` of degree `degree - 1`.
pub fn solve_boundary(l: &CdgModule, m: &CdgModule, target: &Matrix, degree: i64) -> Result<Option<Matrix>, Error> {
    let prev = hom_space(l, m, degree - 1)?;
    let f = l.field();
    if target.is_zero() {
        return Ok(Some(Matrix::zeros(f, m.dim(), l.dim())));
    }
    let basis = prev.basis();
    if basis.is_empty() {
        return Ok(None);
    }
    let columns: Vec<Vec<Scalar>> =
        basis.iter().map(|b| hom_differential(l, m, b, degree - 1).vectorize()).collect();
    let system = Matrix::from_columns(f, m.dim() * l.dim(), &columns);
    Ok(system.solve(&target.vectorize())?.map(|c| prev.element(&c)))
}

/// A homotopy `s` with `f - g = d(s)`, when one exists.
pub fn homotopic(f: &HomElement, g: &HomElement) -> Result<Option<Matrix>, Error> {
    if f.degree != g.degree || f.map.shape() != g.map.shape() || !f.source.same_ring(&g.source) {
        return Err(Error::DimensionMismatch("morphisms have different shapes".into()));
    }
    solve_boundary(&f.source, &f.target, &(&f.map - &g.map), f.degree)
}

/// A contracting homotopy `s` with `d(s) = id_M`, when one exists.
pub fn contracting_homotopy(m: &CdgModule) -> Result<Option<Matrix>, Error> {
    solve_boundary(m, m, &m.identity(), 0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cdg::CdgRing;
    use crate::graded::{GradedAlgebra, GradedModule, GradingGroup};
    use crate::linalg::Field;

    fn ground(f: Field) -> Arc<CdgRing> {
        Arc::new(CdgRing::trivial(Arc::new(GradedAlgebra::ground(f, GradingGroup::integers()))).unwrap())
    }

    /// A complex of vector spaces with the given degrees and differential.
    fn complex(ring: &Arc<CdgRing>, degrees: &[i64], d: &[&[i64]]) -> CdgModule {
        let f = ring.field();
        let gens: Vec<(i64, String)> = degrees.iter().enumerate().map(|(i, &g)| (g, format!("x{i}"))).collect();
        let module = GradedModule::free(ring.algebra().clone(), &gens);
        let d = if degrees.is_empty() { Matrix::zeros(f, 0, 0) } else { Matrix::from_i64(f, d) };
        CdgModule::new(ring.clone(), module, d).unwrap()
    }

    #[test]
    fn identity_is_closed_and_non_chain_map_has_defect() {
        let ring = ground(Field::Rational);
        let x = complex(&ring, &[0, 1], &[&[0, 0], &[1, 0]]);
        assert!(HomElement::identity(&x).is_closed());
        // projection onto degree 0 is not a chain map
        let p = HomElement::new(&x, &x, 0, Matrix::from_i64(Field::Rational, &[&[1, 0], &[0, 0]])).unwrap();
        let dp = p.differential();
        assert_eq!(dp.degree, 1);
        assert_eq!(dp.map, &(x.d() * &p.map) - &(&p.map * x.d()));
        assert!(!dp.map.is_zero());
    }

    #[test]
    fn cone_of_identity_is_contractible_and_k_is_not() {
        let ring = ground(Field::Rational);
        let acyclic = complex(&ring, &[0, 1], &[&[0, 0], &[1, 0]]);
        let s = contracting_homotopy(&acyclic).unwrap().unwrap();
        assert_eq!(hom_differential(&acyclic, &acyclic, &s, -1), acyclic.identity());
        let k = complex(&ring, &[0], &[&[0]]);
        assert!(contracting_homotopy(&k).unwrap().is_none());
        assert_eq!(h_n(&acyclic, &acyclic, 0).unwrap().dim, 0);
    }

    #[test]
    fn classical_hom_in_homotopy_category() {
        // X = k in degree 0, Y = k in degree 1: Hom_K(X, Y[1]) = k.
        let ring = ground(Field::Rational);
        let x = complex(&ring, &[0], &[&[0]]);
        let y = complex(&ring, &[1], &[&[0]]);
        assert_eq!(h_n(&x, &y, 1).unwrap().dim, 1);
        assert_eq!(h_n(&x, &y, 0).unwrap().dim, 0);
        let c = HomComplex::new(&x, &y).unwrap();
        assert!(c.squares_to_zero());
        assert_eq!(c.degrees, vec![1]);
    }

    #[test]
    fn homotopic_identity_has_zero_witness() {
        let ring = ground(Field::Prime(2));
        let x = complex(&ring, &[0, 1], &[&[0, 0], &[1, 0]]);
        let id = HomElement::identity(&x);
        assert!(homotopic(&id, &id).unwrap().unwrap().is_zero());
    }

    #[test]
    fn hom_from_zero_is_zero_complex() {
        let ring = ground(Field::Rational);
        let z = CdgModule::zero(ring.clone());
        let x = complex(&ring, &[0], &[&[0]]);
        let c = HomComplex::new(&z, &x).unwrap();
        assert!(c.degrees.is_empty());
    }
}
