use super::field::{Field, Scalar};
use super::matrix::Matrix;
use crate::error::Error;

/// A linear subspace of `field^ambient`, stored by its reduced row-echelon basis.
///
/// The echelon basis is unique, so structural equality is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient, "vector length must equal the ambient dimension");
            for (j, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Self::from_rows(&m)
    }

    pub fn from_rows(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.block(0..pivots.len(), 0..m.cols());
        Self { ambient: m.cols(), basis, pivots }
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Re-canonicalizes; a no-op on data that is already canonical.
    pub fn canonicalize(&self) -> Self {
        Self::from_rows(&self.basis)
    }

    /// Coordinates with respect to the echelon basis; `None` when `v` lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length must equal the ambient dimension");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in residual.iter_mut().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    *r -= &(c * b);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Linear combination of the basis vectors.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![self.field().zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    *o += &(c * b);
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.field(), self.ambient);
        }
        // a U = b W  <=>  (a, b) in ker [U^T | -W^T]
        let system = self.basis.transpose().hstack(&(-&other.basis.transpose()));
        let ker = system.kernel();
        let vectors: Vec<Vec<Scalar>> = ker
            .basis_vectors()
            .iter()
            .map(|ab| self.combine(&ab[..self.dim()]))
            .collect();
        Subspace::from_vectors(self.field(), self.ambient, &vectors)
    }
}

/// Deterministic complement of `sub` inside `ambient`: greedily keeps the
/// canonical basis vectors of `ambient` that are not yet in the span.
pub fn quotient_basis(ambient: &Subspace, sub: &Subspace) -> Result<Vec<Vec<Scalar>>, Error> {
    if !sub.is_subspace_of(ambient) {
        return Err(Error::Containment);
    }
    let mut span = sub.clone();
    let mut reps = Vec::new();
    for v in ambient.basis_vectors() {
        if span.dim() == ambient.dim() {
            break;
        }
        if !span.contains(&v) {
            span = span.sum(&Subspace::from_vectors(ambient.field(), ambient.ambient(), std::slice::from_ref(&v)));
            reps.push(v);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_plane_by_line() {
        let f = Field::Rational;
        let plane = Subspace::full(f, 2);
        let line = Subspace::from_vectors(f, 2, &[vec![f.one(), f.zero()]]);
        let reps = quotient_basis(&plane, &line).unwrap();
        assert_eq!(reps, vec![vec![f.zero(), f.one()]]);
    }

    #[test]
    fn quotient_of_space_by_line_has_full_complement() {
        let f = Field::Rational;
        let space = Subspace::full(f, 3);
        let line = Subspace::from_vectors(f, 3, &[vec![f.one(), f.one(), f.zero()]]);
        assert_eq!(quotient_basis(&space, &line).unwrap().len(), 2);
    }

    #[test]
    fn quotient_rejects_non_contained() {
        let f = Field::Rational;
        let a = Subspace::from_vectors(f, 2, &[vec![f.one(), f.zero()]]);
        let b = Subspace::from_vectors(f, 2, &[vec![f.zero(), f.one()]]);
        assert!(matches!(quotient_basis(&a, &b), Err(Error::Containment)));
    }

    #[test]
    fn intersection_and_sum() {
        let f = Field::Prime(5);
        let xy = Subspace::from_vectors(
            f,
            3,
            &[vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.one(), f.zero()]],
        );
        let yz = Subspace::from_vectors(
            f,
            3,
            &[vec![f.zero(), f.one(), f.zero()], vec![f.zero(), f.zero(), f.one()]],
        );
        let meet = xy.intersection(&yz);
        assert_eq!(meet, Subspace::from_vectors(f, 3, &[vec![f.zero(), f.one(), f.zero()]]));
        assert_eq!(xy.sum(&yz), Subspace::full(f, 3));
    }

    #[test]
    fn coordinates_reconstruct() {
        let f = Field::Rational;
        let s = Subspace::from_vectors(f, 3, &[vec![f.one(), f.from_i64(2), f.zero()]]);
        let v = vec![f.from_i64(3), f.from_i64(6), f.zero()];
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coordinates(&[f.one(), f.zero(), f.zero()]).is_none());
    }
}
