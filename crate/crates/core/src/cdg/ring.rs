use std::sync::Arc;

use crate::error::Error;
use crate::graded::{degree_violation, GradedAlgebra, GradingGroup};
use crate::linalg::{Field, Matrix, Scalar};
use crate::validation::{Axiom, ValidationReport};

/// A curved DG-ring: a graded algebra with an odd derivation `d` of degree +1
/// and a curvature element `h` of degree 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CdgRing {
    algebra: Arc<GradedAlgebra>,
    d: Matrix,
    h: Vec<Scalar>,
}

impl CdgRing {
    /// Validates every axiom and refuses invalid data.
    pub fn new(algebra: Arc<GradedAlgebra>, d: Matrix, h: Vec<Scalar>) -> Result<Self, Error> {
        validate_ring(&algebra, &d, &h).into_result()?;
        Ok(Self { algebra, d, h })
    }

    /// A graded algebra with `d = 0` and `h = 0`.
    pub fn trivial(algebra: Arc<GradedAlgebra>) -> Result<Self, Error> {
        let f = algebra.field();
        let n = algebra.dim();
        Self::new(algebra, Matrix::zeros(f, n, n), vec![f.zero(); n])
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn grading(&self) -> GradingGroup {
        self.algebra.grading()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn h(&self) -> &[Scalar] {
        &self.h
    }

    /// Coordinates of `d(e_r)`.
    pub fn d_of(&self, r: usize) -> Vec<Scalar> {
        self.d.column(r)
    }
}

/// Reports violations of the algebra axioms, the degrees of `d` and `h`, the
/// Leibniz rule, `d² = [h, −]` and `d(h) = 0`.
pub fn validate_ring(algebra: &GradedAlgebra, d: &Matrix, h: &[Scalar]) -> ValidationReport {
    let mut report = algebra.validate();
    let n = algebra.dim();
    let f = algebra.field();
    if d.shape() != (n, n) || h.len() != n {
        report.push(Axiom::DifferentialDegree, "differential or curvature has the wrong size");
        return report;
    }
    let space = algebra.space();
    if let Some((i, j)) = degree_violation(d, space, space, 1) {
        report.push(
            Axiom::DifferentialDegree,
            format!("d({}) has a component on {}", algebra.label(j), algebra.label(i)),
        );
    }
    let two = algebra.grading().normalize(2);
    if let Some(i) = (0..n).find(|&i| !h[i].is_zero() && algebra.degree(i) != two) {
        report.push(Axiom::CurvatureDegree, format!("h has a component on {}", algebra.label(i)));
    }
    // d(e_i e_j) = d(e_i) e_j + (-1)^{|i|} e_i d(e_j)
    for i in 0..n {
        let di = d.column(i);
        for j in 0..n {
            let lhs = d.mul_vec(&algebra.product_basis(i, j)).expect("dimension");
            let mut rhs = algebra.right_mult_by(&algebra.basis_vector(j)).mul_vec(&di).expect("dimension");
            let sign = f.sign(algebra.parity(i));
            let second = algebra.left_mult(i).mul_vec(&d.column(j)).expect("dimension");
            for (r, s) in rhs.iter_mut().zip(&second) {
                *r += &(&sign * s);
            }
            if lhs != rhs {
                report.push(Axiom::Leibniz, format!("({}, {})", algebra.label(i), algebra.label(j)));
            }
        }
    }
    let d2 = d * d;
    let commutator = &algebra.left_mult_by(h) - &algebra.right_mult_by(h);
    for i in 0..n {
        if d2.column(i) != commutator.column(i) {
            report.push(Axiom::DifferentialSquare, algebra.label(i).to_string());
        }
    }
    if d.mul_vec(h).expect("dimension").iter().any(|x| !x.is_zero()) {
        report.push(Axiom::CurvatureClosed, "d(h) != 0");
    }
    report
}
