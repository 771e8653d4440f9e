use crate::error::Error;
use crate::linalg::{Field, Matrix, Scalar};
use crate::validation::{Axiom, ValidationReport};

use super::space::{degree_violation, GradedSpace, GradingGroup};

/// A finite-dimensional graded associative unital algebra given by structure
/// constants. `mult[i]` is the matrix of left multiplication by the basis
/// element `e_i`, so its column `j` holds the coordinates of `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedAlgebra {
    field: Field,
    space: GradedSpace,
    mult: Vec<Matrix>,
    unit: Vec<Scalar>,
}

impl GradedAlgebra {
    /// Checks shapes only; call [`GradedAlgebra::validate`] for the axioms.
    pub fn new(field: Field, space: GradedSpace, mult: Vec<Matrix>, unit: Vec<Scalar>) -> Result<Self, Error> {
        let n = space.dim();
        if mult.len() != n || mult.iter().any(|m| m.shape() != (n, n)) || unit.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "algebra of dimension {n} needs {n} multiplication matrices of size {n}x{n} and a unit vector"
            )));
        }
        if mult.iter().any(|m| m.field() != field) || unit.iter().any(|x| x.field() != field) {
            return Err(Error::DimensionMismatch("structure constants from a different field".into()));
        }
        Ok(Self { field, space, mult, unit })
    }

    /// Builds from `table[i][j]` = coordinates of `e_i e_j`.
    pub fn from_table(
        field: Field,
        space: GradedSpace,
        table: &[Vec<Vec<Scalar>>],
        unit: Vec<Scalar>,
    ) -> Result<Self, Error> {
        let n = space.dim();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch("multiplication table has the wrong size".into()));
        }
        let mult = table.iter().map(|row| Matrix::from_columns(field, n, row)).collect();
        Self::new(field, space, mult, unit)
    }

    /// The ground field concentrated in degree 0.
    pub fn ground(field: Field, grading: GradingGroup) -> Self {
        let space = GradedSpace::new(grading, vec![0], vec!["1".into()]);
        Self::new(field, space, vec![Matrix::identity(field, 1)], vec![field.one()]).expect("shapes")
    }

    /// `k[x]/(x^n)` with `|x| = degree`; basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(field: Field, grading: GradingGroup, var: &str, degree: i64, n: usize) -> Self {
        assert!(n >= 1);
        let degrees = (0..n as i64).map(|k| k * degree).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            })
            .collect();
        let space = GradedSpace::new(grading, degrees, labels);
        let mult = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(field, n, n);
                for j in 0..n - i {
                    m[(i + j, j)] = field.one();
                }
                m
            })
            .collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Self::new(field, space, mult, unit).expect("shapes")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grading(&self) -> GradingGroup {
        self.space.grading
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    pub fn parity(&self, i: usize) -> bool {
        self.space.parity(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    pub fn mult(&self) -> &[Matrix] {
        &self.mult
    }

    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.mult[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Coordinates of `e_i e_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mult[i].column(j)
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), self.dim(), &self.mult, a)
    }

    /// Matrix of right multiplication by an arbitrary element: column `j` is `e_j b`.
    pub fn right_mult_by(&self, b: &[Scalar]) -> Matrix {
        let columns: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|j| self.mult[j].mul_vec(b).expect("dimension")).collect();
        Matrix::from_columns(self.field, self.dim(), &columns)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.left_mult_by(a).mul_vec(b).expect("dimension")
    }

    /// The Koszul-opposite algebra, `a ∘ b = (-1)^{|a||b|} b a`.
    pub fn koszul_opposite(&self) -> GradedAlgebra {
        let n = self.dim();
        let mult = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(self.field, n, n);
                for j in 0..n {
                    let s = self.field.sign(self.parity(i) && self.parity(j));
                    for k in 0..n {
                        m[(k, j)] = &s * &self.mult[j][(k, i)];
                    }
                }
                m
            })
            .collect();
        GradedAlgebra { field: self.field, space: self.space.clone(), mult, unit: self.unit.clone() }
    }

    /// Reports every violated algebra axiom on basis elements, pairs and triples.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim();
        if let Some(i) = (0..n).find(|&i| !self.unit[i].is_zero() && self.degree(i) != 0) {
            report.push(Axiom::UnitDegree, format!("unit has a component on {}", self.label(i)));
        }
        for i in 0..n {
            if let Some((r, c)) = degree_violation(&self.mult[i], &self.space, &self.space, self.degree(i)) {
                report.push(
                    Axiom::MultiplicationDegree,
                    format!("({}, {}) -> {}", self.label(i), self.label(c), self.label(r)),
                );
            }
        }
        let unit_left = self.left_mult_by(&self.unit);
        let unit_right = self.right_mult_by(&self.unit);
        for j in 0..n {
            let e = self.basis_vector(j);
            if unit_left.column(j) != e {
                report.push(Axiom::LeftUnit, format!("(1, {})", self.label(j)));
            }
            if unit_right.column(j) != e {
                report.push(Axiom::RightUnit, format!("({}, 1)", self.label(j)));
            }
        }
        // (e_i e_j) e_k = e_i (e_j e_k) as matrices: L(e_i e_j) = L_i L_j.
        for i in 0..n {
            for j in 0..n {
                let lhs = self.left_mult_by(&self.product_basis(i, j));
                let rhs = &self.mult[i] * &self.mult[j];
                if lhs != rhs {
                    for k in 0..n {
                        if lhs.column(k) != rhs.column(k) {
                            report.push(
                                Axiom::Associativity,
                                format!("({}, {}, {})", self.label(i), self.label(j), self.label(k)),
                            );
                        }
                    }
                }
            }
        }
        report
    }
}

/// `Σ_i coeffs[i] · mats[i]`.
pub(crate) fn combine(field: Field, rows: usize, cols: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, rows, cols);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}
