use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::{Field, Matrix};

/// Default cap on the width of a ℤ-support window.
pub const DEFAULT_WINDOW_CAP: u32 = 64;

/// The grading group Γ: either ℤ (with a cap on support width) or ℤ/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradingGroup {
    Integers { window_cap: u32 },
    Z2,
}

impl GradingGroup {
    pub fn integers() -> Self {
        GradingGroup::Integers { window_cap: DEFAULT_WINDOW_CAP }
    }

    pub fn normalize(self, g: i64) -> i64 {
        match self {
            GradingGroup::Integers { .. } => g,
            GradingGroup::Z2 => g.rem_euclid(2),
        }
    }

    pub fn add(self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }

    /// The parity homomorphism Γ → ℤ/2; `true` for odd.
    pub fn parity(self, g: i64) -> bool {
        g.rem_euclid(2) == 1
    }

    pub fn is_z2(self) -> bool {
        matches!(self, GradingGroup::Z2)
    }

    /// Checks that a support `[lo, hi]` respects the window cap.
    pub fn check_window(self, support: Option<(i64, i64)>) -> Result<(), Error> {
        if let (GradingGroup::Integers { window_cap }, Some((lo, hi))) = (self, support) {
            let width = hi - lo + 1;
            if width > window_cap as i64 {
                return Err(Error::WindowExceeded { width, cap: window_cap });
            }
        }
        Ok(())
    }
}

/// A finite-dimensional Γ-graded vector space with an ordered, labelled,
/// homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    pub grading: GradingGroup,
    degrees: Vec<i64>,
    labels: Vec<String>,
}

impl GradedSpace {
    pub fn new(grading: GradingGroup, degrees: Vec<i64>, labels: Vec<String>) -> Self {
        assert_eq!(degrees.len(), labels.len(), "one label per basis element");
        let degrees = degrees.into_iter().map(|g| grading.normalize(g)).collect();
        Self { grading, degrees, labels }
    }

    pub fn unlabelled(grading: GradingGroup, degrees: Vec<i64>) -> Self {
        let labels = (0..degrees.len()).map(|i| format!("b{i}")).collect();
        Self::new(grading, degrees, labels)
    }

    pub fn zero(grading: GradingGroup) -> Self {
        Self::new(grading, Vec::new(), Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> bool {
        self.grading.parity(self.degrees[i])
    }

    /// Smallest and largest occupied degree.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.degrees.iter().min()?;
        let hi = self.degrees.iter().max()?;
        Some((*lo, *hi))
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &g in &self.degrees {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    pub fn indices_in_degree(&self, g: i64) -> Vec<usize> {
        let g = self.grading.normalize(g);
        (0..self.dim()).filter(|&i| self.degrees[i] == g).collect()
    }

    /// Same basis with every degree moved by `-shift`, i.e. `(V[shift])^n = V^{n+shift}`.
    pub fn shifted(&self, shift: i64) -> GradedSpace {
        let degrees = self.degrees.iter().map(|&g| g - shift).collect();
        GradedSpace::new(self.grading, degrees, self.labels.clone())
    }

    pub fn direct_sum(parts: &[&GradedSpace], grading: GradingGroup) -> GradedSpace {
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for p in parts {
            degrees.extend_from_slice(&p.degrees);
            labels.extend(p.labels.iter().cloned());
        }
        GradedSpace::new(grading, degrees, labels)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> GradedSpace {
        GradedSpace::new(self.grading, self.degrees.clone(), labels)
    }
}

/// A homogeneous linear map of a fixed degree, stored as one matrix; the
/// per-degree blocks are views into it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    pub degree: i64,
    pub matrix: Matrix,
}

impl GradedMap {
    pub fn new(degree: i64, matrix: Matrix) -> Self {
        Self { degree, matrix }
    }

    pub fn zero(field: Field, source: &GradedSpace, target: &GradedSpace, degree: i64) -> Self {
        Self { degree, matrix: Matrix::zeros(field, target.dim(), source.dim()) }
    }

    /// Verifies dimensions and that no entry connects degrees `g` and `h ≠ g + degree`.
    pub fn check(&self, source: &GradedSpace, target: &GradedSpace) -> Result<(), Error> {
        if self.matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                self.matrix.rows(),
                self.matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if let Some((i, j)) = degree_violation(&self.matrix, source, target, self.degree) {
            return Err(Error::NotAMorphism(format!(
                "entry {} <- {} is not of degree {}",
                target.label(i),
                source.label(j),
                self.degree
            )));
        }
        Ok(())
    }

    /// Block `V^g → W^{g+degree}`.
    pub fn block(&self, source: &GradedSpace, target: &GradedSpace, g: i64) -> Matrix {
        let cols = source.indices_in_degree(g);
        let rows = target.indices_in_degree(source.grading.add(g, self.degree));
        self.matrix.select(&rows, &cols)
    }
}

/// First entry `(row, col)` that is nonzero although its degrees do not differ by `shift`.
pub fn degree_violation(
    m: &Matrix,
    source: &GradedSpace,
    target: &GradedSpace,
    shift: i64,
) -> Option<(usize, usize)> {
    let grading = source.grading;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() && target.degree(i) != grading.add(source.degree(j), shift) {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_normalizes_and_parity_is_a_homomorphism() {
        let z2 = GradingGroup::Z2;
        assert_eq!(z2.normalize(-3), 1);
        assert_eq!(z2.add(1, 1), 0);
        let z = GradingGroup::integers();
        for a in -3..3 {
            for b in -3..3 {
                assert_eq!(z.parity(a + b), z.parity(a) ^ z.parity(b));
                assert_eq!(z2.parity(z2.add(a, b)), z2.parity(a) ^ z2.parity(b));
            }
        }
    }

    #[test]
    fn window_cap_enforced() {
        let g = GradingGroup::Integers { window_cap: 3 };
        assert!(g.check_window(Some((0, 2))).is_ok());
        assert!(matches!(g.check_window(Some((0, 3))), Err(Error::WindowExceeded { width: 4, cap: 3 })));
        assert!(GradingGroup::Z2.check_window(Some((0, 100))).is_ok());
    }

    #[test]
    fn blocks_of_a_degree_one_map() {
        let f = Field::Rational;
        let v = GradedSpace::unlabelled(GradingGroup::integers(), vec![0, 1, 1]);
        let m = Matrix::from_i64(f, &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0]]);
        let map = GradedMap::new(1, m);
        assert!(map.check(&v, &v).is_ok());
        assert_eq!(map.block(&v, &v, 0), Matrix::from_i64(f, &[&[1], &[2]]));
        assert_eq!(map.block(&v, &v, 1).shape(), (0, 2));
        let bad = GradedMap::new(0, Matrix::from_i64(f, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]));
        assert!(bad.check(&v, &v).is_err());
    }
}
