use std::sync::Arc;

use crate::error::Error;
use crate::graded::{degree_violation, GradedModule, GradedSpace, GradingGroup};
use crate::linalg::{Field, Matrix, Scalar};
use crate::validation::{Axiom, ValidationReport};

use super::ring::CdgRing;

/// A left CDG-module: a graded module with a degree +1 differential obeying
/// the curved Leibniz rule and `d_M² = h·`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CdgModule {
    ring: Arc<CdgRing>,
    module: GradedModule,
    d: Matrix,
}

impl CdgModule {
    /// Validates every axiom and refuses invalid data.
    pub fn new(ring: Arc<CdgRing>, module: GradedModule, d: Matrix) -> Result<Self, Error> {
        validate_module(&ring, &module, &d).into_result()?;
        Ok(Self { ring, module, d })
    }

    /// Skips validation; only for data produced by constructions whose
    /// correctness is covered by tests.
    pub(crate) fn from_parts(ring: Arc<CdgRing>, module: GradedModule, d: Matrix) -> Self {
        debug_assert!(validate_module(&ring, &module, &d).is_valid(), "construction produced an invalid module");
        Self { ring, module, d }
    }

    pub fn zero(ring: Arc<CdgRing>) -> Self {
        let module = GradedModule::zero(ring.algebra().clone());
        let d = Matrix::zeros(ring.field(), 0, 0);
        Self { ring, module, d }
    }

    pub fn ring(&self) -> &Arc<CdgRing> {
        &self.ring
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn space(&self) -> &GradedSpace {
        self.module.space()
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn grading(&self) -> GradingGroup {
        self.ring.grading()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.module.degree(i)
    }

    pub fn parity(&self, i: usize) -> bool {
        self.module.parity(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.module.label(i)
    }

    pub fn same_ring(&self, other: &CdgModule) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub fn with_labels(&self, labels: Vec<String>) -> CdgModule {
        CdgModule { module: self.module.with_labels(labels), ..self.clone() }
    }

    pub fn with_label_prefix(&self, prefix: &str) -> CdgModule {
        CdgModule { module: self.module.with_label_prefix(prefix), ..self.clone() }
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    /// `M[i]` with differential `(-1)^i d_M`.
    pub fn shift(&self, i: i64) -> Result<CdgModule, Error> {
        let module = self.module.shift(i);
        self.grading().check_window(module.space().support())?;
        let d = self.d.scale(&self.field().sign(self.grading().parity(i)));
        Ok(CdgModule { ring: self.ring.clone(), module, d })
    }

    pub fn direct_sum(parts: &[&CdgModule]) -> Result<CdgModule, Error> {
        let first = parts.first().ok_or_else(|| Error::Internal("empty direct sum".into()))?;
        if parts.iter().any(|p| !p.same_ring(first)) {
            return Err(Error::RingMismatch);
        }
        let modules: Vec<&GradedModule> = parts.iter().map(|p| &p.module).collect();
        let module = GradedModule::direct_sum(&modules)?;
        first.grading().check_window(module.space().support())?;
        let ds: Vec<&Matrix> = parts.iter().map(|p| &p.d).collect();
        let d = Matrix::block_diagonal(first.field(), &ds);
        Ok(CdgModule { ring: first.ring.clone(), module, d })
    }

    /// Transports along an invertible degree-0 linear change of basis `g`.
    pub fn conjugate(&self, g: &Matrix) -> Result<CdgModule, Error> {
        let module = self.module.conjugate(g)?;
        let inv = g.inverse().ok_or_else(|| Error::NotAMorphism("not invertible".into()))?;
        let d = &(g * &self.d) * &inv;
        Ok(CdgModule { ring: self.ring.clone(), module, d })
    }

    /// Replaces the differential, validating the result.
    pub fn with_differential(&self, d: Matrix) -> Result<CdgModule, Error> {
        CdgModule::new(self.ring.clone(), self.module.clone(), d)
    }
}

/// Reports violations of the module axioms, the degree of `d_M`, the curved
/// Leibniz rule `d_M A_r = A_{d(r)} + (-1)^{|r|} A_r d_M` and `d_M² = A_h`.
pub fn validate_module(ring: &CdgRing, module: &GradedModule, d: &Matrix) -> ValidationReport {
    let mut report = ValidationReport::default();
    if module.algebra().as_ref() != ring.algebra().as_ref() {
        report.push(Axiom::ActionDegree, "module is defined over a different algebra");
        return report;
    }
    report.extend(module.validate());
    let n = module.dim();
    if d.shape() != (n, n) {
        report.push(Axiom::DifferentialDegree, "differential has the wrong size");
        return report;
    }
    let f = ring.field();
    let alg = ring.algebra();
    if let Some((i, j)) = degree_violation(d, module.space(), module.space(), 1) {
        report.push(
            Axiom::DifferentialDegree,
            format!("d({}) has a component on {}", module.label(j), module.label(i)),
        );
    }
    for r in 0..alg.dim() {
        let lhs = d * module.act(r);
        let rhs = &module.act_by(&ring.d_of(r)) + &(module.act(r) * d).scale(&f.sign(alg.parity(r)));
        if lhs != rhs {
            for j in 0..n {
                if lhs.column(j) != rhs.column(j) {
                    report.push(Axiom::ModuleLeibniz, format!("({}, {})", alg.label(r), module.label(j)));
                }
            }
        }
    }
    let d2 = d * d;
    let h = module.act_by(ring.h());
    for j in 0..n {
        if d2.column(j) != h.column(j) {
            report.push(Axiom::ModuleCurvature, module.label(j).to_string());
        }
    }
    report
}

/// A right CDG-module: `right[r]` has column `j` equal to `y_j · e_r`; the
/// differential satisfies `d(y r) = d(y) r + (-1)^{|y|} y d(r)` and `d² = -·h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RightCdgModule {
    ring: Arc<CdgRing>,
    space: GradedSpace,
    right: Vec<Matrix>,
    d: Matrix,
}

impl RightCdgModule {
    pub fn new(ring: Arc<CdgRing>, space: GradedSpace, right: Vec<Matrix>, d: Matrix) -> Result<Self, Error> {
        validate_right_module(&ring, &space, &right, &d).into_result()?;
        Ok(Self { ring, space, right, d })
    }

    pub fn ring(&self) -> &Arc<CdgRing> {
        &self.ring
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }
}

pub fn validate_right_module(ring: &CdgRing, space: &GradedSpace, right: &[Matrix], d: &Matrix) -> ValidationReport {
    let mut report = ValidationReport::default();
    let alg = ring.algebra();
    let f = ring.field();
    let n = space.dim();
    if right.len() != alg.dim() || right.iter().any(|m| m.shape() != (n, n)) || d.shape() != (n, n) {
        report.push(Axiom::ActionDegree, "right action or differential has the wrong size");
        return report;
    }
    let act_by = |a: &[Scalar]| {
        let mut out = Matrix::zeros(f, n, n);
        for (m, c) in right.iter().zip(a) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    };
    for (r, a) in right.iter().enumerate() {
        if let Some((i, j)) = degree_violation(a, space, space, alg.degree(r)) {
            report.push(Axiom::ActionDegree, format!("{}·{} -> {}", space.label(j), alg.label(r), space.label(i)));
        }
    }
    if !act_by(alg.unit()).is_identity() {
        report.push(Axiom::ActionUnit, "unit does not act as the identity");
    }
    // (y r) s = y (r s): R_s R_r = R_{rs}
    for r in 0..alg.dim() {
        for s in 0..alg.dim() {
            if &right[s] * &right[r] != act_by(&alg.product_basis(r, s)) {
                report.push(Axiom::ActionAssociativity, format!("(y, {}, {})", alg.label(r), alg.label(s)));
            }
        }
    }
    if let Some((i, j)) = degree_violation(d, space, space, 1) {
        report.push(Axiom::DifferentialDegree, format!("d({}) has a component on {}", space.label(j), space.label(i)));
    }
    for (r, a) in right.iter().enumerate() {
        let lhs = d * a;
        let first = a * d;
        let second = act_by(&ring.d_of(r));
        for j in 0..n {
            let s = f.sign(space.parity(j));
            let expected: Vec<Scalar> =
                first.column(j).iter().zip(second.column(j)).map(|(a, b)| a + &(&s * &b)).collect();
            if lhs.column(j) != expected {
                report.push(Axiom::RightModuleLeibniz, format!("({}, {})", space.label(j), alg.label(r)));
            }
        }
    }
    let d2 = d * d;
    let minus_h = -&act_by(ring.h());
    for j in 0..n {
        if d2.column(j) != minus_h.column(j) {
            report.push(Axiom::RightModuleCurvature, space.label(j).to_string());
        }
    }
    report
}
