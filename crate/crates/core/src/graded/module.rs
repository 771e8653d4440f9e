use std::sync::Arc;

use crate::error::Error;
use crate::linalg::{Field, Matrix, Scalar, Subspace};
use crate::validation::{Axiom, ValidationReport};

use super::algebra::{combine, GradedAlgebra};
use super::space::{degree_violation, GradedSpace, GradingGroup};

/// A finite-dimensional graded left module. `action[r]` is the matrix by which
/// the algebra basis element `e_r` acts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    space: GradedSpace,
    action: Vec<Matrix>,
}

impl GradedModule {
    /// Checks shapes only; call [`GradedModule::validate`] for the axioms.
    pub fn new(algebra: Arc<GradedAlgebra>, space: GradedSpace, action: Vec<Matrix>) -> Result<Self, Error> {
        let n = space.dim();
        if action.len() != algebra.dim() || action.iter().any(|m| m.shape() != (n, n)) {
            return Err(Error::DimensionMismatch(format!(
                "module of dimension {n} needs {} action matrices of size {n}x{n}",
                algebra.dim()
            )));
        }
        if space.grading != algebra.grading() {
            return Err(Error::RingMismatch);
        }
        if action.iter().any(|m| m.field() != algebra.field()) {
            return Err(Error::DimensionMismatch("action constants from a different field".into()));
        }
        Ok(Self { algebra, space, action })
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Self {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        let space = GradedSpace::zero(algebra.grading());
        Self { algebra, space, action }
    }

    /// The free module on generators of the given degrees; basis `e_i·g_t`
    /// at index `t·dim A + i`.
    pub fn free(algebra: Arc<GradedAlgebra>, generators: &[(i64, String)]) -> Self {
        let f = algebra.field();
        let a = algebra.dim();
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for (deg, name) in generators {
            for i in 0..a {
                degrees.push(deg + algebra.degree(i));
                labels.push(if i == 0 && algebra.unit()[0].is_one() {
                    name.clone()
                } else {
                    format!("{}*{}", algebra.label(i), name)
                });
            }
        }
        let space = GradedSpace::new(algebra.grading(), degrees, labels);
        let action = (0..a)
            .map(|k| {
                let blocks: Vec<&Matrix> = (0..generators.len()).map(|_| algebra.left_mult(k)).collect();
                Matrix::block_diagonal(f, &blocks)
            })
            .collect();
        Self { algebra, space, action }
    }

    /// The algebra as a left module over itself.
    pub fn regular(algebra: Arc<GradedAlgebra>) -> Self {
        let space = algebra.space().clone();
        let action = algebra.mult().to_vec();
        Self { algebra, space, action }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
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

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn act(&self, r: usize) -> &Matrix {
        &self.action[r]
    }

    /// Matrix by which an arbitrary algebra element acts.
    pub fn act_by(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), self.dim(), &self.action, a)
    }

    pub fn same_algebra(&self, other: &GradedModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    pub fn with_labels(&self, labels: Vec<String>) -> GradedModule {
        GradedModule { space: self.space.with_labels(labels), ..self.clone() }
    }

    pub fn with_label_prefix(&self, prefix: &str) -> GradedModule {
        let labels = self.space.labels().iter().map(|l| format!("{prefix}{l}")).collect();
        self.with_labels(labels)
    }

    /// Reports every violated module axiom on basis elements and pairs.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let alg = &self.algebra;
        for r in 0..alg.dim() {
            if let Some((i, j)) = degree_violation(&self.action[r], &self.space, &self.space, alg.degree(r)) {
                report.push(
                    Axiom::ActionDegree,
                    format!("{}·{} -> {}", alg.label(r), self.label(j), self.label(i)),
                );
            }
        }
        let unit = self.act_by(alg.unit());
        for j in 0..self.dim() {
            let mut e = vec![self.field().zero(); self.dim()];
            e[j] = self.field().one();
            if unit.column(j) != e {
                report.push(Axiom::ActionUnit, format!("1·{}", self.label(j)));
            }
        }
        for r in 0..alg.dim() {
            for s in 0..alg.dim() {
                let lhs = &self.action[r] * &self.action[s];
                let rhs = self.act_by(&alg.product_basis(r, s));
                if lhs != rhs {
                    for j in 0..self.dim() {
                        if lhs.column(j) != rhs.column(j) {
                            report.push(
                                Axiom::ActionAssociativity,
                                format!("({}, {}, {})", alg.label(r), alg.label(s), self.label(j)),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// `M[i]`: `(M[i])^n = M^{n+i}`, with `e_r` acting by `(-1)^{i|r|} A_r`.
    pub fn shift(&self, i: i64) -> GradedModule {
        let f = self.field();
        let odd = self.grading().parity(i);
        let action = (0..self.algebra.dim())
            .map(|r| self.action[r].scale(&f.sign(odd && self.algebra.parity(r))))
            .collect();
        GradedModule { algebra: self.algebra.clone(), space: self.space.shifted(i), action }
    }

    pub fn direct_sum(parts: &[&GradedModule]) -> Result<GradedModule, Error> {
        let first = parts.first().ok_or_else(|| Error::Internal("empty direct sum".into()))?;
        if parts.iter().any(|p| !p.same_algebra(first)) {
            return Err(Error::RingMismatch);
        }
        let f = first.field();
        let spaces: Vec<&GradedSpace> = parts.iter().map(|p| &p.space).collect();
        let space = GradedSpace::direct_sum(&spaces, first.grading());
        let action = (0..first.algebra.dim())
            .map(|r| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.action[r]).collect();
                Matrix::block_diagonal(f, &blocks)
            })
            .collect();
        Ok(GradedModule { algebra: first.algebra.clone(), space, action })
    }

    /// Transports the module structure along an invertible degree-0 change of
    /// basis `g`: new action `g A g^{-1}`.
    pub fn conjugate(&self, g: &Matrix) -> Result<GradedModule, Error> {
        let inv = g.inverse().ok_or_else(|| Error::NotAMorphism("change of basis is not invertible".into()))?;
        if degree_violation(g, &self.space, &self.space, 0).is_some() {
            return Err(Error::NotAMorphism("change of basis is not homogeneous of degree 0".into()));
        }
        let action = self.action.iter().map(|a| &(g * a) * &inv).collect();
        Ok(GradedModule { action, ..self.clone() })
    }

    /// The graded dual `Hom_k(M, k)` as a left module over the Koszul-opposite
    /// algebra: `φ_j` has degree `-|m_j|` and `(a·φ)(m) = (-1)^{|a||φ|} φ(a m)`.
    pub fn dual(&self, opposite: Arc<GradedAlgebra>) -> GradedModule {
        let f = self.field();
        let degrees = self.space.degrees().iter().map(|g| -g).collect();
        let labels = self.space.labels().iter().map(|l| format!("{l}*")).collect();
        let space = GradedSpace::new(self.grading(), degrees, labels);
        let n = self.dim();
        let action = (0..self.algebra.dim())
            .map(|r| {
                let mut m = Matrix::zeros(f, n, n);
                for j in 0..n {
                    let s = f.sign(self.algebra.parity(r) && self.parity(j));
                    for l in 0..n {
                        // (a·φ_j)(m_l) = ± φ_j(a m_l) = ± A_a[j, l]
                        m[(l, j)] = &s * &self.action[r][(j, l)];
                    }
                }
                m
            })
            .collect();
        GradedModule { algebra: opposite, space, action }
    }

    /// The submodule spanned by a graded, action-closed subspace. Its basis is
    /// the echelon basis of `sub`, which is homogeneous. Returns the module and
    /// the inclusion matrix.
    pub fn submodule(&self, sub: &Subspace) -> Result<(GradedModule, Matrix), Error> {
        if sub.ambient() != self.dim() {
            return Err(Error::DimensionMismatch("subspace lives in a different ambient space".into()));
        }
        let f = self.field();
        let rows = sub.basis_vectors();
        let mut degrees = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for (row, &p) in rows.iter().zip(sub.pivots()) {
            let g = self.degree(p);
            if row.iter().enumerate().any(|(j, x)| !x.is_zero() && self.degree(j) != g) {
                return Err(Error::NotAMorphism("subspace is not graded".into()));
            }
            degrees.push(g);
            labels.push(self.label(p).to_string());
        }
        let inclusion = Matrix::from_columns(f, self.dim(), &rows);
        let mut action = Vec::with_capacity(self.algebra.dim());
        for r in 0..self.algebra.dim() {
            let mut columns = Vec::with_capacity(rows.len());
            for row in &rows {
                let image = self.action[r].mul_vec(row)?;
                columns.push(sub.coordinates(&image).ok_or(Error::NotClosed)?);
            }
            action.push(Matrix::from_columns(f, rows.len(), &columns));
        }
        let space = GradedSpace::new(self.grading(), degrees, labels);
        Ok((GradedModule { algebra: self.algebra.clone(), space, action }, inclusion))
    }

    /// Greedy homogeneous generating set: basis elements in order, skipping
    /// those already in the submodule generated by earlier choices.
    pub fn generating_set(&self) -> Vec<usize> {
        let f = self.field();
        let mut span = Subspace::zero(f, self.dim());
        let mut gens = Vec::new();
        for j in 0..self.dim() {
            if span.dim() == self.dim() {
                break;
            }
            let mut e = vec![f.zero(); self.dim()];
            e[j] = f.one();
            if span.contains(&e) {
                continue;
            }
            gens.push(j);
            let orbit: Vec<Vec<Scalar>> = self.action.iter().map(|a| a.column(j)).collect();
            span = span.sum(&Subspace::from_vectors(f, self.dim(), &orbit));
        }
        gens
    }

    /// Free cover on the greedy generating set: the free module and the
    /// surjection `e_i·g_t ↦ e_i m_{g_t}`.
    pub fn free_cover(&self) -> (GradedModule, Matrix, Vec<usize>) {
        let gens = self.generating_set();
        let generators: Vec<(i64, String)> =
            gens.iter().map(|&g| (self.degree(g), format!("[{}]", self.label(g)))).collect();
        let free = GradedModule::free(self.algebra.clone(), &generators);
        let mut columns = Vec::with_capacity(free.dim());
        for &g in &gens {
            for r in 0..self.algebra.dim() {
                columns.push(self.action[r].column(g));
            }
        }
        let cover = Matrix::from_columns(self.field(), self.dim(), &columns);
        (free, cover, gens)
    }

    /// Kernel of a degree-0 module map `self → target`, as a submodule.
    pub fn kernel_of(&self, map: &Matrix) -> Result<(GradedModule, Matrix), Error> {
        let f = self.field();
        let mut vectors = Vec::new();
        for (g, _) in self.space.dims_by_degree() {
            let cols = self.space.indices_in_degree(g);
            let block = map.select(&(0..map.rows()).collect::<Vec<_>>(), &cols);
            for v in block.kernel().basis_vectors() {
                let mut full = vec![f.zero(); self.dim()];
                for (&c, x) in cols.iter().zip(v) {
                    full[c] = x;
                }
                vectors.push(full);
            }
        }
        self.submodule(&Subspace::from_vectors(f, self.dim(), &vectors))
    }
}

/// Checks that `f` has the shape of a map `source → target` and satisfies
/// `f A^L_r = (-1)^{i|r|} A^M_r f` for every algebra basis element.
pub fn is_sign_rule_map(l: &GradedModule, m: &GradedModule, i: i64, f: &Matrix) -> bool {
    f.shape() == (m.dim(), l.dim())
        && degree_violation(f, l.space(), m.space(), i).is_none()
        && (0..l.algebra.dim()).all(|r| {
            let s = l.field().sign(l.grading().parity(i) && l.algebra.parity(r));
            (f * &l.action[r]) == (&m.action[r] * f).scale(&s)
        })
}

/// The subspace `Hom^i(L, M)` of degree-`i` sign-rule maps, stored inside the
/// space of all `dim M × dim L` matrices (row-major vectorization).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomSpace {
    pub degree: i64,
    rows: usize,
    cols: usize,
    space: Subspace,
}

impl HomSpace {
    pub fn from_subspace(degree: i64, rows: usize, cols: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient(), rows * cols);
        Self { degree, rows, cols, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn to_matrix(&self, v: &[Scalar]) -> Matrix {
        let rows = (0..self.rows).map(|i| v[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        Matrix::from_rows(self.field(), rows).unwrap_or_else(|_| Matrix::zeros(self.field(), self.rows, self.cols))
    }

    /// Element with the given coordinates in the canonical basis.
    pub fn element(&self, coords: &[Scalar]) -> Matrix {
        self.to_matrix(&self.space.combine(coords))
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.space.basis_vectors().iter().map(|v| self.to_matrix(v)).collect()
    }

    pub fn contains(&self, f: &Matrix) -> bool {
        f.shape() == (self.rows, self.cols) && self.space.contains(&f.vectorize())
    }

    pub fn coordinates(&self, f: &Matrix) -> Option<Vec<Scalar>> {
        if f.shape() != (self.rows, self.cols) {
            return None;
        }
        self.space.coordinates(&f.vectorize())
    }
}

/// `Hom^i(L, M)`: all degree-`i` linear maps with `f(r z) = (-1)^{i|r|} r f(z)`.
pub fn hom_graded(l: &GradedModule, m: &GradedModule, i: i64) -> Result<HomSpace, Error> {
    if !l.same_algebra(m) {
        return Err(Error::RingMismatch);
    }
    let f = l.field();
    let grading = l.grading();
    let (rows, cols) = (m.dim(), l.dim());
    let positions: Vec<(usize, usize)> = (0..rows)
        .flat_map(|p| (0..cols).map(move |q| (p, q)))
        .filter(|&(p, q)| m.degree(p) == grading.add(l.degree(q), i))
        .collect();
    let mut index = vec![usize::MAX; rows * cols];
    for (u, &(p, q)) in positions.iter().enumerate() {
        index[p * cols + q] = u;
    }
    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    let alg = l.algebra();
    for r in 0..alg.dim() {
        let s = f.sign(grading.parity(i) && alg.parity(r));
        let al = &l.action[r];
        let am = &m.action[r];
        // (f A^L_r)[p, q] - s (A^M_r f)[p, q] = 0
        for p in 0..rows {
            for q in 0..cols {
                let mut eq = vec![f.zero(); positions.len()];
                let mut nonzero = false;
                for t in 0..cols {
                    let u = index[p * cols + t];
                    if u != usize::MAX && !al[(t, q)].is_zero() {
                        eq[u] += &al[(t, q)];
                        nonzero = true;
                    }
                }
                for t in 0..rows {
                    let u = index[t * cols + q];
                    if u != usize::MAX && !am[(p, t)].is_zero() {
                        eq[u] -= &(&s * &am[(p, t)]);
                        nonzero = true;
                    }
                }
                if nonzero && eq.iter().any(|x| !x.is_zero()) {
                    equations.push(eq);
                }
            }
        }
    }
    let kernel = if equations.is_empty() {
        Subspace::full(f, positions.len())
    } else {
        Matrix::from_rows(f, equations)?.kernel()
    };
    let vectors: Vec<Vec<Scalar>> = kernel
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let mut full = vec![f.zero(); rows * cols];
            for (u, x) in v.into_iter().enumerate() {
                let (p, q) = positions[u];
                full[p * cols + q] = x;
            }
            full
        })
        .collect();
    let space = Subspace::from_vectors(f, rows * cols, &vectors);
    Ok(HomSpace { degree: i, rows, cols, space })
}

/// Decides projectivity: `M` is projective iff its free cover splits.
pub fn is_projective_graded(m: &GradedModule) -> bool {
    if m.dim() == 0 {
        return true;
    }
    let (free, cover, _) = m.free_cover();
    let Ok(hom) = hom_graded(m, &free, 0) else { return false };
    // Find s in Hom^0(M, F) with cover · s = id.
    let f = m.field();
    let columns: Vec<Vec<Scalar>> = hom.basis().iter().map(|b| (&cover * b).vectorize()).collect();
    let target = Matrix::identity(f, m.dim()).vectorize();
    if columns.is_empty() {
        return false;
    }
    let system = Matrix::from_columns(f, target.len(), &columns);
    matches!(system.solve(&target), Ok(Some(_)))
}

/// Injectivity, decided as projectivity of the dual over the Koszul-opposite algebra.
pub fn is_injective_graded(m: &GradedModule) -> bool {
    let opposite = Arc::new(m.algebra().koszul_opposite());
    is_projective_graded(&m.dual(opposite))
}

/// A truncated free resolution: syzygy modules `K_0 = M, K_1, …` together
/// with the free covers `F_j → K_j` and the inclusions `K_{j+1} ⊂ F_j`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub syzygies: Vec<GradedModule>,
    pub covers: Vec<(GradedModule, Matrix)>,
    pub inclusions: Vec<Matrix>,
}

pub fn resolve(m: &GradedModule, length: usize) -> Result<Resolution, Error> {
    let mut syzygies = vec![m.clone()];
    let mut covers = Vec::new();
    let mut inclusions = Vec::new();
    for _ in 0..length {
        let k = syzygies.last().expect("nonempty");
        let (free, cover, _) = k.free_cover();
        let (next, inclusion) = free.kernel_of(&cover)?;
        covers.push((free, cover));
        inclusions.push(inclusion);
        syzygies.push(next);
    }
    Ok(Resolution { syzygies, covers, inclusions })
}

/// Restrictions to `K ⊂ F` of all degree-0 maps `F → Y` out of the free
/// module `F`; a map from `F` is fixed by the images of its generators.
pub fn restrictions_from_free(free: &GradedModule, inclusion: &Matrix, y: &GradedModule) -> Subspace {
    let f = y.field();
    let a = free.algebra().dim();
    let generators = free.dim().checked_div(a).unwrap_or(0);
    let mut vectors = Vec::new();
    for t in 0..generators {
        let g = free.degree(t * a);
        for yb in y.space().indices_in_degree(g) {
            let mut map = Matrix::zeros(f, y.dim(), free.dim());
            for i in 0..a {
                let col = y.act(i).column(yb);
                for (row, x) in col.into_iter().enumerate() {
                    map[(row, t * a + i)] = x;
                }
            }
            vectors.push((&map * inclusion).vectorize());
        }
    }
    Subspace::from_vectors(f, y.dim() * inclusion.cols(), &vectors)
}

/// `dim Ext^n(X, Y)` in the category of graded modules (degree-0 maps).
pub fn ext_graded(x: &GradedModule, y: &GradedModule, n: usize) -> Result<usize, Error> {
    if !x.same_algebra(y) {
        return Err(Error::RingMismatch);
    }
    if n == 0 {
        return Ok(hom_graded(x, y, 0)?.dim());
    }
    let res = resolve(x, n)?;
    let k = &res.syzygies[n];
    let hom = hom_graded(k, y, 0)?;
    let (free, _) = &res.covers[n - 1];
    let restricted = restrictions_from_free(free, &res.inclusions[n - 1], y);
    Ok(hom.dim() - restricted.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf2_algebra(f: Field) -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::truncated_polynomial(f, GradingGroup::Z2, "u", 0, 2))
    }

    fn simple(alg: &Arc<GradedAlgebra>, degree: i64) -> GradedModule {
        let f = alg.field();
        let space = GradedSpace::new(alg.grading(), vec![degree], vec!["k".into()]);
        let action = (0..alg.dim())
            .map(|r| if r == 0 { Matrix::identity(f, 1) } else { Matrix::zeros(f, 1, 1) })
            .collect();
        GradedModule::new(alg.clone(), space, action).unwrap()
    }

    #[test]
    fn hom_of_regular_module_over_mf2_is_two_dimensional() {
        let alg = mf2_algebra(Field::Rational);
        let r = GradedModule::regular(alg);
        let hom = hom_graded(&r, &r, 0).unwrap();
        assert_eq!(hom.dim(), 2);
        for b in hom.basis() {
            assert!(is_sign_rule_map(&r, &r, 0, &b));
        }
    }

    #[test]
    fn hom_into_zero_and_over_field() {
        let f = Field::Rational;
        let k = Arc::new(GradedAlgebra::ground(f, GradingGroup::integers()));
        let free = GradedModule::free(k.clone(), &[(0, "g".into())]);
        assert_eq!(hom_graded(&free, &free, 0).unwrap().dim(), 1);
        assert_eq!(hom_graded(&free, &GradedModule::zero(k), 0).unwrap().dim(), 0);
    }

    #[test]
    fn projectivity_and_injectivity_over_dual_numbers() {
        let alg = mf2_algebra(Field::Prime(2));
        let free = GradedModule::free(alg.clone(), &[(0, "g".into()), (1, "h".into())]);
        let k = simple(&alg, 0);
        assert!(free.validate().is_valid());
        assert!(k.validate().is_valid());
        assert!(is_projective_graded(&free));
        assert!(!is_projective_graded(&k));
        assert!(is_injective_graded(&free));
        assert!(!is_injective_graded(&k));
        assert_eq!(ext_graded(&k, &k, 1).unwrap(), 1);
        assert_eq!(ext_graded(&k, &k, 2).unwrap(), 1);
        assert_eq!(ext_graded(&free, &k, 1).unwrap(), 0);
        assert_eq!(ext_graded(&k, &k, 0).unwrap(), hom_graded(&k, &k, 0).unwrap().dim());
    }

    #[test]
    fn exterior_algebra_ext_respects_internal_degree() {
        // k[e]/e^2, |e| = 1: Ext^1(k, k[j]) is nonzero only for the shift matching |e|.
        let f = Field::Rational;
        let alg = Arc::new(GradedAlgebra::truncated_polynomial(f, GradingGroup::integers(), "e", 1, 2));
        let k = simple(&alg, 0);
        let dims: Vec<usize> = (-2..=2).map(|j| ext_graded(&k, &simple(&alg, j), 1).unwrap()).collect();
        assert_eq!(dims.iter().sum::<usize>(), 1);
        assert_eq!(dims[3], 1);
    }

    #[test]
    fn dual_is_a_module_over_the_opposite() {
        let f = Field::Rational;
        let alg = Arc::new(GradedAlgebra::truncated_polynomial(f, GradingGroup::integers(), "e", 1, 2));
        let op = Arc::new(alg.koszul_opposite());
        let free = GradedModule::free(alg.clone(), &[(0, "g".into()), (2, "h".into())]);
        let dual = free.dual(op);
        assert!(dual.validate().is_valid());
        assert!(is_injective_graded(&free));
        assert!(is_projective_graded(&free.shift(3)));
    }

    #[test]
    fn shifted_module_validates() {
        let f = Field::Rational;
        let alg = Arc::new(GradedAlgebra::truncated_polynomial(f, GradingGroup::integers(), "e", 1, 2));
        let free = GradedModule::free(alg, &[(0, "g".into())]);
        for i in -2..=2 {
            assert!(free.shift(i).validate().is_valid());
        }
        assert_eq!(free.shift(1).shift(1), free.shift(2));
    }
}
