//! Independent oracles shared by the integration tests. They rebuild every
//! condition from raw structure constants and never call the library's
//! Hom, Ext or cohomology routines.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use curvedg::cdg::CdgModule;
use curvedg::graded::GradedModule;
use curvedg::linalg::{Field, Matrix, Scalar};

fn unit_map(f: Field, rows: usize, cols: usize, (r, c): (usize, usize)) -> Matrix {
    let mut m = Matrix::zeros(f, rows, cols);
    m[(r, c)] = f.one();
    m
}

fn flatten(c: &[Matrix]) -> Vec<Scalar> {
    c.iter().flat_map(Matrix::vectorize).collect()
}

fn rank_of(f: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_columns(f, len, vectors).rank()
    }
}

fn nullity(f: Field, len: usize, columns: &[Vec<Scalar>]) -> usize {
    columns.len() - rank_of(f, len, columns)
}

/// Entries `(row, col)` of a map `X → Y` allowed for a homogeneous map of degree `deg`.
pub fn slots(x: &GradedModule, y: &GradedModule, deg: i64) -> Vec<(usize, usize)> {
    let g = x.grading();
    let mut out = Vec::new();
    for col in 0..x.dim() {
        for row in 0..y.dim() {
            if g.normalize(x.degree(col) + deg) == g.normalize(y.degree(row)) {
                out.push((row, col));
            }
        }
    }
    out
}

/// Defect of the Koszul sign rule `f A^X_r = (-1)^{n|r|} A^Y_r f`.
fn sign_rule_defect(x: &GradedModule, y: &GradedModule, n: i64, f: &Matrix) -> Vec<Scalar> {
    let alg = x.algebra();
    let field = x.field();
    let mut out = Vec::new();
    for r in 0..alg.dim() {
        let s = field.sign(x.grading().parity(n) && alg.parity(r));
        out.extend((&(f * x.act(r)) - &(y.act(r) * f).scale(&s)).vectorize());
    }
    out
}

/// `D(f) = d_Y f - (-1)^n f d_X`.
pub fn hom_d(x: &CdgModule, y: &CdgModule, f: &Matrix, n: i64) -> Matrix {
    let s = x.field().sign(x.grading().parity(n));
    &(y.d() * f) - &(f * x.d()).scale(&s)
}

/// A basis of the degree-`n` sign-rule maps `X → Y`.
pub fn sign_rule_basis(x: &GradedModule, y: &GradedModule, n: i64) -> Vec<Matrix> {
    let f = x.field();
    let free = slots(x, y, n);
    let cols: Vec<Vec<Scalar>> =
        free.iter().map(|&s| sign_rule_defect(x, y, n, &unit_map(f, y.dim(), x.dim(), s))).collect();
    if cols.is_empty() {
        return Vec::new();
    }
    let kernel = Matrix::from_columns(f, cols[0].len(), &cols).kernel().basis_vectors();
    kernel
        .iter()
        .map(|v| {
            let mut m = Matrix::zeros(f, y.dim(), x.dim());
            for (j, &(r, c)) in free.iter().enumerate() {
                m[(r, c)] = v[j].clone();
            }
            m
        })
        .collect()
}

/// `dim H^n Hom(X, Y)` from sign-rule bases and the explicit differential.
pub fn hom_cohomology_dim(x: &CdgModule, y: &CdgModule, n: i64) -> usize {
    let f = x.field();
    let len = x.dim() * y.dim();
    let cur = sign_rule_basis(x.module(), y.module(), n);
    let prev = sign_rule_basis(x.module(), y.module(), n - 1);
    let images: Vec<Vec<Scalar>> = cur.iter().map(|b| hom_d(x, y, b, n).vectorize()).collect();
    let z = if cur.is_empty() { 0 } else { nullity(f, len, &images) };
    let b: Vec<Vec<Scalar>> = prev.iter().map(|b| hom_d(x, y, b, n - 1).vectorize()).collect();
    z - rank_of(f, len, &b)
}

/// Per-degree cohomology of a complex of vector spaces (the ring `K`).
pub fn classical_cohomology(x: &CdgModule) -> BTreeMap<i64, usize> {
    let space = x.space();
    let all: Vec<usize> = (0..x.dim()).collect();
    space
        .dims_by_degree()
        .into_iter()
        .map(|(g, n)| {
            let out_rank = x.d().select(&all, &space.indices_in_degree(g)).rank();
            let in_rank = x.d().select(&space.indices_in_degree(g), &space.indices_in_degree(g - 1)).rank();
            (g, n - out_rank - in_rank)
        })
        .collect()
}

/// `dim Hom_{K(k)}(X, Y[n]) = Σ_p h^p(X) h^{p+n}(Y)`.
pub fn classical_hom_dim(x: &CdgModule, y: &CdgModule, n: i64) -> usize {
    let hx = classical_cohomology(x);
    let hy = classical_cohomology(y);
    hx.iter().map(|(p, a)| a * hy.get(&(p + n)).copied().unwrap_or(0)).sum()
}

/// Unknowns of an extension `E = Y ⊕ X`: one map `c_k: X → Y` of degree
/// `|e_k|` per basis element of the algebra, acting as `[[A^Y_k, c_k], [0, A^X_k]]`.
struct ExtensionSystem {
    slots: Vec<Vec<(usize, usize)>>,
    offsets: Vec<usize>,
    unknowns: usize,
}

impl ExtensionSystem {
    fn new(x: &GradedModule, y: &GradedModule) -> Self {
        let alg = x.algebra();
        let slots: Vec<_> = (0..alg.dim()).map(|k| slots(x, y, alg.degree(k))).collect();
        let mut offsets = Vec::new();
        let mut total = 0;
        for s in &slots {
            offsets.push(total);
            total += s.len();
        }
        Self { slots, offsets, unknowns: total }
    }

    fn maps(&self, x: &GradedModule, y: &GradedModule, values: &[Scalar]) -> Vec<Matrix> {
        let f = x.field();
        self.slots
            .iter()
            .zip(&self.offsets)
            .map(|(s, &o)| {
                let mut m = Matrix::zeros(f, y.dim(), x.dim());
                for (t, &(r, c)) in s.iter().enumerate() {
                    m[(r, c)] = values[o + t].clone();
                }
                m
            })
            .collect()
    }
}

/// Failure of the block-triangular action to be unital and associative.
fn cocycle_defect(x: &GradedModule, y: &GradedModule, c: &[Matrix]) -> Vec<Scalar> {
    let alg = x.algebra();
    let f = x.field();
    let mut out = Vec::new();
    let mut unit = Matrix::zeros(f, y.dim(), x.dim());
    for (k, u) in alg.unit().iter().enumerate() {
        unit = &unit + &c[k].scale(u);
    }
    out.extend(unit.vectorize());
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = &(y.act(i) * &c[j]) + &(&c[i] * x.act(j));
            let mut rhs = Matrix::zeros(f, y.dim(), x.dim());
            for (k, coeff) in alg.product_basis(i, j).iter().enumerate() {
                rhs = &rhs + &c[k].scale(coeff);
            }
            out.extend((&lhs - &rhs).vectorize());
        }
    }
    out
}

/// The cocycle `c_k = A^Y_k φ - φ A^X_k` of a change of splitting `φ`.
fn inner(x: &GradedModule, y: &GradedModule, phi: &Matrix) -> Vec<Matrix> {
    (0..x.algebra().dim()).map(|k| &(y.act(k) * phi) - &(phi * x.act(k))).collect()
}

/// `dim Ext¹(X, Y)` of graded modules: cocycles modulo inner cocycles.
pub fn ext1_by_extensions(x: &GradedModule, y: &GradedModule) -> usize {
    forgetful_by_extensions(x, y, None)
}

/// `dim ker(Ext¹_A(X, Y) → Ext¹_B(X, Y))`, `B` spanned by the first
/// `base_dim` basis elements of `A`: cocycles whose restriction to `B` is
/// inner over `B`, modulo inner cocycles.
pub fn forgetful_kernel_by_extensions(x: &GradedModule, y: &GradedModule, base_dim: usize) -> usize {
    forgetful_by_extensions(x, y, Some(base_dim))
}

fn forgetful_by_extensions(x: &GradedModule, y: &GradedModule, base: Option<usize>) -> usize {
    let f = x.field();
    let sys = ExtensionSystem::new(x, y);
    let n = sys.unknowns;
    let full_len = x.algebra().dim() * x.dim() * y.dim();
    let unit_vector = |u: usize| -> Vec<Scalar> { (0..n).map(|t| if t == u { f.one() } else { f.zero() }).collect() };
    let defects: Vec<Vec<Scalar>> = (0..n).map(|u| cocycle_defect(x, y, &sys.maps(x, y, &unit_vector(u)))).collect();
    let cocycles: Vec<Vec<Scalar>> = if n == 0 {
        Vec::new()
    } else {
        Matrix::from_columns(f, defects[0].len(), &defects).kernel().basis_vectors()
    };
    let phis: Vec<Matrix> = slots(x, y, 0).into_iter().map(|s| unit_map(f, y.dim(), x.dim(), s)).collect();
    let inner_full: Vec<Vec<Scalar>> = phis.iter().map(|p| flatten(&inner(x, y, p))).collect();
    let b = rank_of(f, full_len, &inner_full);
    let Some(base_dim) = base else { return cocycles.len() - b };
    let base_len = base_dim * x.dim() * y.dim();
    let cocycle_maps: Vec<Vec<Matrix>> = cocycles.iter().map(|z| sys.maps(x, y, z)).collect();
    let mut cols: Vec<Vec<Scalar>> = cocycle_maps.iter().map(|c| flatten(&c[..base_dim])).collect();
    cols.extend(phis.iter().map(|p| flatten(&inner(x, y, p)[..base_dim]).iter().map(|s| -s).collect()));
    if cols.is_empty() {
        return 0;
    }
    let solutions = Matrix::from_columns(f, base_len, &cols).kernel().basis_vectors();
    let split: Vec<Vec<Scalar>> = solutions
        .iter()
        .map(|s| {
            let mut total = vec![f.zero(); full_len];
            for (k, c) in cocycle_maps.iter().enumerate() {
                for (t, v) in flatten(c).iter().enumerate() {
                    total[t] = &total[t] + &(&s[k] * v);
                }
            }
            total
        })
        .collect();
    rank_of(f, full_len, &split) - b
}

fn f2_bits(f: Field, mask: u64, n: usize) -> Vec<Scalar> {
    (0..n).map(|b| f.from_i64(((mask >> b) & 1) as i64)).collect()
}

fn count_ratio(numerator: usize, denominator: usize) -> usize {
    assert!(denominator > 0 && numerator.is_multiple_of(denominator));
    let ratio = numerator / denominator;
    assert!(ratio.is_power_of_two());
    ratio.trailing_zeros() as usize
}

/// Over `𝔽₂`, by enumerating every extension datum and every change of
/// splitting: `(dim Ext¹_A(X, Y), dim ker(Ext¹_A → Ext¹_B))` with `B` the
/// span of the first `base_dim` basis elements. `None` above `max_bits` unknowns.
pub fn ext1_brute_force_f2(
    x: &GradedModule,
    y: &GradedModule,
    base_dim: usize,
    max_bits: usize,
) -> Option<(usize, usize)> {
    let f = x.field();
    assert_eq!(f, Field::Prime(2));
    let sys = ExtensionSystem::new(x, y);
    let phis = slots(x, y, 0);
    if sys.unknowns > max_bits || phis.len() > max_bits {
        return None;
    }
    let key = |c: &[Matrix]| -> Vec<bool> { flatten(c).iter().map(|s| !s.is_zero()).collect() };
    let mut inner_full = BTreeSet::new();
    let mut inner_base = BTreeSet::new();
    for mask in 0..(1u64 << phis.len()) {
        let mut phi = Matrix::zeros(f, y.dim(), x.dim());
        for (b, &(r, c)) in phis.iter().enumerate() {
            if (mask >> b) & 1 == 1 {
                phi[(r, c)] = f.one();
            }
        }
        let c = inner(x, y, &phi);
        inner_base.insert(key(&c[..base_dim]));
        inner_full.insert(key(&c));
    }
    let (mut cocycles, mut split) = (0usize, 0usize);
    for mask in 0..(1u64 << sys.unknowns) {
        let c = sys.maps(x, y, &f2_bits(f, mask, sys.unknowns));
        if cocycle_defect(x, y, &c).iter().all(Scalar::is_zero) {
            cocycles += 1;
            if inner_base.contains(&key(&c[..base_dim])) {
                split += 1;
            }
        }
    }
    Some((count_ratio(cocycles, inner_full.len()), count_ratio(split, inner_full.len())))
}

/// Over `𝔽₂`, `dim H^n Hom(X, Y)` by enumerating all degree-`n` and degree-`n-1` maps.
pub fn hom_cohomology_brute_force_f2(x: &CdgModule, y: &CdgModule, n: i64, max_bits: usize) -> Option<usize> {
    let f = x.field();
    assert_eq!(f, Field::Prime(2));
    let enumerate = |deg: i64| -> Option<Vec<Matrix>> {
        let s = slots(x.module(), y.module(), deg);
        if s.len() > max_bits {
            return None;
        }
        let mut out = Vec::new();
        for mask in 0..(1u64 << s.len()) {
            let mut m = Matrix::zeros(f, y.dim(), x.dim());
            for (b, &(r, c)) in s.iter().enumerate() {
                if (mask >> b) & 1 == 1 {
                    m[(r, c)] = f.one();
                }
            }
            if sign_rule_defect(x.module(), y.module(), deg, &m).iter().all(Scalar::is_zero) {
                out.push(m);
            }
        }
        Some(out)
    };
    let cur = enumerate(n)?;
    let prev = enumerate(n - 1)?;
    let closed = cur.iter().filter(|m| hom_d(x, y, m, n).is_zero()).count();
    let boundaries: BTreeSet<Vec<bool>> = prev
        .iter()
        .map(|m| hom_d(x, y, m, n - 1).vectorize().iter().map(|s| !s.is_zero()).collect())
        .collect();
    Some(count_ratio(closed, boundaries.len()))
}
