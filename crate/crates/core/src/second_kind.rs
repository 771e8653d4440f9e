//! Contractibility, graded-projective and graded-injective objects, projective
//! and injective objects of `Z⁰`, the Ext¹/Hom comparison, certificates of
//! absolute acyclicity and Hom-obstructions to (co/contra)acyclicity.

use std::fmt;
use std::sync::Arc;

use crate::cdg::{contracting_homotopy, h_n, hom_differential, CdgModule, CdgRing, HomElement};
use crate::constructions::{totalize, totalize_morphism, verify_short_exact, FiniteComplex};
use crate::delta::{build_delta_ring, g_minus, g_plus, restrict_to_base, to_delta_module, DeltaRing};
use crate::error::Error;
use crate::graded::{
    ext_graded, hom_graded, is_injective_graded, is_sign_rule_map, is_projective_graded, restrictions_from_free, GradedModule,
};
use crate::linalg::{Matrix, Subspace};

/// A contracting homotopy `s` with `d(s) = id`, if `M` is zero in `H⁰`.
pub fn is_contractible(m: &CdgModule) -> Result<Option<Matrix>, Error> {
    contracting_homotopy(m)
}

pub fn is_graded_projective(m: &CdgModule) -> bool {
    is_projective_graded(m.module())
}

pub fn is_graded_injective(m: &CdgModule) -> bool {
    is_injective_graded(m.module())
}

pub fn is_projective_z0(m: &CdgModule) -> Result<bool, Error> {
    Ok(is_graded_projective(m) && is_contractible(m)?.is_some())
}

pub fn is_injective_z0(m: &CdgModule) -> Result<bool, Error> {
    Ok(is_graded_injective(m) && is_contractible(m)?.is_some())
}

/// `dim Ext¹` in `Z⁰`, computed as graded Ext¹ over `R[δ]`.
pub fn ext1_z0(x: &CdgModule, y: &CdgModule) -> Result<usize, Error> {
    if !x.same_ring(y) {
        return Err(Error::RingMismatch);
    }
    let delta = build_delta_ring(x.ring())?;
    ext1_over(&delta, x, y)
}

fn ext1_over(delta: &DeltaRing, x: &CdgModule, y: &CdgModule) -> Result<usize, Error> {
    ext_graded(&to_delta_module(delta, x)?, &to_delta_module(delta, y)?, 1)
}

/// Dimensions entering the comparison of `Ext¹_{Z⁰}(X, Y)` with
/// `Hom_{H⁰}(X, Y[1])` through the forgetful map to graded `Ext¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub ext1_z0: usize,
    pub ext1_graded: usize,
    pub forgetful_kernel: usize,
    pub homotopy_hom: usize,
    pub x_graded_projective: bool,
    pub y_graded_injective: bool,
}

impl LemmaReport {
    pub fn kernel_matches(&self) -> bool {
        self.forgetful_kernel == self.homotopy_hom
    }

    pub fn full_equality_expected(&self) -> bool {
        self.x_graded_projective || self.y_graded_injective
    }

    pub fn passed(&self) -> bool {
        self.kernel_matches() && (!self.full_equality_expected() || self.ext1_z0 == self.homotopy_hom)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ext1 Z0: {}", self.ext1_z0)?;
        writeln!(f, "ext1 graded: {}", self.ext1_graded)?;
        writeln!(f, "kernel of forgetful map: {}", self.forgetful_kernel)?;
        writeln!(f, "Hom H0(X, Y[1]): {}", self.homotopy_hom)?;
        writeln!(f, "X graded-projective: {}", self.x_graded_projective)?;
        writeln!(f, "Y graded-injective: {}", self.y_graded_injective)?;
        write!(f, "verdict: {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Uses one `R[δ]`-free presentation `0 → K → P → X → 0`; restricted to `R`
/// it is a projective presentation of `X#`, so the forgetful map on Ext¹ is
/// the identity on representatives `K → Y`.
pub fn lemma_ext_hom_check(x: &CdgModule, y: &CdgModule) -> Result<LemmaReport, Error> {
    if !x.same_ring(y) {
        return Err(Error::RingMismatch);
    }
    let delta = build_delta_ring(x.ring())?;
    let xd = to_delta_module(&delta, x)?;
    let yd = to_delta_module(&delta, y)?;
    let (free, cover, _) = xd.free_cover();
    let (syzygy, inclusion) = free.kernel_of(&cover)?;
    let f = x.field();
    let ambient = y.dim() * syzygy.dim();

    let hom_delta = hom_graded(&syzygy, &yd, 0)?;
    let res_delta = restrictions_from_free(&free, &inclusion, &yd);
    let free_base = restrict_to_base(&delta, &free)?;
    let vectors: Vec<_> = hom_graded(&free_base, y.module(), 0)?
        .basis()
        .iter()
        .map(|g| (g * &inclusion).vectorize())
        .collect();
    let res_base = Subspace::from_vectors(f, ambient, &vectors);

    let ext1_z0 = hom_delta.dim() - res_delta.dim();
    let forgetful_kernel = hom_delta.subspace().intersection(&res_base).dim() - res_delta.dim();
    Ok(LemmaReport {
        ext1_z0,
        ext1_graded: ext_graded(x.module(), y.module(), 1)?,
        forgetful_kernel,
        homotopy_hom: h_n(x, y, 1)?.dim,
        x_graded_projective: is_graded_projective(x),
        y_graded_injective: is_graded_injective(y),
    })
}

/// A contractible module with its homotopy witness `d(s) = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractibleLayer {
    pub module: CdgModule,
    pub witness: Matrix,
}

/// `0 → stage_k → stage → layer → 0` in `Z⁰`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionStep {
    pub stage: CdgModule,
    pub layer: ContractibleLayer,
    pub inclusion: HomElement,
    pub projection: HomElement,
}

/// A finite chain of extensions by contractible modules starting at zero,
/// with an optional retraction of the target off the last stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub target: CdgModule,
    pub steps: Vec<ExtensionStep>,
    pub retract: Option<(HomElement, HomElement)>,
}

/// Where verification stopped: `layer` counts steps from 1; the retract is
/// reported as layer `steps + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFailure {
    pub layer: usize,
    pub reason: String,
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "layer {}: {}", self.layer, self.reason)
    }
}

impl ExtensionCertificate {
    /// The one-step certificate of a contractible module.
    pub fn contractible(m: &CdgModule) -> Result<Option<Self>, Error> {
        let Some(witness) = is_contractible(m)? else { return Ok(None) };
        let zero = CdgModule::zero(m.ring().clone());
        let step = ExtensionStep {
            stage: m.clone(),
            layer: ContractibleLayer { module: m.clone(), witness },
            inclusion: HomElement::zero(&zero, m, 0),
            projection: HomElement::identity(m),
        };
        Ok(Some(Self { target: m.clone(), steps: vec![step], retract: None }))
    }

    pub fn verify(&self) -> Result<(), CertificateFailure> {
        let fail = |layer: usize, reason: String| Err(CertificateFailure { layer, reason });
        let mut previous = CdgModule::zero(self.target.ring().clone());
        for (k, step) in self.steps.iter().enumerate() {
            let layer = k + 1;
            let c = &step.layer.module;
            if !c.same_ring(&self.target) {
                return fail(layer, "layer lives over a different ring".into());
            }
            if step.layer.witness.shape() != (c.dim(), c.dim())
                || !is_sign_rule_map(c.module(), c.module(), c.grading().normalize(-1), &step.layer.witness)
                || !hom_differential(c, c, &step.layer.witness, -1).is_identity()
            {
                return fail(layer, "homotopy witness does not satisfy d(s) = id".into());
            }
            if step.inclusion.source != previous {
                return fail(layer, "inclusion does not start at the previous stage".into());
            }
            if step.inclusion.target != step.stage || step.projection.source != step.stage {
                return fail(layer, "maps do not meet at the declared stage".into());
            }
            if step.projection.target != *c {
                return fail(layer, "projection does not end at the contractible layer".into());
            }
            if let Err(e) = verify_short_exact(&step.inclusion, &step.projection) {
                return fail(layer, format!("sequence is not exact: {e}"));
            }
            previous = step.stage.clone();
        }
        let last = self.steps.len() + 1;
        match &self.retract {
            None if previous == self.target => Ok(()),
            None => fail(last, "final stage differs from the target and no retraction is given".into()),
            Some((i, p)) => {
                if i.source != self.target || i.target != previous || p.source != previous || p.target != self.target {
                    return fail(last, "retraction maps do not connect target and final stage".into());
                }
                if i.degree != 0 || p.degree != 0 || !i.is_closed() || !p.is_closed() {
                    return fail(last, "retraction maps must be closed of degree 0".into());
                }
                if !(&p.map * &i.map).is_identity() {
                    return fail(last, "p i != id".into());
                }
                Ok(())
            }
        }
    }
}

/// `Tot(K → L → M)` of a short exact sequence in `Z⁰` (positions -2, -1, 0)
/// and its two-step certificate: the extension of `Tot(M → M)` by `Tot(K → K)`.
pub fn canonical_ses_certificate(i: &HomElement, p: &HomElement) -> Result<ExtensionCertificate, Error> {
    verify_short_exact(i, p).map_err(Error::InvalidComplex)?;
    let (k, l, m) = (&i.source, &i.target, &p.target);
    let complex = FiniteComplex::new(-2, vec![k.clone(), l.clone(), m.clone()], vec![i.clone(), p.clone()])?;
    let target = totalize(&complex)?;
    let kk = FiniteComplex::new(-2, vec![k.clone(), k.clone()], vec![HomElement::identity(k)])?;
    let mm = FiniteComplex::new(-1, vec![m.clone(), m.clone()], vec![HomElement::identity(m)])?;
    let stage1 = totalize(&kk)?;
    let layer2 = totalize(&mm)?;
    let witness = |c: &CdgModule| -> Result<ContractibleLayer, Error> {
        let s = is_contractible(c)?.ok_or_else(|| Error::Internal("Tot of an identity is not contractible".into()))?;
        Ok(ContractibleLayer { module: c.clone(), witness: s })
    };
    let zero = CdgModule::zero(k.ring().clone());
    let first = ExtensionStep {
        stage: stage1.clone(),
        layer: witness(&stage1)?,
        inclusion: HomElement::zero(&zero, &stage1, 0),
        projection: HomElement::identity(&stage1),
    };
    let inclusion = totalize_morphism(&kk, &complex, &[(-2, k.identity()), (-1, i.map.clone())])?;
    let projection = totalize_morphism(&complex, &mm, &[(-1, p.map.clone()), (0, m.identity())])?;
    let second = ExtensionStep { stage: target.clone(), layer: witness(&layer2)?, inclusion, projection };
    Ok(ExtensionCertificate { target, steps: vec![first, second], retract: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionKind {
    /// `Hom_{H⁰}(X, J)` against graded-injective `J`.
    Coacyclic,
    /// `Hom_{H⁰}(Q, X)` against graded-projective `Q`.
    Contraacyclic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub kind: ObstructionKind,
    pub entries: Vec<(String, usize)>,
}

impl ObstructionReport {
    pub fn refuted(&self) -> bool {
        self.entries.iter().any(|&(_, d)| d > 0)
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, d) in &self.entries {
            writeln!(f, "{name}: {d}")?;
        }
        write!(f, "verdict: {}", if self.refuted() { "refuted" } else { "not-refuted" })
    }
}

/// A named test object for an obstruction run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestObject {
    pub name: String,
    pub module: CdgModule,
}

pub fn coacyclic_obstruction(x: &CdgModule, tests: &[TestObject]) -> Result<ObstructionReport, Error> {
    obstruction(x, tests, ObstructionKind::Coacyclic)
}

pub fn contraacyclic_obstruction(x: &CdgModule, tests: &[TestObject]) -> Result<ObstructionReport, Error> {
    obstruction(x, tests, ObstructionKind::Contraacyclic)
}

fn obstruction(x: &CdgModule, tests: &[TestObject], kind: ObstructionKind) -> Result<ObstructionReport, Error> {
    let mut entries = Vec::with_capacity(tests.len());
    for t in tests {
        if !t.module.same_ring(x) {
            return Err(Error::RingMismatch);
        }
        let dim = match kind {
            ObstructionKind::Coacyclic => {
                if !is_graded_injective(&t.module) {
                    return Err(Error::NotAMorphism(format!("test object {} is not graded-injective", t.name)));
                }
                h_n(x, &t.module, 0)?.dim
            }
            ObstructionKind::Contraacyclic => {
                if !is_graded_projective(&t.module) {
                    return Err(Error::NotAMorphism(format!("test object {} is not graded-projective", t.name)));
                }
                h_n(&t.module, x, 0)?.dim
            }
        };
        entries.push((t.name.clone(), dim));
    }
    Ok(ObstructionReport { kind, entries })
}

/// The graded dual `Hom_k(R, k)` of the regular module, as a left module.
pub fn dual_regular(ring: &Arc<CdgRing>) -> GradedModule {
    let opposite = Arc::new(ring.algebra().koszul_opposite());
    GradedModule::regular(opposite).dual(ring.algebra().clone())
}

fn shifts_against(x: &CdgModule, t: &GradedModule) -> Vec<i64> {
    let g = x.grading();
    if g.is_z2() {
        return vec![0, 1];
    }
    let (Some((xmin, xmax)), Some((tmin, tmax))) = (x.space().support(), t.space().support()) else {
        return Vec::new();
    };
    // t[j] has degrees t - j; keep shifts whose support meets [xmin - 1, xmax + 1].
    ((tmin - xmax - 1)..=(tmax - xmin + 1)).collect()
}

fn shifted_tests(
    x: &CdgModule,
    base: &GradedModule,
    name: &str,
    make_cofree: impl Fn(&GradedModule) -> Result<CdgModule, Error>,
    cofree_name: &str,
) -> Vec<TestObject> {
    let ring = x.ring();
    let mut out = Vec::new();
    for j in shifts_against(x, base) {
        let shifted = base.shift(j);
        if ring.grading().check_window(shifted.space().support()).is_err() {
            continue;
        }
        let zero_d = Matrix::zeros(x.field(), shifted.dim(), shifted.dim());
        if let Ok(m) = CdgModule::new(ring.clone(), shifted.clone(), zero_d) {
            out.push(TestObject { name: format!("{name}[{j}]"), module: m });
        }
        if let Ok(m) = make_cofree(&shifted) {
            out.push(TestObject { name: format!("{cofree_name}({name}[{j}])"), module: m });
        }
    }
    out
}

/// Graded-injective test objects: the dual of the regular module with zero
/// differential when that is a CDG-module, and its cofree `G⁻`, over all
/// shifts that can meet `X`.
pub fn default_injective_tests(x: &CdgModule) -> Vec<TestObject> {
    let ring = x.ring().clone();
    let base = dual_regular(&ring);
    shifted_tests(x, &base, "Rdual", |m| g_minus(&ring, m), "G-")
}

/// Graded-projective test objects: the regular module with zero differential
/// when that is a CDG-module, and its free `G⁺`, over all shifts that can meet `X`.
pub fn default_projective_tests(x: &CdgModule) -> Vec<TestObject> {
    let ring = x.ring().clone();
    let base = GradedModule::regular(ring.algebra().clone());
    shifted_tests(x, &base, "R", |m| g_plus(&ring, m), "G+")
}
