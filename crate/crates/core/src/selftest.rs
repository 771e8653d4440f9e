//! The deterministic invariant suite behind the `selftest` command, and the
//! catalogue of single-constant mutations of registry data.

use std::fmt::Write as _;

use crate::bec::{check_adjunction_instance, becbec_check, phi, phi_tilde_check, psi_phi_iso};
use crate::cdg::{contracting_homotopy, hom_degree_range, validate_module, validate_ring, CdgModule, HomComplex};
use crate::constructions::{cone, verify_short_exact, xi};
use crate::delta::{
    build_delta_ring, from_delta_module, g_minus_adjunction_dims, g_plus_adjunction_dims, to_delta_module,
    upsilon, upsilon_comparison,
};
use crate::error::Error;
use crate::graded::{GradedAlgebra, GradedModule, DEFAULT_WINDOW_CAP};
use crate::linalg::{Field, Matrix};
use crate::random::Sampler;
use crate::registry::{Registry, RingEntry, RingKind};
use crate::second_kind::{
    canonical_ses_certificate, coacyclic_obstruction, contraacyclic_obstruction, default_injective_tests,
    default_projective_tests, lemma_ext_hom_check,
};
use crate::validation::{Axiom, ValidationReport};

/// Which structure constant a mutation perturbs (by adding 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MutationSite {
    /// Coefficient of `e_k` in `e_i e_j`.
    Product { i: usize, j: usize, k: usize },
    Unit { k: usize },
    /// Coefficient of `e_k` in `d(e_j)`.
    RingDifferential { j: usize, k: usize },
    Curvature { k: usize },
    /// Entry `(row, col)` of the action of `e_r` on a named registry module.
    Action { module: &'static str, r: usize, row: usize, col: usize },
    ModuleDifferential { module: &'static str, row: usize, col: usize },
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub ring: RingKind,
    pub site: MutationSite,
    /// The axiom the perturbation is designed to break.
    pub expected: Axiom,
    pub report: ValidationReport,
}

impl Mutation {
    pub fn description(&self) -> String {
        format!("{} {:?}", self.ring, self.site)
    }

    pub fn rejected_as_expected(&self) -> bool {
        self.report.violated_axioms().contains(&self.expected)
    }
}

fn catalogue() -> Vec<(RingKind, MutationSite, Axiom)> {
    use MutationSite::*;
    use RingKind::*;
    vec![
        (K, Curvature { k: 0 }, Axiom::CurvatureDegree),
        (K, RingDifferential { j: 0, k: 0 }, Axiom::DifferentialDegree),
        (K, Unit { k: 0 }, Axiom::LeftUnit),
        (Dual, Product { i: 1, j: 1, k: 0 }, Axiom::MultiplicationDegree),
        (Dual, RingDifferential { j: 1, k: 0 }, Axiom::DifferentialDegree),
        (Dual, Curvature { k: 1 }, Axiom::CurvatureDegree),
        (Dual, Product { i: 1, j: 0, k: 1 }, Axiom::RightUnit),
        (Dual, Product { i: 0, j: 1, k: 1 }, Axiom::LeftUnit),
        (Mf2, Product { i: 1, j: 0, k: 1 }, Axiom::RightUnit),
        (Mf2, Product { i: 0, j: 1, k: 1 }, Axiom::LeftUnit),
        (Mf2, RingDifferential { j: 1, k: 0 }, Axiom::DifferentialDegree),
        (K, Action { module: "k", r: 0, row: 0, col: 0 }, Axiom::ActionUnit),
        (K, ModuleDifferential { module: "G+(k)", row: 0, col: 1 }, Axiom::DifferentialDegree),
        (K, Action { module: "k[1]", r: 0, row: 0, col: 0 }, Axiom::ActionUnit),
        (Dual, Action { module: "k", r: 1, row: 0, col: 0 }, Axiom::ActionDegree),
        (Dual, Action { module: "Rdual", r: 0, row: 0, col: 0 }, Axiom::ActionUnit),
        (Dual, ModuleDifferential { module: "k", row: 0, col: 0 }, Axiom::DifferentialDegree),
        (Mf2, ModuleDifferential { module: "fact_1u", row: 2, col: 0 }, Axiom::ModuleCurvature),
        (Mf2, ModuleDifferential { module: "fact_u1", row: 0, col: 2 }, Axiom::ModuleCurvature),
        (Mf2, ModuleDifferential { module: "k", row: 0, col: 0 }, Axiom::DifferentialDegree),
        (Mf2, Action { module: "G+(k)", r: 1, row: 0, col: 0 }, Axiom::ActionAssociativity),
        (Mf2, Action { module: "fact_1u", r: 0, row: 0, col: 0 }, Axiom::ActionUnit),
        (Mf2, Action { module: "G+(R)", r: 1, row: 0, col: 2 }, Axiom::ActionDegree),
    ]
}

fn bump(m: &mut Matrix, row: usize, col: usize) {
    let f = m.field();
    m[(row, col)] = &m[(row, col)] + &f.one();
}

/// Every catalogued perturbation of the registry, validated from raw data.
pub fn mutations(registry: &Registry) -> Result<Vec<Mutation>, Error> {
    let f = registry.field;
    let mut out = Vec::new();
    for (kind, site, expected) in catalogue() {
        let entry = registry.entry(kind);
        let ring = &entry.ring;
        let alg = ring.algebra();
        let report = match &site {
            MutationSite::Product { .. } | MutationSite::Unit { .. } => {
                let mut mult = alg.mult().to_vec();
                let mut unit = alg.unit().to_vec();
                match site {
                    MutationSite::Product { i, j, k } => bump(&mut mult[i], k, j),
                    MutationSite::Unit { k } => unit[k] = &unit[k] + &f.one(),
                    _ => unreachable!(),
                }
                let mutated = GradedAlgebra::new(f, alg.space().clone(), mult, unit)?;
                validate_ring(&mutated, ring.d(), ring.h())
            }
            MutationSite::RingDifferential { j, k } => {
                let mut d = ring.d().clone();
                bump(&mut d, *k, *j);
                validate_ring(alg, &d, ring.h())
            }
            MutationSite::Curvature { k } => {
                let mut h = ring.h().to_vec();
                h[*k] = &h[*k] + &f.one();
                validate_ring(alg, ring.d(), &h)
            }
            MutationSite::Action { module, r, row, col } => {
                let m = named(entry, module)?;
                let mut action = m.module().action().to_vec();
                bump(&mut action[*r], *row, *col);
                let raw = GradedModule::new(alg.clone(), m.space().clone(), action)?;
                validate_module(ring, &raw, m.d())
            }
            MutationSite::ModuleDifferential { module, row, col } => {
                let m = named(entry, module)?;
                let mut d = m.d().clone();
                bump(&mut d, *row, *col);
                validate_module(ring, m.module(), &d)
            }
        };
        out.push(Mutation { ring: kind, site, expected, report });
    }
    Ok(out)
}

fn named<'a>(entry: &'a RingEntry, name: &str) -> Result<&'a CdgModule, Error> {
    entry.module(name).ok_or_else(|| Error::Internal(format!("registry has no module {name}")))
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    pub field: Field,
    pub window_cap: u32,
    /// Random instances per ring and suite.
    pub samples: usize,
    pub max_dim: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self { seed: 0, field: Field::Rational, window_cap: DEFAULT_WINDOW_CAP, samples: 20, max_dim: 6 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, ..Self::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub field: Field,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "selftest seed={} field={}", self.seed, self.field);
        let (mut checks, mut failures) = (0, 0);
        for s in &self.suites {
            let status = if s.failures.is_empty() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "suite {}: {} checks, {} failures: {status}", s.name, s.checks, s.failures.len());
            for f in &s.failures {
                let _ = writeln!(out, "  failure: {f}");
            }
            checks += s.checks;
            failures += s.failures.len();
        }
        let _ = writeln!(out, "summary: {} suites, {checks} checks, {failures} failures", self.suites.len());
        out
    }
}

pub fn run_selftest(config: &SelftestConfig) -> Result<SelftestReport, Error> {
    let registry = Registry::with_window(config.field, config.window_cap)?;
    let mut sampler = Sampler::new(config.seed);
    let suites = vec![
        validators_suite(&registry)?,
        hom_suite(&registry, &mut sampler, config)?,
        cone_suite(&registry, &mut sampler, config)?,
        bec_suite(&registry, &mut sampler, config)?,
        delta_suite(&registry, &mut sampler, config)?,
        lemma_suite(&registry, &mut sampler, config)?,
        acyclicity_suite(&registry, &mut sampler, config)?,
    ];
    Ok(SelftestReport { seed: config.seed, field: config.field, suites })
}

fn validators_suite(registry: &Registry) -> Result<SuiteResult, Error> {
    let mut s = SuiteResult::new("validators");
    for e in &registry.entries {
        s.check(validate_ring(e.ring.algebra(), e.ring.d(), e.ring.h()).is_valid(), || format!("{} ring", e.kind));
        for m in &e.modules {
            let ok = validate_module(&e.ring, m.module.module(), m.module.d()).is_valid();
            s.check(ok, || format!("{} {}", e.kind, m.name));
        }
    }
    for m in mutations(registry)? {
        s.check(m.rejected_as_expected(), || format!("mutation {} not rejected as {}", m.description(), m.expected));
    }
    Ok(s)
}

fn pairs(
    entry: &RingEntry,
    sampler: &mut Sampler,
    config: &SelftestConfig,
) -> Result<Vec<(CdgModule, CdgModule)>, Error> {
    (0..config.samples)
        .map(|_| {
            let x = sampler.module(entry, config.max_dim)?;
            let y = sampler.module(entry, config.max_dim)?;
            Ok((x, y))
        })
        .collect()
}

fn hom_suite(registry: &Registry, sampler: &mut Sampler, config: &SelftestConfig) -> Result<SuiteResult, Error> {
    let mut s = SuiteResult::new("hom-complex");
    for e in &registry.entries {
        for (x, y) in pairs(e, sampler, config)? {
            s.check(HomComplex::new(&x, &y)?.squares_to_zero(), || format!("{} d^2 != 0", e.kind));
        }
    }
    Ok(s)
}

fn cone_suite(registry: &Registry, sampler: &mut Sampler, config: &SelftestConfig) -> Result<SuiteResult, Error> {
    let mut s = SuiteResult::new("cone-xi");
    for e in &registry.entries {
        for (x, y) in pairs(e, sampler, config)? {
            let f = sampler.closed_morphism(&x, &y)?;
            let c = cone(&f)?;
            let exact = verify_short_exact(&c.inclusion, &c.projection);
            s.check(exact.is_ok(), || format!("{} cone sequence: {:?}", e.kind, exact));
            let data = xi(&x)?;
            s.check(data.verify_identities().is_ok(), || format!("{} xi identities", e.kind));
            s.check(contracting_homotopy(&data.object)?.is_some(), || format!("{} xi not contractible", e.kind));
        }
    }
    Ok(s)
}

fn bec_suite(registry: &Registry, sampler: &mut Sampler, config: &SelftestConfig) -> Result<SuiteResult, Error> {
    let mut s = SuiteResult::new("bec");
    for e in &registry.entries {
        for m in &e.modules {
            s.check(phi(&m.module).is_ok(), || format!("{} phi({})", e.kind, m.name));
            s.check(psi_phi_iso(&m.module).is_ok(), || format!("{} psi+ phi({})", e.kind, m.name));
        }
        for (a, b) in pairs(e, sampler, config)? {
            let t = phi_tilde_check(&a, &b)?;
            s.check(t.passed(), || format!("{} phi-tilde {t:?}", e.kind));
            for n in hom_degree_range(&a, &b) {
                let c = becbec_check(&a, &b, n)?;
                s.check(c.passed(), || format!("{} becbec {c:?}", e.kind));
            }
            let (xb, _) = phi(&b)?;
            let adj = check_adjunction_instance(&xb, &a)?;
            s.check(adj.passed(), || format!("{} adjunction {adj:?}", e.kind));
        }
    }
    Ok(s)
}

fn delta_suite(registry: &Registry, sampler: &mut Sampler, config: &SelftestConfig) -> Result<SuiteResult, Error> {
    let mut s = SuiteResult::new("delta");
    for e in &registry.entries {
        let delta = build_delta_ring(&e.ring)?;
        s.check(delta.algebra.dim() == 2 * e.ring.dim(), || format!("{} dim R[delta]", e.kind));
        s.check(delta.validate().is_valid(), || format!("{} R[delta] relations", e.kind));
        s.check(delta.is_acyclic(), || format!("{} partial cohomology", e.kind));
        for (x, y) in pairs(e, sampler, config)? {
            let back = from_delta_module(&delta, &to_delta_module(&delta, &x)?)?;
            s.check(back == x, || format!("{} delta-module round trip", e.kind));
            let ub = upsilon(&e.ring, x.module())?;
            s.check(upsilon_comparison(&ub).is_ok(), || format!("{} upsilon comparison", e.kind));
            let (pb, _) = phi(&x)?;
            s.check(upsilon_comparison(&pb).is_ok(), || format!("{} phi vs upsilon", e.kind));
            let (a, b) = g_plus_adjunction_dims(&e.ring, x.module(), &y)?;
            s.check(a == b, || format!("{} G+ adjunction {a} vs {b}", e.kind));
            let (a, b) = g_minus_adjunction_dims(&e.ring, x.module(), &y)?;
            s.check(a == b, || format!("{} G- adjunction {a} vs {b}", e.kind));
        }
    }
    Ok(s)
}

fn lemma_suite(registry: &Registry, sampler: &mut Sampler, config: &SelftestConfig) -> Result<SuiteResult, Error> {
    let mut s = SuiteResult::new("ext-hom-lemma");
    for e in &registry.entries {
        for (x, y) in pairs(e, sampler, config)? {
            let r = lemma_ext_hom_check(&x, &y)?;
            s.check(r.passed(), || format!("{} {r:?}", e.kind));
        }
    }
    Ok(s)
}

fn acyclicity_suite(registry: &Registry, sampler: &mut Sampler, config: &SelftestConfig) -> Result<SuiteResult, Error> {
    let mut s = SuiteResult::new("acyclicity");
    for e in &registry.entries {
        let mut sequences: Vec<_> =
            e.sequences.iter().map(|q| (q.inclusion.clone(), q.projection.clone())).collect();
        for (x, y) in pairs(e, sampler, config)?.into_iter().take(config.samples.div_ceil(2)) {
            let f = sampler.closed_morphism(&x, &y)?;
            let c = cone(&f)?;
            sequences.push((c.inclusion, c.projection));
        }
        for (i, p) in sequences {
            let cert = canonical_ses_certificate(&i, &p)?;
            let verdict = cert.verify();
            s.check(verdict.is_ok(), || format!("{} certificate {verdict:?}", e.kind));
            let t = &cert.target;
            let co = coacyclic_obstruction(t, &default_injective_tests(t))?;
            s.check(!co.refuted(), || format!("{} certified object refuted (coacyclic)", e.kind));
            let contra = contraacyclic_obstruction(t, &default_projective_tests(t))?;
            s.check(!contra.refuted(), || format!("{} certified object refuted (contraacyclic)", e.kind));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutations_rejected_over_two_fields() {
        for f in [Field::Rational, Field::Prime(2)] {
            let reg = Registry::new(f).unwrap();
            let muts = mutations(&reg).unwrap();
            assert!(muts.len() >= 20);
            for m in muts {
                assert!(m.rejected_as_expected(), "{} gave {}", m.description(), m.report);
            }
        }
    }

    #[test]
    fn small_selftest_passes() {
        let config = SelftestConfig { samples: 3, ..SelftestConfig::default() };
        let report = run_selftest(&config).unwrap();
        assert!(report.passed(), "{}", report.render());
    }
}
