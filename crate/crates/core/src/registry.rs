//! Built-in rings and small modules: the ground field `K`, the dual numbers
//! `DUAL` with an odd generator, and `MF2`, the ℤ/2-graded `k[u]/(u²)` with
//! curvature `u`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::cdg::{CdgModule, CdgRing, HomElement};
use crate::constructions::{totalize, FiniteComplex};
use crate::delta::{g_minus, g_plus};
use crate::error::Error;
use crate::graded::{GradedAlgebra, GradedModule, GradedSpace, GradingGroup, DEFAULT_WINDOW_CAP};
use crate::linalg::{Field, Matrix};
use crate::second_kind::dual_regular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    K,
    Dual,
    Mf2,
}

impl RingKind {
    pub const ALL: [RingKind; 3] = [RingKind::K, RingKind::Dual, RingKind::Mf2];

    pub fn name(self) -> &'static str {
        match self {
            RingKind::K => "K",
            RingKind::Dual => "DUAL",
            RingKind::Mf2 => "MF2",
        }
    }

    pub fn ring(self, field: Field, window_cap: u32) -> Arc<CdgRing> {
        let z = GradingGroup::Integers { window_cap };
        let ring = match self {
            RingKind::K => CdgRing::trivial(Arc::new(GradedAlgebra::ground(field, z))),
            RingKind::Dual => CdgRing::trivial(Arc::new(GradedAlgebra::truncated_polynomial(field, z, "e", 1, 2))),
            RingKind::Mf2 => {
                let alg = GradedAlgebra::truncated_polynomial(field, GradingGroup::Z2, "u", 0, 2);
                CdgRing::new(Arc::new(alg), Matrix::zeros(field, 2, 2), vec![field.zero(), field.one()])
            }
        };
        Arc::new(ring.expect("registry rings are valid"))
    }

    /// Shifts used when drawing building blocks.
    pub fn shifts(self) -> Vec<i64> {
        match self {
            RingKind::K => vec![-2, -1, 0, 1, 2],
            RingKind::Dual => vec![-1, 0, 1],
            RingKind::Mf2 => vec![0, 1],
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        RingKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Internal(format!("unknown registry ring {s}")))
    }
}

/// The simple module `k` in degree 0: the unit acts by 1, every other basis element by 0.
pub fn simple(ring: &Arc<CdgRing>) -> Result<CdgModule, Error> {
    let f = ring.field();
    let alg = ring.algebra();
    let space = GradedSpace::new(ring.grading(), vec![0], vec!["k".into()]);
    let action = (0..alg.dim())
        .map(|r| if alg.unit()[r].is_one() { Matrix::identity(f, 1) } else { Matrix::zeros(f, 1, 1) })
        .collect();
    let module = GradedModule::new(alg.clone(), space, action)?;
    CdgModule::new(ring.clone(), module, Matrix::zeros(f, 1, 1))
}

/// A graded module with zero differential, when that is a CDG-module.
pub fn with_zero_differential(ring: &Arc<CdgRing>, m: GradedModule) -> Result<CdgModule, Error> {
    let n = m.dim();
    CdgModule::new(ring.clone(), m, Matrix::zeros(ring.field(), n, n))
}

/// The rank-(1,1) factorization over `MF2` on generators `e0` (even), `e1`
/// (odd): with `unit_first`, `d e0 = e1`, `d e1 = u e0`; otherwise
/// `d e0 = u e1`, `d e1 = e0`.
pub fn factorization(ring: &Arc<CdgRing>, unit_first: bool) -> Result<CdgModule, Error> {
    let f = ring.field();
    let free = GradedModule::free(ring.algebra().clone(), &[(0, "e0".into()), (1, "e1".into())]);
    let mut d = Matrix::zeros(f, 4, 4);
    if unit_first {
        d[(2, 0)] = f.one();
        d[(3, 1)] = f.one();
        d[(1, 2)] = f.one();
    } else {
        d[(3, 0)] = f.one();
        d[(0, 2)] = f.one();
        d[(1, 3)] = f.one();
    }
    CdgModule::new(ring.clone(), free, d)
}

/// `0 → k[-1] → G⁺(k) → k → 0`.
pub fn simple_extension(ring: &Arc<CdgRing>) -> Result<(HomElement, HomElement), Error> {
    let f = ring.field();
    let k = simple(ring)?;
    let gp = g_plus(ring, k.module())?;
    let i = HomElement::new(&k.shift(-1)?, &gp, 0, Matrix::from_i64(f, &[&[0], &[1]]))?;
    let p = HomElement::new(&gp, &k, 0, Matrix::from_i64(f, &[&[1, 0]]))?;
    Ok((i, p))
}

/// `0 → k → k ⊕ k → k → 0`.
pub fn split_sequence(ring: &Arc<CdgRing>) -> Result<(HomElement, HomElement), Error> {
    let f = ring.field();
    let k = simple(ring)?;
    let kk = CdgModule::direct_sum(&[&k, &k])?;
    let i = HomElement::new(&k, &kk, 0, Matrix::from_i64(f, &[&[1], &[0]]))?;
    let p = HomElement::new(&kk, &k, 0, Matrix::from_i64(f, &[&[0, 1]]))?;
    Ok((i, p))
}

/// `0 → k[-1] → R → k → 0` for `DUAL`, with `k[-1]` the span of the odd generator.
pub fn regular_extension(ring: &Arc<CdgRing>) -> Result<(HomElement, HomElement), Error> {
    let f = ring.field();
    let k = simple(ring)?;
    let r = with_zero_differential(ring, GradedModule::regular(ring.algebra().clone()))?;
    let i = HomElement::new(&k.shift(-1)?, &r, 0, Matrix::from_i64(f, &[&[0], &[1]]))?;
    let p = HomElement::new(&r, &k, 0, Matrix::from_i64(f, &[&[1, 0]]))?;
    Ok((i, p))
}

/// `Tot(K → L → M)` at positions -2, -1, 0.
pub fn tot_of_sequence(i: &HomElement, p: &HomElement) -> Result<CdgModule, Error> {
    let x = FiniteComplex::new(-2, vec![i.source.clone(), i.target.clone(), p.target.clone()], vec![i.clone(), p.clone()])?;
    totalize(&x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub module: CdgModule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSequence {
    pub name: String,
    pub inclusion: HomElement,
    pub projection: HomElement,
}

#[derive(Clone, Debug)]
pub struct RingEntry {
    pub kind: RingKind,
    pub ring: Arc<CdgRing>,
    pub modules: Vec<NamedModule>,
    pub sequences: Vec<NamedSequence>,
}

impl RingEntry {
    pub fn new(kind: RingKind, field: Field, window_cap: u32) -> Result<Self, Error> {
        let ring = kind.ring(field, window_cap);
        let k = simple(&ring)?;
        let mut modules = vec![
            ("k".to_string(), k.clone()),
            ("k[1]".to_string(), k.shift(1)?),
            ("G+(k)".to_string(), g_plus(&ring, k.module())?),
            ("G-(k)".to_string(), g_minus(&ring, k.module())?),
        ];
        let mut sequences = vec![("ext_k".to_string(), simple_extension(&ring)?)];
        match kind {
            RingKind::K => {
                modules.push(("k[-1]".into(), k.shift(-1)?));
                sequences.push(("split_k".into(), split_sequence(&ring)?));
            }
            RingKind::Dual => {
                let regular = GradedModule::regular(ring.algebra().clone());
                modules.push(("R".into(), with_zero_differential(&ring, regular.clone())?));
                modules.push(("Rdual".into(), with_zero_differential(&ring, dual_regular(&ring))?));
                modules.push(("G+(R)".into(), g_plus(&ring, &regular)?));
                sequences.push(("ext_R".into(), regular_extension(&ring)?));
            }
            RingKind::Mf2 => {
                let regular = GradedModule::regular(ring.algebra().clone());
                modules.push(("fact_1u".into(), factorization(&ring, true)?));
                modules.push(("fact_u1".into(), factorization(&ring, false)?));
                modules.push(("G+(R)".into(), g_plus(&ring, &regular)?));
            }
        }
        for (name, (i, p)) in &sequences {
            modules.push((format!("tot_{name}"), tot_of_sequence(i, p)?));
        }
        Ok(Self {
            kind,
            ring,
            modules: modules.into_iter().map(|(name, module)| NamedModule { name, module }).collect(),
            sequences: sequences
                .into_iter()
                .map(|(name, (inclusion, projection))| NamedSequence { name, inclusion, projection })
                .collect(),
        })
    }

    pub fn module(&self, name: &str) -> Option<&CdgModule> {
        self.modules.iter().find(|m| m.name == name).map(|m| &m.module)
    }

    /// Small modules and their shifts used as summands by the random generators.
    pub fn building_blocks(&self) -> Vec<CdgModule> {
        let mut out = Vec::new();
        let k = self.module("k").expect("registry has k");
        let gp = self.module("G+(k)").expect("registry has G+(k)");
        for j in self.kind.shifts() {
            out.push(k.shift(j).expect("small shift"));
            out.push(gp.shift(j).expect("small shift"));
        }
        match self.kind {
            RingKind::K => {}
            RingKind::Dual => {
                let r = self.module("R").expect("registry has R");
                for j in self.kind.shifts() {
                    out.push(r.shift(j).expect("small shift"));
                }
            }
            RingKind::Mf2 => {
                out.push(self.module("fact_1u").expect("registry has fact_1u").clone());
                out.push(self.module("fact_u1").expect("registry has fact_u1").clone());
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub field: Field,
    pub entries: Vec<RingEntry>,
}

impl Registry {
    pub fn new(field: Field) -> Result<Self, Error> {
        Self::with_window(field, DEFAULT_WINDOW_CAP)
    }

    pub fn with_window(field: Field, window_cap: u32) -> Result<Self, Error> {
        let entries = RingKind::ALL
            .into_iter()
            .map(|k| RingEntry::new(k, field, window_cap))
            .collect::<Result<_, _>>()?;
        Ok(Self { field, entries })
    }

    pub fn entry(&self, kind: RingKind) -> &RingEntry {
        self.entries.iter().find(|e| e.kind == kind).expect("every ring kind is registered")
    }
}
