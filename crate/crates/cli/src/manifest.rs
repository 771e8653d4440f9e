//! The line-oriented manifest format: parser and serializer.
//!
//! See `docs/manifest.md` for the grammar.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use curvedg::cdg::{CdgModule, CdgRing, HomElement};
use curvedg::graded::{GradedAlgebra, GradedModule, GradedSpace, GradingGroup, DEFAULT_WINDOW_CAP};
use curvedg::linalg::{Field, Matrix, Scalar};
use curvedg::registry::{Registry, RingKind};

use crate::command::Invocation;
use crate::error::ManifestError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    pub field: Field,
    pub window: u32,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { field: Field::Rational, window: DEFAULT_WINDOW_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSource {
    Registry(RingKind),
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDef {
    pub name: String,
    pub source: RingSource,
    pub ring: Arc<CdgRing>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSource {
    Registry { ring: String, entry: String },
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDef {
    pub name: String,
    pub ring: String,
    pub source: ModuleSource,
    pub module: CdgModule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequencePart {
    Inclusion,
    Projection,
}

impl SequencePart {
    fn name(self) -> &'static str {
        match self {
            SequencePart::Inclusion => "inclusion",
            SequencePart::Projection => "projection",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismSource {
    Registry { ring: String, sequence: String, part: SequencePart },
    Explicit { source: String, target: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDef {
    pub name: String,
    pub source: MorphismSource,
    pub element: HomElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateSpec {
    /// Tot of the short exact sequence given by two morphisms.
    Ses { inclusion: String, projection: String },
    /// A single contractible layer.
    Contractible { module: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateDef {
    pub name: String,
    pub spec: CertificateSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    /// As declared; `None` when the manifest has no `field` line.
    pub field: Option<Field>,
    pub window: Option<u32>,
    /// Effective values after applying defaults.
    pub options: ParseOptions,
    pub rings: Vec<RingDef>,
    pub modules: Vec<ModuleDef>,
    pub morphisms: Vec<MorphismDef>,
    pub certificates: Vec<CertificateDef>,
    pub commands: Vec<Invocation>,
}

impl Manifest {
    pub fn empty(options: ParseOptions) -> Self {
        Self {
            field: None,
            window: None,
            options,
            rings: Vec::new(),
            modules: Vec::new(),
            morphisms: Vec::new(),
            certificates: Vec::new(),
            commands: Vec::new(),
        }
    }

    pub fn ring(&self, name: &str) -> Option<&RingDef> {
        self.rings.iter().find(|r| r.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&ModuleDef> {
        self.modules.iter().find(|m| m.name == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDef> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    pub fn certificate(&self, name: &str) -> Option<&CertificateDef> {
        self.certificates.iter().find(|c| c.name == name)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.ring(name).is_some()
            || self.module(name).is_some()
            || self.morphism(name).is_some()
            || self.certificate(name).is_some()
            || name.parse::<RingKind>().is_ok()
    }
}

/// Name lookups shared by the parser and the command runner.
pub struct Resolver<'a> {
    pub manifest: &'a Manifest,
    pub registry: &'a Registry,
}

impl Resolver<'_> {
    /// A declared ring, or a registry ring by its built-in name.
    pub fn ring(&self, name: &str) -> Option<(Arc<CdgRing>, Option<RingKind>)> {
        if let Some(r) = self.manifest.ring(name) {
            let kind = match r.source {
                RingSource::Registry(k) => Some(k),
                RingSource::Explicit => None,
            };
            return Some((r.ring.clone(), kind));
        }
        let kind: RingKind = name.parse().ok()?;
        Some((self.registry.entry(kind).ring.clone(), Some(kind)))
    }

    /// A manifest module, `RING:entry`, or a bare registry entry of `scope`.
    pub fn module(&self, name: &str, scope: Option<&str>) -> Option<CdgModule> {
        if let Some(m) = self.manifest.module(name) {
            return Some(m.module.clone());
        }
        if let Some((ring, entry)) = name.split_once(':') {
            return self.registry_module(ring, entry);
        }
        scope.and_then(|ring| self.registry_module(ring, name))
    }

    pub fn registry_module(&self, ring: &str, entry: &str) -> Option<CdgModule> {
        let (_, kind) = self.ring(ring)?;
        self.registry.entry(kind?).module(entry).cloned()
    }

    /// The name under which `ring` is known, preferring manifest declarations.
    pub fn ring_name(&self, ring: &Arc<CdgRing>) -> String {
        if let Some(r) = self.manifest.rings.iter().find(|r| r.ring == *ring) {
            return r.name.clone();
        }
        self.registry
            .entries
            .iter()
            .find(|e| e.ring == *ring)
            .map(|e| e.kind.name().to_string())
            .unwrap_or_else(|| "?".into())
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn syntax(&self, msg: impl Into<String>) -> ManifestError {
        ManifestError::Syntax { line: self.number, msg: msg.into() }
    }

    fn unresolved(&self, name: &str) -> ManifestError {
        ManifestError::Unresolved { line: self.number, name: name.to_string() }
    }

    fn degree(&self, msg: impl Into<String>) -> ManifestError {
        ManifestError::Degree { line: self.number, msg: msg.into() }
    }

    fn invalid(&self, e: curvedg::Error) -> ManifestError {
        ManifestError::Invalid { line: self.number, source: e }
    }

    fn tokens(&self) -> Vec<&str> {
        self.text.split_whitespace().collect()
    }
}

pub fn parse_manifest(text: &str, options: ParseOptions) -> Result<Manifest, ManifestError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, t)| Line { number: i + 1, text: t.trim() })
        .filter(|l| !l.text.is_empty() && !l.text.starts_with('#'))
        .collect();
    let mut m = Manifest::empty(options);
    let mut registry: Option<Registry> = None;
    let mut pos = 0;
    while pos < lines.len() {
        let line = &lines[pos];
        let toks = line.tokens();
        pos += 1;
        match toks[0] {
            "field" | "window" => {
                if registry.is_some() {
                    return Err(line.syntax(format!("`{}` must precede every declaration", toks[0])));
                }
                let [_, value] = toks[..] else { return Err(line.syntax(format!("expected `{} <value>`", toks[0]))) };
                if toks[0] == "field" {
                    let f: Field = value.parse().map_err(|e| line.syntax(format!("{e}")))?;
                    m.field = Some(f);
                    m.options.field = f;
                } else {
                    let w: u32 = value.parse().map_err(|_| line.syntax(format!("bad window `{value}`")))?;
                    m.window = Some(w);
                    m.options.window = w;
                }
                continue;
            }
            "run" => {
                let inv = Invocation::parse(&toks[1..]).map_err(|msg| line.syntax(msg))?;
                m.commands.push(inv);
                continue;
            }
            _ => {}
        }
        let reg = match &registry {
            Some(r) => r,
            None => {
                let r = Registry::with_window(m.options.field, m.options.window).map_err(|e| line.invalid(e))?;
                registry.insert(r)
            }
        };
        let one_line = toks[0] == "certificate" || toks.get(2) == Some(&"=");
        let end = if one_line {
            pos
        } else {
            lines[pos..]
                .iter()
                .position(|l| l.text == "end")
                .map(|k| pos + k)
                .ok_or_else(|| line.syntax(format!("`{}` block has no matching `end`", toks[0])))?
        };
        let body = &lines[pos..end];
        let name = *toks.get(1).ok_or_else(|| line.syntax("missing name"))?;
        if m.name_taken(name) {
            return Err(line.syntax(format!("`{name}` is already defined")));
        }
        match toks[0] {
            "ring" => {
                let def = parse_ring(line, &toks, body, &m.options)?;
                m.rings.push(def);
            }
            "module" => {
                let def = parse_module(line, &toks, body, &Resolver { manifest: &m, registry: reg })?;
                m.modules.push(def);
            }
            "morphism" => {
                let def = parse_morphism(line, &toks, body, &Resolver { manifest: &m, registry: reg })?;
                m.morphisms.push(def);
            }
            "certificate" => {
                let def = parse_certificate(line, &toks, &m)?;
                m.certificates.push(def);
            }
            other => return Err(line.syntax(format!("unknown directive `{other}`"))),
        }
        if !one_line {
            pos = end + 1;
        }
    }
    Ok(m)
}

/// Basis labels for expression parsing: `@j` addresses index `j`, a label
/// addresses the unique basis element carrying it.
struct Basis<'a> {
    space: &'a GradedSpace,
}

impl Basis<'_> {
    fn lookup(&self, token: &str, line: &Line) -> Result<usize, ManifestError> {
        let labels = self.space.labels();
        let mut hits = labels.iter().enumerate().filter(|(_, l)| l.as_str() == token);
        match (hits.next(), hits.next()) {
            (Some((i, _)), None) => return Ok(i),
            (Some(_), Some(_)) => return Err(line.syntax(format!("label `{token}` is ambiguous; use @index"))),
            _ => {}
        }
        if let Some(i) = token.strip_prefix('@').and_then(|s| s.parse::<usize>().ok()) {
            if i < labels.len() {
                return Ok(i);
            }
        }
        Err(line.unresolved(token))
    }
}

fn parse_scalar(s: &str, field: Field) -> Option<Scalar> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    field.from_ratio(&num, &den)
}

/// Parses `EXPR` into coordinates; every term must sit in `degree`.
fn parse_expr(tokens: &[&str], basis: &Basis, field: Field, degree: i64, line: &Line) -> Result<Vec<Scalar>, ManifestError> {
    let grading = basis.space.grading;
    let mut out = vec![field.zero(); basis.space.dim()];
    if tokens == ["0"] {
        return Ok(out);
    }
    if tokens.is_empty() {
        return Err(line.syntax("empty expression"));
    }
    let mut sign = field.one();
    let mut expect_term = true;
    for &tok in tokens {
        if expect_term && (tok == "+" || tok == "-") {
            if tok == "-" {
                sign = -sign;
            }
            continue;
        }
        if !expect_term {
            match tok {
                "+" => sign = field.one(),
                "-" => sign = -field.one(),
                _ => return Err(line.syntax(format!("expected + or - before `{tok}`"))),
            }
            expect_term = true;
            continue;
        }
        let (coeff, label) = match tok.split_once('*') {
            Some((c, l)) if parse_scalar(c, field).is_some() => (parse_scalar(c, field).unwrap(), l),
            _ => match tok.strip_prefix('-') {
                Some(rest) if basis.lookup(tok, line).is_err() => (-field.one(), rest),
                _ => (field.one(), tok),
            },
        };
        let i = basis.lookup(label, line)?;
        let c = &sign * &coeff;
        if !c.is_zero() && grading.normalize(basis.space.degree(i)) != grading.normalize(degree) {
            return Err(line.degree(format!(
                "`{label}` has degree {}, expected {}",
                basis.space.degree(i),
                grading.normalize(degree)
            )));
        }
        out[i] += &c;
        sign = field.one();
        expect_term = false;
    }
    if expect_term {
        return Err(line.syntax("expression ends with an operator"));
    }
    Ok(out)
}

/// Splits `KEY A [B] = EXPR`; returns the refs before `=` and the expression tokens.
fn split_assignment<'t>(toks: &[&'t str], refs: usize, line: &Line) -> Result<(Vec<&'t str>, Vec<&'t str>), ManifestError> {
    let eq = toks.iter().position(|&t| t == "=").ok_or_else(|| line.syntax("expected `=`"))?;
    if eq != refs + 1 {
        return Err(line.syntax(format!("`{}` takes {refs} reference(s) before `=`", toks[0])));
    }
    Ok((toks[1..eq].to_vec(), toks[eq + 1..].to_vec()))
}

fn parse_basis(toks: &[&str], grading: GradingGroup, line: &Line) -> Result<GradedSpace, ManifestError> {
    let mut degrees = Vec::new();
    let mut labels = Vec::new();
    for t in &toks[1..] {
        let (label, deg) = t.rsplit_once(':').ok_or_else(|| line.syntax(format!("expected label:degree, got `{t}`")))?;
        let deg: i64 = deg.parse().map_err(|_| line.syntax(format!("bad degree in `{t}`")))?;
        if label.is_empty() {
            return Err(line.syntax("empty basis label"));
        }
        degrees.push(grading.normalize(deg));
        labels.push(label.to_string());
    }
    let space = GradedSpace::new(grading, degrees, labels);
    grading.check_window(space.support()).map_err(|e| line.degree(format!("{e}")))?;
    Ok(space)
}

fn parse_grading(value: &str, window: u32, line: &Line) -> Result<GradingGroup, ManifestError> {
    match value {
        "z" => Ok(GradingGroup::Integers { window_cap: window }),
        "z2" => Ok(GradingGroup::Z2),
        other => Err(line.syntax(format!("unknown grading `{other}` (expected z or z2)"))),
    }
}

fn parse_ring(line: &Line, toks: &[&str], body: &[Line], options: &ParseOptions) -> Result<RingDef, ManifestError> {
    let name = toks[1].to_string();
    if let [_, _, "=", "registry", kind] = toks[..] {
        let kind: RingKind = kind.parse().map_err(|_| line.unresolved(kind))?;
        let ring = kind.ring(options.field, options.window);
        return Ok(RingDef { name, source: RingSource::Registry(kind), ring });
    }
    if toks.len() != 2 {
        return Err(line.syntax("expected `ring NAME` or `ring NAME = registry KIND`"));
    }
    let f = options.field;
    let mut body = body.iter();
    let grading_line = body.next().ok_or_else(|| line.syntax("ring block needs `grading` and `basis` lines"))?;
    let grading = match grading_line.tokens()[..] {
        ["grading", g] => parse_grading(g, options.window, grading_line)?,
        _ => return Err(grading_line.syntax("expected `grading z|z2`")),
    };
    let basis_line = body.next().ok_or_else(|| line.syntax("ring block needs a `basis` line"))?;
    let btoks = basis_line.tokens();
    if btoks[0] != "basis" || btoks.len() < 2 {
        return Err(basis_line.syntax("expected `basis LABEL:DEGREE ...` with at least one element"));
    }
    let space = parse_basis(&btoks, grading, basis_line)?;
    let n = space.dim();
    let basis = Basis { space: &space };
    let mut unit: Vec<Scalar> = (0..n).map(|i| if i == 0 { f.one() } else { f.zero() }).collect();
    let mut table: Vec<Vec<Option<Vec<Scalar>>>> = vec![vec![None; n]; n];
    let mut d = Matrix::zeros(f, n, n);
    let mut h = vec![f.zero(); n];
    for l in body {
        let t = l.tokens();
        match t[0] {
            "unit" => {
                let (_, expr) = split_assignment(&t, 0, l)?;
                unit = parse_expr(&expr, &basis, f, 0, l)?;
            }
            "mul" => {
                let (refs, expr) = split_assignment(&t, 2, l)?;
                let (a, b) = (basis.lookup(refs[0], l)?, basis.lookup(refs[1], l)?);
                table[a][b] = Some(parse_expr(&expr, &basis, f, space.degree(a) + space.degree(b), l)?);
            }
            "d" => {
                let (refs, expr) = split_assignment(&t, 1, l)?;
                let a = basis.lookup(refs[0], l)?;
                let col = parse_expr(&expr, &basis, f, space.degree(a) + 1, l)?;
                for (r, c) in col.into_iter().enumerate() {
                    d[(r, a)] = c;
                }
            }
            "curvature" => {
                let (_, expr) = split_assignment(&t, 0, l)?;
                h = parse_expr(&expr, &basis, f, 2, l)?;
            }
            other => return Err(l.syntax(format!("unknown ring line `{other}`"))),
        }
    }
    let unit_index = unit_basis_index(&unit);
    let table: Vec<Vec<Vec<Scalar>>> = table
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .enumerate()
                .map(|(b, entry)| entry.unwrap_or_else(|| default_product(f, n, unit_index, a, b)))
                .collect()
        })
        .collect();
    let alg = GradedAlgebra::from_table(f, space, &table, unit).map_err(|e| line.invalid(e))?;
    let ring = CdgRing::new(Arc::new(alg), d, h).map_err(|e| line.invalid(e))?;
    Ok(RingDef { name, source: RingSource::Explicit, ring: Arc::new(ring) })
}

fn unit_basis_index(unit: &[Scalar]) -> Option<usize> {
    let mut nonzero = unit.iter().enumerate().filter(|(_, x)| !x.is_zero());
    match (nonzero.next(), nonzero.next()) {
        (Some((i, x)), None) if x.is_one() => Some(i),
        _ => None,
    }
}

/// Products with a unit basis element default to the other factor, all others to zero.
fn default_product(f: Field, n: usize, unit: Option<usize>, a: usize, b: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    if unit == Some(a) {
        v[b] = f.one();
    } else if unit == Some(b) {
        v[a] = f.one();
    }
    v
}

fn parse_module(line: &Line, toks: &[&str], body: &[Line], res: &Resolver) -> Result<ModuleDef, ManifestError> {
    let name = toks[1].to_string();
    if let [_, _, "=", "registry", ring, entry] = toks[..] {
        let (r, _) = res.ring(ring).ok_or_else(|| line.unresolved(ring))?;
        let module = res.registry_module(ring, entry).ok_or_else(|| line.unresolved(&format!("{ring}:{entry}")))?;
        debug_assert!(module.ring() == &r);
        return Ok(ModuleDef {
            name,
            ring: ring.to_string(),
            source: ModuleSource::Registry { ring: ring.to_string(), entry: entry.to_string() },
            module,
        });
    }
    let [_, _, "over", ring_name] = toks[..] else {
        return Err(line.syntax("expected `module NAME over RING` or `module NAME = registry RING ENTRY`"));
    };
    let (ring, _) = res.ring(ring_name).ok_or_else(|| line.unresolved(ring_name))?;
    let f = ring.field();
    let alg = ring.algebra();
    let mut body = body.iter();
    let basis_line = body.next().ok_or_else(|| line.syntax("module block needs a `basis` line"))?;
    let btoks = basis_line.tokens();
    if btoks[0] != "basis" {
        return Err(basis_line.syntax("expected `basis LABEL:DEGREE ...`"));
    }
    let space = parse_basis(&btoks, ring.grading(), basis_line)?;
    let n = space.dim();
    let basis = Basis { space: &space };
    let ring_basis = Basis { space: alg.space() };
    let unit = unit_basis_index(alg.unit());
    let mut action: Vec<Option<Matrix>> = vec![None; alg.dim()];
    let mut d = Matrix::zeros(f, n, n);
    for l in body {
        let t = l.tokens();
        match t[0] {
            "act" => {
                let (refs, expr) = split_assignment(&t, 2, l)?;
                let (r, j) = (ring_basis.lookup(refs[0], l)?, basis.lookup(refs[1], l)?);
                let col = parse_expr(&expr, &basis, f, alg.degree(r) + space.degree(j), l)?;
                let a = action[r].get_or_insert_with(|| Matrix::zeros(f, n, n));
                for (i, c) in col.into_iter().enumerate() {
                    a[(i, j)] = c;
                }
            }
            "d" => {
                let (refs, expr) = split_assignment(&t, 1, l)?;
                let j = basis.lookup(refs[0], l)?;
                let col = parse_expr(&expr, &basis, f, space.degree(j) + 1, l)?;
                for (i, c) in col.into_iter().enumerate() {
                    d[(i, j)] = c;
                }
            }
            other => return Err(l.syntax(format!("unknown module line `{other}`"))),
        }
    }
    let action: Vec<Matrix> = action
        .into_iter()
        .enumerate()
        .map(|(r, a)| a.unwrap_or_else(|| if unit == Some(r) { Matrix::identity(f, n) } else { Matrix::zeros(f, n, n) }))
        .collect();
    let gm = GradedModule::new(alg.clone(), space, action).map_err(|e| line.invalid(e))?;
    let module = CdgModule::new(ring.clone(), gm, d).map_err(|e| line.invalid(e))?;
    Ok(ModuleDef { name, ring: ring_name.to_string(), source: ModuleSource::Explicit, module })
}

fn parse_morphism(line: &Line, toks: &[&str], body: &[Line], res: &Resolver) -> Result<MorphismDef, ManifestError> {
    let name = toks[1].to_string();
    if let [_, _, "=", "registry", ring, sequence, part] = toks[..] {
        let part = match part {
            "inclusion" => SequencePart::Inclusion,
            "projection" => SequencePart::Projection,
            other => return Err(line.syntax(format!("expected inclusion or projection, got `{other}`"))),
        };
        let (_, kind) = res.ring(ring).ok_or_else(|| line.unresolved(ring))?;
        let kind = kind.ok_or_else(|| line.unresolved(&format!("{ring}:{sequence}")))?;
        let seq = res
            .registry
            .entry(kind)
            .sequences
            .iter()
            .find(|s| s.name == sequence)
            .ok_or_else(|| line.unresolved(&format!("{ring}:{sequence}")))?;
        let element = match part {
            SequencePart::Inclusion => seq.inclusion.clone(),
            SequencePart::Projection => seq.projection.clone(),
        };
        return Ok(MorphismDef {
            name,
            source: MorphismSource::Registry { ring: ring.to_string(), sequence: sequence.to_string(), part },
            element,
        });
    }
    let [_, _, ":", src, "->", tgt, "degree", deg] = toks[..] else {
        return Err(line.syntax("expected `morphism NAME : SOURCE -> TARGET degree N`"));
    };
    let degree: i64 = deg.parse().map_err(|_| line.syntax(format!("bad degree `{deg}`")))?;
    let x = res.module(src, None).ok_or_else(|| line.unresolved(src))?;
    let y = res.module(tgt, None).ok_or_else(|| line.unresolved(tgt))?;
    let f = x.field();
    let mut map = Matrix::zeros(f, y.dim(), x.dim());
    let source_basis = Basis { space: x.space() };
    let target_basis = Basis { space: y.space() };
    for l in body {
        let t = l.tokens();
        if t[0] != "map" {
            return Err(l.syntax(format!("unknown morphism line `{}`", t[0])));
        }
        let (refs, expr) = split_assignment(&t, 1, l)?;
        let j = source_basis.lookup(refs[0], l)?;
        let col = parse_expr(&expr, &target_basis, f, x.degree(j) + degree, l)?;
        for (i, c) in col.into_iter().enumerate() {
            map[(i, j)] = c;
        }
    }
    let element = HomElement::new(&x, &y, degree, map).map_err(|e| line.invalid(e))?;
    Ok(MorphismDef { name, source: MorphismSource::Explicit { source: src.into(), target: tgt.into() }, element })
}

fn parse_certificate(line: &Line, toks: &[&str], m: &Manifest) -> Result<CertificateDef, ManifestError> {
    let name = toks[1].to_string();
    let spec = match toks[..] {
        [_, _, "ses", i, p] => {
            for r in [i, p] {
                m.morphism(r).ok_or_else(|| line.unresolved(r))?;
            }
            CertificateSpec::Ses { inclusion: i.into(), projection: p.into() }
        }
        [_, _, "contractible", x] => CertificateSpec::Contractible { module: x.into() },
        _ => return Err(line.syntax("expected `certificate NAME ses INCL PROJ` or `certificate NAME contractible MODULE`")),
    };
    Ok(CertificateDef { name, spec })
}

/// A basis label that reads back as itself inside an expression.
fn label_is_safe(label: &str, all: &[String]) -> bool {
    !label.is_empty()
        && !label.contains(char::is_whitespace)
        && !label.starts_with('@')
        && !label.starts_with('-')
        && !matches!(label, "+" | "=" | "->" | ":" | "0")
        && all.iter().filter(|l| l.as_str() == label).count() == 1
}

fn reference(space: &GradedSpace, i: usize) -> String {
    let label = space.label(i);
    if label_is_safe(label, space.labels()) {
        label.to_string()
    } else {
        format!("@{i}")
    }
}

pub fn format_expr(v: &[Scalar], space: &GradedSpace) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{c}*{}", reference(space, i)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn format_basis(space: &GradedSpace) -> String {
    let mut s = String::from("basis");
    for i in 0..space.dim() {
        write!(s, " {}:{}", space.label(i), space.degree(i)).unwrap();
    }
    s
}

pub fn write_ring(out: &mut String, name: &str, ring: &CdgRing) {
    let alg = ring.algebra();
    let space = alg.space();
    let n = alg.dim();
    let grading = if ring.grading().is_z2() { "z2" } else { "z" };
    writeln!(out, "ring {name}\n  grading {grading}\n  {}", format_basis(space)).unwrap();
    let unit = unit_basis_index(alg.unit());
    if unit != Some(0) {
        writeln!(out, "  unit = {}", format_expr(alg.unit(), space)).unwrap();
    }
    for a in 0..n {
        for b in 0..n {
            let p = alg.product_basis(a, b);
            if p != default_product(ring.field(), n, unit, a, b) {
                writeln!(out, "  mul {} {} = {}", reference(space, a), reference(space, b), format_expr(&p, space)).unwrap();
            }
        }
    }
    for a in 0..n {
        let col = ring.d_of(a);
        if col.iter().any(|c| !c.is_zero()) {
            writeln!(out, "  d {} = {}", reference(space, a), format_expr(&col, space)).unwrap();
        }
    }
    if ring.h().iter().any(|c| !c.is_zero()) {
        writeln!(out, "  curvature = {}", format_expr(ring.h(), space)).unwrap();
    }
    out.push_str("end\n");
}

pub fn write_module(out: &mut String, name: &str, ring_name: &str, m: &CdgModule) {
    let space = m.space();
    let alg = m.ring().algebra();
    writeln!(out, "module {name} over {ring_name}\n  {}", format_basis(space)).unwrap();
    let unit = unit_basis_index(alg.unit());
    for r in 0..alg.dim() {
        let a = m.module().act(r);
        let default = if unit == Some(r) { Matrix::identity(m.field(), m.dim()) } else { Matrix::zeros(m.field(), m.dim(), m.dim()) };
        if *a == default {
            continue;
        }
        for j in 0..m.dim() {
            let col = a.column(j);
            // An explicit line per column keeps a non-default unit action exact.
            if unit == Some(r) || col.iter().any(|c| !c.is_zero()) {
                writeln!(
                    out,
                    "  act {} {} = {}",
                    reference(alg.space(), r),
                    reference(space, j),
                    format_expr(&col, space)
                )
                .unwrap();
            }
        }
    }
    for j in 0..m.dim() {
        let col = m.d().column(j);
        if col.iter().any(|c| !c.is_zero()) {
            writeln!(out, "  d {} = {}", reference(space, j), format_expr(&col, space)).unwrap();
        }
    }
    out.push_str("end\n");
}

pub fn write_morphism(out: &mut String, name: &str, source: &str, target: &str, f: &HomElement) {
    writeln!(out, "morphism {name} : {source} -> {target} degree {}", f.degree).unwrap();
    for j in 0..f.source.dim() {
        let col = f.map.column(j);
        if col.iter().any(|c| !c.is_zero()) {
            writeln!(out, "  map {} = {}", reference(f.source.space(), j), format_expr(&col, f.target.space())).unwrap();
        }
    }
    out.push_str("end\n");
}

pub fn serialize(m: &Manifest) -> String {
    let mut out = String::new();
    if let Some(f) = m.field {
        writeln!(out, "field {f}").unwrap();
    }
    if let Some(w) = m.window {
        writeln!(out, "window {w}").unwrap();
    }
    for r in &m.rings {
        match r.source {
            RingSource::Registry(kind) => writeln!(out, "ring {} = registry {kind}", r.name).unwrap(),
            RingSource::Explicit => write_ring(&mut out, &r.name, &r.ring),
        }
    }
    for d in &m.modules {
        match &d.source {
            ModuleSource::Registry { ring, entry } => writeln!(out, "module {} = registry {ring} {entry}", d.name).unwrap(),
            ModuleSource::Explicit => write_module(&mut out, &d.name, &d.ring, &d.module),
        }
    }
    for d in &m.morphisms {
        match &d.source {
            MorphismSource::Registry { ring, sequence, part } => {
                writeln!(out, "morphism {} = registry {ring} {sequence} {}", d.name, part.name()).unwrap()
            }
            MorphismSource::Explicit { source, target } => write_morphism(&mut out, &d.name, source, target, &d.element),
        }
    }
    for c in &m.certificates {
        match &c.spec {
            CertificateSpec::Ses { inclusion, projection } => {
                writeln!(out, "certificate {} ses {inclusion} {projection}", c.name).unwrap()
            }
            CertificateSpec::Contractible { module } => writeln!(out, "certificate {} contractible {module}", c.name).unwrap(),
        }
    }
    for inv in &m.commands {
        writeln!(out, "run {inv}").unwrap();
    }
    out
}
