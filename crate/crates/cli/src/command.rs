use std::fmt;
use std::str::FromStr;

use curvedg::bec::{becbec_check, phi, psi_minus, psi_phi_iso, psi_plus};
use curvedg::cdg::{
    coboundaries, cocycles, h_n, hom_degree_range, hom_space, validate_module, validate_ring, CdgModule, HomComplex,
    HomElement,
};
use curvedg::constructions::{cone, totalize, twist, FiniteComplex};
use curvedg::delta::{build_delta_ring, from_delta_module, to_delta_module, upsilon, upsilon_comparison};
use curvedg::graded::ext_graded;
use curvedg::registry::Registry;
use curvedg::second_kind::{
    canonical_ses_certificate, coacyclic_obstruction, contraacyclic_obstruction, default_injective_tests,
    default_projective_tests, ext1_z0, lemma_ext_hom_check, ExtensionCertificate,
};
use curvedg::selftest::{run_selftest, SelftestConfig};
use curvedg::validation::ValidationReport;

use crate::error::{exit, CliError};
use crate::manifest::{write_module, write_morphism, CertificateSpec, Manifest, Resolver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommandName {
    Validate,
    Hom,
    H0,
    Cone,
    Twist,
    Tot,
    Phi,
    Psi,
    BecbecCheck,
    DeltaRing,
    UpsilonRoundtrip,
    Ext1,
    LemmaCheck,
    CertificateVerify,
    Obstruct,
    Selftest,
}

impl CommandName {
    pub const ALL: [CommandName; 16] = [
        CommandName::Validate,
        CommandName::Hom,
        CommandName::H0,
        CommandName::Cone,
        CommandName::Twist,
        CommandName::Tot,
        CommandName::Phi,
        CommandName::Psi,
        CommandName::BecbecCheck,
        CommandName::DeltaRing,
        CommandName::UpsilonRoundtrip,
        CommandName::Ext1,
        CommandName::LemmaCheck,
        CommandName::CertificateVerify,
        CommandName::Obstruct,
        CommandName::Selftest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommandName::Validate => "validate",
            CommandName::Hom => "hom",
            CommandName::H0 => "h0",
            CommandName::Cone => "cone",
            CommandName::Twist => "twist",
            CommandName::Tot => "tot",
            CommandName::Phi => "phi",
            CommandName::Psi => "psi",
            CommandName::BecbecCheck => "becbec-check",
            CommandName::DeltaRing => "delta-ring",
            CommandName::UpsilonRoundtrip => "upsilon-roundtrip",
            CommandName::Ext1 => "ext1",
            CommandName::LemmaCheck => "lemma-check",
            CommandName::CertificateVerify => "certificate-verify",
            CommandName::Obstruct => "obstruct",
            CommandName::Selftest => "selftest",
        }
    }

    /// Argument counts, not counting an optional leading ring scope.
    fn arity(self) -> (usize, usize) {
        match self {
            CommandName::Validate => (0, usize::MAX),
            CommandName::Hom
            | CommandName::H0
            | CommandName::Twist
            | CommandName::BecbecCheck
            | CommandName::Ext1
            | CommandName::LemmaCheck => (2, 2),
            CommandName::Tot => (2, usize::MAX),
            CommandName::Obstruct => (1, 2),
            CommandName::Selftest => (0, 0),
            _ => (1, 1),
        }
    }

    /// Whether a leading ring name may scope bare registry module names.
    fn takes_scope(self) -> bool {
        !matches!(
            self,
            CommandName::Cone
                | CommandName::Twist
                | CommandName::Tot
                | CommandName::DeltaRing
                | CommandName::CertificateVerify
                | CommandName::Selftest
        )
    }

    pub fn usage(self) -> &'static str {
        match self {
            CommandName::Validate => "validate [RING] [MODULE...]",
            CommandName::Hom => "hom [RING] X Y",
            CommandName::H0 => "h0 [RING] X Y",
            CommandName::Cone => "cone MORPHISM",
            CommandName::Twist => "twist MODULE COCHAIN",
            CommandName::Tot => "tot START MORPHISM...",
            CommandName::Phi => "phi [RING] X",
            CommandName::Psi => "psi [RING] X",
            CommandName::BecbecCheck => "becbec-check [RING] X Y",
            CommandName::DeltaRing => "delta-ring RING",
            CommandName::UpsilonRoundtrip => "upsilon-roundtrip [RING] X",
            CommandName::Ext1 => "ext1 [RING] X Y",
            CommandName::LemmaCheck => "lemma-check [RING] X Y",
            CommandName::CertificateVerify => "certificate-verify CERTIFICATE",
            CommandName::Obstruct => "obstruct [RING] X [coacyclic|contraacyclic]",
            CommandName::Selftest => "selftest",
        }
    }
}

impl fmt::Display for CommandName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CommandName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CommandName::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// A command with its raw arguments, as written after `run` in a manifest
/// or on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub command: CommandName,
    pub args: Vec<String>,
}

impl Invocation {
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<Self, String> {
        let (head, rest) = tokens.split_first().ok_or("missing command")?;
        let command: CommandName = head.as_ref().parse()?;
        let args: Vec<String> = rest.iter().map(|s| s.as_ref().to_string()).collect();
        let (min, max) = command.arity();
        let max = if command.takes_scope() { max.saturating_add(1) } else { max };
        if args.len() < min || args.len() > max {
            return Err(format!("usage: {}", command.usage()));
        }
        Ok(Self { command, args })
    }
}

impl fmt::Display for Invocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.command.name())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Success,
    ValidationFailure,
    Rejected,
    Internal,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => exit::SUCCESS,
            Status::ValidationFailure => exit::VALIDATION_FAILURE,
            Status::Rejected => exit::REJECTED,
            Status::Internal => exit::INTERNAL,
        }
    }
}

pub struct Report {
    pub text: String,
    pub status: Status,
}

impl Report {
    fn new() -> Self {
        Self { text: String::new(), status: Status::Success }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Records a boolean check; a failure raises the status to `on_fail`.
    fn check(&mut self, label: &str, ok: bool, on_fail: Status) {
        self.line(format!("{label}: {ok}"));
        if !ok {
            self.status = self.status.max(on_fail);
        }
    }
}

/// A loaded manifest plus the registry it resolves against.
pub struct Session {
    pub manifest: Manifest,
    pub registry: Registry,
    pub seed: u64,
}

impl Session {
    pub fn new(manifest: Manifest, seed: u64) -> Result<Self, CliError> {
        let registry = Registry::with_window(manifest.options.field, manifest.options.window)?;
        Ok(Self { manifest, registry, seed })
    }

    fn resolver(&self) -> Resolver<'_> {
        Resolver { manifest: &self.manifest, registry: &self.registry }
    }

    /// Splits off a leading ring name when the command accepts one.
    fn scoped<'a>(&self, inv: &'a Invocation) -> (Option<&'a str>, &'a [String]) {
        let (min, _) = inv.command.arity();
        match inv.args.split_first() {
            Some((first, rest)) if inv.command.takes_scope() && rest.len() >= min && self.resolver().ring(first).is_some() => {
                (Some(first.as_str()), rest)
            }
            _ => (None, &inv.args),
        }
    }

    fn module(&self, name: &str, scope: Option<&str>) -> Result<CdgModule, CliError> {
        self.resolver().module(name, scope).ok_or_else(|| CliError::Unresolved(name.to_string()))
    }

    fn morphism(&self, name: &str) -> Result<HomElement, CliError> {
        self.manifest
            .morphism(name)
            .map(|m| m.element.clone())
            .ok_or_else(|| CliError::Unresolved(name.to_string()))
    }

    fn pair(&self, scope: Option<&str>, args: &[String]) -> Result<(CdgModule, CdgModule), CliError> {
        let x = self.module(&args[0], scope)?;
        let y = self.module(&args[1], scope)?;
        if !x.same_ring(&y) {
            return Err(curvedg::Error::RingMismatch.into());
        }
        Ok((x, y))
    }

    pub fn run(&self, inv: &Invocation) -> Result<Report, CliError> {
        let (scope, args) = self.scoped(inv);
        let mut r = Report::new();
        r.line(format!("== {inv}"));
        match inv.command {
            CommandName::Validate => self.validate(&mut r, scope, args)?,
            CommandName::Hom => {
                let (x, y) = self.pair(scope, args)?;
                let complex = HomComplex::new(&x, &y)?;
                r.line("degree hom cocycles coboundaries cohomology");
                for &n in &complex.degrees {
                    let row = (hom_space(&x, &y, n)?.dim(), cocycles(&x, &y, n)?.dim(), coboundaries(&x, &y, n)?.dim());
                    r.line(format!("{n} {} {} {} {}", row.0, row.1, row.2, h_n(&x, &y, n)?.dim));
                }
                r.check("d^2 = 0", complex.squares_to_zero(), Status::Internal);
            }
            CommandName::H0 => {
                let (x, y) = self.pair(scope, args)?;
                let range = hom_degree_range(&x, &y);
                let shifts: Vec<i64> = match (range.first(), range.last()) {
                    _ if x.grading().is_z2() => vec![0, 1],
                    (Some(lo), Some(hi)) => (lo - 1..=hi + 1).collect(),
                    _ => Vec::new(),
                };
                r.line(format!("shift dim H0 Hom({}, {}[shift])", args[0], args[1]));
                for n in shifts {
                    r.line(format!("{n} {}", h_n(&x, &y, n)?.dim));
                }
            }
            CommandName::Cone => {
                let f = self.morphism(&args[0])?;
                let c = cone(&f)?;
                let name = format!("cone_{}", args[0]);
                write_module(&mut r.text, &name, &self.resolver().ring_name(c.cone.ring()), &c.cone);
                let exact = (&c.projection.map * &c.inclusion.map).is_zero()
                    && c.inclusion.map.rank() == f.target.dim()
                    && c.projection.map.rank() == f.source.dim();
                r.check("exact", exact, Status::Internal);
            }
            CommandName::Twist => {
                let x = self.module(&args[0], None)?;
                let a = self.morphism(&args[1])?;
                let t = twist(&x, &a)?;
                write_module(&mut r.text, &format!("{}_twisted", args[0]), &self.resolver().ring_name(t.ring()), &t);
            }
            CommandName::Tot => {
                let start: i64 = args[0].parse().map_err(|_| CliError::Usage(format!("bad start position `{}`", args[0])))?;
                let maps = args[1..].iter().map(|n| self.morphism(n)).collect::<Result<Vec<_>, _>>()?;
                let mut terms = vec![maps[0].source.clone()];
                terms.extend(maps.iter().map(|m| m.target.clone()));
                let t = totalize(&FiniteComplex::new(start, terms, maps)?)?;
                write_module(&mut r.text, "tot", &self.resolver().ring_name(t.ring()), &t);
            }
            CommandName::Phi => {
                let x = self.module(&args[0], scope)?;
                let (pb, _) = phi(&x)?;
                let name = format!("phi_{}", args[0]);
                write_module(&mut r.text, &name, &self.resolver().ring_name(x.ring()), &pb.base);
                let sigma = HomElement::new(&pb.base, &pb.base, -1, pb.sigma.clone())?;
                write_morphism(&mut r.text, "sigma", &name, &name, &sigma);
                r.check("sigma^2 = 0", (&pb.sigma * &pb.sigma).is_zero(), Status::Internal);
                let d = pb.base.d();
                r.check("d sigma + sigma d = id", (&(d * &pb.sigma) + &(&pb.sigma * d)).is_identity(), Status::Internal);
            }
            CommandName::Psi => {
                let x = self.module(&args[0], scope)?;
                let (pb, _) = phi(&x)?;
                r.line(format!("dim Psi+(Phi X) = {}", psi_plus(&pb).dim()));
                r.line(format!("dim Psi-(Phi X) = {}", psi_minus(&pb)?.dim()));
                r.check("Psi+(Phi X) isomorphic to Xi(X)", psi_phi_iso(&x).is_ok(), Status::Internal);
            }
            CommandName::BecbecCheck => {
                let (x, y) = self.pair(scope, args)?;
                r.line("degree source target equal");
                let mut ok = true;
                for n in hom_degree_range(&x, &y) {
                    let c = becbec_check(&x, &y, n)?;
                    ok &= c.passed();
                    r.line(format!("{n} {} {} {}", c.source_dim, c.target_dim, c.passed()));
                }
                r.check("fully faithful on these degrees", ok, Status::Internal);
            }
            CommandName::DeltaRing => {
                let (ring, _) = self.resolver().ring(&args[0]).ok_or_else(|| CliError::Unresolved(args[0].clone()))?;
                let delta = build_delta_ring(&ring)?;
                let space = delta.algebra.space();
                r.line(format!("dim {} (base {})", delta.algebra.dim(), ring.dim()));
                let basis: Vec<String> = (0..space.dim()).map(|i| format!("{}:{}", space.label(i), space.degree(i))).collect();
                r.line(format!("basis {}", basis.join(" ")));
                r.check("relations", delta.validate().is_valid(), Status::Internal);
                for (g, h) in delta.partial_cohomology() {
                    r.line(format!("H^{g}(partial) = {h}"));
                }
                r.check("acyclic", delta.is_acyclic(), Status::Internal);
            }
            CommandName::UpsilonRoundtrip => {
                let x = self.module(&args[0], scope)?;
                let delta = build_delta_ring(x.ring())?;
                let back = from_delta_module(&delta, &to_delta_module(&delta, &x)?)?;
                r.check("CDG-module to R[delta]-module and back is the identity", back == x, Status::Internal);
                let ub = upsilon(x.ring(), x.module())?;
                let (_, map) = upsilon_comparison(&ub)?;
                r.line(format!("dim Upsilon(X#) = {}", ub.dim()));
                r.check("Upsilon comparison bijective", map.inverse().is_some(), Status::Internal);
            }
            CommandName::Ext1 => {
                let (x, y) = self.pair(scope, args)?;
                r.line(format!("dim Ext1 in Z0 = {}", ext1_z0(&x, &y)?));
                r.line(format!("dim Ext1 graded = {}", ext_graded(x.module(), y.module(), 1)?));
            }
            CommandName::LemmaCheck => {
                let (x, y) = self.pair(scope, args)?;
                let rep = lemma_ext_hom_check(&x, &y)?;
                r.line(rep.to_string().trim_end());
                r.check("lemma holds", rep.passed(), Status::Internal);
            }
            CommandName::CertificateVerify => self.certificate(&mut r, &args[0])?,
            CommandName::Obstruct => {
                let x = self.module(&args[0], scope)?;
                let which = args.get(1).map(String::as_str);
                if !matches!(which, None | Some("coacyclic") | Some("contraacyclic")) {
                    return Err(CliError::Usage(format!("usage: {}", inv.command.usage())));
                }
                let mut refuted = false;
                if which != Some("contraacyclic") {
                    let rep = coacyclic_obstruction(&x, &default_injective_tests(&x))?;
                    r.line("coacyclic (Hom in H0 to graded-injective tests)");
                    r.line(rep.to_string());
                    refuted |= rep.refuted();
                }
                if which != Some("coacyclic") {
                    let rep = contraacyclic_obstruction(&x, &default_projective_tests(&x))?;
                    r.line("contraacyclic (Hom in H0 from graded-projective tests)");
                    r.line(rep.to_string());
                    refuted |= rep.refuted();
                }
                if refuted {
                    r.status = Status::Rejected;
                }
            }
            CommandName::Selftest => {
                let config = SelftestConfig {
                    seed: self.seed,
                    field: self.manifest.options.field,
                    window_cap: self.manifest.options.window,
                    ..SelftestConfig::default()
                };
                let rep = run_selftest(&config)?;
                r.text.push_str(&rep.render());
                if !rep.passed() {
                    r.status = Status::Internal;
                }
            }
        }
        Ok(r)
    }

    fn validate(&self, r: &mut Report, scope: Option<&str>, args: &[String]) -> Result<(), CliError> {
        let mut entries: Vec<(String, ValidationReport)> = Vec::new();
        let ring_report = |ring: &curvedg::cdg::CdgRing| validate_ring(ring.algebra(), ring.d(), ring.h());
        let module_report = |m: &CdgModule| validate_module(m.ring(), m.module(), m.d());
        if scope.is_none() && args.is_empty() {
            for e in &self.registry.entries {
                entries.push((format!("ring {}", e.kind), ring_report(&e.ring)));
                for m in &e.modules {
                    entries.push((format!("module {}:{}", e.kind, m.name), module_report(&m.module)));
                }
            }
            for d in &self.manifest.rings {
                entries.push((format!("ring {}", d.name), ring_report(&d.ring)));
            }
            for d in &self.manifest.modules {
                entries.push((format!("module {}", d.name), module_report(&d.module)));
            }
        }
        if let Some(ring) = scope {
            let (rg, kind) = self.resolver().ring(ring).expect("scope resolves");
            entries.push((format!("ring {ring}"), ring_report(&rg)));
            if args.is_empty() {
                if let Some(kind) = kind {
                    for m in &self.registry.entry(kind).modules {
                        entries.push((format!("module {ring}:{}", m.name), module_report(&m.module)));
                    }
                }
                for d in self.manifest.modules.iter().filter(|d| d.module.ring() == &rg) {
                    entries.push((format!("module {}", d.name), module_report(&d.module)));
                }
            }
        }
        for name in args {
            let m = self.module(name, scope)?;
            entries.push((format!("module {name}"), module_report(&m)));
        }
        for (label, rep) in entries {
            if rep.is_valid() {
                r.line(format!("{label}: valid"));
            } else {
                r.line(format!("{label}: invalid"));
                for v in &rep.violations {
                    r.line(format!("  violated {} at {}", v.axiom, v.instance));
                }
                r.status = r.status.max(Status::ValidationFailure);
            }
        }
        Ok(())
    }

    fn certificate(&self, r: &mut Report, name: &str) -> Result<(), CliError> {
        let def = self.manifest.certificate(name).ok_or_else(|| CliError::Unresolved(name.to_string()))?;
        let cert = match &def.spec {
            CertificateSpec::Ses { inclusion, projection } => {
                let (i, p) = (self.morphism(inclusion)?, self.morphism(projection)?);
                match canonical_ses_certificate(&i, &p) {
                    Ok(c) => Some(c),
                    Err(curvedg::Error::InvalidComplex(reason)) => {
                        r.line(format!("certificate {name}: rejected: {reason}"));
                        r.status = Status::Rejected;
                        return Ok(());
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            CertificateSpec::Contractible { module } => ExtensionCertificate::contractible(&self.module(module, None)?)?,
        };
        let Some(cert) = cert else {
            r.line(format!("certificate {name}: rejected: no contracting homotopy exists"));
            r.status = Status::Rejected;
            return Ok(());
        };
        match cert.verify() {
            Ok(()) => r.line(format!(
                "certificate {name}: verified; steps {}; target dim {}",
                cert.steps.len(),
                cert.target.dim()
            )),
            Err(fail) => {
                r.line(format!("certificate {name}: rejected at {fail}"));
                r.status = Status::Rejected;
            }
        }
        Ok(())
    }
}
