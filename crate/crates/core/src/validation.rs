//! Axiom-violation reports shared by every validator.

use std::fmt;

/// The axiom a structure failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    UnitDegree,
    MultiplicationDegree,
    LeftUnit,
    RightUnit,
    Associativity,
    ActionDegree,
    ActionUnit,
    ActionAssociativity,
    DifferentialDegree,
    CurvatureDegree,
    Leibniz,
    DifferentialSquare,
    CurvatureClosed,
    ModuleLeibniz,
    ModuleCurvature,
    RightModuleLeibniz,
    RightModuleCurvature,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::UnitDegree => "unit-degree",
            Axiom::MultiplicationDegree => "multiplication-degree",
            Axiom::LeftUnit => "left-unit",
            Axiom::RightUnit => "right-unit",
            Axiom::Associativity => "associativity",
            Axiom::ActionDegree => "action-degree",
            Axiom::ActionUnit => "action-unit",
            Axiom::ActionAssociativity => "action-associativity",
            Axiom::DifferentialDegree => "differential-degree",
            Axiom::CurvatureDegree => "curvature-degree",
            Axiom::Leibniz => "leibniz",
            Axiom::DifferentialSquare => "d-squared-equals-curvature-commutator",
            Axiom::CurvatureClosed => "curvature-closed",
            Axiom::ModuleLeibniz => "module-leibniz",
            Axiom::ModuleCurvature => "module-d-squared-equals-h",
            Axiom::RightModuleLeibniz => "right-module-leibniz",
            Axiom::RightModuleCurvature => "right-module-d-squared-equals-minus-h",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Basis labels of the failing instance, e.g. `(u, u, 1)`.
    pub instance: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, instance: impl Into<String>) {
        self.violations.push(Violation { axiom, instance: instance.into() });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn violated_axioms(&self) -> Vec<Axiom> {
        let mut v: Vec<Axiom> = self.violations.iter().map(|x| x.axiom).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn into_result(self) -> Result<(), crate::Error> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "violated {} at {}", v.axiom, v.instance)?;
        }
        Ok(())
    }
}
