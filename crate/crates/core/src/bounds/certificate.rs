//! Certified inequality steps, certificates built from them, and
//! re-verification from the serialized form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::expr::{Expr, Quantity};
use crate::error::{Error, Result};
use crate::exact::{Precision, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">")]
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Gt => ">",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepStatus {
    Certified,
    /// Certifiably false.
    Refuted,
    /// Undecided at the precision cap.
    Unknown,
}

/// Decides `lhs rel rhs` from the values alone.
pub fn decide(lhs: &Quantity, rel: Relation, rhs: &Quantity) -> StepStatus {
    if let (Some(a), Some(b)) = (lhs.as_exact(), rhs.as_exact()) {
        let holds = match rel {
            Relation::Le => a <= b,
            Relation::Lt => a < b,
            Relation::Eq => a == b,
            Relation::Gt => a > b,
        };
        return if holds { StepStatus::Certified } else { StepStatus::Refuted };
    }
    let (a, b) = (lhs.to_enclosure(), rhs.to_enclosure());
    let (holds, fails) = match rel {
        Relation::Le => (a.hi() <= b.lo(), a.lo() > b.hi()),
        Relation::Lt => (a.hi() < b.lo(), a.lo() >= b.hi()),
        Relation::Gt => (a.lo() > b.hi(), a.hi() <= b.lo()),
        // equality of a non-degenerate enclosure is never certified
        Relation::Eq => (false, !a.intersects(&b)),
    };
    if holds {
        StepStatus::Certified
    } else if fails {
        StepStatus::Refuted
    } else {
        StepStatus::Unknown
    }
}

/// One certified relation between two expressions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    pub lhs: Quantity,
    pub rel: Relation,
    pub rhs: Quantity,
    #[serde(rename = "ref")]
    pub reference: String,
    pub lhs_expr: Expr,
    pub rhs_expr: Expr,
    pub status: StepStatus,
    /// Precision at which the values were produced (bits).
    pub precision: Precision,
}

impl Step {
    /// Evaluates both sides, doubling the precision from `start` until the
    /// relation is decided or the cap is reached.
    pub fn check(
        label: impl Into<String>,
        lhs_expr: Expr,
        rel: Relation,
        rhs_expr: Expr,
        reference: impl Into<String>,
        start: Precision,
    ) -> Result<Step> {
        let mut last = None;
        for p in start.refinements() {
            let lhs = lhs_expr.eval(p)?;
            let rhs = rhs_expr.eval(p)?;
            let status = decide(&lhs, rel, &rhs);
            let exact = lhs.as_exact().is_some() && rhs.as_exact().is_some();
            last = Some((lhs, rhs, status, p));
            if status != StepStatus::Unknown || exact {
                break;
            }
        }
        let (lhs, rhs, status, precision) = last.expect("refinement ladder is never empty");
        Ok(Step {
            label: label.into(),
            lhs,
            rel,
            rhs,
            reference: reference.into(),
            lhs_expr,
            rhs_expr,
            status,
            precision,
        })
    }

    pub fn is_certified(&self) -> bool {
        self.status == StepStatus::Certified
    }

    /// Recomputes both sides at the recorded precision and checks that the
    /// stored values and status are reproduced.
    pub fn reverify(&self) -> Result<bool> {
        let lhs = self.lhs_expr.eval(self.precision)?;
        let rhs = self.rhs_expr.eval(self.precision)?;
        Ok(lhs == self.lhs
            && rhs == self.rhs
            && decide(&self.lhs, self.rel, &self.rhs) == self.status)
    }
}

/// Which proof branch a certificate replays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseDiscriminator {
    NonArithmetic,
    ArithmeticAffine,
    ArithmeticProjective,
}

impl std::str::FromStr for CaseDiscriminator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "non-arithmetic" => Ok(CaseDiscriminator::NonArithmetic),
            "arithmetic-affine" => Ok(CaseDiscriminator::ArithmeticAffine),
            "arithmetic-projective" => Ok(CaseDiscriminator::ArithmeticProjective),
            other => Err(Error::Parse(format!(
                "unknown case '{other}', expected non-arithmetic, arithmetic-affine or arithmetic-projective"
            ))),
        }
    }
}

/// A replayed proof chain: `final` is the right-hand side of the last step,
/// `statement` the closed-form bound it must not exceed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub case: CaseDiscriminator,
    pub inputs: BTreeMap<String, Rational>,
    pub steps: Vec<Step>,
    #[serde(rename = "final")]
    pub final_bound: Rational,
    pub statement: Rational,
    pub verified: bool,
    /// Label of the first step that is not certified.
    pub failing_step: Option<String>,
}

impl BoundCertificate {
    pub(crate) fn assemble(
        case: CaseDiscriminator,
        inputs: BTreeMap<String, Rational>,
        steps: Vec<Step>,
        statement: Rational,
    ) -> Result<Self> {
        let final_bound = steps
            .last()
            .and_then(|s| s.rhs.as_exact().cloned())
            .ok_or_else(|| Error::InvalidInput("a certificate must end in an exact bound".into()))?;
        let failing_step = steps.iter().find(|s| !s.is_certified()).map(|s| s.label.clone());
        let verified = failing_step.is_none() && final_bound <= statement;
        Ok(BoundCertificate { case, inputs, steps, final_bound, statement, verified, failing_step })
    }

    pub fn step(&self, label: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.label == label)
    }

    /// Re-checks every step from its stored expressions and the bookkeeping
    /// fields, without access to the code path that produced it.
    pub fn reverify(&self) -> Result<bool> {
        for s in &self.steps {
            if !s.reverify()? {
                return Ok(false);
            }
        }
        let last_rhs = self.steps.last().and_then(|s| s.rhs.as_exact());
        let all = self.steps.iter().all(Step::is_certified);
        Ok(last_rhs == Some(&self.final_bound) && self.verified == (all && self.final_bound <= self.statement))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
