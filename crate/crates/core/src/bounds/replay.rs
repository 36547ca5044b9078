//! Step-by-step replay of the height-bound chains, and the grid of
//! auxiliary numeric inequalities they rely on.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::certificate::{BoundCertificate, CaseDiscriminator, Relation, Step, StepStatus};
use super::expr::{c, Expr};
use super::{
    affine_arithmetic_height_bound, arithmetic_affine_cover_bounds, arithmetic_projective_isogeny_bounds,
    isogeny_degree_bound_nonarithmetic, main_theorem_bound, pow10, pow2,
};
use crate::error::{Error, Result};
use crate::exact::{Precision, Rational};
use crate::parallel::Execution;

/// Inputs of a certificate replay. Euler characteristics carry their sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremInputs {
    pub case: CaseDiscriminator,
    pub g_x: u64,
    pub g_y: u64,
    pub e_x: i64,
    pub e_y: i64,
    pub deg_b_x: u64,
}

fn punctures(g: u64, e: i64, name: &str) -> Result<u64> {
    if e >= 0 {
        return Err(Error::NonHyperbolic(format!("e_{name} = {e} must be negative")));
    }
    let r = 2 - 2 * g as i64 - e;
    if r < 0 {
        return Err(Error::InvalidInput(format!(
            "genus {g} and e_{name} = {e} are inconsistent: 2 - 2g - e = {r} < 0"
        )));
    }
    Ok(r as u64)
}

impl TheoremInputs {
    fn validate(&self) -> Result<()> {
        if self.deg_b_x == 0 {
            return Err(Error::InvalidInput("Belyi degree must be at least 1".into()));
        }
        let r_x = punctures(self.g_x, self.e_x, "X")?;
        match self.case {
            CaseDiscriminator::ArithmeticAffine => {
                if r_x == 0 {
                    return Err(Error::InvalidInput("the affine branch needs at least one puncture on X".into()));
                }
            }
            CaseDiscriminator::ArithmeticProjective => {
                let r_y = punctures(self.g_y, self.e_y, "Y")?;
                if r_x != 0 || r_y != 0 {
                    return Err(Error::InvalidInput("the projective branch needs r = 0 on both curves".into()));
                }
                if self.g_x < 2 || self.g_y < 2 {
                    return Err(Error::InvalidInput("the projective branch needs both genera >= 2".into()));
                }
            }
            CaseDiscriminator::NonArithmetic => {
                punctures(self.g_y, self.e_y, "Y")?;
            }
        }
        Ok(())
    }

    fn record(&self) -> BTreeMap<String, Rational> {
        let mut m = BTreeMap::new();
        m.insert("g_X".into(), Rational::from(self.g_x));
        m.insert("e_X".into(), Rational::from(self.e_x));
        if self.case != CaseDiscriminator::ArithmeticAffine {
            m.insert("g_Y".into(), Rational::from(self.g_y));
            m.insert("e_Y".into(), Rational::from(self.e_y));
            m.insert("deg_B_X".into(), Rational::from(self.deg_b_x));
        }
        m
    }
}

fn k(v: Rational) -> Expr {
    Expr::Const(v)
}

/// Replays the chain for the given branch. Steps that stay undecided at
/// the precision cap leave the certificate unverified, with the first such
/// step named in `failing_step`.
pub fn replay_theorem_certificate(inputs: &TheoremInputs, p: Precision) -> Result<BoundCertificate> {
    inputs.validate()?;
    match inputs.case {
        CaseDiscriminator::ArithmeticAffine => affine_chain(inputs, p),
        _ => isogeny_chain(inputs, p),
    }
}

fn affine_chain(inputs: &TheoremInputs, p: Precision) -> Result<BoundCertificate> {
    let g = inputs.g_x;
    let e = Rational::from(inputs.e_x);
    let a = e.abs();
    let (d1, d2) = arithmetic_affine_cover_bounds(g, &e)?;
    let log_term = Expr::Mul(vec![Expr::two_pi(), k(d2.clone())]).ln();
    let cap = pow2(2 * g + 5);
    let belyi_part = k(pow10(9) * d1.powu(6));
    let combined = pow10(9) * &cap * d1.powu(6);
    let proof_bound = pow10(285) * pow2(14 * g + 23) * a.powu(6);
    let statement = affine_arithmetic_height_bound(&e)?;

    let steps = vec![
        Step::check(
            "absorbed logarithm",
            log_term.clone(),
            Relation::Le,
            k(cap.clone()),
            "finite-morphism height bound applied to the cover of degree 2^(2g+2)",
            p,
        )?,
        Step::check(
            "height after the finite morphism",
            Expr::Add(vec![belyi_part.clone(), Expr::Mul(vec![k(d1.clone()), log_term])]),
            Relation::Le,
            Expr::Add(vec![belyi_part, k(&d1 * &cap)]),
            "Belyi-degree height bound plus the finite-morphism correction",
            p,
        )?,
        Step::check(
            "merge into a single power",
            Expr::Add(vec![k(pow10(9) * d1.powu(6)), k(&d1 * &cap)]),
            Relation::Le,
            k(combined.clone()),
            "Belyi map degree is at least 1",
            p,
        )?,
        Step::check(
            "substitute the Belyi map degree",
            k(combined),
            Relation::Eq,
            k(proof_bound.clone()),
            "affine arithmetic cover bounds",
            p,
        )?,
        Step::check(
            "genus at most |e|",
            c(g),
            Relation::Le,
            k(a.clone()),
            "hyperbolicity",
            p,
        )?,
        Step::check("2^23 <= 10^8", c(2).pow(23), Relation::Le, c(10).pow(8), "power comparison", p)?,
        Step::check(
            "affine arithmetic height bound",
            k(proof_bound),
            Relation::Le,
            k(statement.clone()),
            "genus at most |e| and 2^23 <= 10^8",
            p,
        )?,
    ];
    BoundCertificate::assemble(inputs.case, inputs.record(), steps, statement)
}

fn isogeny_chain(inputs: &TheoremInputs, p: Precision) -> Result<BoundCertificate> {
    let e_x = Rational::from(inputs.e_x);
    let e_y = Rational::from(inputs.e_y);
    let a = e_x.abs();
    let b = e_y.abs();
    let deg_b = Rational::from(inputs.deg_b_x);
    let kk = pow10(48) * pow2(2 * inputs.e_x.unsigned_abs() + 2 * inputs.e_y.unsigned_abs());
    let p_x = &kk * &b;
    let p_y = &kk * &a;
    let two_k = &kk / &pow10(48);

    let (d_x, d_y, source) = match inputs.case {
        CaseDiscriminator::NonArithmetic => {
            let d = isogeny_degree_bound_nonarithmetic(&e_x, &e_y)?;
            (d.bound_pi_x, d.bound_pi_y, "non-arithmetic isogeny degree bound")
        }
        _ => {
            let d = arithmetic_projective_isogeny_bounds(inputs.g_x, inputs.g_y)?;
            (d.bound_pi_x, d.bound_pi_y, "arithmetic projective isogeny degree bound")
        }
    };
    let belyi_c = &p_x * &deg_b;
    let log_term = Expr::Mul(vec![Expr::two_pi(), k(p_y.clone())]).ln();
    let after_logs = pow10(50) * &two_k * &a * belyi_c.powu(6);
    let proof_bound = pow10(338) * two_k.powu(7) * &a * b.powu(6) * deg_b.powu(6);
    let statement = main_theorem_bound(&e_x, &e_y, inputs.deg_b_x)?;
    let affine_y = affine_arithmetic_height_bound(&e_y)?;

    let steps = vec![
        Step::check("degree of pi_X", k(d_x), Relation::Le, k(p_x.clone()), source, p)?,
        Step::check("degree of pi_Y", k(d_y), Relation::Le, k(p_y.clone()), source, p)?,
        Step::check(
            "Belyi degree of the common cover",
            Expr::Mul(vec![k(p_x.clone()), k(deg_b.clone())]),
            Relation::Eq,
            k(belyi_c.clone()),
            "Belyi degree of a finite etale cover",
            p,
        )?,
        Step::check("2 pi <= 10", Expr::two_pi(), Relation::Le, c(10), "numeric constant", p)?,
        Step::check(
            "absorbed logarithm",
            log_term.clone(),
            Relation::Le,
            k(Rational::from(10) * &p_y),
            "ln x <= x",
            p,
        )?,
        Step::check(
            "height after the finite morphism",
            Expr::Add(vec![k(pow10(9) * belyi_c.powu(6)), Expr::Mul(vec![k(belyi_c.clone()), log_term])]),
            Relation::Le,
            k(after_logs.clone()),
            "Belyi-degree height bound plus the finite-morphism correction",
            p,
        )?,
        Step::check(
            "affine arithmetic branch",
            k(affine_y),
            Relation::Le,
            k(statement.clone()),
            "affine arithmetic height bound for Y",
            p,
        )?,
        Step::check("2^23 <= 10^8", c(2).pow(23), Relation::Le, c(10).pow(8), "power comparison", p)?,
        Step::check(
            "substitute the Belyi degree",
            k(after_logs),
            Relation::Eq,
            k(proof_bound),
            "Belyi degree of the common cover",
            p,
        )?,
    ];
    BoundCertificate::assemble(inputs.case, inputs.record(), steps, statement)
}

/// Per-item outcomes of a batch of certified numeric inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub items: Vec<Step>,
    pub certified: usize,
    pub refuted: usize,
    pub unknown: usize,
    pub all_certified: bool,
}

impl InequalityReport {
    pub fn from_items(items: Vec<Step>) -> Self {
        let count = |s: StepStatus| items.iter().filter(|i| i.status == s).count();
        let certified = count(StepStatus::Certified);
        let refuted = count(StepStatus::Refuted);
        let unknown = count(StepStatus::Unknown);
        InequalityReport { all_certified: certified == items.len(), certified, refuted, unknown, items }
    }

    /// Largest precision any item needed.
    pub fn max_precision(&self) -> Option<Precision> {
        self.items.iter().map(|i| i.precision).max_by_key(|p| p.bits())
    }
}

/// `4 (50^n e^-70)^(3/2) / (2 pi)^(2n)`.
pub(crate) fn odlyzko_quotient(n: u64) -> Expr {
    let floor = Expr::Mul(vec![k(Rational::from(50).powu(n as u32)), c(-70).exp()]);
    Expr::Mul(vec![c(4), floor.pow(3).sqrt()]) / Expr::two_pi().pow(2 * n as u32)
}

/// `50^(3/2)` against `(2 pi)^2`.
pub(crate) fn odlyzko_ratio_step(p: Precision) -> Result<Step> {
    Step::check(
        "50^(3/2) > (2 pi)^2",
        c(50).pow(3).sqrt(),
        Relation::Gt,
        Expr::two_pi().pow(2),
        "growth factor of the discriminant floor",
        p,
    )
}

pub(crate) fn odlyzko_step(n: u64, p: Precision) -> Result<Step> {
    Step::check(
        format!("4 (50^n e^-70)^(3/2) / (2 pi)^(2n) > 10^-46 (n = {n})"),
        odlyzko_quotient(n),
        Relation::Gt,
        Expr::Const(Rational::from(10).pow(-46)?),
        "discriminant floor in the covolume bound",
        p,
    )
}

pub fn verify_proof_inequalities(g_range: RangeInclusive<u64>, p: Precision) -> Result<InequalityReport> {
    verify_proof_inequalities_with(g_range, p, Execution::default())
}

/// Certifies, for every `g` in the range, `ln(2 pi 2^(2g+2)) <= 2^(2g+5)`
/// and (for `n = g >= 1`) the discriminant-floor inequality, plus the
/// growth factor `50^(3/2) > (2 pi)^2` and `e^-105 > 10^-46` once.
pub fn verify_proof_inequalities_with(
    g_range: RangeInclusive<u64>,
    p: Precision,
    exec: Execution,
) -> Result<InequalityReport> {
    #[derive(Clone, Copy)]
    enum Item {
        Log(u64),
        Ratio,
        ExpFloor,
        Floor(u64),
    }
    let mut items: Vec<Item> = g_range.clone().map(Item::Log).collect();
    items.push(Item::Ratio);
    items.push(Item::ExpFloor);
    items.extend(g_range.filter(|&n| n >= 1).map(Item::Floor));
    let steps = exec.map(items, |it| match it {
        Item::Log(g) => Step::check(
            format!("ln(2 pi 2^(2g+2)) <= 2^(2g+5) (g = {g})"),
            Expr::Mul(vec![Expr::two_pi(), k(pow2(2 * g + 2))]).ln(),
            Relation::Le,
            k(pow2(2 * g + 5)),
            "absorbed logarithm in the affine arithmetic chain",
            p,
        ),
        Item::Ratio => odlyzko_ratio_step(p),
        Item::ExpFloor => Step::check(
            "exp(-70 * 3/2) > 10^-46",
            c(-105).exp(),
            Relation::Gt,
            Expr::Const(Rational::from(10).pow(-46)?),
            "discriminant floor in the covolume bound",
            p,
        ),
        Item::Floor(n) => odlyzko_step(n, p),
    });
    Ok(InequalityReport::from_items(steps.into_iter().collect::<Result<_>>()?))
}
