//! Small expression language for the two sides of a certified inequality.
//!
//! Rational-only subtrees evaluate exactly; anything touching `pi`, `ln`,
//! `exp` or `sqrt` evaluates to a certified enclosure at the requested
//! precision.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{enclose_exp, enclose_log, enclose_pi, enclose_sqrt, Precision, Rational, RealEnclosure};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    Const(Rational),
    Pi,
    Ln(Box<Expr>),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// An exact value or a certified enclosure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Exact(Rational),
    Enclosure(RealEnclosure),
}

impl Quantity {
    pub fn to_enclosure(&self) -> RealEnclosure {
        match self {
            Quantity::Exact(r) => RealEnclosure::point(r.clone()),
            Quantity::Enclosure(e) => e.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Quantity::Exact(r) => Some(r),
            Quantity::Enclosure(_) => None,
        }
    }

    /// Upper endpoint (the value itself when exact).
    pub fn upper(&self) -> Rational {
        match self {
            Quantity::Exact(r) => r.clone(),
            Quantity::Enclosure(e) => e.hi().clone(),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{r}"),
            Quantity::Enclosure(e) => write!(f, "{e}"),
        }
    }
}

pub fn c(v: impl Into<Rational>) -> Expr {
    Expr::Const(v.into())
}

impl std::ops::Div for Expr {
    type Output = Expr;

    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl Expr {
    pub fn ln(self) -> Expr {
        Expr::Ln(Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    /// `2 * pi`.
    pub fn two_pi() -> Expr {
        Expr::Mul(vec![c(2), Expr::Pi])
    }

    /// Evaluates exactly where possible, otherwise to an enclosure whose
    /// endpoints are rounded outward to a few guard bits above `p`.
    pub fn eval(&self, p: Precision) -> Result<Quantity> {
        let guard = p.bits() + 16;
        Ok(match self {
            Expr::Const(r) => Quantity::Exact(r.clone()),
            Expr::Pi => Quantity::Enclosure(enclose_pi(p)),
            Expr::Ln(x) => Quantity::Enclosure(match x.eval(p)? {
                Quantity::Exact(r) => enclose_log(&r, p)?,
                Quantity::Enclosure(e) => e.ln(p)?,
            }),
            Expr::Exp(x) => Quantity::Enclosure(match x.eval(p)? {
                Quantity::Exact(r) => enclose_exp(&r, p),
                Quantity::Enclosure(e) => e.exp(p),
            }),
            Expr::Sqrt(x) => Quantity::Enclosure(match x.eval(p)? {
                Quantity::Exact(r) => enclose_sqrt(&r, p)?,
                Quantity::Enclosure(e) => e.sqrt(p)?,
            }),
            Expr::Add(xs) => fold(xs, p, Rational::zero(), |a, b| a + b, |a, b| a.add(b), guard)?,
            Expr::Mul(xs) => fold(xs, p, Rational::one(), |a, b| a * b, |a, b| a.mul(b), guard)?,
            Expr::Div(a, b) => match (a.eval(p)?, b.eval(p)?) {
                (Quantity::Exact(x), Quantity::Exact(y)) => Quantity::Exact(x.checked_div(&y)?),
                (x, y) => Quantity::Enclosure(x.to_enclosure().div(&y.to_enclosure())?.round_outward(guard)),
            },
            Expr::Pow(x, k) => match x.eval(p)? {
                Quantity::Exact(r) => Quantity::Exact(r.powu(*k)),
                Quantity::Enclosure(e) => Quantity::Enclosure(e.powi_rounded(*k, guard)),
            },
        })
    }
}

fn fold(
    xs: &[Expr],
    p: Precision,
    unit: Rational,
    exact: impl Fn(&Rational, &Rational) -> Rational,
    interval: impl Fn(&RealEnclosure, &RealEnclosure) -> RealEnclosure,
    guard: u32,
) -> Result<Quantity> {
    let mut acc = Quantity::Exact(unit);
    for x in xs {
        acc = match (acc, x.eval(p)?) {
            (Quantity::Exact(a), Quantity::Exact(b)) => Quantity::Exact(exact(&a, &b)),
            (a, b) => Quantity::Enclosure(interval(&a.to_enclosure(), &b.to_enclosure()).round_outward(guard)),
        };
    }
    Ok(acc)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[Expr], op: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Const(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Expr::Const(r) => write!(f, "{r}"),
            Expr::Pi => write!(f, "pi"),
            Expr::Ln(x) => write!(f, "ln{x}"),
            Expr::Exp(x) => write!(f, "exp{x}"),
            Expr::Sqrt(x) => write!(f, "sqrt{x}"),
            Expr::Add(xs) => join(f, xs, "+"),
            Expr::Mul(xs) => join(f, xs, "*"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(x, k) => write!(f, "{x}^{k}"),
        }
    }
}
