//! Exhaustive branch-and-bound search for the smallest `|e|` over hyperbolic
//! orbifold signatures.
//!
//! Signatures are grouped into strata by the offset `t = 2g - 2 + r` and the
//! number of cone points `c`. Inside a stratum a hyperbolic signature has
//! `|e| = t + sum (1 - 1/i)`, which depends only on the cone multiset. Cone
//! tuples are walked in non-decreasing order; since each summand grows with
//! its order, a prefix `i_1 <= ... <= i_k` bounds every completion below by
//! filling the remaining slots with `i_k`. That bound prunes siblings, and the
//! supremum `t + partial + remaining` discards branches that can never become
//! hyperbolic. Strata with `t >= 1` or `c >= 5` are settled analytically.

use serde::{Deserialize, Serialize};

use super::signature::OrbifoldSignature;
use crate::exact::Rational;
use crate::parallel::Execution;

/// Strata with `t` in this range and fewer than [`ANALYTIC_CONE_COUNT`]
/// cone points are searched explicitly.
const SEARCHED_OFFSETS: [i64; 3] = [-2, -1, 0];
const ANALYTIC_CONE_COUNT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Search,
    Analytic,
}

/// Minimum of `|e|` over the hyperbolic signatures of one stratum (or of a
/// family of strata when `*_at_least` is set).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub offset: i64,
    pub offset_at_least: bool,
    pub cones: usize,
    pub cones_at_least: bool,
    pub method: Method,
    /// `None` when the stratum holds no hyperbolic signature.
    pub minimum: Option<Rational>,
    pub witnesses: Vec<OrbifoldSignature>,
    /// Hyperbolic cone tuples evaluated by the search.
    pub visited: u64,
}

/// Result of the global search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimumCertificate {
    pub minimum: Rational,
    pub witnesses: Vec<OrbifoldSignature>,
    pub trace: Vec<StratumRecord>,
}

/// Raw outcome of searching one `(t, c)` stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumSearch {
    pub minimum: Option<Rational>,
    /// Minimising cone tuples, ascending inside and in lexicographic order.
    pub cone_tuples: Vec<Vec<u64>>,
    pub visited: u64,
}

fn term(i: u64) -> Rational {
    Rational::new(i as i64 - 1, i as i64).expect("order >= 2")
}

struct Walker<'a, F: FnMut(&[u64], &Rational)> {
    offset: Rational,
    cones: usize,
    best: Option<Rational>,
    argmin: Vec<Vec<u64>>,
    visited: u64,
    prefix: Vec<u64>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u64], &Rational)> Walker<'_, F> {
    fn beats_or_ties(&self, v: &Rational) -> bool {
        self.best.as_ref().is_none_or(|b| v <= b)
    }

    fn record(&mut self, value: Rational) {
        self.visited += 1;
        (self.visit)(&self.prefix, &value);
        match &self.best {
            Some(b) if &value > b => {}
            Some(b) if &value == b => self.argmin.push(self.prefix.clone()),
            _ => {
                self.best = Some(value);
                self.argmin = vec![self.prefix.clone()];
            }
        }
    }

    fn descend(&mut self, partial: Rational) {
        let placed = self.prefix.len();
        let remaining = self.cones - placed;
        if remaining == 0 {
            if partial.is_positive() {
                self.record(partial);
            }
            return;
        }
        // every completion stays below t + partial + remaining
        if !(&partial + &Rational::from(remaining as u64)).is_positive() {
            return;
        }
        let start = self.prefix.last().copied().unwrap_or(2);
        let slots = Rational::from(remaining as u64);
        let mut order = start;
        loop {
            let t = term(order);
            if remaining == 1 {
                let value = &partial + &t;
                if value.is_positive() {
                    // later orders only increase |e|
                    if self.beats_or_ties(&value) {
                        self.prefix.push(order);
                        self.record(value);
                        self.prefix.pop();
                    }
                    return;
                }
            } else {
                let lower = &partial + &(&slots * &t);
                if !self.beats_or_ties(&lower) {
                    return;
                }
                self.prefix.push(order);
                self.descend(&partial + &t);
                self.prefix.pop();
            }
            order += 1;
        }
    }
}

/// Searches the stratum `2g - 2 + r = offset` with exactly `cones` cone
/// points, calling `visit` on every hyperbolic cone tuple it evaluates.
pub fn search_stratum_with<F>(offset: i64, cones: usize, mut visit: F) -> StratumSearch
where
    F: FnMut(&[u64], &Rational),
{
    let mut walker = Walker {
        offset: Rational::from(offset),
        cones,
        best: None,
        argmin: Vec::new(),
        visited: 0,
        prefix: Vec::with_capacity(cones),
        visit: &mut visit,
    };
    let start = walker.offset.clone();
    walker.descend(start);
    StratumSearch { minimum: walker.best, cone_tuples: walker.argmin, visited: walker.visited }
}

pub fn search_stratum(offset: i64, cones: usize) -> StratumSearch {
    search_stratum_with(offset, cones, |_, _| {})
}

/// All `(g, r)` with `2g - 2 + r = offset`.
pub fn realizations(offset: i64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut g = 0i64;
    while 2 * g - 2 <= offset {
        let r = offset + 2 - 2 * g;
        out.push((g as u64, r as u64));
        g += 1;
    }
    out
}

fn expand(offset: i64, tuples: &[Vec<u64>]) -> Vec<OrbifoldSignature> {
    let mut out: Vec<OrbifoldSignature> = realizations(offset)
        .into_iter()
        .flat_map(|(g, r)| {
            tuples
                .iter()
                .map(move |c| OrbifoldSignature::new(g, r, c.clone()).expect("orders >= 2"))
        })
        .collect();
    out.sort();
    out
}

fn searched_record(offset: i64, cones: usize) -> StratumRecord {
    let s = search_stratum(offset, cones);
    StratumRecord {
        offset,
        offset_at_least: false,
        cones,
        cones_at_least: false,
        method: Method::Search,
        witnesses: expand(offset, &s.cone_tuples),
        minimum: s.minimum,
        visited: s.visited,
    }
}

/// Every cone adds at least 1/2, so with `c >= 5` cones and `t >= -2` the
/// minimum is `t + 5/2`, attained by five cones of order 2.
fn many_cones_record(offset: i64) -> StratumRecord {
    let tuple = vec![2u64; ANALYTIC_CONE_COUNT];
    StratumRecord {
        offset,
        offset_at_least: false,
        cones: ANALYTIC_CONE_COUNT,
        cones_at_least: true,
        method: Method::Analytic,
        minimum: Some(Rational::from(offset) + Rational::new(ANALYTIC_CONE_COUNT as i64, 2).expect("non-zero")),
        witnesses: expand(offset, &[tuple]),
        visited: 0,
    }
}

/// For `t >= 1`, `|e| >= t >= 1`, attained at `t = 1` without cones.
fn large_offset_record() -> StratumRecord {
    StratumRecord {
        offset: 1,
        offset_at_least: true,
        cones: 0,
        cones_at_least: true,
        method: Method::Analytic,
        minimum: Some(Rational::one()),
        witnesses: expand(1, &[vec![]]),
        visited: 0,
    }
}

/// Certifies the smallest `|e|` over all hyperbolic orbifold signatures,
/// with every stratum minimum recorded in the trace.
pub fn min_abs_euler_hyperbolic() -> MinimumCertificate {
    min_abs_euler_hyperbolic_with(Execution::default())
}

pub fn min_abs_euler_hyperbolic_with(exec: Execution) -> MinimumCertificate {
    let strata: Vec<(i64, usize)> = SEARCHED_OFFSETS
        .iter()
        .flat_map(|&t| (0..ANALYTIC_CONE_COUNT).map(move |c| (t, c)))
        .collect();
    let mut trace = exec.map(strata, |(t, c)| searched_record(t, c));
    trace.extend(SEARCHED_OFFSETS.iter().map(|&t| many_cones_record(t)));
    trace.push(large_offset_record());

    let minimum = trace
        .iter()
        .filter_map(|r| r.minimum.clone())
        .min()
        .expect("the trace contains hyperbolic strata");
    let mut witnesses: Vec<OrbifoldSignature> = trace
        .iter()
        .filter(|r| r.minimum.as_ref() == Some(&minimum))
        .flat_map(|r| r.witnesses.iter().cloned())
        .collect();
    witnesses.sort();
    witnesses.dedup();
    MinimumCertificate { minimum, witnesses, trace }
}

impl MinimumCertificate {
    pub fn stratum(&self, offset: i64, cones: usize) -> Option<&StratumRecord> {
        self.trace
            .iter()
            .find(|r| !r.offset_at_least && !r.cones_at_least && r.offset == offset && r.cones == cones)
    }
}
