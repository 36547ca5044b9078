//! Canonical representatives of simultaneous-conjugacy classes of pairs.
//!
//! Up to degree [`BRUTE_FORCE_MAX_DEGREE`] the representative is the
//! lexicographically smallest `(s0, s1)` over all `d!` relabelings. Above it,
//! a transitive pair is relabeled by a breadth-first walk from each starting
//! point (a relabeling of a transitive pair is fixed by the image of one
//! point), and the smallest of those `d` candidates is kept.

use std::cmp::Ordering;

use super::perm::{all_permutations, inverse, Perm};

pub const BRUTE_FORCE_MAX_DEGREE: usize = 6;

/// Conjugates `p` by the relabeling `tau` (point `x` becomes `tau[x]`).
pub fn conjugate(p: &[u8], tau: &[u8]) -> Perm {
    let mut out = vec![0u8; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[tau[x] as usize] = tau[y as usize];
    }
    out
}

/// Compares `tau p tau^-1` against `best` position by position without
/// materialising the conjugate.
fn cmp_conjugate(p: &[u8], tau: &[u8], tau_inv: &[u8], best: &[u8]) -> Ordering {
    for (j, &b) in best.iter().enumerate() {
        let v = tau[p[tau_inv[j] as usize] as usize];
        match v.cmp(&b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Precomputed relabelings for the brute-force canonical form.
pub struct Conjugators {
    perms: Vec<(Perm, Perm)>,
}

impl Conjugators {
    pub fn new(d: usize) -> Self {
        let perms = all_permutations(d).into_iter().map(|t| {
            let inv = inverse(&t);
            (t, inv)
        });
        Conjugators { perms: perms.collect() }
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, |(t, _)| t.len())
    }

    /// Lexicographically smallest simultaneous conjugate of `(s0, s1)`.
    pub fn lexmin(&self, s0: &[u8], s1: &[u8]) -> (Perm, Perm) {
        let mut best0 = s0.to_vec();
        let mut best1 = s1.to_vec();
        for (tau, inv) in &self.perms {
            match cmp_conjugate(s0, tau, inv, &best0) {
                Ordering::Greater => {}
                Ordering::Less => {
                    best0 = conjugate(s0, tau);
                    best1 = conjugate(s1, tau);
                }
                Ordering::Equal => {
                    if cmp_conjugate(s1, tau, inv, &best1) == Ordering::Less {
                        best1 = conjugate(s1, tau);
                    }
                }
            }
        }
        (best0, best1)
    }
}

/// Relabeling of a transitive pair by a breadth-first walk from `start`,
/// following `s0` before `s1` at each point.
pub fn traversal_labels(s0: &[u8], s1: &[u8], start: usize) -> Perm {
    let d = s0.len();
    let mut label = vec![u8::MAX; d];
    let mut order = Vec::with_capacity(d);
    label[start] = 0;
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for y in [s0[x] as usize, s1[x] as usize] {
            if label[y] == u8::MAX {
                label[y] = order.len() as u8;
                order.push(y);
            }
        }
    }
    debug_assert_eq!(order.len(), d, "pair must be transitive");
    label
}

/// Smallest traversal relabeling, and the number of starting points that
/// reproduce it (the order of the simultaneous centralizer).
pub fn traversal_min(s0: &[u8], s1: &[u8]) -> ((Perm, Perm), u64) {
    let mut best: Option<(Perm, Perm)> = None;
    let mut hits = 0u64;
    for start in 0..s0.len() {
        let tau = traversal_labels(s0, s1, start);
        let cand = (conjugate(s0, &tau), conjugate(s1, &tau));
        match best.as_ref().map(|b| cand.cmp(b)) {
            None | Some(Ordering::Less) => {
                best = Some(cand);
                hits = 1;
            }
            Some(Ordering::Equal) => hits += 1,
            Some(Ordering::Greater) => {}
        }
    }
    (best.expect("degree >= 1"), hits)
}

/// Order of the simultaneous centralizer of a transitive pair.
pub fn automorphism_count(s0: &[u8], s1: &[u8]) -> u64 {
    let tau0 = traversal_labels(s0, s1, 0);
    let reference = (conjugate(s0, &tau0), conjugate(s1, &tau0));
    (0..s0.len())
        .filter(|&v| {
            let tau = traversal_labels(s0, s1, v);
            conjugate(s0, &tau) == reference.0 && conjugate(s1, &tau) == reference.1
        })
        .count() as u64
}

/// Canonical form of a transitive pair; `conj` must match the degree when
/// the brute-force regime applies.
pub fn canonical_pair(s0: &[u8], s1: &[u8], conj: Option<&Conjugators>) -> (Perm, Perm) {
    if s0.len() <= BRUTE_FORCE_MAX_DEGREE {
        match conj {
            Some(c) if c.degree() == s0.len() => c.lexmin(s0, s1),
            _ => Conjugators::new(s0.len()).lexmin(s0, s1),
        }
    } else {
        traversal_min(s0, s1).0
    }
}
