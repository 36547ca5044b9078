//! Degree-`d` covers of the thrice-punctured line as permutation pairs.
//!
//! A cover is a pair `(s0, s1)` of permutations of `{1..d}` generating a
//! transitive group; `s_inf = (s0 ∘ s1)^-1` is always derived, so the
//! product-one relation holds by construction. Two pairs describe the same
//! cover iff they are simultaneously conjugate.

mod canonical;
mod census;
pub mod perm;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{
    automorphism_count, canonical_pair, conjugate, traversal_labels, traversal_min, Conjugators,
    BRUTE_FORCE_MAX_DEGREE,
};
pub use census::{
    census_euler_check, enumerate_dessins, enumerate_dessins_with, read_census_jsonl,
    write_census_jsonl, CensusEntry, CensusHeader, EnumerationConfig, DEFAULT_DEGREE_CAP,
};

/// A permutation pair in 1-based image-array form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDessin")]
pub struct Dessin {
    s0: Vec<u32>,
    s1: Vec<u32>,
}

#[derive(Deserialize)]
struct RawDessin {
    s0: Vec<u32>,
    s1: Vec<u32>,
}

impl TryFrom<RawDessin> for Dessin {
    type Error = Error;
    fn try_from(r: RawDessin) -> Result<Self> {
        Dessin::new(r.s0, r.s1)
    }
}

fn to_zero_based(p: &[u32]) -> Result<perm::Perm> {
    if p.len() > u8::MAX as usize {
        return Err(Error::InvalidInput(format!("degree {} is too large", p.len())));
    }
    let z: Vec<u8> = p
        .iter()
        .map(|&x| {
            if x >= 1 && (x as usize) <= p.len() {
                Ok((x - 1) as u8)
            } else {
                Err(Error::InvalidInput(format!("image {x} out of range 1..={}", p.len())))
            }
        })
        .collect::<Result<_>>()?;
    if !perm::is_permutation(&z) {
        return Err(Error::InvalidInput(format!("{p:?} is not a permutation")));
    }
    Ok(z)
}

fn to_one_based(p: &[u8]) -> Vec<u32> {
    p.iter().map(|&x| x as u32 + 1).collect()
}

impl Dessin {
    /// Validates that both arrays are permutations of `{1..d}` for the
    /// same `d >= 1`.
    pub fn new(s0: Vec<u32>, s1: Vec<u32>) -> Result<Self> {
        if s0.is_empty() || s0.len() != s1.len() {
            return Err(Error::InvalidInput(format!(
                "permutations must share a positive degree, got {} and {}",
                s0.len(),
                s1.len()
            )));
        }
        to_zero_based(&s0)?;
        to_zero_based(&s1)?;
        Ok(Dessin { s0, s1 })
    }

    pub(crate) fn from_zero_based(s0: &[u8], s1: &[u8]) -> Self {
        Dessin { s0: to_one_based(s0), s1: to_one_based(s1) }
    }

    pub(crate) fn zero_based(&self) -> (perm::Perm, perm::Perm) {
        (
            self.s0.iter().map(|&x| (x - 1) as u8).collect(),
            self.s1.iter().map(|&x| (x - 1) as u8).collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.s0.len()
    }

    pub fn sigma0(&self) -> &[u32] {
        &self.s0
    }

    pub fn sigma1(&self) -> &[u32] {
        &self.s1
    }

    /// `(s0 ∘ s1)^-1`, so that `s0 ∘ s1 ∘ s_inf = id`.
    pub fn sigma_inf(&self) -> Vec<u32> {
        let (a, b) = self.zero_based();
        to_one_based(&perm::inverse(&perm::compose(&a, &b)))
    }

    pub fn is_transitive(&self) -> bool {
        let (a, b) = self.zero_based();
        perm::is_transitive(&a, &b)
    }

    /// Cycle types of `s0`, `s1`, `s_inf`, each in descending order.
    pub fn passport(&self) -> [Vec<u32>; 3] {
        let (a, b) = self.zero_based();
        let inf = perm::inverse(&perm::compose(&a, &b));
        [perm::cycle_type(&a), perm::cycle_type(&b), perm::cycle_type(&inf)]
    }

    /// Genus of the compactified cover, from `2 - 2g = c0 + c1 + c_inf - d`.
    pub fn genus(&self) -> Result<u64> {
        if !self.is_transitive() {
            return Err(Error::InvalidInput("genus is undefined for a disconnected cover".into()));
        }
        let cycles: usize = self.passport().iter().map(Vec::len).sum();
        let twice = 2 + self.degree() as i64 - cycles as i64;
        debug_assert!(twice >= 0 && twice % 2 == 0);
        Ok((twice / 2) as u64)
    }

    /// Representative of the simultaneous-conjugacy class.
    pub fn canonicalize(&self) -> Result<Dessin> {
        if !self.is_transitive() {
            return Err(Error::InvalidInput("canonical form requires a transitive pair".into()));
        }
        let (a, b) = self.zero_based();
        let (c0, c1) = canonical_pair(&a, &b, None);
        Ok(Dessin::from_zero_based(&c0, &c1))
    }

    /// Order of the group of relabelings fixing both permutations.
    pub fn automorphisms(&self) -> Result<u64> {
        if !self.is_transitive() {
            return Err(Error::InvalidInput("automorphisms require a transitive pair".into()));
        }
        let (a, b) = self.zero_based();
        Ok(automorphism_count(&a, &b))
    }

    /// Relabels both permutations by `tau` (1-based: point `x` becomes `tau[x-1]`).
    pub fn conjugated_by(&self, tau: &[u32]) -> Result<Dessin> {
        if tau.len() != self.degree() {
            return Err(Error::InvalidInput("conjugator degree mismatch".into()));
        }
        let t = to_zero_based(tau)?;
        let (a, b) = self.zero_based();
        Ok(Dessin::from_zero_based(&conjugate(&a, &t), &conjugate(&b, &t)))
    }
}

/// Whether `<s0, s1>` has a single orbit.
pub fn is_transitive(t: &Dessin) -> bool {
    t.is_transitive()
}

pub fn genus_of(t: &Dessin) -> Result<u64> {
    t.genus()
}

pub fn canonicalize(t: &Dessin) -> Result<Dessin> {
    t.canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s0: &[u32], s1: &[u32]) -> Dessin {
        Dessin::new(s0.to_vec(), s1.to_vec()).unwrap()
    }

    #[test]
    fn rejects_malformed_pairs() {
        assert!(Dessin::new(vec![1, 1], vec![1, 2]).is_err());
        assert!(Dessin::new(vec![1, 2], vec![1]).is_err());
        assert!(Dessin::new(vec![0, 1], vec![1, 2]).is_err());
        assert!(Dessin::new(vec![], vec![]).is_err());
    }

    #[test]
    fn product_one_relation() {
        let t = ds(&[2, 3, 1, 4], &[1, 4, 3, 2]);
        let (a, b) = t.zero_based();
        let inf: Vec<u8> = t.sigma_inf().iter().map(|&x| (x - 1) as u8).collect();
        assert_eq!(perm::compose(&perm::compose(&a, &b), &inf), perm::identity(4));
    }

    #[test]
    fn transitivity_examples() {
        assert!(!ds(&[1, 2], &[1, 2]).is_transitive());
        assert!(ds(&[2, 1], &[1, 2]).is_transitive());
        assert!(!ds(&[2, 1, 4, 3], &[1, 2, 3, 4]).is_transitive());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(ds(&[1], &[1]).genus().unwrap(), 0);
        assert_eq!(ds(&[2, 1], &[2, 1]).genus().unwrap(), 0);
        // s0 = s1 = (1 2 3 4): s0 s1 = (1 3)(2 4), cycles 1 + 1 + 2
        assert_eq!(ds(&[2, 3, 4, 1], &[2, 3, 4, 1]).genus().unwrap(), 1);
        assert!(ds(&[1, 2], &[1, 2]).genus().is_err());
    }

    #[test]
    fn canonical_form_is_idempotent_and_class_invariant() {
        let t = ds(&[2, 1], &[1, 2]);
        let c = t.canonicalize().unwrap();
        assert_eq!(c.canonicalize().unwrap(), c);
        assert_eq!(t.conjugated_by(&[2, 1]).unwrap().canonicalize().unwrap(), c);
        assert!(ds(&[1, 2], &[1, 2]).canonicalize().is_err());
    }

    #[test]
    fn three_cycles_with_identity_share_a_class() {
        // (1 2 3) and (1 3 2) are conjugate, and the identity stays fixed
        let a = ds(&[2, 3, 1], &[1, 2, 3]).canonicalize().unwrap();
        let b = ds(&[3, 1, 2], &[1, 2, 3]).canonicalize().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, ds(&[2, 3, 1], &[1, 2, 3]));
    }

    #[test]
    fn serde_validates() {
        assert!(serde_json::from_str::<Dessin>(r#"{"s0":[2,1],"s1":[1,2]}"#).is_ok());
        assert!(serde_json::from_str::<Dessin>(r#"{"s0":[2,2],"s1":[1,2]}"#).is_err());
    }
}
