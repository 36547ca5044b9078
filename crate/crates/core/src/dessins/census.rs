//! Enumeration of all covers of a given degree and JSON-lines persistence.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::canonical::{automorphism_count, canonical_pair, Conjugators, BRUTE_FORCE_MAX_DEGREE};
use super::perm::{all_permutations, class_representative, cycle_type, is_transitive, partitions, Perm};
use super::Dessin;
use crate::error::{Error, Result};
use crate::parallel::Execution;

pub const DEFAULT_DEGREE_CAP: usize = 8;

/// One isomorphism class of covers, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CensusEntry {
    pub d: usize,
    pub s0: Vec<u32>,
    pub s1: Vec<u32>,
    pub genus: u64,
    pub passport: [Vec<u32>; 3],
    pub aut: u64,
}

impl CensusEntry {
    pub fn from_dessin(t: &Dessin) -> Result<Self> {
        let c = t.canonicalize()?;
        Ok(CensusEntry {
            d: c.degree(),
            genus: c.genus()?,
            passport: c.passport(),
            aut: c.automorphisms()?,
            s0: c.sigma0().to_vec(),
            s1: c.sigma1().to_vec(),
        })
    }

    pub fn dessin(&self) -> Result<Dessin> {
        Dessin::new(self.s0.clone(), self.s1.clone())
    }
}

/// Whether `2 - 2g - (c0 + c1 + c_inf) = -d` for the recorded data.
pub fn census_euler_check(entry: &CensusEntry) -> bool {
    let cycles: usize = entry.passport.iter().map(Vec::len).sum();
    let sums_ok = entry.passport.iter().all(|p| p.iter().map(|&x| x as usize).sum::<usize>() == entry.d);
    sums_ok && 2 - 2 * entry.genus as i64 - cycles as i64 == -(entry.d as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub cap: usize,
    pub execution: Execution,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { cap: DEFAULT_DEGREE_CAP, execution: Execution::default() }
    }
}

/// All isomorphism classes of connected degree-`d` covers, sorted by
/// canonical form, under the default cap.
pub fn enumerate_dessins(d: usize) -> Result<Vec<CensusEntry>> {
    enumerate_dessins_with(d, EnumerationConfig::default())
}

pub fn enumerate_dessins_with(d: usize, config: EnumerationConfig) -> Result<Vec<CensusEntry>> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if d > config.cap {
        return Err(Error::AboveCap { degree: d, cap: config.cap });
    }
    if d > u8::MAX as usize {
        return Err(Error::InvalidInput(format!("degree {d} is too large")));
    }

    // s0 ranges over one representative per cycle type; s1 over the whole
    // group, split by its image of the first point to balance the work.
    let all = all_permutations(d);
    let block = all.len() / d;
    let reps: Vec<Perm> = partitions(d).iter().map(|p| class_representative(p)).collect();
    let tasks: Vec<(usize, usize)> = (0..reps.len()).flat_map(|r| (0..d).map(move |b| (r, b))).collect();
    let conj = (d <= BRUTE_FORCE_MAX_DEGREE).then(|| Conjugators::new(d));

    let chunks = config.execution.map(tasks, |(r, b)| {
        let s0 = &reps[r];
        let mut found: BTreeSet<(Perm, Perm)> = BTreeSet::new();
        for s1 in &all[b * block..(b + 1) * block] {
            if is_transitive(s0, s1) {
                found.insert(canonical_pair(s0, s1, conj.as_ref()));
            }
        }
        found
    });

    let mut merged: BTreeSet<(Perm, Perm)> = BTreeSet::new();
    for c in chunks {
        merged.extend(c);
    }
    let entries = merged
        .into_iter()
        .map(|(a, b)| {
            let t = Dessin::from_zero_based(&a, &b);
            let inf = super::perm::inverse(&super::perm::compose(&a, &b));
            CensusEntry {
                d,
                genus: t.genus().expect("enumerated pairs are transitive"),
                passport: [cycle_type(&a), cycle_type(&b), cycle_type(&inf)],
                aut: automorphism_count(&a, &b),
                s0: t.sigma0().to_vec(),
                s1: t.sigma1().to_vec(),
            }
        })
        .collect();
    Ok(entries)
}

/// First line of a census file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusHeader {
    pub tool: String,
    pub version: String,
    pub cap: usize,
    pub degree: usize,
    pub count: usize,
}

impl CensusHeader {
    pub fn new(degree: usize, cap: usize, count: usize) -> Self {
        CensusHeader {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            cap,
            degree,
            count,
        }
    }
}

/// Writes a header line followed by one sorted entry per line.
pub fn write_census_jsonl<W: Write>(mut w: W, header: &CensusHeader, entries: &[CensusEntry]) -> Result<()> {
    let mut sorted: Vec<&CensusEntry> = entries.iter().collect();
    sorted.sort_by(|a, b| (a.d, &a.s0, &a.s1).cmp(&(b.d, &b.s0, &b.s1)));
    serde_json::to_writer(&mut w, header)?;
    writeln!(w)?;
    for e in sorted {
        serde_json::to_writer(&mut w, e)?;
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_census_jsonl<R: BufRead>(r: R) -> Result<(CensusHeader, Vec<CensusEntry>)> {
    let mut lines = r.lines();
    let header_line = lines.next().ok_or_else(|| Error::Parse("empty census file".into()))??;
    let header: CensusHeader = serde_json::from_str(&header_line)?;
    let mut entries = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let e: CensusEntry = serde_json::from_str(&line)?;
        e.dessin()?;
        entries.push(e);
    }
    Ok((header, entries))
}
