//! Brute-force ground truth over all of `S_n`.
//!
//! Each sweep is split into prefix classes (first two entries) that are
//! enumerated in lexicographic order and merged by addition, so the tables do
//! not depend on how the classes are scheduled.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{lis_length, next_permutation, occurrences_132, Permutation};

pub const DEFAULT_GUARD: usize = 10;

/// Number of permutations of `S_n` per occurrence count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionTable {
    pub n: usize,
    pub counts: BTreeMap<u64, u64>,
}

impl DistributionTable {
    pub fn get(&self, r: u64) -> u64 {
        self.counts.get(&r).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Number of permutations of `S_n` per `(occurrence count, LIS length)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointTable {
    pub n: usize,
    pub counts: BTreeMap<(u64, usize), u64>,
    /// Permutations whose quadratic count was cross-checked against the
    /// cubic listing.
    pub spot_checked: u64,
}

impl JointTable {
    pub fn distribution(&self) -> DistributionTable {
        let mut counts = BTreeMap::new();
        for (&(r, _), &c) in &self.counts {
            *counts.entry(r).or_insert(0) += c;
        }
        DistributionTable { n: self.n, counts }
    }

    /// Permutations with exactly `r` occurrences and no increasing
    /// subsequence of length `k`.
    pub fn restricted(&self, r: u64, k: i64) -> u64 {
        self.counts
            .iter()
            .filter(|(&(occ, lis), _)| occ == r && (lis as i64) < k)
            .map(|(_, &c)| c)
            .sum()
    }
}

fn prefix_classes(n: usize) -> Vec<Vec<u32>> {
    let n32 = n as u32;
    if n < 2 {
        return vec![(1..=n32).collect()];
    }
    (1..=n32)
        .flat_map(|a| (1..=n32).filter(move |&b| b != a).map(move |b| vec![a, b]))
        .collect()
}

/// Counts per `(occurrences, LIS)` and the number of spot checks made.
type ClassTally = (BTreeMap<(u64, usize), u64>, u64);

fn sweep_class(n: usize, prefix: Vec<u32>) -> Result<ClassTally> {
    let mut v = prefix.clone();
    v.extend((1..=n as u32).filter(|x| !prefix.contains(x)));
    let fixed = prefix.len();
    let mut table = BTreeMap::new();
    let mut index = 0u64;
    let mut checked = 0u64;
    loop {
        let p = Permutation::from_vec_unchecked(v.clone());
        let occ = p.count_132();
        if index.is_multiple_of(100) {
            let listed = occurrences_132(&p).len() as u64;
            if listed != occ {
                return Err(Error::SelfCheck(format!(
                    "{p}: count {occ} but {listed} listed"
                )));
            }
            checked += 1;
        }
        *table.entry((occ, lis_length(&v))).or_insert(0) += 1;
        index += 1;
        if !next_permutation(&mut v[fixed..]) {
            break;
        }
    }
    Ok((table, checked))
}

pub fn joint_table_with_guard(n: usize, guard: usize) -> Result<JointTable> {
    if n > guard {
        return Err(Error::Guard { n, guard });
    }
    let parts = par::map_collect(prefix_classes(n), |prefix| sweep_class(n, prefix));
    let mut counts = BTreeMap::new();
    let mut spot_checked = 0;
    for part in parts {
        let (table, checked) = part?;
        spot_checked += checked;
        for (key, c) in table {
            *counts.entry(key).or_insert(0) += c;
        }
    }
    Ok(JointTable {
        n,
        counts,
        spot_checked,
    })
}

pub fn joint_table(n: usize) -> Result<JointTable> {
    joint_table_with_guard(n, DEFAULT_GUARD)
}

pub fn distribution(n: usize) -> Result<DistributionTable> {
    Ok(joint_table(n)?.distribution())
}

pub fn count_exact(n: usize, r: u64) -> Result<u64> {
    Ok(distribution(n)?.get(r))
}

pub fn count_exact_restricted(n: usize, r: u64, k: i64) -> Result<u64> {
    Ok(joint_table(n)?.restricted(r, k))
}
