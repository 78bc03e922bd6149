//! Permutations in one-line notation and the 132-pattern primitives built on
//! top of them.
//!
//! Positions and values are 1-based in the public API. Internally the values
//! are stored as a plain `Vec<u32>`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

/// Positions `(i, j, k)` with `i < j < k` and `π(i) < π(k) < π(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub positions: [usize; 3],
}

impl Permutation {
    pub fn new<I>(values: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let raw: Vec<i64> = values.into_iter().map(Into::into).collect();
        let n = raw.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(n);
        for v in raw {
            if v < 1 || v as u64 > n as u64 {
                return Err(Error::OutOfRange { value: v, len: n });
            }
            if seen[v as usize] {
                return Err(Error::Duplicate(v));
            }
            seen[v as usize] = true;
            out.push(v as u32);
        }
        Ok(Permutation(out))
    }

    /// Caller guarantees `values` is a rearrangement of `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.iter().copied()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u32 {
        self.0[pos - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: u32) -> usize {
        self.0
            .iter()
            .position(|&v| v == value)
            .expect("value in range")
            + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation(inv)
    }

    pub fn occurrences_132(&self) -> Vec<Occurrence> {
        occurrences_132(self)
    }

    pub fn count_132(&self) -> u64 {
        let rank: Vec<usize> = self.0.iter().map(|&v| v as usize - 1).collect();
        count_132_ranked(&rank)
    }

    pub fn lis_length(&self) -> usize {
        lis_length(&self.0)
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl TryFrom<Vec<i64>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<i64>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Digit string for `n <= 9`, comma-separated integers otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Accepts both the digit-string and the comma-separated form. Whitespace
/// separated integers are accepted too.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        let values: Vec<i64> = if s.contains(',') || s.contains(char::is_whitespace) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(i64::from).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

/// All 132 occurrences in lexicographic order of `(i, j, k)`. Cubic scan.
pub fn occurrences_132(p: &Permutation) -> Vec<Occurrence> {
    let v = p.values();
    let n = v.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if v[j] <= v[i] {
                continue;
            }
            for k in j + 1..n {
                if v[i] < v[k] && v[k] < v[j] {
                    out.push(Occurrence {
                        positions: [i + 1, j + 1, k + 1],
                    });
                }
            }
        }
    }
    out
}

/// Number of 132 occurrences in a sequence of distinct values.
///
/// Quadratic: for every pair `j < k` with `v[k] < v[j]` add the number of
/// entries left of `j` that are smaller than `v[k]`. The left-smaller counts
/// are maintained per value threshold while sweeping `j`.
pub fn count_132<T: Ord>(v: &[T]) -> u64 {
    let n = v.len();
    if n < 3 {
        return 0;
    }
    count_132_ranked(&ranks(v))
}

/// `rank` is a permutation of `0..n`.
fn count_132_ranked(rank: &[usize]) -> u64 {
    let n = rank.len();
    if n < 3 {
        return 0;
    }
    // below[t] = #{i < j : rank[i] < t}, updated as j advances.
    let mut below = vec![0u64; n + 1];
    let mut total = 0u64;
    for j in 0..n {
        for k in j + 1..n {
            if rank[k] < rank[j] {
                total += below[rank[k]];
            }
        }
        for b in &mut below[rank[j] + 1..] {
            *b += 1;
        }
    }
    total
}

fn ranks<T: Ord>(v: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].cmp(&v[b]));
    let mut rank = vec![0usize; v.len()];
    for (r, &i) in idx.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

/// Order-isomorphic permutation of `S_{len}`.
pub fn reduce_to_pattern<T: Ord + Copy + Into<i64>>(values: &[T]) -> Result<Permutation> {
    let rank = ranks(values);
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].cmp(&values[b]));
    if let Some(w) = idx.windows(2).find(|w| values[w[0]] == values[w[1]]) {
        return Err(Error::Duplicate(values[w[0]].into()));
    }
    Ok(Permutation(
        rank.into_iter().map(|r| r as u32 + 1).collect(),
    ))
}

/// Length of the longest strictly increasing subsequence (patience sorting).
pub fn lis_length<T: Ord + Copy>(values: &[T]) -> usize {
    let mut tails: Vec<T> = Vec::new();
    for &x in values {
        match tails.binary_search(&x) {
            Ok(_) => {}
            Err(at) if at == tails.len() => tails.push(x),
            Err(at) => tails[at] = x,
        }
    }
    tails.len()
}

/// True iff `p` has no increasing subsequence of length `k`. Every
/// permutation, the empty one included, is rejected for `k <= 0`.
pub fn avoids_monotone(p: &Permutation, k: i64) -> bool {
    k > 0 && (p.lis_length() as i64) < k
}

/// Lexicographic successor in place; false once `v` is the last arrangement.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every permutation of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut cur: Option<Vec<u32>> = Some((1..=n as u32).collect());
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            cur = Some(next);
        }
        Some(Permutation(out))
    })
}
