//! Kernel shape catalogs.
//!
//! A kernel shape of capacity `c` has size at most `2c + 1`, and the only
//! shape reaching that bound is the exceptional one built by
//! [`exceptional_shape`]. A catalog for budget `r` therefore consists of all
//! kernel permutations of size `<= 2r` and capacity `<= r`, found by a
//! backtracking search, plus the exceptional shape of size `2r + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::KernelShapeRecord;
use crate::par;
use crate::perm::Permutation;

pub const CATALOG_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeCatalog {
    pub max_occ: u32,
    /// Sorted by size, then lexicographically by shape.
    pub records: Vec<KernelShapeRecord>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format_version: u32,
    max_occ: u32,
}

impl ShapeCatalog {
    fn from_shapes(max_occ: u32, shapes: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let set: BTreeSet<(usize, Permutation)> =
            shapes.into_iter().map(|p| (p.len(), p)).collect();
        let records = set
            .into_iter()
            .map(|(_, p)| KernelShapeRecord::new(&p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ShapeCatalog { max_occ, records })
    }

    pub fn check_budget(&self, r: u32) -> Result<()> {
        if r > self.max_occ {
            return Err(Error::CatalogTooSmall {
                have: self.max_occ,
                want: r,
            });
        }
        Ok(())
    }

    /// Records usable at occurrence budget `r` (capacity `<= r`).
    pub fn shapes_for(&self, r: u32) -> Result<impl Iterator<Item = &KernelShapeRecord>> {
        self.check_budget(r)?;
        Ok(self
            .records
            .iter()
            .filter(move |rec| rec.capacity <= r as u64))
    }

    pub fn contains(&self, shape: &Permutation) -> bool {
        self.records
            .binary_search_by(|rec| (rec.size, &rec.shape).cmp(&(shape.len(), shape)))
            .is_ok()
    }

    /// Header line followed by one record per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let header = Header {
            format_version: CATALOG_FORMAT_VERSION,
            max_occ: self.max_occ,
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string(&header).expect("header serializes")
        )?;
        for rec in &self.records {
            writeln!(out, "{}", rec.to_json_line())?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let bad = |e: &dyn std::fmt::Display| Error::Catalog(e.to_string());
        let header: Header = match lines.next() {
            Some(line) => serde_json::from_str(&line.map_err(|e| bad(&e))?).map_err(|e| bad(&e))?,
            None => return Err(Error::Catalog("empty file".into())),
        };
        if header.format_version != CATALOG_FORMAT_VERSION {
            return Err(Error::Catalog(format!(
                "format version {} (expected {CATALOG_FORMAT_VERSION})",
                header.format_version
            )));
        }
        let mut records = Vec::new();
        for line in lines {
            let line = line.map_err(|e| bad(&e))?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: KernelShapeRecord = serde_json::from_str(&line).map_err(|e| bad(&e))?;
            if rec.capacity > header.max_occ as u64
                || KernelShapeRecord::new(&rec.shape).as_ref() != Ok(&rec)
            {
                return Err(Error::Catalog(format!(
                    "inconsistent record for {}",
                    rec.shape
                )));
            }
            records.push(rec);
        }
        let sorted = records
            .windows(2)
            .all(|w| (w[0].size, &w[0].shape) < (w[1].size, &w[1].shape));
        if !sorted {
            return Err(Error::Catalog("records not in canonical order".into()));
        }
        Ok(ShapeCatalog {
            max_occ: header.max_occ,
            records,
        })
    }
}

/// `2r−1, 2r+1, 2r−3, 2r, 2r−5, 2r−2, …, 1, 4, 2`: the kernel permutation of
/// capacity `r` and size `2r + 1`.
pub fn exceptional_shape(r: u32) -> Result<Permutation> {
    if r < 1 {
        return Err(Error::ExceptionalOrder);
    }
    let r = r as i64;
    let mut v = vec![2 * r - 1, 2 * r + 1];
    for j in 0..r - 1 {
        v.push(2 * r - 2 * j - 3);
        v.push(2 * r - 2 * j);
    }
    v.push(2);
    Permutation::new(v)
}

struct Search {
    size: usize,
    max_cap: usize,
    vals: Vec<u32>,
    used: Vec<bool>,
    occ: Vec<[u8; 3]>,
    found: Vec<Permutation>,
}

impl Search {
    fn new(size: usize, max_cap: usize) -> Self {
        Search {
            size,
            max_cap,
            vals: Vec::with_capacity(size),
            used: vec![false; size + 1],
            occ: Vec::new(),
            found: Vec::new(),
        }
    }

    /// Appends `v`, recording the occurrences where it is the last entry.
    /// Returns false (and leaves the state untouched) when the budget would
    /// be exceeded.
    fn push(&mut self, v: u32) -> bool {
        let k = self.vals.len();
        let mut smaller = 0usize;
        let mut added = 0usize;
        for j in 0..k {
            let x = self.vals[j];
            if x > v {
                added += smaller;
            } else {
                smaller += 1;
            }
        }
        if self.occ.len() + added > self.max_cap {
            return false;
        }
        if added > 0 {
            for j in 0..k {
                if self.vals[j] > v {
                    for i in 0..j {
                        if self.vals[i] < v {
                            self.occ.push([i as u8, j as u8, k as u8]);
                        }
                    }
                }
            }
        }
        self.vals.push(v);
        self.used[v as usize] = true;
        true
    }

    fn pop(&mut self) {
        let k = self.vals.len() - 1;
        let v = self.vals.pop().unwrap();
        self.used[v as usize] = false;
        while self.occ.last().is_some_and(|o| o[2] as usize == k) {
            self.occ.pop();
        }
    }

    fn connected(&self) -> bool {
        let n = self.size;
        if n == 1 {
            return true;
        }
        if n > 2 * self.occ.len() + 1 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for o in &self.occ {
            for &y in &o[1..] {
                let (a, b) = (
                    find(&mut parent, o[0] as usize),
                    find(&mut parent, y as usize),
                );
                if a != b {
                    parent[a] = b;
                    comps -= 1;
                }
            }
        }
        comps == 1
    }

    fn run(&mut self) {
        if self.vals.len() == self.size {
            if self.connected() {
                self.found
                    .push(Permutation::from_vec_unchecked(self.vals.clone()));
            }
            return;
        }
        for v in 1..=self.size as u32 {
            if !self.used[v as usize] && self.push(v) {
                self.run();
                self.pop();
            }
        }
    }
}

/// Kernel permutations of exactly `size` entries with at most `max_cap`
/// occurrences, from the prefix class fixed by `prefix`.
fn search_prefix(size: usize, max_cap: usize, prefix: &[u32]) -> Vec<Permutation> {
    let mut s = Search::new(size, max_cap);
    for &v in prefix {
        if !s.push(v) {
            return Vec::new();
        }
    }
    s.run();
    s.found
}

fn prefix_classes(size: usize) -> Vec<Vec<u32>> {
    let n = size as u32;
    match size {
        0 => vec![],
        1 => vec![vec![1]],
        _ => (1..=n)
            .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| vec![a, b]))
            .collect(),
    }
}

/// All kernel permutations of the given size with capacity `<= max_cap`.
/// Parallel over first-two-entry prefix classes.
pub fn kernel_shapes_of_size(size: usize, max_cap: u32) -> Vec<Permutation> {
    let found = par::map_collect(prefix_classes(size), |prefix| {
        search_prefix(size, max_cap as usize, &prefix)
    });
    let mut all: Vec<Permutation> = found.into_iter().flatten().collect();
    all.sort();
    all
}

pub fn enumerate_kernel_shapes(r: u32) -> Result<ShapeCatalog> {
    let tasks: Vec<(usize, Vec<u32>)> = (1..=2 * r as usize)
        .flat_map(|size| prefix_classes(size).into_iter().map(move |p| (size, p)))
        .collect();
    let found = par::map_collect(tasks, |(size, prefix)| {
        search_prefix(size, r as usize, &prefix)
    });
    let mut shapes: Vec<Permutation> = found.into_iter().flatten().collect();
    if shapes.is_empty() {
        // r = 0 searches nothing beyond size 0; the single-entry shape is
        // always present.
        shapes.push(Permutation::identity(1));
    }
    if r >= 1 {
        shapes.push(exceptional_shape(r)?);
    }
    ShapeCatalog::from_shapes(r, shapes)
}

/// Exhaustive search of size `2r + 1`: the exceptional shape must be the only
/// kernel permutation there with capacity `<= r`.
pub fn verify_exceptional(r: u32) -> Result<()> {
    let found = kernel_shapes_of_size(2 * r as usize + 1, r);
    let expected = exceptional_shape(r)?;
    if found == [expected.clone()] {
        Ok(())
    } else {
        let list: Vec<String> = found.iter().map(Permutation::to_string).collect();
        Err(Error::SelfCheck(format!(
            "size {} shapes with capacity <= {r}: [{}], expected [{expected}]",
            2 * r + 1,
            list.join(", ")
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Number of catalogued shapes per size.
    pub per_size: BTreeMap<usize, usize>,
    /// Number of catalogued shapes per `(size, capacity)`.
    pub per_size_capacity: BTreeMap<(usize, u64), usize>,
    /// Shapes that first appear at level `r`, other than the exceptional
    /// one: capacity exactly `r`, size at most `2r`.
    pub new_nonexceptional: BTreeMap<u32, usize>,
    /// Shapes of size `2r − 1` or `2r` with capacity `<= r`, excluding the
    /// exceptional shape of level `r − 1`.
    pub size_window: BTreeMap<u32, usize>,
}

pub fn census(catalog: &ShapeCatalog) -> Census {
    let mut per_size = BTreeMap::new();
    let mut per_size_capacity = BTreeMap::new();
    for rec in &catalog.records {
        *per_size.entry(rec.size).or_insert(0) += 1;
        *per_size_capacity
            .entry((rec.size, rec.capacity))
            .or_insert(0) += 1;
    }
    let mut new_nonexceptional = BTreeMap::new();
    let mut size_window = BTreeMap::new();
    for r in 1..=catalog.max_occ {
        let fresh = catalog
            .records
            .iter()
            .filter(|rec| rec.capacity == r as u64 && rec.size <= 2 * r as usize)
            .count();
        new_nonexceptional.insert(r, fresh);

        let previous = if r == 1 {
            Permutation::identity(1)
        } else {
            exceptional_shape(r - 1).expect("r >= 2")
        };
        let sizes = [2 * r as usize - 1, 2 * r as usize];
        let window = catalog
            .records
            .iter()
            .filter(|rec| {
                sizes.contains(&rec.size) && rec.capacity <= r as u64 && rec.shape != previous
            })
            .count();
        size_window.insert(r, window);
    }
    Census {
        per_size,
        per_size_capacity,
        new_nonexceptional,
        size_window,
    }
}
