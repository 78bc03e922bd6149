//! Occurrence graphs, kernels and kernel cell decompositions.
//!
//! The occurrence graph of `π` is bipartite: one side holds the entries
//! (identified by position), the other the 132 occurrences, and every
//! occurrence is joined to its three entries. The kernel is the connected
//! component containing the maximal entry `n`.
//!
//! For a kernel permutation `ρ ∈ S_s` the cell `(m, l)` is the open rectangle
//! between kernel positions `l - 1` and `l` and between kernel values `m - 1`
//! and `m` (with `0` and `n + 1` as outer boundaries). A cell is infeasible
//! when a point inside it would complete a 132 with two kernel entries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{lis_length, occurrences_132, reduce_to_pattern, Occurrence, Permutation};

#[derive(Clone, Debug)]
pub struct OccurrenceGraph {
    n: usize,
    occurrences: Vec<Occurrence>,
}

/// One connected component: entry positions (sorted) and occurrence indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub entries: Vec<usize>,
    pub occurrences: Vec<usize>,
}

impl Component {
    pub fn t1(&self) -> usize {
        self.entries.len()
    }

    pub fn t3(&self) -> usize {
        self.occurrences.len()
    }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

impl OccurrenceGraph {
    pub fn new(p: &Permutation) -> Self {
        OccurrenceGraph {
            n: p.len(),
            occurrences: occurrences_132(p),
        }
    }

    pub fn entry_count(&self) -> usize {
        self.n
    }

    pub fn occurrences(&self) -> &[Occurrence] {
        &self.occurrences
    }

    /// `(entry position, occurrence index)` pairs, three per occurrence.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.occurrences
            .iter()
            .enumerate()
            .flat_map(|(o, occ)| occ.positions.iter().map(move |&pos| (pos, o)))
    }

    /// Components ordered by their smallest entry position.
    pub fn components(&self) -> Vec<Component> {
        let mut ds = DisjointSet::new(self.n);
        for occ in &self.occurrences {
            let [a, b, c] = occ.positions;
            ds.union(a - 1, b - 1);
            ds.union(a - 1, c - 1);
        }
        let mut by_root: Vec<Option<usize>> = vec![None; self.n];
        let mut comps: Vec<Component> = Vec::new();
        for pos in 0..self.n {
            let root = ds.find(pos);
            let idx = *by_root[root].get_or_insert_with(|| {
                comps.push(Component {
                    entries: Vec::new(),
                    occurrences: Vec::new(),
                });
                comps.len() - 1
            });
            comps[idx].entries.push(pos + 1);
        }
        for (o, occ) in self.occurrences.iter().enumerate() {
            let root = ds.find(occ.positions[0] - 1);
            comps[by_root[root].unwrap()].occurrences.push(o);
        }
        comps
    }
}

pub fn build_occurrence_graph(p: &Permutation) -> OccurrenceGraph {
    OccurrenceGraph::new(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    /// Increasing 1-based positions `i_1 < … < i_s`.
    pub positions: Vec<usize>,
    pub values: Vec<u32>,
    pub shape: Permutation,
    pub capacity: u64,
}

impl Kernel {
    pub fn size(&self) -> usize {
        self.positions.len()
    }
}

/// Kernel of a nonempty permutation.
pub fn kernel_of(p: &Permutation) -> Kernel {
    assert!(!p.is_empty(), "kernel of the empty permutation");
    let graph = OccurrenceGraph::new(p);
    let top = p.position_of(p.len() as u32);
    let comp = graph
        .components()
        .into_iter()
        .find(|c| c.entries.contains(&top))
        .expect("entry n lies in some component");
    kernel_from_positions(p, comp.entries)
}

fn kernel_from_positions(p: &Permutation, positions: Vec<usize>) -> Kernel {
    let values: Vec<u32> = positions.iter().map(|&i| p.at(i)).collect();
    let shape = reduce_to_pattern(&values).expect("distinct");
    let capacity = shape.count_132();
    Kernel {
        positions,
        values,
        shape,
        capacity,
    }
}

/// `σ_ρ = ρ`: the occurrence graph of `ρ` is connected.
pub fn is_kernel_permutation(rho: &Permutation) -> bool {
    match rho.len() {
        0 => false,
        1 => true,
        _ => OccurrenceGraph::new(rho).components().len() == 1,
    }
}

/// Grid coordinate `(m, l)`: row `m` is the value band, column `l` the
/// position band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub m: usize,
    pub l: usize,
}

impl Cell {
    pub fn new(m: usize, l: usize) -> Self {
        Cell { m, l }
    }

    /// `self ≺ other` (or equal): lower-or-equal column, higher-or-equal row.
    pub fn precedes(&self, other: &Cell) -> bool {
        self.m >= other.m && self.l <= other.l
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{{{},{}}}", self.m, self.l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    shape: Permutation,
    feasible: Vec<bool>,
}

impl CellDecomposition {
    pub fn shape(&self) -> &Permutation {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.len()
    }

    pub fn is_feasible(&self, cell: Cell) -> bool {
        let s = self.size();
        assert!((1..=s).contains(&cell.m) && (1..=s + 1).contains(&cell.l));
        self.feasible[(cell.m - 1) * (s + 1) + cell.l - 1]
    }

    /// All `s(s+1)` cells row by row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let s = self.size();
        (1..=s).flat_map(move |m| (1..=s + 1).map(move |l| Cell::new(m, l)))
    }

    /// Feasible cells in row-major order (not yet ≺-sorted).
    pub fn feasible_cells(&self) -> Vec<Cell> {
        self.cells().filter(|&c| self.is_feasible(c)).collect()
    }
}

fn is_132(pts: &mut [(usize, usize); 3]) -> bool {
    pts.sort_unstable();
    let [a, b, c] = *pts;
    a.1 < c.1 && c.1 < b.1
}

/// Would a point inside `cell` form a 132 with two entries of `rho`?
///
/// Coordinates are doubled so the hypothetical point sits at odd integers
/// and kernel entries at even ones.
fn cell_is_infeasible(rho: &Permutation, cell: Cell) -> bool {
    let z = (2 * cell.l - 1, 2 * cell.m - 1);
    let s = rho.len();
    for a in 1..=s {
        for b in a + 1..=s {
            let mut pts = [
                z,
                (2 * a, 2 * rho.at(a) as usize),
                (2 * b, 2 * rho.at(b) as usize),
            ];
            if is_132(&mut pts) {
                return true;
            }
        }
    }
    false
}

/// Cells ruled out by the one-sided criterion: some kernel entry lies to the
/// southwest (left of the column band, below the row band).
pub fn one_sided_infeasible(rho: &Permutation, cell: Cell) -> bool {
    (1..=rho.len()).any(|k| cell.l > k && cell.m > rho.at(k) as usize)
}

pub fn cell_decomposition(rho: &Permutation) -> Result<CellDecomposition> {
    if !is_kernel_permutation(rho) {
        return Err(Error::NotKernel(rho.to_string()));
    }
    let s = rho.len();
    let mut feasible = Vec::with_capacity(s * (s + 1));
    for m in 1..=s {
        for l in 1..=s + 1 {
            feasible.push(!cell_is_infeasible(rho, Cell::new(m, l)));
        }
    }
    Ok(CellDecomposition {
        shape: rho.clone(),
        feasible,
    })
}

/// Feasible cells sorted so that `C^i ≺ C^j` for `i < j`.
pub fn order_feasible_cells(dec: &CellDecomposition) -> Result<Vec<Cell>> {
    let mut cells = dec.feasible_cells();
    cells.sort_by(|a, b| a.l.cmp(&b.l).then(b.m.cmp(&a.m)));
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            if !a.precedes(b) {
                return Err(Error::OrderViolation(*a, *b));
            }
        }
    }
    Ok(cells)
}

fn lis_northeast_of(rho: &Permutation, cell: Cell) -> usize {
    let ne: Vec<u32> = (cell.l..=rho.len())
        .map(|k| rho.at(k))
        .filter(|&v| v as usize >= cell.m)
        .collect();
    lis_length(&ne)
}

/// `l_j(ρ)` for the feasible cells in ≺-order.
pub fn lis_northeast(rho: &Permutation) -> Result<Vec<usize>> {
    let cells = order_feasible_cells(&cell_decomposition(rho)?)?;
    Ok(cells.iter().map(|&c| lis_northeast_of(rho, c)).collect())
}

/// Everything the solvers need to know about one kernel shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelShapeRecord {
    pub shape: Permutation,
    pub size: usize,
    pub capacity: u64,
    /// Feasible cells in ≺-order, each as `[m, l]`.
    #[serde(with = "cell_pairs")]
    pub cells: Vec<Cell>,
    pub lis_ne: Vec<usize>,
}

mod cell_pairs {
    use super::Cell;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(cells: &[Cell], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = cells.iter().map(|c| [c.m, c.l]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Cell>, D::Error> {
        let pairs = Vec::<[usize; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[m, l]| Cell::new(m, l)).collect())
    }
}

impl KernelShapeRecord {
    pub fn new(rho: &Permutation) -> Result<Self> {
        let dec = cell_decomposition(rho)?;
        let cells = order_feasible_cells(&dec)?;
        let lis_ne = cells.iter().map(|&c| lis_northeast_of(rho, c)).collect();
        Ok(KernelShapeRecord {
            shape: rho.clone(),
            size: rho.len(),
            capacity: rho.count_132(),
            cells,
            lis_ne,
        })
    }

    /// Number of feasible cells, `f(ρ)`.
    pub fn f(&self) -> usize {
        self.cells.len()
    }

    pub fn lis(&self) -> usize {
        self.shape.lis_length()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// A permutation split into its kernel shape and the patterns filling the
/// feasible cells (in ≺-order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub shape: Permutation,
    pub cells: Vec<Cell>,
    pub contents: Vec<Permutation>,
}

/// Row `m` and column `l` of the cell holding a non-kernel entry.
fn locate(kernel: &Kernel, pos: usize, value: u32) -> Cell {
    let l = 1 + kernel.positions.iter().filter(|&&i| i < pos).count();
    let m = 1 + kernel.values.iter().filter(|&&v| v < value).count();
    Cell::new(m, l)
}

pub fn decompose(p: &Permutation) -> Result<Decomposition> {
    assert!(!p.is_empty(), "decompose of the empty permutation");
    let graph = OccurrenceGraph::new(p);
    let components = graph.components();
    let top = p.position_of(p.len() as u32);
    let kernel_idx = components
        .iter()
        .position(|c| c.entries.contains(&top))
        .expect("entry n lies in some component");
    let kernel = kernel_from_positions(p, components[kernel_idx].entries.clone());
    let dec = cell_decomposition(&kernel.shape)?;
    let cells = order_feasible_cells(&dec)?;

    let mut members: Vec<Vec<u32>> = vec![Vec::new(); cells.len()];
    for (ci, comp) in components.iter().enumerate() {
        if ci == kernel_idx {
            continue;
        }
        let mut home: Option<Cell> = None;
        for &pos in &comp.entries {
            let value = p.at(pos);
            let cell = locate(&kernel, pos, value);
            if !dec.is_feasible(cell) {
                return Err(Error::CellViolation(format!(
                    "entry {value} of {p} lies in infeasible cell {cell}"
                )));
            }
            match home {
                None => home = Some(cell),
                Some(h) if h != cell => {
                    return Err(Error::CellViolation(format!(
                        "component of {p} spans {h} and {cell}"
                    )))
                }
                _ => {}
            }
        }
    }
    for pos in 1..=p.len() {
        if kernel.positions.binary_search(&pos).is_ok() {
            continue;
        }
        let value = p.at(pos);
        let cell = locate(&kernel, pos, value);
        let j = cells
            .iter()
            .position(|&c| c == cell)
            .expect("feasible cell is listed");
        members[j].push(value);
    }
    let contents = members
        .iter()
        .map(|vals| reduce_to_pattern(vals))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        shape: kernel.shape,
        cells,
        contents,
    })
}

/// Inverse of [`decompose`].
///
/// Inside a row the nonempty cells receive value blocks that decrease from
/// left to right; inside a column the cells of higher rows are placed further
/// left. The kernel entries are stretched around the blocks.
pub fn assemble(rho: &Permutation, contents: &[Permutation]) -> Result<Permutation> {
    let dec = cell_decomposition(rho)?;
    let cells = order_feasible_cells(&dec)?;
    if cells.len() != contents.len() {
        return Err(Error::ContentLength {
            expected: cells.len(),
            got: contents.len(),
        });
    }
    let s = rho.len();
    let n = s + contents.iter().map(Permutation::len).sum::<usize>();

    let mut pos_start = vec![0usize; cells.len()];
    let mut kernel_pos = vec![0usize; s + 1];
    let mut next = 1;
    for l in 1..=s + 1 {
        let mut col: Vec<usize> = (0..cells.len()).filter(|&j| cells[j].l == l).collect();
        col.sort_by(|&a, &b| cells[b].m.cmp(&cells[a].m));
        for j in col {
            pos_start[j] = next;
            next += contents[j].len();
        }
        if let Some(slot) = kernel_pos.get_mut(l) {
            *slot = next;
            next += 1;
        }
    }

    let mut val_start = vec![0u32; cells.len()];
    let mut kernel_val = vec![0u32; s + 1];
    let mut next = 1u32;
    for (m, slot) in kernel_val.iter_mut().enumerate().skip(1) {
        let mut row: Vec<usize> = (0..cells.len()).filter(|&j| cells[j].m == m).collect();
        row.sort_by(|&a, &b| cells[b].l.cmp(&cells[a].l));
        for j in row {
            val_start[j] = next;
            next += contents[j].len() as u32;
        }
        *slot = next;
        next += 1;
    }

    let mut out = vec![0u32; n];
    for k in 1..=s {
        out[kernel_pos[k] - 1] = kernel_val[rho.at(k) as usize];
    }
    for (j, alpha) in contents.iter().enumerate() {
        for (t, &v) in alpha.values().iter().enumerate() {
            out[pos_start[j] + t - 1] = val_start[j] + v - 1;
        }
    }
    Ok(Permutation::from_vec_unchecked(out))
}
