//! Exhaustive property sweeps over `S_n` for the structural facts the
//! recursion depends on.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::kernel::{
    assemble, cell_decomposition, decompose, is_kernel_permutation, kernel_of,
    one_sided_infeasible, order_feasible_cells, Cell, OccurrenceGraph,
};
use crate::par;
use crate::perm::{all_permutations, next_permutation, Permutation};

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    pub examples: Vec<String>,
}

impl PropertyReport {
    fn new(name: &str) -> Self {
        PropertyReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    fn merge(&mut self, other: PropertyReport) {
        self.checked += other.checked;
        self.violations += other.violations;
        for e in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(e);
            }
        }
    }
}

/// Permutations of `S_n` grouped by first entry, for parallel sweeps.
fn classes(max_n: usize) -> Vec<(usize, u32)> {
    (1..=max_n)
        .flat_map(|n| (1..=n as u32).map(move |a| (n, a)))
        .collect()
}

fn for_class(n: usize, first: u32, mut f: impl FnMut(&Permutation)) {
    let mut v = vec![first];
    v.extend((1..=n as u32).filter(|&x| x != first));
    loop {
        f(&Permutation::from_vec_unchecked(v.clone()));
        if !next_permutation(&mut v[1..]) {
            break;
        }
    }
}

fn sweep(
    max_n: usize,
    names: &[&str],
    check: impl Fn(&Permutation, &mut [PropertyReport]) + Sync,
) -> Vec<PropertyReport> {
    let parts = par::map_collect(classes(max_n), |(n, first)| {
        let mut reports: Vec<PropertyReport> =
            names.iter().map(|n| PropertyReport::new(n)).collect();
        for_class(n, first, |p| check(p, &mut reports));
        reports
    });
    let mut total: Vec<PropertyReport> = names.iter().map(|n| PropertyReport::new(n)).collect();
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    total
}

/// Entries of `p` outside the kernel, grouped by cell as `(position, value)`.
fn cell_entries(p: &Permutation) -> BTreeMap<Cell, Vec<(usize, u32)>> {
    let k = kernel_of(p);
    let mut out: BTreeMap<Cell, Vec<(usize, u32)>> = BTreeMap::new();
    for pos in 1..=p.len() {
        if k.positions.contains(&pos) {
            continue;
        }
        let v = p.at(pos);
        let l = 1 + k.positions.iter().filter(|&&i| i < pos).count();
        let m = 1 + k.values.iter().filter(|&&x| x < v).count();
        out.entry(Cell::new(m, l)).or_default().push((pos, v));
    }
    out
}

fn row_column_order(p: &Permutation, row: &mut PropertyReport, col: &mut PropertyReport) {
    let cells = cell_entries(p);
    let list: Vec<(&Cell, &Vec<(usize, u32)>)> = cells.iter().collect();
    for (i, (a, ea)) in list.iter().enumerate() {
        for (b, eb) in &list[i + 1..] {
            if a.m == b.m {
                let (left, right) = if a.l < b.l { (ea, eb) } else { (eb, ea) };
                let ok = left.iter().all(|x| right.iter().all(|y| x.1 > y.1));
                row.record(ok, || format!("{p}: rows {a} / {b}"));
            }
            if a.l == b.l {
                let (low, high) = if a.m < b.m { (ea, eb) } else { (eb, ea) };
                let ok = low.iter().all(|x| high.iter().all(|y| x.0 > y.0));
                col.record(ok, || format!("{p}: columns {a} / {b}"));
            }
        }
    }
}

/// Per-permutation properties for every `π ∈ S_n`, `1 <= n <= max_n`:
/// component bound, kernel size bound, cell confinement of non-kernel
/// components, row/column dominance, total order of feasible cells, the
/// one-sided infeasibility criterion, and `assemble ∘ decompose = id`.
pub fn permutation_suites(max_n: usize) -> Vec<PropertyReport> {
    let names = [
        "component bound: t1 <= 2 t3 + 1",
        "kernel bound: size <= 2r + 1",
        "confinement: non-kernel components inside one feasible cell",
        "cell order: feasible cells totally ordered",
        "rows: same-row cells decrease left to right",
        "columns: same-column cells move left going up",
        "one-sided: southwest kernel entry implies infeasible",
        "roundtrip: assemble(decompose(pi)) = pi",
    ];
    sweep(max_n, &names, |p, rep| {
        let graph = OccurrenceGraph::new(p);
        for c in graph.components() {
            rep[0].record(c.t1() <= 2 * c.t3() + 1, || {
                format!("{p}: component {:?}", c.entries)
            });
        }
        let r = graph.occurrences().len();
        let kernel = kernel_of(p);
        rep[1].record(kernel.size() <= 2 * r + 1, || {
            format!("{p}: kernel size {}", kernel.size())
        });

        let dec = decompose(p);
        rep[2].record(dec.is_ok(), || format!("{p}: {:?}", dec.as_ref().err()));

        let cells = cell_decomposition(&kernel.shape).expect("kernel shape");
        let ordered = order_feasible_cells(&cells);
        rep[3].record(ordered.is_ok(), || {
            format!("{p}: {:?}", ordered.as_ref().err())
        });

        let (row, rest) = rep[4..].split_first_mut().unwrap();
        row_column_order(p, row, &mut rest[0]);

        let ok = cells
            .cells()
            .all(|c| !one_sided_infeasible(&kernel.shape, c) || !cells.is_feasible(c));
        rep[6].record(ok, || format!("{p}: shape {}", kernel.shape));

        if let Ok(d) = dec {
            let back = assemble(&d.shape, &d.contents);
            rep[7].record(back.as_ref() == Ok(p), || {
                format!("{p}: reassembled as {back:?}")
            });
        }
    })
}

/// All tuples of patterns with `len` cells and total size `total`.
fn content_tuples(len: usize, total: usize) -> Vec<Vec<Permutation>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        let rest = content_tuples(len - 1, total - first);
        if rest.is_empty() {
            continue;
        }
        for head in all_permutations(first) {
            for tail in &rest {
                let mut t = Vec::with_capacity(len);
                t.push(head.clone());
                t.extend(tail.iter().cloned());
                out.push(t);
            }
        }
    }
    out
}

/// `decompose ∘ assemble = id` over every kernel shape and every filling of
/// its feasible cells with assembled size `<= max_n`. Also checks that
/// the fillings of size `n` number exactly `n!`.
pub fn assembly_suite(max_n: usize) -> Vec<PropertyReport> {
    let mut roundtrip =
        PropertyReport::new("roundtrip: decompose(assemble(rho, alpha)) = (rho, alpha)");
    let mut counting = PropertyReport::new("bijection: fillings of size n number n!");
    let shapes: Vec<Permutation> = (1..=max_n)
        .flat_map(all_permutations)
        .filter(is_kernel_permutation)
        .collect();
    let parts = par::map_collect(shapes, |rho| {
        let mut rep = PropertyReport::new("");
        let cells = order_feasible_cells(&cell_decomposition(&rho).unwrap()).unwrap();
        let mut per_size = vec![0u64; max_n + 1];
        for extra in 0..=max_n - rho.len() {
            for alpha in content_tuples(cells.len(), extra) {
                per_size[rho.len() + extra] += 1;
                let pi = assemble(&rho, &alpha);
                let ok = match &pi {
                    Ok(pi) => decompose(pi).is_ok_and(|d| d.shape == rho && d.contents == alpha),
                    Err(_) => false,
                };
                rep.record(ok, || format!("rho {rho}, contents {alpha:?} -> {pi:?}"));
            }
        }
        (rep, per_size)
    });
    let mut per_size = vec![0u64; max_n + 1];
    for (rep, sizes) in parts {
        roundtrip.merge(rep);
        for (t, s) in per_size.iter_mut().zip(sizes) {
            *t += s;
        }
    }
    let mut fact = 1u64;
    for (n, &count) in per_size.iter().enumerate().skip(1) {
        fact *= n as u64;
        counting.record(count == fact, || {
            format!("n = {n}: {count} fillings, expected {fact}")
        });
    }
    vec![roundtrip, counting]
}

/// Every suite, in reporting order.
pub fn all_suites(max_n: usize) -> Vec<PropertyReport> {
    let mut v = permutation_suites(max_n);
    v.extend(assembly_suite(max_n));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_up_to_six() {
        for rep in all_suites(6) {
            assert!(rep.passed(), "{}: {:?}", rep.name, rep.examples);
            assert!(rep.checked > 0, "{}", rep.name);
        }
    }

    #[test]
    fn tuples() {
        assert_eq!(content_tuples(2, 2).len(), 2 + 1 + 2);
        assert_eq!(content_tuples(0, 0), vec![Vec::<Permutation>::new()]);
        assert!(content_tuples(0, 1).is_empty());
    }
}
