//! Generating functions for permutations by number of 132 occurrences.
//!
//! Every permutation with at least one entry is its kernel shape `ρ` with the
//! feasible cells filled independently, and occurrences outside the kernel
//! live entirely inside one cell. Hence
//!
//! ```text
//! Ψ_r = [r = 0] + Σ_ρ x^{s(ρ)} Σ_{r_1+…+r_f = r − c(ρ)} Π_j Ψ_{r_j}
//! ```
//!
//! The inner sum is the coefficient of `t^{r−c}` in `(Σ_a Ψ_a t^a)^f`, so
//! shapes are grouped by `(s, c, f)` and the powers of that marker polynomial
//! are shared. `Ψ_r` itself only appears through `ρ = 1` with coefficient
//! `2xΨ_0`, which is moved to the left-hand side and divided out.
//!
//! The restricted family `Φ_r(x; k)` (additionally avoiding `12…k`) follows
//! the same scheme, except that cell `j` draws from `Φ(x; k − l_j(ρ))` and
//! shapes whose own longest increasing run already reaches `k` are dropped.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::algebraic::AlgebraicFunction;
use crate::error::{Error, Result};
use crate::kernel::KernelShapeRecord;
use crate::series::{catalan_series, PowerSeries};
use crate::shapes::{exceptional_shape, ShapeCatalog};

/// Arithmetic the recursion needs, implemented by the truncated-series and
/// the closed-form representations.
pub trait Backend {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn x_pow(&self, k: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: u64) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `Ψ_0`, the Catalan generating function.
    fn catalan(&self) -> Self::Elem;
    /// Hook run on every solved level.
    fn validate(&self, _a: &Self::Elem) -> Result<()> {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SeriesBackend {
    pub order: usize,
}

impl Backend for SeriesBackend {
    type Elem = PowerSeries;

    fn zero(&self) -> PowerSeries {
        PowerSeries::zero(self.order)
    }

    fn one(&self) -> PowerSeries {
        PowerSeries::one(self.order)
    }

    fn x_pow(&self, k: usize) -> PowerSeries {
        PowerSeries::monomial(self.order, k)
    }

    fn add(&self, a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
        a + b
    }

    fn sub(&self, a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
        a - b
    }

    fn mul(&self, a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        a * b
    }

    fn scale(&self, a: &PowerSeries, c: u64) -> PowerSeries {
        a.scale(&BigRational::from_integer(c.into()))
    }

    fn div(&self, a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries> {
        a.div(b)
    }

    fn is_zero(&self, a: &PowerSeries) -> bool {
        a.is_zero()
    }

    fn catalan(&self) -> PowerSeries {
        catalan_series(self.order)
    }

    /// Counting series: every coefficient a nonnegative integer.
    fn validate(&self, a: &PowerSeries) -> Result<()> {
        for (k, c) in a.to_integers()?.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::SelfCheck(format!(
                    "negative coefficient {c} at x^{k}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClosedFormBackend;

impl Backend for ClosedFormBackend {
    type Elem = AlgebraicFunction;

    fn zero(&self) -> AlgebraicFunction {
        AlgebraicFunction::zero()
    }

    fn one(&self) -> AlgebraicFunction {
        AlgebraicFunction::one()
    }

    fn x_pow(&self, k: usize) -> AlgebraicFunction {
        AlgebraicFunction::x_pow(k)
    }

    fn add(&self, a: &AlgebraicFunction, b: &AlgebraicFunction) -> AlgebraicFunction {
        a.add(b)
    }

    fn sub(&self, a: &AlgebraicFunction, b: &AlgebraicFunction) -> AlgebraicFunction {
        a.sub(b)
    }

    fn mul(&self, a: &AlgebraicFunction, b: &AlgebraicFunction) -> AlgebraicFunction {
        if a.is_zero() || b.is_zero() {
            return AlgebraicFunction::zero();
        }
        a.mul(b)
    }

    fn scale(&self, a: &AlgebraicFunction, c: u64) -> AlgebraicFunction {
        a.scale(&BigInt::from(c))
    }

    fn div(&self, a: &AlgebraicFunction, b: &AlgebraicFunction) -> Result<AlgebraicFunction> {
        a.div(b)
    }

    fn is_zero(&self, a: &AlgebraicFunction) -> bool {
        a.is_zero()
    }

    fn catalan(&self) -> AlgebraicFunction {
        AlgebraicFunction::catalan()
    }
}

/// Product of two marker polynomials `Σ e_a t^a`, truncated at `t^deg`.
fn marker_mul<B: Backend>(b: &B, u: &[B::Elem], v: &[B::Elem], deg: usize) -> Vec<B::Elem> {
    let mut out = vec![b.zero(); deg + 1];
    for (i, ui) in u.iter().enumerate().take(deg + 1) {
        if b.is_zero(ui) {
            continue;
        }
        for (j, vj) in v.iter().enumerate().take(deg + 1 - i) {
            if !b.is_zero(vj) {
                out[i + j] = b.add(&out[i + j], &b.mul(ui, vj));
            }
        }
    }
    out
}

fn marker_one<B: Backend>(b: &B, deg: usize) -> Vec<B::Elem> {
    let mut v = vec![b.zero(); deg + 1];
    v[0] = b.one();
    v
}

/// Solves `Ψ_0, Ψ_1, …` level by level and memoizes them.
pub struct PsiSolver<'c, B: Backend> {
    backend: B,
    catalog: &'c ShapeCatalog,
    levels: Vec<B::Elem>,
}

impl<'c, B: Backend> PsiSolver<'c, B> {
    pub fn new(backend: B, catalog: &'c ShapeCatalog) -> Self {
        let psi0 = backend.catalan();
        PsiSolver {
            backend,
            catalog,
            levels: vec![psi0],
        }
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    /// `Ψ_0 ..= Ψ_r`.
    pub fn solve_to(&mut self, r: u32) -> Result<&[B::Elem]> {
        self.catalog.check_budget(r)?;
        while self.levels.len() <= r as usize {
            let level = self.levels.len() as u32;
            let next = self.solve_level(level)?;
            self.backend.validate(&next)?;
            self.levels.push(next);
        }
        Ok(&self.levels[..=r as usize])
    }

    pub fn psi(&mut self, r: u32) -> Result<B::Elem> {
        Ok(self.solve_to(r)?[r as usize].clone())
    }

    /// Marker polynomial `Σ_{a<r} Ψ_a t^a` of degree `r` (slot `r` zero).
    fn known_family(&self, r: usize) -> Vec<B::Elem> {
        let mut fam: Vec<B::Elem> = self.levels[..r].to_vec();
        fam.push(self.backend.zero());
        fam
    }

    fn solve_level(&self, r: u32) -> Result<B::Elem> {
        let b = &self.backend;
        let deg = r as usize;
        let mut groups: BTreeMap<(usize, u64, usize), u64> = BTreeMap::new();
        for rec in self.catalog.shapes_for(r)? {
            *groups.entry((rec.size, rec.capacity, rec.f())).or_insert(0) += 1;
        }
        let max_f = groups.keys().map(|g| g.2).max().unwrap_or(0);
        let family = self.known_family(deg);
        let mut powers = vec![marker_one(b, deg)];
        for f in 1..=max_f {
            let next = marker_mul(b, &powers[f - 1], &family, deg);
            powers.push(next);
        }
        let mut rest = b.zero();
        for (&(size, capacity, f), &mult) in &groups {
            let coeff = &powers[f][deg - capacity as usize];
            if b.is_zero(coeff) {
                continue;
            }
            let term = b.mul(&b.x_pow(size), coeff);
            rest = b.add(&rest, &b.scale(&term, mult));
        }
        let two_x_psi0 = b.scale(&b.mul(&b.x_pow(1), &self.levels[0]), 2);
        b.div(&rest, &b.sub(&b.one(), &two_x_psi0))
    }

    /// Contribution `x^s · [t^{r−c}] Π_j (Σ_a Ψ_a t^a)` of a single shape at
    /// level `r`, computed cell by cell. Needs `Ψ_0 ..= Ψ_{r−c}` solved,
    /// so shapes of capacity 0 are only accepted at `r = 0`.
    pub fn shape_contribution(&mut self, rec: &KernelShapeRecord, r: u32) -> Result<B::Elem> {
        if rec.capacity > r as u64 {
            return Ok(self.backend.zero());
        }
        let deg = (r as u64 - rec.capacity) as usize;
        self.solve_to(deg as u32)?;
        let b = &self.backend;
        let family: Vec<B::Elem> = self.levels[..=deg].to_vec();
        let mut prod = marker_one(b, deg);
        for _ in &rec.cells {
            prod = marker_mul(b, &prod, &family, deg);
        }
        Ok(b.mul(&b.x_pow(rec.size), &prod[deg]))
    }

    /// Exceptional shape of level `r`: its catalogued record must contribute
    /// exactly `x^{2r+1} Ψ_0^{r+2}`.
    pub fn check_exceptional(&mut self, r: u32) -> Result<()> {
        let rho = exceptional_shape(r)?;
        let rec = self
            .catalog
            .records
            .iter()
            .find(|rec| rec.shape == rho)
            .ok_or_else(|| Error::SelfCheck(format!("catalog lacks exceptional shape {rho}")))?
            .clone();
        let from_record = self.shape_contribution(&rec, r)?;
        let b = &self.backend;
        let mut closed = b.x_pow(2 * r as usize + 1);
        for _ in 0..r + 2 {
            closed = b.mul(&closed, &self.levels[0]);
        }
        if from_record == closed {
            Ok(())
        } else {
            Err(Error::SelfCheck(format!(
                "exceptional contribution mismatch at r = {r}"
            )))
        }
    }
}

pub fn psi_series(catalog: &ShapeCatalog, r: u32, order: usize) -> Result<PowerSeries> {
    PsiSolver::new(SeriesBackend { order }, catalog).psi(r)
}

pub fn psi_closed_form(catalog: &ShapeCatalog, r: u32) -> Result<AlgebraicFunction> {
    PsiSolver::new(ClosedFormBackend, catalog).psi(r)
}

/// Group key for the restricted recursion: size, capacity and the multiset
/// of northeast LIS lengths.
type PhiGroup = (usize, u64, Vec<usize>);

/// Memoized `Φ_r(x; k)` over truncated series.
pub struct PhiSolver<'c> {
    backend: SeriesBackend,
    catalog: &'c ShapeCatalog,
    memo: HashMap<(u32, i64), PowerSeries>,
}

impl<'c> PhiSolver<'c> {
    pub fn new(order: usize, catalog: &'c ShapeCatalog) -> Self {
        PhiSolver {
            backend: SeriesBackend { order },
            catalog,
            memo: HashMap::new(),
        }
    }

    pub fn phi(&mut self, r: u32, k: i64) -> Result<PowerSeries> {
        self.catalog.check_budget(r)?;
        if k <= 0 {
            return Ok(self.backend.zero());
        }
        for level in 0..=r {
            for kk in 1..=k {
                if !self.memo.contains_key(&(level, kk)) {
                    let v = self.solve(level, kk)?;
                    self.backend.validate(&v)?;
                    self.memo.insert((level, kk), v);
                }
            }
        }
        Ok(self.memo[&(r, k)].clone())
    }

    fn get(&self, r: u32, k: i64) -> PowerSeries {
        if k <= 0 {
            return self.backend.zero();
        }
        self.memo[&(r, k)].clone()
    }

    /// Marker polynomial of degree `deg` for `Φ_·(x; k)`, with the slot of
    /// the level being solved left at zero.
    fn family(&self, k: i64, deg: usize, solving: (u32, i64)) -> Vec<PowerSeries> {
        (0..=deg as u32)
            .map(|a| {
                if (a, k) == solving || k <= 0 {
                    self.backend.zero()
                } else {
                    self.get(a, k)
                }
            })
            .collect()
    }

    fn solve(&self, r: u32, k: i64) -> Result<PowerSeries> {
        let b = &self.backend;
        let mut groups: BTreeMap<PhiGroup, u64> = BTreeMap::new();
        for rec in self.catalog.shapes_for(r)? {
            if rec.lis() as i64 >= k {
                continue;
            }
            let mut ls = rec.lis_ne.clone();
            ls.sort_unstable();
            *groups.entry((rec.size, rec.capacity, ls)).or_insert(0) += 1;
        }
        let mut rest = if r == 0 { b.one() } else { b.zero() };
        let mut families: HashMap<(i64, usize), Vec<PowerSeries>> = HashMap::new();
        for ((size, capacity, ls), mult) in groups {
            let deg = (r as u64 - capacity) as usize;
            let mut prod = marker_one(b, deg);
            for &l in &ls {
                let kk = k - l as i64;
                let fam = families
                    .entry((kk, deg))
                    .or_insert_with(|| self.family(kk, deg, (r, k)));
                prod = marker_mul(b, &prod, fam, deg);
            }
            if prod[deg].is_zero() {
                continue;
            }
            let term = prod[deg].shift(size);
            rest = b.add(&rest, &b.scale(&term, mult));
        }
        let lhs = &b.one() - &self.get(0, k - 1).shift(1);
        rest.div(&lhs)
    }
}

pub fn phi_series(catalog: &ShapeCatalog, r: u32, k: i64, order: usize) -> Result<PowerSeries> {
    PhiSolver::new(order, catalog).phi(r, k)
}

/// `x^{2r+1} Ψ_0^{r+2}` evaluated independently of the catalog.
pub fn exceptional_contribution_series(r: u32, order: usize) -> PowerSeries {
    let psi0 = catalan_series(order);
    let mut acc = PowerSeries::monomial(order, 2 * r as usize + 1);
    for _ in 0..r + 2 {
        acc = &acc * &psi0;
    }
    acc
}
