//! Experimental checks on the closed forms and the shape catalog. These are
//! reported, never enforced.

use serde::Serialize;

use crate::algebraic::{extract_pq, not_divisible_by_one_minus_4x, PqForm};
use crate::error::Result;
use crate::poly::IntPoly;
use crate::shapes::ShapeCatalog;
use crate::solver::{ClosedFormBackend, PsiSolver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub r: u32,
    /// `P` and `Q` are polynomials.
    pub polynomial: bool,
    /// `2P` and `2Q` have integer coefficients.
    pub half_integral: bool,
    /// `1 − 4x` does not divide `Q`.
    pub q_coprime_to_one_minus_4x: bool,
    #[serde(skip)]
    pub two_p: Option<IntPoly>,
    #[serde(skip)]
    pub two_q: Option<IntPoly>,
}

pub fn closed_form_reports(catalog: &ShapeCatalog, max_r: u32) -> Result<Vec<ClosedFormReport>> {
    let mut solver = PsiSolver::new(ClosedFormBackend, catalog);
    let levels = solver.solve_to(max_r)?.to_vec();
    Ok(levels
        .iter()
        .enumerate()
        .skip(1)
        .map(|(r, a)| {
            let form = extract_pq(a, r as u32);
            let doubled = form.doubled_integral();
            let coprime = match &form {
                PqForm::Polynomial { q, .. } => not_divisible_by_one_minus_4x(q),
                PqForm::Rational { .. } => false,
            };
            ClosedFormReport {
                r: r as u32,
                polynomial: form.is_polynomial(),
                half_integral: doubled.is_some(),
                q_coprime_to_one_minus_4x: coprime,
                two_p: doubled.as_ref().map(|d| d.0.clone()),
                two_q: doubled.map(|d| d.1),
            }
        })
        .collect())
}

/// Catalogued shapes other than `1` with fewer entries than feasible cells.
pub fn size_vs_cells_counterexamples(catalog: &ShapeCatalog) -> Vec<String> {
    catalog
        .records
        .iter()
        .filter(|rec| rec.size > 1 && rec.size < rec.f())
        .map(|rec| format!("{} (s = {}, f = {})", rec.shape, rec.size, rec.f()))
        .collect()
}
