//! Browser bindings. Every function returns a JSON string; failures come
//! back as `{"error": "..."}` so the page never has to catch exceptions.
//! Big integers travel as decimal strings.

use std::cell::OnceCell;

use perm132::algebraic::{extract_pq, PqForm};
use perm132::kernel::{cell_decomposition, decompose, kernel_of};
use perm132::{
    enumerate_kernel_shapes, phi_series, psi_closed_form, psi_series, Permutation, ShapeCatalog,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest occurrence count offered in the browser.
pub const MAX_OCC: u32 = 4;
/// Largest series order offered in the browser.
pub const MAX_ORDER: usize = 60;
/// Longest permutation accepted for decomposition.
pub const MAX_LEN: usize = 40;

thread_local! {
    static CATALOG: OnceCell<ShapeCatalog> = const { OnceCell::new() };
}

fn with_catalog<T>(f: impl FnOnce(&ShapeCatalog) -> T) -> T {
    CATALOG.with(|c| f(c.get_or_init(|| enumerate_kernel_shapes(MAX_OCC).expect("small catalog"))))
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn check_level(r: u32, order: usize) -> Result<(), String> {
    if r > MAX_OCC {
        return Err(format!("occurrence count limited to {MAX_OCC} here"));
    }
    if order > MAX_ORDER {
        return Err(format!("order limited to {MAX_ORDER} here"));
    }
    Ok(())
}

fn values(p: &Permutation) -> Vec<u32> {
    p.values().to_vec()
}

/// Kernel, shape and cell grid of a permutation given as digits or a
/// comma/space separated list.
#[wasm_bindgen]
pub fn decompose_permutation(text: &str) -> String {
    respond((|| {
        let p: Permutation = text
            .trim()
            .parse()
            .map_err(|e: perm132::Error| e.to_string())?;
        if p.is_empty() {
            return Err("empty permutation".to_string());
        }
        if p.len() > MAX_LEN {
            return Err(format!("at most {MAX_LEN} entries here"));
        }
        let kernel = kernel_of(&p);
        let grid = cell_decomposition(&kernel.shape).map_err(|e| e.to_string())?;
        let dec = decompose(&p).map_err(|e| e.to_string())?;
        let cells: Vec<Value> = grid
            .cells()
            .map(|c| {
                let slot = dec.cells.iter().position(|&d| d == c);
                json!({
                    "m": c.m,
                    "l": c.l,
                    "feasible": grid.is_feasible(c),
                    "rank": slot.map(|i| i + 1),
                    "content": slot.map(|i| values(&dec.contents[i])),
                })
            })
            .collect();
        Ok(json!({
            "permutation": values(&p),
            "occurrences": p.count_132(),
            "lis": p.lis_length(),
            "kernel_positions": kernel.positions,
            "kernel_values": kernel.values,
            "shape": values(&kernel.shape),
            "capacity": kernel.capacity,
            "cells": cells,
        }))
    })())
}

/// Series coefficients for exactly `r` occurrences, with `2P` and `2Q` of
/// the closed form when they are integer polynomials.
#[wasm_bindgen]
pub fn psi_coefficients(r: u32, order: usize) -> String {
    respond((|| {
        check_level(r, order)?;
        with_catalog(|catalog| {
            let s = psi_series(catalog, r, order).map_err(|e| e.to_string())?;
            let a = psi_closed_form(catalog, r).map_err(|e| e.to_string())?;
            let closed = match extract_pq(&a, r) {
                form @ PqForm::Polynomial { .. } => form.doubled_integral().map(|(p, q)| {
                    json!({
                        "two_P": p.to_string(),
                        "two_Q": q.to_string(),
                        "exponent": format!("{}/2", 1 - 2 * r as i64),
                    })
                }),
                PqForm::Rational { .. } => None,
            };
            Ok(json!({ "series": s.to_decimal_strings(), "closed_form": closed }))
        })
    })())
}

/// Series for exactly `r` occurrences and no increasing run of length `k`.
#[wasm_bindgen]
pub fn phi_coefficients(r: u32, k: i32, order: usize) -> String {
    respond((|| {
        check_level(r, order)?;
        with_catalog(|catalog| {
            let s = phi_series(catalog, r, k as i64, order).map_err(|e| e.to_string())?;
            Ok(json!({ "series": s.to_decimal_strings() }))
        })
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn decomposes_example() {
        let v = parse(&decompose_permutation("67382451"));
        assert_eq!(v["shape"], json!([1, 4, 2, 3]));
        assert_eq!(v["occurrences"], json!(p_count("67382451")));
        let filled: Vec<Value> = v["cells"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["feasible"] == json!(true))
            .map(|c| c["content"].clone())
            .collect();
        assert_eq!(filled.len(), 4);
        let by_rank = |rank: u64| {
            v["cells"]
                .as_array()
                .unwrap()
                .iter()
                .find(|c| c["rank"] == json!(rank))
                .unwrap()["content"]
                .clone()
        };
        assert_eq!(by_rank(1), json!([1, 2]));
        assert_eq!(by_rank(2), json!([1]));
        assert_eq!(by_rank(3), json!([]));
        assert_eq!(by_rank(4), json!([1]));
    }

    fn p_count(s: &str) -> u64 {
        s.parse::<Permutation>().unwrap().count_132()
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "1123", "abc", "0,1"] {
            assert!(
                parse(&decompose_permutation(bad)).get("error").is_some(),
                "{bad}"
            );
        }
    }

    #[test]
    fn psi_json() {
        let v = parse(&psi_coefficients(1, 6));
        assert_eq!(v["series"], json!(["0", "0", "0", "1", "5", "21", "84"]));
        assert_eq!(v["closed_form"]["two_P"], json!("2x - 2"));
        assert_eq!(v["closed_form"]["exponent"], json!("-1/2"));
        assert!(parse(&psi_coefficients(0, 4))["closed_form"].is_null());
        assert!(parse(&psi_coefficients(MAX_OCC + 1, 4))
            .get("error")
            .is_some());
        assert!(parse(&psi_coefficients(1, MAX_ORDER + 1))
            .get("error")
            .is_some());
    }

    #[test]
    fn phi_json() {
        let v = parse(&phi_coefficients(0, 3, 5));
        assert_eq!(v["series"], json!(["1", "1", "2", "4", "8", "16"]));
    }
}
