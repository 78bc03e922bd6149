//! Exact text renderings. Every number is printed from its big-integer
//! decimal form, never through floating point.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use perm132::algebraic::PqForm;
use perm132::poly::IntPoly;
use perm132::PowerSeries;

fn int_array(coeffs: &[BigInt]) -> String {
    let items: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(","))
}

/// JSON array of coefficients, or `n,coefficient` CSV rows.
pub fn series(out: &mut impl Write, s: &PowerSeries, csv: bool) -> io::Result<()> {
    let coeffs = s.to_decimal_strings();
    if csv {
        writeln!(out, "n,coefficient")?;
        for (n, c) in coeffs.iter().enumerate() {
            writeln!(out, "{n},{c}")?;
        }
        Ok(())
    } else {
        writeln!(out, "[{}]", coeffs.join(","))
    }
}

/// `P` and `Q` as numerator/denominator pairs of integer polynomials.
fn pq_fractions(form: &PqForm) -> [(IntPoly, IntPoly); 2] {
    match form {
        PqForm::Polynomial { p, q } => [
            (p.num.clone(), IntPoly::constant(p.den.clone())),
            (q.num.clone(), IntPoly::constant(q.den.clone())),
        ],
        PqForm::Rational { p, q } => [
            (p.num.clone(), p.den.clone()),
            (q.num.clone(), q.den.clone()),
        ],
    }
}

/// `{"two_P":[…],"two_Q":[…],"exponent_num":1−2r,"exponent_den":2}` with
/// ascending coefficients. When `2P` or `2Q` is not an integer polynomial
/// both are given as fractions: `{"P":{"num":[…],"den":[…]},"Q":…}`.
pub fn closed_form_json(out: &mut impl Write, form: &PqForm, r: u32) -> io::Result<()> {
    let exponent = 1 - 2 * r as i64;
    match form.doubled_integral() {
        Some((two_p, two_q)) => writeln!(
            out,
            "{{\"two_P\":{},\"two_Q\":{},\"exponent_num\":{exponent},\"exponent_den\":2}}",
            int_array(two_p.coeffs()),
            int_array(two_q.coeffs())
        ),
        None => {
            let [(pn, pd), (qn, qd)] = pq_fractions(form);
            writeln!(
                out,
                "{{\"P\":{{\"num\":{},\"den\":{}}},\"Q\":{{\"num\":{},\"den\":{}}},\"exponent_num\":{exponent},\"exponent_den\":2}}",
                int_array(pn.coeffs()),
                int_array(pd.coeffs()),
                int_array(qn.coeffs()),
                int_array(qd.coeffs())
            )
        }
    }
}

fn latex_poly(p: &IntPoly) -> String {
    let mut s = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        let a = c.abs();
        if !a.is_one() || k == 0 {
            s.push_str(&a.to_string());
        }
        match k {
            0 => {}
            1 => s.push('x'),
            _ => s.push_str(&format!("x^{{{k}}}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn latex_fraction(num: &IntPoly, den: &IntPoly) -> String {
    if den.degree() == Some(0) && den.coeff(0).is_one() {
        latex_poly(num)
    } else {
        format!("\\frac{{{}}}{{{}}}", latex_poly(num), latex_poly(den))
    }
}

pub fn closed_form_latex(out: &mut impl Write, form: &PqForm, r: u32) -> io::Result<()> {
    let [(pn, pd), (qn, qd)] = pq_fractions(form);
    let exponent = 1 - 2 * r as i64;
    writeln!(
        out,
        "\\Psi_{{{r}}}(x)=\\frac{{1}}{{2}}\\left({}+\\left({}\\right)(1-4x)^{{{exponent}/2}}\\right)",
        latex_fraction(&pn, &pd),
        latex_fraction(&qn, &qd)
    )
}

/// Aligned `n | solver | oracle | status` table; true when every row agrees.
pub fn verify_table(out: &mut impl Write, rows: &[(usize, String, String)]) -> io::Result<bool> {
    let w = rows
        .iter()
        .flat_map(|(_, a, b)| [a.len(), b.len()])
        .max()
        .unwrap_or(0)
        .max(6);
    writeln!(
        out,
        "{:>3}  {:>w$}  {:>w$}  status",
        "n", "solver", "oracle"
    )?;
    let mut ok = true;
    for (n, solver, oracle) in rows {
        let status = if solver == oracle { "ok" } else { "MISMATCH" };
        ok &= solver == oracle;
        writeln!(out, "{n:>3}  {solver:>w$}  {oracle:>w$}  {status}")?;
    }
    Ok(ok)
}
