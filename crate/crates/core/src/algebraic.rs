//! Elements of `Q(x)[y] / (y² − (1 − 4x))`, written `(p + q·y) / d` with
//! integer polynomials `p`, `q`, `d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};
use crate::series::{sqrt_one_minus_4x, PowerSeries};

#[derive(Clone, Debug)]
pub struct AlgebraicFunction {
    p: IntPoly,
    q: IntPoly,
    d: IntPoly,
}

impl AlgebraicFunction {
    /// `(p + q·y) / d`, normalized.
    pub fn new(p: IntPoly, q: IntPoly, d: IntPoly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(AlgebraicFunction { p, q, d }.normalized())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        AlgebraicFunction::new(p, IntPoly::zero(), IntPoly::one()).expect("unit denominator")
    }

    pub fn zero() -> Self {
        AlgebraicFunction::from_poly(IntPoly::zero())
    }

    pub fn one() -> Self {
        AlgebraicFunction::from_poly(IntPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        AlgebraicFunction::from_poly(IntPoly::from_i64(&[c]))
    }

    /// `x^k`
    pub fn x_pow(k: usize) -> Self {
        AlgebraicFunction::from_poly(IntPoly::monomial(BigInt::one(), k))
    }

    /// `y = √(1 − 4x)`
    pub fn y() -> Self {
        AlgebraicFunction::new(IntPoly::zero(), IntPoly::one(), IntPoly::one()).unwrap()
    }

    /// Catalan generating function `(1 − y) / (2x)`.
    pub fn catalan() -> Self {
        AlgebraicFunction::new(
            IntPoly::from_i64(&[1]),
            IntPoly::from_i64(&[-1]),
            IntPoly::from_i64(&[0, 2]),
        )
        .unwrap()
    }

    pub fn p(&self) -> &IntPoly {
        &self.p
    }

    pub fn q(&self) -> &IntPoly {
        &self.q
    }

    pub fn d(&self) -> &IntPoly {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Removes the common factors of `p`, `q`, `d`: powers of `x` and of
    /// `1 − 4x` first, then any remaining polynomial gcd, then the integer
    /// content. The leading coefficient of `d` ends up positive.
    fn normalized(mut self) -> Self {
        if self.is_zero() {
            return AlgebraicFunction {
                p: IntPoly::zero(),
                q: IntPoly::zero(),
                d: IntPoly::one(),
            };
        }
        let v = [self.p.valuation(), self.q.valuation(), self.d.valuation()]
            .into_iter()
            .flatten()
            .min()
            .unwrap_or(0);
        if v > 0 {
            self.p = self.p.shift_down(v);
            self.q = self.q.shift_down(v);
            self.d = self.d.shift_down(v);
        }
        let f = IntPoly::one_minus_4x();
        loop {
            let parts = (
                self.p.div_exact(&f),
                self.q.div_exact(&f),
                self.d.div_exact(&f),
            );
            match parts {
                (Some(p), Some(q), Some(d)) => {
                    self.p = p;
                    self.q = q;
                    self.d = d;
                }
                _ => break,
            }
        }
        if !self.d.is_zero() && self.d.degree() > Some(0) && !is_x_4x_product(&self.d) {
            let g = self.p.gcd(&self.q).gcd(&self.d);
            if g.degree() > Some(0) {
                self.p = self.p.div_exact(&g).expect("gcd divides p");
                self.q = self.q.div_exact(&g).expect("gcd divides q");
                self.d = self.d.div_exact(&g).expect("gcd divides d");
            }
        }
        let mut c = self
            .p
            .content()
            .gcd(&self.q.content())
            .gcd(&self.d.content());
        if self.d.leading().unwrap().is_negative() {
            c = -c;
        }
        AlgebraicFunction {
            p: self.p.div_scalar(&c),
            q: self.q.div_scalar(&c),
            d: self.d.div_scalar(&c),
        }
    }

    pub fn add(&self, b: &Self) -> Self {
        AlgebraicFunction {
            p: &(&self.p * &b.d) + &(&b.p * &self.d),
            q: &(&self.q * &b.d) + &(&b.q * &self.d),
            d: &self.d * &b.d,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        AlgebraicFunction {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, b: &Self) -> Self {
        self.add(&b.neg())
    }

    pub fn mul(&self, b: &Self) -> Self {
        let y2 = IntPoly::one_minus_4x();
        AlgebraicFunction {
            p: &(&self.p * &b.p) + &(&(&self.q * &b.q) * &y2),
            q: &(&self.p * &b.q) + &(&self.q * &b.p),
            d: &self.d * &b.d,
        }
        .normalized()
    }

    /// Multiplies by the conjugate `p − q·y` to clear `y` from the divisor.
    pub fn div(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let y2 = IntPoly::one_minus_4x();
        let norm = &(&b.p * &b.p) - &(&(&b.q * &b.q) * &y2);
        let conj = AlgebraicFunction {
            p: &b.p * &b.d,
            q: -&(&b.q * &b.d),
            d: norm,
        };
        Ok(self.mul(&conj))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        AlgebraicFunction {
            p: self.p.scale(c),
            q: self.q.scale(c),
            d: self.d.clone(),
        }
        .normalized()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(AlgebraicFunction::one(), |acc, _| acc.mul(self))
    }

    /// Taylor expansion up to `x^order`. Powers of `x` in `d` must cancel
    /// against the numerator.
    pub fn to_series(&self, order: usize) -> Result<PowerSeries> {
        let v = self.d.valuation().expect("nonzero d");
        let work = order + v;
        let y = sqrt_one_minus_4x(work);
        let p = PowerSeries::from_integers(work, self.p.coeffs().iter().cloned());
        let q = PowerSeries::from_integers(work, self.q.coeffs().iter().cloned());
        let num = &p + &(&q * &y);
        if (0..v).any(|k| !num.coeff(k).is_zero()) {
            return Err(Error::PoleAtOrigin);
        }
        let shifted = PowerSeries::from_coeffs(order, num.coeffs()[v..].iter().cloned());
        let den = PowerSeries::from_integers(order, self.d.shift_down(v).coeffs().iter().cloned());
        shifted.div(&den)
    }
}

fn is_x_4x_product(d: &IntPoly) -> bool {
    let mut d = d.shift_down(d.valuation().unwrap_or(0));
    let f = IntPoly::one_minus_4x();
    while let Some(q) = d.div_exact(&f) {
        d = q;
    }
    d.degree() == Some(0)
}

/// Equality by cross-multiplication.
impl PartialEq for AlgebraicFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.p * &other.d == &other.p * &self.d && &self.q * &other.d == &other.q * &self.d
    }
}

impl Eq for AlgebraicFunction {}

impl fmt::Display for AlgebraicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}) + ({})·√(1-4x)) / ({})", self.p, self.q, self.d)
    }
}

/// Numerator and denominator of a rational function, as `a / b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: IntPoly,
    pub den: IntPoly,
}

impl RationalFunction {
    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.degree() == Some(0) && g.coeff(0).is_one() {
            (num, den)
        } else {
            let gp = g.primitive_part();
            (
                num.div_exact(&gp).unwrap_or(num),
                den.div_exact(&gp).unwrap_or(den),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if !c.is_zero() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        RationalFunction { num, den }
    }

    /// The polynomial, if the division is exact over `Q`.
    pub fn as_poly(&self) -> Option<RatPoly> {
        let (q, r) = RatPoly::from_int(&self.num).div_rem(&RatPoly::from_int(&self.den));
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Result of writing `a = ½·(P + Q·(1 − 4x)^{−r+1/2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PqForm {
    Polynomial {
        p: RatPoly,
        q: RatPoly,
    },
    Rational {
        p: RationalFunction,
        q: RationalFunction,
    },
}

impl PqForm {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, PqForm::Polynomial { .. })
    }

    /// `2P` and `2Q` as integer polynomials, when they are.
    pub fn doubled_integral(&self) -> Option<(IntPoly, IntPoly)> {
        match self {
            PqForm::Polynomial { p, q } => {
                let two = BigInt::from(2);
                let dp = RatPoly::new(p.num.scale(&two), p.den.clone());
                let dq = RatPoly::new(q.num.scale(&two), q.den.clone());
                (dp.is_integral() && dq.is_integral()).then_some((dp.num, dq.num))
            }
            PqForm::Rational { .. } => None,
        }
    }
}

/// `P = 2p/d`, `Q = 2q·(1 − 4x)^r / d`.
pub fn extract_pq(a: &AlgebraicFunction, r: u32) -> PqForm {
    let two = BigInt::from(2);
    let p_num = a.p.scale(&two);
    let q_num = &a.q.scale(&two) * &IntPoly::one_minus_4x().pow(r);
    let p = RationalFunction::reduced(p_num, a.d.clone());
    let q = RationalFunction::reduced(q_num, a.d.clone());
    match (p.as_poly(), q.as_poly()) {
        (Some(p), Some(q)) => PqForm::Polynomial { p, q },
        _ => PqForm::Rational { p, q },
    }
}

/// Inverse of [`extract_pq`]: `½·P + ½·Q·y / (1 − 4x)^r`.
pub fn assemble_pq(p: &RatPoly, q: &RatPoly, r: u32) -> AlgebraicFunction {
    let two = BigInt::from(2);
    let d = (&p.den * &q.den) * &two;
    AlgebraicFunction::new(
        &p.num.scale(&q.den) * &IntPoly::one_minus_4x().pow(r),
        q.num.scale(&p.den),
        IntPoly::one_minus_4x().pow(r).scale(&d),
    )
    .expect("nonzero denominator")
}

/// `Q(1/4) != 0`, i.e. `1 − 4x` does not divide `Q`.
pub fn not_divisible_by_one_minus_4x(q: &RatPoly) -> bool {
    !q.num.eval(&BigRational::new(1.into(), 4.into())).is_zero()
}

/// Exact coefficients serialized as decimal strings with a shared
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
    pub denominator: String,
}

impl From<&RatPoly> for PolyJson {
    fn from(p: &RatPoly) -> Self {
        PolyJson {
            coeffs: p.num.coeffs().iter().map(ToString::to_string).collect(),
            denominator: p.den.to_string(),
        }
    }
}

impl From<&IntPoly> for PolyJson {
    fn from(p: &IntPoly) -> Self {
        PolyJson {
            coeffs: p.coeffs().iter().map(ToString::to_string).collect(),
            denominator: "1".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn catalan_quadratic() {
        let psi0 = AlgebraicFunction::catalan();
        let x = AlgebraicFunction::x_pow(1);
        let lhs = x
            .mul(&psi0)
            .mul(&psi0)
            .sub(&psi0)
            .add(&AlgebraicFunction::one());
        assert!(lhs.is_zero());
        let two_x_psi = x.mul(&psi0).scale(&BigInt::from(2));
        assert_eq!(
            AlgebraicFunction::one().sub(&two_x_psi),
            AlgebraicFunction::y()
        );
    }

    #[test]
    fn field_ops() {
        let a = AlgebraicFunction::new(p(&[1, 2]), p(&[3]), p(&[0, 1, -4])).unwrap();
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.div(&a).unwrap(), AlgebraicFunction::one());
        let b = AlgebraicFunction::new(p(&[2]), p(&[-1, 5]), p(&[7])).unwrap();
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert_eq!(
            a.div(&AlgebraicFunction::zero()),
            Err(Error::DivisionByZero)
        );
        let y = AlgebraicFunction::y();
        assert_eq!(y.mul(&y), AlgebraicFunction::from_poly(p(&[1, -4])));
    }

    #[test]
    fn normalization() {
        let a = AlgebraicFunction::new(p(&[0, 2, -8]), p(&[0, 4, -16]), p(&[0, -6, 24])).unwrap();
        assert_eq!(a.p(), &p(&[-1]));
        assert_eq!(a.q(), &p(&[-2]));
        assert_eq!(a.d(), &p(&[3]));
        // common factor (1 + x) is neither x nor 1 − 4x
        let b = AlgebraicFunction::new(p(&[1, 1]), p(&[2, 2]), p(&[3, 4, 1])).unwrap();
        assert_eq!(b.d(), &p(&[3, 1]));
    }

    #[test]
    fn series_expansion() {
        let c = AlgebraicFunction::catalan().to_series(4).unwrap();
        assert_eq!(c, PowerSeries::from_integers(4, [1, 1, 2, 5, 14]));
        assert_eq!(
            AlgebraicFunction::one().to_series(3).unwrap(),
            PowerSeries::one(3)
        );
        let pole = AlgebraicFunction::y()
            .div(&AlgebraicFunction::x_pow(1))
            .unwrap();
        assert_eq!(pole.to_series(3), Err(Error::PoleAtOrigin));
    }

    #[test]
    fn pq_roundtrip() {
        // Ψ1 = ½(x − 1 + (1 − 3x)/y)
        let psi1 =
            AlgebraicFunction::new(&p(&[-1, 1]) * &p(&[1, -4]), p(&[1, -3]), p(&[2, -8])).unwrap();
        match extract_pq(&psi1, 1) {
            PqForm::Polynomial { p: pp, q } => {
                assert_eq!(pp, RatPoly::from_int(&p(&[-1, 1])));
                assert_eq!(q, RatPoly::from_int(&p(&[1, -3])));
                assert_eq!(assemble_pq(&pp, &q, 1), psi1);
                assert!(not_divisible_by_one_minus_4x(&q));
            }
            other => panic!("{other:?}"),
        }
        assert!(!extract_pq(&AlgebraicFunction::catalan(), 0).is_polynomial());
    }
}
