//! Dense univariate polynomials over `Z` and `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        IntPoly::new(v)
    }

    /// `1 − 4x`
    pub fn one_minus_4x() -> Self {
        IntPoly::from_i64(&[1, -4])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Power of `x` dividing the polynomial; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(
            self.0
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    /// Drops `k` low-order coefficients (division by `x^k`; caller checks
    /// the valuation).
    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::new(self.0.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        IntPoly(v)
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by its content, leading coefficient made positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Pseudo-remainder of `self` by `d` (`d` nonzero).
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let t = IntPoly::monomial(lr, dr - dd);
            r = &r.scale(&lc) - &(&t * d);
        }
        r
    }

    /// Greatest common divisor in `Z[x]`, primitive with positive leading
    /// coefficient times the gcd of contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&c)
    }

    /// Quotient in `Z[x]` when `d` divides `self` exactly over `Z`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = RatPoly::from_int(self).div_rem(&RatPoly::from_int(d));
        if r.is_zero() && q.den.is_one() {
            Some(q.num)
        } else {
            None
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.0.len().max(rhs.0.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    if coeffs.iter().all(Zero::is_zero) {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let show_mag = k == 0 || !mag.is_one();
        if show_mag {
            write!(f, "{mag}")?;
        }
        match k {
            0 => {}
            1 => f.write_str("x")?,
            _ => write!(f, "x^{k}")?,
        }
    }
    Ok(())
}

/// Human readable, highest degree first: `2x^3 - 5x^2 + 7x - 2`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.0)
    }
}

/// Rational polynomial stored as integer numerator over a shared positive
/// denominator, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    pub num: IntPoly,
    pub den: BigInt,
}

impl RatPoly {
    pub fn new(num: IntPoly, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatPoly {
                num,
                den: BigInt::one(),
            };
        }
        let mut g = num.content().gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        RatPoly {
            num: num.div_scalar(&g),
            den: den / g,
        }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(p.clone(), BigInt::one())
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        RatPoly::new(IntPoly::new(num), den)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num.coeff(k), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    fn to_rationals(&self) -> Vec<BigRational> {
        (0..self.num.coeffs().len())
            .map(|k| self.coeff(k))
            .collect()
    }

    /// Euclidean division over `Q`.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("nonzero divisor");
        let dc = d.to_rationals();
        let lc = dc[dd].clone();
        let mut r = self.to_rationals();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let t = &r[k] / &lc;
            if !t.is_zero() {
                for (i, c) in dc.iter().enumerate() {
                    r[k - dd + i] -= &t * c;
                }
                q[k - dd] = t;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (RatPoly::from_rationals(&q), RatPoly::from_rationals(&r))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
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
    fn arithmetic() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[1, 2]) + &p(&[-1, -2]), IntPoly::zero());
        assert_eq!(p(&[0, 0, 3]).valuation(), Some(2));
        assert_eq!(p(&[1, -4]).pow(2), p(&[1, -8, 16]));
    }

    #[test]
    fn gcds() {
        let a = &p(&[1, -4]) * &p(&[0, 2, 6]);
        let b = &p(&[1, -4]).pow(2) * &p(&[3]);
        assert_eq!(a.gcd(&b), p(&[-1, 4]));
        assert_eq!(p(&[4, 8]).gcd(&p(&[6])), p(&[2]));
        assert_eq!(p(&[0, 1]).gcd(&p(&[1, 1])), p(&[1]));
    }

    #[test]
    fn division() {
        let a = &p(&[1, -4]) * &p(&[2, 0, 5]);
        assert_eq!(a.div_exact(&p(&[1, -4])), Some(p(&[2, 0, 5])));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
        let (q, r) = RatPoly::from_int(&p(&[1, 0, 1])).div_rem(&RatPoly::from_int(&p(&[0, 2])));
        assert_eq!(q, RatPoly::new(p(&[0, 1]), BigInt::from(2)));
        assert_eq!(r, RatPoly::from_int(&p(&[1])));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, 7, -5, 2]).to_string(), "2x^3 - 5x^2 + 7x - 2");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(
            RatPoly::new(p(&[1, 3]), BigInt::from(-2)).to_string(),
            "(-3x - 1)/2"
        );
    }

    #[test]
    fn evaluation() {
        let quarter = BigRational::new(1.into(), 4.into());
        assert!(p(&[1, -4]).eval(&quarter).is_zero());
        assert_eq!(
            p(&[1, 1]).eval(&quarter),
            BigRational::new(5.into(), 4.into())
        );
    }
}
