//! Truncated formal power series with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients of `x^0 ..= x^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::monomial(order, 0)
    }

    /// `x^k` truncated at `order` (zero when `k > order`).
    pub fn monomial(order: usize, k: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = BigRational::one();
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = PowerSeries::zero(order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_integers<T: Into<BigInt>>(
        order: usize,
        coeffs: impl IntoIterator<Item = T>,
    ) -> Self {
        PowerSeries::from_coeffs(
            order,
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into())),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries::from_coeffs(order, self.coeffs.iter().cloned())
    }

    /// Multiplication by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let order = self.order();
        let mut out = PowerSeries::zero(order);
        for i in 0..=order.saturating_sub(k) {
            if i + k <= order {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `a / b` with `b(0) != 0`; result order is the smaller of the two.
    pub fn div(&self, b: &PowerSeries) -> Result<PowerSeries> {
        let b0 = b.coeffs[0].clone();
        if b0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order().min(b.order());
        let mut c: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !b.coeffs[k].is_zero() {
                    acc -= &b.coeffs[k] * &c[n - k];
                }
            }
            c.push(acc / &b0);
        }
        Ok(PowerSeries { coeffs: c })
    }

    /// Integer coefficients, or the first offending index.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegral {
                        index,
                        coeff: c.to_string(),
                    })
                }
            })
            .collect()
    }

    /// Exact decimal text for each coefficient (`a/b` when not integral).
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Cauchy product truncated at the shared order.
impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Catalan series `Σ C_n x^n`, i.e. the solution of `F = 1 + x F²`.
pub fn catalan_series(order: usize) -> PowerSeries {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=order {
        let next: BigInt = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
        c.push(next);
    }
    PowerSeries::from_integers(order, c)
}

/// `(1 − 4x)^{1/2}`: `1 − Σ_{n≥1} (2/n)·C(2n−2, n−1) x^n`.
pub fn sqrt_one_minus_4x(order: usize) -> PowerSeries {
    let mut coeffs = vec![BigInt::one()];
    // central = C(2n−2, n−1)
    let mut central = BigInt::one();
    for n in 1..=order {
        if n > 1 {
            let m = n - 1;
            central = central * BigInt::from(2 * (2 * m - 1)) / BigInt::from(m);
        }
        coeffs.push(-(&central * 2u32) / BigInt::from(n));
    }
    PowerSeries::from_integers(order, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.to_integers()
            .unwrap()
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn binomial_half(n: usize) -> BigRational {
        // C(1/2, n)·(−4)^n, straight from the generalized binomial definition.
        let half = BigRational::new(1.into(), 2.into());
        let mut c = BigRational::one();
        for i in 0..n {
            c = c * (&half - BigRational::from_integer(i.into()))
                / BigRational::from_integer((i + 1).into());
        }
        c * BigRational::from_integer(BigInt::from(-4).pow(n as u32))
    }

    #[test]
    fn products() {
        let a = PowerSeries::from_integers(4, [1, 1]);
        let b = PowerSeries::from_integers(4, [1, -1]);
        assert_eq!(ints(&(&a * &b)), vec![1, 0, -1, 0, 0]);
        assert!((&a * &PowerSeries::zero(4)).is_zero());
        let short = PowerSeries::from_integers(2, [1, 1, 1]);
        assert_eq!((&a * &short).order(), 2);
    }

    #[test]
    fn catalan_identity() {
        let c = catalan_series(4);
        assert_eq!(ints(&c), vec![1, 1, 2, 5, 14]);
        let lhs = &c - &PowerSeries::one(4);
        let rhs = (&c * &c).shift(1);
        assert_eq!(lhs, rhs);
        assert_eq!(ints(&(&c * &c)), vec![1, 2, 5, 14, 42]);
    }

    #[test]
    fn division() {
        let geo = PowerSeries::one(5)
            .div(&PowerSeries::from_integers(5, [1, -1]))
            .unwrap();
        assert_eq!(ints(&geo), vec![1; 6]);
        let a = catalan_series(6);
        assert_eq!(a.div(&a).unwrap(), PowerSeries::one(6));
        assert_eq!(
            a.div(&PowerSeries::monomial(6, 1)),
            Err(Error::ZeroConstantTerm)
        );

        // (Ψ0 − 1)/x divided by Ψ0 gives Ψ0 back, at one order less.
        let psi0 = catalan_series(8);
        let num = PowerSeries::from_coeffs(
            7,
            (&psi0 - &PowerSeries::one(8)).coeffs()[1..].iter().cloned(),
        );
        assert_eq!(num.div(&psi0).unwrap(), psi0.truncate(7));
    }

    #[test]
    fn square_root() {
        assert_eq!(ints(&sqrt_one_minus_4x(4)), vec![1, -2, -2, -4, -10]);
        for n in 0..=30 {
            assert_eq!(sqrt_one_minus_4x(30).coeff(n), &binomial_half(n));
        }
        for order in [0, 1, 5, 64] {
            let y = sqrt_one_minus_4x(order);
            assert_eq!(&y * &y, PowerSeries::from_integers(order, [1, -4]));
        }
        let psi0 = catalan_series(20);
        let lhs =
            &PowerSeries::one(20) - &psi0.shift(1).scale(&BigRational::from_integer(2.into()));
        assert_eq!(lhs, sqrt_one_minus_4x(20));
    }

    #[test]
    fn shifting() {
        let s = PowerSeries::from_integers(3, [1, 2, 3, 4]);
        assert_eq!(ints(&s.shift(2)), vec![0, 0, 1, 2]);
        assert!(s.shift(7).is_zero());
    }
}
