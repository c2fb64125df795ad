use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Poly, RatFunc, Rational};
use crate::error::{Error, Result};

/// Power series in `t` truncated after `t^order`, with rational-function
/// coefficients in `u`. Binary operations truncate to the smaller order.
///
/// The `u` degree is never truncated here; see [`TSeries::truncate_u`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TSeries {
    coeffs: Vec<RatFunc>,
}

impl TSeries {
    pub fn zero(order: usize) -> Self {
        TSeries {
            coeffs: vec![RatFunc::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(RatFunc::one(), order)
    }

    pub fn constant(c: RatFunc, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Takes `coeffs[0..=order]`, padding with zeros.
    pub fn from_coeffs(mut coeffs: Vec<RatFunc>, order: usize) -> Self {
        coeffs.resize(order + 1, RatFunc::zero());
        TSeries { coeffs }
    }

    /// `1 / (1 - a t) = sum a^n t^n`.
    pub fn geometric(a: &RatFunc, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = RatFunc::one();
        for _ in 0..=order {
            coeffs.push(acc.clone());
            acc = &acc * a;
        }
        TSeries { coeffs }
    }

    /// `1 - a t`.
    pub fn one_minus(a: &RatFunc, order: usize) -> Self {
        let mut s = Self::one(order);
        if order >= 1 {
            s.coeffs[1] = -a;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &RatFunc {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitutes `t -> c t`.
    pub fn rescale(&self, c: &RatFunc) -> Self {
        let mut pow = RatFunc::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow = &pow * c;
        }
        TSeries { coeffs }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inv()?;
        let mut out: Vec<RatFunc> = Vec::with_capacity(self.coeffs.len());
        out.push(c0_inv.clone());
        for n in 1..self.coeffs.len() {
            let acc: RatFunc = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            out.push(-(acc * &c0_inv));
        }
        Ok(TSeries { coeffs: out })
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Expands every coefficient as a power series in `u` and reduces it
    /// modulo `u^(u_order + 1)`.
    pub fn truncate_u(&self, u_order: usize) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.expand(u_order).map(RatFunc::from_poly))
            .collect::<Result<_>>()?;
        Ok(TSeries { coeffs })
    }

    /// Coefficients as polynomials; fails if any coefficient is a proper fraction.
    pub fn poly_coeffs(&self) -> Result<Vec<Poly>> {
        self.coeffs
            .iter()
            .map(|c| {
                c.as_poly()
                    .cloned()
                    .ok_or_else(|| Error::Internal(format!("coefficient {c} is not a polynomial")))
            })
            .collect()
    }

    /// Index of the first coefficient where the two series differ, over the
    /// common order.
    pub fn first_difference(&self, other: &TSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Evaluates every coefficient at a rational point `u = x`.
    pub fn eval_coeffs(&self, x: &Rational) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.eval(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries({self})")
    }
}

impl Add<&TSeries> for &TSeries {
    type Output = TSeries;

    fn add(self, rhs: &TSeries) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&TSeries> for &TSeries {
    type Output = TSeries;

    fn sub(self, rhs: &TSeries) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&TSeries> for &TSeries {
    type Output = TSeries;

    fn mul(self, rhs: &TSeries) -> TSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&k| !self.coeffs[k].is_zero() && !rhs.coeffs[n - k].is_zero())
                    .map(|k| &self.coeffs[k] * &rhs.coeffs[n - k])
                    .sum()
            })
            .collect();
        TSeries { coeffs }
    }
}

impl Neg for &TSeries {
    type Output = TSeries;

    fn neg(self) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<TSeries> for TSeries {
            type Output = TSeries;
            fn $m(self, rhs: TSeries) -> TSeries { (&self).$m(&rhs) }
        }
        impl $tr<&TSeries> for TSeries {
            type Output = TSeries;
            fn $m(self, rhs: &TSeries) -> TSeries { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn c(n: i64) -> RatFunc {
        RatFunc::constant(int(n))
    }

    #[test]
    fn product_of_linear_factors() {
        let a = TSeries::from_coeffs(vec![c(1), c(1)], 2);
        let b = TSeries::one_minus(&c(1), 2);
        assert_eq!(&a * &b, TSeries::from_coeffs(vec![c(1), c(0), c(-1)], 2));
    }

    #[test]
    fn geometric_times_its_inverse() {
        let g = TSeries::geometric(&c(1), 3);
        assert_eq!(&g * &TSeries::one_minus(&c(1), 3), TSeries::one(3));
        assert_eq!(TSeries::one_minus(&c(1), 3).inverse().unwrap(), g);
    }

    #[test]
    fn convolution_of_geometrics() {
        let q = RatFunc::var();
        let prod = &TSeries::geometric(&q, 2) * &TSeries::geometric(&c(1), 2);
        let expected = TSeries::from_coeffs(
            vec![
                c(1),
                Poly::from_ints(&[1, 1]).into(),
                Poly::from_ints(&[1, 1, 1]).into(),
            ],
            2,
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn truncation_to_min_order() {
        let a = TSeries::geometric(&c(2), 5);
        let b = TSeries::geometric(&c(3), 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn u_truncation() {
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[1, -1])).unwrap();
        let s = TSeries::constant(f, 1).truncate_u(2).unwrap();
        assert_eq!(s.coeff(0), &RatFunc::from_poly(Poly::from_ints(&[1, 1, 1])));
    }
}
