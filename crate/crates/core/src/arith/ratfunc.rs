use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Univariate rational function `num / den` in canonical form: the
/// denominator is monic and coprime to the numerator, zero is `0 / 1`.
///
/// Canonical form makes `==` decide equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_lc(num, den)
    }

    fn normalize_lc(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable `u`.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Value of a constant function.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).expect("exponent fits in u32");
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Exact value at `x`. The canonical form has no removable
    /// singularities, so a vanishing denominator is a genuine pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole { at: x.clone() });
        }
        Ok(self.num.eval(x) / d)
    }

    /// Substitutes `u -> u^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        RatFunc {
            num: self.num.substitute_power(k),
            den: self.den.substitute_power(k),
        }
    }

    /// Taylor expansion at `u = 0`, reduced modulo `u^(order + 1)`.
    pub fn expand(&self, order: usize) -> Result<Poly> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NotPowerSeries);
        }
        if self.is_polynomial() {
            return Ok(self.num.truncate(order));
        }
        // Power-series inverse of the denominator by forward substitution.
        let d0_inv = d0.recip();
        let den = self.den.coeffs();
        let mut inv: Vec<Rational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
            for j in 1..=k.min(den.len().saturating_sub(1)) {
                acc -= &den[j] * &inv[k - j];
            }
            inv.push(acc * &d0_inv);
        }
        Ok((&self.num * &Poly::from_coeffs(inv)).truncate(order))
    }

    /// Text form in a named variable; polynomials print bare, proper
    /// fractions as `(num)/(den)` scaled so that `den(0) = 1` if nonzero.
    pub fn render(&self, var: &str) -> String {
        if self.is_polynomial() {
            return self.num.render(var);
        }
        // Display with denominator constant term 1 when there is one.
        let c = self.den.coeff(0);
        let (num, den) = if c.is_zero() {
            (self.num.clone(), self.den.clone())
        } else {
            let inv = c.recip();
            (self.num.scale(&inv), self.den.scale(&inv))
        };
        let wrap = |p: &Poly| {
            let s = p.render(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&num), wrap(&den))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("u"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): any common factor of the new
        // numerator and denominator divides g.
        let g = Poly::gcd(&self.den, &rhs.den);
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &self.num * &d + &rhs.num * &b;
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = &b * &rhs.den;
        if g.is_one() {
            return RatFunc::normalize_lc(num, den);
        }
        let h = Poly::gcd(&num, &g);
        if h.is_one() {
            RatFunc::normalize_lc(num, den)
        } else {
            RatFunc::normalize_lc(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let cancel = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = cancel(&self.num, &g1) * cancel(&rhs.num, &g2);
        let den = cancel(&self.den, &g2) * cancel(&rhs.den, &g1);
        RatFunc::normalize_lc(num, den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::one(), |acc, x| acc * x)
    }
}
