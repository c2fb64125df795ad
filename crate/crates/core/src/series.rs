//! Zeta-type generating series and exact checks of their product formulas.
//!
//! Frobenius eigenvalues follow the arithmetic convention: the Weil factor
//! of an eigenvalue `chi` is `1 - chi q t`, so the affine line has `chi = 1`,
//! the degree-one class of `G_m` has `chi = 1/q`, and a point over `F_q`
//! has `chi = 1/q`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Poly, RatFunc, Rational, TSeries};
use crate::charmodel::{normalized_point_count, poincare, rational_pow, sign, GradedSpace, Space};
use crate::error::{Error, Result};
use crate::symfunc::phi;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Mismatch { index: usize },
}

/// Two series that a product formula claims are equal, compared
/// coefficientwise after optional reduction modulo `u^(u_order + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub lhs: TSeries,
    pub rhs: TSeries,
    pub t_order: usize,
    pub u_order: Option<usize>,
    pub verdict: Verdict,
}

impl SeriesReport {
    /// Reduces both sides (when `u_order` is set) and compares.
    pub fn compare(lhs: TSeries, rhs: TSeries, u_order: Option<usize>) -> Result<Self> {
        let t_order = lhs.order().min(rhs.order());
        let (lhs, rhs) = match u_order {
            Some(m) => (lhs.truncate(t_order).truncate_u(m)?, rhs.truncate(t_order).truncate_u(m)?),
            None => (lhs.truncate(t_order), rhs.truncate(t_order)),
        };
        let verdict = match lhs.first_difference(&rhs) {
            None => Verdict::Equal,
            Some(index) => Verdict::Mismatch { index },
        };
        Ok(SeriesReport {
            lhs,
            rhs,
            t_order,
            u_order,
            verdict,
        })
    }

    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "power | lhs | rhs")?;
        for n in 0..=self.t_order {
            writeln!(f, "t^{n} | {} | {}", self.lhs.coeff(n), self.rhs.coeff(n))?;
        }
        if let Some(m) = self.u_order {
            writeln!(f, "(coefficients modulo u^{})", m + 1)?;
        }
        match self.verdict {
            Verdict::Equal => write!(f, "verdict: equal"),
            Verdict::Mismatch { index } => write!(f, "verdict: mismatch at t^{index}"),
        }
    }
}

fn u_power(k: usize) -> RatFunc {
    RatFunc::from_poly(Poly::monomial(Rational::one(), k))
}

/// `(1 - a t)^{-e}` as a truncated series.
fn weil_factor(a: &RatFunc, e: i64, order: usize) -> Result<TSeries> {
    if e >= 0 {
        TSeries::geometric(a, order).powi(e)
    } else {
        TSeries::one_minus(a, order).powi(-e)
    }
}

/// Macdonald's product `prod_k (1 - u^k t)^{-(-1)^k b_k}`; its `t^n`
/// coefficient is `P_u(Sym^n X)`. Eigenvalues are ignored.
pub fn betti_zeta(v: &GradedSpace, order: usize) -> TSeries {
    let mut acc = TSeries::one(order);
    for (k, &b) in v.betti_numbers().iter().enumerate() {
        if b == 0 {
            continue;
        }
        let e = if k % 2 == 0 { b as i64 } else { -(b as i64) };
        acc = &acc * &weil_factor(&u_power(k), e, order).expect("constant term 1");
    }
    acc
}

/// Checks `1 + sum P_u(Coh_n X) t^n = prod_{i>=0} zeta^B_X(u^{2i} t)` modulo
/// `(t^{N+1}, u^{M+1})`. The infinite product stops at the first `i` with
/// `2i > M`; every later factor is `1` modulo `u^{M+1}`.
pub fn coh_series(v: &GradedSpace, t_order: usize, u_order: usize) -> Result<SeriesReport> {
    let betti = v.forget_eigenvalues();
    let mut lhs = vec![RatFunc::one()];
    for n in 1..=t_order {
        lhs.push(poincare(&betti, n, Space::Coh)?);
    }
    let lhs = TSeries::from_coeffs(lhs, t_order);

    let zeta = betti_zeta(&betti, t_order);
    let factors = u_order / 2 + 1;
    let mut rhs = TSeries::one(t_order);
    for i in 0..factors {
        rhs = &rhs * &zeta.rescale(&u_power(2 * i));
    }
    SeriesReport::compare(lhs, rhs, Some(u_order))
}

/// `zeta_X(t) = prod_chi (1 - chi q t)^{-[V_chi]}` with `[V_chi]` the signed
/// dimension at `u = 1`. The result's variable is `t`.
pub fn weil_zeta_from_eigendata(v: &GradedSpace, q: u64) -> RatFunc {
    let q = Rational::from_integer(BigInt::from(q));
    v.strata()
        .iter()
        .map(|s| {
            let factor = RatFunc::from_poly(Poly::one_minus(&s.eigenvalue * &q, 1));
            let e = if s.deg % 2 == 0 { -(s.dim as i64) } else { s.dim as i64 };
            factor.pow(e).expect("1 - c t is nonzero")
        })
        .product()
}

/// Coefficients of `prod_{j>=0} (1 - x r^j t)^{-1}` (when `inverse`) or
/// `prod_{j>=0} (1 - x r^j t)` up to `t^order`, from Euler's identities
/// `sum x^n t^n / (r;r)_n` and `sum (-1)^n r^{n(n-1)/2} x^n t^n / (r;r)_n`.
fn euler_product(x: &Rational, r: &Rational, inverse: bool, order: usize) -> TSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pochhammer = Rational::one();
    for n in 0..=order {
        if n > 0 {
            pochhammer *= Rational::one() - rational_pow(r, n);
        }
        let mut c = rational_pow(x, n) / &pochhammer;
        if !inverse {
            c *= rational_pow(r, n * n.saturating_sub(1) / 2);
            if n % 2 == 1 {
                c = -c;
            }
        }
        coeffs.push(RatFunc::constant(c));
    }
    TSeries::from_coeffs(coeffs, order)
}

/// Checks `Z_X(t) = prod_{i>=1} zeta_X(q^{-i} t)` through `t^order`.
///
/// The left side is `sum_n sp_{1/q}(ch_{F,1}(X^n)) t^n`, i.e. the formula
/// point counts divided by `|GL_n(F_q)|`. On the right, the `i`-product of
/// each Weil factor is a q-Pochhammer product whose coefficients are known
/// in closed form, so the infinite product is evaluated exactly rather than
/// truncated.
pub fn groupoid_series(v: &GradedSpace, q: u64, order: usize) -> Result<SeriesReport> {
    let mut lhs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        lhs.push(RatFunc::constant(normalized_point_count(v, n, q)?));
    }
    let lhs = TSeries::from_coeffs(lhs, order);
    SeriesReport::compare(lhs, groupoid_product(v, q, order)?, None)
}

/// `prod_{i>=1} zeta_X(q^{-i} t)`, exact through `t^order`.
pub fn groupoid_product(v: &GradedSpace, q: u64, order: usize) -> Result<TSeries> {
    if q < 2 {
        return Err(Error::Hypothesis(format!("field size {q} < 2")));
    }
    let r = Rational::new(BigInt::one(), BigInt::from(q));
    let mut acc = TSeries::one(order);
    for s in v.strata() {
        if s.eigenvalue.is_zero() {
            continue;
        }
        // zeta factor (1 - chi q^{1-i} t)^{-e}; over i >= 1 this is
        // prod_{j>=0} (1 - chi r^j t)^{-e}.
        let e = sign(s.deg) * Rational::from_integer(s.dim.into());
        let inverse = e > Rational::zero();
        let base = euler_product(&s.eigenvalue, &r, inverse, order);
        for _ in 0..s.dim {
            acc = &acc * &base;
        }
    }
    Ok(acc)
}

/// `prod_{i=1}^{factors} zeta_X(q^{-i} t)`: a finite truncation of the
/// groupoid product, for watching it converge to [`groupoid_product`].
pub fn groupoid_partial_product(v: &GradedSpace, q: u64, order: usize, factors: usize) -> Result<TSeries> {
    let qr = Rational::from_integer(BigInt::from(q));
    let mut acc = TSeries::one(order);
    for i in 1..=factors {
        for s in v.strata() {
            // chi q^{1-i}
            let a = &s.eigenvalue * &qr / rational_pow(&qr, i);
            let e = if s.deg % 2 == 0 { s.dim as i64 } else { -(s.dim as i64) };
            acc = &acc * &weil_factor(&RatFunc::constant(a), e, order)?;
        }
    }
    Ok(acc)
}

/// Limit of `P_u(C_n X)` as `n -> infinity`, modulo `u^{M+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableBetti {
    /// The limit polynomial, reduced modulo `u^{u_order+1}`.
    pub poly: Poly,
    pub u_order: usize,
    /// Smallest `n` with `P_u(C_n) = P_u(C_{n+1})` modulo `u^{M+1}`; the
    /// stable value was checked against it.
    pub stable_from: usize,
}

/// Residue route: `(1 - t) prod_{i>=0} zeta^B_X(u^{2i} t)` at `t = 1` times
/// `phi(u^2)`. With `b_0 = 1` the `(1 - t)` cancels the factor for `i = 0`,
/// degree 0, and the remaining factors `(1 - u^{2i+k})^{-(-1)^k b_k}` only
/// matter for `2i + k <= M`.
pub fn stable_betti(v: &GradedSpace, u_order: usize) -> Result<StableBetti> {
    let betti = v.betti_numbers();
    if v.b0() != 1 {
        return Err(Error::Hypothesis(format!(
            "stable Betti numbers need a connected space, got b_0 = {}",
            v.b0()
        )));
    }
    let m = u_order;
    let mut acc = phi(m / 2 + 1).substitute_power(2).truncate(m);
    for (k, &b) in betti.iter().enumerate() {
        if b == 0 {
            continue;
        }
        let mut i = 0;
        while 2 * i + k <= m {
            let w = 2 * i + k;
            if w > 0 {
                let factor = Poly::one_minus(Rational::one(), w);
                // even degree: divide by (1 - u^w)^b; odd: multiply
                let f = if k % 2 == 0 {
                    RatFunc::new(Poly::one(), factor)?.pow(b as i64)?.expand(m)?
                } else {
                    factor.pow(b as u32)
                };
                acc = (acc * f).truncate(m);
            }
            i += 1;
        }
    }
    let target = RatFunc::from_poly(acc.clone());

    let betti_space = v.forget_eigenvalues();
    let limit = m + 2;
    let mut prev = poincare(&betti_space, 1, Space::Cn)?.expand(m)?;
    for n in 1..=limit {
        let next = poincare(&betti_space, n + 1, Space::Cn)?.expand(m)?;
        if next == prev {
            if RatFunc::from_poly(prev.clone()) != target {
                return Err(Error::Internal(format!(
                    "stable value {acc} disagrees with P_u(C_{n}) = {prev} mod u^{}",
                    m + 1
                )));
            }
            return Ok(StableBetti {
                poly: acc,
                u_order: m,
                stable_from: n,
            });
        }
        prev = next;
    }
    Err(Error::Internal(format!(
        "P_u(C_n) did not stabilize modulo u^{} by n = {limit}",
        m + 1
    )))
}
