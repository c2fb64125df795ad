//! Homogeneous symmetric functions with rational-function coefficients,
//! stored in the power-sum basis.
//!
//! The complete-homogeneous and Schur bases exist only as conversions:
//! `h_n = sum_{mu |- n} p_mu / z_mu` and `s_lambda = sum_mu chi^lambda(mu) p_mu / z_mu`,
//! with the irreducible characters `chi^lambda(mu)` from the
//! Murnaghan-Nakayama rule. The Hall pairing `<p_lambda, p_mu> = delta z_lambda`
//! and the principal specialization `p_k -> 1/(1 - q^k)` are both diagonal
//! in this basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use parking_lot::RwLock;

use crate::arith::{Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

/// A homogeneous symmetric function of a fixed degree. Keys are partitions
/// of `degree`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    degree: usize,
    coeffs: BTreeMap<Partition, RatFunc>,
}

pub(crate) fn z_rational(l: &Partition) -> Rational {
    Rational::from_integer(BigInt::from(l.z()))
}

impl SymFunc {
    pub fn zero(degree: usize) -> Self {
        SymFunc {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit, `p_() = 1` in degree 0.
    pub fn one() -> Self {
        Self::from_p(&Partition::empty())
    }

    pub fn from_p(l: &Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(l.clone(), RatFunc::one());
        SymFunc {
            degree: l.size(),
            coeffs,
        }
    }

    /// Builds from `(partition, coefficient)` terms, summing repeats.
    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, RatFunc)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (l, c) in terms {
            if l.size() != degree {
                return Err(Error::SizeMismatch {
                    left: degree,
                    right: l.size(),
                });
            }
            f.add_term(l, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, l: Partition, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&l) {
            None => {
                self.coeffs.insert(l, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(l, sum);
                }
            }
        }
    }

    /// `h_n = sum_{mu |- n} p_mu / z_mu`.
    pub fn h(n: usize) -> Self {
        let coeffs = partitions_of(n)
            .into_iter()
            .map(|mu| {
                let c = RatFunc::constant(z_rational(&mu).recip());
                (mu, c)
            })
            .collect();
        SymFunc { degree: n, coeffs }
    }

    /// `h_lambda = prod_i h_{lambda_i}`.
    pub fn from_h(l: &Partition) -> Self {
        l.parts()
            .iter()
            .fold(Self::one(), |acc, &part| acc.multiply(&Self::h(part)))
    }

    /// Schur function `s_lambda` in the power-sum basis.
    pub fn schur(l: &Partition) -> Self {
        let coeffs = partitions_of(l.size())
            .into_iter()
            .filter_map(|mu| {
                let chi = mn_character(l, &mu).expect("same size");
                (chi != 0).then(|| {
                    let c = Rational::new(BigInt::from(chi), BigInt::from(mu.z()));
                    (mu, RatFunc::constant(c))
                })
            })
            .collect();
        SymFunc {
            degree: l.size(),
            coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `p_lambda` (zero when absent).
    pub fn coeff(&self, l: &Partition) -> RatFunc {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        SymFunc {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(l, a)| (l.clone(), a * c)).collect(),
        }
    }

    /// Applies `g` to every coefficient, e.g. a specialization of `u`.
    pub fn try_map_coeffs(&self, g: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut out = Self::zero(self.degree);
        for (l, c) in &self.coeffs {
            out.add_term(l.clone(), g(c)?);
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &SymFunc) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::SizeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SymFunc) -> Result<Self> {
        self.try_add(&other.scale(&RatFunc::constant(-Rational::one())))
    }

    /// Induction product: degrees add, `p_lambda * p_mu = p_{lambda u mu}`.
    pub fn multiply(&self, other: &SymFunc) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (l, a) in &self.coeffs {
            for (m, b) in &other.coeffs {
                out.add_term(l.union(m), a * b);
            }
        }
        out
    }

    /// Hall inner product, bilinear over the coefficient field. Components
    /// of different degree pair to zero.
    pub fn hall_inner(&self, other: &SymFunc) -> RatFunc {
        if self.degree != other.degree {
            return RatFunc::zero();
        }
        self.coeffs
            .iter()
            .filter_map(|(l, a)| other.coeffs.get(l).map(|b| (a * b).scale(&z_rational(l))))
            .sum()
    }

    /// Principal specialization `f(1, q, q^2, ...)` with `q` identified with
    /// the coefficient variable.
    pub fn principal_spec(&self) -> RatFunc {
        self.principal_spec_pow(1)
    }

    /// Principal specialization at `q = u^k`.
    ///
    /// Every `prod_j (1 - q^{lambda_j})` divides `phi_n(q)`, so the sum is
    /// assembled over the common denominator `phi_n(u^k)` and reduced once.
    pub fn principal_spec_pow(&self, k: usize) -> RatFunc {
        let phi = phi(self.degree);
        let mut num = RatFunc::zero();
        for (l, c) in &self.coeffs {
            let cofactor = phi
                .exact_div(&denominator_product(l))
                .expect("cycle-type product divides phi_n");
            num = num + c * &RatFunc::from_poly(cofactor.substitute_power(k));
        }
        num.checked_div(&RatFunc::from_poly(phi.substitute_power(k)))
            .expect("phi_n is nonzero")
    }

    /// Coefficients in the Schur basis, `c_lambda = <f, s_lambda>`.
    pub fn to_schur(&self) -> SchurExpansion {
        let terms = partitions_of(self.degree)
            .into_iter()
            .filter_map(|l| {
                let c = self.hall_inner(&Self::schur(&l));
                (!c.is_zero()).then_some((l, c))
            })
            .collect();
        SchurExpansion {
            degree: self.degree,
            terms,
        }
    }

    /// Text form `(1/2)*p[1,1] + (1/2)*p[2]`.
    pub fn render(&self) -> String {
        render_expansion(self.coeffs.iter(), "p")
    }
}

/// `prod_j (1 - q^{lambda_j})`.
pub(crate) fn denominator_product(l: &Partition) -> Poly {
    l.parts()
        .iter()
        .fold(Poly::one(), |acc, &p| acc * Poly::one_minus(Rational::one(), p))
}

/// `phi_n(q) = prod_{i=1}^n (1 - q^i)`.
pub fn phi(n: usize) -> Poly {
    (1..=n).fold(Poly::one(), |acc, i| acc * Poly::one_minus(Rational::one(), i))
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc[{}]({})", self.degree, self.render())
    }
}

/// Schur-basis view of a [`SymFunc`], terms in reverse-lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurExpansion {
    pub degree: usize,
    pub terms: Vec<(Partition, RatFunc)>,
}

impl SchurExpansion {
    pub fn coeff(&self, l: &Partition) -> RatFunc {
        self.terms
            .iter()
            .find(|(m, _)| m == l)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Rebuilds `sum c_lambda s_lambda` in the power-sum basis.
    pub fn to_symfunc(&self) -> SymFunc {
        self.terms
            .iter()
            .fold(SymFunc::zero(self.degree), |acc, (l, c)| {
                acc.try_add(&SymFunc::schur(l).scale(c)).expect("same degree")
            })
    }

    /// Text form `s[2] + u^2*s[1,1]`.
    pub fn render(&self) -> String {
        render_expansion(self.terms.iter().map(|(l, c)| (l, c)), "s")
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_expansion<'a>(
    terms: impl Iterator<Item = (&'a Partition, &'a RatFunc)>,
    basis: &str,
) -> String {
    let mut out = String::new();
    for (l, c) in terms {
        let element = format!("{basis}[{}]", l.bracket_body());
        let (negative, body) = render_coeff(c);
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match body {
            None => out.push_str(&element),
            Some(b) => out.push_str(&format!("{b}*{element}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits a coefficient into a sign and a multiplier (`None` for 1).
fn render_coeff(c: &RatFunc) -> (bool, Option<String>) {
    let single = c.as_poly().and_then(|p| {
        let mut nz = p.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero());
        let first = nz.next();
        if nz.next().is_some() {
            None
        } else {
            first.map(|(k, a)| (k, a.clone()))
        }
    });
    match single {
        Some((k, a)) => {
            let mag = a.abs();
            let power = match k {
                0 => None,
                1 => Some("u".to_string()),
                _ => Some(format!("u^{k}")),
            };
            let body = match (power, mag.is_one(), mag.is_integer()) {
                (None, true, _) => None,
                (None, false, true) => Some(mag.to_string()),
                (None, false, false) => Some(format!("({mag})")),
                (Some(pw), true, _) => Some(pw),
                (Some(pw), false, true) => Some(format!("{mag}*{pw}")),
                (Some(pw), false, false) => Some(format!("({mag}*{pw})")),
            };
            (a.is_negative(), body)
        }
        None => (false, Some(format!("({c})"))),
    }
}

type CharMemo = RwLock<HashMap<(Partition, Partition), i64>>;

fn memo() -> &'static CharMemo {
    static MEMO: OnceLock<CharMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Irreducible character `chi^lambda` evaluated on cycle type `mu`, by the
/// Murnaghan-Nakayama rule. Results are memoized in a process-wide table
/// that is safe to share between threads.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    Ok(mn_rec(lambda, mu))
}

fn mn_rec(lambda: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = memo().read().get(&key) {
        return v;
    }
    let k = mu.parts()[0];
    let rest = Partition::new(mu.parts()[1..].to_vec());
    let value = remove_rim_hooks(lambda, k)
        .into_iter()
        .map(|(smaller, sign)| sign * mn_rec(&smaller, &rest))
        .sum();
    memo().write().insert(key, value);
    value
}

/// All ways to strip a rim hook of length `k` from `lambda`, with the
/// hook's sign `(-1)^(height)`. Works on the beta-set (first-column hook
/// lengths): a rim hook of length `k` moves one bead from `b` to `b - k`.
fn remove_rim_hooks(lambda: &Partition, k: usize) -> Vec<(Partition, i64)> {
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k {
            continue;
        }
        let target = b - k;
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| target < x && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        out.push((Partition::new(parts), sign));
    }
    out
}
