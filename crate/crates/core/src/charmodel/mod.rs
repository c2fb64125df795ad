//! Character-level formulas for the cohomology of `X^n`, the flag variety,
//! and the moduli spaces built from them.
//!
//! Sign convention: a Poincaré polynomial is `sum_i dim H^i * (-u)^i`, so odd
//! degrees enter with a minus sign (`P_u(G_m) = 1 - u`). This is kept in all
//! outputs.

mod descriptor;

pub use descriptor::{EigenSpec, StratumSpec, VarietyDescriptor, BUILTIN_NAMES};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::oracle::gl_order;
use crate::partitions::{partitions_of, Partition};
use crate::symfunc::{phi, z_rational, SchurExpansion, SymFunc};

/// One block of `H^*(X)`: `dim` basis vectors in cohomological degree `deg`
/// on which Frobenius acts by `eigenvalue`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum {
    pub deg: usize,
    pub dim: usize,
    pub eigenvalue: Rational,
}

/// Graded vector space with a semisimple endomorphism, given by its
/// eigenspace dimensions. Strata sharing `(deg, eigenvalue)` are merged and
/// the list is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedSpace {
    strata: Vec<Stratum>,
}

impl GradedSpace {
    pub fn new(strata: impl IntoIterator<Item = Stratum>) -> Self {
        let mut merged: Vec<Stratum> = Vec::new();
        let mut all: Vec<Stratum> = strata.into_iter().filter(|s| s.dim > 0).collect();
        all.sort_by(|a, b| (a.deg, &a.eigenvalue).cmp(&(b.deg, &b.eigenvalue)));
        for s in all {
            match merged.last_mut() {
                Some(last) if last.deg == s.deg && last.eigenvalue == s.eigenvalue => {
                    last.dim += s.dim
                }
                _ => merged.push(s),
            }
        }
        GradedSpace { strata: merged }
    }

    /// Betti data only: `betti[k] = dim H^k`, eigenvalues 1.
    pub fn from_betti(betti: &[usize]) -> Self {
        Self::new(betti.iter().enumerate().map(|(deg, &dim)| Stratum {
            deg,
            dim,
            eigenvalue: Rational::one(),
        }))
    }

    /// From `(deg, dim, eigenvalue)` triples.
    pub fn from_triples(triples: &[(usize, usize, Rational)]) -> Self {
        Self::new(triples.iter().map(|(deg, dim, e)| Stratum {
            deg: *deg,
            dim: *dim,
            eigenvalue: e.clone(),
        }))
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// The same Betti data with every eigenvalue reset to 1.
    pub fn forget_eigenvalues(&self) -> Self {
        Self::new(self.strata.iter().map(|s| Stratum {
            eigenvalue: Rational::one(),
            ..s.clone()
        }))
    }

    /// `b_k` indexed by degree.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let top = self.strata.iter().map(|s| s.deg + 1).max().unwrap_or(0);
        let mut b = vec![0; top];
        for s in &self.strata {
            b[s.deg] += s.dim;
        }
        b
    }

    pub fn b0(&self) -> usize {
        self.betti_numbers().first().copied().unwrap_or(0)
    }

    /// `P_u(X) = sum (-u)^deg dim`.
    pub fn poincare_poly(&self) -> Poly {
        self.strata.iter().fold(Poly::zero(), |acc, s| {
            acc + Poly::monomial(sign(s.deg) * Rational::from_integer(s.dim.into()), s.deg)
        })
    }

    /// Concatenation of strata (cohomology of a disjoint union).
    pub fn disjoint_union(&self, other: &GradedSpace) -> Self {
        Self::new(self.strata.iter().chain(&other.strata).cloned())
    }

    /// `sum_alpha (-1)^deg u^{i deg} chi^i`, the trace of Frobenius^i on the
    /// super-graded space.
    pub fn power_trace(&self, i: usize) -> Poly {
        self.strata.iter().fold(Poly::zero(), |acc, s| {
            let c = sign(s.deg) * Rational::from_integer(s.dim.into()) * rational_pow(&s.eigenvalue, i);
            acc + Poly::monomial(c, i * s.deg)
        })
    }
}

pub(crate) fn rational_pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

pub(crate) fn sign(deg: usize) -> Rational {
    if deg % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Graded (and possibly Frobenius-enhanced) character of a graded `S_n`
/// representation, as a symmetric function with coefficients in `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChar {
    pub value: SymFunc,
}

impl GradedChar {
    pub fn degree(&self) -> usize {
        self.value.degree()
    }

    pub fn to_schur(&self) -> SchurExpansion {
        self.value.to_schur()
    }

    /// Specializes `u -> 1`.
    pub fn at_u_one(&self) -> Result<GradedChar> {
        let value = self
            .value
            .try_map_coeffs(|c| c.eval(&Rational::one()).map(RatFunc::constant))?;
        Ok(GradedChar { value })
    }
}

/// Graded trace of `F sigma` on `V^{(x) n}` for `sigma` of cycle type `lambda`
/// under the signed permutation action:
/// `prod_i (sum_alpha (-1)^deg u^{i deg} chi^i)^{a_i}`.
pub fn graded_trace_product(v: &GradedSpace, lambda: &Partition) -> RatFunc {
    let poly = lambda.exponents().fold(Poly::one(), |acc, (i, a)| {
        acc * v.power_trace(i).pow(u32::try_from(a).expect("small multiplicity"))
    });
    RatFunc::from_poly(poly)
}

/// `ch_{F,u}(V^{(x) n}) = sum_lambda tr_u(F sigma_lambda) p_lambda / z_lambda`.
pub fn enhanced_character(v: &GradedSpace, n: usize) -> GradedChar {
    let terms: Vec<(Partition, RatFunc)> = partitions_of(n)
        .into_par_iter()
        .map(|l| {
            let c = graded_trace_product(v, &l).scale(&z_rational(&l).recip());
            (l, c)
        })
        .collect();
    GradedChar {
        value: SymFunc::from_terms(n, terms).expect("partitions of n"),
    }
}

/// `sum_n ch_{F,u}(V^{(x) n}) t^n` for `n = 0..=order`, expanded from
/// `exp(sum_i p_i/i * tr(F^i) t^i)` with the power-series recurrence
/// `n E_n = sum_k k g_k E_{n-k}`.
pub fn enhanced_character_series(v: &GradedSpace, order: usize) -> Vec<GradedChar> {
    // g_k = (p_k / k) * trace_k, so k g_k = p_k * trace_k.
    let weighted: Vec<SymFunc> = (0..=order)
        .map(|k| {
            if k == 0 {
                SymFunc::zero(0)
            } else {
                SymFunc::from_p(&Partition::new(vec![k]))
                    .scale(&RatFunc::from_poly(v.power_trace(k)))
            }
        })
        .collect();
    let mut series: Vec<SymFunc> = vec![SymFunc::one()];
    for n in 1..=order {
        let mut acc = SymFunc::zero(n);
        for k in 1..=n {
            if weighted[k].is_zero() || series[n - k].is_zero() {
                continue;
            }
            acc = acc
                .try_add(&weighted[k].multiply(&series[n - k]))
                .expect("degree n");
        }
        let inv_n = RatFunc::constant(Rational::new(BigInt::one(), BigInt::from(n)));
        series.push(acc.scale(&inv_n));
    }
    series.into_iter().map(|value| GradedChar { value }).collect()
}

/// `f^lambda(q) = phi_n(q) sp_q(s_lambda)` evaluated at `q = u^2`.
pub fn fake_degree(lambda: &Partition) -> Result<Poly> {
    let n = lambda.size();
    let f = RatFunc::from_poly(phi(n).substitute_power(2)) * SymFunc::schur(lambda).principal_spec_pow(2);
    f.as_poly().cloned().ok_or_else(|| {
        Error::Internal(format!("phi_n(u^2) sp(s_{lambda}) is not a polynomial: {f}"))
    })
}

/// Graded character of `H^*(GL_n / T_n)`:
/// `sum_lambda phi_n(u^2) sp_{u^2}(s_lambda) s_lambda`.
pub fn flag_character(n: usize) -> Result<GradedChar> {
    let mut value = SymFunc::zero(n);
    for l in partitions_of(n) {
        let coeff = RatFunc::from_poly(fake_degree(&l)?);
        value = value.try_add(&SymFunc::schur(&l).scale(&coeff))?;
    }
    Ok(GradedChar { value })
}

/// Which space's Poincaré polynomial to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// Commuting matrices satisfying the equations of X.
    Cn,
    /// `X^n x^{S_n} GL_n / T_n`.
    Sn,
    /// Stack of length-n coherent sheaves.
    Coh,
    /// Complete flag variety.
    Flag,
    /// Classifying space of `GL_n`.
    BGLn,
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cn" => Ok(Space::Cn),
            "sn" => Ok(Space::Sn),
            "coh" => Ok(Space::Coh),
            "flag" => Ok(Space::Flag),
            "bgln" => Ok(Space::BGLn),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected one of cn, sn, coh, flag, bgln".into(),
            }),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Cn => "cn",
            Space::Sn => "sn",
            Space::Coh => "coh",
            Space::Flag => "flag",
            Space::BGLn => "bgln",
        })
    }
}

/// Poincaré polynomial (or series, for stacks) in `u`. Eigenvalues in `v`
/// are ignored.
pub fn poincare(v: &GradedSpace, n: usize, space: Space) -> Result<RatFunc> {
    let phi_u2 = RatFunc::from_poly(phi(n).substitute_power(2));
    match space {
        Space::Cn | Space::Sn => {
            let coh = poincare(v, n, Space::Coh)?;
            let p = coh * phi_u2;
            if !p.is_polynomial() {
                return Err(Error::Internal(format!(
                    "Poincaré polynomial of {space} for n = {n} is not a polynomial: {p}"
                )));
            }
            Ok(p)
        }
        Space::Coh => {
            let ch = enhanced_character(&v.forget_eigenvalues(), n);
            Ok(ch.value.principal_spec_pow(2))
        }
        Space::Flag => {
            let one_minus_u2 = Poly::one_minus(Rational::one(), 2);
            let p = (1..=n).fold(Poly::one(), |acc, i| {
                acc * Poly::one_minus(Rational::one(), 2 * i)
                    .exact_div(&one_minus_u2)
                    .expect("1 - u^2 divides 1 - u^{2i}")
            });
            Ok(RatFunc::from_poly(p))
        }
        Space::BGLn => phi_u2.inv(),
    }
}

/// `|GL_n(F_q)| * sp_{q^{-1}}(ch_{F,1}(X^n))`. Equals `|S_n(X)(F_q)|`, and
/// for smooth curves `|C_n(X)(F_q)|`.
///
/// The eigenvalues of `v` must already be specialized at this `q`.
pub fn point_count_sn(v: &GradedSpace, n: usize, q: u64) -> Result<Rational> {
    let normalized = normalized_point_count(v, n, q)?;
    Ok(normalized * Rational::from_integer(BigInt::from(gl_order(n, q))))
}

/// `sp_{q^{-1}}(ch_{F,1}(X^n))`, the `t^n` coefficient of the groupoid
/// generating series.
pub fn normalized_point_count(v: &GradedSpace, n: usize, q: u64) -> Result<Rational> {
    let ch1 = enhanced_character(v, n).at_u_one()?;
    let sp = ch1.value.principal_spec();
    sp.eval(&Rational::new(BigInt::one(), BigInt::from(q)))
}

/// `true` when a rational is an integer and nonnegative.
pub fn is_count(x: &Rational) -> bool {
    x.is_integer() && !(x < &Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn poly(c: &[i64]) -> RatFunc {
        Poly::from_ints(c).into()
    }

    fn gm() -> GradedSpace {
        GradedSpace::from_betti(&[1, 1])
    }

    #[test]
    fn canonical_form_merges() {
        let v = GradedSpace::from_triples(&[(1, 1, int(1)), (0, 1, int(1)), (1, 2, int(1)), (2, 0, int(1))]);
        assert_eq!(v.strata().len(), 2);
        assert_eq!(v.betti_numbers(), vec![1, 3]);
        assert_eq!(v.poincare_poly(), Poly::from_ints(&[1, -3]));
    }

    #[test]
    fn trace_products() {
        assert_eq!(graded_trace_product(&gm(), &p(&[1, 1])), poly(&[1, -2, 1]));
        assert_eq!(graded_trace_product(&gm(), &p(&[2])), poly(&[1, 0, -1]));
        let v = GradedSpace::from_betti(&[2, 0, 3]);
        let px = RatFunc::from_poly(v.poincare_poly());
        assert_eq!(graded_trace_product(&v, &p(&[1, 1, 1])), px.pow(3).unwrap());
    }

    #[test]
    fn enhanced_characters() {
        let a1 = GradedSpace::from_betti(&[1]);
        for n in 0..=4 {
            assert_eq!(enhanced_character(&a1, n).value, SymFunc::h(n));
        }
        assert_eq!(enhanced_character(&gm(), 0).value, SymFunc::one());
        let schur = enhanced_character(&gm(), 2).to_schur();
        assert_eq!(schur.coeff(&p(&[2])), poly(&[1, -1]));
        assert_eq!(schur.coeff(&p(&[1, 1])), poly(&[0, -1, 1]));
    }

    #[test]
    fn series_route_matches_per_n_route() {
        let v = GradedSpace::from_triples(&[(0, 1, int(1)), (1, 2, rat(1, 2)), (2, 1, int(2))]);
        let series = enhanced_character_series(&v, 4);
        for (n, ch) in series.iter().enumerate() {
            assert_eq!(ch, &enhanced_character(&v, n), "n = {n}");
        }
        let point = enhanced_character_series(&GradedSpace::from_betti(&[1]), 3);
        for (n, ch) in point.iter().enumerate() {
            assert_eq!(ch.value, SymFunc::h(n));
        }
        let empty = enhanced_character_series(&GradedSpace::default(), 3);
        assert_eq!(empty[0].value, SymFunc::one());
        assert!(empty[1..].iter().all(|c| c.value.is_zero()));
    }

    #[test]
    fn flag_characters() {
        let f2 = flag_character(2).unwrap().to_schur();
        assert_eq!(f2.render(), "s[2] + u^2*s[1,1]");
        for n in 1..=5 {
            let sign_row = fake_degree(&Partition::new(vec![1; n])).unwrap();
            assert_eq!(sign_row, Poly::monomial(int(1), n * (n - 1)));
        }
    }

    #[test]
    fn poincare_examples() {
        let a1 = GradedSpace::from_betti(&[1]);
        for n in 1..=4 {
            assert!(poincare(&a1, n, Space::Cn).unwrap().is_one());
        }
        assert_eq!(poincare(&gm(), 2, Space::Cn).unwrap(), poly(&[1, -1, 0, -1, 1]));
        let v = GradedSpace::from_betti(&[1, 2, 1]);
        assert_eq!(
            poincare(&v, 1, Space::Cn).unwrap(),
            RatFunc::from_poly(v.poincare_poly())
        );
        assert_eq!(poincare(&a1, 3, Space::Flag).unwrap(), poly(&[1, 0, 2, 0, 2, 0, 1]));
        assert_eq!(
            poincare(&a1, 2, Space::BGLn).unwrap(),
            RatFunc::new(Poly::one(), phi(2).substitute_power(2)).unwrap()
        );
        assert_eq!(poincare(&gm(), 3, Space::Sn), poincare(&gm(), 3, Space::Cn));
    }

    #[test]
    fn point_count_examples() {
        let a1 = GradedSpace::from_betti(&[1]);
        assert_eq!(point_count_sn(&a1, 2, 2).unwrap(), int(16));
        let gm2 = GradedSpace::from_triples(&[(0, 1, int(1)), (1, 1, rat(1, 2))]);
        assert_eq!(point_count_sn(&gm2, 2, 2).unwrap(), int(6));
        let punctured = GradedSpace::from_triples(&[(0, 1, int(1)), (1, 2, rat(1, 2))]);
        assert_eq!(point_count_sn(&punctured, 1, 2).unwrap(), int(0));
    }

    #[test]
    fn pole_at_inverse_q_is_reported() {
        // q = 1 lands on the pole of sp(p_1) = 1/(1 - q)
        let a1 = GradedSpace::from_betti(&[1]);
        assert!(matches!(normalized_point_count(&a1, 1, 1), Err(Error::Pole { .. })));
    }
}
