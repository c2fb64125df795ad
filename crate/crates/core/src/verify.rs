//! Self-checks grouped into suites, for the command-line `verify` entry point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{Poly, RatFunc, Rational};
use crate::charmodel::{
    enhanced_character, enhanced_character_series, fake_degree, flag_character, poincare, GradedSpace, Space,
    VarietyDescriptor,
};
use crate::error::{Error, Result};
use crate::oracle::{cross_check, is_prime, VarietyFamily};
use crate::partitions::partitions_of;
use crate::series::{betti_zeta, coh_series, groupoid_series, stable_betti};
use crate::symfunc::{mn_character, phi, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    PointCounts,
    Characters,
    Poincare,
    Series,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "pointcounts" => Ok(Suite::PointCounts),
            "characters" => Ok(Suite::Characters),
            "poincare" => Ok(Suite::Poincare),
            "series" => Ok(Suite::Series),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected one of all, pointcounts, characters, poincare, series".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{status} {}", self.name)
        } else {
            write!(f, "{status} {}: {}", self.name, self.detail)
        }
    }
}

fn check(name: impl Into<String>, body: impl FnOnce() -> Result<Option<String>>) -> Check {
    let name = name.into();
    match body() {
        Ok(None) => Check {
            name,
            passed: true,
            detail: String::new(),
        },
        Ok(Some(why)) => Check {
            name,
            passed: false,
            detail: why,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Runs a suite. `q` restricts field-size-dependent checks to one prime;
/// by default they run at `q = 2` and `q = 3`.
pub fn run_suite(suite: Suite, q: Option<u64>, budget: u64) -> Result<Vec<Check>> {
    if let Some(q) = q {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
    }
    let qs: Vec<u64> = q.map_or(vec![2, 3], |q| vec![q]);
    let mut out = Vec::new();
    if matches!(suite, Suite::All | Suite::Characters) {
        out.extend(characters());
    }
    if matches!(suite, Suite::All | Suite::Poincare) {
        out.extend(poincare_checks());
    }
    if matches!(suite, Suite::All | Suite::Series) {
        out.extend(series_checks(&qs));
    }
    if matches!(suite, Suite::All | Suite::PointCounts) {
        out.extend(point_counts(&qs, budget));
    }
    Ok(out)
}

fn q_factorial_u2(n: usize) -> Poly {
    let one_minus_u2 = Poly::one_minus(int(1), 2);
    (1..=n).fold(Poly::one(), |acc, i| {
        acc * Poly::one_minus(int(1), 2 * i)
            .exact_div(&one_minus_u2)
            .expect("exact")
    })
}

fn characters() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(check(format!("flag character n={n}"), || {
            let schur = flag_character(n)?.to_schur();
            let mut weighted = Poly::zero();
            for l in partitions_of(n) {
                let at_one = schur.coeff(&l).eval(&int(1))?;
                let dim = l.dimension().to_i64().expect("small");
                if at_one != int(dim) {
                    return Ok(Some(format!("coefficient of s{l} at u=1 is {at_one}, expected {dim}")));
                }
                weighted = weighted + fake_degree(&l)?.scale(&int(dim));
            }
            let expected = q_factorial_u2(n);
            Ok((weighted != expected).then(|| format!("sum f(q) f = {weighted}, expected {expected}")))
        }));
    }
    for n in 1..=7 {
        out.push(check(format!("orthogonality n={n}"), || {
            let parts = partitions_of(n);
            for l in &parts {
                let sl = SymFunc::schur(l);
                for m in &parts {
                    let expected = RatFunc::constant(int(i64::from(l == m)));
                    let pairing = sl.hall_inner(&SymFunc::schur(m));
                    if pairing != expected {
                        return Ok(Some(format!("<s{l}, s{m}> = {pairing}")));
                    }
                    let mut sum = Rational::zero();
                    for mu in &parts {
                        let z = Rational::from_integer(mu.z().into());
                        sum += int(mn_character(l, mu)? * mn_character(m, mu)?) / z;
                    }
                    if sum != int(i64::from(l == m)) {
                        return Ok(Some(format!("character pairing of {l} and {m} is {sum}")));
                    }
                }
                let hooks = l
                    .hook_lengths()
                    .into_iter()
                    .fold(Poly::one(), |acc, h| acc * Poly::one_minus(int(1), h));
                let expected = RatFunc::new(Poly::monomial(int(1), l.n_stat()) * phi(n), hooks)?;
                let got = RatFunc::from_poly(phi(n)) * sl.principal_spec();
                if got != expected {
                    return Ok(Some(format!("phi_n sp(s{l}) = {got}, expected {expected}")));
                }
            }
            Ok(None)
        }));
    }
    let eigen = [int(1), Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into()), int(2)];
    out.push(check("per-n characters versus series", || {
        // A fixed family covering every degree, dimension and eigenvalue.
        for seed in 0..20usize {
            let strata = 1 + seed % 4;
            let triples: Vec<(usize, usize, Rational)> = (0..strata)
                .map(|j| ((seed + 3 * j) % 5, 1 + (seed + j) % 3, eigen[(seed * 7 + j) % 4].clone()))
                .collect();
            let v = GradedSpace::from_triples(&triples);
            let series = enhanced_character_series(&v, 5);
            for (n, ch) in series.iter().enumerate() {
                if ch.value != enhanced_character(&v, n).value {
                    return Ok(Some(format!("{triples:?} differs at n={n}")));
                }
            }
        }
        Ok(None)
    }));
    out
}

fn poincare_checks() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("C_n(A^1) = 1 for n <= 8", || {
        let a1 = VarietyDescriptor::affine_line().betti();
        for n in 0..=8 {
            let p = poincare(&a1, n, Space::Cn)?;
            if !p.is_one() {
                return Ok(Some(format!("n={n}: {p}")));
            }
        }
        Ok(None)
    }));
    out.push(check("C_1(X) = P_u(X)", || {
        for betti in [vec![1], vec![1, 1], vec![1, 0, 1], vec![2, 3, 0, 1], vec![1, 2, 1, 0, 3]] {
            let v = GradedSpace::from_betti(&betti);
            let p = poincare(&v, 1, Space::Cn)?;
            if p != RatFunc::from_poly(v.poincare_poly()) {
                return Ok(Some(format!("{betti:?}: {p}")));
            }
        }
        Ok(None)
    }));
    out.push(check("C_n(G_m) = prod (1 - u^(2i-1)) for n <= 6", || {
        let gm = VarietyDescriptor::torus().betti();
        for n in 0..=6 {
            let expected = (1..=n).fold(Poly::one(), |acc, i| acc * Poly::one_minus(int(1), 2 * i - 1));
            let p = poincare(&gm, n, Space::Cn)?;
            if p != RatFunc::from_poly(expected) {
                return Ok(Some(format!("n={n}: {p}")));
            }
        }
        Ok(None)
    }));
    for d in [VarietyDescriptor::torus(), VarietyDescriptor::projective_line()] {
        out.push(check(format!("stable Betti numbers of {}", d.name), || {
            let m = 10;
            let v = d.betti();
            let p10 = poincare(&v, 10, Space::Cn)?.expand(m)?;
            let p11 = poincare(&v, 11, Space::Cn)?.expand(m)?;
            if p10 != p11 {
                return Ok(Some(format!("n=10 gives {p10}, n=11 gives {p11}")));
            }
            let stable = stable_betti(&v, m)?;
            Ok((stable.poly != p10).then(|| format!("limit {} vs {p10}", stable.poly)))
        }));
    }
    out
}

fn series_checks(qs: &[u64]) -> Vec<Check> {
    let mut out = Vec::new();
    let curves = [
        VarietyDescriptor::point(),
        VarietyDescriptor::torus(),
        VarietyDescriptor::projective_line(),
        VarietyDescriptor::punctured_line(2),
    ];
    for d in &curves {
        out.push(check(format!("coh product formula for {}", d.name), || {
            let r = coh_series(&d.betti(), 5, 20)?;
            Ok(match r.verdict {
                crate::series::Verdict::Equal => None,
                crate::series::Verdict::Mismatch { index } => Some(format!("mismatch at t^{index}")),
            })
        }));
    }
    out.push(check("Betti zeta of p1", || {
        let z = betti_zeta(&VarietyDescriptor::projective_line().betti(), 6);
        for n in 0..=6 {
            let expected = (0..=n).fold(Poly::zero(), |acc, i| acc + Poly::monomial(int(1), 2 * i));
            if z.coeff(n) != &RatFunc::from_poly(expected) {
                return Ok(Some(format!("t^{n}: {}", z.coeff(n))));
            }
        }
        Ok(None)
    }));
    for &q in qs {
        for d in &curves[1..] {
            out.push(check(format!("groupoid product formula for {} at q={q}", d.name), || {
                let r = groupoid_series(&d.resolve(Some(q))?, q, 4)?;
                Ok((!r.is_equal()).then(|| format!("{:?}", r.verdict)))
            }));
        }
    }
    out
}

fn point_counts(qs: &[u64], budget: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for &q in qs {
        let torus_n = if q == 2 { 3 } else { 2 };
        let affine_n = if q <= 3 { 3 } else { 2 };
        let cases = [
            (VarietyFamily::AffineSpace { dim: 1 }, VarietyDescriptor::affine_line(), affine_n),
            (VarietyFamily::Torus { dim: 1 }, VarietyDescriptor::torus(), torus_n),
            (
                VarietyFamily::PuncturedLine { avoided: vec![0, 1] },
                VarietyDescriptor::punctured_line(2),
                2,
            ),
        ];
        for (family, descriptor, max_n) in cases {
            for n in 1..=max_n {
                out.push(check(format!("{family} n={n} q={q}"), || {
                    let v = descriptor.resolve(Some(q))?;
                    let c = cross_check(&family, n, q, &v, budget)?;
                    Ok((!c.passed()).then(|| c.to_string()))
                }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn point_count_suite_passes_at_two() {
        let checks = run_suite(Suite::PointCounts, Some(2), DEFAULT_BUDGET).unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn rejects_composite_field_size() {
        assert_eq!(run_suite(Suite::All, Some(4), DEFAULT_BUDGET), Err(Error::NotPrime(4)));
        assert!("bogus".parse::<Suite>().is_err());
    }
}
