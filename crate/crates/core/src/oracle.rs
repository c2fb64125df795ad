//! Brute-force ground truth: rational points of commuting-matrix varieties
//! over prime fields, found by exhaustive enumeration.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::Rational;
use crate::charmodel::{point_count_sn, GradedSpace};
use crate::error::{Error, Result};
use crate::series::groupoid_series;

/// Default enumeration budget, in candidate tuples.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// `|GL_n(F_q)| = prod_{i=0}^{n-1} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    (0..n).map(|i| &qn - q.pow(i as u32)).product()
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// An `n x n` matrix over `F_p`, entries stored row-major and reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqMatrix {
    n: usize,
    p: u32,
    entries: Vec<u32>,
}

impl FqMatrix {
    pub fn new(n: usize, p: u32, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), n * n);
        let entries = entries.into_iter().map(|e| e % p).collect();
        FqMatrix { n, p, entries }
    }

    /// The `index`-th matrix in row-major lexicographic order (first entry
    /// most significant).
    pub fn from_index(n: usize, p: u32, mut index: u64) -> Self {
        let mut entries = vec![0u32; n * n];
        for e in entries.iter_mut().rev() {
            *e = (index % u64::from(p)) as u32;
            index /= u64::from(p);
        }
        FqMatrix { n, p, entries }
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn first_row(&self) -> &[u32] {
        &self.entries[..self.n]
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        let n = self.n;
        let p = u64::from(self.p);
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n)
                    .map(|k| u64::from(self.entry(i, k)) * u64::from(other.entry(k, j)))
                    .sum();
                out[i * n + j] = (s % p) as u32;
            }
        }
        FqMatrix {
            n,
            p: self.p,
            entries: out,
        }
    }

    pub fn commutes_with(&self, other: &FqMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// `self - a I`.
    pub fn minus_scalar(&self, a: u32) -> FqMatrix {
        let mut m = self.clone();
        let a = a % self.p;
        for i in 0..self.n {
            let e = &mut m.entries[i * self.n + i];
            *e = (*e + self.p - a) % self.p;
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        let n = self.n;
        let p = u64::from(self.p);
        let mut a: Vec<u64> = self.entries.iter().map(|&e| u64::from(e)).collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return false;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
            }
            let inv = mod_inverse(a[col * n + col], p);
            for r in col + 1..n {
                let factor = a[r * n + col] * inv % p;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = (a[r * n + j] + p * p - factor * a[col * n + j]) % p;
                }
            }
        }
        true
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat, p prime
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// The varieties the oracle can enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyFamily {
    /// `A^N`: commuting `N`-tuples of matrices.
    AffineSpace { dim: usize },
    /// `G_m^N`: commuting `N`-tuples of invertible matrices.
    Torus { dim: usize },
    /// `A^1` minus the listed points: matrices with none of them as eigenvalue.
    PuncturedLine { avoided: Vec<u64> },
}

impl VarietyFamily {
    pub fn punctured(avoided: Vec<u64>) -> Result<Self> {
        let mut sorted = avoided.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != avoided.len() {
            return Err(Error::Hypothesis(format!(
                "avoided points must be distinct: {avoided:?}"
            )));
        }
        Ok(VarietyFamily::PuncturedLine { avoided })
    }

    /// Number of matrices in a point of `C_n(X)`.
    pub fn tuple_len(&self) -> usize {
        match self {
            VarietyFamily::AffineSpace { dim } | VarietyFamily::Torus { dim } => *dim,
            VarietyFamily::PuncturedLine { .. } => 1,
        }
    }

    pub fn is_curve(&self) -> bool {
        self.tuple_len() == 1
    }

    fn admits(&self, m: &FqMatrix) -> bool {
        match self {
            VarietyFamily::AffineSpace { .. } => true,
            VarietyFamily::Torus { .. } => m.is_invertible(),
            VarietyFamily::PuncturedLine { avoided } => avoided
                .iter()
                .all(|&a| m.minus_scalar((a % u64::from(m.p)) as u32).is_invertible()),
        }
    }
}

impl fmt::Display for VarietyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyFamily::AffineSpace { dim } => write!(f, "affine{{{dim}}}"),
            VarietyFamily::Torus { dim } => write!(f, "torus{{{dim}}}"),
            VarietyFamily::PuncturedLine { avoided } => {
                let list: Vec<String> = avoided.iter().map(ToString::to_string).collect();
                write!(f, "punctured{{{}}}", list.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub budget: u64,
    pub parallel: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

/// `|C_n(X)(F_p)|` by exhaustive search over `p^{N n^2}` candidate tuples.
pub fn count_points(family: &VarietyFamily, n: usize, p: u64, budget: u64) -> Result<BigUint> {
    count_points_with(
        family,
        n,
        p,
        &CountOptions {
            budget,
            ..Default::default()
        },
    )
}

pub fn count_points_with(
    family: &VarietyFamily,
    n: usize,
    p: u64,
    opts: &CountOptions,
) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let VarietyFamily::PuncturedLine { avoided } = family {
        let mut residues: Vec<u64> = avoided.iter().map(|a| a % p).collect();
        residues.sort_unstable();
        residues.dedup();
        if residues.len() != avoided.len() {
            return Err(Error::Hypothesis(format!(
                "avoided points {avoided:?} are not distinct mod {p}"
            )));
        }
    }
    let required = BigUint::from(p).pow((family.tuple_len() * n * n) as u32);
    if required > BigUint::from(opts.budget) {
        return Err(Error::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    if family.tuple_len() == 0 || n == 0 {
        return Ok(BigUint::one());
    }
    let p32 = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
    let total = BigUint::from(p).pow((n * n) as u32).to_u64().expect("within budget");
    let admissible: Vec<FqMatrix> = (0..total)
        .map(|i| FqMatrix::from_index(n, p32, i))
        .filter(|m| family.admits(m))
        .collect();

    // Blocks of matrices sharing a first row are contiguous in lexicographic order.
    let mut blocks: Vec<&[FqMatrix]> = Vec::new();
    let mut start = 0;
    for i in 1..=admissible.len() {
        if i == admissible.len() || admissible[i].first_row() != admissible[start].first_row() {
            blocks.push(&admissible[start..i]);
            start = i;
        }
    }
    let depth = family.tuple_len();
    let count_block = |block: &[FqMatrix]| -> u64 {
        block
            .iter()
            .map(|m| {
                if depth == 1 {
                    1
                } else {
                    let commuting: Vec<&FqMatrix> =
                        admissible.iter().filter(|x| x.commutes_with(m)).collect();
                    count_tuples(&commuting, depth - 1)
                }
            })
            .sum()
    };
    let sum: u64 = if opts.parallel {
        blocks.par_iter().map(|b| count_block(b)).sum()
    } else {
        blocks.iter().map(|b| count_block(b)).sum()
    };
    Ok(BigUint::from(sum))
}

/// Tuples of length `depth` drawn from `pool` that pairwise commute, given
/// that every element of `pool` already commutes with the earlier choices.
fn count_tuples(pool: &[&FqMatrix], depth: usize) -> u64 {
    if depth == 0 {
        return 1;
    }
    if depth == 1 {
        return pool.len() as u64;
    }
    pool.iter()
        .map(|m| {
            let next: Vec<&FqMatrix> = pool.iter().copied().filter(|x| x.commutes_with(m)).collect();
            count_tuples(&next, depth - 1)
        })
        .sum()
}

/// Four numbers that must agree for a smooth curve: the brute-force count,
/// the character formula, and both sides of the groupoid product formula
/// (each multiplied back by `|GL_n(F_q)|`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub family: VarietyFamily,
    pub n: usize,
    pub q: u64,
    pub oracle: BigUint,
    pub formula: Rational,
    pub series_lhs: Rational,
    pub series_rhs: Rational,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        let oracle = Rational::from_integer(self.oracle.clone().into());
        self.formula == oracle && self.series_lhs == oracle && self.series_rhs == oracle
    }
}

impl fmt::Display for CrossCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} q={}: oracle={} formula={} series_lhs={} series_rhs={} [{}]",
            self.family,
            self.n,
            self.q,
            self.oracle,
            self.formula,
            self.series_lhs,
            self.series_rhs,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Compares the oracle count with the character formula and the groupoid
/// series for a curve family. `v` carries eigenvalues specialized at `q`.
pub fn cross_check(
    family: &VarietyFamily,
    n: usize,
    q: u64,
    v: &GradedSpace,
    budget: u64,
) -> Result<CrossCheck> {
    if !family.is_curve() {
        return Err(Error::Hypothesis(format!(
            "cross-check needs a curve family, got {family}"
        )));
    }
    let oracle = count_points(family, n, q, budget)?;
    let formula = point_count_sn(v, n, q)?;
    let report = groupoid_series(v, q, n)?;
    let gl = Rational::from_integer(gl_order(n, q).into());
    let lhs = report.lhs.coeff(n).as_constant().unwrap_or_else(Rational::zero) * &gl;
    let rhs = report.rhs.coeff(n).as_constant().unwrap_or_else(Rational::zero) * &gl;
    Ok(CrossCheck {
        family: family.clone(),
        n,
        q,
        oracle,
        formula,
        series_lhs: lhs,
        series_rhs: rhs,
    })
}
