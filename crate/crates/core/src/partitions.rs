//! Integer partitions, the index set for conjugacy classes and irreducible
//! characters of the symmetric group.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A partition `parts[0] >= parts[1] >= ... >= 1`. The multiplicity table
/// (`1^a1 2^a2 ...`) is computed once on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
    // mult[i] = number of parts equal to i (index 0 unused)
    mult: Vec<usize>,
}

impl Partition {
    /// Accepts parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let n = parts.iter().sum();
        let mut mult = vec![0; parts.first().map_or(1, |&p| p + 1)];
        for &p in &parts {
            mult[p] += 1;
        }
        Partition { parts, n, mult }
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// Builds `1^a1 2^a2 ...` from `(part, multiplicity)` pairs.
    pub fn from_exponents(exps: &[(usize, usize)]) -> Self {
        let parts = exps
            .iter()
            .flat_map(|&(i, a)| std::iter::repeat(i).take(a))
            .collect();
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.mult.get(i).copied().unwrap_or(0)
    }

    /// `(i, a_i)` for every `i` with `a_i > 0`, ascending in `i`.
    pub fn exponents(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a > 0)
            .map(|(i, &a)| (i, a))
    }

    /// Centralizer order `prod i^a_i * a_i!`.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        for (i, a) in self.exponents() {
            for k in 1..=a {
                z *= BigUint::from(i) * BigUint::from(k);
            }
        }
        z
    }

    /// Number of permutations of cycle type `self`, `n! / z`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.n) / self.z()
    }

    pub fn conjugate(&self) -> Self {
        let len = self.parts.first().copied().unwrap_or(0);
        let parts = (0..len)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Self::from_sorted(parts)
    }

    /// Hook lengths of all cells, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.n);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.parts[j] - i - 1);
            }
        }
        hooks
    }

    /// `sum (i - 1) lambda_i` with rows indexed from 1.
    pub fn n_stat(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Number of standard tableaux, `n! / prod hooks`.
    pub fn dimension(&self) -> BigUint {
        let hooks: BigUint = self.hook_lengths().into_iter().map(BigUint::from).product();
        factorial(self.n) / hooks
    }

    /// The union of parts (sum of cycle types).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::new(parts)
    }

    /// Exponential notation `1^2 3^1`; `()` when empty.
    pub fn exponential_form(&self) -> String {
        if self.is_empty() {
            return "()".into();
        }
        self.exponents()
            .map(|(i, a)| format!("{i}^{a}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Comma-separated parts without parentheses, `2,1`.
    pub fn bracket_body(&self) -> String {
        self.parts
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.bracket_body())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,2,1)`, `3,2,1`, `[3,2,1]` or the exponential form `1^1 2^1 3^1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPartition(s.to_string());
        let body = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if body.is_empty() {
            return Ok(Self::empty());
        }
        if body.contains('^') {
            let mut exps = Vec::new();
            for tok in body.split_whitespace() {
                let (i, a) = tok.split_once('^').ok_or_else(bad)?;
                let i: usize = i.parse().map_err(|_| bad())?;
                let a: usize = a.parse().map_err(|_| bad())?;
                if i == 0 {
                    return Err(bad());
                }
                exps.push((i, a));
            }
            return Ok(Self::from_exponents(&exps));
        }
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(bad());
        }
        Ok(Self::new(parts))
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first,
/// `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    for part in (1..=remaining.min(max)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    // Partition counts via the "largest part at most k" recurrence.
    fn count_oracle(n: usize) -> usize {
        let mut table = vec![vec![0usize; n + 1]; n + 1];
        for k in 0..=n {
            table[0][k] = 1;
        }
        for m in 1..=n {
            for k in 1..=n {
                table[m][k] = table[m][k - 1] + if k <= m { table[m - k][k] } else { 0 };
            }
        }
        table[n][n]
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(5).len(), 7);
    }

    #[test]
    fn counts_match_recurrence() {
        for n in 0..=30 {
            assert_eq!(partitions_of(n).len(), count_oracle(n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_is_reverse_lex_and_distinct() {
        for n in 1..=10 {
            let all = partitions_of(n);
            for w in all.windows(2) {
                assert!(w[0].parts() > w[1].parts());
            }
            assert!(all.iter().all(|l| l.size() == n));
        }
    }

    #[test]
    fn centralizer_orders() {
        assert_eq!(p(&[1, 1, 1]).z(), BigUint::from(6u32));
        assert_eq!(p(&[2, 1]).z(), BigUint::from(2u32));
        assert_eq!(p(&[3]).z(), BigUint::from(3u32));
        assert_eq!(Partition::empty().z(), BigUint::one());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=12 {
            let total: BigUint = partitions_of(n).iter().map(Partition::class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn hooks_and_n_stat() {
        let mut h = p(&[2, 1]).hook_lengths();
        h.sort_unstable();
        assert_eq!(h, vec![1, 1, 3]);
        assert_eq!(p(&[2, 1]).n_stat(), 1);
        let mut h = p(&[4]).hook_lengths();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2, 3, 4]);
        assert_eq!(p(&[4]).n_stat(), 0);
        let mut h = p(&[1, 1, 1]).hook_lengths();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2, 3]);
        assert_eq!(p(&[1, 1, 1]).n_stat(), 3);
    }

    #[test]
    fn hook_formula_gives_integers() {
        for n in 0..=10 {
            let mut sum_sq = BigUint::from(0u32);
            for l in partitions_of(n) {
                let hooks: BigUint = l.hook_lengths().into_iter().map(BigUint::from).product();
                assert_eq!(&factorial(n) % &hooks, BigUint::from(0u32));
                let f = l.dimension();
                sum_sq += &f * &f;
            }
            // sum of squared dimensions of irreducibles is n!
            assert_eq!(sum_sq, factorial(n));
        }
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!("(3,2,1)".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("1^1 2^1 3^1".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("1^3".parse::<Partition>().unwrap(), p(&[1, 1, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(3,0)".parse::<Partition>().is_err());
        assert!("a,b".parse::<Partition>().is_err());
        assert_eq!(p(&[1, 3, 2]).to_string(), "(3,2,1)");
        assert_eq!(p(&[2, 1, 1]).exponential_form(), "1^2 2^1");
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
