//! Reference values computed without the library's own algorithms.
#![allow(dead_code)]

use cnx_core::arith::{int, Poly, Rational};
use cnx_core::partitions::Partition;

/// `chi^lambda(mu)` from the Frobenius formula: the coefficient of
/// `x^{lambda + delta}` in `a_delta * p_mu`, expanded monomial by monomial.
pub fn frobenius_character(lambda: &Partition, mu: &Partition) -> i64 {
    let l = lambda.len().max(1);
    let parts = lambda.parts();
    let delta: Vec<i64> = (0..l).map(|i| (l - 1 - i) as i64).collect();
    let mut total = 0;
    for_each_permutation(l, &mut |sigma, sgn| {
        let target: Option<Vec<usize>> = (0..l)
            .map(|i| {
                let a = parts.get(i).copied().unwrap_or(0) as i64 + delta[i] - delta[sigma[i]];
                usize::try_from(a).ok()
            })
            .collect();
        if let Some(mut target) = target {
            total += sgn * distributions(mu.parts(), &mut target);
        }
    });
    total
}

/// Ways to send each part to a variable so the variable sums hit `target`.
fn distributions(parts: &[usize], target: &mut [usize]) -> i64 {
    match parts.split_first() {
        None => i64::from(target.iter().all(|&t| t == 0)),
        Some((&first, rest)) => {
            let mut count = 0;
            for i in 0..target.len() {
                if target[i] >= first {
                    target[i] -= first;
                    count += distributions(rest, target);
                    target[i] += first;
                }
            }
            count
        }
    }
}

fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize], i64)) {
    fn go(perm: &mut Vec<usize>, k: usize, sgn: i64, f: &mut dyn FnMut(&[usize], i64)) {
        if k == perm.len() {
            f(perm, sgn);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(perm, k + 1, if i == k { sgn } else { -sgn }, f);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    go(&mut perm, 0, 1, f);
}

/// `<h_lambda, h_mu>`: nonnegative integer matrices with row sums `lambda`
/// and column sums `mu`.
pub fn contingency_count(rows: &[usize], cols: &[usize]) -> u64 {
    fn fill(rows: &[usize], cols: &mut Vec<usize>) -> u64 {
        let Some((&r, rest)) = rows.split_first() else {
            return u64::from(cols.iter().all(|&c| c == 0));
        };
        let mut total = 0;
        compositions(r, cols, 0, &mut |cols| total += fill(rest, cols));
        total
    }
    fn compositions(r: usize, cols: &mut Vec<usize>, j: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
        if j == cols.len() {
            if r == 0 {
                f(cols);
            }
            return;
        }
        let cap = cols[j].min(r);
        for take in 0..=cap {
            cols[j] -= take;
            compositions(r - take, cols, j + 1, f);
            cols[j] += take;
        }
    }
    fill(rows, &mut cols.to_vec())
}

/// `[n]_q! = prod_{i=1}^n (1 + q + ... + q^{i-1})` in the variable `q = u^step`.
pub fn q_factorial(n: usize, step: usize) -> Poly {
    (1..=n).fold(Poly::one(), |acc, i| {
        let bracket = (0..i).fold(Poly::zero(), |b, j| b + Poly::monomial(int(1), j * step));
        acc * bracket
    })
}

/// `q^{n(lambda)} [n]_q! / prod_hooks [h]_q`, with `q = u^2`.
pub fn q_hook_fake_degree(lambda: &Partition) -> Poly {
    let num = q_factorial(lambda.size(), 2) * Poly::monomial(int(1), 2 * lambda.n_stat());
    let den = lambda.hook_lengths().into_iter().fold(Poly::one(), |acc, h| {
        acc * (0..h).fold(Poly::zero(), |b, j| b + Poly::monomial(int(1), 2 * j))
    });
    num.exact_div(&den).expect("q-hook formula is a polynomial")
}

/// Signed Poincaré polynomial of the graded-symmetric power `Sym^n` of a
/// space with Betti numbers `betti`: even classes repeat, odd ones do not.
pub fn sym_power_poincare(betti: &[usize], n: usize) -> Poly {
    let basis: Vec<usize> = betti
        .iter()
        .enumerate()
        .flat_map(|(deg, &b)| std::iter::repeat(deg).take(b))
        .collect();
    fn go(basis: &[usize], start: usize, left: usize, weight: usize, acc: &mut Vec<i64>) {
        if left == 0 {
            if acc.len() <= weight {
                acc.resize(weight + 1, 0);
            }
            acc[weight] += 1;
            return;
        }
        for i in start..basis.len() {
            let next = if basis[i] % 2 == 0 { i } else { i + 1 };
            go(basis, next, left - 1, weight + basis[i], acc);
        }
    }
    let mut acc = Vec::new();
    go(&basis, 0, n, 0, &mut acc);
    let signed: Vec<i64> = acc
        .iter()
        .enumerate()
        .map(|(w, &c)| if w % 2 == 0 { c } else { -c })
        .collect();
    Poly::from_ints(&signed)
}

pub fn abs_rational(x: Rational) -> Rational {
    if x < int(0) {
        -x
    } else {
        x
    }
}
