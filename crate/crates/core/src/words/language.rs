//! Factor languages, complexity and balance of long finite prefixes.
//!
//! Properties of an infinite word are read off a finite prefix. A quantity
//! for factor length `n` is trusted only if the first half of the prefix
//! already yields the same value as the whole prefix; otherwise the budget is
//! reported as too small.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::morphism::{Letter, Word};
use crate::error::{Error, Result};

/// All factors of length `n` in `w`.
pub fn factors(w: &[Letter], n: usize) -> BTreeSet<Word> {
    raw_factors(w, n).into_iter().map(<[Letter]>::to_vec).collect()
}

fn raw_factors(w: &[Letter], n: usize) -> HashSet<&[Letter]> {
    if n > w.len() {
        return HashSet::new();
    }
    w.windows(n.max(1)).map(|f| &f[..n]).collect()
}

/// Factors of length `n`, checked for saturation against the first half.
pub fn saturated_factors(w: &[Letter], n: usize) -> Result<HashSet<&[Letter]>> {
    let full = raw_factors(w, n);
    let half = raw_factors(&w[..w.len() / 2], n);
    if full.is_empty() || half.len() != full.len() {
        return Err(Error::BudgetTooSmall { length: n });
    }
    Ok(full)
}

/// For each length `1..=maxlen`, whether the factor sets of `u` and `v`
/// coincide.
pub fn language_equal(u: &[Letter], v: &[Letter], maxlen: usize) -> Result<Vec<bool>> {
    (1..=maxlen)
        .into_par_iter()
        .map(|n| {
            let a = saturated_factors(u, n)?;
            let b = saturated_factors(v, n)?;
            Ok(a == b)
        })
        .collect()
}

/// Number of distinct factors of length `n`.
pub fn complexity(w: &[Letter], n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(1);
    }
    saturated_factors(w, n).map(|s| s.len())
}

/// Per letter, the spread `max - min` of occurrence counts over factors of
/// length `n`, maximized over letters.
fn spread(w: &[Letter], n: usize, prefix_counts: &[Vec<u32>]) -> u32 {
    let mut best = 0;
    for counts in prefix_counts {
        let (mut lo, mut hi) = (u32::MAX, 0);
        for i in 0..=w.len() - n {
            let c = counts[i + n] - counts[i];
            lo = lo.min(c);
            hi = hi.max(c);
        }
        best = best.max(hi - lo);
    }
    best
}

fn prefix_counts(w: &[Letter]) -> Vec<Vec<u32>> {
    let k = w.iter().copied().max().map_or(0, |m| m as usize + 1);
    (0..k)
        .map(|a| {
            let mut acc = Vec::with_capacity(w.len() + 1);
            acc.push(0u32);
            let mut c = 0;
            for &x in w {
                c += u32::from(x as usize == a);
                acc.push(c);
            }
            acc
        })
        .collect()
}

/// Per-length imbalance `max_a (max |f|_a - min |f|_a)` for lengths
/// `1..=maxlen`, checked for saturation.
pub fn balance_profile(w: &[Letter], maxlen: usize) -> Result<Vec<u32>> {
    let half = &w[..w.len() / 2];
    if half.len() < maxlen {
        return Err(Error::BudgetTooSmall { length: maxlen });
    }
    let full_counts = prefix_counts(w);
    let half_counts: Vec<Vec<u32>> = full_counts.iter().map(|c| c[..=half.len()].to_vec()).collect();
    (1..=maxlen)
        .into_par_iter()
        .map(|n| {
            let a = spread(w, n, &full_counts);
            let b = spread(half, n, &half_counts);
            if a == b {
                Ok(a)
            } else {
                Err(Error::BudgetTooSmall { length: n })
            }
        })
        .collect()
}

/// Smallest `C` such that factors of equal length up to `maxlen` differ by
/// at most `C` in every letter count.
pub fn balance(w: &[Letter], maxlen: usize) -> Result<u32> {
    Ok(balance_profile(w, maxlen)?.into_iter().max().unwrap_or(0))
}

pub fn is_balanced(w: &[Letter], maxlen: usize) -> Result<bool> {
    Ok(balance(w, maxlen)? <= 1)
}

/// Letter-count difference between two words of equal length.
pub fn imbalance(x: &[Letter], y: &[Letter]) -> u32 {
    let k = x.iter().chain(y).copied().max().map_or(0, |m| m as usize + 1);
    (0..k)
        .map(|a| {
            let cx = x.iter().filter(|&&c| c as usize == a).count() as i64;
            let cy = y.iter().filter(|&&c| c as usize == a).count() as i64;
            (cx - cy).unsigned_abs() as u32
        })
        .max()
        .unwrap_or(0)
}

/// Whether `f` occurs in `w`.
pub fn contains_factor(w: &[Letter], f: &[Letter]) -> bool {
    f.is_empty() || w.windows(f.len()).any(|x| x == f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::fixed::fixed_point;
    use crate::words::morphism::{word, Morphism};

    fn fib(n: usize) -> Word {
        fixed_point(&Morphism::from_strs(&["01", "0"]), 0, n).unwrap()
    }

    #[test]
    fn sturmian_complexity() {
        let u = fib(5000);
        for n in 1..=50 {
            assert_eq!(complexity(&u, n).unwrap(), n + 1);
        }
        assert_eq!(balance(&u, 100).unwrap(), 1);
    }

    #[test]
    fn constant_word() {
        let z = vec![0; 100];
        assert_eq!(complexity(&z, 5).unwrap(), 1);
        assert_eq!(balance(&z, 10).unwrap(), 0);
    }

    #[test]
    fn budget_errors() {
        let u = fib(40);
        assert!(matches!(complexity(&u, 15), Err(Error::BudgetTooSmall { .. })));
        assert!(balance(&u, 30).is_err());
    }

    #[test]
    fn self_language() {
        let u = fib(3000);
        assert!(language_equal(&u, &u, 20).unwrap().iter().all(|&b| b));
        assert_eq!(imbalance(&word("1001"), &word("0000")), 2);
        assert!(contains_factor(&u, &word("1001")));
        assert!(!contains_factor(&u, &word("11")));
    }
}
