//! The group law `t_j ⊕ t_k = t_{j+k}` on an indexed point set and how far
//! it is from real addition.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic::{Family, FieldElement, PisotBase};
use crate::error::{Error, Result};
use crate::integers::PointSequence;
use crate::words::balance;

pub fn oplus(seq: &PointSequence, j: i64, k: i64) -> FieldElement {
    seq.point(j + k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditionReport {
    pub j: i64,
    pub k: i64,
    /// `t_j + t_k`.
    pub sum: FieldElement,
    pub oplus_index: i64,
    pub oplus: FieldElement,
    /// `t_j + t_k - t_{j+k}`.
    pub diff: FieldElement,
    /// Index of the point closest to the sum (lower index on ties).
    pub closest_index: i64,
    pub closest: FieldElement,
    /// Index of the sum when it is itself a point.
    pub sum_index: Option<i64>,
    /// `t_j + t_k = t_{j+k}`.
    pub is_compatible_instance: bool,
}

/// `t_j + t_k - t_{j+k}` as `Σ_a (|w|_a - |w'|_a) Δ_a`, with `w = u_0 .. u_{j-1}`
/// and `w' = u_k .. u_{k+j-1}` for `j >= 0` (mirrored for `j < 0`).
pub fn diff_combinatorial(seq: &PointSequence, j: i64, k: i64) -> FieldElement {
    let (w, w2) = if j >= 0 {
        (seq.counts(0, j), seq.counts(k, k + j))
    } else {
        (seq.counts(k + j, k), seq.counts(j, 0))
    };
    let mut acc = seq.base().int(0);
    for (a, (x, y)) in w.iter().zip(&w2).enumerate() {
        let c = x - y;
        if c != 0 {
            acc = acc + seq.gaps().deltas[a].scale(&BigRational::from_integer(c.into()));
        }
    }
    acc
}

/// Panics if the positional and combinatorial differences disagree, which
/// would mean the point cache is corrupt.
pub fn addition_report(seq: &PointSequence, j: i64, k: i64) -> AdditionReport {
    let sum = seq.point(j) + seq.point(k);
    let oplus = seq.point(j + k);
    let diff = &sum - &oplus;
    assert_eq!(diff, diff_combinatorial(seq, j, k), "difference for ({j}, {k})");
    let closest_index = seq.closest_index(&sum, j + k);
    let sum_index = if diff.is_zero() { Some(j + k) } else { seq.index_of(&sum, j + k) };
    AdditionReport {
        j,
        k,
        closest: seq.point(closest_index),
        is_compatible_instance: diff.is_zero(),
        sum,
        oplus_index: j + k,
        oplus,
        diff,
        closest_index,
        sum_index,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub j: i64,
    pub k: i64,
    /// `t_j + t_k = t_{sum_index}` with `sum_index != j + k`.
    pub sum_index: i64,
}

/// All `|j| <= |k| <= bound` for which `t_j + t_k` is a point other than
/// `t_{j+k}`, sorted.
pub fn compatibility_scan(seq: &PointSequence, bound: i64) -> Vec<Violation> {
    seq.ensure(2 * bound.unsigned_abs() as usize + 8);
    let ks: Vec<i64> = (-bound..=bound).collect();
    let mut out: Vec<Violation> = ks
        .par_iter()
        .flat_map_iter(|&k| {
            (-k.abs()..=k.abs()).filter_map(move |j| {
                let sum = seq.point(j) + seq.point(k);
                if sum == seq.point(j + k) {
                    return None;
                }
                seq.index_of(&sum, j + k).map(|i| Violation { j, k, sum_index: i })
            })
        })
        .collect();
    out.sort();
    out
}

/// `ξ = Δ₀⁻ - Δ₁⁻` for `x^2 - mx - 1`: `1/β²` for `m = 1`, `-1/β` otherwise.
pub fn xi(base: &PisotBase) -> Result<FieldElement> {
    if base.family() != Family::Plus || base.n() != 1 {
        return Err(Error::WrongFamily("ξ is defined for x^2 - mx - 1".into()));
    }
    Ok(if base.m() == 1 {
        base.beta_pow(-2)
    } else {
        -base.beta_pow(-1)
    })
}

/// Distinct values of `t_j + t_k - t_{j+k}` for `|j|, |k| <= bound`.
pub fn diff_set_scan(seq: &PointSequence, bound: i64) -> BTreeSet<FieldElement> {
    seq.ensure(2 * bound.unsigned_abs() as usize + 8);
    (-bound..=bound)
        .into_par_iter()
        .map(|k| {
            (-bound..=bound)
                .map(|j| seq.point(j) + seq.point(k) - seq.point(j + k))
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

fn require_closest_family(base: &PisotBase) -> Result<()> {
    if base.family() != Family::Plus || base.n() != 1 || base.m() < 2 {
        return Err(Error::WrongFamily("x^2 - mx - 1 with m >= 2 required".into()));
    }
    Ok(())
}

/// Whether `t_{j+k}` is the point closest to `t_j + t_k` for all
/// `|j|, |k| <= bound`.
pub fn closest_point_property(seq: &PointSequence, bound: i64) -> Result<bool> {
    require_closest_family(seq.base())?;
    seq.ensure(2 * bound.unsigned_abs() as usize + 8);
    Ok((-bound..=bound).into_par_iter().all(|k| {
        (-bound..=bound).all(|j| {
            let sum = seq.point(j) + seq.point(k);
            seq.closest_index(&sum, j + k) == j + k
        })
    }))
}

/// Indices `1 <= j <= bound` where `t_j + t_{-j} != ξ`.
pub fn symmetry_failures(seq: &PointSequence, bound: i64) -> Result<Vec<i64>> {
    let x = xi(seq.base())?;
    Ok((1..=bound).filter(|&j| seq.point(j) + seq.point(-j) != x).collect())
}

/// Pairs `|j|, |k| <= bound` where `t_j - t_k ∉ t_{j-k} - {0, ξ}`.
pub fn subtraction_failures(seq: &PointSequence, bound: i64) -> Result<Vec<(i64, i64)>> {
    let x = xi(seq.base())?;
    seq.ensure(2 * bound.unsigned_abs() as usize + 8);
    let mut out: Vec<(i64, i64)> = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|k| {
            let x = x.clone();
            (-bound..=bound).filter_map(move |j| {
                let d = seq.point(j - k) - (seq.point(j) - seq.point(k));
                (!d.is_zero() && d != x).then_some((j, k))
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Empirical balance constant of the gap word for factor lengths up to each
/// entry of `lengths`. The prefix is doubled until the saturation check
/// passes (at most `2^20` letters).
pub fn balance_growth(seq: &PointSequence, lengths: &[usize]) -> Result<Vec<(usize, u32)>> {
    lengths
        .iter()
        .map(|&len| {
            let mut n = (8 * len).max(64);
            loop {
                let w = seq.positive_word(n);
                match balance(&w, len) {
                    Ok(c) => return Ok((len, c)),
                    Err(Error::BudgetTooSmall { .. }) if n < (1 << 20) => n *= 2,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect()
}
