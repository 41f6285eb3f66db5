//! One-dimensional cut-and-project sets `Σ_{ε,η}(Ω) = {x ∈ Z + Zη : x* ∈ Ω}`
//! with `(a + bη)* = a + bε`, for `ε, η` in a quadratic field.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::algebraic::{Family, FieldElement, PisotBase};
use crate::error::{Error, Result};
use crate::integers::{brute_force_points, PointSequence};
use crate::numeration::Mode;
use crate::words::{complexity, is_balanced, Letter, Word};

#[derive(Clone, Debug, Serialize)]
pub struct Scheme {
    pub eta: FieldElement,
    pub epsilon: FieldElement,
}

impl Scheme {
    pub fn new(eta: FieldElement, epsilon: FieldElement) -> Result<Self> {
        if !std::sync::Arc::ptr_eq(eta.field(), epsilon.field()) && eta.field().minpoly() != epsilon.field().minpoly() {
            return Err(Error::FieldMismatch);
        }
        if eta.field().degree() != 2 {
            return Err(Error::DegreeMismatch(eta.field().degree()));
        }
        if eta.to_rational().is_some() || epsilon.to_rational().is_some() {
            return Err(Error::ConstraintViolation("η and ε must be irrational".into()));
        }
        if eta == epsilon {
            return Err(Error::ConstraintViolation("η and ε must differ".into()));
        }
        Ok(Self { eta, epsilon })
    }

    /// `Σ_β`: `η = β`, `ε = β'`, so that `*` is the Galois conjugation.
    pub fn algebraic(base: &PisotBase) -> Result<Self> {
        Self::new(base.beta(), base.beta_conjugate()?)
    }

    /// `a + bη`.
    pub fn lift(&self, a: &BigInt, b: &BigInt) -> FieldElement {
        let f = self.eta.field();
        FieldElement::from_integer(f, a.clone()) + self.eta.scale(&BigRational::from_integer(b.clone()))
    }

    /// Lattice coordinates `(a, b)` of `x = a + bη`.
    pub fn coordinates(&self, x: &FieldElement) -> Result<(BigInt, BigInt)> {
        let b = x.coeff(1) / self.eta.coeff(1);
        let a = x.coeff(0) - &b * self.eta.coeff(0);
        if !a.is_integer() || !b.is_integer() {
            return Err(Error::OutOfDomain);
        }
        Ok((a.to_integer(), b.to_integer()))
    }

    pub fn star(&self, x: &FieldElement) -> Result<FieldElement> {
        let (a, b) = self.coordinates(x)?;
        Ok(self.star_of(&a, &b))
    }

    fn star_of(&self, a: &BigInt, b: &BigInt) -> FieldElement {
        let f = self.eta.field();
        FieldElement::from_integer(f, a.clone()) + self.epsilon.scale(&BigRational::from_integer(b.clone()))
    }
}

/// An interval with explicit openness at each end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: FieldElement,
    pub hi: FieldElement,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Window {
    /// `lo < hi`, or `lo = hi` for a closed singleton.
    pub fn new(lo: FieldElement, hi: FieldElement, closed_lo: bool, closed_hi: bool) -> Result<Self> {
        let ok = lo < hi || (lo == hi && closed_lo && closed_hi);
        if !ok {
            return Err(Error::ConstraintViolation(format!("degenerate window ({lo}, {hi})")));
        }
        Ok(Self {
            lo,
            hi,
            closed_lo,
            closed_hi,
        })
    }

    pub fn closed(lo: FieldElement, hi: FieldElement) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: FieldElement, hi: FieldElement) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: FieldElement, hi: FieldElement) -> Result<Self> {
        Self::new(lo, hi, true, false)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let above = if self.closed_lo { x >= &self.lo } else { x > &self.lo };
        let below = if self.closed_hi { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&FieldElement::zero(self.lo.field()))
    }

    pub fn translate(&self, x: &FieldElement) -> Self {
        Self {
            lo: &self.lo + x,
            hi: &self.hi + x,
            ..self.clone()
        }
    }

    /// `a Ω`; a negative factor swaps the ends.
    pub fn scale(&self, a: &FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lo, hi) = (&self.lo * a, &self.hi * a);
        if a.is_positive() {
            Ok(Self { lo, hi, ..self.clone() })
        } else {
            Ok(Self {
                lo: hi,
                hi: lo,
                closed_lo: self.closed_hi,
                closed_hi: self.closed_lo,
            })
        }
    }

    /// Splits at the midpoint into `[lo, mid)` and `[mid, hi]` (flags kept at
    /// the outer ends).
    pub fn split(&self) -> Option<(Self, Self)> {
        if self.lo == self.hi {
            return None;
        }
        let mid = (&self.lo + &self.hi) * FieldElement::from_rational(self.lo.field(), BigRational::new(1.into(), 2.into()));
        Some((
            Self {
                hi: mid.clone(),
                closed_hi: false,
                ..self.clone()
            },
            Self {
                lo: mid,
                closed_lo: true,
                ..self.clone()
            },
        ))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.closed_lo { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.closed_hi { ']' } else { ')' }
        )
    }
}

fn ceil(x: &FieldElement) -> BigInt {
    -(-x).floor()
}

/// Integers in `[lo, hi]`.
fn int_range(lo: &FieldElement, hi: &FieldElement) -> Option<(BigInt, BigInt)> {
    let (a, b) = (ceil(lo), hi.floor());
    (a <= b).then_some((a, b))
}

/// All `x = a + bη` with `x ∈ real_window` and `x* ∈ omega`, increasing.
///
/// Since `x - x* = b(η - ε)`, the coordinate `b` is confined to an interval
/// read off the two windows; for each `b` both windows bound `a` directly.
pub fn cap_points(scheme: &Scheme, omega: &Window, real_window: &Window) -> Vec<FieldElement> {
    let d = &scheme.eta - &scheme.epsilon;
    let lo = &real_window.lo - &omega.hi;
    let hi = &real_window.hi - &omega.lo;
    let (blo, bhi) = if d.is_positive() {
        (&lo / &d, &hi / &d)
    } else {
        (&hi / &d, &lo / &d)
    };
    let mut out = Vec::new();
    let Some((b0, b1)) = int_range(&blo, &bhi) else {
        return out;
    };
    let mut b = b0;
    while b <= b1 {
        let rb = BigRational::from_integer(b.clone());
        let be = scheme.eta.scale(&rb);
        let bs = scheme.epsilon.scale(&rb);
        let alo = std::cmp::max(&real_window.lo - &be, &omega.lo - &bs);
        let ahi = std::cmp::min(&real_window.hi - &be, &omega.hi - &bs);
        if let Some((a0, a1)) = int_range(&alo, &ahi) {
            let mut a = a0;
            while a <= a1 {
                let x = scheme.lift(&a, &b);
                if real_window.contains(&x) && omega.contains(&scheme.star_of(&a, &b)) {
                    out.push(x);
                }
                a += 1;
            }
        }
        b += 1;
    }
    out.sort();
    out
}

/// Difference of two finite sets.
#[derive(Clone, Debug, Serialize)]
pub struct SetComparison {
    pub left: usize,
    pub right: usize,
    pub equal: bool,
    pub only_left: Vec<FieldElement>,
    pub only_right: Vec<FieldElement>,
}

impl SetComparison {
    pub fn of(left: &[FieldElement], right: &[FieldElement]) -> Self {
        let l: BTreeSet<_> = left.iter().cloned().collect();
        let r: BTreeSet<_> = right.iter().cloned().collect();
        let only_left: Vec<_> = l.difference(&r).cloned().collect();
        let only_right: Vec<_> = r.difference(&l).cloned().collect();
        Self {
            left: l.len(),
            right: r.len(),
            equal: only_left.is_empty() && only_right.is_empty(),
            only_left,
            only_right,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowAlgebraReport {
    /// `Σ(Ω₁) ∪ Σ(Ω₂) = Σ(Ω₁ ∪ Ω₂)` for the midpoint split of `Ω`.
    pub union: SetComparison,
    /// `x₀ + Σ(Ω) = Σ(x₀' + Ω)`.
    pub translation: SetComparison,
    /// `Σ(α'Ω) = α Σ(Ω)`.
    pub scaling: SetComparison,
}

impl WindowAlgebraReport {
    pub fn passed(&self) -> bool {
        self.union.equal && self.translation.equal && self.scaling.equal
    }
}

fn in_order(x: &FieldElement) -> bool {
    x.coeffs().iter().all(BigRational::is_integer)
}

/// The three window identities for `Σ_β`, each restricted to `real_window`.
pub fn window_algebra_check(
    base: &PisotBase,
    omega: &Window,
    x0: &FieldElement,
    alpha: &FieldElement,
    real_window: &Window,
) -> Result<WindowAlgebraReport> {
    let s = Scheme::algebraic(base)?;
    if !in_order(alpha) || !alpha.norm()?.abs().is_one() {
        return Err(Error::NotAUnit);
    }
    if !in_order(x0) {
        return Err(Error::OutOfDomain);
    }
    let full = cap_points(&s, omega, real_window);
    let union = match omega.split() {
        Some((w1, w2)) => {
            let mut parts = cap_points(&s, &w1, real_window);
            parts.extend(cap_points(&s, &w2, real_window));
            SetComparison::of(&parts, &full)
        }
        None => SetComparison::of(&full, &full),
    };
    let shifted: Vec<_> = cap_points(&s, omega, &real_window.translate(&-x0))
        .into_iter()
        .map(|x| x + x0)
        .collect();
    let translation = SetComparison::of(&shifted, &cap_points(&s, &omega.translate(&x0.conjugate()?), real_window));
    let inv = alpha.inverse()?;
    let scaled: Vec<_> = cap_points(&s, omega, &real_window.scale(&inv)?)
        .into_iter()
        .map(|x| x * alpha)
        .collect();
    let scaling = SetComparison::of(&cap_points(&s, &omega.scale(&alpha.conjugate()?)?, real_window), &scaled);
    Ok(WindowAlgebraReport {
        union,
        translation,
        scaling,
    })
}

/// The windows identifying `Z_β⁺` and `Z_{-β}` for a quadratic unit.
pub fn identification_windows(base: &PisotBase) -> Result<(Window, Window)> {
    if !base.is_quadratic() || !base.is_unit() {
        return Err(Error::NotAUnit);
    }
    let b = base.beta();
    let zero = base.int(0);
    let one = base.int(1);
    match base.family() {
        Family::Plus => {
            let pos = Window::open(-&one, b.clone())?;
            let neg = if base.m() == 1 {
                Window::half_open(zero, &b * &b)?
            } else {
                Window::half_open(zero, b)?
            };
            Ok((pos, neg))
        }
        Family::Minus => {
            let pos = Window::half_open(zero, b.clone())?;
            let r = (&b - &one) / (&b + &one);
            let neg = Window::open(-&r, &b * &r)?;
            Ok((pos, neg))
        }
        Family::General => Err(Error::WrongFamily("quadratic base required".into())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentificationReport {
    pub positive_window: Window,
    pub negative_window: Window,
    /// `Σ(Ω₊) ∩ R⁺` against the gap-word points of `Z_β⁺`.
    pub positive: SetComparison,
    /// `Σ(Ω₋)` against the gap-word points of `Z_{-β}`.
    pub negative: SetComparison,
    /// The same two sets of integers against digit-string enumeration.
    pub positive_oracle: SetComparison,
    pub negative_oracle: SetComparison,
}

impl IdentificationReport {
    pub fn passed(&self) -> bool {
        self.positive.equal && self.negative.equal && self.positive_oracle.equal && self.negative_oracle.equal
    }
}

fn sequence_points(base: &PisotBase, mode: Mode, w: &Window) -> Result<Vec<FieldElement>> {
    let seq = PointSequence::new(base, mode)?;
    Ok(seq.points_in(&w.lo, &w.hi).into_iter().filter(|x| w.contains(x)).collect())
}

fn oracle_points(base: &PisotBase, mode: Mode, w: &Window) -> Result<Vec<FieldElement>> {
    Ok(brute_force_points(base, mode, &w.lo, &w.hi, None)?
        .into_iter()
        .map(|p| p.value)
        .filter(|x| w.contains(x))
        .collect())
}

fn nonnegative_part(w: &Window) -> Option<Window> {
    let zero = FieldElement::zero(w.lo.field());
    if w.hi < zero {
        return None;
    }
    if w.lo >= zero {
        return Some(w.clone());
    }
    Window::new(zero, w.hi.clone(), true, w.closed_hi).ok()
}

/// Both identifications of a quadratic unit base on `real_window`.
pub fn verify_identifications(base: &PisotBase, real_window: &Window) -> Result<IdentificationReport> {
    let (pw, nw) = identification_windows(base)?;
    let s = Scheme::algebraic(base)?;
    let (cap_pos, seq_pos, orc_pos) = match nonnegative_part(real_window) {
        Some(w) => (
            cap_points(&s, &pw, &w),
            sequence_points(base, Mode::Pos, &w)?,
            oracle_points(base, Mode::Pos, &w)?,
        ),
        None => (Vec::new(), Vec::new(), Vec::new()),
    };
    let cap_neg = cap_points(&s, &nw, real_window);
    let seq_neg = sequence_points(base, Mode::Neg, real_window)?;
    let orc_neg = oracle_points(base, Mode::Neg, real_window)?;
    Ok(IdentificationReport {
        positive: SetComparison::of(&cap_pos, &seq_pos),
        negative: SetComparison::of(&cap_neg, &seq_neg),
        positive_oracle: SetComparison::of(&cap_pos, &orc_pos),
        negative_oracle: SetComparison::of(&cap_neg, &orc_neg),
        positive_window: pw,
        negative_window: nw,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionReport {
    /// `Z_β` against `Z_{-β} ∪ βZ_{-β}`, from the gap words.
    pub sequences: SetComparison,
    /// `Σ(-1, β)` against `Σ[0, β) ∪ βΣ[0, β)`.
    pub cut_and_project: SetComparison,
    /// `Z_β` against digit-string enumeration of `Z_{-β}` and `βZ_{-β}`.
    pub oracle: SetComparison,
    /// `Z_{-β} ∩ βZ_{-β}` within the window.
    pub intersection: Vec<FieldElement>,
}

impl UnionReport {
    pub fn passed(&self) -> bool {
        self.sequences.equal
            && self.cut_and_project.equal
            && self.oracle.equal
            && self.intersection.len() == 1
            && self.intersection[0].is_zero()
    }
}

/// `Z_β ∩ R⁺ = (Z_{-β} ∪ βZ_{-β}) ∩ R⁺` and `Z_{-β} ∩ βZ_{-β} = {0}` for
/// `x^2 - mx - 1`, `m >= 2`, on the non-negative part of `real_window`.
pub fn verify_union_theorem(base: &PisotBase, real_window: &Window) -> Result<UnionReport> {
    if base.family() != Family::Plus || base.n() != 1 || base.m() < 2 {
        return Err(Error::WrongFamily("the union theorem concerns x^2 - mx - 1, m >= 2".into()));
    }
    let w = nonnegative_part(real_window)
        .ok_or_else(|| Error::ConstraintViolation("window has no non-negative part".into()))?;
    let beta = base.beta();
    let inv = beta.inverse()?;
    let w_over = w.scale(&inv)?;
    let times_beta = |v: Vec<FieldElement>| -> Vec<FieldElement> { v.into_iter().map(|x| x * &beta).collect() };

    let zb = sequence_points(base, Mode::Pos, &w)?;
    let zn = sequence_points(base, Mode::Neg, &w)?;
    let bzn = times_beta(sequence_points(base, Mode::Neg, &w_over)?);
    let mut union = zn.clone();
    union.extend(bzn.iter().cloned());

    let s = Scheme::algebraic(base)?;
    let (pw, nw) = identification_windows(base)?;
    let sig_pos = cap_points(&s, &pw, &w);
    let mut sig_union = cap_points(&s, &nw, &w);
    sig_union.extend(times_beta(cap_points(&s, &nw, &w_over)));

    let ozb = oracle_points(base, Mode::Pos, &w)?;
    let mut ounion = oracle_points(base, Mode::Neg, &w)?;
    ounion.extend(times_beta(oracle_points(base, Mode::Neg, &w_over)?));

    let a: BTreeSet<_> = zn.into_iter().collect();
    let intersection = bzn.into_iter().filter(|x| a.contains(x)).collect();
    Ok(UnionReport {
        sequences: SetComparison::of(&zb, &union),
        cut_and_project: SetComparison::of(&sig_pos, &sig_union),
        oracle: SetComparison::of(&ozb, &ounion),
        intersection,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreeGapReport {
    /// Distinct gaps, decreasing.
    pub gaps: Vec<FieldElement>,
    /// At most three gaps, and with three the largest is the sum of the others.
    pub structure_ok: bool,
    /// Coding of the points `t_{-count} .. t_count` by gap (0 = larger gap),
    /// when exactly two gaps occur.
    pub coding: Option<Word>,
    /// Complexity `n + 1` and 1-balance of the coding for `n <= checked_to`.
    pub sturmian: Option<bool>,
    pub checked_to: usize,
}

/// Gaps among the `count` points on each side of 0 in `Σ_{ε,η}(Ω)`.
pub fn three_gap_check(scheme: &Scheme, omega: &Window, count: usize) -> Result<ThreeGapReport> {
    if !omega.contains_zero() || omega.lo == omega.hi {
        return Err(Error::ConstraintViolation("window must be non-degenerate and contain 0".into()));
    }
    let f = scheme.eta.field();
    let mut r = FieldElement::from_integer(f, (count.max(1) as i64) * 2);
    let pts = loop {
        let w = Window::closed(-&r, r.clone())?;
        let pts = cap_points(scheme, omega, &w);
        let zero = pts.iter().position(FieldElement::is_zero).expect("0 lies in every such set");
        if zero >= count && pts.len() - zero > count {
            break pts[zero - count..=zero + count].to_vec();
        }
        r = &r * FieldElement::from_integer(f, 2);
    };
    let diffs: Vec<FieldElement> = pts.windows(2).map(|p| &p[1] - &p[0]).collect();
    let mut gaps: Vec<FieldElement> = diffs.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    gaps.reverse();
    let structure_ok = match gaps.len() {
        1 | 2 => true,
        3 => gaps[0] == &gaps[1] + &gaps[2],
        _ => false,
    };
    let (coding, sturmian, checked_to) = if gaps.len() == 2 {
        let w: Word = diffs.iter().map(|d| Letter::from(d != &gaps[0])).collect();
        let mut ok = true;
        let mut n = 0;
        while n < 50 {
            match complexity(&w, n + 1) {
                Ok(c) => {
                    ok &= c == n + 2;
                    n += 1;
                }
                Err(_) => break,
            }
        }
        ok &= n == 0 || is_balanced(&w, n).unwrap_or(false);
        (Some(w), Some(ok), n)
    } else {
        (None, None, 0)
    };
    Ok(ThreeGapReport {
        gaps,
        structure_ok,
        coding,
        sturmian,
        checked_to,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::make_base;

    fn golden() -> PisotBase {
        make_base(Family::Plus, 1, 1).unwrap()
    }

    #[test]
    fn star_is_conjugation() {
        let b = golden();
        let s = Scheme::algebraic(&b).unwrap();
        let x = b.int(3) - b.beta().scale(&BigRational::from_integer(5.into()));
        assert_eq!(s.star(&x).unwrap(), x.conjugate().unwrap());
        assert!(s.star(&b.rational(1, 2)).is_err());
    }

    #[test]
    fn golden_negative_integers() {
        let b = golden();
        let s = Scheme::algebraic(&b).unwrap();
        let omega = Window::half_open(b.int(0), b.beta_pow(2)).unwrap();
        let w = Window::closed(b.int(0), b.int(5)).unwrap();
        let pts = cap_points(&s, &omega, &w);
        let seq = PointSequence::new(&b, Mode::Neg).unwrap();
        assert_eq!(pts, seq.points_in(&b.int(0), &b.int(5)));
    }

    #[test]
    fn singleton_window() {
        let b = golden();
        let s = Scheme::algebraic(&b).unwrap();
        let omega = Window::closed(b.int(0), b.int(0)).unwrap();
        let w = Window::closed(b.int(-10), b.int(10)).unwrap();
        assert_eq!(cap_points(&s, &omega, &w), vec![b.int(0)]);
    }

    #[test]
    fn algebra() {
        let b = golden();
        let omega = Window::half_open(b.int(0), b.beta()).unwrap();
        let w = Window::closed(b.int(-10), b.int(10)).unwrap();
        let r = window_algebra_check(&b, &omega, &b.int(1), &b.beta(), &w).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(matches!(
            window_algebra_check(&b, &omega, &b.int(0), &b.int(2), &w),
            Err(Error::NotAUnit)
        ));
    }

    #[test]
    fn identifications_and_union() {
        let b = make_base(Family::Plus, 2, 1).unwrap();
        let w = Window::closed(b.int(-10), b.int(10)).unwrap();
        assert!(verify_identifications(&b, &w).unwrap().passed());
        let w = Window::closed(b.int(0), b.int(20)).unwrap();
        let u = verify_union_theorem(&b, &w).unwrap();
        assert!(u.passed(), "{u:?}");
        assert!(verify_union_theorem(&golden(), &w).is_err());
    }

    #[test]
    fn three_gaps() {
        let b = golden();
        let s = Scheme::algebraic(&b).unwrap();
        let r = three_gap_check(&s, &Window::half_open(b.int(0), b.beta()).unwrap(), 400).unwrap();
        assert_eq!(r.gaps.len(), 2);
        assert_eq!(r.sturmian, Some(true));
        let r = three_gap_check(&s, &Window::open(b.int(-10), b.int(10)).unwrap(), 100).unwrap();
        assert!(r.structure_ok);
    }
}
