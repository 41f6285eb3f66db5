//! Expansions in base `beta` (Rényi) and base `-beta` (Ito–Sadahiro).
//!
//! Both systems are instances of one transformation `T(x) = αx - ⌊αx - l⌋` on
//! `I = [l, l + 1)`: the positive base uses `α = β`, `l = 0`; the negative
//! base uses `α = -β`, `l = -β/(β+1)`.

mod digits;
mod successor;

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

pub use digits::{alt_compare, lex_compare, Digit, DigitString, EventuallyPeriodicWord};
pub use successor::successor_expansion;

use crate::algebraic::{FieldElement, PisotBase};
use crate::error::{Error, Result};

/// Default orbit length before giving up on periodicity detection.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pos,
    Neg,
}

impl Mode {
    /// The order on digit words that matches the order of values.
    pub fn compare(self, a: &EventuallyPeriodicWord, b: &EventuallyPeriodicWord) -> Ordering {
        match self {
            Mode::Pos => lex_compare(a, b),
            Mode::Neg => alt_compare(a, b),
        }
    }
}

/// A base together with a sign convention and its cached reference words.
#[derive(Clone, Debug)]
pub struct NumerationSystem {
    base: PisotBase,
    mode: Mode,
    alpha: FieldElement,
    l: FieldElement,
    low: EventuallyPeriodicWord,
    high: EventuallyPeriodicWord,
}

impl NumerationSystem {
    pub fn new(base: &PisotBase, mode: Mode) -> Result<Self> {
        let (alpha, l) = match mode {
            Mode::Pos => (base.beta(), base.int(0)),
            Mode::Neg => (-base.beta(), base.l()),
        };
        let mut sys = Self {
            base: base.clone(),
            mode,
            alpha,
            l,
            low: EventuallyPeriodicWord::zero(),
            high: EventuallyPeriodicWord::zero(),
        };
        let (low, high) = sys.compute_reference_words()?;
        sys.low = low;
        sys.high = high;
        Ok(sys)
    }

    pub fn base(&self) -> &PisotBase {
        &self.base
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `β` or `-β`.
    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn l(&self) -> &FieldElement {
        &self.l
    }

    pub fn max_digit(&self) -> Digit {
        match self.mode {
            Mode::Pos => self.base.max_digit_pos(),
            Mode::Neg => self.base.max_digit_neg(),
        }
    }

    /// Membership in `I = [l, l + 1)`.
    pub fn in_interval(&self, x: &FieldElement) -> bool {
        x >= &self.l && x < &(&self.l + self.base.int(1))
    }

    /// Membership in the open interval `(l, l + 1)`.
    pub fn in_open_interval(&self, x: &FieldElement) -> bool {
        x > &self.l && x < &(&self.l + self.base.int(1))
    }

    /// One step of `T`: the digit `⌊αx - l⌋` and `T(x)`.
    pub fn transform_step(&self, x: &FieldElement) -> Result<(Digit, FieldElement)> {
        if !self.in_interval(x) {
            return Err(Error::OutOfDomain);
        }
        Ok(self.step_unchecked(x))
    }

    fn step_unchecked(&self, x: &FieldElement) -> (Digit, FieldElement) {
        step(&self.base, &self.alpha, &self.l, x)
    }

    /// `d(x)` for `x ∈ I`, with the period found by exact state repetition.
    pub fn d_expansion(&self, x: &FieldElement, max_steps: usize) -> Result<EventuallyPeriodicWord> {
        if !self.in_interval(x) {
            return Err(Error::OutOfDomain);
        }
        self.orbit(x.clone(), max_steps)
    }

    fn orbit(&self, x: FieldElement, max_steps: usize) -> Result<EventuallyPeriodicWord> {
        orbit_of(&self.base, &self.alpha, &self.l, x, max_steps)
    }

    /// `d_β(1)` (positive base): greedy digit `⌊β⌋`, then `d(β - ⌊β⌋)`.
    pub fn d_one(&self) -> Result<EventuallyPeriodicWord> {
        let b = self.base.beta();
        let t1 = b.floor();
        let rest = &b - self.base.int(t1.to_i64().expect("small base"));
        let tail = orbit_of(&self.base, &b, &self.base.int(0), rest, DEFAULT_MAX_STEPS)?;
        Ok(tail.prepend(&[t1.to_u32().expect("small base")]))
    }

    fn compute_reference_words(&self) -> Result<(EventuallyPeriodicWord, EventuallyPeriodicWord)> {
        match self.mode {
            Mode::Pos => {
                let d1 = self.d_one()?;
                let high = if d1.is_finite() {
                    let mut t = d1.preperiod().to_vec();
                    *t.last_mut().expect("d(1) starts with floor(beta) >= 1") -= 1;
                    EventuallyPeriodicWord::periodic(t)
                } else {
                    d1
                };
                Ok((EventuallyPeriodicWord::zero(), high))
            }
            Mode::Neg => {
                let dl = self.orbit(self.l.clone(), DEFAULT_MAX_STEPS)?;
                let q = dl.period().len();
                let high = if dl.is_purely_periodic() && q % 2 == 1 {
                    let mut t = vec![0];
                    t.extend_from_slice(dl.period());
                    *t.last_mut().unwrap() -= 1;
                    EventuallyPeriodicWord::periodic(t)
                } else {
                    dl.prepend(&[0])
                };
                Ok((dl, high))
            }
        }
    }

    /// `(low, high)` with admissible words `w` characterized by
    /// `low ⪯ s ≺ high` for every suffix `s`.
    pub fn reference_words(&self) -> (&EventuallyPeriodicWord, &EventuallyPeriodicWord) {
        (&self.low, &self.high)
    }

    pub fn is_admissible(&self, word: &EventuallyPeriodicWord) -> bool {
        let max = self.max_digit();
        if word.preperiod().iter().chain(word.period()).any(|&d| d > max) {
            return false;
        }
        word.suffixes().all(|s| {
            self.mode.compare(&self.low, &s) != Ordering::Greater
                && self.mode.compare(&s, &self.high) == Ordering::Less
        })
    }

    /// Whether `x_k ... x_0 •` (most significant first) is the expansion of
    /// an integer of the system. Leading zeros are allowed.
    ///
    /// Such a string is an expansion iff `0 x_k ... x_0 0^ω` is admissible:
    /// the extra leading zero encodes that the scaled value lies in the open
    /// interval used to start the expansion.
    pub fn is_admissible_integer(&self, digits: &[Digit]) -> bool {
        let mut w = Vec::with_capacity(digits.len() + 1);
        w.push(0);
        w.extend_from_slice(digits);
        self.is_admissible(&EventuallyPeriodicWord::finite(w))
    }

    /// `Σ x_i α^i` for a finite string.
    pub fn value_of(&self, s: &DigitString) -> FieldElement {
        let mut acc = self.base.int(0);
        for &d in &s.digits {
            acc = &acc * &self.alpha + self.base.int(i64::from(d));
        }
        if s.point > 0 {
            acc = acc * self.alpha.pow(-(s.point as i64)).expect("alpha is non-zero");
        }
        acc
    }

    /// `Σ_{i>=1} w_i α^{-i}` for an infinite word.
    pub fn word_value(&self, w: &EventuallyPeriodicWord) -> FieldElement {
        let inv = self.alpha.inverse().expect("alpha is non-zero");
        let horner = |ds: &[Digit]| {
            // Σ d_i α^{-i}, i = 1..len
            ds.iter().rev().fold(self.base.int(0), |acc, &d| {
                (acc + self.base.int(i64::from(d))) * &inv
            })
        };
        let pre = horner(w.preperiod());
        let per = horner(w.period());
        let p = w.period().len() as i64;
        let k = w.preperiod().len() as i64;
        let geom = (self.base.int(1) - inv.pow(p).unwrap()).inverse().expect("|α| > 1");
        pre + inv.pow(k).unwrap() * per * geom
    }

    /// Smallest `k >= 0` with `x / α^k` in the starting interval (`[0, 1)` for
    /// the positive base on `x >= 0`, the open `(l, l + 1)` for the negative
    /// base).
    fn scale_exponent(&self, x: &FieldElement) -> usize {
        let inv = self.alpha.inverse().expect("alpha is non-zero");
        let mut y = x.clone();
        let mut k = 0;
        loop {
            let ok = match self.mode {
                Mode::Pos => self.in_interval(&y),
                Mode::Neg => self.in_open_interval(&y),
            };
            if ok {
                return k;
            }
            y = &y * &inv;
            k += 1;
        }
    }

    /// Expansion `x_k ... x_0 • x_{-1} x_{-2} ...` of `x`. Negative `x` in the
    /// positive base is expanded as `-(expansion of |x|)`.
    pub fn expansion_of(&self, x: &FieldElement) -> Result<Expansion> {
        let (negative, x) = if self.mode == Mode::Pos && x.is_negative() {
            (true, -x)
        } else {
            (false, x.clone())
        };
        let k = self.scale_exponent(&x);
        let y = &x * self.alpha.pow(-(k as i64)).expect("alpha is non-zero");
        let word = self
            .orbit(y, DEFAULT_MAX_STEPS)
            .map_err(|e| Error::NotRepresentable(e.to_string()))?;
        let integer = DigitString::integer(word.prefix(k));
        Ok(Expansion {
            negative,
            integer,
            fraction: word.shift(k),
        })
    }

    /// Whether `x` is an integer of the system: its fractional part vanishes.
    pub fn membership(&self, x: &FieldElement) -> bool {
        let x = if self.mode == Mode::Pos { absolute(x) } else { x.clone() };
        let k = self.scale_exponent(&x);
        let mut y = &x * self.alpha.pow(-(k as i64)).expect("alpha is non-zero");
        for _ in 0..k {
            y = self.step_unchecked(&y).1;
        }
        y.is_zero()
    }
}

fn step(base: &PisotBase, alpha: &FieldElement, l: &FieldElement, x: &FieldElement) -> (Digit, FieldElement) {
    let ax = alpha * x;
    let d = (&ax - l).floor();
    let tx = ax - base.int(d.to_i64().expect("digit fits"));
    (d.to_u32().expect("digits are non-negative"), tx)
}

fn orbit_of(
    base: &PisotBase,
    alpha: &FieldElement,
    l: &FieldElement,
    x: FieldElement,
    max_steps: usize,
) -> Result<EventuallyPeriodicWord> {
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut state = x;
    for i in 0..=max_steps {
        if let Some(&j) = seen.get(&state) {
            let period = digits.split_off(j);
            return Ok(EventuallyPeriodicWord::new(digits, period));
        }
        if i == max_steps {
            break;
        }
        let (d, next) = step(base, alpha, l, &state);
        seen.insert(state, i);
        digits.push(d);
        state = next;
    }
    Err(Error::NoPeriodFound(max_steps))
}

fn absolute(x: &FieldElement) -> FieldElement {
    if x.is_negative() {
        -x
    } else {
        x.clone()
    }
}

/// A full expansion: sign (positive base only), integer digits and the
/// eventually periodic fractional tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub negative: bool,
    pub integer: DigitString,
    pub fraction: EventuallyPeriodicWord,
}

impl Expansion {
    pub fn is_integer(&self) -> bool {
        self.fraction.is_finite() && self.fraction.preperiod().is_empty()
    }

    /// Finite digit string if the fractional tail terminates.
    pub fn to_digit_string(&self) -> Option<DigitString> {
        if !self.fraction.is_finite() {
            return None;
        }
        let mut digits = self.integer.digits.clone();
        if digits == [0] && !self.fraction.preperiod().is_empty() {
            digits.clear();
        }
        digits.extend_from_slice(self.fraction.preperiod());
        Some(DigitString {
            digits,
            point: self.fraction.preperiod().len(),
        })
    }

    pub fn value(&self, sys: &NumerationSystem) -> FieldElement {
        let int = sys.value_of(&self.integer);
        let v = int + sys.word_value(&self.fraction);
        if self.negative {
            -v
        } else {
            v
        }
    }
}

impl std::fmt::Display for Expansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", self.integer)?;
        if !self.is_integer() {
            write!(f, "{}", self.fraction)?;
        }
        Ok(())
    }
}

/// `T` applied once in the given system.
pub fn transform_step(base: &PisotBase, mode: Mode, x: &FieldElement) -> Result<(Digit, FieldElement)> {
    NumerationSystem::new(base, mode)?.transform_step(x)
}

pub fn d_expansion(base: &PisotBase, mode: Mode, x: &FieldElement, max_steps: usize) -> Result<EventuallyPeriodicWord> {
    NumerationSystem::new(base, mode)?.d_expansion(x, max_steps)
}

pub fn reference_words(base: &PisotBase, mode: Mode) -> Result<(EventuallyPeriodicWord, EventuallyPeriodicWord)> {
    let sys = NumerationSystem::new(base, mode)?;
    let (lo, hi) = sys.reference_words();
    Ok((lo.clone(), hi.clone()))
}

pub fn is_admissible(base: &PisotBase, mode: Mode, word: &EventuallyPeriodicWord) -> Result<bool> {
    Ok(NumerationSystem::new(base, mode)?.is_admissible(word))
}

pub fn expansion_of(base: &PisotBase, mode: Mode, x: &FieldElement) -> Result<Expansion> {
    NumerationSystem::new(base, mode)?.expansion_of(x)
}

pub fn value_of(base: &PisotBase, mode: Mode, s: &DigitString) -> Result<FieldElement> {
    Ok(NumerationSystem::new(base, mode)?.value_of(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{make_base, Family};

    fn tau() -> PisotBase {
        make_base(Family::Plus, 1, 1).unwrap()
    }

    fn w(pre: &[Digit], per: &[Digit]) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::new(pre.to_vec(), per.to_vec())
    }

    #[test]
    fn steps() {
        let b = tau();
        let pos = NumerationSystem::new(&b, Mode::Pos).unwrap();
        let inv = b.beta().inverse().unwrap();
        assert_eq!(pos.transform_step(&inv).unwrap(), (1, b.int(0)));
        let neg = NumerationSystem::new(&b, Mode::Neg).unwrap();
        assert_eq!(neg.transform_step(&b.int(0)).unwrap(), (0, b.int(0)));
        assert_eq!(neg.transform_step(neg.l()).unwrap(), (1, b.int(0)));
        assert_eq!(pos.transform_step(&b.int(1)), Err(Error::OutOfDomain));
    }

    #[test]
    fn reference_words_golden() {
        let b = tau();
        let pos = NumerationSystem::new(&b, Mode::Pos).unwrap();
        assert_eq!(pos.d_one().unwrap(), w(&[1, 1], &[0]));
        assert_eq!(pos.reference_words().1, &w(&[], &[1, 0]));
        let neg = NumerationSystem::new(&b, Mode::Neg).unwrap();
        assert_eq!(neg.reference_words().0, &w(&[1], &[0]));
        assert_eq!(neg.reference_words().1, &w(&[0, 1], &[0]));
    }

    #[test]
    fn reference_words_minus() {
        let b = make_base(Family::Minus, 3, 1).unwrap();
        let neg = NumerationSystem::new(&b, Mode::Neg).unwrap();
        assert_eq!(neg.reference_words().0, &w(&[], &[2, 1]));
        assert_eq!(neg.reference_words().1, &w(&[0], &[2, 1]));
    }

    #[test]
    fn admissibility() {
        let b = tau();
        let pos = NumerationSystem::new(&b, Mode::Pos).unwrap();
        assert!(!pos.is_admissible(&w(&[0, 1, 1], &[0])));
        assert!(pos.is_admissible(&w(&[1, 0, 1], &[0])));
        assert!(pos.is_admissible(&EventuallyPeriodicWord::zero()));
        let neg = NumerationSystem::new(&b, Mode::Neg).unwrap();
        assert!(neg.is_admissible(&EventuallyPeriodicWord::zero()));
        assert!(neg.is_admissible_integer(&[1, 1, 0]));
        assert!(!neg.is_admissible_integer(&[1]));
    }

    #[test]
    fn expansions_golden_negative() {
        let b = tau();
        let neg = NumerationSystem::new(&b, Mode::Neg).unwrap();
        let one = neg.expansion_of(&b.int(1)).unwrap();
        assert!(one.is_integer());
        assert_eq!(one.integer.to_string(), "110•");
        assert_eq!(one.value(&neg), b.int(1));
        let m1 = neg.expansion_of(&b.int(-1)).unwrap();
        assert!(!m1.is_integer());
        assert_eq!(m1.value(&neg), b.int(-1));
        assert!(!neg.membership(&b.int(-1)));
        let x = b.int(2) + b.beta().inverse().unwrap();
        assert!(neg.membership(&x));
        assert_eq!(neg.value_of(&DigitString::parse("10").unwrap()), -b.beta());
        assert_eq!(neg.value_of(&DigitString::parse("11").unwrap()), b.int(1) - b.beta());
    }

    #[test]
    fn expansions_positive() {
        let b = make_base(Family::Plus, 2, 1).unwrap();
        let pos = NumerationSystem::new(&b, Mode::Pos).unwrap();
        assert_eq!(pos.expansion_of(&b.int(0)).unwrap().to_string(), "0•");
        let sq = b.beta() * b.beta();
        assert_eq!(pos.value_of(&DigitString::parse("21").unwrap()), sq);
        let e = pos.expansion_of(&b.rational(1, 3)).unwrap();
        assert_eq!(e.value(&pos), b.rational(1, 3));
        let e = pos.expansion_of(&-(&sq + b.int(2))).unwrap();
        assert!(e.negative && e.is_integer());
        assert_eq!(e.integer.to_string(), "102•");
        let e = pos.expansion_of(&b.int(5)).unwrap();
        assert!(!e.is_integer());
        assert_eq!(e.value(&pos), b.int(5));
    }
}
