//! Digit words: eventually periodic infinite words and finite radix strings.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

pub type Digit = u32;

/// An infinite word `preperiod · period^ω` in canonical form: the period is
/// primitive and the preperiod is as short as possible. Words ending in
/// `0^ω` use the period `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EventuallyPeriodicWord {
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

impl EventuallyPeriodicWord {
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>) -> Self {
        let mut pre = preperiod;
        let mut per = if period.is_empty() { vec![0] } else { period };
        let p = primitive_root_len(&per);
        per.truncate(p);
        while let (Some(a), Some(b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Self {
            preperiod: pre,
            period: per,
        }
    }

    /// `digits · 0^ω`.
    pub fn finite(digits: Vec<Digit>) -> Self {
        Self::new(digits, vec![0])
    }

    pub fn zero() -> Self {
        Self::finite(Vec::new())
    }

    pub fn periodic(period: Vec<Digit>) -> Self {
        Self::new(Vec::new(), period)
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    /// Ends in `0^ω`.
    pub fn is_finite(&self) -> bool {
        self.period == [0]
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// The `i`-th symbol, 0-based.
    pub fn at(&self, i: usize) -> Digit {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<Digit> {
        (0..len).map(|i| self.at(i)).collect()
    }

    /// The suffix starting at position `k`.
    pub fn shift(&self, k: usize) -> Self {
        if k <= self.preperiod.len() {
            return Self {
                preperiod: self.preperiod[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let r = (k - self.preperiod.len()) % self.period.len();
        let mut per = self.period.clone();
        per.rotate_left(r);
        Self {
            preperiod: Vec::new(),
            period: per,
        }
    }

    /// `prefix · self`.
    pub fn prepend(&self, prefix: &[Digit]) -> Self {
        let mut pre = prefix.to_vec();
        pre.extend_from_slice(&self.preperiod);
        Self::new(pre, self.period.clone())
    }

    /// Every distinct suffix: one per preperiod position plus the rotations
    /// of the period. This finite set is all of them, since the suffix at
    /// position `i >= |pre|` depends only on `(i - |pre|) mod |per|`.
    pub fn suffixes(&self) -> impl Iterator<Item = Self> + '_ {
        (0..self.preperiod.len() + self.period.len()).map(move |k| self.shift(k))
    }

    /// Number of leading symbols after which two words with these shapes
    /// must agree forever if they agree so far.
    fn decision_bound(&self, other: &Self) -> usize {
        self.preperiod.len() + other.preperiod.len() + self.period.len().lcm(&other.period.len())
    }

    fn first_difference(&self, other: &Self) -> Option<usize> {
        (0..self.decision_bound(other)).find(|&i| self.at(i) != other.at(i))
    }
}

fn primitive_root_len(w: &[Digit]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

/// Lexicographic order.
pub fn lex_compare(a: &EventuallyPeriodicWord, b: &EventuallyPeriodicWord) -> Ordering {
    match a.first_difference(b) {
        None => Ordering::Equal,
        Some(i) => a.at(i).cmp(&b.at(i)),
    }
}

/// Alternate order: at the first difference (1-based position `k`), compare
/// `(-1)^k a_k` with `(-1)^k b_k`.
pub fn alt_compare(a: &EventuallyPeriodicWord, b: &EventuallyPeriodicWord) -> Ordering {
    match a.first_difference(b) {
        None => Ordering::Equal,
        // 0-based index i is position k = i + 1; odd k flips the comparison
        Some(i) if i % 2 == 0 => b.at(i).cmp(&a.at(i)),
        Some(i) => a.at(i).cmp(&b.at(i)),
    }
}

fn digit_char(d: Digit, out: &mut String) {
    if d < 10 {
        out.push(char::from_digit(d, 10).unwrap());
    } else {
        out.push_str(&format!("[{d}]"));
    }
}

fn digits_to_string(ds: &[Digit]) -> String {
    let mut s = String::new();
    for &d in ds {
        digit_char(d, &mut s);
    }
    s
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", digits_to_string(&self.preperiod))?;
        let per = digits_to_string(&self.period);
        if self.period.len() == 1 {
            write!(f, "{per}^ω")
        } else {
            write!(f, "({per})^ω")
        }
    }
}

/// A finite radix string `x_k ... x_0 • x_{-1} ... x_{-p}`: `digits` are most
/// significant first and the last `point` of them are fractional.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DigitString {
    pub digits: Vec<Digit>,
    pub point: usize,
}

impl DigitString {
    /// Integer string; leading zeros are dropped (the empty string is `0`).
    pub fn integer(digits: Vec<Digit>) -> Self {
        let start = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
        let mut ds = digits[start..].to_vec();
        if ds.is_empty() {
            ds.push(0);
        }
        Self { digits: ds, point: 0 }
    }

    pub fn is_integer(&self) -> bool {
        self.point == 0
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// The integer digits `x_k ... x_0`.
    pub fn integer_digits(&self) -> &[Digit] {
        &self.digits[..self.digits.len() - self.point]
    }

    /// Parses `"1021"`, `"12•"` or `"1.01"`; digits above 9 as `[12]`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut digits = Vec::new();
        let mut point = None;
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '0'..='9' => digits.push(c.to_digit(10).unwrap()),
                '[' => {
                    let mut num = String::new();
                    for c in chars.by_ref() {
                        if c == ']' {
                            break;
                        }
                        num.push(c);
                    }
                    digits.push(num.parse().ok()?);
                }
                '.' | '•' if point.is_none() => point = Some(digits.len()),
                ' ' => {}
                _ => return None,
            }
        }
        if digits.is_empty() {
            return None;
        }
        let point = digits.len() - point.unwrap_or(digits.len());
        let lead = digits.len() - point;
        let start = digits[..lead].iter().position(|&d| d != 0).unwrap_or(lead);
        let start = if start == lead && point == 0 { lead.saturating_sub(1) } else { start };
        Some(Self {
            digits: digits[start..].to_vec(),
            point,
        })
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let split = self.digits.len() - self.point;
        let int = if split == 0 {
            "0".to_string()
        } else {
            digits_to_string(&self.digits[..split])
        };
        write!(f, "{int}•{}", digits_to_string(&self.digits[split..]))
    }
}
