//! Integers of a numeration system by exhaustive enumeration of admissible
//! digit strings. Independent of the gap words: only the admissibility
//! conditions and exact evaluation are used.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebraic::{FieldElement, PisotBase};
use crate::error::{Error, Result};
use crate::numeration::{Digit, DigitString, Mode, NumerationSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OraclePoint {
    pub value: FieldElement,
    pub digits: DigitString,
    /// Positive base only: the point is `-value_of(digits)`.
    pub negated: bool,
}

/// Smallest `k` with `β^k > W (β + 1)`, `W = max(|lo|, |hi|)`.
///
/// An integer whose expansion has `k + 1` digits satisfies
/// `|x| >= β^k / (β + 1)`: its scaled value `x / α^k` has left the starting
/// interval, and both `[0, 1)` and `(l, l + 1)` contain
/// `(-1/(β+1), 1/(β+1))`. So all integers of modulus at most `W` have at most
/// `k` digits.
pub fn default_max_len(base: &PisotBase, lo: &FieldElement, hi: &FieldElement) -> usize {
    let w = std::cmp::max(abs(lo), abs(hi));
    let beta = base.beta();
    let bound = w * (&beta + base.int(1));
    let mut p = base.int(1);
    let mut k = 0;
    while p <= bound {
        p = &p * &beta;
        k += 1;
    }
    k
}

fn abs(x: &FieldElement) -> FieldElement {
    if x.is_negative() {
        -x
    } else {
        x.clone()
    }
}

/// All integers of the system in `[lo, hi]`, sorted, with their expansions.
pub fn brute_force_points(
    base: &PisotBase,
    mode: Mode,
    lo: &FieldElement,
    hi: &FieldElement,
    max_len: Option<usize>,
) -> Result<Vec<OraclePoint>> {
    let required = default_max_len(base, lo, hi);
    let len = match max_len {
        Some(given) if given < required => return Err(Error::WindowTooWide { required, given }),
        Some(given) => given,
        None => required,
    };
    let sys = NumerationSystem::new(base, mode)?;
    let max = sys.max_digit();
    let mut seen: HashMap<FieldElement, DigitString> = HashMap::new();
    let mut out = Vec::new();
    let mut digits: Vec<Digit> = vec![0; len];
    loop {
        if sys.is_admissible_integer(&digits) {
            let s = DigitString::integer(digits.clone());
            let v = sys.value_of(&s);
            if let Some(prev) = seen.insert(v.clone(), s.clone()) {
                return Err(Error::Integrity(format!("{prev} and {s} have the same value {v}")));
            }
            let in_window = |x: &FieldElement| x >= lo && x <= hi;
            if mode == Mode::Pos && v.is_positive() {
                let neg = -&v;
                if in_window(&neg) {
                    out.push(OraclePoint {
                        value: neg,
                        digits: s.clone(),
                        negated: true,
                    });
                }
            }
            if in_window(&v) {
                out.push(OraclePoint {
                    value: v,
                    digits: s,
                    negated: false,
                });
            }
        }
        // odometer over {0..max}^len
        let mut i = len;
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.value.cmp(&b.value));
                return Ok(out);
            }
            i -= 1;
            if digits[i] < max {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}
