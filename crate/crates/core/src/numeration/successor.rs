//! Next (−β)-integer for bases `x^2 - m x + n`, by rewriting the expansion.

use super::digits::{Digit, DigitString};
use super::{Mode, NumerationSystem};
use crate::algebraic::{Family, PisotBase};
use crate::error::{Error, Result};

/// Expansion of the smallest (−β)-integer greater than the one written `s`.
///
/// A last digit `A <= m - 3` is incremented (the gap is 1). Otherwise the
/// expansion reads `... X Y [(m-1) n]^k (m-2) •` with `XY != (m-1) n`, and
///
/// * if `X <= m-2, Y >= 1` or `X = m-1, Y >= n+1` it becomes
///   `... X (Y-1) 0 [(m-1) n]^k •`;
/// * if `X <= m-2, Y = 0` it becomes `... (X+1) (m-1) [n (m-1)]^k n •`.
///
/// Missing leading digits count as zeros. The gap is `2 - n/β` in both cases.
pub fn successor_expansion(base: &PisotBase, s: &DigitString) -> Result<DigitString> {
    if base.family() != Family::Minus {
        return Err(Error::WrongFamily(
            "successor rewriting is defined for x^2 - mx + n".into(),
        ));
    }
    let sys = NumerationSystem::new(base, Mode::Neg)?;
    if !s.is_integer() || !sys.is_admissible_integer(&s.digits) {
        return Err(Error::NotAdmissible);
    }
    let m = base.m();
    let n = base.n();
    let mut d: Vec<Digit> = s.digits.clone();
    let last = *d.last().expect("non-empty");
    if last + 3 <= m {
        *d.last_mut().unwrap() += 1;
        return Ok(DigitString::integer(d));
    }
    debug_assert_eq!(last, m - 2, "a last digit m-1 is not admissible");
    d.pop();
    let mut k = 0;
    while d.len() >= 2 && d[d.len() - 2] == m - 1 && d[d.len() - 1] == n {
        d.truncate(d.len() - 2);
        k += 1;
    }
    // Pad so that X and Y exist.
    while d.len() < 2 {
        d.insert(0, 0);
    }
    let (x, y) = (d[d.len() - 2], d[d.len() - 1]);
    let len = d.len();
    if (x + 2 <= m && y >= 1) || (x == m - 1 && y > n) {
        d[len - 1] = y - 1;
        d.push(0);
        for _ in 0..k {
            d.extend_from_slice(&[m - 1, n]);
        }
    } else if x + 2 <= m && y == 0 {
        d[len - 2] = x + 1;
        d[len - 1] = m - 1;
        for _ in 0..k {
            d.extend_from_slice(&[n, m - 1]);
        }
        d.push(n);
    } else {
        return Err(Error::NotAdmissible);
    }
    Ok(DigitString::integer(d))
}
