//! Fixed points of substitutions and pointed fixed points of antimorphisms.

use serde::Serialize;

use super::morphism::{word_to_string, Letter, Morphism, Orientation, Word};
use crate::error::{Error, Result};

/// Prefix of length `length` of `lim f^j(seed)`.
pub fn fixed_point(f: &Morphism, seed: Letter, length: usize) -> Result<Word> {
    if f.orientation() != Orientation::Forward {
        return Err(Error::NotProlongable("fixed_point needs a forward morphism".into()));
    }
    let img = f.image(seed)?;
    if img.first() != Some(&seed) {
        return Err(Error::NotProlongable(format!(
            "image of {seed} does not start with {seed}"
        )));
    }
    if length <= 1 {
        return Ok(vec![seed; length]);
    }
    if img.len() < 2 {
        return Err(Error::NotProlongable(format!("image of {seed} has length 1")));
    }
    // u = f(u): the image of u_i lands right after the images of u_0..u_{i-1}.
    let mut u: Word = img.to_vec();
    let mut i = 1;
    while u.len() < length {
        let a = u[i];
        u.extend_from_slice(f.image(a)?);
        i += 1;
    }
    u.truncate(length);
    Ok(u)
}

/// A finite window `u_{-K} ... u_{-1} | u_0 ... u_{L-1}` of a pointed
/// bidirectional word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedWord {
    /// `u_{-K} ... u_{-1}`.
    pub negative: Word,
    /// `u_0 ... u_{L-1}`.
    pub positive: Word,
}

impl PointedWord {
    pub fn get(&self, i: i64) -> Option<Letter> {
        if i >= 0 {
            self.positive.get(i as usize).copied()
        } else {
            let k = self.negative.len() as i64 + i;
            (k >= 0).then(|| self.negative[k as usize])
        }
    }

    /// The bidirectional word whose left half mirrors the right:
    /// `u_{-j} = u_{j-1}`.
    pub fn mirrored(positive: Word) -> Self {
        let mut negative = positive.clone();
        negative.reverse();
        Self { negative, positive }
    }

    /// The whole window as one finite word.
    pub fn window(&self) -> Word {
        let mut w = self.negative.clone();
        w.extend_from_slice(&self.positive);
        w
    }
}

impl std::fmt::Display for PointedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}|{}", word_to_string(&self.negative), word_to_string(&self.positive))
    }
}

/// Pointed fixed point `lim f^n(seed_neg) | f^n(seed_pos)` of an
/// antimorphism, with at least `length` letters on each side.
///
/// Each step maps `L | R` to `f(R) | f(L)`; the new right side must extend
/// the old one and the new left side must end with the old one.
pub fn pointed_fixed_point(f: &Morphism, seed_pos: Letter, seed_neg: Letter, length: usize) -> Result<PointedWord> {
    if f.orientation() != Orientation::Reversing {
        return Err(Error::NotProlongable(
            "pointed_fixed_point needs an antimorphism".into(),
        ));
    }
    f.image(seed_pos)?;
    f.image(seed_neg)?;
    let mut left: Word = vec![seed_neg];
    let mut right: Word = vec![seed_pos];
    let mut stalled = 0;
    while left.len() < length || right.len() < length {
        let new_left = f.apply(&right)?;
        let new_right = f.apply(&left)?;
        if !new_right.starts_with(&right) || !new_left.ends_with(&left) {
            return Err(Error::NotProlongable(format!(
                "step from {}|{} does not extend it",
                word_to_string(&left),
                word_to_string(&right)
            )));
        }
        if new_left.len() == left.len() && new_right.len() == right.len() {
            stalled += 1;
            if stalled > 2 {
                return Err(Error::NotProlongable("iteration does not grow".into()));
            }
        } else {
            stalled = 0;
        }
        left = new_left;
        right = new_right;
    }
    let cut = left.len() - length;
    left.drain(..cut);
    right.truncate(length);
    Ok(PointedWord {
        negative: left,
        positive: right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::morphism::word;

    #[test]
    fn fibonacci() {
        let f = Morphism::from_strs(&["01", "0"]);
        assert_eq!(fixed_point(&f, 0, 8).unwrap(), word("01001010"));
        assert!(fixed_point(&f, 1, 8).is_err());
        let id = Morphism::identity(2);
        assert_eq!(fixed_point(&id, 1, 1).unwrap(), vec![1]);
        assert!(fixed_point(&id, 1, 2).is_err());
    }

    #[test]
    fn golden_antimorphism() {
        let g = Morphism::reversing(vec![word("01"), word("0")]);
        let p = pointed_fixed_point(&g, 0, 1, 8).unwrap();
        assert_eq!(p.positive, word("00100101"));
        assert_eq!(p.get(0), Some(0));
        assert_eq!(p.get(-1), p.negative.last().copied());
        let fib = fixed_point(&Morphism::from_strs(&["01", "0"]), 0, 7).unwrap();
        assert_eq!(p.positive[1..], fib[..]);
    }

    #[test]
    fn mirror_indices() {
        let p = PointedWord::mirrored(word("0010"));
        assert_eq!(p.get(-1), Some(0));
        assert_eq!(p.get(-3), Some(1));
        assert_eq!(p.get(-5), None);
        assert_eq!(p.to_string(), "0100|0010");
    }
}
