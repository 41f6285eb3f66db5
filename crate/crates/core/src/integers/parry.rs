//! The canonical substitution of `u_β` for a Parry number, read off the
//! Rényi expansion `d_β(1) = t_1 t_2 ...`.

use super::GapAlphabet;
use crate::algebraic::PisotBase;
use crate::error::{Error, Result};
use crate::numeration::{Mode, NumerationSystem};
use crate::words::{Letter, Morphism, Word};

/// The substitution and its gaps `Δ_i = T^i(1)`.
///
/// For finite `d_β(1) = t_1 ... t_q`: `i -> 0^{t_{i+1}} (i+1)` for `i < q-1`
/// and `q-1 -> 0^{t_q}`. For `t_1 ... t_p (t_{p+1} ... t_{p+s})^ω` the last
/// letter `p+s-1` maps to `0^{t_{p+s}} p` instead.
pub fn parry_substitution(base: &PisotBase) -> Result<(Morphism, GapAlphabet)> {
    let sys = NumerationSystem::new(base, Mode::Pos)?;
    let d1 = sys.d_one()?;
    let (t, back): (Vec<u32>, Option<usize>) = if d1.is_finite() {
        (d1.preperiod().to_vec(), None)
    } else {
        let mut t = d1.preperiod().to_vec();
        t.extend_from_slice(d1.period());
        (t, Some(d1.preperiod().len()))
    };
    let q = t.len();
    if q > usize::from(Letter::MAX) {
        return Err(Error::NotProlongable(format!("d(1) has {q} letters")));
    }
    let images: Vec<Word> = (0..q)
        .map(|i| {
            let mut w = vec![0; t[i] as usize];
            if i + 1 < q {
                w.push((i + 1) as Letter);
            } else if let Some(p) = back {
                w.push(p as Letter);
            }
            w
        })
        .collect();
    let deltas = (0..q).map(|i| sys.word_value(&d1.shift(i))).collect();
    Ok((Morphism::forward(images), GapAlphabet { deltas }))
}
