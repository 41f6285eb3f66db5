use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Letter = u8;
pub type Word = Vec<Letter>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    /// Antimorphism: `f(vw) = f(w) f(v)`.
    Reversing,
}

impl Orientation {
    fn then(self, other: Self) -> Self {
        if self == other {
            Orientation::Forward
        } else {
            Orientation::Reversing
        }
    }
}

/// A (anti)morphism on the alphabet `0..k`, given by the images of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    images: Vec<Word>,
    orientation: Orientation,
}

/// Parses `"0010"` into letters.
pub fn word(s: &str) -> Word {
    s.bytes()
        .map(|b| {
            assert!(b.is_ascii_digit(), "letters are decimal digits");
            b - b'0'
        })
        .collect()
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter()
        .map(|&a| {
            if a < 10 {
                char::from(b'0' + a).to_string()
            } else {
                format!("[{a}]")
            }
        })
        .collect()
}

/// `w^k`.
pub fn power(w: &[Letter], k: usize) -> Word {
    w.repeat(k)
}

/// Concatenation of the given pieces.
pub fn cat(parts: &[&[Letter]]) -> Word {
    parts.concat()
}

impl Morphism {
    pub fn new(images: Vec<Word>, orientation: Orientation) -> Self {
        Self { images, orientation }
    }

    pub fn forward(images: Vec<Word>) -> Self {
        Self::new(images, Orientation::Forward)
    }

    pub fn reversing(images: Vec<Word>) -> Self {
        Self::new(images, Orientation::Reversing)
    }

    /// Forward morphism from strings, e.g. `from_strs(&["01", "0"])`.
    pub fn from_strs(images: &[&str]) -> Self {
        Self::forward(images.iter().map(|s| word(s)).collect())
    }

    pub fn identity(k: usize) -> Self {
        Self::forward((0..k).map(|a| vec![a as Letter]).collect())
    }

    /// The letter exchange `0 <-> 1`.
    pub fn exchange() -> Self {
        Self::from_strs(&["1", "0"])
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Letter) -> Result<&[Letter]> {
        self.images
            .get(a as usize)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownLetter(a))
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_non_erasing(&self) -> bool {
        self.images.iter().all(|w| !w.is_empty())
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        let mut out = Vec::new();
        self.apply_into(w, &mut out)?;
        Ok(out)
    }

    pub(crate) fn apply_into(&self, w: &[Letter], out: &mut Word) -> Result<()> {
        match self.orientation {
            Orientation::Forward => {
                for &a in w {
                    out.extend_from_slice(self.image(a)?);
                }
            }
            Orientation::Reversing => {
                for &a in w.iter().rev() {
                    out.extend_from_slice(self.image(a)?);
                }
            }
        }
        Ok(())
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        let images = g
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new(images, self.orientation.then(g.orientation)))
    }

    /// `fs[0] ∘ fs[1] ∘ ... ∘ fs[k-1]`.
    pub fn compose_all(fs: &[Morphism]) -> Result<Morphism> {
        let mut it = fs.iter().rev();
        let mut acc = it.next().expect("non-empty composition").clone();
        for f in it {
            acc = f.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Morphism {
        let mut acc = Morphism::identity(self.alphabet_size());
        for _ in 0..k {
            acc = self.compose(&acc).expect("closed alphabet");
        }
        acc
    }

    /// `M[i][j] = |f(j)|_i`.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let k = self.alphabet_size();
        let mut m = vec![vec![0; k]; k];
        for (j, w) in self.images.iter().enumerate() {
            for &a in w {
                if (a as usize) < k {
                    m[a as usize][j] += 1;
                }
            }
        }
        m
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientation == Orientation::Reversing {
            write!(f, "anti ")?;
        }
        for (a, w) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{}", word_to_string(w))?;
        }
        Ok(())
    }
}

/// Characteristic polynomial `x^2 - t x + d` of a 2x2 incidence matrix and
/// the exact decision whether its smaller eigenvalue has modulus below 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenData {
    pub trace: i64,
    pub det: i64,
    pub discriminant: i64,
    pub second_below_one: bool,
}

/// Exact `|λ₂| < 1` test for binary morphisms; `None` for larger alphabets.
pub fn second_eigenvalue_bound(f: &Morphism) -> Option<EigenData> {
    let m = f.incidence_matrix();
    if m.len() != 2 {
        return None;
    }
    let a = |i: usize, j: usize| m[i][j] as i64;
    let t = a(0, 0) + a(1, 1);
    let d = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    let disc = t * t - 4 * d;
    let below = if disc < 0 {
        // complex pair with |λ|^2 = d
        d < 1
    } else {
        // λ = (t ± √disc)/2; the one of smaller modulus is (|t| - √disc)/2,
        // so |λ₂| < 1 iff |t| - 2 < √disc < |t| + 2.
        let at = t.abs();
        disc < (at + 2) * (at + 2) && (at < 2 || disc > (at - 2) * (at - 2))
    };
    Some(EigenData {
        trace: t,
        det: d,
        discriminant: disc,
        second_below_one: below,
    })
}

/// Smallest `w` with `σ(a) w = w ψ(a)` for every letter `a`, searched up to
/// `max_w` letters (default: longest image times alphabet size).
pub fn right_conjugate_witness(sigma: &Morphism, psi: &Morphism, max_w: Option<usize>) -> Option<Word> {
    if sigma.alphabet_size() != psi.alphabet_size()
        || sigma.incidence_matrix() != psi.incidence_matrix()
        || sigma.orientation != Orientation::Forward
        || psi.orientation != Orientation::Forward
    {
        return None;
    }
    let max_w = max_w.unwrap_or(sigma.max_image_len() * sigma.alphabet_size());
    let s0 = sigma.images.first()?;
    if s0.is_empty() {
        return None;
    }
    // x w = w y with |x| = |y| forces w to be a prefix of x^ω.
    (0..=max_w).find_map(|len| {
        let w: Word = s0.iter().cycle().take(len).copied().collect();
        let ok = sigma.images.iter().zip(&psi.images).all(|(x, y)| {
            let mut lhs = x.clone();
            lhs.extend_from_slice(&w);
            let mut rhs = w.clone();
            rhs.extend_from_slice(y);
            lhs == rhs
        });
        ok.then_some(w)
    })
}

/// `π ∘ σ = ψ ∘ π` letterwise.
pub fn verify_intertwining(pi: &Morphism, sigma: &Morphism, psi: &Morphism) -> bool {
    match (pi.compose(sigma), psi.compose(pi)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}
