//! The sets `Z_β` and `Z_{-β}` as increasing sequences `(t_j)_{j ∈ Z}` with
//! `t_0 = 0`, generated from their gap words, plus an independent
//! enumeration of admissible digit strings.

mod oracle;
mod parry;

use std::sync::RwLock;

use serde::Serialize;

pub use oracle::{brute_force_points, default_max_len, OraclePoint};
pub use parry::parry_substitution;

use crate::algebraic::{Family, FieldElement, PisotBase};
use crate::error::{Error, Result};
use crate::numeration::{Mode, NumerationSystem};
use crate::words::catalog::{antimorphism, canonical_morphism};
use crate::words::{fixed_point, pointed_fixed_point, Letter, Morphism, PointedWord, Word};

/// Gap lengths `Δ_a` indexed by the letter `a` coding them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapAlphabet {
    pub deltas: Vec<FieldElement>,
}

impl GapAlphabet {
    pub fn delta0(&self) -> &FieldElement {
        &self.deltas[0]
    }

    pub fn delta1(&self) -> &FieldElement {
        &self.deltas[1]
    }

    pub fn get(&self, a: Letter) -> &FieldElement {
        &self.deltas[a as usize]
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// Closed forms of the gaps. For general bases (positive mode only) the gaps
/// are `T^i(1)` read off `d_β(1)`.
pub fn gap_values(base: &PisotBase, mode: Mode) -> Result<GapAlphabet> {
    let one = base.int(1);
    let n_over_beta = base.int(i64::from(base.n())) / base.beta();
    let delta1 = match (base.family(), mode) {
        (Family::Plus, Mode::Pos) => n_over_beta,
        (Family::Minus, Mode::Pos) => &one - n_over_beta,
        (Family::Plus, Mode::Neg) if base.m() == base.n() => n_over_beta,
        (Family::Plus, Mode::Neg) => &one + n_over_beta,
        (Family::Minus, Mode::Neg) => base.int(2) - n_over_beta,
        (Family::General, Mode::Pos) => return Ok(parry_substitution(base)?.1),
        (Family::General, Mode::Neg) => {
            return Err(Error::WrongFamily(
                "negative-base gap words are implemented for quadratic bases".into(),
            ))
        }
    };
    Ok(GapAlphabet {
        deltas: vec![one, delta1],
    })
}

/// How the gap word is produced.
#[derive(Clone, Debug)]
enum Generator {
    /// One-sided fixed point, mirrored to the left of the origin.
    Mirrored(Morphism),
    /// Pointed fixed point of an antimorphism.
    Pointed(Morphism),
}

impl Generator {
    fn generate(&self, length: usize) -> Result<PointedWord> {
        match self {
            Generator::Mirrored(f) => Ok(PointedWord::mirrored(fixed_point(f, 0, length)?)),
            Generator::Pointed(f) => pointed_fixed_point(f, 0, 1, length),
        }
    }
}

#[derive(Debug, Default)]
struct Cache {
    word: Option<PointedWord>,
    /// `t_0, t_1, ..., t_L`.
    pos: Vec<FieldElement>,
    /// `t_0, t_{-1}, ..., t_{-K}`.
    neg: Vec<FieldElement>,
    /// Per letter, counts in `u_0 .. u_{j-1}` (index `j`).
    pos_counts: Vec<Vec<u32>>,
    /// Per letter, counts in `u_{-j} .. u_{-1}` (index `j`).
    neg_counts: Vec<Vec<u32>>,
}

/// The points `t_j` of `Z_β` or `Z_{-β}`, generated on demand. Reads can be
/// concurrent; growth takes a write lock and only ever extends the cache.
#[derive(Debug)]
pub struct PointSequence {
    base: PisotBase,
    mode: Mode,
    gaps: GapAlphabet,
    generator: Generator,
    cache: RwLock<Cache>,
}

impl Clone for PointSequence {
    fn clone(&self) -> Self {
        let seq = Self::with_parts(self.base.clone(), self.mode, self.gaps.clone(), self.generator.clone());
        let n = self.len();
        if n > 0 {
            seq.ensure(n);
        }
        seq
    }
}

impl PointSequence {
    pub fn new(base: &PisotBase, mode: Mode) -> Result<Self> {
        let gaps = gap_values(base, mode)?;
        let generator = match (base.family(), mode) {
            (Family::General, _) => Generator::Mirrored(parry_substitution(base)?.0),
            (_, Mode::Pos) => Generator::Mirrored(canonical_morphism(base)?),
            (_, Mode::Neg) => Generator::Pointed(antimorphism(base)?),
        };
        let seq = Self::with_parts(base.clone(), mode, gaps, generator);
        seq.ensure(64);
        Ok(seq)
    }

    fn with_parts(base: PisotBase, mode: Mode, gaps: GapAlphabet, generator: Generator) -> Self {
        Self {
            base,
            mode,
            gaps,
            generator,
            cache: RwLock::new(Cache::default()),
        }
    }

    pub fn base(&self) -> &PisotBase {
        &self.base
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn gaps(&self) -> &GapAlphabet {
        &self.gaps
    }

    /// Number of letters currently generated on each side.
    pub fn len(&self) -> usize {
        let c = self.cache.read().unwrap();
        c.word.as_ref().map_or(0, |w| w.positive.len().min(w.negative.len()))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Makes sure `t_j` is cached for `|j| <= n`.
    pub fn ensure(&self, n: usize) {
        if self.len() >= n && n > 0 {
            return;
        }
        let mut c = self.cache.write().unwrap();
        let have = c.word.as_ref().map_or(0, |w| w.positive.len().min(w.negative.len()));
        if have >= n && n > 0 {
            return;
        }
        let target = n.max(2 * have).max(16);
        let word = self.generator.generate(target).expect("canonical morphisms are prolongable");
        let k = self.gaps.len();
        let extend = |points: &mut Vec<FieldElement>, counts: &mut Vec<Vec<u32>>, letters: &mut dyn Iterator<Item = Letter>, sign: bool| {
            if points.is_empty() {
                points.push(self.base.int(0));
                *counts = vec![vec![0]; k];
            }
            let start = points.len() - 1;
            for (i, a) in letters.enumerate() {
                if i < start {
                    continue;
                }
                let last = points.last().unwrap();
                let d = self.gaps.get(a);
                let next = if sign { last + d } else { last - d };
                points.push(next);
                for (b, cb) in counts.iter_mut().enumerate() {
                    let prev = *cb.last().unwrap();
                    cb.push(prev + u32::from(b == a as usize));
                }
            }
        };
        let Cache {
            pos,
            neg,
            pos_counts,
            neg_counts,
            ..
        } = &mut *c;
        extend(pos, pos_counts, &mut word.positive.iter().copied(), true);
        extend(neg, neg_counts, &mut word.negative.iter().rev().copied(), false);
        c.word = Some(word);
    }

    /// `t_j`.
    pub fn point(&self, j: i64) -> FieldElement {
        self.ensure(j.unsigned_abs() as usize + 1);
        let c = self.cache.read().unwrap();
        if j >= 0 {
            c.pos[j as usize].clone()
        } else {
            c.neg[(-j) as usize].clone()
        }
    }

    /// The gap letter `u_j` (`t_{j+1} - t_j = Δ_{u_j}`).
    pub fn letter(&self, j: i64) -> Letter {
        self.ensure(j.unsigned_abs() as usize + 1);
        let c = self.cache.read().unwrap();
        c.word.as_ref().unwrap().get(j).expect("generated")
    }

    /// `u_0 ... u_{n-1}`.
    pub fn positive_word(&self, n: usize) -> Word {
        self.ensure(n);
        let c = self.cache.read().unwrap();
        c.word.as_ref().unwrap().positive[..n].to_vec()
    }

    /// `u_{-n} ... u_{n-1}`.
    pub fn window_word(&self, n: usize) -> PointedWord {
        self.ensure(n);
        let c = self.cache.read().unwrap();
        let w = c.word.as_ref().unwrap();
        PointedWord {
            negative: w.negative[w.negative.len() - n..].to_vec(),
            positive: w.positive[..n].to_vec(),
        }
    }

    /// Letter counts of the factor `u_a ... u_{b-1}` (`a <= b`, any signs).
    pub fn counts(&self, a: i64, b: i64) -> Vec<i64> {
        assert!(a <= b);
        self.ensure(a.unsigned_abs().max(b.unsigned_abs()) as usize + 1);
        let c = self.cache.read().unwrap();
        // signed prefix count P(j) = #letters in [0, j) for j >= 0, -#[j, 0) otherwise
        let p = |j: i64, letter: usize| -> i64 {
            if j >= 0 {
                i64::from(c.pos_counts[letter][j as usize])
            } else {
                -i64::from(c.neg_counts[letter][(-j) as usize])
            }
        };
        (0..self.gaps.len()).map(|l| p(b, l) - p(a, l)).collect()
    }

    /// `t_j` recomputed as `Σ_a |w|_a Δ_a` over the factor between 0 and `j`.
    pub fn point_from_counts(&self, j: i64) -> FieldElement {
        let (a, b, sign) = if j >= 0 { (0, j, true) } else { (j, 0, false) };
        let counts = self.counts(a, b);
        let mut acc = self.base.int(0);
        for (l, &cnt) in counts.iter().enumerate() {
            acc = acc + self.gaps.deltas[l].scale(&num_rational::BigRational::from_integer(cnt.into()));
        }
        if sign {
            acc
        } else {
            -acc
        }
    }

    /// Index `i` with `t_i <= x < t_{i+1}`, by galloping from `hint`.
    pub fn bracket(&self, x: &FieldElement, hint: i64) -> i64 {
        let mut lo = hint;
        let mut step = 1i64;
        // move lo down until t_lo <= x
        while &self.point(lo) > x {
            lo -= step;
            step *= 2;
        }
        let mut hi = lo + 1;
        step = 1;
        while &self.point(hi) <= x {
            lo = hi;
            hi += step;
            step *= 2;
        }
        // invariant: t_lo <= x < t_hi
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if &self.point(mid) <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Index of `x` if it is a point of the sequence.
    pub fn index_of(&self, x: &FieldElement, hint: i64) -> Option<i64> {
        let i = self.bracket(x, hint);
        (&self.point(i) == x).then_some(i)
    }

    /// Index of the point closest to `x`; ties go to the lower index.
    pub fn closest_index(&self, x: &FieldElement, hint: i64) -> i64 {
        let i = self.bracket(x, hint);
        let below = x - self.point(i);
        let above = self.point(i + 1) - x;
        if above < below {
            i + 1
        } else {
            i
        }
    }

    /// All points in `[lo, hi]`, increasing.
    pub fn points_in(&self, lo: &FieldElement, hi: &FieldElement) -> Vec<FieldElement> {
        if lo > hi {
            return Vec::new();
        }
        let start = self.bracket(lo, 0);
        let start = if &self.point(start) < lo { start + 1 } else { start };
        let mut out = Vec::new();
        let mut j = start;
        loop {
            let t = self.point(j);
            if &t > hi {
                break;
            }
            out.push(t);
            j += 1;
        }
        out
    }

    pub fn system(&self) -> Result<NumerationSystem> {
        NumerationSystem::new(&self.base, self.mode)
    }
}

/// Whether `x` belongs to `Z_β` (positive mode) or `Z_{-β}`.
pub fn membership(base: &PisotBase, mode: Mode, x: &FieldElement) -> Result<bool> {
    Ok(NumerationSystem::new(base, mode)?.membership(x))
}
