//! The morphisms attached to a quadratic base: the canonical substitution of
//! `u_β`, the antimorphism fixing `u_{-β}`, the splitting maps `π`, `π̃`, the
//! conjugates used to compare languages, and Sturmian decompositions.

use serde::Serialize;

use super::morphism::{cat, power, Morphism, Word};
use crate::algebraic::{Family, PisotBase};
use crate::error::{Error, Result};

fn zeros(k: u32) -> Word {
    vec![0; k as usize]
}

fn z1(k: u32) -> Word {
    let mut w = zeros(k);
    w.push(1);
    w
}

/// A morphism `ψ` together with the maps it is related to: `ρ ∘ φ̄² = ψ ∘ ρ`
/// for the splitting map `ρ`, and `left(a) w = w right(a)` for the stated
/// conjugation factor.
#[derive(Clone, Debug, Serialize)]
pub struct Conjugate {
    pub psi: Morphism,
    pub splitter: Morphism,
    pub left: Morphism,
    pub right: Morphism,
    pub factor: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticMorphisms {
    /// Canonical substitution fixing `u_β`.
    pub phi: Morphism,
    /// Antimorphism fixing `u_{-β}`.
    pub anti: Morphism,
    /// `0 -> 0, 1 -> 10`.
    pub pi: Morphism,
    /// `0 -> 0, 1 -> 01`.
    pub pi_tilde: Morphism,
    /// For `x^2 - mx - n` with `m > n` and for `x^2 - mx + n`.
    pub conjugate: Option<Conjugate>,
    /// For unit bases: factors over `E`, `φ`, `φ̃` whose composition is `φ̄²`.
    pub decomposition: Option<Vec<Morphism>>,
}

/// `φ: 0 -> 01, 1 -> 0`.
pub fn sturm_phi() -> Morphism {
    Morphism::from_strs(&["01", "0"])
}

/// `φ̃: 0 -> 10, 1 -> 0`.
pub fn sturm_phi_tilde() -> Morphism {
    Morphism::from_strs(&["10", "0"])
}

pub fn canonical_morphism(base: &PisotBase) -> Result<Morphism> {
    let (m, n) = (base.m(), base.n());
    match base.family() {
        Family::Plus => Ok(Morphism::forward(vec![z1(m), zeros(n)])),
        Family::Minus => Ok(Morphism::forward(vec![z1(m - 1), z1(m - n - 1)])),
        Family::General => Err(Error::WrongFamily("quadratic base required".into())),
    }
}

pub fn antimorphism(base: &PisotBase) -> Result<Morphism> {
    let (m, n) = (base.m(), base.n());
    match base.family() {
        Family::Plus if m > n => Ok(Morphism::reversing(vec![z1(m - 1), z1(m + n - 1)])),
        Family::Plus => Ok(Morphism::reversing(vec![z1(m), zeros(m)])),
        Family::Minus => Ok(Morphism::reversing(vec![
            z1(m - 2),
            cat(&[&z1(m - 2), &z1(m - n - 2)]),
        ])),
        Family::General => Err(Error::WrongFamily("quadratic base required".into())),
    }
}

pub fn quadratic_morphisms(base: &PisotBase) -> Result<QuadraticMorphisms> {
    let phi = canonical_morphism(base)?;
    let anti = antimorphism(base)?;
    let pi = Morphism::from_strs(&["0", "10"]);
    let pi_tilde = Morphism::from_strs(&["0", "01"]);
    let (m, n) = (base.m(), base.n());
    let phi2 = phi.pow(2);
    let conjugate = match base.family() {
        Family::Plus if m > n => {
            let psi = Morphism::forward(vec![
                cat(&[&zeros(m + n), &[1], &power(&z1(m), (m - 1) as usize)]),
                power(&z1(m), n as usize),
            ]);
            Some(Conjugate {
                psi: psi.clone(),
                splitter: pi_tilde.clone(),
                left: phi2.clone(),
                right: psi,
                factor: power(&z1(m), m as usize),
            })
        }
        Family::Minus => {
            let head = cat(&[&z1(m - 2), &z1(m - n - 1)]);
            let psi = Morphism::forward(vec![
                cat(&[&head, &power(&z1(m - 1), (m - 2) as usize), &[0]]),
                cat(&[&head, &power(&z1(m - 1), (m - n - 2) as usize), &[0]]),
            ]);
            Some(Conjugate {
                psi: psi.clone(),
                splitter: pi.clone(),
                left: psi,
                right: phi2.clone(),
                factor: head,
            })
        }
        _ => None,
    };
    let decomposition = if base.is_unit() { sturmian_decomposition(base) } else { None };
    Ok(QuadraticMorphisms {
        phi,
        anti,
        pi,
        pi_tilde,
        conjugate,
        decomposition,
    })
}

/// Factors `[f1, ..., fk]` (composition `f1 ∘ ... ∘ fk`) of `φ̄²` over the
/// Sturmian generators, for `x^2 - x - 1`, `x^2 - mx - 1` and `x^2 - mx + 1`.
pub fn sturmian_decomposition(base: &PisotBase) -> Option<Vec<Morphism>> {
    let (m, n) = (base.m(), base.n());
    if n != 1 {
        return None;
    }
    let e = Morphism::exchange();
    let f = sturm_phi();
    let ft = sturm_phi_tilde();
    let mut out = Vec::new();
    match base.family() {
        Family::Plus if m == 1 => {
            out.push(f);
            out.push(ft);
        }
        Family::Plus => {
            for _ in 0..m - 1 {
                out.extend([f.clone(), e.clone()]);
            }
            for _ in 0..m {
                out.extend([e.clone(), ft.clone()]);
            }
            out.extend([f, e]);
        }
        Family::Minus => {
            for _ in 0..m - 3 {
                out.extend([f.clone(), e.clone()]);
            }
            out.extend([e.clone(), ft.clone()]);
            for _ in 0..m - 2 {
                out.extend([ft.clone(), e.clone()]);
            }
            out.extend([e.clone(), ft, f, e]);
        }
        Family::General => return None,
    }
    Some(out)
}

/// Factors of `u_{-β}` that witness non-balance for non-unit bases.
#[derive(Clone, Debug, Serialize)]
pub struct BalanceWitness {
    /// The two factors named in the argument (lengths may differ).
    pub named: (Word, Word),
    /// Equal-length factors of those with letter counts differing by 2.
    pub pair: (Word, Word),
}

pub fn balance_witness(base: &PisotBase) -> Option<BalanceWitness> {
    let (m, n) = (base.m(), base.n());
    let one_zeros_one = |k: u32| cat(&[&[1], &zeros(k), &[1]]);
    match base.family() {
        Family::Plus if m == n && m >= 2 => Some(BalanceWitness {
            named: (one_zeros_one(m), zeros(2 * m)),
            pair: (one_zeros_one(m), zeros(m + 2)),
        }),
        Family::Plus if n >= 2 && n < m => Some(BalanceWitness {
            named: (one_zeros_one(m - 1), zeros(m + n - 1)),
            pair: (one_zeros_one(m - 1), zeros(m + 1)),
        }),
        Family::Minus if n >= 2 => Some(BalanceWitness {
            named: (one_zeros_one(m - n - 2), zeros(m - 2)),
            pair: (one_zeros_one(m - n - 2), zeros(m - n)),
        }),
        _ => None,
    }
}
