//! Real algebraic numbers given by a monic integer polynomial and an
//! isolating interval.
//!
//! Besides the user-facing rational interval, every value carries a dyadic
//! enclosure `(lo / 2^bits, hi / 2^bits)` that is refined once at
//! construction. Sign decisions evaluate polynomials over that enclosure with
//! integer interval arithmetic and bisect further only when the enclosure is
//! too coarse to exclude zero. Refinement always produces new local data; a
//! constructed value is never mutated.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, IntPoly};
use crate::error::{Error, Result};

/// Bits of the dyadic enclosure computed at construction.
const INITIAL_BITS: u32 = 96;

#[derive(Clone, Debug)]
struct Dyadic {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

/// Closed form data for a quadratic `x^2 + p x + q`, `disc = p^2 - 4q`: the root equals
/// `(-p + sign * sqrt(disc)) / 2`.
#[derive(Clone, Debug)]
struct QuadraticData {
    p: BigInt,
    disc: BigInt,
    sign: i8,
}

#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    minpoly: IntPoly,
    lo: BigRational,
    hi: BigRational,
    enclosure: Dyadic,
    quadratic: Option<QuadraticData>,
}

fn poly_sign_at(p: &[BigInt], x: &BigRational) -> Ordering {
    poly::eval_rational(p, x).cmp(&BigRational::zero())
}

impl AlgebraicReal {
    /// Builds the unique root of `minpoly` (ascending, monic) that lies in
    /// `[lo, hi]`.
    pub fn new(minpoly: IntPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        let d = minpoly.len().saturating_sub(1);
        if d < 2 {
            return Err(Error::InvalidPolynomial(format!(
                "degree must be at least 2, got {d}"
            )));
        }
        if !minpoly[d].is_one() {
            return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
        }
        if !poly::is_square_free(&minpoly) {
            return Err(Error::InvalidPolynomial("polynomial is not square-free".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidPolynomial(
                "isolating interval must satisfy lo < hi".into(),
            ));
        }
        let chain = poly::sturm_chain(&minpoly);
        let at_lo = poly_sign_at(&minpoly, &lo) == Ordering::Equal;
        let count = poly::count_roots(&chain, &lo, &hi) + usize::from(at_lo);
        if count != 1 {
            return Err(Error::InvalidPolynomial(format!(
                "interval contains {count} roots, expected exactly one"
            )));
        }
        // A monic integer polynomial's rational roots are integers.
        let mut k = lo.ceil().to_integer();
        let mut integer_root = false;
        while BigRational::from_integer(k.clone()) <= hi {
            integer_root |= poly::eval_rational(&minpoly, &BigRational::from_integer(k.clone())).is_zero();
            k += 1;
        }
        if integer_root {
            return Err(Error::InvalidPolynomial(
                "root is rational, polynomial is reducible".into(),
            ));
        }
        let enclosure = Self::initial_enclosure(&minpoly, &lo, &hi)?;
        let quadratic = if d == 2 {
            let p = minpoly[1].clone();
            let q = minpoly[0].clone();
            let disc = &p * &p - BigInt::from(4) * &q;
            // The root sits on the `+` branch iff it exceeds the vertex -p/2.
            let vertex = BigRational::new(-p.clone(), BigInt::from(2));
            let hi_r = BigRational::new(enclosure.hi.clone(), BigInt::one() << enclosure.bits);
            let sign = if hi_r > vertex { 1 } else { -1 };
            Some(QuadraticData { p, disc, sign })
        } else {
            None
        };
        Ok(Self {
            minpoly,
            lo,
            hi,
            enclosure,
            quadratic,
        })
    }

    /// The largest real root of a monic square-free integer polynomial.
    pub fn largest_root(minpoly: IntPoly) -> Result<Self> {
        if minpoly.len() < 3 {
            return Err(Error::InvalidPolynomial("degree must be at least 2".into()));
        }
        if !poly::is_square_free(&minpoly) {
            return Err(Error::InvalidPolynomial("polynomial is not square-free".into()));
        }
        let roots = poly::isolate_real_roots(&minpoly);
        let (lo, hi) = roots
            .last()
            .cloned()
            .ok_or_else(|| Error::InvalidPolynomial("no real root".into()))?;
        // Roots are isolated in (lo, hi]; `new` rejects a rational root at hi.
        Self::new(minpoly, lo, hi)
    }

    fn initial_enclosure(p: &[BigInt], lo: &BigRational, hi: &BigRational) -> Result<Dyadic> {
        let two = BigRational::from_integer(2.into());
        let target = BigRational::new(BigInt::one(), BigInt::one() << INITIAL_BITS);
        let (mut a, mut b) = (lo.clone(), hi.clone());
        let sign_a = poly_sign_at(p, &a);
        while &b - &a >= target {
            let mid = (&a + &b) / &two;
            match poly_sign_at(p, &mid) {
                Ordering::Equal => {
                    return Err(Error::InvalidPolynomial(
                        "root is rational, polynomial is reducible".into(),
                    ))
                }
                s if s == sign_a => a = mid,
                _ => b = mid,
            }
        }
        // a < root < b with b - a < 2^-bits: root lies in (floor(a 2^k), floor(a 2^k) + 2) / 2^k.
        let scale = BigRational::from_integer(BigInt::one() << INITIAL_BITS);
        let lo_num = (&a * &scale).floor().to_integer();
        let hi_num = &lo_num + BigInt::from(2);
        let enc = Dyadic {
            lo: lo_num,
            hi: hi_num,
            bits: INITIAL_BITS,
        };
        // Monic polynomials only have integer rational roots, so a dyadic
        // endpoint that is a root means the input was reducible.
        for end in [&enc.lo, &enc.hi] {
            if poly::eval_dyadic(p, end, enc.bits).is_zero() {
                return Err(Error::InvalidPolynomial(
                    "root is rational, polynomial is reducible".into(),
                ));
            }
        }
        Ok(enc)
    }

    fn bisect(p: &[BigInt], enc: &Dyadic) -> Dyadic {
        let lo = &enc.lo << 1u32;
        let hi = &enc.hi << 1u32;
        let mid = &enc.lo + &enc.hi;
        let bits = enc.bits + 1;
        let s_lo = poly::eval_dyadic(p, &lo, bits).signum();
        let s_mid = poly::eval_dyadic(p, &mid, bits).signum();
        if s_mid.is_zero() {
            // Only reachable for rational roots, which construction rejects.
            return Dyadic { lo, hi, bits };
        }
        if s_mid == s_lo {
            Dyadic { lo: mid, hi, bits }
        } else {
            Dyadic { lo, hi: mid, bits }
        }
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn isolating_interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Rational enclosure `(lo, hi)` of width at most `2^(1-bits)`, computed by
    /// bisection from the stored one.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let enc = self.dyadic_at(bits);
        let den = BigInt::one() << enc.bits;
        (
            BigRational::new(enc.lo.clone(), den.clone()),
            BigRational::new(enc.hi.clone(), den),
        )
    }

    fn dyadic_at(&self, bits: u32) -> Dyadic {
        let mut enc = self.enclosure.clone();
        while enc.bits < bits {
            enc = Self::bisect(&self.minpoly, &enc);
        }
        enc
    }

    /// Two values are the same real number iff they share the minimal
    /// polynomial and their isolating intervals contain a common root.
    pub fn same_number(&self, other: &Self) -> bool {
        if self.minpoly != other.minpoly {
            return false;
        }
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo > hi {
            return false;
        }
        if lo == hi {
            return poly_sign_at(&self.minpoly, &lo) == Ordering::Equal;
        }
        let chain = poly::sturm_chain(&self.minpoly);
        poly::count_roots(&chain, &lo, &hi) > 0
    }

    /// Sign of `c(beta)` for a rational polynomial `c` of degree below the
    /// degree of `beta`.
    pub fn sign_of(&self, coeffs: &[BigRational]) -> Ordering {
        if coeffs.iter().all(Zero::is_zero) {
            return Ordering::Equal;
        }
        if let Some(q) = &self.quadratic {
            return quadratic_sign(q, coeffs);
        }
        self.sign_by_bisection(coeffs)
    }

    /// Sign by interval evaluation and bisection only, ignoring closed forms.
    pub fn sign_by_bisection(&self, coeffs: &[BigRational]) -> Ordering {
        if coeffs.iter().all(Zero::is_zero) {
            return Ordering::Equal;
        }
        let ints = clear_denominators(coeffs);
        let mut enc = self.enclosure.clone();
        loop {
            let (a, b) = eval_interval(&ints, &enc.lo, &enc.hi, enc.bits);
            if a.is_positive() {
                return Ordering::Greater;
            }
            if b.is_negative() {
                return Ordering::Less;
            }
            enc = Self::bisect(&self.minpoly, &enc);
        }
    }

    /// Rational enclosure of `c(beta)` with width below `eps`.
    pub fn evaluate_within(&self, coeffs: &[BigRational], eps: &BigRational) -> (BigRational, BigRational) {
        let ints = clear_denominators(coeffs);
        let denom = poly::lcm_of_denominators(coeffs);
        let deg = ints.len() - 1;
        let mut enc = self.enclosure.clone();
        loop {
            let (a, b) = eval_interval(&ints, &enc.lo, &enc.hi, enc.bits);
            let scale = (BigInt::one() << (enc.bits as usize * deg)) * &denom;
            let lo = BigRational::new(a, scale.clone());
            let hi = BigRational::new(b, scale);
            if &hi - &lo < *eps {
                return (lo, hi);
            }
            enc = Self::bisect(&self.minpoly, &enc);
        }
    }

    /// Approximation of `beta` itself within `2^-bits`.
    pub fn approx(&self, bits: u32) -> BigRational {
        let (lo, hi) = self.enclosure(bits);
        (lo + hi) / BigRational::from_integer(2.into())
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of ")?;
        let mut first = true;
        for (i, c) in self.minpoly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        write!(f, " in ({}, {})", self.lo, self.hi)
    }
}

fn clear_denominators(coeffs: &[BigRational]) -> IntPoly {
    let l = poly::lcm_of_denominators(coeffs);
    let mut out: IntPoly = coeffs
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn interval_mul(a: &BigInt, b: &BigInt, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    let ps = [a * x, a * y, b * x, b * y];
    let lo = ps.iter().min().unwrap().clone();
    let hi = ps.iter().max().unwrap().clone();
    (lo, hi)
}

/// Interval Horner evaluation: `[A, B]` encloses `2^(bits*deg) * c(x)` for all
/// `x` in `[lo, hi] / 2^bits`.
fn eval_interval(c: &[BigInt], lo: &BigInt, hi: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let deg = c.len() - 1;
    let mut a = c[deg].clone();
    let mut b = c[deg].clone();
    for i in (0..deg).rev() {
        let (x, y) = interval_mul(&a, &b, lo, hi);
        let add = &c[i] << (bits as usize * (deg - i));
        a = x + &add;
        b = y + add;
    }
    (a, b)
}

/// Exact sign of `c0 + c1 * beta` with `beta = (-p + s sqrt(D)) / 2`.
fn quadratic_sign(q: &QuadraticData, coeffs: &[BigRational]) -> Ordering {
    let zero = BigRational::zero();
    let c0 = coeffs.first().unwrap_or(&zero);
    let c1 = coeffs.get(1).unwrap_or(&zero);
    // Scale by 2 * den0 * den1 > 0: A + B sqrt(D) with integers A, B.
    let (n0, d0) = (c0.numer(), c0.denom());
    let (n1, d1) = (c1.numer(), c1.denom());
    let a = BigInt::from(2) * n0 * d1 - &q.p * n1 * d0;
    let b = n1 * d0 * BigInt::from(q.sign);
    sign_a_plus_b_sqrt(&a, &b, &q.disc)
}

fn sign_a_plus_b_sqrt(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    use num_bigint::Sign::*;
    match (sa, sb) {
        (NoSign, NoSign) => Ordering::Equal,
        (NoSign, Plus) | (Plus, NoSign) | (Plus, Plus) => Ordering::Greater,
        (NoSign, Minus) | (Minus, NoSign) | (Minus, Minus) => Ordering::Less,
        (Plus, Minus) => (a * a).cmp(&(b * b * d)),
        (Minus, Plus) => (b * b * d).cmp(&(a * a)),
    }
}
