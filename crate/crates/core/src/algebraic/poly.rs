//! Dense univariate polynomials, coefficients stored in ascending degree order.
//!
//! Integer polynomials describe minimal polynomials; rational polynomials are
//! used for Euclidean algorithms (square-freeness, inverses, Sturm chains).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<BigRational>;

pub fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn to_rational(p: &[BigInt]) -> RatPoly {
    let mut out: RatPoly = p.iter().cloned().map(BigRational::from_integer).collect();
    trim(&mut out);
    out
}

pub fn derivative(p: &[BigInt]) -> IntPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

pub fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

pub fn eval_rat_poly(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Value of `2^(bits*deg) * p(num / 2^bits)`, an exact integer.
pub fn eval_dyadic(p: &[BigInt], num: &BigInt, bits: u32) -> BigInt {
    let deg = p.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    for (i, c) in p.iter().enumerate().rev() {
        let shift = bits as usize * (deg - i);
        acc = acc * num + (c << shift);
    }
    acc
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out: RatPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Polynomial division `a = q*b + r`; `b` must be non-zero.
pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut r: RatPoly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / &lead;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &factor * c;
        }
        q[shift] = factor;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic(p: &[BigRational]) -> RatPoly {
    match p.last() {
        None => Vec::new(),
        Some(lead) => p.iter().map(|c| c / lead).collect(),
    }
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut x: RatPoly = a.to_vec();
    let mut y: RatPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<RatPoly> {
    // Invariant: s_i * a ≡ r_i (mod m).
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: RatPoly = s0.into_iter().map(|x| x / &c).collect();
    let (_, rem) = div_rem(&inv, m);
    inv = rem;
    Some(inv)
}

pub fn is_square_free(p: &[BigInt]) -> bool {
    let g = gcd(&to_rational(p), &to_rational(&derivative(p)));
    g.len() <= 1
}

/// Sturm chain of a square-free polynomial.
pub fn sturm_chain(p: &[BigInt]) -> Vec<RatPoly> {
    let mut chain = vec![to_rational(p), to_rational(&derivative(p))];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = eval_rat_poly(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
pub fn count_roots(chain: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(chain, lo).saturating_sub(sign_variations(chain, hi))
}

/// Cauchy bound: every real root lies strictly inside `(-bound, bound)`.
pub fn root_bound(p: &[BigInt]) -> BigRational {
    let lead = p.last().expect("non-empty polynomial").abs();
    let max = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    BigRational::one() + BigRational::new(max, lead)
}

/// Isolating intervals `(lo, hi]` for every real root, sorted ascending.
pub fn isolate_real_roots(p: &[BigInt]) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(p);
    let bound = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&chain, &lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn lcm_of_denominators(coeffs: &[BigRational]) -> BigInt {
    coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}
