//! Elements of `Q(beta)` in the power basis `1, beta, ..., beta^(d-1)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::poly::{self, RatPoly};
use super::real::AlgebraicReal;
use crate::error::{Error, Result};

/// Element `c0 + c1 beta + ... + c_{d-1} beta^(d-1)`; the coefficient vector
/// always has exactly `d` entries.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<AlgebraicReal>,
    coeffs: Vec<BigRational>,
}

fn same_field(a: &Arc<AlgebraicReal>, b: &Arc<AlgebraicReal>) -> bool {
    Arc::ptr_eq(a, b) || a.same_number(b)
}

impl FieldElement {
    /// Reduces `coeffs` modulo the minimal polynomial.
    pub fn new(field: &Arc<AlgebraicReal>, coeffs: Vec<BigRational>) -> Self {
        let d = field.degree();
        let m = field.minpoly();
        let mut c = coeffs;
        // minpoly is monic: beta^d = -(m_0 + ... + m_{d-1} beta^{d-1}).
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for (i, mi) in m.iter().take(d).enumerate() {
                if !mi.is_zero() {
                    c[shift + i] -= &top * BigRational::from_integer(mi.clone());
                }
            }
        }
        c.resize(d, BigRational::zero());
        Self {
            field: Arc::clone(field),
            coeffs: c,
        }
    }

    pub fn from_rational(field: &Arc<AlgebraicReal>, r: BigRational) -> Self {
        Self::new(field, vec![r])
    }

    pub fn from_integer(field: &Arc<AlgebraicReal>, n: impl Into<BigInt>) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<AlgebraicReal>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<AlgebraicReal>) -> Self {
        Self::from_integer(field, 1)
    }

    /// `beta` itself.
    pub fn generator(field: &Arc<AlgebraicReal>) -> Self {
        Self::new(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn field(&self) -> &Arc<AlgebraicReal> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(q)` if the element is the rational `q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_integer())
    }

    /// Whether all coefficients are integers, i.e. the element lies in `Z[beta]`.
    pub fn is_in_order(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn signum(&self) -> Ordering {
        self.field.sign_of(&self.coeffs)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::new(&self.field, prod))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 2 {
            // (a + b beta)^-1 = (a + b beta') / N with beta' = -p - beta.
            let conj = self.conjugate()?;
            let n = self.norm()?;
            return Ok(conj.scale(&n.recip()));
        }
        let m = poly::to_rational(self.field.minpoly());
        let mut a: RatPoly = self.coeffs.clone();
        poly::trim(&mut a);
        let inv = poly::inverse_mod(&a, &m).ok_or(Error::DivisionByZero)?;
        Ok(Self::new(&self.field, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Galois conjugate `a + b beta'` for a quadratic field.
    pub fn conjugate(&self) -> Result<Self> {
        let m = self.field.minpoly();
        if m.len() != 3 {
            return Err(Error::DegreeMismatch(self.field.degree()));
        }
        // beta + beta' = -p
        let p = BigRational::from_integer(m[1].clone());
        let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs: vec![a - b * &p, -b],
        })
    }

    /// Field norm of a quadratic element, `x * x'`.
    pub fn norm(&self) -> Result<BigRational> {
        let m = self.field.minpoly();
        if m.len() != 3 {
            return Err(Error::DegreeMismatch(self.field.degree()));
        }
        let p = BigRational::from_integer(m[1].clone());
        let q = BigRational::from_integer(m[0].clone());
        let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
        Ok(a * a - a * b * p + b * b * q)
    }

    /// Rational `q` with `|q - self| < eps`.
    pub fn approximate(&self, eps: &BigRational) -> BigRational {
        if let Some(q) = self.to_rational() {
            return q;
        }
        let (lo, hi) = self.field.evaluate_within(&self.coeffs, eps);
        (lo + hi) / BigRational::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << 64u32);
        self.approximate(&eps).to_f64().unwrap_or(f64::NAN)
    }

    /// `floor(self)`, decided by exact comparison against integers.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.to_rational() {
            return q.floor().to_integer();
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let (lo, _) = self.field.evaluate_within(&self.coeffs, &half);
        // self in [lo, lo + 1/2); the floor is n or n + 1.
        let n = lo.floor().to_integer();
        let next = Self::from_integer(&self.field, &n + 1);
        if self >= &next {
            n + 1
        } else {
            n
        }
    }

    /// Coordinates `(c, d)` with `self = c + d / beta` (quadratic fields).
    pub fn inverse_basis(&self) -> Result<(BigRational, BigRational)> {
        let m = self.field.minpoly();
        if m.len() != 3 {
            return Err(Error::DegreeMismatch(self.field.degree()));
        }
        // beta = -p - q / beta
        let p = BigRational::from_integer(m[1].clone());
        let q = BigRational::from_integer(m[0].clone());
        let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
        Ok((a - b * p, -(b * q)))
    }

    /// Decimal rendering with `digits` fractional digits, rounded from an
    /// approximation correct to two further places.
    pub fn decimal(&self, digits: usize) -> String {
        let ten = BigInt::from(10);
        let scale = num_traits::pow(ten.clone(), digits + 2);
        let eps = BigRational::new(BigInt::one(), scale);
        decimal_string(&self.approximate(&eps), digits)
    }
}

/// Renders a rational with `digits` places after the point (rounded half up).
pub fn decimal_string(q: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let neg = rounded.is_negative();
    let (int, frac) = rounded.abs().div_rem(&scale);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        let f = frac.to_string();
        s.push('.');
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    s
}

/// Rank over `Q` of the coefficient vectors.
pub fn rational_rank(vs: &[FieldElement]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vs.iter().map(|v| v.coeffs.clone()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics when the operands live in different fields.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_sub(other)
            .expect("comparison across number fields")
            .signum()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect(concat!("FieldElement::", stringify!($method)))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: &mut bool, c: &BigRational, unit: &str) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let a = c.abs();
    if *first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    *first = false;
    match unit {
        "" => write!(f, "{a}"),
        u if a.is_one() => write!(f, "{u}"),
        u => write!(f, "{a}*{u}"),
    }
}

/// Human-readable form in powers of `b` (standing for beta).
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            let unit = match i {
                0 => String::new(),
                1 => "b".to_string(),
                _ => format!("b^{i}"),
            };
            write_term(f, &mut first, c, &unit)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// Renders `c + d/b` for quadratic elements (the form the gap closed forms
/// use), falling back to the power basis otherwise.
pub struct InverseBasis<'a>(pub &'a FieldElement);

impl fmt::Display for InverseBasis<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Ok((c, d)) = self.0.inverse_basis() else {
            return write!(f, "{}", self.0);
        };
        if c.is_zero() && d.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        write_term(f, &mut first, &c, "")?;
        if !d.is_zero() {
            let a = d.abs();
            let (num, den) = (a.numer(), a.denom());
            let sign = if d.is_negative() { "-" } else { "+" };
            if first {
                if d.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if den.is_one() {
                write!(f, "{num}/b")?;
            } else {
                write!(f, "{num}/({den}*b)")?;
            }
        }
        Ok(())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldElement", 3)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let minpoly: Vec<String> = self.field.minpoly().iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("minpoly", &minpoly)?;
        st.serialize_field("approx", &self.decimal(12))?;
        st.end()
    }
}
