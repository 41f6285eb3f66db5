//! Numeration bases: quadratic Pisot numbers from the two families
//! `x^2 - m x - n` and `x^2 - m x + n`, plus arbitrary bases given by a
//! polynomial (used for the cubic and sextic examples).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::field::FieldElement;
use super::real::AlgebraicReal;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `beta^2 = m beta + n`, `m >= n >= 1`.
    Plus,
    /// `beta^2 = m beta - n`, `m - 2 >= n >= 1`.
    Minus,
    /// Largest real root of a user supplied polynomial.
    General,
}

#[derive(Clone, Debug)]
pub struct PisotBase {
    family: Family,
    m: u32,
    n: u32,
    beta: Arc<AlgebraicReal>,
}

/// Builds the quadratic base of `family` with parameters `(m, n)`.
pub fn make_base(family: Family, m: u32, n: u32) -> Result<PisotBase> {
    PisotBase::quadratic(family, m, n)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

impl PisotBase {
    pub fn quadratic(family: Family, m: u32, n: u32) -> Result<Self> {
        let (mi, ni) = (i64::from(m), i64::from(n));
        let (poly, lo, hi) = match family {
            Family::Plus => {
                if !(n >= 1 && m >= n) {
                    return Err(Error::ConstraintViolation(format!(
                        "x^2 - {m}x - {n} needs m >= n >= 1"
                    )));
                }
                (vec![int(-ni), int(-mi), int(1)], mi, mi + 1)
            }
            Family::Minus => {
                if !(n >= 1 && mi - 2 >= ni) {
                    return Err(Error::ConstraintViolation(format!(
                        "x^2 - {m}x + {n} needs m - 2 >= n >= 1"
                    )));
                }
                (vec![int(ni), int(-mi), int(1)], mi - 1, mi)
            }
            Family::General => {
                return Err(Error::WrongFamily(
                    "use PisotBase::from_polynomial for general bases".into(),
                ))
            }
        };
        let beta = AlgebraicReal::new(
            poly,
            BigRational::from_integer(lo.into()),
            BigRational::from_integer(hi.into()),
        )?;
        Ok(Self {
            family,
            m,
            n,
            beta: Arc::new(beta),
        })
    }

    /// Base given by the largest real root of a monic integer polynomial
    /// (ascending coefficients). The root must exceed 1.
    pub fn from_polynomial(coeffs: Vec<BigInt>) -> Result<Self> {
        let beta = AlgebraicReal::largest_root(coeffs)?;
        Self::from_real(beta)
    }

    pub fn from_real(beta: AlgebraicReal) -> Result<Self> {
        let beta = Arc::new(beta);
        let b = FieldElement::generator(&beta);
        if b <= FieldElement::one(&beta) {
            return Err(Error::ConstraintViolation("base must exceed 1".into()));
        }
        // Recognize the quadratic families so that family-specific data works.
        if beta.degree() == 2 {
            let m = -&beta.minpoly()[1];
            let c = &beta.minpoly()[0];
            if let (Some(m), Some(n)) = (m.to_u32(), c.abs().to_u32()) {
                let family = if c.is_negative() { Family::Plus } else { Family::Minus };
                if let Ok(q) = Self::quadratic(family, m, n) {
                    if q.beta.same_number(&beta) {
                        return Ok(q);
                    }
                }
            }
        }
        Ok(Self {
            family: Family::General,
            m: 0,
            n: 0,
            beta,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &Arc<AlgebraicReal> {
        &self.beta
    }

    pub fn degree(&self) -> usize {
        self.beta.degree()
    }

    pub fn is_quadratic(&self) -> bool {
        self.family != Family::General
    }

    /// Units have `|N(beta)| = 1`, i.e. constant coefficient `±1`.
    pub fn is_unit(&self) -> bool {
        self.beta.minpoly()[0].abs().is_one()
    }

    pub fn beta(&self) -> FieldElement {
        FieldElement::generator(&self.beta)
    }

    pub fn beta_conjugate(&self) -> Result<FieldElement> {
        self.beta().conjugate()
    }

    pub fn int(&self, v: i64) -> FieldElement {
        FieldElement::from_integer(&self.beta, v)
    }

    pub fn rational(&self, num: i64, den: i64) -> FieldElement {
        FieldElement::from_rational(&self.beta, BigRational::new(num.into(), den.into()))
    }

    /// `beta^e`, negative exponents allowed.
    pub fn beta_pow(&self, e: i64) -> FieldElement {
        self.beta().pow(e).expect("beta is non-zero")
    }

    /// Left end of the negative-base interval, `-beta / (beta + 1)`.
    pub fn l(&self) -> FieldElement {
        let b = self.beta();
        -(&b / (&b + self.int(1)))
    }

    /// Largest digit for the positive base, `ceil(beta) - 1`.
    pub fn max_digit_pos(&self) -> u32 {
        // beta is irrational, so ceil(beta) - 1 = floor(beta).
        self.floor_beta()
    }

    /// Largest digit for the negative base, `floor(beta)`.
    pub fn max_digit_neg(&self) -> u32 {
        self.floor_beta()
    }

    fn floor_beta(&self) -> u32 {
        self.beta().floor().to_u32().expect("small base")
    }

    /// Parameters as `plus:m,n` / `minus:m,n` / `poly:c0,...`.
    pub fn label(&self) -> String {
        match self.family {
            Family::Plus => format!("plus:{},{}", self.m, self.n),
            Family::Minus => format!("minus:{},{}", self.m, self.n),
            Family::General => {
                let cs: Vec<String> = self.beta.minpoly().iter().map(|c| c.to_string()).collect();
                format!("poly:{}", cs.join(","))
            }
        }
    }
}

impl fmt::Display for PisotBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Plus => write!(f, "x^2 - {}x - {}", self.m, self.n),
            Family::Minus => write!(f, "x^2 - {}x + {}", self.m, self.n),
            Family::General => write!(f, "{}", self.beta),
        }
    }
}
