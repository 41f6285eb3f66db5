//! Exact construction and verification of beta-integers and (-beta)-integers
//! for quadratic Pisot bases.

pub mod addition;
pub mod algebraic;
pub mod capset;
pub mod error;
pub mod integers;
pub mod numeration;
pub mod words;

pub use algebraic::{make_base, rational_rank, AlgebraicReal, Family, FieldElement, PisotBase};
pub use error::{Error, Result};
pub use numeration::{DigitString, EventuallyPeriodicWord, Mode, NumerationSystem};
