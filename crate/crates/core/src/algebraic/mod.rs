//! Exact arithmetic in real algebraic number fields.

pub mod base;
pub mod field;
pub mod poly;
pub mod real;

pub use base::{make_base, Family, PisotBase};
pub use field::{decimal_string, rational_rank, FieldElement, InverseBasis};
pub use real::AlgebraicReal;
