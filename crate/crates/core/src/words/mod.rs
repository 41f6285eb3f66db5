//! Words over small integer alphabets: morphisms, fixed points, factor
//! languages, and the morphisms attached to quadratic bases.

pub mod catalog;
pub mod fixed;
pub mod language;
pub mod morphism;

pub use catalog::{balance_witness, quadratic_morphisms, sturmian_decomposition, QuadraticMorphisms};
pub use fixed::{fixed_point, pointed_fixed_point, PointedWord};
pub use language::{balance, complexity, factors, is_balanced, language_equal};
pub use morphism::{
    right_conjugate_witness, second_eigenvalue_bound, verify_intertwining, word, word_to_string, Letter,
    Morphism, Orientation, Word,
};
