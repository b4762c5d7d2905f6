//! Graded derivations of `Ω(A)`, the bimodule-valued forms `Ω¹ₖ`, insertion
//! operators, Lie derivatives and the two brackets.
//!
//! Degree convention: for `K ∈ Ω¹ₖ` the insertion `j_K` has degree `k − 1`
//! and `L_K = [j_K, d]` has degree `k`.

mod brackets;
mod derivation;
mod hom;
mod space;
mod universal;

pub use brackets::{
    algebraic_bracket, compose_parts, decompose, fn_bracket, fn_bracket_parts, insert_hom, Decomposition,
};
pub use derivation::GradedDerivation;
pub use hom::{hom_space, FormHom};
pub use space::{algebraic_derivation_space, derivation_residual, derivation_space};
pub use universal::{check_universal_derivation, BimoduleTag, UniversalDerivationReport};

#[cfg(test)]
mod tests;
