//! Exact noncommutative differential calculus over finite-dimensional
//! algebras.
//!
//! Starting from a unital associative algebra `A` given by structure
//! constants, this crate builds the universal differential graded algebra
//! `Ω(A)`, the graded derivations of `Ω(A)` with their insertion operators and
//! Lie derivatives, the algebraic and Frölicher–Nijenhuis brackets on
//! bimodule-valued forms, and the geometry of distributions and projections
//! in `Ω₁(A)`: involutivity, global integrability, curvature, cocurvature and
//! the Bianchi identities. All arithmetic is exact over the rationals, so
//! every identity is checked as an equality.
//!
//! ```
//! use std::sync::Arc;
//! use ncdiff::algebra::dual_numbers;
//! use ncdiff::forms::Omega;
//!
//! let omega = Omega::new(Arc::new(dual_numbers()));
//! let eps = omega.algebra().basis_element(1);
//! let deps = omega.d_element(&eps);
//! // d(eps) * eps = -eps d(eps)
//! let prod = omega.mul(&deps, &omega.element_form(&eps)).unwrap();
//! assert_eq!(omega.format(&prod), "-1 * eps d(eps)");
//! ```

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod deriv;
mod error;
pub mod forms;
pub mod geometry;
pub mod linalg;
pub mod sample;

pub use error::{Error, Result};
