//! Distributions in `Ω₁(A)`, splitting projections, involutivity, global
//! integrability, curvature and cocurvature.

pub mod corpus;
mod curvature;
mod distribution;
mod projection;

pub use curvature::{bianchi, curvature, flatness_equivalence, BianchiReport, CurvatureData, FlatnessReport};
pub use distribution::{globally_integrable, is_involutive, make_distribution, Distribution, IntegrabilityReport};
pub use projection::{find_projection, projection_along, Projection};
