//! Scalar bedrock: exact half-integers, domain points, truncation policy,
//! the Gaussian error integral and Dedekind eta.

pub mod domain;
pub mod eta;
pub mod gauss;
pub mod halfint;
pub mod truncation;

pub use crate::complex::principal_sqrt;
pub use domain::DomainPoint;
pub use eta::dedekind_eta;
pub use gauss::{gauss_E, gauss_tail_scaled};
pub use halfint::HalfInt;
pub use truncation::{Evaluated, Truncation, TruncationMode};
