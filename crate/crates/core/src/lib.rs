//! Rank-one theta functions, mock theta functions Φ^{±[m,s]}, their
//! real-analytic completions Φ̃, and sampled/exact checks of the laws they
//! satisfy. Numerical code is generic over [`real::Real`]; `f64` and
//! [`dd::DoubleDouble`] are the two scalars in use.

pub mod calculus;
pub mod complex;
pub mod dd;
pub mod error;
pub mod harness;
pub mod mock;
pub mod numeric;
pub mod qexp;
pub mod real;
pub mod theta;

#[cfg(test)]
mod testutil;

pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use numeric::{DomainPoint, HalfInt, Truncation};

pub type C64 = num_complex::Complex<f64>;
pub type Cdd = num_complex::Complex<DoubleDouble>;
pub type Point = DomainPoint<f64>;
pub type PointDd = DomainPoint<DoubleDouble>;
