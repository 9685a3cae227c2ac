//! The scalar abstraction every evaluator is generic over.
//!
//! `f32` and `f64` use the platform libm. [`DoubleDouble`](crate::dd::DoubleDouble)
//! carries roughly 32 significant digits and is what the harness uses where a
//! transformation law is checked across a large cancellation.

use std::fmt;
use std::ops::Neg;

use num_traits::{Num, NumAssign};

pub trait Real:
    Copy
    + Send
    + Sync
    + 'static
    + Default
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Num
    + NumAssign
    + Neg<Output = Self>
{
    const NAME: &'static str;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    /// Unit roundoff.
    fn epsilon() -> Self;
    fn min_positive() -> Self;
    fn pi() -> Self;

    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn abs(self) -> Self;
    fn floor(self) -> Self;
    fn is_finite(self) -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    fn round(self) -> Self {
        (self + Self::from_f64(0.5)).floor()
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut k = n.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base *= base;
            k >>= 1;
        }
        acc
    }

    fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    fn signum(self) -> Self {
        if self < Self::zero() {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

macro_rules! impl_real_prim {
    ($t:ident, $name:literal) => {
        impl Real for $t {
            const NAME: &'static str = $name;

            #[inline]
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            #[inline]
            fn to_f64(self) -> f64 {
                self as f64
            }
            #[inline]
            fn epsilon() -> Self {
                $t::EPSILON
            }
            #[inline]
            fn min_positive() -> Self {
                $t::MIN_POSITIVE
            }
            #[inline]
            fn pi() -> Self {
                std::$t::consts::PI
            }
            #[inline]
            fn sqrt(self) -> Self {
                $t::sqrt(self)
            }
            #[inline]
            fn exp(self) -> Self {
                $t::exp(self)
            }
            #[inline]
            fn ln(self) -> Self {
                $t::ln(self)
            }
            #[inline]
            fn sin_cos(self) -> (Self, Self) {
                $t::sin_cos(self)
            }
            #[inline]
            fn abs(self) -> Self {
                $t::abs(self)
            }
            #[inline]
            fn floor(self) -> Self {
                $t::floor(self)
            }
            #[inline]
            fn is_finite(self) -> bool {
                $t::is_finite(self)
            }
            #[inline]
            fn round(self) -> Self {
                $t::round(self)
            }
            #[inline]
            fn powi(self, n: i32) -> Self {
                $t::powi(self, n)
            }
        }
    };
}

impl_real_prim!(f32, "f32");
impl_real_prim!(f64, "f64");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_half_away_for_positive() {
        assert_eq!(Real::round(2.5_f64), 3.0);
        assert_eq!(Real::round(-2.4_f64), -2.0);
    }
}
