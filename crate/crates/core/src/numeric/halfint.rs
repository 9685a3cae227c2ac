use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::real::Real;

/// An element of ½ℤ, stored as twice its value so every index computation
/// stays exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: Self = Self { twice: 0 };
    pub const HALF: Self = Self { twice: 1 };
    pub const ONE: Self = Self { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Whether the value lies in ½ + ℤ.
    pub const fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    pub const fn is_positive(self) -> bool {
        self.twice > 0
    }

    pub const fn times(self, k: i64) -> Self {
        Self { twice: self.twice * k }
    }

    /// Exact value if integral.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.twice, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_real<T: Real>(self) -> T {
        T::from_i64(self.twice) / T::from_f64(2.0)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl TryFrom<Ratio<i64>> for HalfInt {
    type Error = Error;
    fn try_from(r: Ratio<i64>) -> Result<Self, Error> {
        let d = *r.denom();
        match d {
            1 => Ok(Self::from_int(*r.numer())),
            2 => Ok(Self::from_twice(*r.numer())),
            _ => Err(Error::InvalidHalfInt(r.to_string())),
        }
    }
}

impl Add for HalfInt {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self { twice: self.twice + b.twice }
    }
}

impl Sub for HalfInt {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self { twice: self.twice - b.twice }
    }
}

impl Neg for HalfInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `3`, `-1/2`, `3/2`, `6/4` and decimal forms such as `1.5`.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidHalfInt(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Self::try_from(Ratio::new(n, d)).map_err(|_| bad());
        }
        if let Ok(n) = t.parse::<i64>() {
            return Ok(Self::from_int(n));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (ip, fp) = body.split_once('.').ok_or_else(bad)?;
        let ip: i64 = if ip.is_empty() { 0 } else { ip.parse().map_err(|_| bad())? };
        let fp = fp.trim_end_matches('0');
        let half = match fp {
            "" => 0,
            "5" => 1,
            _ => return Err(bad()),
        };
        let twice = 2 * ip + half;
        Ok(Self::from_twice(if neg { -twice } else { twice }))
    }
}
