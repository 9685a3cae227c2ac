//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| <= ulp(hi)/2`, giving about 106 bits of significand.
//!
//! The algorithms are the standard error-free transformations (Knuth two-sum,
//! FMA two-product) and the Bailey/Hida/Li reductions for `exp`, `ln` and the
//! circular functions. Arguments of `sin_cos` are reduced with a double-double
//! `pi/2`, which is accurate while `|x| < 1e15`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{Num, One, Zero};

use crate::real::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const PI: DoubleDouble = DoubleDouble::from_parts(3.141592653589793, 1.2246467991473532e-16);
const FRAC_PI_2: DoubleDouble = DoubleDouble::from_parts(1.5707963267948966, 6.123233995736766e-17);
const LN2: DoubleDouble = DoubleDouble::from_parts(0.6931471805599453, 2.3190468138462996e-17);
const EPS: f64 = 4.930380657631324e-32; // 2^-104

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self::from_parts(0.0, 0.0);
    pub const ONE: Self = Self::from_parts(1.0, 0.0);

    /// Caller guarantees `hi + lo` is already normalized.
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Self { hi: h, lo: l }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Exact multiplication by `2^k`.
    pub fn ldexp(self, k: i32) -> Self {
        let half = k / 2;
        let f1 = 2f64.powi(half);
        let f2 = 2f64.powi(k - half);
        Self { hi: self.hi * f1 * f2, lo: self.lo * f1 * f2 }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (h, l) = quick_two_sum(p, e + self.lo * b);
        Self { hi: h, lo: l }
    }

    fn sqr(self) -> Self {
        self * self
    }

    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            Real::floor(self)
        } else {
            -Real::floor(-self)
        }
    }

    /// Taylor sums for sin and cos on `|r| <= pi/4`.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r.sqr();
        let mut s = r;
        let mut term = r;
        let mut i = 1.0;
        loop {
            term = -(term * r2) / Self::from((2.0 * i) * (2.0 * i + 1.0));
            s += term;
            if term.hi.abs() < EPS * 1e-2 * s.hi.abs().max(1e-300) || i > 40.0 {
                break;
            }
            i += 1.0;
        }
        let mut c = Self::ONE;
        let mut term = Self::ONE;
        let mut i = 1.0;
        loop {
            term = -(term * r2) / Self::from((2.0 * i - 1.0) * (2.0 * i));
            c += term;
            if term.hi.abs() < EPS * 1e-2 || i > 40.0 {
                break;
            }
            i += 1.0;
        }
        (s, c)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl From<i64> for DoubleDouble {
    fn from(n: i64) -> Self {
        let hi = n as f64;
        // The rounding error of the conversion is itself an exact integer.
        let lo = (n - hi as i64) as f64;
        Self::new(hi, lo)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Self::from(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::ONE
    }
}

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl Product for DoubleDouble {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDoubleDoubleError;

impl fmt::Display for ParseDoubleDoubleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid double-double literal")
    }
}

impl std::error::Error for ParseDoubleDoubleError {}

impl FromStr for DoubleDouble {
    type Err = ParseDoubleDoubleError;

    /// Decimal literals are accumulated digit by digit so the result is
    /// correct to double-double precision, not just to the nearest `f64`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(i) => {
                let e: i32 = body[i + 1..].parse().map_err(|_| ParseDoubleDoubleError)?;
                (&body[..i], e)
            }
            None => (body, 0),
        };
        let mut acc = Self::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_dot = false;
        let mut any = false;
        for c in mantissa.chars() {
            match c {
                '.' if !seen_dot => seen_dot = true,
                '0'..='9' => {
                    any = true;
                    acc = acc.mul_f64(10.0) + Self::from(f64::from(c as u8 - b'0'));
                    if seen_dot {
                        frac_digits += 1;
                    }
                }
                _ => return Err(ParseDoubleDoubleError),
            }
        }
        if !any {
            return Err(ParseDoubleDoubleError);
        }
        let e = exp - frac_digits;
        let p = Real::powi(Self::from(10.0), e.abs());
        let v = if e >= 0 { acc * p } else { acc / p };
        Ok(if neg { -v } else { v })
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = ParseDoubleDoubleError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseDoubleDoubleError);
        }
        s.parse()
    }
}

impl fmt::Display for DoubleDouble {
    /// Prints 32 significant digits unless a precision is requested.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hi.is_finite() {
            return write!(f, "{}", self.hi);
        }
        if self.hi == 0.0 {
            return f.write_str("0");
        }
        let digits = f.precision().unwrap_or(32).clamp(1, 34);
        let neg = self.hi < 0.0;
        let x = Real::abs(*self);
        let mut e = x.hi.log10().floor() as i32;
        let ten = Self::from(10.0);
        let mut r = if e >= 0 { x / Real::powi(ten, e) } else { x * Real::powi(ten, -e) };
        if r.hi >= 10.0 {
            r = r / ten;
            e += 1;
        } else if r.hi < 1.0 {
            r = r * ten;
            e -= 1;
        }
        let mut ds = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = Real::floor(r).hi.clamp(0.0, 9.0);
            ds.push(d as u8);
            r = (r - Self::from(d)).mul_f64(10.0);
        }
        if ds[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        ds.truncate(digits);
        let mut out = String::with_capacity(digits + 8);
        if neg {
            out.push('-');
        }
        out.push(char::from(b'0' + ds[0]));
        if digits > 1 {
            out.push('.');
            for d in &ds[1..] {
                out.push(char::from(b'0' + d));
            }
        }
        write!(f, "{out}e{e}")
    }
}

impl Real for DoubleDouble {
    const NAME: &'static str = "double-double";

    fn from_f64(x: f64) -> Self {
        Self::from(x)
    }

    fn from_i64(n: i64) -> Self {
        Self::from(n)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn epsilon() -> Self {
        Self::from(EPS)
    }

    fn min_positive() -> Self {
        Self::from(f64::MIN_POSITIVE)
    }

    fn pi() -> Self {
        PI
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from(self.hi.sqrt());
        }
        let x = Self::from(self.hi.sqrt());
        x + (self - x.sqr()) / x.mul_f64(2.0)
    }

    fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::from(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi.is_nan() {
            return self;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-9);
        // expm1(r) by Taylor, then undo the 2^-9 scaling by squaring (1+s).
        let mut s = r;
        let mut term = r;
        let mut i = 2.0;
        loop {
            term = (term * r) / Self::from(i);
            s += term;
            if term.hi.abs() < EPS * 1e-4 || i > 30.0 {
                break;
            }
            i += 1.0;
        }
        for _ in 0..9 {
            s = s.mul_f64(2.0) + s.sqr();
        }
        (s + Self::ONE).ldexp(k as i32)
    }

    fn ln(self) -> Self {
        if self.hi <= 0.0 || !self.hi.is_finite() {
            return Self::from(self.hi.ln());
        }
        let y = Self::from(self.hi.ln());
        y + self * (-y).exp() - Self::ONE
    }

    fn sin_cos(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::from(f64::NAN), Self::from(f64::NAN));
        }
        let k = (self.hi / FRAC_PI_2.hi).round();
        let r = self - FRAC_PI_2.mul_f64(k);
        let (s, c) = Self::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.floor());
            Self { hi: h, lo: l }
        } else {
            Self::from(hi)
        }
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}
