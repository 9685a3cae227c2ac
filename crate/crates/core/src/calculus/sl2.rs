use std::fmt;

use num_complex::Complex;
use serde::Serialize;

use super::FunctionHandle;
use crate::complex::{e2pi, real, scale};
use crate::error::{Error, Result};
use crate::numeric::DomainPoint;
use crate::real::Real;

/// An integer matrix `(a b; c d)` of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Sl2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Sl2 = Sl2 { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Sl2 = Sl2 { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!("({a} {b}; {c} {d}) does not have determinant 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn mul(self, o: Sl2) -> Sl2 {
        Sl2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn neg(self) -> Sl2 {
        Sl2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// `cτ + d`.
    pub fn j<T: Real>(&self, tau: Complex<T>) -> Complex<T> {
        scale(tau, T::from_i64(self.c)) + real(T::from_i64(self.d))
    }
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sl2::S => write!(f, "S"),
            Sl2::T => write!(f, "T"),
            Sl2::IDENTITY => write!(f, "I"),
            Sl2 { a, b, c, d } => write!(f, "({a} {b}; {c} {d})"),
        }
    }
}

/// The point `A·p` at which `F|_A` evaluates `F`, and the factor `cτ + d`.
pub fn slash_point<T: Real>(a: &Sl2, p: &DomainPoint<T>) -> Result<(DomainPoint<T>, Complex<T>)> {
    let tau = p.tau();
    let j = a.j(tau);
    if crate::complex::abs_f64(j) == 0.0 {
        return Err(Error::Domain("c tau + d vanishes".into()));
    }
    let tau2 = (scale(tau, T::from_i64(a.a)) + real(T::from_i64(a.b))) / j;
    let (u, v) = (p.u(), p.v());
    let t2 = p.t() - scale(u * u - v * v, T::from_i64(a.c)) / j;
    Ok((DomainPoint::new(tau2, u / j, v / j, t2)?, j))
}

/// `F|_A(p) = (cτ+d)^{−1} F(A·p)`, the weight-one action.
pub fn sl2_act<T: Real>(f: &FunctionHandle, a: &Sl2, p: &DomainPoint<T>) -> Result<Complex<T>> {
    let (q, j) = slash_point(a, p)?;
    Ok(f.eval(&q)? / j)
}

/// `F|_S` through the degree law: `τ^{−1} e^{2πim(v²−u²)/τ} F(−1/τ, u/τ, v/τ, t)`.
pub fn s_action_via_degree<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>) -> Result<Complex<T>> {
    let tau = p.tau();
    let one = real(T::one());
    let (u, v) = (p.u(), p.v());
    let q = DomainPoint::new(-one / tau, u / tau, v / tau, p.t())?;
    let phase = e2pi(scale(v * v - u * u, f.degree().to_real::<T>()) / tau);
    Ok(f.eval(&q)? * phase / tau)
}
