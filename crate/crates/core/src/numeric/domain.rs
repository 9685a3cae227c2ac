use num_complex::Complex;

use crate::complex::{lift, lower};
use crate::error::{Error, Result};
use crate::real::Real;

/// A point `(tau, u, v, t)` of the domain, with the real frame
/// `tau = x + iy`, `v = a tau - b` computed once at construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainPoint<T> {
    tau: Complex<T>,
    u: Complex<T>,
    v: Complex<T>,
    t: Complex<T>,
    x: T,
    y: T,
    a: T,
    b: T,
}

impl<T: Real> DomainPoint<T> {
    pub fn new(tau: Complex<T>, u: Complex<T>, v: Complex<T>, t: Complex<T>) -> Result<Self> {
        if !(tau.im > T::zero()) {
            return Err(Error::Domain(format!("Im tau must be positive, got {}", tau.im)));
        }
        let (x, y) = (tau.re, tau.im);
        let a = v.im / y;
        let b = a * x - v.re;
        Ok(Self { tau, u, v, t, x, y, a, b })
    }

    /// Builds the point from the frame coordinates, `v = a tau - b`.
    pub fn from_frame(tau: Complex<T>, u: Complex<T>, a: T, b: T, t: Complex<T>) -> Result<Self> {
        let v = Complex::new(a * tau.re - b, a * tau.im);
        Self::new(tau, u, v, t)
    }

    pub fn tau(&self) -> Complex<T> {
        self.tau
    }
    pub fn u(&self) -> Complex<T> {
        self.u
    }
    pub fn v(&self) -> Complex<T> {
        self.v
    }
    pub fn t(&self) -> Complex<T> {
        self.t
    }
    pub fn x(&self) -> T {
        self.x
    }
    pub fn y(&self) -> T {
        self.y
    }
    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }

    pub fn with_tau(&self, tau: Complex<T>) -> Result<Self> {
        Self::new(tau, self.u, self.v, self.t)
    }
    pub fn with_u(&self, u: Complex<T>) -> Self {
        Self { u, ..*self }
    }
    pub fn with_v(&self, v: Complex<T>) -> Self {
        let a = v.im / self.y;
        Self { v, a, b: a * self.x - v.re, ..*self }
    }
    pub fn with_t(&self, t: Complex<T>) -> Self {
        Self { t, ..*self }
    }

    /// `(z1, z2) = (v - u, -v - u)`.
    pub fn z1z2(&self) -> (Complex<T>, Complex<T>) {
        (self.v - self.u, -self.v - self.u)
    }

    pub fn to_f64(&self) -> DomainPoint<f64> {
        DomainPoint::new(lower(self.tau), lower(self.u), lower(self.v), lower(self.t))
            .expect("a valid point stays valid when rounded")
    }
}

impl DomainPoint<f64> {
    pub fn lift<T: Real>(&self) -> DomainPoint<T> {
        DomainPoint::new(lift(self.tau), lift(self.u), lift(self.v), lift(self.t))
            .expect("a valid point stays valid when widened")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cabs, cx};

    #[test]
    fn frame_roundtrip() {
        let p = DomainPoint::<f64>::new(cx(0.3, 1.2), cx(0.1, 0.0), cx(-0.7, 0.45), cx(0.0, 0.0)).unwrap();
        let q = DomainPoint::from_frame(p.tau(), p.u(), p.a(), p.b(), p.t()).unwrap();
        assert!(cabs(q.v() - p.v()) < 1e-14 * (1.0 + cabs(p.v())));
        assert!((p.a() - 0.45 / 1.2).abs() < 1e-15);
    }

    #[test]
    fn rejects_lower_half_plane() {
        let z = cx::<f64>(0.0, 0.0);
        assert!(DomainPoint::new(cx(0.0, 0.0), z, z, z).is_err());
        assert!(DomainPoint::new(cx(0.0, -1.0), z, z, z).is_err());
        assert!(DomainPoint::new(cx(0.0, f64::NAN), z, z, z).is_err());
    }
}
