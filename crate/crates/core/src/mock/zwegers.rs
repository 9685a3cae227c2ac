use num_complex::Complex;

use crate::complex::{cis, scale, UNDERFLOW_EXP};
use crate::error::{Error, Result};
use crate::numeric::truncation::bilateral_sum;
use crate::numeric::{gauss_E, gauss_tail_scaled, Evaluated, HalfInt, Truncation};
use crate::real::Real;
use crate::theta::Sign;

/// `ψ_{m,n}(τ,z) = (n − 2m Im z / Im τ)·√(Im τ / m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiArg<T> {
    pub m: HalfInt,
    pub n: HalfInt,
    pub tau: Complex<T>,
    pub z: Complex<T>,
    pub value: T,
}

impl<T: Real> PsiArg<T> {
    pub fn new(m: HalfInt, n: HalfInt, tau: Complex<T>, z: Complex<T>) -> Self {
        let (mr, y) = (m.to_real::<T>(), tau.im);
        let value = (n.to_real::<T>() - T::from_f64(2.0) * mr * z.im / y) * (y / mr).sqrt();
        Self { m, n, tau, z, value }
    }
}

/// `R^±_{j,m}(τ,z) = Σ_{n ≡ j mod 2m} (±1)^{(n−j)/2m} (sign(n − ½ − j + 2m) − E(ψ_{m,n}(τ,z)))
/// e^{−πin²τ/2m + 2πinz}`.
///
/// Each term is assembled from its modulus logarithm so that the growing factor
/// `e^{πn²y/2m}` is cancelled analytically against the Gaussian tail.
pub fn zwegers_r<T: Real>(
    sign: Sign,
    j: HalfInt,
    m: HalfInt,
    tau: Complex<T>,
    z: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    if !m.is_positive() {
        return Err(Error::Domain("R needs m > 0".into()));
    }
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("R needs Im tau > 0".into()));
    }
    let (x, y) = (tau.re, tau.im);
    let pi = T::pi();
    let two = T::from_f64(2.0);
    let mr = m.to_real::<T>();
    let root = (y / mr).sqrt();
    let iz_over_y = z.im / y;
    bilateral_sum(tr, "zwegers_r", |k| {
        let n_h = j + m.times(2 * k);
        let n = n_h.to_real::<T>();
        // sign(n − ½ − j + 2m) in exact twice-units: 2·2m·k + 2·2m − 1
        let tw = 2 * m.twice() * k + 2 * m.twice() - 1;
        let sigma = if tw > 0 { T::one() } else { -T::one() };
        let psi = (n - two * mr * iz_over_y) * root;
        let zero = T::from_f64(UNDERFLOW_EXP);
        let mag = if sigma * psi >= T::zero() {
            // σ(1 − E(σψ)) e^{base}, base − πψ² simplified exactly
            let expo = -pi * n * n * y / (two * mr) + two * pi * n * z.im - T::from_f64(4.0) * pi * mr * z.im * iz_over_y;
            if expo < zero {
                return Ok(Complex::new(T::zero(), T::zero()));
            }
            sigma * expo.exp() * gauss_tail_scaled(sigma * psi)?
        } else {
            let base = pi * n * n * y / (two * mr) - two * pi * n * z.im;
            if base < zero {
                return Ok(Complex::new(T::zero(), T::zero()));
            }
            sigma * (T::one() + gauss_E(psi.abs())?) * base.exp()
        };
        let phase = cis(-pi * n * n * x / (two * mr) + two * pi * n * z.re);
        Ok(scale(phase, mag * T::from_i64(sign.pow(k))))
    })
}
