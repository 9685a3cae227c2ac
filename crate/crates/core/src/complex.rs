//! Complex helpers over any [`Real`]. `num_complex`'s transcendental methods
//! need `num_traits::Float`, which the double-double type deliberately does
//! not implement, so the few functions needed live here.

use num_complex::Complex;

use crate::real::Real;

#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::from_f64(re), T::from_f64(im))
}

#[inline]
pub fn i_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

#[inline]
pub fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn scale<T: Real>(z: Complex<T>, r: T) -> Complex<T> {
    Complex::new(z.re * r, z.im * r)
}

#[inline]
pub fn conj<T: Real>(z: Complex<T>) -> Complex<T> {
    Complex::new(z.re, -z.im)
}

#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

#[inline]
pub fn cexp<T: Real>(z: Complex<T>) -> Complex<T> {
    // below this the modulus is zero in every supported type; skip the trig
    if z.re < T::from_f64(UNDERFLOW_EXP) {
        return Complex::new(T::zero(), T::zero());
    }
    scale(cis(z.im), z.re.exp())
}

/// `exp(x)` is exactly zero in `f64` (and double-double) for `x` below this.
pub const UNDERFLOW_EXP: f64 = -746.0;

/// `e^{2 pi i z}`.
#[inline]
pub fn e2pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let tp = T::pi() * T::from_f64(2.0);
    cexp(Complex::new(-z.im * tp, z.re * tp))
}

pub fn cabs<T: Real>(z: Complex<T>) -> T {
    let (a, b) = (z.re.abs(), z.im.abs());
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if big == T::zero() {
        return T::zero();
    }
    let r = small / big;
    big * (T::one() + r * r).sqrt()
}

#[inline]
pub fn abs_f64<T: Real>(z: Complex<T>) -> f64 {
    cabs(z).to_f64()
}

pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn lift<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

pub fn lower<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// `r^{1/2} e^{i theta/2}` for `w = r e^{i theta}` with `-pi < theta <= pi`.
/// A negative real with a signed-zero imaginary part is treated as `theta = pi`.
pub fn principal_sqrt<T: Real>(w: Complex<T>) -> Complex<T> {
    let r = cabs(w);
    if r == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let two = T::from_f64(2.0);
    if w.re >= T::zero() {
        let s = ((r + w.re) / two).sqrt();
        Complex::new(s, w.im / (two * s))
    } else {
        let t = ((r - w.re) / two).sqrt();
        let im = if w.im >= T::zero() { t } else { -t };
        Complex::new(w.im.abs() / (two * t), im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;

    #[test]
    fn principal_branch_examples() {
        assert_eq!(principal_sqrt(cx::<f64>(4.0, 0.0)), cx(2.0, 0.0));
        assert_eq!(principal_sqrt(cx::<f64>(-1.0, 0.0)), cx(0.0, 1.0));
        let r = principal_sqrt(cx::<f64>(0.0, -2.0));
        assert!((r - cx(1.0, -1.0)).norm() < 1e-15);
        assert_eq!(principal_sqrt(cx::<f64>(0.0, 0.0)), cx(0.0, 0.0));
    }

    #[test]
    fn branch_cut_is_approached_from_above() {
        let above = principal_sqrt(cx::<f64>(-4.0, 1e-300));
        let below = principal_sqrt(cx::<f64>(-4.0, -1e-300));
        assert!((above - cx(0.0, 2.0)).norm() < 1e-15);
        assert!((below - cx(0.0, -2.0)).norm() < 1e-15);
    }

    #[test]
    fn e2pi_in_double_double() {
        let z = cx::<DoubleDouble>(0.125, 0.0);
        let w = e2pi(z);
        let h = DoubleDouble::from(0.5).sqrt();
        assert!(cabs(w - Complex::new(h, h)).to_f64() < 1e-31);
    }
}
