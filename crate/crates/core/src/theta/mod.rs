//! Rank-one theta functions Θ^±_{j,m}, the Jacobi forms ϑ_ab, a lattice theta
//! evaluator for rank ≤ 2 and the right-hand sides of the transformation laws.
//!
//! Convention: Θ^σ_{j,m}(τ,z,t) = e^{2πimt} Σₙ σⁿ q^{m r²} e^{2πi m r z} with
//! r = n + j/2m, for both signs. This is the normalization under which
//! ϑ₁₁(τ,z) = iΘ⁻_{½,½}(τ,2z,0) and the elliptic laws hold together;
//! [`ThetaConvention::Verbatim`] doubles the z-coefficient of Θ⁻ for comparison.

mod lattice;
mod reference;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::Serialize;

use crate::complex::{e2pi, i_unit, real, scale};
use crate::error::{Error, Result};
use crate::numeric::truncation::bilateral_sum;
use crate::numeric::{Evaluated, HalfInt, Truncation};
use crate::real::Real;

pub use lattice::{lattice_theta, LatticeData};
pub use reference::{
    elliptic_shifted_z, jacobi_shift_reference, jacobi_shifted_z, modular_transformed_point, theta_elliptic_reference,
    theta_modular_reference, EllipticShift, JacobiShift, ModularGen,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// `(±1)^n`.
    pub fn pow(self, n: i64) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus if n.rem_euclid(2) == 0 => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            other => Err(Error::Domain(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThetaConvention {
    /// z-coefficient 2πim for both signs.
    #[default]
    Consistent,
    /// z-coefficient 4πim for Θ⁻, as printed for the odd basis.
    Verbatim,
}

/// `(sign, j, m)` with `j` reduced into `[0, 2m)`.
///
/// Any `j ∈ ½ℤ` is accepted: reduction uses Θ^σ_{j+2m} = σΘ^σ_j, and the
/// resulting ±1 is kept in [`ThetaIndex::reduction_factor`]. The classical
/// bases have `j, m` integral for `+` and `j, m ∈ ½+ℤ` for `−`; see
/// [`ThetaIndex::basis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaIndex {
    sign: Sign,
    j: HalfInt,
    m: HalfInt,
    factor: i8,
}

impl ThetaIndex {
    pub fn new(sign: Sign, j: HalfInt, m: HalfInt) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::Domain(format!("theta index needs m > 0, got {m}")));
        }
        let period = m.twice() * 2;
        let wraps = j.twice().div_euclid(period);
        let j = HalfInt::from_twice(j.twice().rem_euclid(period));
        Ok(Self { sign, j, m, factor: sign.pow(wraps) as i8 })
    }

    /// Only the index sets of the classical bases of Th^±_m.
    pub fn basis(sign: Sign, j: HalfInt, m: HalfInt) -> Result<Self> {
        let idx = Self::new(sign, j, m)?;
        if !idx.is_basis() {
            return Err(Error::Domain(format!("({sign}, j={j}, m={m}) is not a basis index")));
        }
        Ok(idx)
    }

    pub fn is_basis(&self) -> bool {
        match self.sign {
            Sign::Plus => self.j.is_integer() && self.m.is_integer(),
            Sign::Minus => self.j.is_half_odd() && self.m.is_half_odd(),
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
    pub fn j(&self) -> HalfInt {
        self.j
    }
    pub fn m(&self) -> HalfInt {
        self.m
    }
    /// `±1` such that Θ_{j as given} = factor · Θ_{j reduced}.
    pub fn reduction_factor(&self) -> i64 {
        self.factor as i64
    }

    /// Index for `j + dj`, carrying this index's reduction factor along.
    pub fn offset(&self, dj: HalfInt) -> Self {
        let mut next = Self::new(self.sign, self.j + dj, self.m).expect("m > 0 already checked");
        next.factor *= self.factor;
        next
    }
}

pub fn theta_jm<T: Real>(
    idx: &ThetaIndex,
    tau: Complex<T>,
    z: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    theta_jm_with(ThetaConvention::Consistent, idx, tau, z, t, tr)
}

pub fn theta_jm_with<T: Real>(
    conv: ThetaConvention,
    idx: &ThetaIndex,
    tau: Complex<T>,
    z: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("theta needs Im tau > 0".into()));
    }
    let m = idx.m.to_real::<T>();
    let shift = T::from_i64(idx.j.twice()) / T::from_i64(2 * idx.m.twice());
    let zc = match (conv, idx.sign) {
        (ThetaConvention::Verbatim, Sign::Minus) => scale(z, T::from_f64(2.0)),
        _ => z,
    };
    let sign = idx.sign;
    let sum = bilateral_sum(tr, "theta_jm", |n| {
        let r = T::from_i64(n) + shift;
        let e = e2pi(scale(tau, m * r * r) + scale(zc, m * r));
        Ok(scale(e, T::from_i64(sign.pow(n))))
    })?;
    let pre = scale(e2pi(scale(t, m)), T::from_i64(idx.reduction_factor()));
    Ok(sum.scale(pre))
}

fn check_ab(a: u8, b: u8) -> Result<()> {
    if a > 1 || b > 1 {
        return Err(Error::Domain(format!("theta characteristics must be 0 or 1, got ({a},{b})")));
    }
    Ok(())
}

/// ϑ_ab(τ,z) = Σₙ exp(πi(n+a/2)²τ + 2πi(n+a/2)(z+b/2)), summed directly.
pub fn jacobi_theta_ab<T: Real>(a: u8, b: u8, tau: Complex<T>, z: Complex<T>, tr: &Truncation) -> Result<Evaluated<T>> {
    check_ab(a, b)?;
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("theta needs Im tau > 0".into()));
    }
    let half = T::from_f64(0.5);
    let zb = z + real(T::from_f64(f64::from(b) / 2.0));
    bilateral_sum(tr, "jacobi_theta_ab", |n| {
        let r = T::from_i64(n) + T::from_f64(f64::from(a) / 2.0);
        Ok(e2pi(scale(tau, half * r * r) + scale(zb, r)))
    })
}

/// ϑ_ab through the rank-one thetas of index ½:
/// ϑ₀₀ = Θ⁺_{0,½}, ϑ₀₁ = Θ⁻_{0,½}, ϑ₁₀ = Θ⁺_{½,½}, ϑ₁₁ = iΘ⁻_{½,½}, all at (τ, 2z, 0).
pub fn jacobi_theta_ab_via_theta<T: Real>(
    a: u8,
    b: u8,
    tau: Complex<T>,
    z: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    check_ab(a, b)?;
    let sign = if b == 0 { Sign::Plus } else { Sign::Minus };
    let j = if a == 0 { HalfInt::ZERO } else { HalfInt::HALF };
    let idx = ThetaIndex::new(sign, j, HalfInt::HALF)?;
    let v = theta_jm(&idx, tau, scale(z, T::from_f64(2.0)), real(T::zero()), tr)?;
    Ok(if (a, b) == (1, 1) { v.scale(i_unit()) } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }
    use crate::complex::abs_f64;
    use crate::dd::DoubleDouble;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    /// Direct summation |n| ≤ 60 in double-double, sharing no code with the
    /// library path beyond the scalar type.
    fn oracle_theta(sign: i64, j: f64, m: f64, tau: Complex<f64>, z: Complex<f64>, t: Complex<f64>) -> Complex<f64> {
        type Dd = DoubleDouble;
        let tp = Dd::pi() * Dd::from(2.0);
        let lift = |c: Complex<f64>| Complex::new(Dd::from(c.re), Dd::from(c.im));
        let (tau, z, t) = (lift(tau), lift(z), lift(t));
        let mut acc = Complex::new(Dd::ZERO, Dd::ZERO);
        let md = Dd::from(m);
        for n in -60i64..=60 {
            let r = Dd::from(n as f64) + Dd::from(j) / (Dd::from(2.0) * md);
            let arg = tau * Complex::new(md * r * r, Dd::ZERO) + z * Complex::new(md * r, Dd::ZERO);
            let w = Complex::new(-arg.im * tp, arg.re * tp);
            let (s, c) = w.im.sin_cos();
            let mut term = Complex::new(c, s) * Complex::new(w.re.exp(), Dd::ZERO);
            if sign < 0 && n.rem_euclid(2) == 1 {
                term = -term;
            }
            acc += term;
        }
        let arg = t * Complex::new(md, Dd::ZERO);
        let (s, c) = (arg.re * tp).sin_cos();
        let pre = Complex::new(c, s) * Complex::new((-arg.im * tp).exp(), Dd::ZERO);
        let v = acc * pre;
        Complex::new(v.re.to_f64(), v.im.to_f64())
    }

    #[test]
    fn index_reduction_carries_sign() {
        let i = ThetaIndex::new(Sign::Minus, h(5), h(2)).unwrap();
        assert_eq!((i.j(), i.reduction_factor()), (h(1), -1));
        let i = ThetaIndex::new(Sign::Minus, h(5), h(1)).unwrap();
        assert_eq!((i.j(), i.reduction_factor()), (h(1), 1));
        let i = ThetaIndex::new(Sign::Plus, h(-2), h(2)).unwrap();
        assert_eq!((i.j(), i.reduction_factor()), (h(2), 1));
        let i = ThetaIndex::new(Sign::Minus, h(-1), h(1)).unwrap();
        assert_eq!((i.j(), i.reduction_factor()), (h(1), -1));
        assert!(ThetaIndex::new(Sign::Plus, h(0), h(0)).is_err());
        assert!(ThetaIndex::basis(Sign::Plus, h(1), h(2)).is_err());
        assert!(ThetaIndex::basis(Sign::Minus, h(1), h(1)).is_ok());
        assert!(!ThetaIndex::new(Sign::Minus, h(0), h(1)).unwrap().is_basis());
    }

    #[test]
    fn reduced_and_unreduced_evaluations_agree() {
        let tr = Truncation::default();
        let (tau, z) = (cx(0.1, 0.9), cx(0.3, -0.2));
        for sign in [Sign::Plus, Sign::Minus] {
            let base = ThetaIndex::new(sign, h(1), h(3)).unwrap();
            let far = ThetaIndex::new(sign, h(1 + 2 * 3 * 3), h(3)).unwrap();
            let a = theta_jm(&base, tau, z, cx(0.0, 0.0), &tr).unwrap().value;
            let b = theta_jm(&far, tau, z, cx(0.0, 0.0), &tr).unwrap().value;
            let o = oracle_theta(if sign == Sign::Plus { 1 } else { -1 }, 1.0 / 2.0 + 9.0, 1.5, tau, z, cx(0.0, 0.0));
            assert!((b - o).norm() < 1e-13, "{sign}");
            assert!((b - a * sign.pow(3) as f64).norm() < 1e-13);
        }
    }

    #[test]
    fn theta_examples() {
        let tr = Truncation::default();
        let odd = ThetaIndex::basis(Sign::Minus, h(1), h(1)).unwrap();
        let v = theta_jm(&odd, cx(0.0, 1.0), cx(0.0, 0.0), cx(0.0, 0.0), &tr).unwrap();
        assert!(v.value.norm() < 1e-15);

        let even = ThetaIndex::basis(Sign::Plus, h(0), h(2)).unwrap();
        let v = theta_jm(&even, cx(0.0, 10.0), cx(0.3, 0.0), cx(0.0, 0.0), &tr).unwrap();
        assert!((v.value - cx(1.0, 0.0)).norm() < 1e-8);

        let idx = ThetaIndex::basis(Sign::Plus, h(6), h(2)).unwrap();
        let (tau, z, t) = (cx(0.0, 1.0), cx(0.2, 0.1), cx(0.05, 0.0));
        let v = theta_jm(&idx, tau, z, t, &tr).unwrap();
        assert!((v.value - oracle_theta(1, 3.0, 1.0, tau, z, t)).norm() < 1e-14);
        assert!(v.tail_bound < 1e-13);
    }

    #[test]
    fn degree_in_t() {
        let tr = Truncation::default();
        let idx = ThetaIndex::basis(Sign::Minus, h(3), h(3)).unwrap();
        let (tau, z) = (cx(-0.2, 1.1), cx(0.4, 0.3));
        let d = cx(0.37, 0.11);
        let a = theta_jm(&idx, tau, z, cx(0.0, 0.0), &tr).unwrap().value;
        let b = theta_jm(&idx, tau, z, d, &tr).unwrap().value;
        assert!((b - a * e2pi(d * 1.5)).norm() < 1e-14);
    }

    #[test]
    fn jacobi_values() {
        let tr = Truncation::default();
        for tau in [cx(0.0, 1.0), cx(1.0, 2.0)] {
            assert!(jacobi_theta_ab(1, 1, tau, cx(0.0, 0.0), &tr).unwrap().value.norm() < 1e-15);
        }
        // π^{1/4}/Γ(3/4)
        let t00 = jacobi_theta_ab(0, 0, cx(0.0, 1.0), cx(0.0, 0.0), &tr).unwrap().value;
        assert!((t00 - cx(1.086_434_811_213_308_f64, 0.0)).norm() < 1e-15);
        assert!(jacobi_theta_ab(2, 0, cx(0.0, 1.0), cx(0.0, 0.0), &tr).is_err());
    }

    #[test]
    fn jacobi_two_paths_agree() {
        let tr = Truncation::default();
        let (tau, z) = (cx(0.31, 0.85), cx(-0.22, 0.17));
        for a in 0..2 {
            for b in 0..2 {
                let d = jacobi_theta_ab(a, b, tau, z, &tr).unwrap().value;
                let v = jacobi_theta_ab_via_theta(a, b, tau, z, &tr).unwrap().value;
                assert!(abs_f64(d - v) < 1e-14, "({a},{b})");
            }
        }
    }

    #[test]
    fn verbatim_convention_breaks_remark_relation() {
        let tr = Truncation::default();
        let (tau, z) = (cx(0.1, 1.0), cx(0.23, 0.05));
        let idx = ThetaIndex::basis(Sign::Minus, h(1), h(1)).unwrap();
        let verb = theta_jm_with(ThetaConvention::Verbatim, &idx, tau, z * 2.0, cx(0.0, 0.0), &tr).unwrap();
        let d11 = jacobi_theta_ab(1, 1, tau, z, &tr).unwrap().value;
        assert!((verb.value * i_unit::<f64>() - d11).norm() > 1e-3);
    }
}
