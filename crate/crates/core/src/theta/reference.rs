use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;

use super::{theta_jm, ThetaIndex};
use crate::complex::{e2pi, i_unit, principal_sqrt, real, scale};
use crate::error::{Error, Result};
use crate::numeric::{Evaluated, HalfInt, Truncation};
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularGen {
    S,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticShift {
    /// `z ↦ z + a`, requires `a·m ∈ ℤ`.
    Lattice(Ratio<i64>),
    /// `z ↦ z + τ/m`.
    TauOverM,
}

/// The point at which the left-hand side of the modular law is evaluated:
/// S: `(−1/τ, z/τ, t − z²/4τ)`, T: `(τ+1, z, t)`.
pub fn modular_transformed_point<T: Real>(
    gen: ModularGen,
    tau: Complex<T>,
    z: Complex<T>,
    t: Complex<T>,
) -> (Complex<T>, Complex<T>, Complex<T>) {
    match gen {
        ModularGen::S => {
            let one = real(T::one());
            (-one / tau, z / tau, t - z * z / scale(tau, T::from_f64(4.0)))
        }
        ModularGen::T => (tau + real(T::one()), z, t),
    }
}

/// Right-hand side of the S or T law for a basis index:
/// S: `(−iτ/2m)^{1/2} Σ_{j'} e^{−πijj'/m} Θ_{j'}(τ,z,t)`, `j'` over the
/// residues of `j + ℤ` in `[0, 2m)`; T: `e^{πij²/2m} Θ_j(τ,z,t)`.
pub fn theta_modular_reference<T: Real>(
    idx: &ThetaIndex,
    gen: ModularGen,
    tau: Complex<T>,
    z: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    if !idx.is_basis() {
        return Err(Error::Domain("modular laws are stated for basis indices only".into()));
    }
    let (j, m) = (idx.j(), idx.m());
    // j²/4m as an exact ratio of twice-values: (jt/2)²/(2·mt) = jt²/(8·mt)
    let frac = |num: i64, den: i64| T::from_i64(num) / T::from_i64(den);
    match gen {
        ModularGen::T => {
            let phase = e2pi(real(frac(j.twice() * j.twice(), 8 * m.twice())));
            Ok(theta_jm(idx, tau, z, t, tr)?.scale(phase))
        }
        ModularGen::S => {
            let two_m = m.to_real::<T>() * T::from_f64(2.0);
            let pre = principal_sqrt(-(i_unit::<T>() * tau) / real(two_m));
            let start = HalfInt::from_twice(j.twice().rem_euclid(2));
            let mut acc = Evaluated::exact(Complex::new(T::zero(), T::zero()));
            let mut jp = start;
            while jp.twice() < 2 * m.twice() {
                let other = ThetaIndex::new(idx.sign(), jp, m)?;
                // e^{−πijj'/m} = e2pi(−jj'/2m) = e2pi(−jt·jt'/(4·mt))
                let kern = e2pi(real(-frac(j.twice() * jp.twice(), 4 * m.twice())));
                acc = acc.add(theta_jm(&other, tau, z, t, tr)?.scale(kern));
                jp = jp + HalfInt::ONE;
            }
            Ok(acc.scale(pre))
        }
    }
}

/// `z + a` or `z + τ/m`.
pub fn elliptic_shifted_z<T: Real>(idx: &ThetaIndex, shift: EllipticShift, tau: Complex<T>, z: Complex<T>) -> Complex<T> {
    match shift {
        EllipticShift::Lattice(a) => z + real(T::from_i64(*a.numer()) / T::from_i64(*a.denom())),
        EllipticShift::TauOverM => z + tau / real(idx.m().to_real::<T>()),
    }
}

/// Right-hand side of the elliptic law: `e^{πija} Θ_j` or
/// `q^{−1/4m} e^{−πiz} Θ_{j+1}`.
pub fn theta_elliptic_reference<T: Real>(
    idx: &ThetaIndex,
    shift: EllipticShift,
    tau: Complex<T>,
    z: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    match shift {
        EllipticShift::Lattice(a) => {
            let am = a * idx.m().to_ratio();
            if !am.is_integer() {
                return Err(Error::Domain(format!("elliptic shift needs a·m integral, got a·m = {am}")));
            }
            // e^{πija} = e2pi(j·a/2), exact in the rational j·a
            let ph = idx.j().to_ratio() * a / Ratio::from_integer(2);
            let (n, d) = (*ph.numer(), *ph.denom());
            let phase = e2pi(real(T::from_i64(n.mod_floor(&d)) / T::from_i64(d)));
            Ok(theta_jm(idx, tau, z, t, tr)?.scale(phase))
        }
        EllipticShift::TauOverM => {
            let four_m = idx.m().to_real::<T>() * T::from_f64(4.0);
            let fac = e2pi(-(tau / real(four_m)) - scale(z, T::from_f64(0.5)));
            Ok(theta_jm(&idx.offset(HalfInt::ONE), tau, z, t, tr)?.scale(fac))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiShift {
    /// `z ↦ z + n/2`.
    Half(i64),
    /// `z ↦ z + nτ/2`.
    HalfTau(i64),
}

/// Right-hand side of the half-period laws of ϑ_ab:
/// `ϑ_ab(z + n/2) = (−1)^{abn + an(1−n)/2} ϑ_{a,b+n}(z)` and
/// `ϑ_ab(z + nτ/2) = (−i)^{bn} q^{−n²/8} e^{−πinz} ϑ_{a+n,b}(z)`, indices mod 2.
pub fn jacobi_shift_reference<T: Real>(
    a: u8,
    b: u8,
    shift: JacobiShift,
    tau: Complex<T>,
    z: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let (ai, bi) = (i64::from(a), i64::from(b));
    match shift {
        JacobiShift::Half(n) => {
            let e = ai * bi * n + ai * n * (1 - n) / 2;
            let sign = if e.rem_euclid(2) == 0 { T::one() } else { -T::one() };
            let bb = (bi + n).rem_euclid(2) as u8;
            Ok(super::jacobi_theta_ab(a, bb, tau, z, tr)?.scale(real(sign)))
        }
        JacobiShift::HalfTau(n) => {
            // (−i)^{bn} = e2pi(−bn/4)
            let quarter = T::from_i64(-(bi * n).rem_euclid(4)) / T::from_f64(4.0);
            let nn = T::from_i64(n);
            let arg = real(quarter) - scale(tau, nn * nn / T::from_f64(8.0)) - scale(z, nn / T::from_f64(2.0));
            let aa = (ai + n).rem_euclid(2) as u8;
            Ok(super::jacobi_theta_ab(aa, b, tau, z, tr)?.scale(e2pi(arg)))
        }
    }
}

/// `z + n/2` or `z + nτ/2`.
pub fn jacobi_shifted_z<T: Real>(shift: JacobiShift, tau: Complex<T>, z: Complex<T>) -> Complex<T> {
    match shift {
        JacobiShift::Half(n) => z + real(T::from_i64(n) / T::from_f64(2.0)),
        JacobiShift::HalfTau(n) => z + scale(tau, T::from_i64(n) / T::from_f64(2.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }
    use crate::theta::Sign;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn jacobi_half_period_laws() {
        let tr = Truncation::default();
        let (tau, z) = (cx(0.17, 0.88), cx(0.29, -0.13));
        for a in 0..2u8 {
            for b in 0..2u8 {
                for n in [-1, 1, 2, 3] {
                    for shift in [JacobiShift::Half(n), JacobiShift::HalfTau(n)] {
                        let lhs = crate::theta::jacobi_theta_ab(a, b, tau, jacobi_shifted_z(shift, tau, z), &tr).unwrap();
                        let rhs = jacobi_shift_reference(a, b, shift, tau, z, &tr).unwrap();
                        assert!((lhs.value - rhs.value).norm() < 1e-12 * (1.0 + rhs.value.norm()), "{a}{b} {shift:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn t_phase_examples() {
        let tr = Truncation::default();
        let (tau, z, t) = (cx(0.1, 1.2), cx(0.3, 0.1), cx(0.0, 0.0));
        let idx = ThetaIndex::basis(Sign::Plus, h(0), h(2)).unwrap();
        let r = theta_modular_reference(&idx, ModularGen::T, tau, z, t, &tr).unwrap().value;
        assert!((r - theta_jm(&idx, tau, z, t, &tr).unwrap().value).norm() < 1e-15);
        let idx = ThetaIndex::basis(Sign::Minus, h(1), h(1)).unwrap();
        let r = theta_modular_reference(&idx, ModularGen::T, tau, z, t, &tr).unwrap().value;
        let want = theta_jm(&idx, tau, z, t, &tr).unwrap().value * e2pi(cx(1.0 / 8.0, 0.0));
        assert!((r - want).norm() < 1e-15);
    }

    #[test]
    fn s_reference_is_real_on_imaginary_axis() {
        let tr = Truncation::default();
        for j in [0, 2] {
            let idx = ThetaIndex::basis(Sign::Plus, h(j), h(2)).unwrap();
            let r = theta_modular_reference(&idx, ModularGen::S, cx(0.0, 1.0), cx(0.0, 0.0), cx(0.0, 0.0), &tr).unwrap();
            assert!(r.value.im.abs() < 1e-15 && r.value.re.abs() > 0.1);
        }
    }

    #[test]
    fn modular_laws_hold() {
        let tr = Truncation::default();
        let (tau, z, t) = (cx(0.27, 0.93), cx(0.31, -0.12), cx(0.05, 0.02));
        for (sign, j, m) in [(Sign::Plus, 0, 2), (Sign::Plus, 2, 4), (Sign::Minus, 1, 1), (Sign::Minus, 1, 3), (Sign::Minus, 5, 3)] {
            let idx = ThetaIndex::basis(sign, h(j), h(m)).unwrap();
            for gen in [ModularGen::S, ModularGen::T] {
                let (tp, zp, ttp) = modular_transformed_point(gen, tau, z, t);
                let lhs = theta_jm(&idx, tp, zp, ttp, &tr).unwrap().value;
                let rhs = theta_modular_reference(&idx, gen, tau, z, t, &tr).unwrap().value;
                assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), "{sign} {j} {m} {gen:?}");
            }
        }
        let nb = ThetaIndex::new(Sign::Minus, h(0), h(1)).unwrap();
        assert!(theta_modular_reference(&nb, ModularGen::S, tau, z, t, &tr).is_err());
    }

    #[test]
    fn elliptic_laws_hold_and_guard() {
        let tr = Truncation::default();
        let (tau, z, t) = (cx(-0.15, 1.05), cx(0.21, 0.08), cx(0.0, 0.0));
        for (sign, j, m) in [(Sign::Plus, 4, 2), (Sign::Plus, 3, 4), (Sign::Minus, 1, 1), (Sign::Minus, 3, 3)] {
            let idx = ThetaIndex::new(sign, h(j), h(m)).unwrap();
            let mh = h(m);
            let a = Ratio::new(2, mh.twice());
            for shift in [EllipticShift::Lattice(a), EllipticShift::Lattice(a * 3), EllipticShift::TauOverM] {
                let lhs = theta_jm(&idx, tau, elliptic_shifted_z(&idx, shift, tau, z), t, &tr).unwrap().value;
                let rhs = theta_elliptic_reference(&idx, shift, tau, z, t, &tr).unwrap().value;
                assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), "{sign} {j} {m} {shift:?}");
            }
        }
        // τ-shift at j = 2m − 1 wraps to j = 0
        let idx = ThetaIndex::basis(Sign::Plus, h(2), h(2)).unwrap();
        assert_eq!(idx.offset(HalfInt::ONE).j(), HalfInt::ZERO);
        // a = 1/m with m = ½ is allowed (am = 1); am = 1/3 is rejected
        let half = ThetaIndex::basis(Sign::Minus, h(1), h(1)).unwrap();
        assert!(theta_elliptic_reference(&half, EllipticShift::Lattice(Ratio::new(2, 1)), tau, z, t, &tr).is_ok());
        let one = ThetaIndex::basis(Sign::Plus, h(0), h(2)).unwrap();
        let r = theta_elliptic_reference(&one, EllipticShift::Lattice(Ratio::new(1, 3)), tau, z, t, &tr);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
