use num_complex::Complex;

use crate::complex::{abs_f64, e2pi, real, scale};
use crate::error::{Error, Result};
use crate::numeric::{dedekind_eta, Evaluated, Truncation};
use crate::real::Real;
use crate::theta::jacobi_theta_ab;

use super::POLE_TOL;

fn guard<T: Real>(v: &Evaluated<T>, what: &str) -> Result<()> {
    let mag = abs_f64(v.value);
    if mag < POLE_TOL {
        return Err(Error::PoleProximity { what: what.to_string(), magnitude: mag });
    }
    Ok(())
}

/// `R̂^A = e^{2πit} η(τ)³ ϑ₁₁(τ,2u) / (ϑ₁₁(τ,v−u) ϑ₁₁(τ,v+u))`.
pub fn superdenominator_a<T: Real>(
    tau: Complex<T>,
    u: Complex<T>,
    v: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let eta = dedekind_eta(tau, tr)?;
    let num = jacobi_theta_ab(1, 1, tau, scale(u, T::from_f64(2.0)), tr)?;
    let d1 = jacobi_theta_ab(1, 1, tau, v - u, tr)?;
    let d2 = jacobi_theta_ab(1, 1, tau, v + u, tr)?;
    guard(&d1, "superdenominator_a: theta11(v-u)")?;
    guard(&d2, "superdenominator_a: theta11(v+u)")?;
    let den = d1.mul(d2);
    let top = eta.mul(eta).mul(eta).mul(num);
    let value = top.value / den.value;
    // first-order relative error of a quotient
    let rel = top.tail_bound / abs_f64(top.value).max(f64::MIN_POSITIVE) + den.tail_bound / abs_f64(den.value);
    let r = Evaluated { value, tail_bound: abs_f64(value) * rel };
    Ok(r.scale(e2pi(t)))
}

/// `R̂^B_ab = e^{πit} R̂^A(τ,u,v,0) ϑ_ab(τ,v)/ϑ_ab(τ,u)`.
pub fn superdenominator_b<T: Real>(
    a: u8,
    b: u8,
    tau: Complex<T>,
    u: Complex<T>,
    v: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let ra = superdenominator_a(tau, u, v, real(T::zero()), tr)?;
    let tv = jacobi_theta_ab(a, b, tau, v, tr)?;
    let tu = jacobi_theta_ab(a, b, tau, u, tr)?;
    guard(&tu, "superdenominator_b: theta_ab(u)")?;
    let num = ra.mul(tv);
    let value = num.value / tu.value;
    let rel = num.tail_bound / abs_f64(num.value).max(f64::MIN_POSITIVE) + tu.tail_bound / abs_f64(tu.value);
    let r = Evaluated { value, tail_bound: abs_f64(value) * rel };
    Ok(r.scale(e2pi(scale(t, T::from_f64(0.5)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::jacobi_theta_ab;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn zero_at_u_zero_and_odd_in_u() {
        let tr = Truncation::default();
        let (tau, v, t) = (cx(0.1, 1.1), cx(0.3, 0.2), cx(0.0, 0.0));
        assert!(superdenominator_a(tau, cx(0.0, 0.0), v, t, &tr).unwrap().value.norm() < 1e-15);
        let u = cx(0.17, -0.08);
        let p = superdenominator_a(tau, u, v, t, &tr).unwrap().value;
        let m = superdenominator_a(tau, -u, v, t, &tr).unwrap().value;
        assert!((p + m).norm() < 1e-14);
    }

    #[test]
    fn poles_are_reported() {
        let tr = Truncation::default();
        let tau = cx(0.1, 1.1);
        let u = cx(0.2, 0.1);
        let r = superdenominator_a(tau, u, u + tau, cx(0.0, 0.0), &tr);
        assert!(matches!(r, Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn b_degree_and_zeros() {
        let tr = Truncation::default();
        let (tau, u, v) = (cx(0.0, 1.0), cx(0.2, 0.0), cx(0.0, 0.35));
        let d = cx(0.4, 0.1);
        for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let x = superdenominator_b(a, b, tau, u, v, cx(0.0, 0.0), &tr).unwrap().value;
            let y = superdenominator_b(a, b, tau, u, v, d, &tr).unwrap().value;
            assert!((y - x * e2pi(d * 0.5)).norm() < 1e-14);
        }
        let z = superdenominator_b(1, 1, tau, u, tau * 1.0 + cx(1.0, 0.0), cx(0.0, 0.0), &tr).unwrap();
        assert!(z.value.norm() < 1e-13);
        // composed from the independent ϑ pieces
        let x = superdenominator_b(0, 0, tau, u, v, cx(0.0, 0.0), &tr).unwrap().value;
        let ra = superdenominator_a(tau, u, v, cx(0.0, 0.0), &tr).unwrap().value;
        let q = jacobi_theta_ab(0, 0, tau, v, &tr).unwrap().value / jacobi_theta_ab(0, 0, tau, u, &tr).unwrap().value;
        assert!((x - ra * q).norm() < 1e-14);
    }
}
