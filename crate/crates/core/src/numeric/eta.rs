use num_complex::Complex;

use crate::complex::{abs_f64, e2pi, real};
use crate::error::{Error, Result};
use crate::numeric::truncation::{Evaluated, Truncation};
use crate::real::Real;

/// `q^{1/24} ∏_{n=1}^{N} (1 - qⁿ)` with `N = tr.eta_terms`. The tail bound is
/// `|η_N|·(exp(ρ) - 1)` with `ρ = |q|^{N+1}/(1 - |q|)`.
pub fn dedekind_eta<T: Real>(tau: Complex<T>, tr: &Truncation) -> Result<Evaluated<T>> {
    if !(tau.im > T::zero()) {
        return Err(Error::Domain(format!("eta needs Im tau > 0, got {}", tau.im)));
    }
    let q = e2pi(tau);
    let mut qn = q;
    let mut prod = real(T::one());
    for _ in 0..tr.eta_terms {
        prod = prod * (real(T::one()) - qn);
        qn = qn * q;
    }
    let value = e2pi(tau / real(T::from_f64(24.0))) * prod;
    let aq = abs_f64(q);
    let rho = aq.powf(tr.eta_terms as f64 + 1.0) / (1.0 - aq);
    Ok(Evaluated { value, tail_bound: abs_f64(value) * rho.exp_m1() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cabs, cx};
    use crate::dd::DoubleDouble;

    #[test]
    fn value_at_i() {
        // Γ(1/4)/(2π^{3/4})
        let want = 0.768_225_422_326_056_659_002_594_179_576_2_f64;
        let tr = Truncation::default();
        let e = dedekind_eta(cx::<f64>(0.0, 1.0), &tr).unwrap();
        assert!((e.value - cx(want, 0.0)).norm() < 1e-15);
        let tr = Truncation { eta_terms: 200, ..Truncation::extended() };
        let e = dedekind_eta(cx::<DoubleDouble>(0.0, 1.0), &tr).unwrap();
        let want: DoubleDouble = "0.76822542232605665900259417957621".parse().unwrap();
        assert!((e.value.re - want).abs().to_f64() < 1e-30);
    }

    #[test]
    fn translation_keeps_modulus() {
        let tr = Truncation::default();
        let a = dedekind_eta(cx::<f64>(0.0, 1.0), &tr).unwrap().value;
        let b = dedekind_eta(cx::<f64>(1.0, 1.0), &tr).unwrap().value;
        assert!((a.norm() - b.norm()).abs() < 1e-15);
        let phase = e2pi(cx::<f64>(1.0 / 24.0, 0.0));
        assert!((b - a * phase).norm() < 1e-15);
    }

    #[test]
    fn leading_term_at_ten_i() {
        type Dd = DoubleDouble;
        let tr = Truncation::extended();
        let e = dedekind_eta(cx::<Dd>(0.0, 10.0), &tr).unwrap().value;
        let lead = (-Dd::pi() * Dd::from(20.0) / Dd::from(24.0)).exp();
        let rel = cabs(e - real(lead)) / lead;
        // the next term is -q·q^{1/24}, q = e^{-20π} ≈ 5e-28
        assert!(rel.to_f64() < 1e-25);
    }

    #[test]
    fn truncation_levels_agree_within_bound() {
        let tau = cx::<f64>(0.2, 0.15);
        let lo = dedekind_eta(tau, &Truncation { eta_terms: 20, ..Truncation::default() }).unwrap();
        let hi = dedekind_eta(tau, &Truncation { eta_terms: 70, ..Truncation::default() }).unwrap();
        assert!((lo.value - hi.value).norm() <= lo.tail_bound + 1e-15);
        assert!(lo.tail_bound > 0.0);
        assert!(dedekind_eta(cx::<f64>(0.0, 0.0), &Truncation::default()).is_err());
    }
}
