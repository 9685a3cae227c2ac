use num_complex::Complex;

use super::MockIndex;
use crate::complex::{conj, e2pi, real, scale};
use crate::error::Result;
use crate::numeric::{DomainPoint, Evaluated, Truncation};
use crate::real::Real;
use crate::theta::{theta_jm, ThetaIndex};

/// `θ^{±[m,s]} = e^{2πimt} Σ_{j ∈ s+ℤ mod 2m} Θ^±_{j,m}(−τ̄, 2v̄) Θ^±_{−j,m}(τ, 2u)`.
pub fn theta_pair<T: Real>(
    idx: &MockIndex,
    tau: Complex<T>,
    u: Complex<T>,
    v: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let two = T::from_f64(2.0);
    let zero = real(T::zero());
    let tau_bar = -conj(tau);
    let (vv, uu) = (scale(conj(v), two), scale(u, two));
    let mut acc = Evaluated::exact(zero);
    for j in idx.j_range() {
        let a = theta_jm(&ThetaIndex::new(idx.sign, j, idx.m)?, tau_bar, vv, zero, tr)?;
        let b = theta_jm(&ThetaIndex::new(idx.sign, -j, idx.m)?, tau, uu, zero, tr)?;
        acc = acc.add(a.mul(b));
    }
    Ok(acc.scale(e2pi(scale(t, idx.m.to_real::<T>()))))
}

pub fn theta_pair_uv<T: Real>(idx: &MockIndex, p: &DomainPoint<T>, tr: &Truncation) -> Result<Evaluated<T>> {
    theta_pair(idx, p.tau(), p.u(), p.v(), p.t(), tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::HalfInt;
    use crate::theta::Sign;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn real_on_real_slice() {
        let tr = Truncation::default();
        for (m, s) in [(2, 0), (4, 2), (2, 1)] {
            let idx = MockIndex::new(Sign::Plus, HalfInt::from_twice(m), HalfInt::from_twice(s)).unwrap();
            let v = theta_pair(&idx, cx(0.0, 1.3), cx(0.21, 0.0), cx(-0.4, 0.0), cx(0.0, 0.0), &tr).unwrap().value;
            assert!(v.im.abs() < 1e-14 * (1.0 + v.norm()), "{idx}: {v}");
        }
    }

    #[test]
    fn composed_from_thetas() {
        let tr = Truncation::default();
        let idx = MockIndex::new(Sign::Plus, HalfInt::ONE, HalfInt::ZERO).unwrap();
        let (tau, u, v) = (cx(0.0, 1.0), cx(0.2, 0.0), cx(0.3, 0.0));
        let zero = cx(0.0, 0.0);
        let got = theta_pair(&idx, tau, u, v, zero, &tr).unwrap().value;
        let th = |j: i64, tau, z| {
            theta_jm(&ThetaIndex::new(Sign::Plus, HalfInt::from_int(j), HalfInt::ONE).unwrap(), tau, z, zero, &tr).unwrap().value
        };
        let want = th(0, -tau.conj(), v.conj() * 2.0) * th(0, tau, u * 2.0) + th(1, -tau.conj(), v.conj() * 2.0) * th(-1, tau, u * 2.0);
        assert!((got - want).norm() < 1e-14);
        let half = MockIndex::new(Sign::Minus, HalfInt::HALF, HalfInt::HALF).unwrap();
        assert_eq!(half.j_range().count(), 1);
    }
}
