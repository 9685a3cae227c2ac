//! `E(x) = 2∫₀ˣ e^{-πu²} du = erf(√π x)` and its exponentially scaled tail.

use crate::error::{Error, Result};
use crate::real::Real;

/// Below this `w = √π x` the tail is formed as `e^{w²}(1 - erf w)`; above it
/// the continued fraction is used. The cancellation at the switch costs a
/// factor of about 200 in relative error.
const TAIL_SWITCH_W: f64 = 2.0;
/// `E` switches from its series to `1 - e^{-w²}·erfcx(w)` at `|x| = 1.5`.
const SERIES_LIMIT_X: f64 = 1.5;

fn sqrt_pi<T: Real>() -> T {
    T::pi().sqrt()
}

/// `erf(w)` from the non-alternating series
/// `2/√π · e^{-w²} Σ 2ⁿ w^{2n+1}/(2n+1)!!`.
fn erf_series<T: Real>(w: T) -> T {
    let two = T::from_f64(2.0);
    let w2 = w * w;
    let mut term = w;
    let mut sum = w;
    let mut n = 0i64;
    loop {
        term = term * two * w2 / T::from_i64(2 * n + 3);
        sum += term;
        n += 1;
        if term.abs() <= T::epsilon() * sum.abs() * T::from_f64(0.25) || n > 2000 {
            break;
        }
    }
    two / sqrt_pi::<T>() * (-w2).exp() * sum
}

/// `erfcx(w) = e^{w²} erfc(w)` for `w > 0` via the Laplace continued fraction
/// `√π erfcx(w) = 1/(w + (1/2)/(w + 1/(w + (3/2)/(w + …))))`, modified Lentz.
fn erfcx_cf<T: Real>(w: T) -> T {
    let tiny = T::from_f64(1e-300);
    let half = T::from_f64(0.5);
    let mut f = w;
    let mut c = w;
    let mut d = T::zero();
    for k in 1..20_000i64 {
        let a = T::from_i64(k) * half;
        d = w + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        d = T::one() / d;
        c = w + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    T::one() / (sqrt_pi::<T>() * f)
}

fn erfcx_nonneg<T: Real>(w: T) -> T {
    if w >= T::from_f64(TAIL_SWITCH_W) {
        erfcx_cf(w)
    } else {
        (w * w).exp() * (T::one() - erf_series(w))
    }
}

#[allow(non_snake_case)]
pub fn gauss_E<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gauss_E of non-finite {x}")));
    }
    let ax = x.abs();
    let w = ax * sqrt_pi::<T>();
    let e = if ax <= T::from_f64(SERIES_LIMIT_X) {
        erf_series(w)
    } else {
        T::one() - (-(w * w)).exp() * erfcx_cf(w)
    };
    Ok(if x < T::zero() { -e } else { e })
}

/// `e^{πx²}(1 - E(x))` for `x ≥ 0`.
pub fn gauss_tail_scaled<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() || x < T::zero() {
        return Err(Error::Domain(format!("gauss_tail_scaled needs finite x >= 0, got {x}")));
    }
    Ok(erfcx_nonneg(x * sqrt_pi::<T>()))
}
