use num_complex::Complex;
use num_rational::Ratio;

use super::MockIndex;
use crate::complex::{cabs, e2pi, real, scale};
use crate::error::{Error, Result};
use crate::numeric::truncation::bilateral_sum;
use crate::numeric::{Evaluated, HalfInt, Truncation};
use crate::real::Real;
use crate::theta::Sign;

/// Denominators `|1 − e^{w}|` below this are reported as pole proximity.
pub const POLE_TOL: f64 = 1e-12;

/// `e2pi(num) / (1 − e2pi(w))`, rewritten as `−e2pi(num − w)/(1 − e2pi(−w))`
/// when `|e2pi(w)| > 1` so neither exponential overflows.
fn geometric_term<T: Real>(num: Complex<T>, w: Complex<T>, what: &str) -> Result<Complex<T>> {
    let one = real(T::one());
    let (n, d, flip) = if w.im >= T::zero() {
        (e2pi(num), one - e2pi(w), false)
    } else {
        (e2pi(num - w), one - e2pi(-w), true)
    };
    let mag = cabs(d).to_f64();
    if mag < POLE_TOL {
        return Err(Error::PoleProximity { what: what.to_string(), magnitude: mag });
    }
    let q = n / d;
    Ok(if flip { -q } else { q })
}

/// `Φ^{±[m,s]}(τ,z₁,z₂,t) = e^{2πimt} Σₙ (±1)ⁿ q^{mn²+ns} e^{2πi(mn(z₁+z₂)+sz₁)} / (1 − e^{2πiz₁}qⁿ)`.
pub fn phi<T: Real>(
    idx: &MockIndex,
    tau: Complex<T>,
    z1: Complex<T>,
    z2: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("phi needs Im tau > 0".into()));
    }
    let m = idx.m.to_real::<T>();
    let s = idx.s.to_real::<T>();
    let zs = z1 + z2;
    let sum = bilateral_sum(tr, "phi", |n| {
        let nn = T::from_i64(n);
        let num = scale(tau, m * nn * nn + nn * s) + scale(zs, m * nn) + scale(z1, s);
        let w = z1 + scale(tau, nn);
        let term = geometric_term(num, w, "phi")?;
        Ok(scale(term, T::from_i64(idx.sign.pow(n))))
    })?;
    Ok(sum.scale(e2pi(scale(t, m))))
}

/// Data of a mock theta function `Θ^±_{λ;B}` with `L = ℤθ` of rank one inside
/// a space `h` carrying a possibly indefinite form. All vectors are in the
/// coordinates of a fixed basis of `h` with Gram matrix `gram`.
#[derive(Clone, Debug, PartialEq)]
pub struct MockLattice {
    pub gram: Vec<Vec<Ratio<i64>>>,
    pub theta: Vec<i64>,
    pub b_set: Vec<Vec<Ratio<i64>>>,
    pub m: HalfInt,
    pub lambda_bar: Vec<Ratio<i64>>,
}

impl MockLattice {
    fn dim(&self) -> usize {
        self.gram.len()
    }

    fn form(&self, x: &[Ratio<i64>], y: &[Ratio<i64>]) -> Ratio<i64> {
        let mut s = Ratio::from_integer(0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let ok = d > 0
            && self.gram.iter().all(|r| r.len() == d)
            && self.theta.len() == d
            && self.lambda_bar.len() == d
            && self.b_set.iter().all(|b| b.len() == d);
        if !ok {
            return Err(Error::Domain("mock lattice data has inconsistent dimensions".into()));
        }
        let th: Vec<Ratio<i64>> = self.theta.iter().map(|&x| Ratio::from_integer(x)).collect();
        if self.form(&th, &th) <= Ratio::from_integer(0) {
            return Err(Error::Domain("the lattice generator must have positive norm".into()));
        }
        if !self.m.is_positive() {
            return Err(Error::Domain("degree m must be positive".into()));
        }
        Ok(())
    }
}

fn rr<T: Real>(r: Ratio<i64>) -> T {
    T::from_i64(*r.numer()) / T::from_i64(*r.denom())
}

/// `e^{2πimt} Σ_{α∈L} (±1)^{m|α|²} q^{(m/2)|α+λ̄/m|²} e^{2πim(α+λ̄/m|z)}
///  / ∏_{β∈B} (1 − q^{−(α+λ̄/m|β)} e^{−2πi(β|z)})`, with `z` in `h`-coordinates.
pub fn mock_lattice_theta<T: Real>(
    data: &MockLattice,
    sign: Sign,
    tau: Complex<T>,
    z: &[Complex<T>],
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    data.validate()?;
    if z.len() != data.dim() {
        return Err(Error::Domain("z has the wrong dimension".into()));
    }
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("mock theta needs Im tau > 0".into()));
    }
    let d = data.dim();
    let m = data.m.to_real::<T>();
    let g: Vec<Vec<T>> = data.gram.iter().map(|r| r.iter().map(|x| rr::<T>(*x)).collect()).collect();
    let c: Vec<T> = data.lambda_bar.iter().map(|x| rr::<T>(*x) / m).collect();
    let th: Vec<Ratio<i64>> = data.theta.iter().map(|&x| Ratio::from_integer(x)).collect();
    let m_theta_sq = data.m.to_ratio() * data.form(&th, &th);
    if !m_theta_sq.is_integer() {
        return Err(Error::Domain("m|θ|² must be integral".into()));
    }
    let m_theta_sq = m_theta_sq.to_integer();
    let dot = |x: &[T], y: &[Complex<T>]| -> Complex<T> {
        let mut s = Complex::new(T::zero(), T::zero());
        for i in 0..d {
            for j in 0..d {
                s = s + scale(y[j], x[i] * g[i][j]);
            }
        }
        s
    };
    let dot_r = |x: &[T], y: &[T]| -> T {
        let mut s = T::zero();
        for i in 0..d {
            for j in 0..d {
                s += x[i] * g[i][j] * y[j];
            }
        }
        s
    };
    let betas: Vec<Vec<T>> = data.b_set.iter().map(|b| b.iter().map(|x| rr::<T>(*x)).collect()).collect();
    let beta_z: Vec<Complex<T>> = betas.iter().map(|b| dot(b, z)).collect();
    let half_m = m / T::from_f64(2.0);
    let sum = bilateral_sum(tr, "mock_lattice_theta", |n| {
        let x: Vec<T> = (0..d).map(|i| T::from_i64(n * data.theta[i]) + c[i]).collect();
        let num = scale(tau, half_m * dot_r(&x, &x)) + scale(dot(&x, z), m);
        let mut acc = real(T::one());
        for (b, bz) in betas.iter().zip(&beta_z) {
            // 1/(1 − e2pi(w)) with w = −τ(x|β) − (β|z)
            let w = -scale(tau, dot_r(&x, b)) - *bz;
            acc = acc * geometric_term(real(T::zero()), w, "mock_lattice_theta")?;
        }
        // (±1)^{m|nθ|²}
        let sg = sign.pow(m_theta_sq * n * n);
        Ok(scale(e2pi(num) * acc, T::from_i64(sg)))
    })?;
    Ok(sum.scale(e2pi(scale(t, m))))
}

/// Φ^{±[m,s]} through the general series with `h = ℂα₁ ⊕ ℂα₂`,
/// `|αᵢ|² = 0`, `(α₁|α₂) = 1`, `L = ℤ(α₁+α₂)`, `B = {α₁}` and
/// `z = −z₁α₂ − z₂α₁`. The shift is `λ̄ = −sα₁`: with `+sα₁` this data
/// produces Φ^{±[m,−s]}.
pub fn phi_lattice_oracle<T: Real>(
    idx: &MockIndex,
    tau: Complex<T>,
    z1: Complex<T>,
    z2: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let r = |n: i64| Ratio::from_integer(n);
    let s = idx.s.to_ratio();
    let data = MockLattice {
        gram: vec![vec![r(0), r(1)], vec![r(1), r(0)]],
        theta: vec![1, 1],
        b_set: vec![vec![r(1), r(0)]],
        m: idx.m,
        lambda_bar: vec![-s, r(0)],
    };
    mock_lattice_theta(&data, idx.sign, tau, &[-z2, -z1], t, tr)
}
