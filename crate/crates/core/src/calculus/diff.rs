use num_complex::Complex;
use serde::Serialize;

use super::FunctionHandle;
use crate::complex::{cexp, i_unit, real, scale};
use crate::error::{Error, Result};
use crate::numeric::DomainPoint;
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Central2,
    Central4,
}

impl Scheme {
    fn order(self) -> i32 {
        match self {
            Scheme::Central2 => 2,
            Scheme::Central4 => 4,
        }
    }
}

/// Finite-difference settings. The step actually used along a coordinate
/// with current value `c` is `step * (1 + |c|)`.
///
/// Error model: central-4 is `O(h⁴)`, Richardson lifts it to `O(h⁶)`.
/// Rounding contributes about `ε|f|/h` to first and `ε|f|/h²` to second
/// derivatives, so in `f64` second-order operators keep about half the digits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiffConfig {
    pub step: f64,
    pub richardson: bool,
    pub scheme: Scheme,
}

impl Default for DiffConfig {
    fn default() -> Self {
        Self { step: 1e-4, richardson: true, scheme: Scheme::Central4 }
    }
}

impl DiffConfig {
    pub fn with_step(step: f64) -> Self {
        Self { step, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-7..=1e-2).contains(&self.step) {
            return Err(Error::StepUnderflow(format!("base step {} outside [1e-7, 1e-2]", self.step)));
        }
        Ok(())
    }
}

/// Real coordinates of the point that finite differences move along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    TauRe,
    TauIm,
    URe,
    UIm,
    VRe,
    VIm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Var {
    Tau,
    TauBar,
    U,
    V,
    VBar,
    T,
}

fn coord_value<T: Real>(p: &DomainPoint<T>, c: Coord) -> T {
    match c {
        Coord::TauRe => p.tau().re,
        Coord::TauIm => p.tau().im,
        Coord::URe => p.u().re,
        Coord::UIm => p.u().im,
        Coord::VRe => p.v().re,
        Coord::VIm => p.v().im,
    }
}

fn shifted<T: Real>(p: &DomainPoint<T>, c: Coord, s: T) -> Result<DomainPoint<T>> {
    let re = real(s);
    let im = Complex::new(T::zero(), s);
    Ok(match c {
        Coord::TauRe => p.with_tau(p.tau() + re)?,
        Coord::TauIm => p.with_tau(p.tau() + im)?,
        Coord::URe => p.with_u(p.u() + re),
        Coord::UIm => p.with_u(p.u() + im),
        Coord::VRe => p.with_v(p.v() + re),
        Coord::VIm => p.with_v(p.v() + im),
    })
}

fn step_for<T: Real>(p: &DomainPoint<T>, c: Coord, cfg: &DiffConfig) -> Result<T> {
    cfg.validate()?;
    let h = cfg.step * (1.0 + coord_value(p, c).to_f64().abs());
    if matches!(c, Coord::TauRe | Coord::TauIm) && p.y().to_f64() <= 10.0 * h {
        return Err(Error::StepUnderflow(format!("Im tau = {} too close to the real axis for step {h}", p.y())));
    }
    Ok(T::from_f64(h))
}

type Line<'a, T> = dyn Fn(T) -> Result<Complex<T>> + 'a;

fn stencil1<T: Real>(g: &Line<'_, T>, h: T, scheme: Scheme) -> Result<Complex<T>> {
    match scheme {
        Scheme::Central2 => Ok((g(h)? - g(-h)?) / real(h + h)),
        Scheme::Central4 => {
            let two = T::from_f64(2.0);
            let num = g(-two * h)? - scale(g(-h)?, T::from_f64(8.0)) + scale(g(h)?, T::from_f64(8.0)) - g(two * h)?;
            Ok(num / real(T::from_f64(12.0) * h))
        }
    }
}

fn stencil2<T: Real>(g: &Line<'_, T>, h: T, scheme: Scheme) -> Result<Complex<T>> {
    let g0 = g(T::zero())?;
    match scheme {
        Scheme::Central2 => Ok((g(h)? - scale(g0, T::from_f64(2.0)) + g(-h)?) / real(h * h)),
        Scheme::Central4 => {
            let two = T::from_f64(2.0);
            let sixteen = T::from_f64(16.0);
            let num = -g(two * h)? + scale(g(h)?, sixteen) - scale(g0, T::from_f64(30.0)) + scale(g(-h)?, sixteen)
                - g(-two * h)?;
            Ok(num / real(T::from_f64(12.0) * h * h))
        }
    }
}

fn extrapolate<T: Real, F: Fn(T) -> Result<Complex<T>>>(rule: F, h: T, cfg: &DiffConfig) -> Result<Complex<T>> {
    let coarse = rule(h)?;
    if !cfg.richardson {
        return Ok(coarse);
    }
    let fine = rule(h / T::from_f64(2.0))?;
    let w = T::from_f64(2f64.powi(cfg.scheme.order()));
    Ok((scale(fine, w) - coarse) / real(w - T::one()))
}

/// `∂f/∂c` for a real coordinate `c`.
pub fn partial<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, c: Coord, cfg: &DiffConfig) -> Result<Complex<T>> {
    let h = step_for(p, c, cfg)?;
    let g = |s: T| f.eval(&shifted(p, c, s)?);
    extrapolate(|h| stencil1(&g, h, cfg.scheme), h, cfg)
}

/// `∂²f/∂c₁∂c₂` for real coordinates; the mixed case nests two first-order stencils.
pub fn partial2<T: Real>(
    f: &FunctionHandle,
    p: &DomainPoint<T>,
    c1: Coord,
    c2: Coord,
    cfg: &DiffConfig,
) -> Result<Complex<T>> {
    if c1 == c2 {
        let h = step_for(p, c1, cfg)?;
        let g = |s: T| f.eval(&shifted(p, c1, s)?);
        return extrapolate(|h| stencil2(&g, h, cfg.scheme), h, cfg);
    }
    let h1 = step_for(p, c1, cfg)?;
    let h2 = step_for(p, c2, cfg)?;
    let ratio = h2 / h1;
    extrapolate(
        |h| {
            let outer = |s1: T| {
                let q = shifted(p, c1, s1)?;
                let inner = |s2: T| f.eval(&shifted(&q, c2, s2)?);
                stencil1(&inner, h * ratio, cfg.scheme)
            };
            stencil1(&outer, h, cfg.scheme)
        },
        h1,
        cfg,
    )
}

fn wirtinger_pair<T: Real>(
    f: &FunctionHandle,
    p: &DomainPoint<T>,
    re: Coord,
    im: Coord,
    cfg: &DiffConfig,
) -> Result<(Complex<T>, Complex<T>)> {
    let dx = partial(f, p, re, cfg)?;
    let dy = partial(f, p, im, cfg)?;
    let half = T::from_f64(0.5);
    let idy = i_unit::<T>() * dy;
    Ok((scale(dx - idy, half), scale(dx + idy, half)))
}

/// Wirtinger derivative in one of the complex coordinates. `∂/∂t` is the
/// analytic factor `2πim`; `∂/∂u` is differenced along Re u only.
pub fn wirtinger<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, var: Var, cfg: &DiffConfig) -> Result<Complex<T>> {
    match var {
        Var::T => {
            let two_pi_m = T::from_f64(2.0) * T::pi() * f.degree().to_real::<T>();
            Ok(Complex::new(T::zero(), two_pi_m) * f.eval(p)?)
        }
        Var::U => partial(f, p, Coord::URe, cfg),
        Var::Tau => Ok(wirtinger_pair(f, p, Coord::TauRe, Coord::TauIm, cfg)?.0),
        Var::TauBar => Ok(wirtinger_pair(f, p, Coord::TauRe, Coord::TauIm, cfg)?.1),
        Var::V => Ok(wirtinger_pair(f, p, Coord::VRe, Coord::VIm, cfg)?.0),
        Var::VBar => Ok(wirtinger_pair(f, p, Coord::VRe, Coord::VIm, cfg)?.1),
    }
}

/// `∂f/∂ū`, which vanishes for functions holomorphic in `u`.
pub fn u_holomorphy_defect<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, cfg: &DiffConfig) -> Result<Complex<T>> {
    Ok(wirtinger_pair(f, p, Coord::URe, Coord::UIm, cfg)?.1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Second {
    UU,
    VV,
    VbarVbar,
    VVbar,
}

/// Second Wirtinger derivatives from the real Hessian in `(Re v, Im v)`:
/// `∂v² = ¼(fxx − fyy − 2i fxy)`, `∂v̄² = ¼(fxx − fyy + 2i fxy)`, `∂v∂v̄ = ¼(fxx + fyy)`.
pub fn second<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, which: Second, cfg: &DiffConfig) -> Result<Complex<T>> {
    if which == Second::UU {
        return partial2(f, p, Coord::URe, Coord::URe, cfg);
    }
    let fxx = partial2(f, p, Coord::VRe, Coord::VRe, cfg)?;
    let fyy = partial2(f, p, Coord::VIm, Coord::VIm, cfg)?;
    let q = T::from_f64(0.25);
    if which == Second::VVbar {
        return Ok(scale(fxx + fyy, q));
    }
    let fxy = partial2(f, p, Coord::VRe, Coord::VIm, cfg)?;
    let two_i_fxy = i_unit::<T>() * scale(fxy, T::from_f64(2.0));
    Ok(match which {
        Second::VV => scale(fxx - fyy - two_i_fxy, q),
        _ => scale(fxx - fyy + two_i_fxy, q),
    })
}

fn pi_m<T: Real>(f: &FunctionHandle) -> T {
    T::pi() * f.degree().to_real::<T>()
}

/// `D = 8πim ∂/∂τ + ∂²/∂v² − ∂²/∂u²` on a degree-`m` handle.
pub fn apply_d<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, cfg: &DiffConfig) -> Result<Complex<T>> {
    let dtau = wirtinger(f, p, Var::Tau, cfg)?;
    let c = Complex::new(T::zero(), T::from_f64(8.0) * pi_m::<T>(f));
    Ok(c * dtau + second(f, p, Second::VV, cfg)? - second(f, p, Second::UU, cfg)?)
}

/// `D̄ = 8πim (∂/∂τ̄ + a ∂/∂v̄) + ∂²/∂v̄²`.
pub fn apply_dbar<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, cfg: &DiffConfig) -> Result<Complex<T>> {
    let (_, dtb) = wirtinger_pair(f, p, Coord::TauRe, Coord::TauIm, cfg)?;
    let (_, dvb) = wirtinger_pair(f, p, Coord::VRe, Coord::VIm, cfg)?;
    let c = Complex::new(T::zero(), T::from_f64(8.0) * pi_m::<T>(f));
    Ok(c * (dtb + scale(dvb, p.a())) + second(f, p, Second::VbarVbar, cfg)?)
}

/// `Δ = 4πima ∂/∂v̄ − ∂²/∂v∂v̄`.
pub fn apply_delta<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, cfg: &DiffConfig) -> Result<Complex<T>> {
    let dvb = wirtinger(f, p, Var::VBar, cfg)?;
    let c = Complex::new(T::zero(), T::from_f64(4.0) * pi_m::<T>(f) * p.a());
    Ok(c * dvb - second(f, p, Second::VVbar, cfg)?)
}

/// `θ_f = −2i y^{1/2} e^{4πma²y} ∂f/∂v̄`.
pub fn theta_map<T: Real>(f: &FunctionHandle, p: &DomainPoint<T>, cfg: &DiffConfig) -> Result<Complex<T>> {
    let dvb = wirtinger(f, p, Var::VBar, cfg)?;
    let (y, a) = (p.y(), p.a());
    let w = T::from_f64(4.0) * pi_m::<T>(f) * a * a * y;
    let factor = Complex::new(T::zero(), -T::from_f64(2.0) * y.sqrt()) * cexp(real(w));
    Ok(factor * dvb)
}
