use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use super::diff::{apply_d, apply_dbar, apply_delta, theta_map, DiffConfig};
use super::sl2::{slash_point, Sl2};
use crate::complex::{abs_f64, e2pi, lift, real, scale};
use crate::error::{Error, Result};
use crate::mock::{phi, phi_add, phi_tilde_uv, superdenominator_a, superdenominator_b, theta_pair_uv, zwegers_r, MockIndex};
use crate::numeric::{DomainPoint, Evaluated, HalfInt, Truncation};
use crate::real::Real;
use crate::theta::{theta_jm, Sign, ThetaIndex};

pub type CustomFn = dyn Fn(&DomainPoint<f64>) -> Result<Complex<f64>> + Send + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    D,
    Dbar,
    Delta,
}

/// Coefficients of `e^{2πimt} exp(αu + βv + γv̄ + δτ + ετ̄)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWave {
    pub u: Complex<f64>,
    pub v: Complex<f64>,
    pub v_bar: Complex<f64>,
    pub tau: Complex<f64>,
    pub tau_bar: Complex<f64>,
}

#[derive(Clone)]
pub enum Family {
    Phi(MockIndex),
    PhiTilde(MockIndex),
    /// The modifier in `(u, v)` coordinates.
    PhiAdd(MockIndex),
    SuperA,
    SuperB { a: u8, b: u8 },
    ThetaPair(MockIndex),
    /// `e^{2πimt} Θ^±_{j,m}(τ, 2u)`.
    HeatTheta(ThetaIndex),
    /// `e^{2πimt} R^±_{j,m}(τ, v)`.
    Zwegers { sign: Sign, j: HalfInt },
    /// `e^{2πimt} (m/y)^{1/2} e^{−4πmya²}`.
    FM,
    PlaneWave(PlaneWave),
    Slash(Sl2, FunctionHandle),
    Op(Operator, FunctionHandle, DiffConfig),
    ThetaMap(FunctionHandle, DiffConfig),
    Scaled(Complex<f64>, FunctionHandle),
    Difference(FunctionHandle, FunctionHandle),
    /// Evaluated in `f64` whatever the scalar type of the caller.
    Custom(Arc<CustomFn>),
}

/// A function on the domain of a fixed degree `m`, i.e. carrying the factor
/// `e^{2πimt}`. Cheap to clone.
#[derive(Clone)]
pub struct FunctionHandle {
    degree: HalfInt,
    label: String,
    family: Arc<Family>,
    truncation: Truncation,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionHandle({}, degree {})", self.label, self.degree)
    }
}

/// Fixed truncation keeps evaluations smooth in the point, which finite
/// differences need. 32 terms each way is ample for `Im τ ≥ 0.1` at `m ≤ 2`.
pub const HANDLE_HALFWIDTH: i64 = 32;

impl FunctionHandle {
    pub fn new(degree: HalfInt, label: impl Into<String>, family: Family) -> Result<Self> {
        if !degree.is_positive() {
            return Err(Error::Domain(format!("degree must be positive, got {degree}")));
        }
        Ok(Self { degree, label: label.into(), family: Arc::new(family), truncation: Truncation::fixed(HANDLE_HALFWIDTH) })
    }

    pub fn with_truncation(mut self, tr: Truncation) -> Self {
        self.truncation = tr;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn degree(&self) -> HalfInt {
        self.degree
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn family(&self) -> &Family {
        &self.family
    }
    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn phi(idx: MockIndex) -> Self {
        Self::new(idx.m, format!("phi{idx}"), Family::Phi(idx)).expect("index degree is positive")
    }
    pub fn phi_tilde(idx: MockIndex) -> Self {
        Self::new(idx.m, format!("phi_tilde{idx}"), Family::PhiTilde(idx)).expect("index degree is positive")
    }
    pub fn phi_add(idx: MockIndex) -> Self {
        Self::new(idx.m, format!("phi_add{idx}"), Family::PhiAdd(idx)).expect("index degree is positive")
    }
    pub fn theta_pair(idx: MockIndex) -> Self {
        Self::new(idx.m, format!("theta_pair{idx}"), Family::ThetaPair(idx)).expect("index degree is positive")
    }
    pub fn super_a() -> Self {
        Self::new(HalfInt::ONE, "R_A", Family::SuperA).expect("degree 1")
    }
    pub fn super_b(a: u8, b: u8) -> Self {
        Self::new(HalfInt::HALF, format!("R_B{a}{b}"), Family::SuperB { a, b }).expect("degree 1/2")
    }
    pub fn heat_theta(idx: ThetaIndex) -> Self {
        Self::new(idx.m(), format!("heat_theta{}[{},{}]", idx.sign(), idx.m(), idx.j()), Family::HeatTheta(idx))
            .expect("index degree is positive")
    }
    pub fn zwegers(sign: Sign, j: HalfInt, m: HalfInt) -> Result<Self> {
        Self::new(m, format!("R{sign}[{j},{m}]"), Family::Zwegers { sign, j })
    }
    pub fn f_m(m: HalfInt) -> Result<Self> {
        Self::new(m, format!("f_{m}"), Family::FM)
    }
    pub fn plane_wave(m: HalfInt, w: PlaneWave) -> Result<Self> {
        Self::new(m, "plane_wave", Family::PlaneWave(w))
    }
    pub fn custom(m: HalfInt, label: impl Into<String>, f: Arc<CustomFn>) -> Result<Self> {
        Self::new(m, label, Family::Custom(f))
    }

    pub fn slash(&self, a: Sl2) -> Self {
        self.derived(format!("{}|{a}", self.label), Family::Slash(a, self.clone()))
    }
    pub fn operator(&self, op: Operator, cfg: DiffConfig) -> Self {
        self.derived(format!("{op:?}({})", self.label), Family::Op(op, self.clone(), cfg))
    }
    pub fn theta_map(&self, cfg: DiffConfig) -> Self {
        self.derived(format!("theta_map({})", self.label), Family::ThetaMap(self.clone(), cfg))
    }
    pub fn scaled(&self, c: Complex<f64>) -> Self {
        self.derived(format!("({c})*{}", self.label), Family::Scaled(c, self.clone()))
    }
    pub fn minus(&self, other: &FunctionHandle) -> Result<Self> {
        if other.degree != self.degree {
            return Err(Error::Domain("difference of handles of different degree".into()));
        }
        Ok(self.derived(format!("{}-{}", self.label, other.label), Family::Difference(self.clone(), other.clone())))
    }

    fn derived(&self, label: String, family: Family) -> Self {
        Self { degree: self.degree, label, family: Arc::new(family), truncation: self.truncation }
    }

    pub fn eval<T: Real>(&self, p: &DomainPoint<T>) -> Result<Complex<T>> {
        self.eval_with_tail(p).map(|e| e.value)
    }

    pub fn eval_with_tail<T: Real>(&self, p: &DomainPoint<T>) -> Result<Evaluated<T>> {
        let tr = &self.truncation;
        let m = self.degree;
        let deg = || e2pi(scale(p.t(), m.to_real::<T>()));
        let r = match &*self.family {
            Family::Phi(idx) => {
                let (z1, z2) = p.z1z2();
                phi(idx, p.tau(), z1, z2, p.t(), tr)?
            }
            Family::PhiTilde(idx) => phi_tilde_uv(idx, p, tr)?,
            Family::PhiAdd(idx) => {
                let (z1, z2) = p.z1z2();
                phi_add(idx, p.tau(), z1, z2, p.t(), tr)?
            }
            Family::SuperA => superdenominator_a(p.tau(), p.u(), p.v(), p.t(), tr)?,
            Family::SuperB { a, b } => superdenominator_b(*a, *b, p.tau(), p.u(), p.v(), p.t(), tr)?,
            Family::ThetaPair(idx) => theta_pair_uv(idx, p, tr)?,
            Family::HeatTheta(idx) => {
                let z = scale(p.u(), T::from_f64(2.0));
                theta_jm(idx, p.tau(), z, real(T::zero()), tr)?.scale(deg())
            }
            Family::Zwegers { sign, j } => zwegers_r(*sign, *j, m, p.tau(), p.v(), tr)?.scale(deg()),
            Family::FM => {
                let mr = m.to_real::<T>();
                let (y, a) = (p.y(), p.a());
                let four_pi = T::from_f64(4.0) * T::pi();
                let f = (mr / y).sqrt() * (-four_pi * mr * y * a * a).exp();
                Evaluated::exact(scale(deg(), f))
            }
            Family::PlaneWave(w) => {
                let arg = lift::<T>(w.u) * p.u()
                    + lift::<T>(w.v) * p.v()
                    + lift::<T>(w.v_bar) * p.v().conj()
                    + lift::<T>(w.tau) * p.tau()
                    + lift::<T>(w.tau_bar) * p.tau().conj();
                Evaluated::exact(deg() * crate::complex::cexp(arg))
            }
            Family::Slash(a, inner) => {
                let (q, j) = slash_point(a, p)?;
                let v = inner.eval_with_tail(&q)?;
                v.scale(Complex::new(T::one(), T::zero()) / j)
            }
            Family::Op(op, inner, cfg) => {
                let v = match op {
                    Operator::D => apply_d(inner, p, cfg)?,
                    Operator::Dbar => apply_dbar(inner, p, cfg)?,
                    Operator::Delta => apply_delta(inner, p, cfg)?,
                };
                Evaluated::exact(v)
            }
            Family::ThetaMap(inner, cfg) => Evaluated::exact(theta_map(inner, p, cfg)?),
            Family::Scaled(c, inner) => inner.eval_with_tail(p)?.scale(lift(*c)),
            Family::Difference(f, g) => f.eval_with_tail(p)?.sub(g.eval_with_tail(p)?),
            Family::Custom(f) => {
                let v = f(&p.to_f64())?;
                Evaluated { value: lift(v), tail_bound: 0.0 }
            }
        };
        if !crate::complex::is_finite(r.value) {
            return Err(Error::Domain(format!("{} is not finite at the point (|value| = {})", self.label, abs_f64(r.value))));
        }
        Ok(r)
    }
}
