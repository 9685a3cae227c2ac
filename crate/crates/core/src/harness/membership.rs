use num_complex::Complex;

use super::cloud::SampleCloud;
use super::report::{mixed_err, rel_err, CheckReport, Metric, SuiteParams};
use crate::calculus::{
    apply_d, apply_dbar, apply_delta, second, u_holomorphy_defect, wirtinger, DiffConfig, FunctionHandle, Second, Var,
};
use crate::complex::{conj, e2pi, lower, real, scale};
use crate::dd::DoubleDouble as Dd;
use crate::error::Result;
use crate::numeric::{DomainPoint, HalfInt};
use crate::real::Real;
use crate::theta::jacobi_theta_ab;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Space {
    F,
    G,
}

impl Space {
    fn tag(self) -> &'static str {
        match self {
            Space::F => "F",
            Space::G => "G",
        }
    }
}

const SHIFTS: [i64; 4] = [-1, 0, 1, 2];

fn h(x: HalfInt) -> Dd {
    x.to_real::<Dd>()
}

/// A sampled instance `f(shifted) = phase · f(base)` of an elliptic law.
struct Instance {
    base: DomainPoint<Dd>,
    shifted: DomainPoint<Dd>,
    phase: Complex<Dd>,
}

/// Worst `|f(shifted) − phase·f(base)| / max(1, |phase·f(base)|)`, in
/// double-double. Far from the fundamental cell the modified functions are
/// small differences of very large terms, so each instance is centred on the
/// sample: the base point is moved back by about half the shift, using the
/// same law's lattice, and both evaluations stay within one period of it.
fn elliptic_metric<S>(f: &FunctionHandle, cloud: &SampleCloud, instances: S) -> Metric
where
    S: Fn(&DomainPoint<Dd>) -> Result<Vec<Instance>> + Sync,
{
    Metric::over(cloud.points(), |p| {
        let p = p.lift::<Dd>();
        let mut worst = 0.0f64;
        for inst in instances(&p)? {
            let lhs = f.eval(&inst.shifted)?;
            let rhs = inst.phase * f.eval(&inst.base)?;
            let err = lower(lhs - rhs).norm() / lower(rhs).norm().max(1.0);
            worst = worst.max(err);
        }
        Ok(worst)
    })
}

fn moved(p: &DomainPoint<Dd>, du: Complex<Dd>, dv: Complex<Dd>) -> Result<DomainPoint<Dd>> {
    DomainPoint::new(p.tau(), p.u() + du, p.v() + dv, p.t())
}

/// How many steps to move the base back for a shift of `n` steps.
fn back(n: i64) -> i64 {
    n.div_euclid(2)
}

fn periodicity(f: &FunctionHandle, s: HalfInt, cloud: &SampleCloud) -> Metric {
    elliptic_metric(f, cloud, |p| {
        let mut out = Vec::new();
        for j in SHIFTS {
            for k in SHIFTS {
                let base = moved(p, real(Dd::from_i64(-back(j))), real(Dd::from_i64(-back(k))))?;
                let shifted = moved(&base, real(Dd::from_i64(j)), real(Dd::from_i64(k)))?;
                let phase = e2pi(real(h(s) * Dd::from_i64(j + k)));
                out.push(Instance { base, shifted, phase });
            }
        }
        Ok(out)
    })
}

fn quasi_periodicity(space: Space, f: &FunctionHandle, m: HalfInt, sp: HalfInt, cloud: &SampleCloud) -> Metric {
    elliptic_metric(f, cloud, |p| {
        let tau = p.tau();
        let mr = h(m);
        let two = Dd::from_f64(2.0);
        let mut out = Vec::new();
        for j in SHIFTS {
            for k in SHIFTS {
                let (jd, kd) = (Dd::from_i64(j), Dd::from_i64(k));
                let base = moved(p, scale(tau, Dd::from_i64(-back(j))), scale(tau, Dd::from_i64(-back(k))))?;
                let shifted = moved(&base, scale(tau, jd), scale(tau, kd))?;
                let (u, v) = (base.u(), base.v());
                let phase = match space {
                    // e^{2πi(s′(j+k) + 2m(kv − ju))} q^{m(k² − j²)}
                    Space::F => e2pi(
                        real(h(sp) * Dd::from_i64(j + k))
                            + scale(scale(v, kd) - scale(u, jd), two * mr)
                            + scale(tau, mr * Dd::from_i64(k * k - j * j)),
                    ),
                    // e^{2πi(s′(j+k) + 2m(kv̄ − ju))} e^{2πim(k²τ̄ − j²τ)}
                    Space::G => e2pi(
                        real(h(sp) * Dd::from_i64(j + k))
                            + scale(scale(conj(v), kd) - scale(u, jd), two * mr)
                            + scale(scale(conj(tau), Dd::from_i64(k * k)) - scale(tau, Dd::from_i64(j * j)), mr),
                    ),
                };
                out.push(Instance { base, shifted, phase });
            }
        }
        Ok(out)
    })
}

fn half_period(f: &FunctionHandle, m: HalfInt, cloud: &SampleCloud) -> Metric {
    elliptic_metric(f, cloud, |p| {
        let step = real(Dd::from_f64(1.0) / (Dd::from_f64(2.0) * h(m)));
        let mut out = Vec::new();
        for k in 1..=3 {
            let b = scale(step, Dd::from_i64(-back(k)));
            let base = moved(p, b, b)?;
            let d = scale(step, Dd::from_i64(k));
            let shifted = moved(&base, d, d)?;
            out.push(Instance { base, shifted, phase: real(Dd::from_f64(1.0)) });
        }
        Ok(out)
    })
}

fn half_quasi_period(space: Space, f: &FunctionHandle, m: HalfInt, cloud: &SampleCloud) -> Metric {
    elliptic_metric(f, cloud, |p| {
        let tau = p.tau();
        let step = scale(tau, Dd::from_f64(1.0) / (Dd::from_f64(2.0) * h(m)));
        let mut out = Vec::new();
        for k in 1..=3 {
            let kd = Dd::from_i64(k);
            let b = scale(step, Dd::from_i64(-back(k)));
            let base = moved(p, b, b)?;
            let d = scale(step, kd);
            let shifted = moved(&base, d, d)?;
            let (u, v) = (base.u(), base.v());
            let phase = match space {
                Space::F => e2pi(scale(v - u, kd)),
                // e^{2πik(v̄ − u)} e^{πik²(τ̄ − τ)/2m}
                Space::G => e2pi(
                    scale(conj(v) - u, kd) + scale(conj(tau) - tau, kd * kd / (Dd::from_f64(4.0) * h(m))),
                ),
            };
            out.push(Instance { base, shifted, phase });
        }
        Ok(out)
    })
}

fn degree_metric(f: &FunctionHandle, cloud: &SampleCloud) -> Metric {
    let delta = Complex::new(0.31, -0.17);
    let m = f.degree().to_f64();
    Metric::over(cloud.points(), |p| {
        let a = f.eval(&p.with_t(p.t() + delta))?;
        let b = f.eval(p)? * e2pi(delta * m);
        Ok(mixed_err(a, b))
    })
}

/// `ϑ₁₁(v−u)ϑ₁₁(v+u)F` stays bounded as `v` approaches either sheet of the
/// singular locus: `|G(δ/10)| / (|G(δ)| + |G(p)|)` is `O(1)`, while an extra
/// pole would push it to about 10.
fn locus_regularity(f: &FunctionHandle, cloud: &SampleCloud) -> Metric {
    let pts: Vec<_> = cloud.points().iter().take(5).copied().collect();
    Metric::over(&pts, |p| {
        let tr = f.truncation();
        let g = |q: &DomainPoint<f64>| -> Result<Complex<f64>> {
            let a = jacobi_theta_ab(1, 1, q.tau(), q.v() - q.u(), tr)?.value;
            let b = jacobi_theta_ab(1, 1, q.tau(), q.v() + q.u(), tr)?.value;
            Ok(a * b * f.eval(q)?)
        };
        let here = g(p)?.norm();
        let dir = Complex::from_polar(1.0, 0.63);
        let mut worst = 0.0f64;
        for sheet in [1.0, -1.0] {
            let near = |d: f64| g(&p.with_v(p.u() * sheet + dir * d));
            let (g1, g2) = (near(1e-3)?, near(1e-4)?);
            worst = worst.max(g2.norm() / (g1.norm() + here + f64::MIN_POSITIVE));
        }
        Ok(worst)
    })
}

/// `|op f| / (1 + |f|)`, differentiated in double-double: the modified
/// functions lose two or three digits to internal cancellation, which `f64`
/// second differences at the default step cannot absorb.
fn fd_metric<O>(f: &FunctionHandle, cloud: &SampleCloud, op: O) -> Metric
where
    O: Fn(&DomainPoint<Dd>) -> Result<Complex<Dd>> + Sync,
{
    Metric::over(cloud.points(), |p| {
        let q = p.lift::<Dd>();
        Ok(rel_err(lower(op(&q)?), lower(f.eval(&q)?).norm()))
    })
}

fn header(f: &FunctionHandle, space: Space, params: &SuiteParams) -> String {
    format!("{} in {}[{}; {}, {}]: ", f.label(), space.tag(), params.m, params.s, params.sprime)
}

/// Samples conditions (F1)–(F5) on the cloud. Elliptic conditions are
/// evaluated in double-double because the phase factors reach `e^{±40}`.
pub fn check_f_membership(f: &FunctionHandle, params: &SuiteParams, cloud: &SampleCloud) -> CheckReport {
    let (m, s, sp) = (params.m, params.s, params.sprime);
    let cfg = params.diff;
    let tol = params.tolerances;
    let mut r = CheckReport::new("f-membership", params);
    let pre = header(f, Space::F, params);
    if f.degree() != m {
        r.expect(format!("{pre}(F1) degree"), Metric { max: f64::INFINITY, error: Some(format!("handle has degree {}", f.degree())) }, tol.series);
        return r;
    }
    r.expect(format!("{pre}(F1) degree"), degree_metric(f, cloud), tol.series);
    r.expect(format!("{pre}(F2) holomorphic in u"), fd_metric(f, cloud, |p| u_holomorphy_defect(f, p, &cfg)), tol.first_derivative);
    r.expect(format!("{pre}(F2) theta11 pair clears the poles"), locus_regularity(f, cloud), 2.0);
    r.expect(format!("{pre}(F3)(i)"), periodicity(f, s, cloud), tol.series);
    r.expect(format!("{pre}(F3)(ii)"), quasi_periodicity(Space::F, f, m, sp, cloud), tol.series);
    r.expect(format!("{pre}(F4)(i)"), half_period(f, m, cloud), tol.series);
    r.expect(format!("{pre}(F4)(ii)"), half_quasi_period(Space::F, f, m, cloud), tol.series);
    r.expect(format!("{pre}(F5) D"), fd_metric(f, cloud, |p| apply_d(f, p, &cfg)), tol.second_derivative);
    r.expect(format!("{pre}(F5) Dbar"), fd_metric(f, cloud, |p| apply_dbar(f, p, &cfg)), tol.second_derivative);
    r.expect(format!("{pre}(F5) Delta"), fd_metric(f, cloud, |p| apply_delta(f, p, &cfg)), tol.second_derivative);
    r
}

/// `(8πim ∂/∂τ̄ + ∂²/∂v̄²) g`, the second operator of (G5).
pub fn g5_antiholomorphic_heat<T: Real>(g: &FunctionHandle, p: &DomainPoint<T>, cfg: &DiffConfig) -> Result<Complex<T>> {
    let c = Complex::new(T::zero(), T::from_f64(8.0) * T::pi() * g.degree().to_real::<T>());
    Ok(c * wirtinger(g, p, Var::TauBar, cfg)? + second(g, p, Second::VbarVbar, cfg)?)
}

pub fn check_g_membership(g: &FunctionHandle, params: &SuiteParams, cloud: &SampleCloud) -> CheckReport {
    let (m, s, sp) = (params.m, params.s, params.sprime);
    let cfg = params.diff;
    let tol = params.tolerances;
    let mut r = CheckReport::new("g-membership", params);
    let pre = header(g, Space::G, params);
    if g.degree() != m {
        r.expect(format!("{pre}(G1) degree"), Metric { max: f64::INFINITY, error: Some(format!("handle has degree {}", g.degree())) }, tol.series);
        return r;
    }
    r.expect(format!("{pre}(G1) degree"), degree_metric(g, cloud), tol.series);
    r.expect(format!("{pre}(G2) holomorphic in u"), fd_metric(g, cloud, |p| u_holomorphy_defect(g, p, &cfg)), tol.first_derivative);
    r.expect(format!("{pre}(G2) holomorphic in conj(v)"), fd_metric(g, cloud, |p| wirtinger(g, p, Var::V, &cfg)), tol.first_derivative);
    r.expect(format!("{pre}(G3)(i)"), periodicity(g, s, cloud), tol.series);
    r.expect(format!("{pre}(G3)(ii)"), quasi_periodicity(Space::G, g, m, sp, cloud), tol.series);
    r.expect(format!("{pre}(G4)(i)"), half_period(g, m, cloud), tol.series);
    r.expect(format!("{pre}(G4)(ii)"), half_quasi_period(Space::G, g, m, cloud), tol.series);
    r.expect(format!("{pre}(G5) D"), fd_metric(g, cloud, |p| apply_d(g, p, &cfg)), tol.second_derivative);
    r.expect(
        format!("{pre}(G5) 8 pi i m d/dtau_bar + d2/dv_bar2"),
        fd_metric(g, cloud, |p| g5_antiholomorphic_heat(g, p, &cfg)),
        tol.second_derivative,
    );
    r
}

pub(crate) fn f_quasi_periodicity(f: &FunctionHandle, m: HalfInt, sp: HalfInt, cloud: &SampleCloud) -> Metric {
    quasi_periodicity(Space::F, f, m, sp, cloud)
}
