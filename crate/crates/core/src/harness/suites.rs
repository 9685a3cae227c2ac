use std::f64::consts::PI;

use num_complex::Complex;
use num_rational::Ratio;

use super::cloud::SampleCloud;
use super::membership::{check_f_membership, check_g_membership, f_quasi_periodicity};
use super::report::{mixed_err, rel_err, CheckReport, Metric, SuiteParams};
use super::span::span_ratio;
use crate::calculus::{
    apply_dbar, second, sl2_act, slash_point, theta_map, wirtinger, DiffConfig, FunctionHandle, Operator, PlaneWave,
    Second, Sl2, Var,
};
use crate::complex::lower;
use crate::dd::DoubleDouble as Dd;
use crate::error::{Error, Result};
use crate::mock::{change_coords_inverse, phi, superdenominator_a, zwegers_r, MockIndex};
use crate::numeric::{dedekind_eta, DomainPoint, HalfInt};
use crate::qexp::{order, product_identity_check, product_identity_variant, ProductVariant};
use crate::theta::{
    elliptic_shifted_z, jacobi_shift_reference, jacobi_shifted_z, jacobi_theta_ab, jacobi_theta_ab_via_theta,
    modular_transformed_point, theta_elliptic_reference, theta_jm, theta_modular_reference, EllipticShift, JacobiShift,
    ModularGen, Sign, ThetaIndex,
};

/// Suites accepted by [`run_identity_suite`].
pub const SUITES: &[&str] = &[
    "theta-elliptic",
    "theta-modular",
    "zwegers-dbar",
    "r-shift",
    "dv-bar-closed-form",
    "theta-pair-link",
    "denominator-A",
    "denominator-B",
    "product-identity",
    "covariance",
    "commutators",
    "modular-span",
    "f-membership",
    "g-membership",
];

const AB: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// The sample cloud a suite runs on, as derived from its parameters.
pub fn suite_cloud(params: &SuiteParams) -> SampleCloud {
    SampleCloud::new(params.seed, params.points, params.m)
}

pub fn run_identity_suite(name: &str, params: &SuiteParams) -> Result<CheckReport> {
    let cloud = suite_cloud(params);
    run_identity_suite_on(name, params, &cloud)
}

pub fn run_identity_suite_on(name: &str, params: &SuiteParams, cloud: &SampleCloud) -> Result<CheckReport> {
    let mut r = CheckReport::new(name, params);
    match name {
        "theta-elliptic" => theta_elliptic(&mut r, params, cloud)?,
        "theta-modular" => theta_modular(&mut r, params, cloud)?,
        "zwegers-dbar" => zwegers_dbar(&mut r, params, cloud)?,
        "r-shift" => r_shift(&mut r, params, cloud)?,
        "dv-bar-closed-form" => dv_bar_closed_form(&mut r, params, cloud)?,
        "theta-pair-link" => theta_pair_link(&mut r, params, cloud)?,
        "denominator-A" => denominator_a(&mut r, params, cloud),
        "denominator-B" => denominator_b(&mut r, params, cloud),
        "product-identity" => product_identity(&mut r, params, cloud)?,
        "covariance" => covariance(&mut r, params, cloud)?,
        "commutators" => commutators(&mut r, params, cloud)?,
        "modular-span" => modular_span(&mut r, params, cloud)?,
        "f-membership" => f_membership(&mut r, params, cloud)?,
        "g-membership" => g_membership(&mut r, params, cloud)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(r)
}

fn mock_index(params: &SuiteParams) -> Result<MockIndex> {
    MockIndex::new(params.sign, params.m, params.s)
}

/// Basis indices of Th^+_1, Th^+_2, Th^-_{1/2}, Th^-_{3/2}.
fn theta_basis() -> Vec<ThetaIndex> {
    let mut out = Vec::new();
    for (sign, m2) in [(Sign::Plus, 2), (Sign::Plus, 4), (Sign::Minus, 1), (Sign::Minus, 3)] {
        let start = if sign == Sign::Plus { 0 } else { 1 };
        for j2 in (start..2 * m2).step_by(2) {
            out.push(ThetaIndex::basis(sign, HalfInt::from_twice(j2), HalfInt::from_twice(m2)).expect("basis index"));
        }
    }
    out
}

fn zero() -> Complex<f64> {
    c(0.0, 0.0)
}

/// Theta checks use `z = u + v` from each sample.
fn theta_z(p: &DomainPoint<f64>) -> Complex<f64> {
    p.u() + p.v()
}

fn theta_elliptic(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let tr = params.truncation;
    let tol = 1e-11;
    let pts = cloud.points();
    r.expect(
        "theta_ab = Theta at (tau, 2z), theta11 with the factor i",
        Metric::over(pts, |p| {
            let mut worst = 0.0f64;
            for (a, b) in AB {
                let direct = jacobi_theta_ab(a, b, p.tau(), theta_z(p), &tr)?.value;
                let via = jacobi_theta_ab_via_theta(a, b, p.tau(), theta_z(p), &tr)?.value;
                worst = worst.max(mixed_err(via, direct));
            }
            Ok(worst)
        }),
        tol,
    );
    let shift_metric = |flip: bool| {
        Metric::over(pts, move |p| {
            let mut worst = 0.0f64;
            for (a, b) in AB {
                for n in [1, 2] {
                    for sh in [JacobiShift::Half(n), JacobiShift::HalfTau(n)] {
                        let z = theta_z(p);
                        let lhs = jacobi_theta_ab(a, b, p.tau(), jacobi_shifted_z(sh, p.tau(), z), &tr)?.value;
                        let mut rhs = jacobi_shift_reference(a, b, sh, p.tau(), z, &tr)?.value;
                        if flip {
                            rhs = -rhs;
                        }
                        worst = worst.max(mixed_err(lhs, rhs));
                    }
                }
            }
            Ok(worst)
        })
    };
    r.expect("theta_ab half-period shifts, n = 1, 2", shift_metric(false), tol);
    r.expect_violation("half-period shifts with the sign flipped", shift_metric(true), tol);

    let basis = theta_basis();
    r.expect(
        "Theta elliptic laws under z+a (a*m integral) and z+tau/m",
        Metric::over(pts, |p| {
            let mut worst = 0.0f64;
            let (tau, z, t) = (p.tau(), theta_z(p), p.t());
            for idx in &basis {
                let inv_m = Ratio::new(2, idx.m().twice());
                for sh in [EllipticShift::Lattice(Ratio::from_integer(2)), EllipticShift::Lattice(inv_m), EllipticShift::TauOverM] {
                    let lhs = theta_jm(idx, tau, elliptic_shifted_z(idx, sh, tau, z), t, &tr)?.value;
                    let rhs = theta_elliptic_reference(idx, sh, tau, z, t, &tr)?.value;
                    worst = worst.max(mixed_err(lhs, rhs));
                }
            }
            Ok(worst)
        }),
        tol,
    );
    r.expect_violation(
        "theta11 = Theta^-_{1/2,1/2}(2z) without the factor i",
        Metric::over(pts, |p| {
            let direct = jacobi_theta_ab(1, 1, p.tau(), theta_z(p), &tr)?.value;
            let idx = ThetaIndex::new(Sign::Minus, HalfInt::HALF, HalfInt::HALF)?;
            let bare = theta_jm(&idx, p.tau(), theta_z(p) * 2.0, zero(), &tr)?.value;
            Ok(mixed_err(bare, direct))
        }),
        tol,
    );
    Ok(())
}

fn theta_modular(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let tr = params.truncation;
    let tol = params.tolerances.series;
    let basis = theta_basis();
    let metric = |gen: ModularGen, flip: bool| {
        Metric::over(cloud.points(), |p| {
            let mut worst = 0.0f64;
            let z = theta_z(p);
            let (tau2, z2, t2) = modular_transformed_point(gen, p.tau(), z, p.t());
            for idx in &basis {
                let lhs = theta_jm(idx, tau2, z2, t2, &tr)?.value;
                let mut rhs = theta_modular_reference(idx, gen, p.tau(), z, p.t(), &tr)?.value;
                if flip {
                    rhs = -rhs;
                }
                worst = worst.max(mixed_err(lhs, rhs));
            }
            Ok(worst)
        })
    };
    r.expect("Theta under S", metric(ModularGen::S, false), tol);
    r.expect("Theta under T", metric(ModularGen::T, false), tol);
    r.expect_violation("Theta under S with the sign flipped", metric(ModularGen::S, true), tol);
    Ok(())
}

fn zwegers_handles(params: &SuiteParams) -> Result<Vec<FunctionHandle>> {
    mock_index(params)?
        .j_range()
        .map(|j| FunctionHandle::zwegers(params.sign, j, params.m).map(|h| h.with_truncation(params.truncation)))
        .collect()
}

/// `4πim(∂/∂τ̄ + a ∂/∂v̄) + ∂²/∂v̄²`: the operator with the coefficient halved.
fn dbar_halved(f: &FunctionHandle, p: &DomainPoint<f64>, cfg: &DiffConfig) -> Result<Complex<f64>> {
    let k = c(0.0, 4.0 * PI * f.degree().to_f64());
    let a = p.a();
    Ok(k * (wirtinger(f, p, Var::TauBar, cfg)? + wirtinger(f, p, Var::VBar, cfg)? * a)
        + second(f, p, Second::VbarVbar, cfg)?)
}

fn zwegers_dbar(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let cfg = params.diff;
    let tol = params.tolerances.second_derivative;
    for f in zwegers_handles(params)? {
        let m = Metric::over(cloud.points(), |p| Ok(rel_err(apply_dbar(&f, p, &cfg)?, f.eval(p)?.norm())));
        r.expect(format!("Dbar {}", f.label()), m, tol);
    }
    let f = &zwegers_handles(params)?[0];
    let m = Metric::over(cloud.points(), |p| Ok(rel_err(dbar_halved(f, p, &cfg)?, f.eval(p)?.norm())));
    r.expect_violation(format!("Dbar {} with 4 pi i m in place of 8 pi i m", f.label()), m, tol);
    Ok(())
}

fn r_shift(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let tr = params.truncation;
    let tol = params.tolerances.series;
    let idx = mock_index(params)?;
    let m = params.m;
    // shifts a = k/m, so that a·m = k
    let metric = |flip: bool| {
        Metric::over(cloud.points(), |p| {
            let mut worst = 0.0f64;
            for j in idx.j_range() {
                for k in [1i64, 2] {
                    let a = k as f64 / m.to_f64();
                    let base = zwegers_r(params.sign, j, m, p.tau(), p.v(), &tr)?.value;
                    let lhs = zwegers_r(params.sign, j, m, p.tau(), p.v() + a / 2.0, &tr)?.value;
                    let ph = Complex::from_polar(1.0, PI * j.to_f64() * a);
                    let rhs = if flip { -ph * base } else { ph * base };
                    worst = worst.max(mixed_err(lhs, rhs));
                }
            }
            Ok(worst)
        })
    };
    r.expect("R(tau, v + a/2) = e^{pi i j a} R for a*m integral", metric(false), tol);
    r.expect_violation("R shift with the sign flipped", metric(true), tol);

    let add = FunctionHandle::phi_add(idx).with_truncation(tr);
    r.expect(
        format!("{} invariant under (u, v) + a/2", add.label()),
        Metric::over(cloud.points(), |p| {
            let mut worst = 0.0f64;
            for k in [1i64, 2] {
                let a = k as f64 / m.to_f64();
                let q = DomainPoint::new(p.tau(), p.u() + a / 2.0, p.v() + a / 2.0, p.t())?;
                worst = worst.max(mixed_err(add.eval(&q)?, add.eval(p)?));
            }
            Ok(worst)
        }),
        tol,
    );
    Ok(())
}

fn dv_bar_closed_form(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let cfg = params.diff;
    let tr = params.truncation;
    let tol = params.tolerances.first_derivative;
    let fm = FunctionHandle::f_m(params.m)?;
    let metric = |f: &FunctionHandle, j: HalfInt, k: f64| {
        Metric::over(cloud.points(), |p| {
            let d = wirtinger(f, p, Var::VBar, &cfg)?;
            let th = ThetaIndex::new(params.sign, j, params.m)?;
            let theta = theta_jm(&th, -p.tau().conj(), p.v().conj() * 2.0, zero(), &tr)?.value;
            let want = c(0.0, k) * fm.eval(p)? * theta;
            Ok(rel_err(d - want, want.norm()))
        })
    };
    let idx = mock_index(params)?;
    for (j, f) in idx.j_range().zip(zwegers_handles(params)?) {
        r.expect(format!("dR/dvbar closed form, {}", f.label()), metric(&f, j, 2.0), tol);
    }
    let f = &zwegers_handles(params)?[0];
    r.expect_violation("dR/dvbar closed form with the sign flipped", metric(f, params.s, -2.0), tol);
    Ok(())
}

fn theta_pair_link(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let cfg = params.diff;
    let tol = params.tolerances.first_derivative;
    let idx = mock_index(params)?;
    let f = FunctionHandle::phi_tilde(idx).with_truncation(params.truncation);
    let g = FunctionHandle::theta_pair(idx).with_truncation(params.truncation);
    let root = params.m.to_f64().sqrt();
    let metric = |k: f64| {
        Metric::over(cloud.points(), |p| {
            let lhs = theta_map(&f, p, &cfg)?;
            let want = g.eval(p)? * (k * root);
            Ok(rel_err(lhs - want, want.norm()))
        })
    };
    r.expect(format!("theta-map of {} = -2 sqrt(m) {}", f.label(), g.label()), metric(-2.0), tol);
    r.expect_violation("theta-map with +2 sqrt(m)", metric(2.0), tol);
    Ok(())
}

/// `φ(τ,u,v,t) − φ(τ,−u,v,t)`, i.e. `Φ(z₁,z₂) − Φ(−z₂,−z₁)`, for `(+,1,0)`.
pub fn phi_odd_part(p: &DomainPoint<Dd>, tr: &crate::numeric::Truncation) -> Result<Complex<Dd>> {
    let idx = MockIndex::new(Sign::Plus, HalfInt::ONE, HalfInt::ZERO)?;
    let (z1, z2) = change_coords_inverse(p.u(), p.v());
    let a = phi(&idx, p.tau(), z1, z2, p.t(), tr)?.value;
    let b = phi(&idx, p.tau(), -z2, -z1, p.t(), tr)?.value;
    Ok(a - b)
}

/// Points of the cloud moved to `τ ≈ 3i`, where both sides converge fast.
pub fn denominator_points(cloud: &SampleCloud) -> Vec<DomainPoint<f64>> {
    cloud.retarget(|tau| c(0.1 * tau.re, 3.0))
}

/// `max |(φ(u) − φ(−u)) − k·R̂^A| / max(1, |k·R̂^A|)` over the points.
pub fn denominator_a_metric(points: &[DomainPoint<f64>], k: Complex<f64>, params: &SuiteParams) -> Metric {
    let tr = crate::numeric::Truncation::extended();
    let _ = params;
    Metric::over(points, |p| {
        let p = p.lift::<Dd>();
        let lhs = lower(phi_odd_part(&p, &tr)?);
        let ra = lower(superdenominator_a(p.tau(), p.u(), p.v(), p.t(), &tr)?.value);
        Ok(mixed_err(lhs, ra * k))
    })
}

fn denominator_a(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) {
    let pts = denominator_points(cloud);
    let tol = 1e-11;
    r.expect("phi(u) - phi(-u) = -i R^A at tau near 3i", denominator_a_metric(&pts, c(0.0, -1.0), params), tol);
    r.expect_violation("phi(u) - phi(-u) = +i R^A", denominator_a_metric(&pts, c(0.0, 1.0), params), tol);
}

fn half(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn denominator_b(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) {
    let _ = cloud;
    for (a, b) in AB {
        let p = sub_params(params, half(1), half(i64::from(a)), half(i64::from(b)));
        let f = FunctionHandle::super_b(a, b).with_truncation(params.truncation);
        let rep = check_f_membership(&f, &p, &suite_cloud(&p));
        r.absorb("", rep);
    }
    let p = sub_params(params, half(1), half(1), half(1));
    let f = FunctionHandle::super_b(1, 1).with_truncation(params.truncation);
    let m = f_quasi_periodicity(&f, p.m, half(2), &suite_cloud(&p));
    r.expect_violation(format!("{} against (F3)(ii) with s' = 1", f.label()), m, params.tolerances.series);
}

fn sub_params(params: &SuiteParams, m: HalfInt, s: HalfInt, sprime: HalfInt) -> SuiteParams {
    SuiteParams {
        m,
        s,
        sprime,
        sign: if sprime.is_integer() { Sign::Plus } else { Sign::Minus },
        ..params.clone()
    }
}

fn product_identity(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let exact = product_identity_check(order(20))?;
    r.expect(
        "theta00 theta01 theta10 theta11 = eta^3 theta11(2z), exact to q^20 (residual terms)",
        Metric { max: exact.residual_terms as f64, error: None },
        0.0,
    );
    let dropped = product_identity_variant(order(20), ProductVariant::DropFactor)?;
    r.expect_violation(
        "exact product with theta01 dropped",
        Metric { max: dropped.residual_terms as f64, error: None },
        0.0,
    );
    let tr = params.truncation;
    let metric = |skip: Option<(u8, u8)>| {
        Metric::over(cloud.points(), move |p| {
            let z = theta_z(p);
            let mut lhs = c(1.0, 0.0);
            for ab in AB {
                if Some(ab) != skip {
                    lhs *= jacobi_theta_ab(ab.0, ab.1, p.tau(), z, &tr)?.value;
                }
            }
            let eta = dedekind_eta(p.tau(), &tr)?.value;
            let rhs = eta * eta * eta * jacobi_theta_ab(1, 1, p.tau(), z * 2.0, &tr)?.value;
            Ok(mixed_err(lhs, rhs))
        })
    };
    r.expect("product identity at sampled points", metric(None), params.tolerances.series);
    r.expect_violation("product identity with theta01 dropped", metric(Some((0, 1))), params.tolerances.series);
    Ok(())
}

fn probe_wave() -> PlaneWave {
    PlaneWave { u: c(0.3, 0.2), v: c(-0.4, 0.5), v_bar: c(0.2, -0.3), tau: c(0.1, 0.2), tau_bar: c(-0.2, 0.1) }
}

/// Weight of the operator under the slash action: `j²`, `j̄²` and `|j|²`.
fn op_weight(op: Operator, j: Complex<f64>) -> Complex<f64> {
    match op {
        Operator::D => j * j,
        Operator::Dbar => j.conj() * j.conj(),
        Operator::Delta => c(j.norm_sqr(), 0.0),
    }
}

/// `max |(Xf)|_A − w(X)·X(f|_A)| / (1 + max)` over the points, differenced
/// in double-double.
pub fn covariance_metric(
    f: &FunctionHandle,
    a: Sl2,
    op: Operator,
    points: &[DomainPoint<f64>],
    cfg: &DiffConfig,
    weight: impl Fn(Operator, Complex<f64>) -> Complex<f64> + Sync,
) -> Metric {
    let xf = f.operator(op, *cfg);
    let xfa = f.slash(a).operator(op, *cfg);
    Metric::over(points, |p| {
        let q = p.lift::<Dd>();
        let (_, j) = slash_point(&a, &q)?;
        let lhs = lower(sl2_act(&xf, &a, &q)?);
        let rhs = weight(op, lower(j)) * lower(xfa.eval(&q)?);
        Ok((lhs - rhs).norm() / (1.0 + lhs.norm().max(rhs.norm())))
    })
}

const GENERATORS: [(Sl2, &str); 3] = [(Sl2::S, "S"), (Sl2::T, "T"), (Sl2 { a: 0, b: -1, c: 1, d: 1 }, "ST")];
const OPS: [Operator; 3] = [Operator::D, Operator::Dbar, Operator::Delta];

fn covariance(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let cfg = params.diff;
    let tol = params.tolerances.covariance;
    let f = FunctionHandle::phi_tilde(mock_index(params)?).with_truncation(params.truncation);
    let wave = FunctionHandle::plane_wave(params.m, probe_wave())?;
    for g in [&f, &wave] {
        for (a, name) in GENERATORS {
            for op in OPS {
                let m = covariance_metric(g, a, op, cloud.points(), &cfg, op_weight);
                r.expect(format!("{op:?} covariance under {name} on {}", g.label()), m, tol);
            }
        }
    }
    let wrong = |op: Operator, j: Complex<f64>| if op == Operator::Delta { j * j } else { op_weight(op, j) };
    let m = covariance_metric(&wave, Sl2::S, Operator::Delta, cloud.points(), &cfg, wrong);
    r.expect_violation(format!("Delta covariance under S on {} with weight j^2", wave.label()), m, tol);
    Ok(())
}

/// Nested steps for commutators evaluated in `f64`.
pub fn commutator_configs() -> (DiffConfig, DiffConfig) {
    (DiffConfig::with_step(1e-3), DiffConfig::with_step(1e-2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Commutator {
    DbarD,
    DeltaD,
    DeltaDbar,
}

impl Commutator {
    pub const ALL: [Commutator; 3] = [Commutator::DbarD, Commutator::DeltaD, Commutator::DeltaDbar];

    fn parts(self) -> (Operator, Operator, f64) {
        match self {
            Commutator::DbarD => (Operator::Dbar, Operator::D, 16.0),
            Commutator::DeltaD => (Operator::Delta, Operator::D, 8.0),
            Commutator::DeltaDbar => (Operator::Delta, Operator::Dbar, -8.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Commutator::DbarD => "[Dbar, D] = 16 pi i m/(tau - taubar) Delta",
            Commutator::DeltaD => "[Delta, D] = 8 pi i m/(tau - taubar) Delta",
            Commutator::DeltaDbar => "[Delta, Dbar] = -8 pi i m/(tau - taubar) Delta",
        }
    }
}

/// `|[X, Y]f − k·Δf| / (1 + |Δf| + |f|)`, where `k = κπim/(τ−τ̄)`. `sign`
/// multiplies `k`, so `-1.0` gives the negative control.
pub fn commutator_metric(
    f: &FunctionHandle,
    which: Commutator,
    points: &[DomainPoint<f64>],
    inner: DiffConfig,
    outer: DiffConfig,
    sign: f64,
) -> Metric {
    let (x, y, kappa) = which.parts();
    let xy = f.operator(y, inner).operator(x, outer);
    let yx = f.operator(x, inner).operator(y, outer);
    let delta = f.operator(Operator::Delta, inner);
    let m = f.degree().to_f64();
    Metric::over(points, |p| {
        let tau = p.tau();
        let k = c(0.0, sign * kappa * PI * m) / (tau - tau.conj());
        let d = delta.eval(p)?;
        let res = xy.eval(p)? - yx.eval(p)? - k * d;
        Ok(res.norm() / (1.0 + d.norm() + f.eval(p)?.norm()))
    })
}

/// Same metric with double-double nested differences; only cheap functions.
pub fn commutator_metric_dd(f: &FunctionHandle, which: Commutator, points: &[DomainPoint<f64>], cfg: DiffConfig, sign: f64) -> Metric {
    let (x, y, kappa) = which.parts();
    let xy = f.operator(y, cfg).operator(x, cfg);
    let yx = f.operator(x, cfg).operator(y, cfg);
    let delta = f.operator(Operator::Delta, cfg);
    let m = f.degree().to_f64();
    Metric::over(points, |p| {
        let q = p.lift::<Dd>();
        let tau = p.tau();
        let k = c(0.0, sign * kappa * PI * m) / (tau - tau.conj());
        let d = lower(delta.eval(&q)?);
        let res = lower(xy.eval(&q)?) - lower(yx.eval(&q)?) - k * d;
        Ok(res.norm() / (1.0 + d.norm() + f.eval(p)?.norm()))
    })
}

fn commutators(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let tol = params.tolerances.commutator;
    let wave = FunctionHandle::plane_wave(params.m, probe_wave())?;
    let f = FunctionHandle::phi_tilde(mock_index(params)?).with_truncation(params.truncation);
    let (inner, outer) = commutator_configs();
    // nested differences cost the square of a single operator; a few points suffice
    let few: Vec<_> = cloud.points().iter().take(3).copied().collect();
    for which in Commutator::ALL {
        r.expect(
            format!("{} on {}", which.name(), wave.label()),
            commutator_metric_dd(&wave, which, &few, DiffConfig::default(), 1.0),
            tol,
        );
        r.expect(format!("{} on {}", which.name(), f.label()), commutator_metric(&f, which, &few, inner, outer, 1.0), tol);
    }
    r.expect_violation(
        format!("{} with the sign flipped, on {}", Commutator::DbarD.name(), wave.label()),
        commutator_metric_dd(&wave, Commutator::DbarD, &few, DiffConfig::default(), -1.0),
        tol,
    );
    Ok(())
}

/// Evidence for the modular statements: constancy of `φ̃|_S / φ̃` when
/// `s = s′`, integer `s`-periodicity, and membership of `φ̃|_T` in the
/// `T`-image space.
fn modular_span(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let tol = params.tolerances.span;
    let idx = mock_index(params)?;
    let f = FunctionHandle::phi_tilde(idx).with_truncation(params.truncation);
    let ratio = |a: &FunctionHandle, b: &FunctionHandle| Metric::single(span_ratio(a, b, cloud.points()).map(|s| s.relative_dispersion()));
    if params.s == params.sprime {
        r.expect(format!("{}|S / {} is constant", f.label(), f.label()), ratio(&f.slash(Sl2::S), &f), tol);
    }
    let shifted = FunctionHandle::phi_tilde(idx.with_s(params.s + HalfInt::ONE)).with_truncation(params.truncation);
    r.expect(
        format!("{} / {} = 1", shifted.label(), f.label()),
        Metric::single(span_ratio(&shifted, &f, cloud.points()).map(|s| (s.c - 1.0).norm().max(s.dispersion))),
        params.tolerances.series,
    );
    let unmod = FunctionHandle::phi(idx).with_truncation(params.truncation);
    let unmod_shift = FunctionHandle::phi(idx.with_s(params.s + HalfInt::ONE)).with_truncation(params.truncation);
    r.expect_violation(
        format!("{} / {} is constant", unmod_shift.label(), unmod.label()),
        ratio(&unmod_shift, &unmod),
        tol,
    );
    let t_target = sub_params(params, params.m, params.s, params.s + params.sprime + params.m);
    let ft = f.slash(Sl2::T).with_label(format!("{}|T", f.label()));
    r.absorb("", check_f_membership(&ft, &t_target, &suite_cloud(&t_target)));
    Ok(())
}

/// The named spanning functions of the `F` space at the parameters.
pub fn f_spanning_set(params: &SuiteParams) -> Result<Vec<FunctionHandle>> {
    let tr = params.truncation;
    let mut out = vec![FunctionHandle::phi_tilde(mock_index(params)?).with_truncation(tr)];
    if params.m == HalfInt::ONE && params.s.is_integer() && params.sprime.is_integer() {
        out.push(FunctionHandle::super_a().with_truncation(tr));
    }
    if params.m == HalfInt::HALF {
        let a = params.s.twice().rem_euclid(2) as u8;
        let b = params.sprime.twice().rem_euclid(2) as u8;
        out.push(FunctionHandle::super_b(a, b).with_truncation(tr));
    }
    Ok(out)
}

/// `max(err/tol)` over the checks of a report whose names contain one of
/// the needles.
fn worst_ratio(rep: &CheckReport, needles: &[&str]) -> Metric {
    let mut m = Metric { max: 0.0, error: None };
    for ch in &rep.checks {
        if needles.iter().any(|n| ch.name.contains(n)) {
            let e = ch.max_abs_err.unwrap_or(f64::INFINITY);
            m.max = m.max.max(if ch.tol > 0.0 { e / ch.tol } else { e });
        }
    }
    m
}

fn f_membership(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    for f in f_spanning_set(params)? {
        r.absorb("", check_f_membership(&f, params, cloud));
    }
    let unmod = FunctionHandle::phi(mock_index(params)?).with_truncation(params.truncation);
    let rep = check_f_membership(&unmod, params, cloud);
    r.expect_violation(
        format!("{} (unmodified) against (F4)(ii) and (F5), err/tol", unmod.label()),
        worst_ratio(&rep, &["(F4)(ii)", "(F5)"]),
        1.0,
    );
    Ok(())
}

fn g_membership(r: &mut CheckReport, params: &SuiteParams, cloud: &SampleCloud) -> Result<()> {
    let g = FunctionHandle::theta_pair(mock_index(params)?).with_truncation(params.truncation);
    r.absorb("", check_g_membership(&g, params, cloud));
    let wrong = SuiteParams { sprime: params.sprime + HalfInt::HALF, ..params.clone() };
    let rep = check_g_membership(&g, &wrong, cloud);
    r.expect_violation(
        format!("{} against (G3)(ii) with s' + 1/2, err/tol", g.label()),
        worst_ratio(&rep, &["(G3)(ii)"]),
        1.0,
    );
    Ok(())
}
