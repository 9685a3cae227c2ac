use std::sync::Arc;

use num_complex::Complex;

use super::*;
use crate::dd::DoubleDouble;
use crate::mock::MockIndex;
use crate::numeric::{DomainPoint, HalfInt};
use crate::theta::{Sign, ThetaIndex};

fn cx(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn pt(tau: Complex<f64>, u: Complex<f64>, v: Complex<f64>) -> DomainPoint<f64> {
    DomainPoint::new(tau, u, v, cx(0.0, 0.0)).unwrap()
}

fn points() -> Vec<DomainPoint<f64>> {
    vec![
        pt(cx(0.1, 1.0), cx(0.13, 0.05), cx(0.31, 0.22)),
        pt(cx(-0.2, 1.3), cx(-0.21, 0.1), cx(0.17, -0.3)),
        pt(cx(0.35, 0.9), cx(0.4, -0.12), cx(-0.27, 0.15)),
        pt(cx(0.0, 1.7), cx(0.07, 0.33), cx(0.44, 0.41)),
        pt(cx(-0.33, 1.1), cx(-0.3, -0.2), cx(0.12, 0.05)),
    ]
}

fn idx(sign: Sign, m: i64, s: i64) -> MockIndex {
    MockIndex::new(sign, h(m), h(s)).unwrap()
}

#[test]
fn wirtinger_on_elementary_functions() {
    let cfg = DiffConfig::default();
    let p = pt(cx(0.1, 1.2), cx(0.2, 0.1), cx(0.3, 0.4));
    let c = FunctionHandle::custom(HalfInt::ONE, "const", Arc::new(|p: &DomainPoint<f64>| {
        Ok(crate::complex::e2pi(p.t()) * 3.0)
    }))
    .unwrap();
    assert!(wirtinger(&c, &p, Var::VBar, &cfg).unwrap().norm() < 1e-12);
    let vb = FunctionHandle::custom(HalfInt::ONE, "vbar", Arc::new(|p: &DomainPoint<f64>| {
        Ok(crate::complex::e2pi(p.t()) * p.v().conj())
    }))
    .unwrap();
    assert!((wirtinger(&vb, &p, Var::VBar, &cfg).unwrap() - 1.0).norm() < 1e-10);
    assert!(wirtinger(&vb, &p, Var::V, &cfg).unwrap().norm() < 1e-10);
    let dt = wirtinger(&vb, &p, Var::T, &cfg).unwrap();
    assert!((dt - cx(0.0, 2.0 * std::f64::consts::PI) * p.v().conj()).norm() < 1e-14);
}

#[test]
fn mock_function_is_holomorphic_in_v() {
    let cfg = DiffConfig::default();
    let f = FunctionHandle::phi(idx(Sign::Plus, 2, 0));
    for p in points() {
        let d = wirtinger(&f, &p, Var::VBar, &cfg).unwrap();
        assert!(d.norm() < 1e-8, "{d}");
        assert!(u_holomorphy_defect(&f, &p, &cfg).unwrap().norm() < 1e-8);
        assert!(theta_map(&f, &p, &cfg).unwrap().norm() < 1e-7);
    }
}

#[test]
fn second_derivatives_of_plane_waves() {
    let (al, be) = (cx(0.7, -0.4), cx(-0.5, 0.9));
    let w = PlaneWave { u: cx(0.0, 0.0), v: al, v_bar: be, tau: cx(0.0, 0.0), tau_bar: cx(0.0, 0.0) };
    let f = FunctionHandle::plane_wave(HalfInt::ONE, w).unwrap();
    let p = pt(cx(0.1, 1.2), cx(0.2, 0.1), cx(0.3, 0.4));
    let f0 = f.eval(&p).unwrap();
    // f64 rounding is about eps/h^2, so the default step only reaches ~1e-7 there
    let pd = p.lift::<DoubleDouble>();
    for (which, want) in [(Second::VV, al * al), (Second::VbarVbar, be * be), (Second::VVbar, al * be)] {
        let got = second(&f, &p, which, &DiffConfig::with_step(1e-3)).unwrap();
        assert!((got - want * f0).norm() < 1e-8 * f0.norm(), "{which:?}");
        let got = crate::complex::lower(second(&f, &pd, which, &DiffConfig::default()).unwrap());
        assert!((got - want * f0).norm() < 1e-8 * f0.norm(), "{which:?}");
        let coarse = DiffConfig { richardson: false, scheme: Scheme::Central2, ..DiffConfig::with_step(1e-3) };
        let got = second(&f, &p, which, &coarse).unwrap();
        assert!((got - want * f0).norm() > 1e-8 * f0.norm());
    }
}

#[test]
fn heat_equation_for_theta() {
    let cfg = DiffConfig::default();
    for (sign, j, m) in [(Sign::Plus, 1, 2), (Sign::Minus, 0, 1), (Sign::Plus, 1, 3)] {
        let f = FunctionHandle::heat_theta(ThetaIndex::new(sign, h(j), h(m)).unwrap());
        for p in points() {
            let r = apply_d(&f, &p, &cfg).unwrap();
            assert!(r.norm() < 1e-6 * (1.0 + f.eval(&p).unwrap().norm()), "{}: {r}", f.label());
        }
    }
}

#[test]
fn f_m_is_annihilated() {
    let cfg = DiffConfig::default();
    for m in [1, 2, 3, 4] {
        let f = FunctionHandle::f_m(h(m)).unwrap();
        for p in points() {
            assert!(apply_d(&f, &p, &cfg).unwrap().norm() < 1e-5);
        }
    }
}

#[test]
fn zwegers_closed_form_and_dbar() {
    let cfg = DiffConfig::default();
    for (sign, j, m) in [(Sign::Plus, 0, 2), (Sign::Minus, 1, 1), (Sign::Plus, 1, 3)] {
        let r = FunctionHandle::zwegers(sign, h(j), h(m)).unwrap();
        let fm = FunctionHandle::f_m(h(m)).unwrap();
        let th = ThetaIndex::new(sign, h(j), h(m)).unwrap();
        for p in points() {
            let d = wirtinger(&r, &p, Var::VBar, &cfg).unwrap();
            let tb = -p.tau().conj();
            let theta = crate::theta::theta_jm(&th, tb, p.v().conj() * 2.0, cx(0.0, 0.0), r.truncation()).unwrap().value;
            let want = cx(0.0, 2.0) * fm.eval(&p).unwrap() * theta;
            assert!((d - want).norm() < 1e-6 * (1.0 + want.norm()), "{d} vs {want}");
            assert!(apply_dbar(&r, &p, &cfg).unwrap().norm() < 1e-5);
        }
    }
}

#[test]
fn modified_function_is_annihilated() {
    let cfg = DiffConfig::default();
    let f = FunctionHandle::phi_tilde(idx(Sign::Plus, 2, 0));
    for p in points() {
        let scale = 1.0 + f.eval(&p).unwrap().norm();
        for (name, r) in [
            ("D", apply_d(&f, &p, &cfg)),
            ("Dbar", apply_dbar(&f, &p, &cfg)),
            ("Delta", apply_delta(&f, &p, &cfg)),
        ] {
            let r = r.unwrap();
            assert!(r.norm() < 1e-5 * scale, "{name}: {r}");
        }
    }
    // the bare modifier is not: it carries the whole non-holomorphic part
    let add = FunctionHandle::phi_add(idx(Sign::Plus, 2, 0));
    let p = &points()[0];
    assert!(apply_dbar(&add, p, &cfg).unwrap().norm() < 1e-5);
    assert!(wirtinger(&add, p, Var::VBar, &cfg).unwrap().norm() > 1e-3);
}

#[test]
fn theta_map_of_modified_functions() {
    let cfg = DiffConfig::default();
    for (sign, m, s) in [(Sign::Plus, 2, 0), (Sign::Minus, 1, 1), (Sign::Plus, 4, 2), (Sign::Minus, 3, 1)] {
        let i = idx(sign, m, s);
        let f = FunctionHandle::phi_tilde(i);
        let g = FunctionHandle::theta_pair(i);
        let c = -2.0 * h(m).to_f64().sqrt();
        for p in points() {
            let got = theta_map(&f, &p, &cfg).unwrap();
            let want = g.eval(&p).unwrap() * c;
            assert!((got - want).norm() < 1e-6 * (1.0 + want.norm()), "{i}: {got} vs {want}");
        }
    }
}

#[test]
fn slash_action_paths() {
    let f = FunctionHandle::phi_tilde(idx(Sign::Plus, 4, 2));
    for p in points() {
        let id = sl2_act(&f, &Sl2::IDENTITY, &p).unwrap();
        assert!((id - f.eval(&p).unwrap()).norm() < 1e-15);
        let a = sl2_act(&f, &Sl2::S, &p).unwrap();
        let b = s_action_via_degree(&f, &p).unwrap();
        assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
        let ss = sl2_act(&f.slash(Sl2::S), &Sl2::S, &p).unwrap();
        let s2 = sl2_act(&f, &Sl2::S.mul(Sl2::S), &p).unwrap();
        assert!((ss - s2).norm() < 1e-10 * (1.0 + ss.norm()));
    }
    assert!(Sl2::new(1, 2, 3, 4).is_err());
    assert_eq!(Sl2::S.mul(Sl2::S), Sl2::IDENTITY.neg());
}

fn check_covariance(f: &FunctionHandle, p: &DomainPoint<f64>, a: Sl2, cfg: &DiffConfig, tol: f64) {
    let (_, j) = slash_point(&a, p).unwrap();
    let fa = f.slash(a);
    for op in [Operator::D, Operator::Dbar, Operator::Delta] {
        let lhs = sl2_act(&f.operator(op, *cfg), &a, p).unwrap();
        let weight = match op {
            Operator::D => j * j,
            Operator::Dbar => j.conj() * j.conj(),
            Operator::Delta => Complex::from(j.norm_sqr()),
        };
        let rhs = weight * fa.operator(op, *cfg).eval(p).unwrap();
        let scale = 1.0 + lhs.norm().max(rhs.norm());
        assert!((lhs - rhs).norm() < tol * scale, "{} {op:?} {a}: {lhs} vs {rhs}", f.label());
    }
}

#[test]
fn operator_covariance() {
    let cfg = DiffConfig::default();
    let w = PlaneWave { u: cx(0.3, 0.2), v: cx(-0.4, 0.5), v_bar: cx(0.2, -0.3), tau: cx(0.1, 0.2), tau_bar: cx(-0.2, 0.1) };
    let smooth = FunctionHandle::plane_wave(HalfInt::ONE, w).unwrap();
    let phi_t = FunctionHandle::phi_tilde(idx(Sign::Plus, 2, 0));
    let p = pt(cx(0.1, 1.2), cx(0.13, 0.05), cx(0.31, 0.22));
    for a in [Sl2::S, Sl2::T, Sl2::S.mul(Sl2::T)] {
        check_covariance(&smooth, &p, a, &cfg, 1e-4);
        check_covariance(&phi_t, &p, a, &cfg, 1e-4);
    }
}

#[test]
fn commutator_identity() {
    let cfg = DiffConfig::default();
    let w = PlaneWave { u: cx(0.3, 0.2), v: cx(-0.4, 0.5), v_bar: cx(0.2, -0.3), tau: cx(0.1, 0.2), tau_bar: cx(-0.2, 0.1) };
    let f = FunctionHandle::plane_wave(HalfInt::ONE, w).unwrap();
    let p = pt(cx(0.1, 1.2), cx(0.2, 0.1), cx(0.3, 0.4)).lift::<DoubleDouble>();
    let dbar_d = f.operator(Operator::D, cfg).operator(Operator::Dbar, cfg).eval(&p).unwrap();
    let d_dbar = f.operator(Operator::Dbar, cfg).operator(Operator::D, cfg).eval(&p).unwrap();
    let delta = f.operator(Operator::Delta, cfg).eval(&p).unwrap();
    let tau = p.tau();
    let c = Complex::new(DoubleDouble::from(0.0), DoubleDouble::from(16.0) * <DoubleDouble as crate::real::Real>::pi())
        / (tau - tau.conj());
    let r = crate::complex::lower(dbar_d - d_dbar - c * delta);
    let scale = crate::complex::lower(delta).norm();
    assert!(r.norm() < 1e-3 * (1.0 + scale), "{r} (delta {scale})");
}
