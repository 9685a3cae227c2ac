use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;

use super::*;
use crate::numeric::{dedekind_eta, Truncation};
use crate::theta::jacobi_theta_ab;

fn int(n: i64) -> Cyclo8 {
    Cyclo8::from_int(n)
}

#[test]
fn cyclotomic_arithmetic() {
    assert_eq!(Cyclo8::root(2).mul(&Cyclo8::root(2)), int(-1));
    assert_eq!(Cyclo8::root(3).mul(&Cyclo8::root(5)), int(1));
    for k in 0..8 {
        assert_eq!(Cyclo8::root(1).rotate(k), Cyclo8::root(k + 1));
        let z = Cyclo8::root(k).to_complex();
        let want = Complex::from_polar(1.0, std::f64::consts::PI * k as f64 / 4.0);
        assert!((z - want).norm() < 1e-15);
    }
}

#[test]
fn telescoping_and_cancellation() {
    let n = order(3);
    let a = QZSeries::one(n).sub(&QZSeries::monomial(n, 24, 0, int(1))).unwrap();
    let b = QZSeries::one(n)
        .add(&QZSeries::monomial(n, 24, 0, int(1)))
        .unwrap()
        .add(&QZSeries::monomial(n, 48, 0, int(1)))
        .unwrap();
    let p = a.mul(&b).unwrap();
    assert!(p.difference_terms(&QZSeries::one(n)).unwrap().is_empty());
    assert!(p.dropped_terms());
    assert!(a.add(&a.neg()).unwrap().is_zero());
    let z = QZSeries::monomial(n, 0, 2, int(1)).add(&QZSeries::monomial(n, 0, -2, int(1))).unwrap();
    let sq = z.mul(&z).unwrap();
    assert_eq!(sq.coeff(0, 4), int(1));
    assert_eq!(sq.coeff(0, 0), int(2));
    assert_eq!(sq.coeff(0, -4), int(1));
    assert_eq!(sq.coeff_poly(0).0.len(), 3);
}

#[test]
fn ring_laws_on_small_series() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let n = order(2);
    let mut random = || {
        let mut s = QZSeries::zero(n);
        for _ in 0..6 {
            let t = QZSeries::monomial(n, rng.gen_range(0..48), rng.gen_range(-3..=3), Cyclo8::root(rng.gen_range(0..8)));
            s = s.add(&t.mul_monomial(0, 0, 0)).unwrap();
        }
        s
    };
    for _ in 0..10 {
        let (a, b, c) = (random(), random(), random());
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap().terms().count(), a.mul(&b.mul(&c).unwrap()).unwrap().terms().count());
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap().difference_terms(&a.mul(&b.mul(&c).unwrap()).unwrap()).unwrap(), vec![]);
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert!(lhs.difference_terms(&rhs).unwrap().is_empty());
    }
}

/// Partition numbers by the coin-change recurrence, independent of any product formula.
fn partitions(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::from(0); n + 1];
    p[0] = BigInt::from(1);
    for part in 1..=n {
        for k in part..=n {
            let add = p[k - part].clone();
            p[k] += add;
        }
    }
    p
}

#[test]
fn eta_coefficients() {
    let eta = eta_series(order(21)).unwrap();
    assert_eq!(eta.coeff(1, 0), int(1));
    assert_eq!(eta.coeff(25, 0), int(-1));
    let c: Vec<BigInt> = (0..=20).map(|k| eta.coeff(1 + 24 * k, 0).0[0].clone()).collect();
    // ∏(1 − qⁿ) is the inverse of the partition generating function
    let p = partitions(20);
    for n in 0..=20 {
        let conv: BigInt = (0..=n).map(|k| &c[k] * &p[n - k]).sum();
        assert_eq!(conv, BigInt::from((n == 0) as i64), "n = {n}");
    }
    // and its support is the generalised pentagonal numbers with alternating signs
    for (k, ck) in c.iter().enumerate() {
        let mut want = 0;
        for j in -5i64..=5 {
            if j * (3 * j - 1) / 2 == k as i64 {
                want = if j % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(*ck, BigInt::from(want), "k = {k}");
    }
    assert!(eta_series(Ratio::new(1, 48)).is_err());
}

#[test]
fn theta_symmetries_and_lowest_terms() {
    let n = order(10);
    let t11 = theta_ab_series(1, 1, ThetaForm::Sum, n).unwrap();
    assert_eq!(t11.lowest(), Some(3));
    assert_eq!(t11.coeff(3, 1), Cyclo8::root(2));
    assert_eq!(t11.coeff(3, -1), Cyclo8::root(6));
    assert_eq!(t11.zeta_power(-1), t11.neg());
    let t00 = theta_ab_series(0, 0, ThetaForm::Sum, n).unwrap();
    assert_eq!(t00.zeta_power(-1), t00);
    assert!(theta_ab_series(2, 0, ThetaForm::Sum, n).is_err());
    assert!(theta_ab_series(0, 0, ThetaForm::Sum, Ratio::new(1, 24)).is_err());
}

#[test]
fn triple_product_all_four() {
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let r = triple_product_check(a, b, order(20)).unwrap();
        assert!(r.equal, "{r:?}");
    }
}

#[test]
fn four_theta_product() {
    for n in [5, 20] {
        let r = product_identity_check(order(n)).unwrap();
        assert!(r.equal, "{r:?}");
    }
    let r = product_identity_variant(order(5), ProductVariant::DropFactor).unwrap();
    assert!(!r.equal);
    assert_eq!(r.lowest_residual.as_deref(), Some("3/4"));
}

#[test]
fn shift_laws() {
    let reports = shift_law_checks(order(10)).unwrap();
    assert_eq!(reports.len(), 16);
    for r in reports {
        assert!(r.equal, "{r:?}");
    }
}

#[test]
fn evaluation_matches_direct_sums() {
    let tr = Truncation::default();
    let eta = eta_series(order(10)).unwrap();
    let tau = Complex::new(0.0, 2.0);
    let want = dedekind_eta(tau, &tr).unwrap().value;
    assert!((eta.evaluate(tau, Complex::new(0.0, 0.0)).unwrap().value - want).norm() < 1e-12);
    let th = theta_ab_series(0, 0, ThetaForm::Sum, order(20)).unwrap();
    let (tau, z) = (Complex::new(0.0, 1.0), Complex::new(0.3, 0.0));
    let want = jacobi_theta_ab(0, 0, tau, z, &tr).unwrap().value;
    assert!((th.evaluate(tau, z).unwrap().value - want).norm() < 1e-11);
    for (a, b) in [(0, 1), (1, 0), (1, 1)] {
        let s = theta_ab_series(a, b, ThetaForm::Product, order(20)).unwrap();
        let z = Complex::new(0.21, 0.07);
        let want = jacobi_theta_ab(a, b, tau, z, &tr).unwrap().value;
        assert!((s.evaluate(tau, z).unwrap().value - want).norm() < 1e-11);
    }
    assert_eq!(QZSeries::zero(order(3)).evaluate(tau, z).unwrap().value, Complex::new(0.0, 0.0));
}
