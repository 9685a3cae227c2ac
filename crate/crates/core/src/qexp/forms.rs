use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use super::coeff::Cyclo8;
use super::series::{QZSeries, GRID};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaForm {
    Sum,
    Product,
}

fn ratio_24(k: i64) -> Ratio<i64> {
    Ratio::new(k, GRID)
}

/// `1 + c q^{q24/24} ζ^{zeta2/2}`.
fn binomial(order: Ratio<i64>, q24: i64, zeta2: i64, c: i64) -> Result<QZSeries> {
    QZSeries::one(order).add(&QZSeries::monomial(order, q24, zeta2, Cyclo8::from_int(c)))
}

/// `∏_{n ≥ 1} (1 − qⁿ)` to the given order.
fn euler_product(order: Ratio<i64>) -> Result<QZSeries> {
    let mut acc = QZSeries::one(order);
    let mut n = 1;
    while ratio_24(24 * n) < order {
        acc = acc.mul(&binomial(order, 24 * n, 0, -1)?)?;
        n += 1;
    }
    Ok(acc)
}

/// `η(τ) = q^{1/24} ∏ (1 − qⁿ)`.
pub fn eta_series(order: Ratio<i64>) -> Result<QZSeries> {
    if order < ratio_24(1) {
        return Err(Error::Domain(format!("eta_series needs order >= 1/24, got {order}")));
    }
    Ok(euler_product(order - ratio_24(1))?.mul_monomial(0, 0, 1))
}

fn check_ab(a: u8, b: u8) -> Result<()> {
    if a > 1 || b > 1 {
        return Err(Error::Domain(format!("theta characteristics must be 0 or 1, got ({a},{b})")));
    }
    Ok(())
}

/// `ϑ_ab(τ, z)` in `q = e^{2πiτ}`, `ζ = e^{2πiz}`.
///
/// The sum form reads `ϑ_ab` off `Θ^±_{a/2,1/2}(τ, 2z) = Σ_n (±1)ⁿ q^{(n+a/2)²/2} ζ^{n+a/2}`,
/// sign `(−1)^b` and an extra factor `i` for `ϑ₁₁`. The product form is the
/// triple-product factorisation.
pub fn theta_ab_series(a: u8, b: u8, form: ThetaForm, order: Ratio<i64>) -> Result<QZSeries> {
    check_ab(a, b)?;
    if order < Ratio::new(1, 8) {
        return Err(Error::Domain(format!("theta_ab_series needs order >= 1/8, got {order}")));
    }
    match form {
        ThetaForm::Sum => Ok(theta_sum(a, b, order)),
        ThetaForm::Product => theta_product(a, b, order),
    }
}

fn theta_sum(a: u8, b: u8, order: Ratio<i64>) -> QZSeries {
    let mut s = QZSeries::zero(order);
    let (a, b) = (a as i64, b as i64);
    let cut = (order * GRID).ceil().to_integer();
    let phase = if a == 1 && b == 1 { 2 } else { 0 };
    let mut n = 0i64;
    loop {
        let mut any = false;
        for nn in if n == 0 { vec![0] } else { vec![n, -n] } {
            let r2 = 2 * nn + a;
            let q24 = 3 * r2 * r2;
            if q24 < cut {
                any = true;
                let sign = if b == 1 && nn.rem_euclid(2) == 1 { 4 } else { 0 };
                s.accumulate(q24, r2, Cyclo8::root(phase + sign));
            }
        }
        if !any && n > 0 {
            break;
        }
        n += 1;
    }
    s
}

fn theta_product(a: u8, b: u8, order: Ratio<i64>) -> Result<QZSeries> {
    let sign = if b == 0 { 1 } else { -1 };
    if a == 0 {
        let mut acc = euler_product(order)?;
        let mut n = 1;
        while ratio_24(24 * n - 12) < order {
            acc = acc.mul(&binomial(order, 24 * n - 12, 2, sign)?)?;
            acc = acc.mul(&binomial(order, 24 * n - 12, -2, sign)?)?;
            n += 1;
        }
        return Ok(acc);
    }
    let inner_order = order - Ratio::new(1, 8);
    let mut acc = if inner_order > Ratio::zero() { euler_product(inner_order)? } else { QZSeries::zero(inner_order) };
    let mut n = 1;
    while ratio_24(24 * n) < inner_order {
        acc = acc.mul(&binomial(inner_order, 24 * n, 2, sign)?)?;
        acc = acc.mul(&binomial(inner_order, 24 * n, -2, sign)?)?;
        n += 1;
    }
    // q^{1/8} (ζ^{1/2} ± ζ^{−1/2}), times i for ϑ₁₁
    let phase = if b == 1 { 2 } else { 0 };
    let second = if b == 1 { 4 } else { 0 };
    acc.mul_monomial(phase, 1, 3).add(&acc.mul_monomial(phase + second, -1, 3))
}

/// Outcome of an exact series identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub order: String,
    pub equal: bool,
    /// Exponent of the lowest nonzero term of `lhs − rhs`.
    pub lowest_residual: Option<String>,
    pub residual_terms: usize,
    pub max_residual_coeff: String,
}

pub fn compare(name: impl Into<String>, lhs: &QZSeries, rhs: &QZSeries, order: Ratio<i64>) -> Result<IdentityReport> {
    let (l, r) = (lhs.truncate(order), rhs.truncate(order));
    if l.order() < order || r.order() < order {
        return Err(Error::Domain(format!(
            "identity needs both sides to order {order}, have {} and {}",
            l.order(),
            r.order()
        )));
    }
    let diff = l.difference_terms(&r)?;
    let max = diff
        .iter()
        .flat_map(|(_, p)| p.0.values().map(|c| c.max_abs()))
        .max()
        .unwrap_or_else(BigInt::zero);
    Ok(IdentityReport {
        name: name.into(),
        order: order.to_string(),
        equal: diff.is_empty(),
        lowest_residual: diff.first().map(|(k, _)| k.to_string()),
        residual_terms: diff.len(),
        max_residual_coeff: max.to_string(),
    })
}

pub fn triple_product_check(a: u8, b: u8, order: Ratio<i64>) -> Result<IdentityReport> {
    let s = theta_ab_series(a, b, ThetaForm::Sum, order)?;
    let p = theta_ab_series(a, b, ThetaForm::Product, order)?;
    compare(format!("triple-product theta{a}{b}"), &s, &p, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductVariant {
    Exact,
    /// Negative control: `ϑ₀₁` left out of the left side.
    DropFactor,
}

/// `∏_{a,b} ϑ_ab(τ, u) = η(τ)³ ϑ₁₁(τ, 2u)`.
pub fn product_identity_check(order: Ratio<i64>) -> Result<IdentityReport> {
    product_identity_variant(order, ProductVariant::Exact)
}

pub fn product_identity_variant(order: Ratio<i64>, variant: ProductVariant) -> Result<IdentityReport> {
    if order < Ratio::from_integer(2) {
        return Err(Error::Domain(format!("product identity check needs order >= 2, got {order}")));
    }
    let mut lhs = QZSeries::one(order);
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        if variant == ProductVariant::DropFactor && (a, b) == (0, 1) {
            continue;
        }
        lhs = lhs.mul(&theta_ab_series(a, b, ThetaForm::Sum, order)?)?;
    }
    let eta = eta_series(order)?;
    let rhs = eta.mul(&eta)?.mul(&eta)?.mul(&theta_ab_series(1, 1, ThetaForm::Sum, order)?.zeta_power(2))?;
    let name = match variant {
        ProductVariant::Exact => "product-identity",
        ProductVariant::DropFactor => "product-identity (theta01 dropped)",
    };
    compare(name, &lhs, &rhs, order)
}

/// The half-period laws with `n ∈ {1, 2}`:
/// `ϑ_ab(z + n/2) = (−1)^{abn + an(1−n)/2} ϑ_{a,b+n}` and
/// `ϑ_ab(z + nτ/2) = (−i)^{bn} q^{−n²/8} e^{−πinz} ϑ_{a+n,b}`, indices mod 2.
pub fn shift_law_checks(order: Ratio<i64>) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    // terms missing from an input of order M move down by at most sqrt(2M)/2 per half-τ step
    let big = order * 2 + Ratio::from_integer(8);
    for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let th = theta_ab_series(a, b, ThetaForm::Sum, big)?;
        for n in [1i64, 2] {
            let (ai, bi) = (a as i64, b as i64);
            let mut lhs = th.clone();
            for _ in 0..n {
                lhs = lhs.shift_z_half();
            }
            let e = ai * bi * n + ai * n * (1 - n) / 2;
            let target = theta_ab_series(a, ((bi + n) % 2) as u8, ThetaForm::Sum, big)?;
            let rhs = target.mul_monomial(4 * e, 0, 0);
            out.push(compare(format!("z+{n}/2 on theta{a}{b}"), &lhs, &rhs, order)?);

            let mut lhs = th.clone();
            for _ in 0..n {
                lhs = lhs.shift_z_half_tau(big - Ratio::from_integer(4));
            }
            let target = theta_ab_series(((ai + n) % 2) as u8, b, ThetaForm::Sum, big)?;
            let rhs = target.mul_monomial(6 * bi * n, -n, -3 * n * n);
            out.push(compare(format!("z+{n}tau/2 on theta{a}{b}"), &lhs, &rhs, order)?);
        }
    }
    Ok(out)
}
