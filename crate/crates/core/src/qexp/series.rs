use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::Ratio;

use super::coeff::{Cyclo8, LaurentZ};
use crate::complex::{cexp, i_unit};
use crate::error::{Error, Result};
use crate::numeric::Evaluated;

/// Exponents of `q` live on `(1/GRID)ℤ`.
pub const GRID: i64 = 24;

/// A truncated series `Σ_r c_r(ζ) q^r`, `r ∈ (1/24)ℤ`, known exactly for
/// `r < order`. Coefficients are Laurent polynomials in `ζ^{1/2}` over `ℤ[e^{iπ/4}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QZSeries {
    grid: i64,
    /// Exclusive cutoff, in units of `1/grid`.
    cut: i64,
    terms: BTreeMap<i64, LaurentZ>,
    /// Set once any operation has discarded a term at or above the cutoff.
    dropped: bool,
}

fn cut_of(order: Ratio<i64>) -> i64 {
    // r < order  <=>  k < 24·order  <=>  k < ceil(24·order)
    (order * GRID).ceil().to_integer()
}

impl QZSeries {
    pub fn zero(order: Ratio<i64>) -> Self {
        Self { grid: GRID, cut: cut_of(order), terms: BTreeMap::new(), dropped: false }
    }

    pub fn one(order: Ratio<i64>) -> Self {
        Self::monomial(order, 0, 0, Cyclo8::from_int(1))
    }

    /// `c · q^{q24/24} ζ^{zeta2/2}`.
    pub fn monomial(order: Ratio<i64>, q24: i64, zeta2: i64, c: Cyclo8) -> Self {
        let mut s = Self::zero(order);
        s.accumulate(q24, zeta2, c);
        s
    }

    /// Exclusive order cutoff.
    pub fn order(&self) -> Ratio<i64> {
        Ratio::new(self.cut, self.grid)
    }

    pub fn grid_denominator(&self) -> i64 {
        self.grid
    }

    pub fn dropped_terms(&self) -> bool {
        self.dropped
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Ratio<i64>, &LaurentZ)> {
        self.terms.iter().map(|(k, c)| (Ratio::new(*k, self.grid), c))
    }

    /// Coefficient of `q^{q24/24} ζ^{zeta2/2}`.
    pub fn coeff(&self, q24: i64, zeta2: i64) -> Cyclo8 {
        self.terms.get(&q24).and_then(|l| l.0.get(&zeta2)).cloned().unwrap_or_default()
    }

    pub fn coeff_poly(&self, q24: i64) -> LaurentZ {
        self.terms.get(&q24).cloned().unwrap_or_default()
    }

    pub fn lowest(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub(crate) fn accumulate(&mut self, q24: i64, zeta2: i64, c: Cyclo8) {
        if q24 >= self.cut {
            self.dropped |= !c.is_zero();
            return;
        }
        let e = self.terms.entry(q24).or_default();
        e.accumulate(zeta2, c);
        if e.is_zero() {
            self.terms.remove(&q24);
        }
    }

    fn insert_poly(&mut self, q24: i64, p: LaurentZ) {
        for (z, c) in p.0 {
            self.accumulate(q24, z, c);
        }
    }

    fn check_grid(&self, o: &Self) -> Result<()> {
        if self.grid != o.grid {
            return Err(Error::GridMismatch(format!("q-grid 1/{} vs 1/{}", self.grid, o.grid)));
        }
        Ok(())
    }

    /// Lowers the cutoff, discarding terms at or above it.
    pub fn truncate(&self, order: Ratio<i64>) -> Self {
        let cut = cut_of(order).min(self.cut);
        let mut r = Self { grid: self.grid, cut, terms: BTreeMap::new(), dropped: self.dropped };
        for (k, p) in &self.terms {
            r.insert_poly(*k, p.clone());
        }
        r
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_grid(o)?;
        let mut r = Self { grid: self.grid, cut: self.cut.min(o.cut), terms: BTreeMap::new(), dropped: false };
        r.dropped = self.dropped || o.dropped;
        for (k, p) in self.terms.iter().chain(o.terms.iter()) {
            r.insert_poly(*k, p.clone());
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, p)| (*k, p.neg())).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// The product is exact below `min(N₁ + min(low₂, 0), N₂ + min(low₁, 0))`,
    /// which is `min(N₁, N₂)` for series without negative exponents.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_grid(o)?;
        let l1 = self.lowest().unwrap_or(0).min(0);
        let l2 = o.lowest().unwrap_or(0).min(0);
        let cut = (self.cut + l2).min(o.cut + l1);
        let mut r = Self { grid: self.grid, cut, terms: BTreeMap::new(), dropped: self.dropped || o.dropped };
        for (k1, p1) in &self.terms {
            for (k2, p2) in &o.terms {
                if k1 + k2 >= cut {
                    r.dropped = true;
                    continue;
                }
                r.insert_poly(k1 + k2, p1.mul(p2));
            }
        }
        Ok(r)
    }

    /// Multiplication by `w^phase8 ζ^{zeta2/2} q^{q24/24}`; the cutoff moves with the shift.
    pub fn mul_monomial(&self, phase8: i64, zeta2: i64, q24: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, p)| (k + q24, p.map_keys(|z| z + zeta2).rotate_each(|_| phase8)))
            .collect();
        Self { grid: self.grid, cut: self.cut + q24, terms, dropped: self.dropped }
    }

    /// `ζ ↦ ζ^factor`; `factor = 2` realises the argument `2z`, `−1` the reflection.
    pub fn zeta_power(&self, factor: i64) -> Self {
        let terms = self.terms.iter().map(|(k, p)| (*k, p.map_keys(|z| z * factor))).collect();
        Self { terms, ..self.clone() }
    }

    /// `z ↦ z + 1/2`, i.e. `ζ^{e} ↦ e^{πie} ζ^{e}`; with doubled keys that is `w^{2·key}`.
    pub fn shift_z_half(&self) -> Self {
        let terms = self.terms.iter().map(|(k, p)| (*k, p.rotate_each(|z| 2 * z))).collect();
        Self { terms, ..self.clone() }
    }

    /// `z ↦ z + τ/2`, i.e. `ζ^{e} ↦ q^{e/2} ζ^{e}`. Terms of the input that were
    /// never stored may land below the old cutoff, so the caller states the
    /// order up to which the result is trusted; it must not exceed the input's.
    pub fn shift_z_half_tau(&self, order: Ratio<i64>) -> Self {
        let cut = cut_of(order).min(self.cut);
        let mut r = Self { grid: self.grid, cut, terms: BTreeMap::new(), dropped: self.dropped };
        let per_key = self.grid / 4;
        for (k, p) in &self.terms {
            for (z, c) in &p.0 {
                r.accumulate(k + per_key * z, *z, c.clone());
            }
        }
        r
    }

    /// Numeric value at `(τ, z)`. The tail bound is a heuristic
    /// `|q|^N · (1 + largest partial term)`, flagged by the caller when large.
    pub fn evaluate(&self, tau: Complex<f64>, z: Complex<f64>) -> Result<Evaluated<f64>> {
        if !(tau.im > 0.0) {
            return Err(Error::Domain("evaluate_series needs Im tau > 0".into()));
        }
        let two_pi_i = i_unit::<f64>() * (2.0 * std::f64::consts::PI);
        let mut acc = Complex::new(0.0, 0.0);
        let mut peak = 0.0f64;
        for (k, p) in &self.terms {
            let qpow = cexp(two_pi_i * tau * (*k as f64 / self.grid as f64));
            for (zk, c) in &p.0 {
                let zp = cexp(two_pi_i * z * (*zk as f64 / 2.0));
                let term = c.to_complex() * qpow * zp;
                peak = peak.max(term.norm());
                acc += term;
            }
        }
        let qn = (-2.0 * std::f64::consts::PI * tau.im * (self.cut as f64 / self.grid as f64)).exp();
        Ok(Evaluated { value: acc, tail_bound: qn * (1.0 + peak) })
    }

    /// Terms of `self − other` below the common cutoff.
    pub fn difference_terms(&self, other: &Self) -> Result<Vec<(Ratio<i64>, LaurentZ)>> {
        let d = self.sub(other)?;
        Ok(d.terms.into_iter().map(|(k, p)| (Ratio::new(k, d.grid), p)).collect())
    }
}

/// A rational order as used by the constructors, e.g. `order(20)`.
pub fn order(n: i64) -> Ratio<i64> {
    Ratio::from_integer(n)
}
