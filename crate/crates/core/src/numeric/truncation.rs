use num_complex::Complex;
use serde::Serialize;

use crate::complex::{abs_f64, cabs};
use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationMode {
    /// Sum outward until the first omitted term on each side is below
    /// `tail_tol * max(1, largest term)` and decreasing; `series_halfwidth`
    /// is then a hard cap.
    Adaptive,
    /// Sum exactly `|n| <= series_halfwidth`.
    Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Truncation {
    pub series_halfwidth: i64,
    pub eta_terms: usize,
    pub tail_tol: f64,
    pub mode: TruncationMode,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { series_halfwidth: 400, eta_terms: 200, tail_tol: 1e-14, mode: TruncationMode::Adaptive }
    }
}

impl Truncation {
    pub fn fixed(k: i64) -> Self {
        Self { series_halfwidth: k, mode: TruncationMode::Fixed, ..Self::default() }
    }

    pub fn adaptive(tail_tol: f64) -> Self {
        Self { tail_tol, ..Self::default() }
    }

    /// Settings matched to double-double evaluation.
    pub fn extended() -> Self {
        Self { series_halfwidth: 400, eta_terms: 400, tail_tol: 1e-33, mode: TruncationMode::Adaptive }
    }

    pub fn validate(&self) -> Result<()> {
        if self.series_halfwidth < 1 {
            return Err(Error::Domain("series half-width must be at least 1".into()));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::Domain("tail tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// A value together with an estimate of the absolute truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluated<T> {
    pub value: Complex<T>,
    pub tail_bound: f64,
}

impl<T: Real> Evaluated<T> {
    pub fn exact(value: Complex<T>) -> Self {
        Self { value, tail_bound: 0.0 }
    }

    /// Product with first-order error propagation.
    pub fn mul(self, o: Self) -> Self {
        Self {
            value: self.value * o.value,
            tail_bound: abs_f64(self.value) * o.tail_bound + abs_f64(o.value) * self.tail_bound,
        }
    }

    pub fn scale(self, c: Complex<T>) -> Self {
        Self { value: self.value * c, tail_bound: abs_f64(c) * self.tail_bound }
    }

    pub fn add(self, o: Self) -> Self {
        Self { value: self.value + o.value, tail_bound: self.tail_bound + o.tail_bound }
    }

    pub fn sub(self, o: Self) -> Self {
        Self { value: self.value - o.value, tail_bound: self.tail_bound + o.tail_bound }
    }
}

/// Sums `term(n)` over `n` in ℤ according to `tr`. Terms are assumed to
/// decay at least geometrically with ratio ≤ ½ once below tolerance, so the
/// reported tail is twice the first omitted magnitude on each side.
pub(crate) fn bilateral_sum<T, F>(tr: &Truncation, what: &'static str, mut term: F) -> Result<Evaluated<T>>
where
    T: Real,
    F: FnMut(i64) -> Result<Complex<T>>,
{
    tr.validate()?;
    let check = |z: Complex<T>| -> Result<f64> {
        let m = cabs(z).to_f64();
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::Domain(format!("non-finite term in {what}")))
        }
    };
    let mut acc = term(0)?;
    let mut peak = check(acc)?;
    let k_max = tr.series_halfwidth;
    match tr.mode {
        TruncationMode::Fixed => {
            for n in 1..=k_max {
                let (p, m) = (term(n)?, term(-n)?);
                check(p)?;
                check(m)?;
                acc = acc + p + m;
            }
            let tail = check(term(k_max + 1)?)? + check(term(-k_max - 1)?)?;
            Ok(Evaluated { value: acc, tail_bound: 2.0 * tail })
        }
        TruncationMode::Adaptive => {
            let mut open = [true, true];
            let mut prev = [peak, peak];
            let mut omitted = [0.0f64; 2];
            let mut n = 1;
            while open[0] || open[1] {
                if n > k_max {
                    return Err(Error::TruncationOverflow { what, cap: k_max });
                }
                for (side, sgn) in [(0usize, 1i64), (1, -1)] {
                    if !open[side] {
                        continue;
                    }
                    let t = term(sgn * n)?;
                    let mag = check(t)?;
                    if mag < tr.tail_tol * peak.max(1.0) && mag <= prev[side] {
                        open[side] = false;
                        omitted[side] = mag;
                    } else {
                        acc += t;
                        peak = peak.max(mag);
                        prev[side] = mag;
                    }
                }
                n += 1;
            }
            Ok(Evaluated { value: acc, tail_bound: 2.0 * (omitted[0] + omitted[1]) })
        }
    }
}
