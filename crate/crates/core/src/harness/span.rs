use num_complex::Complex;

use crate::calculus::FunctionHandle;
use crate::error::{Error, Result};
use crate::numeric::DomainPoint;

/// Points where `|g|` falls below this fraction of its largest sampled value
/// are dropped, being too close to a zero of `g`.
pub const ZERO_GUARD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpanRatio {
    pub c: Complex<f64>,
    pub dispersion: f64,
    pub used: usize,
}

impl SpanRatio {
    /// `dispersion < tol·(1+|c|)`.
    pub fn is_constant(&self, tol: f64) -> bool {
        self.dispersion < tol * (1.0 + self.c.norm())
    }

    pub fn relative_dispersion(&self) -> f64 {
        self.dispersion / (1.0 + self.c.norm())
    }
}

/// Mean and spread of `f/g` over the points.
pub fn span_ratio(f: &FunctionHandle, g: &FunctionHandle, points: &[DomainPoint<f64>]) -> Result<SpanRatio> {
    use rayon::prelude::*;
    let vals: Vec<(Complex<f64>, Complex<f64>)> = points
        .par_iter()
        .map(|p| Ok((f.eval(p)?, g.eval(p)?)))
        .collect::<Result<_>>()?;
    let big = vals.iter().map(|(_, b)| b.norm()).fold(0.0, f64::max);
    if big == 0.0 {
        return Err(Error::Domain(format!("{} vanishes on every sample", g.label())));
    }
    let ratios: Vec<_> = vals.iter().filter(|(_, b)| b.norm() > ZERO_GUARD * big).map(|(a, b)| a / b).collect();
    let c = ratios.iter().sum::<Complex<f64>>() / ratios.len() as f64;
    let dispersion = ratios.iter().map(|r| (r - c).norm()).fold(0.0, f64::max);
    Ok(SpanRatio { c, dispersion, used: ratios.len() })
}
