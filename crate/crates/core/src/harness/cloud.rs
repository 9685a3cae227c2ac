use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::{DomainPoint, HalfInt};

pub const DEFAULT_MARGIN: f64 = 0.05;

/// Random points with `τ ∈ [−0.4, 0.4] + i[0.8, 2.5]` and `u, v` in the cell
/// `{α + βτ : α, β ∈ [−½, ½)}`, kept at least `margin` away from the singular
/// locus `v ± u ∈ ℤ + τℤ` (distance measured in the `(α, β)` coordinates).
/// The images of a point under the half-period shifts `u, v ↦ u, v + kω/2m`,
/// `k ≤ 3`, `ω ∈ {1, τ}`, respect the margin too.
///
/// Point `i` comes from its own ChaCha stream, so the cloud does not depend on
/// the order in which points are drawn.
#[derive(Clone, Debug)]
pub struct SampleCloud {
    pub seed: u64,
    pub margin: f64,
    pub degree: HalfInt,
    points: Vec<DomainPoint<f64>>,
}

fn cell_distance(w: Complex<f64>, tau: Complex<f64>) -> f64 {
    let beta = w.im / tau.im;
    let alpha = w.re - beta * tau.re;
    let (da, db) = (alpha - alpha.round(), beta - beta.round());
    (da * da + db * db).sqrt()
}

/// Distance of `(τ, u, v)` from the singular locus in the cell metric.
pub fn locus_distance(p: &DomainPoint<f64>) -> f64 {
    cell_distance(p.v() - p.u(), p.tau()).min(cell_distance(p.v() + p.u(), p.tau()))
}

impl SampleCloud {
    pub fn new(seed: u64, count: usize, degree: HalfInt) -> Self {
        Self::with_margin(seed, count, degree, DEFAULT_MARGIN)
    }

    pub fn with_margin(seed: u64, count: usize, degree: HalfInt, margin: f64) -> Self {
        let points = (0..count).map(|i| Self::draw(seed, i as u64, degree, margin)).collect();
        Self { seed, margin, degree, points }
    }

    fn draw(seed: u64, index: u64, degree: HalfInt, margin: f64) -> DomainPoint<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let m = degree.to_f64();
        loop {
            let tau = Complex::new(rng.gen_range(-0.4..0.4), rng.gen_range(0.8..2.5));
            let mut cell = || {
                let (a, b): (f64, f64) = (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
                Complex::new(a, 0.0) + tau * b
            };
            let (u, v) = (cell(), cell());
            let t = Complex::new(rng.gen_range(-0.5..0.5), 0.0);
            let p = DomainPoint::new(tau, u, v, t).expect("Im tau > 0 by construction");
            let mut ok = locus_distance(&p) >= margin;
            for k in 1..=3 {
                for w in [Complex::new(1.0, 0.0), tau] {
                    let d = w * (k as f64 / m);
                    ok &= cell_distance(v + u + d, tau) >= margin;
                }
            }
            if ok {
                return p;
            }
        }
    }

    pub fn points(&self) -> &[DomainPoint<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same cell coordinates of `u, v` and the same `t`, with `τ` replaced.
    pub fn retarget(&self, tau_of: impl Fn(Complex<f64>) -> Complex<f64>) -> Vec<DomainPoint<f64>> {
        self.points
            .iter()
            .map(|p| {
                let tau = tau_of(p.tau());
                let move_cell = |w: Complex<f64>| {
                    let beta = w.im / p.y();
                    let alpha = w.re - beta * p.x();
                    Complex::new(alpha, 0.0) + tau * beta
                };
                DomainPoint::new(tau, move_cell(p.u()), move_cell(p.v()), p.t()).expect("Im tau > 0 for retargeted points")
            })
            .collect()
    }
}
