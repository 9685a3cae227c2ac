//! Independent numerical oracles shared by unit tests.

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on Pₙ.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite 60-point Gauss–Legendre quadrature over `panels` equal panels.
pub fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let nodes = gauss_legendre(60);
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
        let (c, r) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        s += nodes.iter().map(|&(x, w)| w * f(c + r * x)).sum::<f64>() * r;
    }
    s
}

/// `2∫₀ˣ e^{−πu²} du` for `x ≥ 0`.
pub fn e_quad(x: f64) -> f64 {
    let pi = std::f64::consts::PI;
    2.0 * quad(|u| (-pi * u * u).exp(), 0.0, x, 8)
}

/// `1 − E(x) = 2∫ₓ^∞ e^{−πu²} du` for `x ≥ 0`, integrated directly.
pub fn tail_quad(x: f64) -> f64 {
    let pi = std::f64::consts::PI;
    2.0 * quad(|u| (-pi * u * u).exp(), x, x + 8.0, 40)
}
