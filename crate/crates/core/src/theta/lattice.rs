use num_complex::Complex;
use num_rational::Ratio;

use super::Sign;
use crate::complex::{cabs, e2pi, scale};
use crate::error::{Error, Result};
use crate::numeric::{Evaluated, HalfInt, Truncation};
use crate::real::Real;

/// A positive definite lattice `L = ⊕ ℤαᵢ` of rank 1 or 2 with Gram matrix
/// `(αᵢ|αⱼ)`, a degree `m` and a shift `λ̄` given in α-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeData {
    gram: Vec<Vec<Ratio<i64>>>,
    m: HalfInt,
    lambda_bar: Vec<Ratio<i64>>,
}

impl LatticeData {
    pub fn new(gram: Vec<Vec<Ratio<i64>>>, m: HalfInt, lambda_bar: Vec<Ratio<i64>>) -> Result<Self> {
        let l = gram.len();
        if !(1..=2).contains(&l) || gram.iter().any(|r| r.len() != l) || lambda_bar.len() != l {
            return Err(Error::Domain("lattice rank must be 1 or 2 with matching shapes".into()));
        }
        if !m.is_positive() {
            return Err(Error::Domain("lattice degree m must be positive".into()));
        }
        if l == 2 && gram[0][1] != gram[1][0] {
            return Err(Error::Domain("Gram matrix must be symmetric".into()));
        }
        let zero = Ratio::from_integer(0);
        let det = if l == 1 { gram[0][0] } else { gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0] };
        if gram[0][0] <= zero || det <= zero {
            return Err(Error::Domain("Gram matrix is not positive definite".into()));
        }
        let mr = m.to_ratio();
        if gram.iter().flatten().any(|g| !(mr * *g).is_integer()) {
            return Err(Error::Domain("m(α|β) must be integral on the lattice".into()));
        }
        Ok(Self { gram, m, lambda_bar })
    }

    /// `L = ℤα`, `(α|α) = g`.
    pub fn rank_one(g: i64, m: HalfInt, lambda_bar: Ratio<i64>) -> Result<Self> {
        Self::new(vec![vec![Ratio::from_integer(g)]], m, vec![lambda_bar])
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn m(&self) -> HalfInt {
        self.m
    }

    pub fn lambda_bar(&self) -> &[Ratio<i64>] {
        &self.lambda_bar
    }

    pub fn with_lambda_bar(&self, lambda_bar: Vec<Ratio<i64>>) -> Result<Self> {
        Self::new(self.gram.clone(), self.m, lambda_bar)
    }

    /// `m|α|²` for `α = Σ nᵢαᵢ`, exact.
    fn m_norm(&self, n: &[i64]) -> i64 {
        let mut s = Ratio::from_integer(0);
        for (i, ni) in n.iter().enumerate() {
            for (j, nj) in n.iter().enumerate() {
                s += self.gram[i][j] * (ni * nj);
            }
        }
        let v = s * self.m.to_ratio();
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    fn gram_real<T: Real>(&self) -> Vec<Vec<T>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|g| T::from_i64(*g.numer()) / T::from_i64(*g.denom())).collect())
            .collect()
    }
}

fn ratio_real<T: Real>(r: Ratio<i64>) -> T {
    T::from_i64(*r.numer()) / T::from_i64(*r.denom())
}

/// `e^{2πimt} Σ_{α∈L} (±1)^{m|α|²} q^{(m/2)|α+λ̄/m|²} e^{2πim(α+λ̄/m|z)}` with
/// `z` in α-coordinates. Points are enumerated inside the ellipsoid on which the
/// term modulus is within `tail_tol` of its maximum, using the Cholesky form of
/// the Gram matrix; `tr.series_halfwidth` caps the box in each coordinate.
pub fn lattice_theta<T: Real>(
    data: &LatticeData,
    sign: Sign,
    tau: Complex<T>,
    z: &[Complex<T>],
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    tr.validate()?;
    let l = data.rank();
    if z.len() != l {
        return Err(Error::Domain("z must have one coordinate per lattice generator".into()));
    }
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("lattice theta needs Im tau > 0".into()));
    }
    let m = data.m.to_real::<T>();
    let g = data.gram_real::<T>();
    let c: Vec<T> = data.lambda_bar.iter().map(|r| ratio_real::<T>(*r) / m).collect();

    // Terms have modulus ∝ exp(−πmy·Q(n + c + Im z/y)), Q the Gram form.
    let gf: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect();
    let y = tau.im.to_f64();
    let s: Vec<f64> = (0..l).map(|i| c[i].to_f64() + z[i].im.to_f64() / y).collect();
    let radius2 = ((1.0 / tr.tail_tol).ln() + 10.0) / (std::f64::consts::PI * m.to_f64() * y);
    let cap = tr.series_halfwidth;
    let range = |center: f64, half: f64| -> Result<(i64, i64)> {
        let lo = (-center - half).ceil() as i64;
        let hi = (-center + half).floor() as i64;
        if hi - lo > 2 * cap {
            return Err(Error::TruncationOverflow { what: "lattice_theta", cap });
        }
        Ok((lo, hi))
    };

    let mut points: Vec<Vec<i64>> = Vec::new();
    if l == 1 {
        let (lo, hi) = range(s[0], (radius2 / gf[0][0]).sqrt())?;
        points.extend((lo..=hi).map(|n| vec![n]));
    } else {
        let mu = gf[0][1] / gf[0][0];
        let schur = gf[1][1] - gf[0][1] * mu;
        let (lo2, hi2) = range(s[1], (radius2 / schur).sqrt())?;
        for n2 in lo2..=hi2 {
            let d2 = n2 as f64 + s[1];
            let rem = radius2 - schur * d2 * d2;
            if rem < 0.0 {
                continue;
            }
            let (lo1, hi1) = range(s[0] + mu * d2, (rem / gf[0][0]).sqrt())?;
            points.extend((lo1..=hi1).map(|n1| vec![n1, n2]));
        }
    }

    let half_m = m / T::from_f64(2.0);
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut peak = 0.0f64;
    for n in &points {
        let w: Vec<T> = (0..l).map(|i| T::from_i64(n[i]) + c[i]).collect();
        let mut ww = T::zero();
        let mut wz = Complex::new(T::zero(), T::zero());
        for i in 0..l {
            for j in 0..l {
                ww += w[i] * g[i][j] * w[j];
                wz = wz + scale(z[j], w[i] * g[i][j]);
            }
        }
        let term = e2pi(scale(tau, half_m * ww) + scale(wz, m));
        peak = peak.max(cabs(term).to_f64());
        acc = acc + scale(term, T::from_i64(sign.pow(data.m_norm(n))));
    }
    let value = acc * e2pi(scale(t, m));
    let pre = cabs(e2pi(scale(t, m))).to_f64();
    Ok(Evaluated { value, tail_bound: 4.0 * tr.tail_tol * peak.max(1.0) * pre })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }
    use crate::theta::{theta_jm, ThetaIndex};

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn rank_one_matches_theta_jm() {
        let tr = Truncation::default();
        let (tau, z, t) = (cx(0.2, 0.9), cx(0.33, 0.21), cx(0.1, 0.0));
        for (sign, jt, mt) in [(Sign::Plus, 0, 2), (Sign::Plus, 2, 2), (Sign::Plus, 3, 4), (Sign::Minus, 1, 1), (Sign::Minus, 3, 3)] {
            let m = HalfInt::from_twice(mt);
            // λ̄/m = j/2m with (α|α) = 2, so λ̄ = j/2 and z_lattice = z/2
            let data = LatticeData::rank_one(2, m, r(jt, 4)).unwrap();
            let lat = lattice_theta(&data, sign, tau, &[z / 2.0], t, &tr).unwrap().value;
            let idx = ThetaIndex::new(sign, HalfInt::from_twice(jt), m).unwrap();
            let th = theta_jm(&idx, tau, z, t, &tr).unwrap().value;
            assert!((lat - th).norm() < 1e-12, "{sign} {jt} {mt}");
        }
    }

    #[test]
    fn shift_by_lattice_vector_multiplies_by_sign() {
        let tr = Truncation::default();
        let (tau, z) = (cx(-0.1, 1.1), [cx(0.12, -0.04)]);
        let m = HalfInt::from_twice(3);
        let base = LatticeData::rank_one(2, m, r(1, 4)).unwrap();
        let a = lattice_theta(&base, Sign::Minus, tau, &z, cx(0.0, 0.0), &tr).unwrap().value;
        // λ̄ + m·γ with γ = α: factor (−1)^{m|γ|²} = (−1)^3
        let moved = base.with_lambda_bar(vec![r(1, 4) + r(3, 2)]).unwrap();
        let b = lattice_theta(&moved, Sign::Minus, tau, &z, cx(0.0, 0.0), &tr).unwrap().value;
        assert!((b + a).norm() < 1e-13);
    }

    #[test]
    fn diagonal_rank_two_factorizes() {
        let tr = Truncation::default();
        let (tau, z) = (cx(0.05, 1.3), [cx(0.2, 0.1), cx(-0.35, 0.05)]);
        let one = HalfInt::ONE;
        let diag = LatticeData::new(
            vec![vec![r(2, 1), r(0, 1)], vec![r(0, 1), r(2, 1)]],
            one,
            vec![r(0, 1), r(0, 1)],
        )
        .unwrap();
        let both = lattice_theta(&diag, Sign::Plus, tau, &z, cx(0.0, 0.0), &tr).unwrap().value;
        let single = LatticeData::rank_one(2, one, r(0, 1)).unwrap();
        let a = lattice_theta(&single, Sign::Plus, tau, &z[..1], cx(0.0, 0.0), &tr).unwrap().value;
        let b = lattice_theta(&single, Sign::Plus, tau, &z[1..], cx(0.0, 0.0), &tr).unwrap().value;
        assert!((both - a * b).norm() < 1e-13);
    }

    #[test]
    fn rejects_bad_gram() {
        let m = HalfInt::ONE;
        let indef = vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]];
        assert!(LatticeData::new(indef, m, vec![r(0, 1), r(0, 1)]).is_err());
        assert!(LatticeData::rank_one(-2, m, r(0, 1)).is_err());
        assert!(LatticeData::new(vec![vec![r(1, 3)]], m, vec![r(0, 1)]).is_err());
    }
}
