use std::collections::HashMap;

use num_complex::Complex;
use rayon::prelude::*;

use super::{phi, zwegers_r, MockIndex};
use crate::complex::{e2pi, real, scale};
use crate::error::Result;
use crate::numeric::{DomainPoint, Evaluated, Truncation};
use crate::real::Real;
use crate::theta::{theta_jm, ThetaIndex};

fn zwegers_factors<T: Real>(idx: &MockIndex, tau: Complex<T>, zr: Complex<T>, tr: &Truncation) -> Result<Vec<Evaluated<T>>> {
    idx.j_range().map(|j| zwegers_r(idx.sign, j, idx.m, tau, zr, tr)).collect()
}

fn add_from_factors<T: Real>(
    idx: &MockIndex,
    rs: &[Evaluated<T>],
    tau: Complex<T>,
    zt: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let zero = real(T::zero());
    let mut acc = Evaluated::exact(zero);
    for (j, r) in idx.j_range().zip(rs) {
        let th = theta_jm(&ThetaIndex::new(idx.sign, j, idx.m)?, tau, zt, zero, tr)?;
        acc = acc.add(r.mul(th));
    }
    Ok(acc.scale(e2pi(scale(t, idx.m.to_real::<T>()))))
}

/// `Φ_add = e^{2πimt} Σ_{s ≤ j < s+2m} R^±_{j,m}(τ,(z₁−z₂)/2) Θ^±_{j,m}(τ,z₁+z₂)`.
pub fn phi_add<T: Real>(
    idx: &MockIndex,
    tau: Complex<T>,
    z1: Complex<T>,
    z2: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let zr = scale(z1 - z2, T::from_f64(0.5));
    let rs = zwegers_factors(idx, tau, zr, tr)?;
    add_from_factors(idx, &rs, tau, z1 + z2, t, tr)
}

/// `Φ̃ = Φ − ½Φ_add`.
pub fn phi_tilde<T: Real>(
    idx: &MockIndex,
    tau: Complex<T>,
    z1: Complex<T>,
    z2: Complex<T>,
    t: Complex<T>,
    tr: &Truncation,
) -> Result<Evaluated<T>> {
    let p = phi(idx, tau, z1, z2, t, tr)?;
    let a = phi_add(idx, tau, z1, z2, t, tr)?;
    Ok(p.sub(a.scale(real(T::from_f64(0.5)))))
}

/// φ̃^{±[m,s]}(τ,u,v,t) = Φ̃^{±[m,s]}(τ, v−u, −v−u, t).
pub fn phi_tilde_uv<T: Real>(idx: &MockIndex, p: &DomainPoint<T>, tr: &Truncation) -> Result<Evaluated<T>> {
    let (z1, z2) = p.z1z2();
    phi_tilde(idx, p.tau(), z1, z2, p.t(), tr)
}

fn key<T: Real>(z: Complex<T>) -> (u64, u64) {
    (z.re.to_f64().to_bits(), z.im.to_f64().to_bits())
}

/// φ̃ over many points. The R-factors depend only on `(τ, v)` and are computed
/// once per distinct pair; groups are evaluated in parallel and results are
/// returned in input order.
pub fn phi_tilde_grid<T: Real>(idx: &MockIndex, points: &[DomainPoint<T>], tr: &Truncation) -> Vec<Result<Evaluated<T>>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<((u64, u64), (u64, u64)), usize> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        let k = (key(p.tau()), key(p.v()));
        let g = *index.entry(k).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    let half = real(T::from_f64(0.5));
    let evaluated: Vec<Vec<(usize, Result<Evaluated<T>>)>> = groups
        .par_iter()
        .map(|members| {
            let first = &points[members[0]];
            let rs = zwegers_factors(idx, first.tau(), first.v(), tr);
            members
                .iter()
                .map(|&i| {
                    let p = &points[i];
                    let r = rs.as_ref().map_err(Clone::clone).and_then(|rs| {
                        let (z1, z2) = p.z1z2();
                        let ph = phi(idx, p.tau(), z1, z2, p.t(), tr)?;
                        let add = add_from_factors(idx, rs, p.tau(), z1 + z2, p.t(), tr)?;
                        Ok(ph.sub(add.scale(half)))
                    });
                    (i, r)
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Option<Result<Evaluated<T>>>> = (0..points.len()).map(|_| None).collect();
    for (i, r) in evaluated.into_iter().flatten() {
        out[i] = Some(r);
    }
    out.into_iter().map(|r| r.expect("every point belongs to a group")).collect()
}
