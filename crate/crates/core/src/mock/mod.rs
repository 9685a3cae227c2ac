//! Mock theta functions Φ^{±[m,s]}, the Zwegers corrections R^±_{j,m}, the
//! modifier Φ_add, the modified functions Φ̃ = Φ − ½Φ_add, and the
//! superdenominators and theta pairings that appear beside them.

mod modified;
mod pair;
mod phi;
mod superden;
mod zwegers;

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::HalfInt;
use crate::real::Real;
use crate::theta::Sign;

pub use modified::{phi_add, phi_tilde, phi_tilde_grid, phi_tilde_uv};
pub use pair::{theta_pair, theta_pair_uv};
pub use phi::{mock_lattice_theta, phi, phi_lattice_oracle, MockLattice, POLE_TOL};
pub use superden::{superdenominator_a, superdenominator_b};
pub use zwegers::{zwegers_r, PsiArg};

/// `(sign, m, s)` labelling Φ^{±[m,s]} and its relatives.
///
/// Any `m ∈ ½ℤ_{>0}` and `s ∈ ½ℤ` is accepted, since the characterization
/// statements use Φ̃^{±[½,s]} and Φ̃^{+[1,½]}; [`MockIndex::is_classical`]
/// tests for the original index sets (`m, s ∈ ℤ` for `+`, `m, s ∈ ½+ℤ` for `−`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MockIndex {
    pub sign: Sign,
    pub m: HalfInt,
    pub s: HalfInt,
}

impl MockIndex {
    pub fn new(sign: Sign, m: HalfInt, s: HalfInt) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::Domain(format!("mock index needs m > 0, got {m}")));
        }
        Ok(Self { sign, m, s })
    }

    pub fn classical(sign: Sign, m: HalfInt, s: HalfInt) -> Result<Self> {
        let idx = Self::new(sign, m, s)?;
        if !idx.is_classical() {
            return Err(Error::Domain(format!("{idx} is outside the classical index set")));
        }
        Ok(idx)
    }

    pub fn is_classical(&self) -> bool {
        match self.sign {
            Sign::Plus => self.m.is_integer() && self.s.is_integer(),
            Sign::Minus => self.m.is_half_odd() && self.s.is_half_odd(),
        }
    }

    /// The `2m` values `s, s+1, …, s+2m−1`.
    pub fn j_range(&self) -> impl Iterator<Item = HalfInt> {
        let s = self.s;
        (0..self.m.twice()).map(move |k| s + HalfInt::from_int(k))
    }

    pub fn with_s(&self, s: HalfInt) -> Self {
        Self { s, ..*self }
    }
}

impl fmt::Display for MockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.sign, self.m, self.s)
    }
}

/// `u = −(z₁+z₂)/2`, `v = (z₁−z₂)/2`.
pub fn change_coords<T: Real>(z1: Complex<T>, z2: Complex<T>) -> (Complex<T>, Complex<T>) {
    let half = T::from_f64(0.5);
    let u = -(z1 + z2);
    let v = z1 - z2;
    (Complex::new(u.re * half, u.im * half), Complex::new(v.re * half, v.im * half))
}

/// `z₁ = v − u`, `z₂ = −v − u`.
pub fn change_coords_inverse<T: Real>(u: Complex<T>, v: Complex<T>) -> (Complex<T>, Complex<T>) {
    (v - u, -v - u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn index_sets() {
        let h = HalfInt::from_twice;
        assert_eq!(MockIndex::new(Sign::Plus, h(4), h(0)).unwrap().j_range().count(), 4);
        assert_eq!(MockIndex::new(Sign::Minus, h(1), h(1)).unwrap().j_range().count(), 1);
        assert!(MockIndex::new(Sign::Plus, h(0), h(0)).is_err());
        assert!(MockIndex::classical(Sign::Plus, h(2), h(1)).is_err());
        assert!(MockIndex::classical(Sign::Minus, h(3), h(1)).is_ok());
        let js: Vec<_> = MockIndex::new(Sign::Minus, h(3), h(-1)).unwrap().j_range().collect();
        assert_eq!(js, vec![h(-1), h(1), h(3)]);
    }

    #[test]
    fn coordinates() {
        let c = |re, im| Complex::<f64>::new(re, im);
        assert_eq!(change_coords(c(1.0, 0.0), c(-1.0, 0.0)), (c(0.0, 0.0), c(1.0, 0.0)));
        let (u, v) = (c(0.0, 0.3), c(0.7, 0.0));
        let (z1, z2) = change_coords_inverse(u, v);
        assert_eq!(change_coords(z1, z2), (u, v));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let z1 = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let z2 = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let (u, v) = change_coords(z1, z2);
            let (a, b) = change_coords_inverse(u, v);
            assert!((a - z1).norm() <= 4.0 * f64::EPSILON * (1.0 + z1.norm()));
            assert!((b - z2).norm() <= 4.0 * f64::EPSILON * (1.0 + z2.norm()));
        }
    }
}
