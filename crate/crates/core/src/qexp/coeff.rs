use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element `c₀ + c₁w + c₂w² + c₃w³` of `ℤ[w]`, `w = e^{iπ/4}`, `w⁴ = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cyclo8(pub [BigInt; 4]);

impl Cyclo8 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_int(n: i64) -> Self {
        let mut c = Self::zero();
        c.0[0] = BigInt::from(n);
        c
    }

    /// `w^k`.
    pub fn root(k: i64) -> Self {
        let k = k.rem_euclid(8);
        let mut c = Self::zero();
        c.0[(k % 4) as usize] = if k < 4 { BigInt::one() } else { -BigInt::one() };
        c
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Cyclo8(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn neg(&self) -> Self {
        Cyclo8(std::array::from_fn(|i| -&self.0[i]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r: [BigInt; 4] = Default::default();
        for i in 0..4 {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                let p = &self.0[i] * &o.0[j];
                if i + j < 4 {
                    r[i + j] += p;
                } else {
                    r[i + j - 4] -= p;
                }
            }
        }
        Cyclo8(r)
    }

    /// Multiplication by `w^k` permutes and negates the coordinates.
    pub fn rotate(&self, k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut r: [BigInt; 4] = Default::default();
        for i in 0..4 {
            let e = i + k;
            let v = self.0[i].clone();
            r[e % 4] += if (e / 4) % 2 == 0 { v } else { -v };
        }
        Cyclo8(r)
    }

    /// Largest absolute integer coordinate, for residual reports.
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_complex(&self) -> Complex<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c: Vec<f64> = self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        Complex::new(c[0] + h * (c[1] - c[3]), h * (c[1] + c[3]) + c[2])
    }
}

impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "w", "w^2", "w^3"];
        let mut first = true;
        for (c, n) in self.0.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first && c.is_positive() {
                write!(f, "+")?;
            }
            first = false;
            if n.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{n}")?;
            } else if *c == -BigInt::one() {
                write!(f, "-{n}")?;
            } else {
                write!(f, "{c}{n}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A Laurent polynomial in `ζ^{1/2}`; keys are doubled `ζ`-exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentZ(pub BTreeMap<i64, Cyclo8>);

impl LaurentZ {
    pub fn monomial(zeta2: i64, c: Cyclo8) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(zeta2, c);
        }
        LaurentZ(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn accumulate(&mut self, zeta2: i64, c: Cyclo8) {
        let e = self.0.entry(zeta2).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.0.remove(&zeta2);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.0 {
            r.accumulate(*k, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentZ(self.0.iter().map(|(k, c)| (*k, c.neg())).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentZ::default();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                r.accumulate(k1 + k2, c1.mul(c2));
            }
        }
        r
    }

    pub fn map_keys(&self, f: impl Fn(i64) -> i64) -> Self {
        let mut r = LaurentZ::default();
        for (k, c) in &self.0 {
            r.accumulate(f(*k), c.clone());
        }
        r
    }

    pub fn rotate_each(&self, f: impl Fn(i64) -> i64) -> Self {
        LaurentZ(self.0.iter().map(|(k, c)| (*k, c.rotate(f(*k)))).collect())
    }
}
