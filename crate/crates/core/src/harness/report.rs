use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::DiffConfig;
use crate::numeric::{DomainPoint, HalfInt, Truncation};
use crate::theta::Sign;

/// The tolerance ladder. Elliptic and series identities are compared in the
/// mixed metric `|lhs − rhs| / max(1, |rhs|)`, derivative identities against
/// `1 + |f|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub series: f64,
    pub first_derivative: f64,
    pub second_derivative: f64,
    pub covariance: f64,
    pub commutator: f64,
    pub span: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            series: 1e-10,
            first_derivative: 1e-6,
            second_derivative: 1e-5,
            covariance: 1e-4,
            commutator: 1e-3,
            span: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteParams {
    pub sign: Sign,
    pub m: HalfInt,
    pub s: HalfInt,
    pub sprime: HalfInt,
    pub seed: u64,
    pub points: usize,
    pub truncation: Truncation,
    pub diff: DiffConfig,
    pub tolerances: Tolerances,
}

impl SuiteParams {
    /// Defaults for everything but the indices; the sign follows `s′`
    /// (`+` for `s′ ∈ ℤ`, `−` otherwise).
    pub fn new(m: HalfInt, s: HalfInt, sprime: HalfInt) -> Self {
        Self {
            sign: if sprime.is_integer() { Sign::Plus } else { Sign::Minus },
            m,
            s,
            sprime,
            seed: 7,
            points: 10,
            truncation: Truncation::fixed(crate::calculus::HANDLE_HALFWIDTH),
            diff: DiffConfig::default(),
            tolerances: Tolerances::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = points;
        self
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` (JSON `null`) when an evaluation failed.
    pub max_abs_err: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    /// Negative controls pass when the falsified identity is violated.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub control: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub suite: String,
    pub params: SuiteParams,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, params: &SuiteParams) -> Self {
        Self { schema: 1, suite: suite.into(), params: params.clone(), checks: Vec::new(), overall: true }
    }

    pub fn push(&mut self, c: Check) {
        self.overall &= c.pass;
        self.checks.push(c);
    }

    /// A check that holds when the worst error is within `tol`.
    pub fn expect(&mut self, name: impl Into<String>, m: Metric, tol: f64) {
        let pass = m.error.is_none() && m.max <= tol;
        self.push(Check { name: name.into(), max_abs_err: m.value(), tol, pass, control: false, note: m.error });
    }

    /// A negative control: holds when the falsified identity exceeds `tol`.
    pub fn expect_violation(&mut self, name: impl Into<String>, m: Metric, tol: f64) {
        let pass = m.error.is_none() && m.max > tol;
        self.push(Check {
            name: format!("control: {}", name.into()),
            max_abs_err: m.value(),
            tol,
            pass,
            control: true,
            note: m.error,
        });
    }

    /// Appends the checks of another report under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Worst error over a set of points, or the first evaluation error.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    pub max: f64,
    pub error: Option<String>,
}

impl Metric {
    pub fn value(&self) -> Option<f64> {
        if self.error.is_some() || !self.max.is_finite() {
            None
        } else {
            Some(self.max)
        }
    }

    pub fn single(r: crate::error::Result<f64>) -> Self {
        match r {
            Ok(e) if e.is_nan() => Metric { max: f64::INFINITY, error: Some("NaN residual".into()) },
            Ok(e) => Metric { max: e, error: None },
            Err(e) => Metric { max: f64::INFINITY, error: Some(e.to_string()) },
        }
    }

    /// Evaluates on every point in parallel; the reduction runs in point order.
    pub fn over<F>(points: &[DomainPoint<f64>], f: F) -> Self
    where
        F: Fn(&DomainPoint<f64>) -> crate::error::Result<f64> + Sync,
    {
        let rs: Vec<_> = points.par_iter().map(&f).collect();
        let mut m = Metric { max: 0.0, error: None };
        for (i, r) in rs.into_iter().enumerate() {
            match r {
                Ok(e) if e.is_nan() => {
                    m.error.get_or_insert_with(|| format!("point {i}: NaN residual"));
                    m.max = f64::INFINITY;
                }
                Ok(e) => m.max = m.max.max(e),
                Err(e) => {
                    m.error.get_or_insert_with(|| format!("point {i}: {e}"));
                    m.max = f64::INFINITY;
                }
            }
        }
        m
    }
}

pub fn mixed_err(lhs: Complex<f64>, rhs: Complex<f64>) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(1.0)
}

pub fn rel_err(residual: Complex<f64>, scale: f64) -> f64 {
    residual.norm() / (1.0 + scale)
}
