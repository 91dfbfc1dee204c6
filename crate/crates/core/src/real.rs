//! Scalar abstraction shared by the quadrature and least-squares kernels so
//! they run in both binary64 and double-double.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use crate::dd::Dd;
use crate::quad::GaussLegendre;

pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    /// Unit roundoff of the format.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn exp_m1(self) -> Self;
    fn powi(self, n: i32) -> Self;

    /// Shared 24-point Gauss–Legendre rule, built once per scalar type.
    fn gauss_rule() -> &'static GaussLegendre<Self>;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

pub(crate) const GAUSS_POINTS: usize = 24;

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON / 2.0;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn gauss_rule() -> &'static GaussLegendre<f64> {
        static RULE: OnceLock<GaussLegendre<f64>> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(GAUSS_POINTS))
    }
}

impl Real for Dd {
    const EPSILON: f64 = Dd::EPSILON;

    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn exp(self) -> Self {
        Dd::exp(self)
    }
    fn ln(self) -> Self {
        Dd::ln(self)
    }
    fn ln_1p(self) -> Self {
        Dd::ln_1p(self)
    }
    fn exp_m1(self) -> Self {
        Dd::exp_m1(self)
    }
    fn powi(self, n: i32) -> Self {
        Dd::powi(self, n)
    }
    fn gauss_rule() -> &'static GaussLegendre<Dd> {
        static RULE: OnceLock<GaussLegendre<Dd>> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(GAUSS_POINTS))
    }
}
