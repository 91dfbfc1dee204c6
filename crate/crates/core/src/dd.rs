//! Double-double arithmetic.
//!
//! A [`Dd`] is the unevaluated sum `hi + lo` of two binary64 numbers with
//! `|lo| <= ulp(hi) / 2`, giving about 106 bits of significand. The numeric
//! oracle samples truncated divergent integrals in this format: the constant
//! term of `∫_ε^1 t^{-5} ln^4 t dt` at `ε = 2^-8` sits fourteen decimal
//! orders below the sample itself, which binary64 cannot hold.
//!
//! Algorithms follow the classic error-free transformations (Knuth two-sum,
//! FMA two-product) and the QD library's exp/log reductions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    /// Unit roundoff, 2^-104.
    pub const EPSILON: f64 = 4.930_380_657_631_324e-32;

    /// Builds a value from a pair that may not be normalized.
    pub fn from_parts(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        if self.hi.is_finite() {
            self.hi + self.lo
        } else {
            self.hi
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplies by a power of two (exact).
    pub fn mul_pwr2(self, p: f64) -> Dd {
        Dd {
            hi: self.hi * p,
            lo: self.lo * p,
        }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = self.lo.mul_add(b, e);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        let s = self.hi.sqrt();
        let sd = Dd::from_f64(s);
        (self - sd.sqr()).mul_f64(0.5 / s) + sd
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut k = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.7 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let s = (self - Dd::LN2.mul_f64(k)).expm1_reduced();
        ldexp(s.add_f64(1.0), k as i32)
    }

    /// `exp(self) - 1`, accurate near zero.
    pub fn exp_m1(self) -> Dd {
        if self.hi.abs() < 0.5 * Dd::LN2.hi {
            self.expm1_reduced()
        } else {
            self.exp() - Dd::ONE
        }
    }

    /// `exp(r) - 1` for `|r| <= ln2 / 2`.
    fn expm1_reduced(self) -> Dd {
        let r = self.mul_pwr2(1.0 / 1024.0);
        // |r| <= ln2/2048, so eleven Taylor terms reach 2^-110.
        let mut term = r;
        let mut s = r;
        for i in 2..=12 {
            term = term * r / Dd::from_f64(i as f64);
            s += term;
            if term.hi.abs() <= 1e-36 * s.hi.abs() {
                break;
            }
        }
        // (1 + s)^2 = 1 + (2s + s^2), kept in expm1 form to avoid losing s.
        for _ in 0..10 {
            s = s.mul_pwr2(2.0) + s.sqr();
        }
        s
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            });
        }
        if !self.hi.is_finite() {
            return self;
        }
        // One Newton step on exp(y) = x doubles the 53 correct bits.
        let y = Dd::from_f64(self.hi.ln());
        y + self * (-y).exp() - Dd::ONE
    }

    /// `ln(1 + self)`, accurate for small arguments.
    pub fn ln_1p(self) -> Dd {
        if self.hi.abs() > 0.25 {
            return self.add_f64(1.0).ln();
        }
        // ln(1+x) = 2 atanh(z), z = x / (2 + x), |z| <= 1/7.
        let z = self / self.add_f64(2.0);
        let z2 = z.sqr();
        let mut pow = z;
        let mut sum = z;
        let mut k = 3.0;
        loop {
            pow *= z2;
            let term = pow / Dd::from_f64(k);
            sum += term;
            if term.hi.abs() <= 1e-36 * sum.hi.abs() || k > 200.0 {
                break;
            }
            k += 2.0;
        }
        sum.mul_pwr2(2.0)
    }
}

fn ldexp(x: Dd, k: i32) -> Dd {
    // Split the scaling so 2^k never overflows on its own.
    let half = k / 2;
    let a = 2f64.powi(half);
    let b = 2f64.powi(k - half);
    x.mul_pwr2(a).mul_pwr2(b)
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 }.add_f64(q3)
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Dd {
            fn $m(&mut self, b: Dd) {
                *self = *self $op b;
            }
        }
    };
}

assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}
