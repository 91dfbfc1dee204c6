//! Closed forms and classical evaluations.
//!
//! At a non-positive integer `-m` the regularized values are
//!
//! * `Γ(-m) = (-1)^m / m! · (φ(m) - γ)`,
//! * `ψ(-m) = -γ + φ(m)`,
//! * `ψ⁽ⁿ⁾(-m) = Σ_{i=1}^{m} n!/i^{n+1} + (-1)^{n+1} n! ζ(n+1)` for `n ≥ 1`,
//!
//! where `φ(m)` is the m-th harmonic number. Positive and non-integer
//! arguments use the ordinary series and the recurrence
//! `ψ⁽ⁿ⁾(x+1) = ψ⁽ⁿ⁾(x) + (-1)^n n! / x^{n+1}`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler's constant γ, correctly rounded.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Explicit terms summed by [`polygamma_pos`] before the Euler–Maclaurin tail.
pub const POLYGAMMA_TERMS: usize = 10_000;

/// Relative distance to a non-positive integer treated as a pole.
pub const POLE_TOL: f64 = 1e-9;

/// B_2, B_4, ..., B_20.
pub(crate) const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    ClosedForm,
    SymbolicFp,
    NumericFit,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "CLOSED_FORM",
            Method::SymbolicFp => "SYMBOLIC_FP",
            Method::NumericFit => "NUMERIC_FIT",
        }
    }
}

/// A function value tagged with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialValue {
    pub value: f64,
    pub method: Method,
    pub err_estimate: f64,
}

impl SpecialValue {
    /// An exact closed-form value; the error estimate is zero.
    pub fn closed(value: f64) -> Result<Self> {
        Self::build(value, Method::ClosedForm, 0.0)
    }

    /// A computed value. A zero estimate is raised to one ulp of the value,
    /// since only closed forms may claim no error.
    pub fn estimated(value: f64, method: Method, err_estimate: f64) -> Result<Self> {
        let floor = if method == Method::ClosedForm {
            0.0
        } else {
            ulp(value)
        };
        Self::build(value, method, err_estimate.abs().max(floor))
    }

    fn build(value: f64, method: Method, err_estimate: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Domain(format!("non-finite value {value}")));
        }
        Ok(SpecialValue {
            value,
            method,
            err_estimate,
        })
    }
}

pub(crate) fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        f64::MIN_POSITIVE
    } else {
        f64::EPSILON * a
    }
}

/// `n!` as a float (exact through 22!).
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Harmonic partial sum `φ(m) = Σ_{i=1}^m 1/i`, with `φ(0) = 0`.
pub fn phi(m: u32) -> f64 {
    // Smallest terms first.
    (1..=m).rev().map(|i| 1.0 / i as f64).sum()
}

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// Riemann ζ(s) for integer `s ≥ 2`: 15 direct terms plus an
/// Euler–Maclaurin tail through the B_20 correction.
pub fn zeta_int(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta_int needs s >= 2, got {s}")));
    }
    zeta_tail(s, 0)
}

/// `Σ_{k>m} k^{-s}` for integer `s ≥ 2`, summed without cancellation: 15
/// direct terms, then the Euler–Maclaurin tail.
pub fn zeta_tail(s: u32, m: u32) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta_tail needs s >= 2, got {s}")));
    }
    let start = m as f64 + 1.0;
    let direct: f64 = (0..15)
        .rev()
        .map(|k| (start + k as f64).powi(-(s as i32)))
        .sum();
    Ok(direct + power_sum_tail(start + 15.0, s as f64))
}

/// Euler–Maclaurin tail `Σ_{k≥0} (y + k)^{-s}` for `y` large enough that
/// the asymptotic corrections through B_20 are negligible.
fn power_sum_tail(y: f64, s: f64) -> f64 {
    let mut tail = y.powf(1.0 - s) / (s - 1.0) + 0.5 * y.powf(-s);
    // B_2j/(2j)! · s(s+1)…(s+2j-2) · y^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut ypow = y.powf(-s - 1.0);
    let mut corrections = Vec::with_capacity(BERNOULLI.len());
    for (j, &b) in BERNOULLI.iter().enumerate() {
        let two_j = 2.0 * (j as f64 + 1.0);
        corrections.push(b / fact * rising * ypow);
        rising *= (s + two_j - 1.0) * (s + two_j);
        fact *= (two_j + 1.0) * (two_j + 2.0);
        ypow /= y * y;
    }
    tail += corrections.iter().rev().sum::<f64>();
    tail
}

/// `Γ(-m) = (-1)^m/m! · (φ(m) - γ)`. `m = 0` gives `Γ(0) = -γ`.
pub fn gamma_neg_closed(m: u32) -> Result<SpecialValue> {
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    SpecialValue::closed(sign / factorial(m) * (phi(m) - EULER_GAMMA))
}

/// `ψ(-m) = -γ + φ(m)`.
pub fn digamma_neg(m: u32) -> Result<SpecialValue> {
    SpecialValue::closed(-EULER_GAMMA + phi(m))
}

/// `ψ⁽ⁿ⁾(-m) = Σ_{i=1}^m n!/i^{n+1} + (-1)^{n+1} n! ζ(n+1)` for `n ≥ 1`.
///
/// For even `n` the two parts nearly cancel, so the value is formed as
/// `-n! Σ_{i>m} i^{-(n+1)}` instead, which keeps full relative accuracy.
pub fn polygamma_neg_closed(n: u32, m: u32) -> Result<SpecialValue> {
    if n == 0 {
        return Err(Error::Domain(
            "polygamma_neg_closed needs n >= 1; use digamma_neg".into(),
        ));
    }
    let nf = factorial(n);
    if n.is_multiple_of(2) {
        return SpecialValue::closed(-nf * zeta_tail(n + 1, m)?);
    }
    let partial: f64 = (1..=m)
        .rev()
        .map(|i| nf / (i as f64).powi(n as i32 + 1))
        .sum();
    SpecialValue::closed(partial + nf * zeta_int(n + 1)?)
}

/// Pole test for real arguments: exact for integers, relative tolerance
/// [`POLE_TOL`] otherwise.
pub fn check_pole(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {x}")));
    }
    if x <= 0.0 && (x - x.round()).abs() <= POLE_TOL * x.abs().max(1.0) {
        return Err(Error::Pole(x));
    }
    Ok(())
}

/// `ψ⁽ⁿ⁾(x)` for `x > 0`.
///
/// `n ≥ 1`: `(-1)^{n+1} n! Σ_{k≥0} (x+k)^{-(n+1)}`.
/// `n = 0`: `-γ + Σ_{k≥0} [1/(k+1) - 1/(k+x)]`, the series form of
/// `ψ(x) = -γ + ∫_0^1 (1 - t^{x-1})/(1 - t) dt`.
///
/// Both sum [`POLYGAMMA_TERMS`] terms explicitly and close with an
/// Euler–Maclaurin tail through the B_4 correction.
pub fn polygamma_pos(n: u32, x: f64) -> Result<SpecialValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "polygamma_pos needs a finite x > 0, got {x}"
        )));
    }
    let k_end = POLYGAMMA_TERMS as f64;
    let y = x + k_end;
    let (value, scale) = if n == 0 {
        let d = x - 1.0;
        let direct: f64 = (0..POLYGAMMA_TERMS)
            .rev()
            .map(|k| {
                let k = k as f64;
                d / ((k + 1.0) * (k + x))
            })
            .sum();
        let k1 = k_end + 1.0;
        let integral = (d / k1).ln_1p();
        let f0 = d / (k1 * y);
        let f1 = -1.0 / (k1 * k1) + 1.0 / (y * y);
        let f3 = -6.0 / k1.powi(4) + 6.0 / y.powi(4);
        let tail = integral + 0.5 * f0 - BERNOULLI[0] / 2.0 * f1 - BERNOULLI[1] / 24.0 * f3;
        let sum = direct + tail;
        (-EULER_GAMMA + sum, sum.abs() + EULER_GAMMA)
    } else {
        let s = n as f64 + 1.0;
        let direct: f64 = (0..POLYGAMMA_TERMS)
            .rev()
            .map(|k| (x + k as f64).powi(-(n as i32 + 1)))
            .sum();
        let tail = y.powf(1.0 - s) / (s - 1.0)
            + 0.5 * y.powf(-s)
            + BERNOULLI[0] / 2.0 * s * y.powf(-s - 1.0)
            + BERNOULLI[1] / 24.0 * s * (s + 1.0) * (s + 2.0) * y.powf(-s - 3.0);
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let v = sign * factorial(n) * (direct + tail);
        (v, v.abs())
    };
    // Summation roundoff dominates; the next Euler–Maclaurin term is below 1e-25.
    SpecialValue::estimated(value, Method::ClosedForm, 8.0 * f64::EPSILON * scale)
}

/// Number of unit steps that carry `x` above 1 when `x < 0`.
fn shift_count(x: f64) -> u32 {
    (-x).ceil() as u32 + 1
}

/// `ψ(x)` for any real x that is not a non-positive integer.
pub fn digamma_nonint(x: f64) -> Result<SpecialValue> {
    check_pole(x)?;
    if x > 0.0 {
        return polygamma_pos(0, x);
    }
    // ψ(x) = ψ(x + s) - Σ_{k<s} 1/(x+k), from ψ(y+1) = ψ(y) + 1/y.
    let steps = shift_count(x);
    let base = polygamma_pos(0, x + steps as f64)?;
    let correction: f64 = (0..steps).map(|k| 1.0 / (x + k as f64)).sum();
    let scale = base.value.abs() + (0..steps).map(|k| 1.0 / (x + k as f64).abs()).sum::<f64>();
    SpecialValue::estimated(
        base.value - correction,
        Method::ClosedForm,
        base.err_estimate + 4.0 * f64::EPSILON * scale,
    )
}

/// `ψ⁽ⁿ⁾(x)`, `n ≥ 1`, for any real x that is not a non-positive integer.
/// Positive arguments (integer or not) go straight to [`polygamma_pos`].
pub fn polygamma_nonint(n: u32, x: f64) -> Result<SpecialValue> {
    if n == 0 {
        return digamma_nonint(x);
    }
    check_pole(x)?;
    if x > 0.0 {
        return polygamma_pos(n, x);
    }
    let steps = shift_count(x);
    let base = polygamma_pos(n, x + steps as f64)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let nf = factorial(n);
    let terms: Vec<f64> = (0..steps)
        .map(|k| sign * nf / (x + k as f64).powi(n as i32 + 1))
        .collect();
    let correction: f64 = terms.iter().sum();
    let scale = base.value.abs() + terms.iter().map(|t| t.abs()).sum::<f64>();
    SpecialValue::estimated(
        base.value - correction,
        Method::ClosedForm,
        base.err_estimate + 4.0 * f64::EPSILON * scale,
    )
}

/// Classical Γ(x) away from the poles.
pub fn gamma_classical(x: f64) -> Result<SpecialValue> {
    check_pole(x)?;
    let v = statrs::function::gamma::gamma(x);
    SpecialValue::estimated(v, Method::ClosedForm, 1e-14 * v.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    /// γ = lim (φ(N) - ln N), Euler–Maclaurin accelerated:
    /// φ(N) - ln N - 1/(2N) + 1/(12N²) - 1/(120N⁴) + ...
    /// Evaluated in double-double so the summation itself adds no error.
    fn gamma_oracle(n: u32) -> f64 {
        use crate::dd::Dd;
        let nd = Dd::from_f64(n as f64);
        let mut h = Dd::ZERO;
        for i in (1..=n).rev() {
            h += Dd::ONE / Dd::from_f64(i as f64);
        }
        let corr = -nd.recip().mul_pwr2(0.5) + nd.sqr().mul_f64(12.0).recip()
            - nd.powi(4).mul_f64(120.0).recip();
        (h - nd.ln() + corr).to_f64()
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0), 0.0);
        assert!(close(phi(3), 11.0 / 6.0, 1e-15));
        assert!(close(phi(10), 7381.0 / 2520.0, 1e-15));
        assert!((phi(10) - 2.928_968_3).abs() < 1e-7);
    }

    #[test]
    fn euler_gamma_matches_summation_oracle() {
        assert!((euler_gamma() - gamma_oracle(10_000)).abs() < 1e-15);
        let crude = phi(1_000_000) - (1e6f64).ln();
        assert!((euler_gamma() - crude).abs() < 1e-6);
    }

    #[test]
    fn zeta_values() {
        assert!(close(zeta_int(2).unwrap(), PI * PI / 6.0, 1e-15));
        assert!(close(zeta_int(4).unwrap(), PI.powi(4) / 90.0, 1e-15));
        // Direct summation to 10^6 with integral tail bound 1/(2·10^12).
        let mut s3: f64 = (1..1_000_000u64).rev().map(|k| (k as f64).powi(-3)).sum();
        s3 += 0.5e-12 + 0.5e-18;
        assert!(close(zeta_int(3).unwrap(), s3, 1e-14));
        assert!((zeta_int(3).unwrap() - 1.202_056_9).abs() < 1e-7);
        assert!(zeta_int(1).is_err());
    }

    #[test]
    fn gamma_neg_closed_values() {
        let g = EULER_GAMMA;
        assert!(close(gamma_neg_closed(1).unwrap().value, g - 1.0, 1e-15));
        assert!(close(
            gamma_neg_closed(2).unwrap().value,
            (1.5 - g) / 2.0,
            1e-15
        ));
        assert!(close(
            gamma_neg_closed(4).unwrap().value,
            (25.0 / 12.0 - g) / 24.0,
            1e-15
        ));
        assert!((gamma_neg_closed(4).unwrap().value - 0.062_754_9).abs() < 1e-7);
        assert_eq!(gamma_neg_closed(0).unwrap().value, -g);
        assert_eq!(gamma_neg_closed(3).unwrap().method, Method::ClosedForm);
    }

    #[test]
    fn gamma_neg_satisfies_shifted_recurrence() {
        // Γ(-m) + Γ(-m+1)/m = (-1)^m / (m · m!)
        for m in 1..=8u32 {
            let lhs = gamma_neg_closed(m).unwrap().value
                + gamma_neg_closed(m - 1).unwrap().value / m as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = sign / (m as f64 * factorial(m));
            assert!((lhs - rhs).abs() < 1e-15, "m={m}");
        }
    }

    #[test]
    fn digamma_neg_values() {
        assert_eq!(digamma_neg(0).unwrap().value, -EULER_GAMMA);
        assert!((digamma_neg(2).unwrap().value - 0.922_784_3).abs() < 1e-7);
        assert!((digamma_neg(3).unwrap().value - 1.256_117_7).abs() < 1e-7);
        for m in 0..20 {
            assert_eq!(digamma_neg(m).unwrap().value, -EULER_GAMMA + phi(m));
        }
    }

    #[test]
    fn polygamma_neg_closed_values() {
        let z2 = PI * PI / 6.0;
        let z4 = PI.powi(4) / 90.0;
        assert!(close(polygamma_neg_closed(1, 0).unwrap().value, z2, 1e-15));
        assert!(close(
            polygamma_neg_closed(1, 2).unwrap().value,
            1.25 + z2,
            1e-15
        ));
        assert!(close(
            polygamma_neg_closed(3, 1).unwrap().value,
            6.0 + 6.0 * z4,
            1e-15
        ));
        assert!(polygamma_neg_closed(0, 1).is_err());
        // Even orders: -2 (ζ(3) - 1 - 1/8).
        let z3 = zeta_int(3).unwrap();
        assert!(close(
            polygamma_neg_closed(2, 2).unwrap().value,
            -2.0 * (z3 - 1.125),
            1e-14
        ));
    }

    #[test]
    fn polygamma_neg_closed_recurrence_is_relatively_exact() {
        for n in 1..=8u32 {
            for m in 1..=30u32 {
                let a = polygamma_neg_closed(n, m).unwrap().value;
                let b = polygamma_neg_closed(n, m - 1).unwrap().value;
                let want = factorial(n) / (m as f64).powi(n as i32 + 1);
                assert!(
                    (a - b - want).abs() <= 1e-13 * a.abs().max(b.abs()),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn zeta_tail_values() {
        assert_eq!(zeta_tail(2, 0).unwrap(), zeta_int(2).unwrap());
        let direct: f64 = (1..=1_000_000u32)
            .rev()
            .map(|k| (k as f64 + 3.0).powi(-5))
            .sum();
        // Σ_{k>10^6+3} k^-5 ≈ 2.5e-25 is below the comparison tolerance.
        assert!(close(zeta_tail(5, 3).unwrap(), direct, 1e-14));
        assert!(zeta_tail(1, 3).is_err());
    }

    #[test]
    fn polygamma_pos_classical_values() {
        let g = EULER_GAMMA;
        assert!(close(polygamma_pos(0, 1.0).unwrap().value, -g, 1e-13));
        assert!(close(polygamma_pos(0, 2.0).unwrap().value, 1.0 - g, 1e-13));
        assert!(close(
            polygamma_pos(0, 0.5).unwrap().value,
            -g - 2.0 * LN_2,
            1e-13
        ));
        assert!(close(
            polygamma_pos(1, 1.0).unwrap().value,
            PI * PI / 6.0,
            1e-13
        ));
        assert!(close(
            polygamma_pos(1, 0.5).unwrap().value,
            PI * PI / 2.0,
            1e-13
        ));
        // ψ''(1) = -2 ζ(3)
        assert!(close(
            polygamma_pos(2, 1.0).unwrap().value,
            -2.0 * zeta_int(3).unwrap(),
            1e-13
        ));
        assert!(polygamma_pos(1, 0.0).is_err());
        assert!(polygamma_pos(1, -1.5).is_err());
    }

    #[test]
    fn polygamma_pos_recurrence() {
        for &x in &[0.5, 1.0, 2.5] {
            for n in 0..=4u32 {
                let a = polygamma_pos(n, x + 1.0).unwrap().value;
                let b = polygamma_pos(n, x).unwrap().value;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let want = sign * factorial(n) / x.powi(n as i32 + 1);
                assert!((a - b - want).abs() < 1e-11, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn nonint_values_and_poles() {
        let g = EULER_GAMMA;
        let psi_half = -g - 2.0 * LN_2;
        assert!(close(
            digamma_nonint(1.5).unwrap().value,
            2.0 + psi_half,
            1e-12
        ));
        assert!(close(digamma_nonint(0.5).unwrap().value, psi_half, 1e-12));
        // ψ(-1/2) = ψ(1/2) - 1/(-1/2)
        assert!(close(
            digamma_nonint(-0.5).unwrap().value,
            psi_half + 2.0,
            1e-12
        ));
        assert!(close(
            polygamma_nonint(1, 0.5).unwrap().value,
            PI * PI / 2.0,
            1e-12
        ));
        assert!(close(
            polygamma_nonint(1, -0.5).unwrap().value,
            PI * PI / 2.0 + 4.0,
            1e-12
        ));
        assert_eq!(
            polygamma_nonint(2, 1.0).unwrap().value,
            polygamma_pos(2, 1.0).unwrap().value
        );
        assert_eq!(digamma_nonint(-2.0), Err(Error::Pole(-2.0)));
        assert_eq!(polygamma_nonint(1, 0.0), Err(Error::Pole(0.0)));
        assert!(matches!(digamma_nonint(-3.0 + 1e-12), Err(Error::Pole(_))));
        assert!(digamma_nonint(-3.0 + 1e-6).is_ok());
    }

    #[test]
    fn special_value_rules() {
        let v = SpecialValue::estimated(1.0, Method::SymbolicFp, 0.0).unwrap();
        assert!(v.err_estimate > 0.0);
        assert!(SpecialValue::closed(f64::INFINITY).is_err());
    }
}
