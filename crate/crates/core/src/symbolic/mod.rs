//! Exact ε-expansions of the primitive divergent integrals and the finite
//! parts assembled from them.
//!
//! Everything here is built from one recursion. Integrating
//! `∫_ε^c t^x ln^n t dt` by parts lowers `n` by one and leaves a boundary
//! term `-ε^{x+1} ln^n ε / (x+1)` (plus a constant when `c ≠ 1`); at
//! `x = -1` the antiderivative is `ln^{n+1} t / (n+1)` directly.

mod gamma;
mod mixed;
pub mod series;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{combine, EpsilonExpansion, ExpansionTerm};
use crate::special::{factorial, zeta_int, Method, SpecialValue, EULER_GAMMA};

pub use gamma::{gamma_derivative_fp, gamma_neg_finite_part};
pub use mixed::{
    half_moment, mixed_half_expansion, mixed_half_finite_part, mixed_half_upper_finite_part,
    MixedHalfExpansion, DEFAULT_SERIES_ORDER, SERIES_TAIL_TOL,
};
pub use series::{log1m_series, SeriesCoeffs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IntegralKind {
    /// `∫_ε^1 t^x ln^n t dt`
    PowerLogUnit,
    /// `∫_ε^{1/2} t^x ln^n t ln^r(1-t) dt`
    MixedHalf,
    /// `∫_ε^∞ t^{-m-1} e^{-t} dt`
    GammaTail,
    /// `∫_ε^1 t^{-m-1} ln^n t / (1-t) dt`
    PolygammaFull,
}

impl IntegralKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IntegralKind::PowerLogUnit => "power_log_unit",
            IntegralKind::MixedHalf => "mixed_half",
            IntegralKind::GammaTail => "gamma_tail",
            IntegralKind::PolygammaFull => "polygamma_full",
        }
    }
}

impl std::str::FromStr for IntegralKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "power_log_unit" => Ok(IntegralKind::PowerLogUnit),
            "mixed_half" => Ok(IntegralKind::MixedHalf),
            "gamma_tail" => Ok(IntegralKind::GammaTail),
            "polygamma_full" => Ok(IntegralKind::PolygammaFull),
            other => Err(Error::Domain(format!("unknown integral kind '{other}'"))),
        }
    }
}

/// One member of the supported integrand families. Fields a family does
/// not use are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralSpec {
    pub kind: IntegralKind,
    pub x: f64,
    pub n: u32,
    pub r: u32,
    pub m: u32,
}

impl IntegralSpec {
    pub fn power_log_unit(x: f64, n: u32) -> Self {
        IntegralSpec {
            kind: IntegralKind::PowerLogUnit,
            x,
            n,
            r: 0,
            m: 0,
        }
    }

    pub fn mixed_half(x: f64, n: u32, r: u32) -> Self {
        IntegralSpec {
            kind: IntegralKind::MixedHalf,
            x,
            n,
            r,
            m: 0,
        }
    }

    pub fn gamma_tail(m: u32) -> Self {
        IntegralSpec {
            kind: IntegralKind::GammaTail,
            x: 0.0,
            n: 0,
            r: 0,
            m,
        }
    }

    pub fn polygamma_full(m: u32, n: u32) -> Self {
        IntegralSpec {
            kind: IntegralKind::PolygammaFull,
            x: 0.0,
            n,
            r: 0,
            m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.x.is_finite() {
            return Err(Error::Domain(format!(
                "exponent x = {} is not finite",
                self.x
            )));
        }
        if self.kind == IntegralKind::PolygammaFull && self.n == 0 {
            return Err(Error::Domain(
                "polygamma_full needs n >= 1 (the digamma case has its own route)".into(),
            ));
        }
        Ok(())
    }

    /// The exact non-vanishing ε-behaviour of the truncated integral, with
    /// its neutrix limit as the constant term.
    pub fn expansion(&self) -> Result<EpsilonExpansion> {
        self.validate()?;
        match self.kind {
            IntegralKind::PowerLogUnit => Ok(power_log_expansion(self.x, self.n)),
            IntegralKind::MixedHalf => {
                Ok(mixed_half_expansion(self.x, self.n, self.r, DEFAULT_SERIES_ORDER)?.expansion)
            }
            IntegralKind::GammaTail => gamma_tail_expansion(self.m),
            IntegralKind::PolygammaFull => polygamma_full_expansion(self.m, self.n),
        }
    }
}

/// Exact expansion of `∫_ε^1 t^x ln^n t dt`.
///
/// For `x ≠ -1` the finite part is `(-1)^n n!/(x+1)^{n+1}`; for `x = -1`
/// the integral is `-ln^{n+1} ε/(n+1)` and the finite part is zero.
pub fn power_log_expansion(x: f64, n: u32) -> EpsilonExpansion {
    power_log_expansion_to(x, n, UpperLimit::One)
}

/// Exact expansion of `∫_ε^{1/2} t^x ln^n t dt`.
pub fn power_log_half_expansion(x: f64, n: u32) -> EpsilonExpansion {
    power_log_expansion_to(x, n, UpperLimit::Half)
}

#[derive(Clone, Copy, PartialEq)]
enum UpperLimit {
    One,
    Half,
}

fn power_log_expansion_to(x: f64, n: u32, upper: UpperLimit) -> EpsilonExpansion {
    let lc = match upper {
        UpperLimit::One => 0.0,
        UpperLimit::Half => -std::f64::consts::LN_2,
    };
    let a = x + 1.0;
    if a == 0.0 {
        // ∫ t^{-1} ln^n t = ln^{n+1} t/(n+1)
        let k = (n + 1) as f64;
        return EpsilonExpansion::from_terms(
            vec![
                ExpansionTerm::new(lc.powi(n as i32 + 1) / k, 0.0, 0),
                ExpansionTerm::new(-1.0 / k, 0.0, n + 1),
            ],
            true,
        );
    }
    // c^{a} where c is the upper limit.
    let upper_pow = match upper {
        UpperLimit::One => 1.0,
        UpperLimit::Half => (-a * std::f64::consts::LN_2).exp(),
    };
    // I_0 = (c^a - ε^a)/a
    let mut acc = EpsilonExpansion::from_terms(
        vec![
            ExpansionTerm::new(upper_pow / a, 0.0, 0),
            ExpansionTerm::new(-1.0 / a, a, 0),
        ],
        true,
    );
    // I_k = (c^a ln^k c - ε^a ln^k ε)/a - (k/a) I_{k-1}
    for k in 1..=n {
        let boundary = EpsilonExpansion::from_terms(
            vec![
                ExpansionTerm::new(upper_pow * lc.powi(k as i32) / a, 0.0, 0),
                ExpansionTerm::new(-1.0 / a, a, k),
            ],
            true,
        );
        acc = combine(&boundary, &acc, 1.0, -(k as f64) / a);
    }
    acc
}

/// `∫_0^1 t^k ln^n t dt = (-1)^n n!/(k+1)^{n+1}`.
pub fn log_power_moment(k: u32, n: u32) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * factorial(n) / ((k + 1) as f64).powi(n as i32 + 1)
}

/// `∫_0^1 ln^n t/(1-t) dt = Σ_k ∫_0^1 t^k ln^n t dt = (-1)^n n! ζ(n+1)`.
pub fn log_unit_zeta_integral(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("log_unit_zeta_integral needs n >= 1".into()));
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * factorial(n) * zeta_int(n + 1)?)
}

/// Non-vanishing part of `∫_ε^1 t^{-m-1} ln^n t/(1-t) dt` from the partial
/// fraction split `t^{-m-1}/(1-t) = Σ_{i=1}^{m+1} t^{-i} + 1/(1-t)`.
pub fn polygamma_full_expansion(m: u32, n: u32) -> Result<EpsilonExpansion> {
    let tail = EpsilonExpansion::constant(log_unit_zeta_integral(n)?);
    Ok((1..=m + 1).rev().fold(tail, |acc, i| {
        combine(&acc, &power_log_expansion(-(i as f64), n), 1.0, 1.0)
    }))
}

/// Non-vanishing part of `∫_ε^∞ t^{-m-1} e^{-t} dt`: the Taylor terms of
/// `e^{-t}` through `t^m` integrated over [ε, 1], with the finite part taken
/// from [`gamma_neg_finite_part`].
fn gamma_tail_expansion(m: u32) -> Result<EpsilonExpansion> {
    let fp = gamma_neg_finite_part(m)?.value;
    let divergent = (0..=m).fold(EpsilonExpansion::zero(), |acc, i| {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let piece = power_log_expansion(i as f64 - m as f64 - 1.0, 0)
            .filter(crate::expansion::TermClass::Negligible);
        combine(&acc, &piece, 1.0, sign / factorial(i))
    });
    Ok(combine(
        &divergent,
        &EpsilonExpansion::constant(fp),
        1.0,
        1.0,
    ))
}

/// `ψ⁽ⁿ⁾(-m)` as minus the neutrix limit of `∫_ε^1 t^{-m-1} ln^n t/(1-t) dt`,
/// assembled piece by piece from the partial fraction split.
pub fn polygamma_decomposition(n: u32, m: u32) -> Result<SpecialValue> {
    if n == 0 {
        return Err(Error::Domain("polygamma_decomposition needs n >= 1".into()));
    }
    let mut sum = 0.0;
    let mut scale = 0.0;
    for i in (1..=m + 1).rev() {
        let fp = power_log_expansion(-(i as f64), n).neutrix_limit()?;
        sum += fp;
        scale += fp.abs();
    }
    let zeta_part = log_unit_zeta_integral(n)?;
    let value = -(sum + zeta_part);
    SpecialValue::estimated(
        value,
        Method::SymbolicFp,
        4.0 * f64::EPSILON * (scale + zeta_part.abs()),
    )
}

/// `ψ(-m) = -γ + N-lim ∫_ε^1 (1 - t^{-m-1})/(1-t) dt`
/// `= -γ - Σ_{i=1}^{m+1} N-lim ∫_ε^1 t^{-i} dt`.
pub fn digamma_neg_symbolic(m: u32) -> Result<SpecialValue> {
    let mut sum = 0.0;
    for i in (1..=m + 1).rev() {
        sum += power_log_expansion(-(i as f64), 0).neutrix_limit()?;
    }
    SpecialValue::estimated(
        -EULER_GAMMA - sum,
        Method::SymbolicFp,
        4.0 * f64::EPSILON * (EULER_GAMMA + sum.abs()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::TermClass;
    use crate::quad::{integrate, QuadOptions};
    use crate::special::{polygamma_neg_closed, EULER_GAMMA};

    fn fp(x: f64, n: u32) -> f64 {
        power_log_expansion(x, n).neutrix_limit().unwrap()
    }

    #[test]
    fn power_log_examples() {
        let e = power_log_expansion(-2.0, 1);
        assert_eq!(e.neutrix_limit().unwrap(), -1.0);
        let neg: Vec<(f64, u32)> = e
            .filter(TermClass::Negligible)
            .terms()
            .iter()
            .map(|t| (t.lambda, t.logpow))
            .collect();
        assert_eq!(neg, vec![(-1.0, 1), (-1.0, 0)]);

        assert!((fp(-3.0, 3) + 0.375).abs() < 1e-15);

        let e = power_log_expansion(0.0, 0);
        assert_eq!(e.neutrix_limit().unwrap(), 1.0);
        assert_eq!(
            e.terms(),
            &[
                ExpansionTerm::new(1.0, 0.0, 0),
                ExpansionTerm::new(-1.0, 1.0, 0)
            ]
        );

        let e = power_log_expansion(-1.0, 2);
        assert_eq!(e.neutrix_limit().unwrap(), 0.0);
        assert_eq!(e.terms(), &[ExpansionTerm::new(-1.0 / 3.0, 0.0, 3)]);
    }

    #[test]
    fn log_branch_matches_quadrature() {
        // ∫_ε^1 ln² t / t dt at ε = 1e-3 equals -ln³(ε)/3.
        let eps: f64 = 1e-3;
        let q = integrate(|s: f64| s * s, 0.0, -eps.ln(), &QuadOptions::F64).unwrap();
        let e = power_log_expansion(-1.0, 2);
        assert!((q.value - e.evaluate(eps)).abs() < 1e-12 * q.value.abs());
        assert!((q.value + eps.ln().powi(3) / 3.0).abs() < 1e-12 * q.value.abs());
    }

    #[test]
    fn closed_form_finite_parts() {
        for m in 1..=8u32 {
            for n in 1..=8u32 {
                let want = -factorial(n) / (m as f64).powi(n as i32 + 1);
                let got = fp(-(m as f64) - 1.0, n);
                assert!((got - want).abs() <= 1e-13 * want.abs(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn expansion_evaluates_to_the_integral() {
        // Pointwise sum against direct quadrature in s = -ln t.
        for &(x, n) in &[(-2.5, 2u32), (-0.5, 3), (1.5, 1), (-4.0, 0)] {
            let eps: f64 = 0.01;
            let f = |s: f64| (-(x + 1.0) * s).exp() * (-s).powi(n as i32);
            let q = integrate(f, 0.0, -eps.ln(), &QuadOptions::F64).unwrap();
            let e = power_log_expansion(x, n);
            assert!(
                (q.value - e.evaluate(eps)).abs() < 1e-11 * (1.0 + q.value.abs()),
                "x={x} n={n}"
            );
        }
    }

    #[test]
    fn half_limit_variant() {
        // ∫_ε^{1/2} t^{-1} dt = -ln 2 - ln ε
        let e = power_log_half_expansion(-1.0, 0);
        assert!((e.neutrix_limit().unwrap() + std::f64::consts::LN_2).abs() < 1e-16);
        // ∫_0^{1/2} dt
        assert_eq!(
            power_log_half_expansion(0.0, 0).neutrix_limit().unwrap(),
            0.5
        );
        let eps: f64 = 0.05;
        let (x, n) = (-2.0, 2u32);
        let f = |s: f64| (-(x + 1.0) * s).exp() * (-s).powi(n as i32);
        let q = integrate(f, std::f64::consts::LN_2, -eps.ln(), &QuadOptions::F64).unwrap();
        assert!(
            (q.value - power_log_half_expansion(x, n).evaluate(eps)).abs() < 1e-12 * q.value.abs()
        );
    }

    #[test]
    fn zeta_integral_and_moments() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((log_unit_zeta_integral(1).unwrap() + z2).abs() < 1e-15);
        let z4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!((log_unit_zeta_integral(3).unwrap() + 6.0 * z4).abs() < 1e-14);
        assert_eq!(log_power_moment(0, 2), 2.0);
        assert_eq!(log_power_moment(1, 1), -0.25);
    }

    #[test]
    fn decomposition_examples() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((polygamma_decomposition(1, 1).unwrap().value - (1.0 + z2)).abs() < 1e-15);
        assert!((polygamma_decomposition(1, 0).unwrap().value - z2).abs() < 1e-15);
        let z3 = zeta_int(3).unwrap();
        assert!((polygamma_decomposition(2, 0).unwrap().value + 2.0 * z3).abs() < 1e-15);
        let v = polygamma_decomposition(3, 4).unwrap();
        assert_eq!(v.method, Method::SymbolicFp);
        assert!(v.err_estimate > 0.0);
    }

    #[test]
    fn decomposition_recurrence_and_agreement() {
        for n in 1..=6u32 {
            for m in 1..=10u32 {
                let a = polygamma_decomposition(n, m).unwrap().value;
                let b = polygamma_decomposition(n, m - 1).unwrap().value;
                let want = factorial(n) / (m as f64).powi(n as i32 + 1);
                assert!(
                    (a - b - want).abs() <= 1e-12 * a.abs().max(1.0),
                    "n={n} m={m}"
                );
                let c = polygamma_neg_closed(n, m).unwrap().value;
                assert!((a - c).abs() <= 1e-12, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn polygamma_full_expansion_structure() {
        let e = polygamma_full_expansion(2, 1).unwrap();
        let shapes: Vec<(f64, u32)> = e.terms().iter().map(|t| (t.lambda, t.logpow)).collect();
        assert_eq!(
            shapes,
            vec![
                (-2.0, 1),
                (-2.0, 0),
                (-1.0, 1),
                (-1.0, 0),
                (0.0, 2),
                (0.0, 0)
            ]
        );
        assert!(
            (e.neutrix_limit().unwrap() + polygamma_neg_closed(1, 2).unwrap().value).abs() < 1e-14
        );
        assert!(IntegralSpec::polygamma_full(1, 0).validate().is_err());
    }

    #[test]
    fn digamma_via_log_free_pieces() {
        for m in 0..=10u32 {
            let v = digamma_neg_symbolic(m).unwrap().value;
            assert!((v - (-EULER_GAMMA + crate::special::phi(m))).abs() < 1e-14);
        }
    }
}
