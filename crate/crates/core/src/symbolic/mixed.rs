//! `∫_ε^{1/2} t^x ln^n t ln^r(1-t) dt` through the series of `ln^r(1-t)`.
//!
//! With `k` the smallest positive integer such that `x + k > -1`, the
//! pieces `α_i ∫_ε^{1/2} t^{x+i} ln^n t dt` for `i < k` carry all of the
//! divergence and are expanded exactly; for `i ≥ k` the integrals converge
//! on [0, 1/2] and contribute only to the constant.

use crate::error::{Error, Result};
use crate::expansion::{combine, EpsilonExpansion};
use crate::special::{factorial, Method, SpecialValue};

use super::power_log_half_expansion;
use super::series::{coeff_bound, log1m_series};

/// Series truncation used when callers do not choose one.
pub const DEFAULT_SERIES_ORDER: usize = 60;

/// Largest admissible bound on the neglected series tail.
pub const SERIES_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MixedHalfExpansion {
    /// Divergent pieces expanded exactly; the convergent part sits in the
    /// constant term.
    pub expansion: EpsilonExpansion,
    /// Rigorous bound on the series terms beyond the truncation order.
    pub tail_bound: f64,
    /// Sum of magnitudes of the constant contributions (for roundoff).
    pub magnitude: f64,
}

/// `∫_0^{1/2} t^a ln^n t dt` for `a > -1`, by the closed form of
/// `(-1)^n ∫_{ln 2}^∞ s^n e^{-(a+1)s} ds`.
pub fn half_moment(a: f64, n: u32) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * abs_half_moment(a, n)
}

/// `∫_0^{1/2} t^a |ln t|^n dt = e^{-b ln2} Σ_{j=0}^n n!/j! (ln2)^j / b^{n-j+1}`, `b = a + 1`.
fn abs_half_moment(a: f64, n: u32) -> f64 {
    let b = a + 1.0;
    let l2 = std::f64::consts::LN_2;
    let nf = factorial(n);
    let sum: f64 = (0..=n)
        .map(|j| nf / factorial(j) * l2.powi(j as i32) / b.powi((n - j) as i32 + 1))
        .sum();
    (-b * l2).exp() * sum
}

fn first_convergent_index(x: f64) -> usize {
    // smallest k >= 1 with x + k > -1
    let k = (-1.0 - x).floor() + 1.0;
    if k < 1.0 {
        1
    } else {
        k as usize
    }
}

/// Bound on `Σ_{i>order} |α_i| ∫_0^{1/2} t^{x+i} |ln t|^n dt`.
fn tail_bound(x: f64, n: u32, r: u32, order: usize) -> f64 {
    let mut total = 0.0;
    let mut prev = f64::INFINITY;
    let mut i = order + 1;
    loop {
        let term = coeff_bound(r, i) * abs_half_moment(x + i as f64, n);
        total += term;
        let ratio = term / prev;
        if ratio < 0.75 && term <= 1e-20 * total.max(1e-300) {
            // Remaining terms shrink at least geometrically.
            return total + term * ratio / (1.0 - ratio);
        }
        if i > order + 10_000 {
            return f64::INFINITY;
        }
        prev = term;
        i += 1;
    }
}

pub fn mixed_half_expansion(x: f64, n: u32, r: u32, order: usize) -> Result<MixedHalfExpansion> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("exponent x = {x} is not finite")));
    }
    if r == 0 {
        let expansion = power_log_half_expansion(x, n);
        let magnitude = expansion.constant_coeff().abs();
        return Ok(MixedHalfExpansion {
            expansion,
            tail_bound: 0.0,
            magnitude,
        });
    }
    let k = first_convergent_index(x);
    if order < k.max(r as usize) {
        return Err(Error::Domain(format!(
            "series order {order} must reach the first convergent index {k} and the leading power {r}"
        )));
    }
    let alpha = log1m_series(r, order)?;
    let mut divergent = EpsilonExpansion::zero();
    let mut convergent = 0.0;
    let mut magnitude = 0.0;
    // Largest i first: smallest contributions are accumulated first.
    for i in (r as usize..=order).rev() {
        let a = alpha.alpha(i);
        if a == 0.0 {
            continue;
        }
        if i < k {
            let piece = power_log_half_expansion(x + i as f64, n);
            magnitude += (a * piece.constant_coeff()).abs();
            divergent = combine(&divergent, &piece, 1.0, a);
        } else {
            let v = a * half_moment(x + i as f64, n);
            magnitude += v.abs();
            convergent += v;
        }
    }
    let expansion = combine(
        &divergent,
        &EpsilonExpansion::constant(convergent),
        1.0,
        1.0,
    );
    let bound = tail_bound(x, n, r, order);
    if !(bound <= SERIES_TAIL_TOL) {
        return Err(Error::SeriesTail {
            order,
            bound,
            tolerance: SERIES_TAIL_TOL,
        });
    }
    Ok(MixedHalfExpansion {
        expansion,
        tail_bound: bound,
        magnitude,
    })
}

/// Neutrix limit of `∫_ε^{1/2} t^x ln^n t ln^r(1-t) dt`.
pub fn mixed_half_finite_part(x: f64, n: u32, r: u32, order: usize) -> Result<SpecialValue> {
    let mh = mixed_half_expansion(x, n, r, order)?;
    let value = mh.expansion.neutrix_limit()?;
    SpecialValue::estimated(
        value,
        Method::SymbolicFp,
        mh.tail_bound + 8.0 * f64::EPSILON * mh.magnitude,
    )
}

/// Neutrix limit of `∫_{1/2}^{1-ε} (1-t)^x ln^n t ln^r(1-t) dt`; after
/// `u = 1 - t` this is the lower-half integral with the log powers swapped.
pub fn mixed_half_upper_finite_part(x: f64, n: u32, r: u32, order: usize) -> Result<SpecialValue> {
    mixed_half_finite_part(x, r, n, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadOptions};
    use std::f64::consts::{LN_2, PI};

    // Li₂(1/2) = π²/12 - ln²2 / 2
    fn li2_half() -> f64 {
        PI * PI / 12.0 - LN_2 * LN_2 / 2.0
    }

    #[test]
    fn no_log_factor() {
        let v = mixed_half_finite_part(0.0, 0, 0, DEFAULT_SERIES_ORDER).unwrap();
        assert_eq!(v.value, 0.5);
    }

    #[test]
    fn log_over_t_is_minus_dilog() {
        let v = mixed_half_finite_part(-1.0, 0, 1, DEFAULT_SERIES_ORDER).unwrap();
        assert!((v.value + li2_half()).abs() < 1e-14);
        // Independent check: quadrature of ln(1-t)/t on [0, 1/2].
        let q = integrate(|t: f64| (-t).ln_1p() / t, 0.0, 0.5, &QuadOptions::F64).unwrap();
        assert!((v.value - q.value).abs() < 1e-13);
    }

    #[test]
    fn pole_piece_contributes_log_two() {
        // ∫ t^{-2} ln(1-t) = -∫ t^{-1} - Σ_{i≥2} (1/i) ∫ t^{i-2}; the first piece
        // has finite part ln 2, the rest converge.
        let v = mixed_half_finite_part(-2.0, 0, 1, DEFAULT_SERIES_ORDER).unwrap();
        let tail: f64 = (2..200)
            .map(|i| -(1.0 / i as f64) * 0.5f64.powi(i - 1) / (i - 1) as f64)
            .sum();
        assert!((v.value - (LN_2 + tail)).abs() < 1e-14);
        // Same value from quadrature of the regularized integrand.
        let q = integrate(
            |t: f64| ((-t).ln_1p() + t) / (t * t),
            0.0,
            0.5,
            &QuadOptions::F64,
        )
        .unwrap();
        assert!((v.value - (LN_2 + q.value)).abs() < 1e-13);
    }

    #[test]
    fn half_moment_matches_expansion_constant() {
        for &(a, n) in &[(0.0, 0u32), (0.5, 2), (3.0, 3), (-0.5, 1)] {
            let via_exp = power_log_half_expansion(a, n).neutrix_limit().unwrap();
            assert!(
                (half_moment(a, n) - via_exp).abs() < 1e-14 * via_exp.abs().max(1.0),
                "a={a} n={n}"
            );
        }
    }

    #[test]
    fn logs_at_both_ends() {
        // ∫_0^{1/2} ln t ln(1-t) dt by quadrature against the series route.
        let v = mixed_half_finite_part(0.0, 1, 1, DEFAULT_SERIES_ORDER).unwrap();
        let q = integrate(
            |s: f64| {
                let t = (-s).exp();
                t * (-s) * (-t).ln_1p()
            },
            LN_2,
            60.0,
            &QuadOptions::F64,
        )
        .unwrap();
        assert!((v.value - q.value).abs() < 1e-13);
        assert!(v.err_estimate > 0.0 && v.err_estimate < 1e-12);
    }

    #[test]
    fn short_series_is_rejected() {
        assert!(matches!(
            mixed_half_finite_part(-1.0, 2, 2, 12),
            Err(Error::SeriesTail { .. })
        ));
        assert!(mixed_half_finite_part(-5.5, 0, 1, 3).is_err());
    }

    #[test]
    fn upper_variant_swaps_powers() {
        let a = mixed_half_upper_finite_part(0.5, 2, 1, DEFAULT_SERIES_ORDER).unwrap();
        let b = mixed_half_finite_part(0.5, 1, 2, DEFAULT_SERIES_ORDER).unwrap();
        assert_eq!(a.value, b.value);
    }
}
