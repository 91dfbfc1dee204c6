//! Regularized gamma integrals.
//!
//! `Γ⁽ʳ⁾(x) = N-lim ∫_ε^∞ t^{x-1} ln^r t e^{-t} dt`. Subtracting the first
//! `q` Taylor terms of `e^{-t}` on [0, 1] leaves a convergent integral; the
//! subtracted monomials are added back through their exact finite parts.

use crate::error::Result;
use crate::quad::{integrate_with_breaks, QuadOptions};
use crate::special::{factorial, Method, SpecialValue};

use super::power_log_expansion;

/// `Σ_{i≥q} (-1)^i t^{i-q} / i!`, i.e. `t^{-q}` times the Taylor remainder
/// of `e^{-t}` after `q` terms. Stable for `0 ≤ t ≤ 1`.
fn taylor_remainder_scaled(q: u32, t: f64) -> f64 {
    let mut term = 1.0 / factorial(q);
    if q % 2 == 1 {
        term = -term;
    }
    let mut sum = term;
    let mut i = q;
    loop {
        i += 1;
        term *= -t / i as f64;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() || i > q + 60 {
            return sum;
        }
    }
}

/// Geometric breakpoints 0, s0, 2 s0, 4 s0, … up to `end`.
fn breaks(end: f64, first: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut p = first.min(end);
    while p < end {
        pts.push(p);
        p *= 2.0;
    }
    pts.push(end);
    pts
}

/// `∫_1^∞ t^{x-1} ln^r t e^{-t} dt` via `u = 1/t`:
/// `∫_0^1 u^{-x-1} (-ln u)^r e^{-1/u} du`.
fn upper_tail(x: f64, r: u32) -> Result<(f64, f64)> {
    let f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let l = -u.ln();
        ((-x - 1.0) * u.ln() - 1.0 / u).exp() * l.powi(r as i32)
    };
    let q = integrate_with_breaks(f, &[0.0, 0.05, 0.15, 0.4, 1.0], &QuadOptions::F64)?;
    Ok((q.value, q.abs_err))
}

/// `∫_0^1 t^{x-1} ln^r t [e^{-t} - Σ_{i<q} (-t)^i/i!] dt` with `a = x + q > 0`.
///
/// With `t = e^{-s}` the integrand is `e^{-a s} (-s)^r ρ(e^{-s})`, `ρ`
/// bounded by 1, and the range is cut where the remaining mass is below 1e-18.
fn regularized_head(x: f64, r: u32, q: u32) -> Result<(f64, f64)> {
    let a = x + q as f64;
    let f = |s: f64| {
        let t = (-s).exp();
        (-a * s).exp() * (-s).powi(r as i32) * taylor_remainder_scaled(q, t)
    };
    // ∫_S^∞ e^{-a s} s^r ds ≤ 2 e^{-aS} S^r / a once S ≥ 2r/a.
    let mut end = (2.0 * r as f64 / a).max(1.0);
    while 2.0 * (-a * end).exp() * end.powi(r as i32) / a > 1e-18 {
        end *= 1.25;
    }
    let cut = 2.0 * (-a * end).exp() * end.powi(r as i32) / a;
    let q = integrate_with_breaks(f, &breaks(end, 1.0 / a.max(1.0)), &QuadOptions::F64)?;
    Ok((q.value, q.abs_err + cut))
}

/// `Γ(-m)` from its three-piece regularization: the convergent tail over
/// [1, ∞), the Taylor-subtracted head over [0, 1] (through `t^m`), minus
/// `Σ_{i<m} (-1)^i / (i! (m - i))`.
pub fn gamma_neg_finite_part(m: u32) -> Result<SpecialValue> {
    let (tail, tail_err) = upper_tail(-(m as f64), 0)?;
    let (head, head_err) = regularized_head(-(m as f64), 0, m + 1)?;
    let corr: f64 = (0..m)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign / (factorial(i) * (m - i) as f64)
        })
        .sum();
    let value = tail + head - corr;
    let round = 8.0 * f64::EPSILON * (tail.abs() + head.abs() + corr.abs());
    SpecialValue::estimated(value, Method::SymbolicFp, tail_err + head_err + round)
}

/// `Γ⁽ʳ⁾(x)` for any real `x`, with `q` the smallest non-negative integer
/// making `x + q > 0`.
pub fn gamma_derivative_fp(r: u32, x: f64) -> Result<SpecialValue> {
    if !x.is_finite() {
        return Err(crate::error::Error::Domain(format!(
            "argument {x} is not finite"
        )));
    }
    let q = if x > 0.0 { 0 } else { (-x).floor() as u32 + 1 };
    let (tail, tail_err) = upper_tail(x, r)?;
    let (head, head_err) = regularized_head(x, r, q)?;
    let mut corr = 0.0;
    let mut corr_abs = 0.0;
    for i in 0..q {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let fp = power_log_expansion(x + i as f64 - 1.0, r).neutrix_limit()?;
        let c = sign / factorial(i) * fp;
        corr += c;
        corr_abs += c.abs();
    }
    let value = tail + head + corr;
    let round = 8.0 * f64::EPSILON * (tail.abs() + head.abs() + corr_abs);
    SpecialValue::estimated(value, Method::SymbolicFp, tail_err + head_err + round)
}
