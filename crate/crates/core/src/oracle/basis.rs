//! Which `ε^λ ln^r ε` columns a truncated integral needs.
//!
//! The non-vanishing shapes come straight from the exact expansions in
//! [`crate::symbolic`]. The vanishing remainder (what is left once the
//! divergent pieces are split off) is also a known power-log series; its
//! leading terms are added until the rest is below [`TAIL_TOL`] on the grid.

use crate::error::{Error, Result};
use crate::expansion::{TermClass, TermShape};
use crate::special::factorial;
use crate::symbolic::series::coeff_bound;
use crate::symbolic::{IntegralKind, IntegralSpec};

/// Largest vanishing remainder tolerated in a sample at the coarsest ε.
pub const TAIL_TOL: f64 = 1e-10;

/// Shapes of the exact expansion, always with `(0, 0)`.
pub fn pole_basis_for(spec: &IntegralSpec) -> Result<Vec<TermShape>> {
    let mut shapes = spec.expansion()?.shapes();
    if !shapes.contains(&TermShape::CONSTANT) {
        shapes.push(TermShape::CONSTANT);
    }
    Ok(shapes)
}

/// `∫_0^ε t^{a-1} |ln t|^n dt = ε^a Σ_{i≤n} n!/i! |ln ε|^i / a^{n-i+1}`,
/// which bounds the signed moment.
fn moment_bound(a: f64, n: u32, eps: f64) -> f64 {
    let l = -eps.ln();
    let nf = factorial(n);
    let sum: f64 = (0..=n)
        .map(|i| nf / factorial(i) * l.powi(i as i32) / a.powi((n - i) as i32 + 1))
        .sum();
    eps.powf(a) * sum
}

/// Appends `(a, 0..=n)` for `a = a0, a0 + 1, …` while the term bound at
/// `eps_max` exceeds the tolerance.
fn push_power_log_tail(
    out: &mut Vec<TermShape>,
    a0: f64,
    n: u32,
    eps_max: f64,
    weight: impl Fn(usize) -> f64,
) -> Result<()> {
    for k in 0..200usize {
        let a = a0 + k as f64;
        if weight(k) * moment_bound(a, n, eps_max) <= TAIL_TOL {
            return Ok(());
        }
        for j in (0..=n).rev() {
            out.push(TermShape::new(a, j));
        }
    }
    Err(Error::InvalidGrid(format!(
        "vanishing remainder does not fall below {TAIL_TOL:e} at ε = {eps_max}"
    )))
}

/// Vanishing shapes needed so that the omitted remainder is below
/// [`TAIL_TOL`] for every ε up to `eps_max`.
pub fn tail_basis_for(spec: &IntegralSpec, eps_max: f64) -> Result<Vec<TermShape>> {
    spec.validate()?;
    let mut out = Vec::new();
    match spec.kind {
        // The expansion is exact.
        IntegralKind::PowerLogUnit => {}
        // ∫_0^ε ln^n t/(1-t) = Σ_k ∫_0^ε t^k ln^n t
        IntegralKind::PolygammaFull => {
            push_power_log_tail(&mut out, 1.0, spec.n, eps_max, |_| 1.0)?
        }
        // Σ_{i>m} (-1)^i/i! ε^{i-m}/(i-m)
        IntegralKind::GammaTail => {
            let m = spec.m;
            for k in 1..200u32 {
                if eps_max.powi(k as i32) / (factorial(m + k) * k as f64) <= TAIL_TOL {
                    return Ok(out);
                }
                out.push(TermShape::new(k as f64, 0));
            }
            return Err(Error::InvalidGrid(format!(
                "vanishing remainder does not fall below {TAIL_TOL:e} at ε = {eps_max}"
            )));
        }
        // α_i ∫_0^ε t^{x+i} ln^n t for the convergent indices i.
        IntegralKind::MixedHalf => {
            let first = ((-1.0 - spec.x).floor() + 1.0).max(1.0).max(spec.r as f64) as usize;
            let a0 = spec.x + first as f64 + 1.0;
            let r = spec.r;
            if r == 0 {
                // Pure power-log: the expansion is exact.
                return Ok(out);
            }
            push_power_log_tail(&mut out, a0, spec.n, eps_max, |k| coeff_bound(r, first + k))?;
        }
    }
    Ok(out)
}

/// Full fitting basis: exact non-vanishing shapes plus the vanishing tail.
pub fn fit_basis_for(spec: &IntegralSpec, eps_max: f64) -> Result<Vec<TermShape>> {
    let mut basis = pole_basis_for(spec)?;
    for s in tail_basis_for(spec, eps_max)? {
        if !basis.contains(&s) {
            basis.push(s);
        }
    }
    debug_assert!(
        basis
            .iter()
            .filter(|s| s.class() == TermClass::Finite)
            .count()
            == 1
    );
    Ok(basis)
}

/// Geometric grid `2^{-lo} … 2^{-hi}` with `per_octave` points per factor of two.
pub fn geometric_grid(lo: u32, hi: u32, per_octave: u32) -> Vec<f64> {
    let d = per_octave.max(1);
    (0..=(hi - lo) * d)
        .map(|k| 2f64.powf(-(lo as f64) - k as f64 / d as f64))
        .collect()
}

/// The default grid `2^-8 … 2^-18`, subdivided when the basis needs more
/// than its eleven points.
pub fn default_grid(columns: usize) -> Vec<f64> {
    let mut d = 1;
    while 10 * d + 1 < columns as u32 + 2 {
        d += 1;
    }
    geometric_grid(8, 18, d)
}
