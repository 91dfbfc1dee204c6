//! Laurent constant of `ψ⁽ⁿ⁾(-m + ε)` by least squares.
//!
//! The samples come from the classical function just off the pole:
//! `ψ⁽ⁿ⁾(-m+ε) = ψ⁽ⁿ⁾(1+ε) - Σ_{k=0}^{m} (-1)^n n!/(-m+ε+k)^{n+1}`, with the
//! rational part in double-double because the `k = m` term is of size
//! `ε^{-(n+1)}`. The fit uses every pole order up to `n + 1`, the constant,
//! and the analytic powers `ε, …, ε^d`.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::expansion::TermShape;
use crate::special::{factorial, polygamma_pos};

use super::basis::geometric_grid;
use super::fit::{fit_finite_part_in, FitReport};

/// Highest analytic power used by default.
pub const DEFAULT_VANISHING_ORDER: u32 = 8;

/// Default grid `2^-6 … 2^-14`, four points per octave.
pub fn default_shifted_grid() -> Vec<f64> {
    geometric_grid(6, 14, 4)
}

/// Basis `ε^{-(n+1)}, …, ε^{-1}, 1, ε, …, ε^d`.
pub fn shifted_basis(n: u32, d: u32) -> Vec<TermShape> {
    let mut b: Vec<TermShape> = (1..=n + 1)
        .rev()
        .map(|k| TermShape::new(-(k as f64), 0))
        .collect();
    b.push(TermShape::CONSTANT);
    b.extend((1..=d).map(|k| TermShape::new(k as f64, 0)));
    b
}

/// `ψ⁽ⁿ⁾(-m + ε)` in double-double for `0 < ε < 1/2`. `ε` must satisfy
/// `(1 + ε) - 1 = ε` in binary64 so both parts see the same argument.
pub fn shifted_sample(n: u32, m: u32, eps: f64) -> Result<Dd> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidGrid(format!("ε = {eps} is outside (0, 1/2)")));
    }
    let base = polygamma_pos(n, 1.0 + eps)?.value;
    let e = Dd::from_f64(eps);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let nf = factorial(n);
    let mut rational = Dd::ZERO;
    // Largest |x + k| first, the pole term last.
    for k in 0..=m {
        let arg = e.add_f64(k as f64 - m as f64);
        if arg.hi == 0.0 {
            return Err(Error::Pole(-(m as f64) + eps));
        }
        rational += Dd::from_f64(sign * nf) / arg.powi(n as i32 + 1);
    }
    Ok(Dd::from_f64(base) - rational)
}

/// Fits the Laurent expansion of `ψ⁽ⁿ⁾(-m + ε)` over `grid` with analytic
/// powers through `ε^d`; the constant is `ψ⁽ⁿ⁾(-m)` in the neutrix sense.
///
/// Grid points are rounded to the nearest `ε` with `(1 + ε) - 1 = ε`.
pub fn shifted_argument_constant_with(n: u32, m: u32, grid: &[f64], d: u32) -> Result<FitReport> {
    let mut samples = Vec::with_capacity(grid.len());
    for &g in grid {
        let eps = (1.0 + g) - 1.0;
        samples.push((eps, shifted_sample(n, m, eps)?));
    }
    fit_finite_part_in(&samples, &shifted_basis(n, d))
}

/// [`shifted_argument_constant_with`] at the default analytic order.
pub fn shifted_argument_constant(n: u32, m: u32, grid: &[f64]) -> Result<FitReport> {
    shifted_argument_constant_with(n, m, grid, DEFAULT_VANISHING_ORDER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{polygamma_neg_closed, polygamma_nonint, EULER_GAMMA};

    #[test]
    fn samples_match_classical_values() {
        for &(n, m, eps) in &[(0u32, 2u32, 0.01), (1, 0, 0.1), (3, 4, 0.2)] {
            let got = shifted_sample(n, m, eps).unwrap().to_f64();
            let want = polygamma_nonint(n, -(m as f64) + eps).unwrap().value;
            assert!((got - want).abs() < 1e-12 * want.abs(), "n={n} m={m}");
        }
    }

    #[test]
    fn digamma_constant() {
        let r = shifted_argument_constant(0, 2, &default_shifted_grid()).unwrap();
        assert!((r.finite_part - (1.5 - EULER_GAMMA)).abs() < 1e-9);
        assert!(!r.unreliable);
        // The pole of ψ at -2 is -1/ε.
        assert!((r.coefficients[0] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn trigamma_constants() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let grid = default_shifted_grid();
        let r = shifted_argument_constant(1, 0, &grid).unwrap();
        assert!((r.finite_part - z2).abs() < 1e-9);
        let r = shifted_argument_constant(1, 1, &grid).unwrap();
        assert!((r.finite_part - (1.0 + z2)).abs() < 1e-9);
        assert_eq!(
            r.finite_part.signum(),
            polygamma_neg_closed(1, 1).unwrap().value.signum()
        );
    }

    #[test]
    fn basis_layout() {
        let b = shifted_basis(2, 1);
        let want = [(-3.0, 0), (-2.0, 0), (-1.0, 0), (0.0, 0), (1.0, 0)];
        assert_eq!(b.len(), want.len());
        for (s, (l, r)) in b.iter().zip(want) {
            assert_eq!((s.lambda, s.logpow), (l, r));
        }
    }

    #[test]
    fn rejects_grid_outside_range() {
        assert!(shifted_argument_constant(1, 1, &[0.5, 0.1, 0.01]).is_err());
    }
}
