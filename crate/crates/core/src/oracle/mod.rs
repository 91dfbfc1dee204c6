//! Numerical finite parts, independent of the symbolic route: truncate the
//! integral at ε, evaluate it by quadrature on a grid of ε values, and fit
//! the known `ε^λ ln^r ε` shapes by least squares. The fitted constant is
//! the finite part.

mod basis;
mod fit;
mod integrand;
mod shifted;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::expansion::TermShape;
use crate::quad::QuadOptions;
use crate::symbolic::IntegralSpec;

pub use basis::{
    default_grid, fit_basis_for, geometric_grid, pole_basis_for, tail_basis_for, TAIL_TOL,
};
pub use fit::{fit_finite_part, fit_finite_part_in, FitReport, CONDITION_LIMIT};
pub use integrand::{truncated_integral, truncated_integral_in, Truncated};
pub use shifted::{
    default_shifted_grid, shifted_argument_constant, shifted_argument_constant_with, shifted_basis,
    shifted_sample, DEFAULT_VANISHING_ORDER,
};

fn largest(grid: &[f64]) -> Result<f64> {
    grid.iter()
        .copied()
        .fold(None, |acc: Option<f64>, e| {
            Some(acc.map_or(e, |a| a.max(e)))
        })
        .ok_or_else(|| Error::InvalidGrid("empty ε grid".into()))
}

/// Double-double samples of the truncated integral over `grid`.
pub fn sample_integral(
    spec: &IntegralSpec,
    grid: &[f64],
    opts: &QuadOptions,
) -> Result<Vec<(f64, Dd)>> {
    grid.iter()
        .map(|&e| Ok((e, truncated_integral_in::<Dd>(spec, e, opts)?.value)))
        .collect()
}

/// Finite part of `spec` by fitting its full basis (exact non-vanishing
/// shapes plus enough vanishing ones for the grid). Without a grid the
/// default one is used, densified if the basis needs more points.
pub fn fit_integral(spec: &IntegralSpec, grid: Option<&[f64]>) -> Result<FitReport> {
    fit_integral_with(spec, grid, &QuadOptions::DD)
}

/// [`fit_integral`] with explicit quadrature tolerances for the samples.
pub fn fit_integral_with(
    spec: &IntegralSpec,
    grid: Option<&[f64]>,
    opts: &QuadOptions,
) -> Result<FitReport> {
    let owned;
    let (grid, basis) = match grid {
        Some(g) => (g, fit_basis_for(spec, largest(g)?)?),
        None => {
            let basis = fit_basis_for(spec, 2f64.powi(-8))?;
            owned = default_grid(basis.len());
            (&owned[..], basis)
        }
    };
    let samples = sample_integral(spec, grid, opts)?;
    fit_finite_part_in(&samples, &basis)
}

/// Grid used for [`log_unit_limit`]: `2^-40 … 2^-80`. Far enough down that
/// only the first vanishing power is needed.
pub fn log_unit_grid() -> Vec<f64> {
    geometric_grid(40, 80, 1)
}

/// `lim_{δ→0} ∫_δ^1 ln^n t/(1-t) dt` by extrapolation: the integral is
/// sampled on `grid` and fitted with the constant plus the shapes of
/// `-∫_0^δ ln^n t/(1-t) dt`.
pub fn log_unit_limit(n: u32, grid: &[f64]) -> Result<FitReport> {
    if n == 0 {
        return Err(Error::Domain("the integral diverges for n = 0".into()));
    }
    // ∫_δ^1 ln^n t/(1-t) is the m = 0 polygamma integrand less ∫ ln^n t/t,
    // but it is cheaper to integrate directly: t = e^{-s} gives (-s)^n/expm1(s).
    let opts = QuadOptions::DD;
    let mut samples = Vec::with_capacity(grid.len());
    for &d in grid {
        integrand::check_eps(d)?;
        let big_s = -Dd::from_f64(d).ln();
        let f = |s: Dd| (-s).powi(n as i32) / s.exp_m1();
        let mut pts = vec![Dd::ZERO];
        let mut p = 1.0;
        while p < big_s.to_f64() {
            pts.push(Dd::from_f64(p));
            p += 1.0;
        }
        pts.push(big_s);
        let q = crate::quad::integrate_with_breaks(f, &pts, &opts)?;
        samples.push((d, q.value));
    }
    let spec = IntegralSpec::polygamma_full(0, n);
    let mut basis = vec![TermShape::CONSTANT];
    basis.extend(tail_basis_for(&spec, largest(grid)?)?);
    fit_finite_part_in(&samples, &basis)
}
