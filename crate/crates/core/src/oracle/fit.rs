//! Least-squares extraction of the constant term from ε-samples.

use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::expansion::TermShape;
use crate::lsq;
use crate::real::Real;

/// Fits whose condition estimate exceeds this are flagged unreliable.
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub finite_part: f64,
    pub basis: Vec<TermShape>,
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    /// Least-squares standard error of `finite_part`.
    pub std_error: f64,
    pub condition_estimate: f64,
    pub samples: Vec<(f64, f64)>,
    pub unreliable: bool,
}

/// `ε^λ ln^r ε` in the scalar type of the fit.
pub(crate) fn basis_value<T: Real>(shape: TermShape, eps: T, ln_eps: T) -> T {
    let lambda = shape.lambda;
    let p = if lambda == lambda.trunc() && lambda.abs() < 1024.0 {
        eps.powi(lambda as i32)
    } else {
        (T::from_f64(lambda) * ln_eps).exp()
    };
    p * ln_eps.powi(shape.logpow as i32)
}

/// The basis with `(0, 0)` present exactly once and duplicates removed,
/// keeping the caller's order otherwise.
fn normalize_basis(basis: &[TermShape]) -> Vec<TermShape> {
    let mut out: Vec<TermShape> = Vec::with_capacity(basis.len() + 1);
    for &s in basis {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    if !out.contains(&TermShape::CONSTANT) {
        out.push(TermShape::CONSTANT);
    }
    out
}

fn validate_samples(eps: &[f64], values_finite: bool, columns: usize) -> Result<()> {
    if let Some(bad) = eps.iter().find(|&&e| !(e > 0.0 && e < 0.5)) {
        return Err(Error::InvalidGrid(format!("ε = {bad} is outside (0, 1/2)")));
    }
    let mut sorted = eps.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidGrid("ε values must be distinct".into()));
    }
    if !values_finite {
        return Err(Error::InvalidGrid("sample values must be finite".into()));
    }
    if eps.len() < columns + 2 {
        return Err(Error::Underdetermined {
            samples: eps.len(),
            columns,
            needed: columns + 2,
        });
    }
    Ok(())
}

/// Fits `value(ε) ≈ Σ c_j ε^{λ_j} ln^{r_j} ε` in the scalar type `T`.
///
/// Each row is divided by its largest basis magnitude before the solve, so
/// that the few samples where the divergent columns are huge do not swamp
/// the rest; columns are then scaled to unit norm inside the QR.
pub fn fit_finite_part_in<T: Real>(samples: &[(f64, T)], basis: &[TermShape]) -> Result<FitReport> {
    let basis = normalize_basis(basis);
    let eps: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let finite = samples.iter().all(|s| s.1.to_f64().is_finite());
    validate_samples(&eps, finite, basis.len())?;

    let mut rows = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    let mut raw_rows = Vec::with_capacity(samples.len());
    for &(e, v) in samples {
        let et = T::from_f64(e);
        let le = et.ln();
        let row: Vec<T> = basis.iter().map(|&s| basis_value(s, et, le)).collect();
        let w = row.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max);
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "basis is not representable at ε = {e}"
            )));
        }
        let w = T::from_f64(w);
        rows.push(row.iter().map(|&x| x / w).collect::<Vec<T>>());
        rhs.push(v / w);
        raw_rows.push(row);
    }
    let sol = lsq::solve(&rows, &rhs)?;

    let mut residual = T::zero();
    for (row, &(_, v)) in raw_rows.iter().zip(samples) {
        let mut fitted = T::zero();
        for (&a, &c) in row.iter().zip(&sol.coeffs) {
            fitted += a * c;
        }
        let r = fitted - v;
        residual += r * r;
    }
    let k = basis
        .iter()
        .position(|&s| s == TermShape::CONSTANT)
        .unwrap_or(0);
    Ok(FitReport {
        finite_part: sol.coeffs[k].to_f64(),
        coefficients: sol.coeffs.iter().map(|c| c.to_f64()).collect(),
        residual_norm: residual.sqrt().to_f64(),
        std_error: sol.std_errors[k],
        condition_estimate: sol.condition_estimate,
        unreliable: !(sol.condition_estimate <= CONDITION_LIMIT),
        samples: samples.iter().map(|&(e, v)| (e, v.to_f64())).collect(),
        basis,
    })
}

/// Fit over binary64 samples. The solve itself runs in double-double.
pub fn fit_finite_part(samples: &[(f64, f64)], basis: &[TermShape]) -> Result<FitReport> {
    let widened: Vec<(f64, Dd)> = samples.iter().map(|&(e, v)| (e, Dd::from_f64(v))).collect();
    fit_finite_part_in(&widened, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::power_log_expansion;

    fn grid() -> Vec<f64> {
        (8..=18).map(|k| 2f64.powi(-k)).collect()
    }

    #[test]
    fn constant_samples() {
        let s: Vec<(f64, f64)> = grid().into_iter().map(|e| (e, 5.0)).collect();
        let r = fit_finite_part(&s, &[TermShape::CONSTANT]).unwrap();
        assert_eq!(r.finite_part, 5.0);
        assert!(r.residual_norm < 1e-25);
        assert!(!r.unreliable);
    }

    #[test]
    fn exact_expansion_samples() {
        let e = power_log_expansion(-2.0, 1);
        let s: Vec<(f64, f64)> = grid().into_iter().map(|x| (x, e.evaluate(x))).collect();
        let basis = [
            TermShape::new(-1.0, 1),
            TermShape::new(-1.0, 0),
            TermShape::CONSTANT,
        ];
        let r = fit_finite_part(&s, &basis).unwrap();
        assert!((r.finite_part + 1.0).abs() < 1e-8, "{}", r.finite_part);
        assert_eq!(r.basis.len(), 3);
    }

    #[test]
    fn constant_column_is_added() {
        let s: Vec<(f64, f64)> = grid().into_iter().map(|e| (e, 2.0 + 3.0 * e)).collect();
        let r = fit_finite_part(&s, &[TermShape::new(1.0, 0)]).unwrap();
        assert_eq!(r.basis, vec![TermShape::new(1.0, 0), TermShape::CONSTANT]);
        assert!((r.finite_part - 2.0).abs() < 1e-14);
        assert!((r.coefficients[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_samples() {
        let few: Vec<(f64, f64)> = grid().into_iter().take(3).map(|e| (e, 1.0)).collect();
        let basis = [TermShape::new(-1.0, 0), TermShape::CONSTANT];
        assert!(matches!(
            fit_finite_part(&few, &basis),
            Err(Error::Underdetermined { needed: 4, .. })
        ));
        let mut dup: Vec<(f64, f64)> = grid().into_iter().map(|e| (e, 1.0)).collect();
        dup[1].0 = dup[0].0;
        assert!(matches!(
            fit_finite_part(&dup, &basis),
            Err(Error::InvalidGrid(_))
        ));
        let mut out: Vec<(f64, f64)> = grid().into_iter().map(|e| (e, 1.0)).collect();
        out[0].0 = 0.5;
        assert!(matches!(
            fit_finite_part(&out, &basis),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn flags_ill_conditioning() {
        // Two nearly parallel columns over a narrow grid.
        let g: Vec<f64> = (0..12).map(|k| 0.1 + 1e-9 * k as f64).collect();
        let s: Vec<(f64, f64)> = g.iter().map(|&e| (e, 1.0 + e)).collect();
        let basis = [
            TermShape::new(1.0, 0),
            TermShape::new(2.0, 0),
            TermShape::CONSTANT,
        ];
        let r = fit_finite_part(&s, &basis).unwrap();
        assert!(r.unreliable);
        assert!(r.condition_estimate > CONDITION_LIMIT);
    }
}
