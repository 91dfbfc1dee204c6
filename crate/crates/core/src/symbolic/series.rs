//! Power-series coefficients of `ln^r(1 - t)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficients `α_i` of `ln^r(1 - t) = Σ_{i≥1} α_i t^i`, truncated at `order`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoeffs {
    pub r: u32,
    pub order: usize,
    /// `coeffs[i - 1] = α_i` for `1 ≤ i ≤ order`.
    pub coeffs: Vec<f64>,
}

impl SeriesCoeffs {
    /// `α_i` for `i ≥ 1` (zero past the truncation order).
    pub fn alpha(&self, i: usize) -> f64 {
        if i == 0 || i > self.order {
            0.0
        } else {
            self.coeffs[i - 1]
        }
    }

    /// Truncated sum `Σ_{i≤order} α_i t^i`.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c) * t
    }
}

/// Repeated Cauchy convolution of the Mercator sequence `(-1/i)_{i≥1}`.
pub fn log1m_series(r: u32, order: usize) -> Result<SeriesCoeffs> {
    if r == 0 {
        return Err(Error::Domain("log1m_series needs r >= 1".into()));
    }
    if order < r as usize {
        return Err(Error::Domain(format!(
            "log1m_series order {order} is below the leading power {r}"
        )));
    }
    let base: Vec<f64> = (1..=order).map(|i| -1.0 / i as f64).collect();
    let mut coeffs = base.clone();
    for _ in 1..r {
        let mut next = vec![0.0; order];
        // next_i = Σ_{j=1}^{i-1} coeffs_j · base_{i-j}, 1-based.
        for i in 2..=order {
            next[i - 1] = (1..i).map(|j| coeffs[j - 1] * base[i - j - 1]).sum();
        }
        coeffs = next;
    }
    Ok(SeriesCoeffs { r, order, coeffs })
}

/// Upper bound `|α_i| ≤ r (1 + ln i)^{r-1} / i`.
///
/// `|α_i| = r!·c(i, r)/i!` with `c` the unsigned Stirling numbers of the
/// first kind, and `c(i, r)/(i-1)! = e_{r-1}(1, 1/2, …, 1/(i-1))
/// ≤ H_{i-1}^{r-1}/(r-1)!`.
pub fn coeff_bound(r: u32, i: usize) -> f64 {
    if i < r as usize {
        return 0.0;
    }
    let i = i as f64;
    r as f64 * (1.0 + i.ln()).powi(r as i32 - 1) / i
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mercator_coefficients() {
        let s = log1m_series(1, 4).unwrap();
        assert_eq!(s.coeffs, vec![-1.0, -0.5, -1.0 / 3.0, -0.25]);
        let s = log1m_series(1, 40).unwrap();
        for i in 1..=40 {
            assert_eq!(s.alpha(i), -1.0 / i as f64);
        }
    }

    #[test]
    fn square_and_cube() {
        // ln²(1-t) = t² + t³ + 11/12 t⁴ + …
        let s = log1m_series(2, 4).unwrap();
        let want = [0.0, 1.0, 1.0, 11.0 / 12.0];
        for (a, b) in s.coeffs.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let s = log1m_series(3, 3).unwrap();
        assert_eq!(s.coeffs, vec![0.0, 0.0, -1.0]);
    }

    #[test]
    fn leading_zeros_and_bound() {
        for r in 1..=4u32 {
            let s = log1m_series(r, 30).unwrap();
            for i in 1..r as usize {
                assert_eq!(s.alpha(i), 0.0);
            }
            for i in r as usize..=30 {
                assert!(
                    s.alpha(i).abs() <= coeff_bound(r, i) * (1.0 + 1e-12),
                    "r={r} i={i}"
                );
            }
        }
    }

    #[test]
    fn rejects_short_orders() {
        assert!(log1m_series(3, 2).is_err());
        assert!(log1m_series(0, 5).is_err());
    }

    #[test]
    fn truncated_sum_approximates_function() {
        let s = log1m_series(2, 60).unwrap();
        let t: f64 = 0.3;
        assert!((s.eval(t) - (1.0 - t).ln().powi(2)).abs() < 1e-14);
    }

    #[test]
    fn matches_chebyshev_interpolation() {
        // Taylor coefficients of ln^r(1-t) at 0 from the interpolating
        // polynomial on Chebyshev nodes in [-h, h], solved in double-double.
        use crate::dd::Dd;
        let h = 0.1;
        let nodes = 28;
        let ts: Vec<f64> = (0..nodes)
            .map(|k| h * (std::f64::consts::PI * (k as f64 + 0.5) / nodes as f64).cos())
            .collect();
        let rows: Vec<Vec<Dd>> = ts
            .iter()
            .map(|&t| {
                (0..nodes)
                    .map(|j| (Dd::from_f64(t) / Dd::from_f64(h)).powi(j))
                    .collect()
            })
            .collect();
        for r in 1..=3u32 {
            let b: Vec<Dd> = ts
                .iter()
                .map(|&t| Dd::from_f64(-t).ln_1p().powi(r as i32))
                .collect();
            let c = crate::lsq::solve(&rows, &b).unwrap().coeffs;
            let s = log1m_series(r, 10).unwrap();
            for (i, &ci) in c.iter().enumerate().take(11).skip(1) {
                let fd = (ci / Dd::from_f64(h).powi(i as i32)).to_f64();
                assert!(
                    (fd - s.alpha(i)).abs() < 1e-8,
                    "r={r} i={i}: {fd} vs {}",
                    s.alpha(i)
                );
            }
        }
    }
}
