//! Dense least squares by Householder QR with column scaling and column
//! pivoting. The condition estimate is the ratio of the largest to the
//! smallest diagonal entry of the triangular factor.

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone)]
pub struct LsqSolution<T> {
    pub coeffs: Vec<T>,
    pub condition_estimate: f64,
    /// Standard error of each coefficient, `σ ‖row_j(R⁻¹)‖` with `σ²` the
    /// residual sum of squares over `m - n`. Zero when `m = n`.
    pub std_errors: Vec<f64>,
}

/// Solves `min ||A c - b||` for a row-major `A` (`rows[i][j]`).
pub fn solve<T: Real>(rows: &[Vec<T>], rhs: &[T]) -> Result<LsqSolution<T>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 || m < n || rhs.len() != m || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Underdetermined {
            samples: m,
            columns: n,
            needed: n,
        });
    }

    // Column-major working copy, each column scaled to unit norm.
    let mut cols: Vec<Vec<T>> = (0..n)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    let mut scale = vec![T::one(); n];
    for (j, col) in cols.iter_mut().enumerate() {
        let norm = norm2(col);
        if norm.to_f64() == 0.0 || !norm.to_f64().is_finite() {
            return Err(Error::Singular);
        }
        for v in col.iter_mut() {
            *v /= norm;
        }
        scale[j] = norm;
    }
    let mut b: Vec<T> = rhs.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut diag = vec![T::zero(); n];

    for k in 0..n {
        // Pivot on the largest remaining column norm below row k.
        let (p, _) =
            (k..n)
                .map(|j| (j, norm2(&cols[j][k..]).to_f64()))
                .fold(
                    (k, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        cols.swap(k, p);
        perm.swap(k, p);

        let alpha = norm2(&cols[k][k..]);
        if alpha.to_f64() == 0.0 {
            return Err(Error::Singular);
        }
        let alpha = if cols[k][k] > T::zero() {
            -alpha
        } else {
            alpha
        };
        // v = x - alpha e1, stored in place.
        let mut v: Vec<T> = cols[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2 = dot(&v, &v);
        diag[k] = alpha;
        if vnorm2.to_f64() != 0.0 {
            for col in cols.iter_mut().skip(k + 1) {
                let f = T::from_f64(2.0) * dot(&v, &col[k..]) / vnorm2;
                for (c, &vi) in col[k..].iter_mut().zip(&v) {
                    *c -= f * vi;
                }
            }
            let f = T::from_f64(2.0) * dot(&v, &b[k..]) / vnorm2;
            for (c, &vi) in b[k..].iter_mut().zip(&v) {
                *c -= f * vi;
            }
        }
        cols[k][k] = alpha;
        for c in cols[k][k + 1..].iter_mut() {
            *c = T::zero();
        }
    }

    // Back substitution on R c = Q^T b.
    let mut y = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= cols[j][i] * y[j];
        }
        y[i] = s / cols[i][i];
    }

    let dmax = diag.iter().map(|d| d.abs().to_f64()).fold(0.0, f64::max);
    let dmin = diag
        .iter()
        .map(|d| d.abs().to_f64())
        .fold(f64::INFINITY, f64::min);
    let sigma = if m > n {
        norm2(&b[n..]).to_f64() / ((m - n) as f64).sqrt()
    } else {
        0.0
    };
    // Rows of R⁻¹, one column of the inverse at a time.
    let mut row_sq = vec![0.0; n];
    for j in 0..n {
        let mut x = vec![T::zero(); j + 1];
        for i in (0..=j).rev() {
            let mut s = if i == j { T::one() } else { T::zero() };
            for (l, &xl) in x.iter().enumerate().skip(i + 1) {
                s -= cols[l][i] * xl;
            }
            x[i] = s / cols[i][i];
        }
        for (i, xi) in x.iter().enumerate() {
            row_sq[i] += xi.to_f64() * xi.to_f64();
        }
    }

    let mut coeffs = vec![T::zero(); n];
    let mut std_errors = vec![0.0; n];
    for (k, &orig) in perm.iter().enumerate() {
        coeffs[orig] = y[k] / scale[orig];
        std_errors[orig] = sigma * row_sq[k].sqrt() / scale[orig].to_f64();
    }
    Ok(LsqSolution {
        coeffs,
        condition_estimate: dmax / dmin,
        std_errors,
    })
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm2<T: Real>(a: &[T]) -> T {
    // Scale by the largest entry to keep squares in range.
    let big = a.iter().map(|v| v.abs().to_f64()).fold(0.0, f64::max);
    if big == 0.0 {
        return T::zero();
    }
    let s = T::from_f64(big);
    let sum = a.iter().fold(T::zero(), |acc, &v| {
        let w = v / s;
        acc + w * w
    });
    sum.sqrt() * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::Dd;

    #[test]
    fn exact_line_fit() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![1.0, x]).collect();
        let b: Vec<f64> = xs.iter().map(|&x| 2.0 - 3.0 * x).collect();
        let sol = solve(&rows, &b).unwrap();
        assert!((sol.coeffs[0] - 2.0).abs() < 1e-14);
        assert!((sol.coeffs[1] + 3.0).abs() < 1e-14);
        assert!(sol.condition_estimate >= 1.0);
    }

    #[test]
    fn least_squares_of_inconsistent_system() {
        // Mean of the observations.
        let rows = vec![vec![1.0]; 4];
        let sol = solve(&rows, &[1.0, 2.0, 3.0, 6.0]).unwrap();
        assert!((sol.coeffs[0] - 3.0).abs() < 1e-15);
        // Sample standard deviation sqrt(14/3) over sqrt(4).
        assert!((sol.std_errors[0] - (14.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn badly_scaled_columns_in_double_double() {
        let xs: Vec<f64> = (1..=8).map(|k| 2f64.powi(-k)).collect();
        let rows: Vec<Vec<Dd>> = xs
            .iter()
            .map(|&x| vec![Dd::from(1.0 / (x * x)), Dd::from(1.0 / x), Dd::ONE])
            .collect();
        let b: Vec<Dd> = xs
            .iter()
            .map(|&x| Dd::from(5.0 / (x * x)) - Dd::from(2.0 / x) + Dd::from(0.125))
            .collect();
        let sol = solve(&rows, &b).unwrap();
        assert!((sol.coeffs[2] - Dd::from(0.125)).abs().to_f64() < 1e-25);
    }

    #[test]
    fn rejects_too_few_rows_and_zero_columns() {
        assert!(solve(&[vec![1.0, 2.0]], &[1.0]).is_err());
        assert_eq!(
            solve(&[vec![0.0], vec![0.0]], &[1.0, 1.0]).unwrap_err(),
            Error::Singular
        );
    }
}
