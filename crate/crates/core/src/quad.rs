//! Globally adaptive Gauss–Legendre quadrature over a finite interval.
//!
//! Each panel is integrated once whole and once as two halves with the same
//! rule; the difference of the two is the panel's error estimate and the
//! halves are kept as its value. The panel with the largest estimate is
//! bisected until the summed estimate meets the tolerance. Integrands with
//! endpoint singularities are expected to arrive already mapped to smooth
//! form by the caller.

use crate::error::{Error, Result};
use crate::real::Real;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Computes the rule by Newton iteration on P_n, carried out in `T`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "rule needs at least two points");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 1..=n / 2 {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut x = T::from_f64(guess);
            let mut deriv = T::one();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                deriv = dp;
                let dx = p / dp;
                x -= dx;
                if dx.abs().to_f64() <= 4.0 * T::EPSILON * x.abs().to_f64() {
                    let (_, dp) = legendre(n, x);
                    deriv = dp;
                    break;
                }
            }
            let w = T::from_f64(2.0) / ((T::one() - x * x) * deriv * deriv);
            nodes.push(x);
            weights.push(w);
            nodes.push(-x);
            weights.push(w);
        }
        if n % 2 == 1 {
            let (_, dp) = legendre(n, T::zero());
            nodes.push(T::zero());
            weights.push(T::from_f64(2.0) / (dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on [a, b]; also returns the rule applied to |f|.
    pub fn apply<F: Fn(T) -> T>(&self, f: &F, a: T, b: T) -> (T, T) {
        let half = (b - a) * T::from_f64(0.5);
        let mid = (a + b) * T::from_f64(0.5);
        let mut sum = T::zero();
        let mut abs_sum = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x);
            sum += w * v;
            abs_sum += w * v.abs();
        }
        (sum * half, abs_sum * half.abs())
    }
}

/// Legendre P_n(x) and its derivative by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 =
            (T::from_f64(2.0 * kf + 1.0) * x * p1 - T::from_f64(kf) * p0) / T::from_f64(kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = T::from_f64(n as f64) * (x * p1 - p0) / (x * x - T::one());
    (p1, dp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl QuadOptions {
    /// Binary64 defaults: comfortably inside 1e-12 (1 + |value|).
    pub const F64: QuadOptions = QuadOptions {
        rel_tol: 1e-14,
        abs_tol: 1e-14,
        max_panels: 2000,
    };

    /// Double-double defaults used by the numeric oracle.
    pub const DD: QuadOptions = QuadOptions {
        rel_tol: 1e-29,
        abs_tol: 1e-40,
        max_panels: 4000,
    };
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions::F64
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_err: f64,
    pub panels: usize,
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    abs_value: T,
    err: f64,
}

fn make_panel<T: Real, F: Fn(T) -> T>(
    rule: &GaussLegendre<T>,
    f: &F,
    a: T,
    b: T,
    whole: T,
) -> Panel<T> {
    let mid = (a + b) * T::from_f64(0.5);
    let (l, la) = rule.apply(f, a, mid);
    let (r, ra) = rule.apply(f, mid, b);
    let value = l + r;
    Panel {
        a,
        b,
        value,
        abs_value: la + ra,
        err: (value - whole).abs().to_f64(),
    }
}

/// Integrates `f` over [a, b].
///
/// Stops when the summed panel error is below
/// `max(abs_tol, rel_tol * |I|)` or below the roundoff floor of `∫|f|`.
pub fn integrate<T, F>(f: F, a: T, b: T, opts: &QuadOptions) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    integrate_with_breaks(f, &[a, b], opts)
}

/// Like [`integrate`], with the interval pre-split at the given points
/// (which must be increasing and include both ends).
pub fn integrate_with_breaks<T, F>(f: F, points: &[T], opts: &QuadOptions) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let rule = T::gauss_rule();
    let mut panels: Vec<Panel<T>> = points
        .windows(2)
        .map(|w| {
            let (whole, _) = rule.apply(&f, w[0], w[1]);
            make_panel(rule, &f, w[0], w[1], whole)
        })
        .collect();
    loop {
        let mut total = T::zero();
        let mut total_abs = T::zero();
        let mut err = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            total += p.value;
            total_abs += p.abs_value;
            err += p.err;
            if p.err > panels[worst].err {
                worst = i;
            }
        }
        let requested = opts.abs_tol.max(opts.rel_tol * total.abs().to_f64());
        let floor = 64.0 * T::EPSILON * total_abs.to_f64();
        if err <= requested || err <= floor {
            return Ok(QuadResult {
                value: total,
                abs_err: err,
                panels: panels.len(),
            });
        }
        if panels.len() >= opts.max_panels || !err.is_finite() {
            return Err(Error::Quadrature {
                achieved: err,
                requested,
            });
        }
        let p = panels.swap_remove(worst);
        let mid = (p.a + p.b) * T::from_f64(0.5);
        let (l_whole, _) = rule.apply(&f, p.a, mid);
        let (r_whole, _) = rule.apply(&f, mid, p.b);
        panels.push(make_panel(rule, &f, p.a, mid, l_whole));
        panels.push(make_panel(rule, &f, mid, p.b, r_whole));
    }
}
