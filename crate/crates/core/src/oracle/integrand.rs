//! Quadrature of the truncated integrals.
//!
//! Each family is mapped to smooth integrands before quadrature. The
//! logarithmic end at t = 0 goes through `t = e^{-s}`, which turns
//! `t^x ln^n t dt` into `e^{-(x+1)s} (-s)^n ds` on a finite s-range; the
//! neighbourhood of t = 1 goes through `u = 1 - t`; the gamma tail over
//! [1, ∞) through `u = 1/t`.

use crate::error::{Error, Result};
use crate::quad::{integrate_with_breaks, QuadOptions};
use crate::real::Real;
use crate::symbolic::{IntegralKind, IntegralSpec};

/// A truncated integral and its quadrature error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Truncated<T> {
    pub value: T,
    pub abs_err: f64,
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidGrid(format!("ε = {eps} is outside (0, 1/2)")))
    }
}

/// Unit-spaced break points on [a, b], which keeps each panel's share of an
/// exponentially growing integrand comparable.
fn unit_breaks<T: Real>(a: T, b: T) -> Vec<T> {
    let mut pts = vec![a];
    let mut p = a.to_f64().floor() + 1.0;
    while p < b.to_f64() {
        pts.push(T::from_f64(p));
        p += 1.0;
    }
    pts.push(b);
    pts
}

/// `∫_{s0}^{S} e^{-(x+1)s} (-s)^n g(s) ds`, the image of
/// `∫_ε^{e^{-s0}} t^x ln^n t g(-ln t) dt`.
fn log_end<T, G>(x: f64, n: u32, s0: T, big_s: T, g: G, opts: &QuadOptions) -> Result<Truncated<T>>
where
    T: Real,
    G: Fn(T) -> T,
{
    let a = T::from_f64(-(x + 1.0));
    let f = |s: T| (a * s).exp() * (-s).powi(n as i32) * g(s);
    let q = integrate_with_breaks(f, &unit_breaks(s0, big_s), opts)?;
    Ok(Truncated {
        value: q.value,
        abs_err: q.abs_err,
    })
}

fn add<T: Real>(a: Truncated<T>, b: Truncated<T>) -> Truncated<T> {
    Truncated {
        value: a.value + b.value,
        abs_err: a.abs_err + b.abs_err,
    }
}

/// Truncated integral of `spec` at `eps` in the scalar type `T`.
pub fn truncated_integral_in<T: Real>(
    spec: &IntegralSpec,
    eps: f64,
    opts: &QuadOptions,
) -> Result<Truncated<T>> {
    spec.validate()?;
    check_eps(eps)?;
    let big_s = -T::from_f64(eps).ln();
    let ln2 = T::from_f64(2.0).ln();
    let one = T::one();
    match spec.kind {
        IntegralKind::PowerLogUnit => log_end(spec.x, spec.n, T::zero(), big_s, |_| one, opts),
        IntegralKind::MixedHalf => {
            let r = spec.r as i32;
            log_end(
                spec.x,
                spec.n,
                ln2,
                big_s,
                |s: T| (-(-s).exp()).ln_1p().powi(r),
                opts,
            )
        }
        IntegralKind::PolygammaFull => {
            let m = spec.m as f64;
            let n = spec.n as i32;
            // [ε, 1/2]: t^{-m-1} ln^n t / (1 - t), with 1 - t = -expm1(-s).
            let head = log_end(
                -m - 1.0,
                spec.n,
                ln2,
                big_s,
                |s: T| -(-s).exp_m1().powi(-1),
                opts,
            )?;
            // [1/2, 1]: u = 1 - t.
            let pm = -(spec.m as i32) - 1;
            let f = |u: T| (one - u).powi(pm) * (-u).ln_1p().powi(n) / u;
            let q = integrate_with_breaks(f, &[T::zero(), T::from_f64(0.5)], opts)?;
            Ok(add(
                head,
                Truncated {
                    value: q.value,
                    abs_err: q.abs_err,
                },
            ))
        }
        IntegralKind::GammaTail => {
            let m = spec.m as f64;
            // [ε, 1]: t^{-m-1} e^{-t}.
            let head = log_end(
                -m - 1.0,
                0,
                T::zero(),
                big_s,
                |s: T| (-(-s).exp()).exp(),
                opts,
            )?;
            // [1, ∞): u = 1/t gives u^{m-1} e^{-1/u} on (0, 1].
            let pm = spec.m as i32 - 1;
            let f = |u: T| {
                if u.to_f64() <= 0.0 {
                    T::zero()
                } else {
                    u.powi(pm) * (-(one / u)).exp()
                }
            };
            let pts: Vec<T> = [0.0, 0.05, 0.15, 0.4, 1.0]
                .iter()
                .map(|&p| T::from_f64(p))
                .collect();
            let q = integrate_with_breaks(f, &pts, opts)?;
            Ok(add(
                head,
                Truncated {
                    value: q.value,
                    abs_err: q.abs_err,
                },
            ))
        }
    }
}

/// `∫_ε^{c} f` for the family described by `spec` (upper end 1, 1/2 or ∞
/// as the family dictates), in binary64.
pub fn truncated_integral(spec: &IntegralSpec, eps: f64) -> Result<f64> {
    Ok(truncated_integral_in::<f64>(spec, eps, &QuadOptions::F64)?.value)
}
