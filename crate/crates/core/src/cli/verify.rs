//! `verify`: identity and cross-method checks as a table.

use clap::ValueEnum;
use serde::Serialize;

use super::config::Settings;
use crate::error::Result;
use crate::oracle::{
    fit_integral_with, log_unit_grid, log_unit_limit, shifted_argument_constant_with,
};
use crate::special::{
    digamma_neg, digamma_nonint, factorial, gamma_classical, gamma_neg_closed,
    polygamma_neg_closed, polygamma_nonint, polygamma_pos, zeta_int, EULER_GAMMA,
};
use crate::symbolic::{
    digamma_neg_symbolic, gamma_derivative_fp, gamma_neg_finite_part, polygamma_decomposition,
    power_log_expansion, IntegralSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Recurrence,
    Oracle,
    All,
}

pub const HEADER: [&str; 6] = [
    "check_id",
    "paper_ref",
    "expected",
    "got",
    "abs_err",
    "pass",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub check_id: String,
    pub paper_ref: String,
    pub expected: f64,
    pub got: f64,
    pub abs_err: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
enum Tol {
    Abs(f64),
    Rel(f64),
}

/// What a check computes: the reference value, the value under test, and
/// whether the computation considers itself reliable.
struct Observed {
    expected: f64,
    got: f64,
    reliable: bool,
}

impl Observed {
    fn pair(expected: f64, got: f64) -> Result<Self> {
        Ok(Observed {
            expected,
            got,
            reliable: true,
        })
    }
}

type Run<'a> = Box<dyn Fn() -> Result<Observed> + Sync + 'a>;

struct Check<'a> {
    id: String,
    identity: &'static str,
    tol: Tol,
    run: Run<'a>,
}

impl Check<'_> {
    fn evaluate(&self) -> CheckRow {
        let (expected, got, ok) = match (self.run)() {
            Ok(o) => (o.expected, o.got, o.reliable),
            Err(_) => (f64::NAN, f64::NAN, false),
        };
        let abs_err = (got - expected).abs();
        let bound = match self.tol {
            Tol::Abs(t) => t,
            Tol::Rel(t) => t * expected.abs(),
        };
        CheckRow {
            check_id: self.id.clone(),
            paper_ref: self.identity.to_string(),
            expected,
            got,
            abs_err,
            pass: ok && abs_err <= bound,
        }
    }
}

fn check<'a, F>(id: String, identity: &'static str, tol: Tol, run: F) -> Check<'a>
where
    F: Fn() -> Result<Observed> + Sync + 'a,
{
    Check {
        id,
        identity,
        tol,
        run: Box::new(run),
    }
}

fn sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn recurrence_checks<'a>() -> Vec<Check<'a>> {
    let mut out = Vec::new();
    for m in 1..=10u32 {
        out.push(check(
            format!("psi0_neg recurrence m={m}"),
            "digamma recurrence at negative integers",
            Tol::Abs(1e-12),
            move || {
                Observed::pair(
                    1.0 / m as f64,
                    digamma_neg(m)?.value - digamma_neg(m - 1)?.value,
                )
            },
        ));
    }
    for n in 1..=6u32 {
        for m in 1..=10u32 {
            let want = factorial(n) / (m as f64).powi(n as i32 + 1);
            out.push(check(
                format!("psi{n}_neg recurrence m={m}"),
                "polygamma recurrence at negative integers",
                Tol::Abs(1e-12),
                move || {
                    Observed::pair(
                        want,
                        polygamma_neg_closed(n, m)?.value - polygamma_neg_closed(n, m - 1)?.value,
                    )
                },
            ));
            out.push(check(
                format!("psi{n}_decomposition recurrence m={m}"),
                "polygamma recurrence through the integral decomposition",
                Tol::Abs(1e-12),
                move || {
                    Observed::pair(
                        want,
                        polygamma_decomposition(n, m)?.value
                            - polygamma_decomposition(n, m - 1)?.value,
                    )
                },
            ));
        }
    }
    for m in 1..=10u32 {
        // -m Γ(-m) - Γ(1-m) = (-1)^{m+1}/m!
        out.push(check(
            format!("gamma_neg recurrence m={m}"),
            "regularized gamma functional equation defect",
            Tol::Abs(1e-12),
            move || {
                let lhs = -(m as f64) * gamma_neg_closed(m)?.value - gamma_neg_closed(m - 1)?.value;
                Observed::pair(sign(m + 1) / factorial(m), lhs)
            },
        ));
    }
    for n in 0..=4u32 {
        for x in [0.5f64, 1.0, 2.5] {
            out.push(check(
                format!("psi{n}_pos recurrence x={x}"),
                "polygamma recurrence at positive arguments",
                Tol::Rel(1e-11),
                move || {
                    let want = sign(n) * factorial(n) / x.powi(n as i32 + 1);
                    Observed::pair(
                        want,
                        polygamma_pos(n, x + 1.0)?.value - polygamma_pos(n, x)?.value,
                    )
                },
            ));
        }
    }
    out
}

fn oracle_checks(s: &Settings) -> Vec<Check<'_>> {
    let mut out = Vec::new();
    for m in 0..=6u32 {
        out.push(check(
            format!("gamma_neg m={m} quadrature-vs-closed"),
            "regularized gamma integral vs closed form",
            Tol::Abs(1e-9),
            move || Observed::pair(gamma_neg_closed(m)?.value, gamma_neg_finite_part(m)?.value),
        ));
    }
    for m in 0..=10u32 {
        out.push(check(
            format!("psi0_neg m={m} symbolic-vs-closed"),
            "digamma integral representation vs closed form",
            Tol::Abs(1e-13),
            move || Observed::pair(digamma_neg(m)?.value, digamma_neg_symbolic(m)?.value),
        ));
    }
    for n in 1..=6u32 {
        for m in 0..=10u32 {
            out.push(check(
                format!("psi{n}_neg m={m} decomposition-vs-closed"),
                "polygamma integral decomposition vs closed form",
                Tol::Abs(1e-12),
                move || {
                    Observed::pair(
                        polygamma_neg_closed(n, m)?.value,
                        polygamma_decomposition(n, m)?.value,
                    )
                },
            ));
        }
    }
    for m in 1..=8u32 {
        for n in 1..=8u32 {
            out.push(check(
                format!("power_log m={m} n={n} symbolic-vs-closed"),
                "finite part of t^(-m-1) ln^n t over (0, 1)",
                Tol::Rel(1e-13),
                move || {
                    let want = -factorial(n) / (m as f64).powi(n as i32 + 1);
                    Observed::pair(
                        want,
                        power_log_expansion(-(m as f64) - 1.0, n).neutrix_limit()?,
                    )
                },
            ));
        }
    }
    for m in 1..=4u32 {
        for n in 1..=4u32 {
            out.push(check(
                format!("power_log m={m} n={n} fit-vs-closed"),
                "finite part of t^(-m-1) ln^n t over (0, 1) by fitting",
                Tol::Abs(1e-6),
                move || {
                    let spec = IntegralSpec::power_log_unit(-(m as f64) - 1.0, n);
                    let r = fit_integral_with(&spec, s.eps_grid.as_deref(), &s.quad)?;
                    Ok(Observed {
                        expected: -factorial(n) / (m as f64).powi(n as i32 + 1),
                        got: r.finite_part,
                        reliable: !r.unreliable,
                    })
                },
            ));
        }
    }
    for (m, n) in [(0u32, 1u32), (1, 1)] {
        out.push(check(
            format!("polygamma_full m={m} n={n} fit-vs-closed"),
            "polygamma integral representation by fitting",
            Tol::Abs(1e-6),
            move || {
                let r = fit_integral_with(
                    &IntegralSpec::polygamma_full(m, n),
                    s.eps_grid.as_deref(),
                    &s.quad,
                )?;
                Ok(Observed {
                    expected: -polygamma_neg_closed(n, m)?.value,
                    got: r.finite_part,
                    reliable: !r.unreliable,
                })
            },
        ));
    }
    for n in 0..=4u32 {
        for m in 0..=6u32 {
            out.push(check(
                format!("psi{n}_neg m={m} shifted-fit-vs-closed"),
                "Laurent constant of the shifted argument vs closed form",
                Tol::Abs(1e-8),
                move || {
                    let want = if n == 0 {
                        digamma_neg(m)?.value
                    } else {
                        polygamma_neg_closed(n, m)?.value
                    };
                    let r =
                        shifted_argument_constant_with(n, m, &s.shifted_grid, s.vanishing_order)?;
                    Ok(Observed {
                        expected: want,
                        got: r.finite_part,
                        reliable: !r.unreliable,
                    })
                },
            ));
        }
    }
    for n in 1..=6u32 {
        out.push(check(
            format!("log_unit n={n} extrapolated-vs-zeta"),
            "integral of ln^n t/(1-t) over (0, 1) vs zeta value",
            Tol::Abs(1e-8),
            move || {
                let r = log_unit_limit(n, &log_unit_grid())?;
                Ok(Observed {
                    expected: sign(n) * factorial(n) * zeta_int(n + 1)?,
                    got: r.finite_part,
                    reliable: !r.unreliable,
                })
            },
        ));
    }
    let pi2 = std::f64::consts::PI.powi(2);
    let ln2 = std::f64::consts::LN_2;
    type Classical = (&'static str, f64, fn() -> Result<f64>);
    let classical: [Classical; 5] = [
        (
            "digamma(1)",
            -EULER_GAMMA,
            || Ok(digamma_nonint(1.0)?.value),
        ),
        ("digamma(1/2)", -EULER_GAMMA - 2.0 * ln2, || {
            Ok(digamma_nonint(0.5)?.value)
        }),
        ("trigamma(1/2)", pi2 / 2.0, || {
            Ok(polygamma_nonint(1, 0.5)?.value)
        }),
        ("zeta(2)", pi2 / 6.0, || zeta_int(2)),
        ("zeta(4)", pi2 * pi2 / 90.0, || zeta_int(4)),
    ];
    for (name, want, f) in classical {
        out.push(check(
            format!("classical {name}"),
            "classical special value",
            Tol::Rel(1e-11),
            move || Observed::pair(want, f()?),
        ));
    }
    for x in [-2.5, -0.5, 0.5, 3.3] {
        out.push(check(
            format!("gamma_fp x={x} symbolic-vs-classical"),
            "regularized gamma integral away from poles",
            Tol::Rel(1e-12),
            move || Observed::pair(gamma_classical(x)?.value, gamma_derivative_fp(0, x)?.value),
        ));
    }
    out
}

/// Runs the selected checks whose id contains `filter`, on as many
/// threads as the machine offers. Row order is deterministic.
pub fn run(suite: Suite, filter: Option<&str>, settings: &Settings) -> Vec<CheckRow> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Recurrence | Suite::All) {
        checks.extend(recurrence_checks());
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        checks.extend(oracle_checks(settings));
    }
    if let Some(f) = filter {
        checks.retain(|c| c.id.contains(f));
    }
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(checks.len().max(1));
    let chunk = checks.len().div_ceil(threads).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = checks
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(Check::evaluate).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn spec_row_example() {
        let rows = run(
            Suite::Recurrence,
            Some("psi1_neg recurrence m=3"),
            &Settings::default(),
        );
        assert_eq!(rows.len(), 1);
        // n!/m^{n+1} with n = 1, m = 3.
        assert!((rows[0].expected - 1.0 / 9.0).abs() < 1e-16);
        assert!(rows[0].pass);
        let rows = run(
            Suite::Recurrence,
            Some("psi2_neg recurrence m=3"),
            &Settings::default(),
        );
        assert!((rows[0].expected - 2.0 / 27.0).abs() < 1e-16);
    }

    #[test]
    fn empty_selection() {
        assert!(run(Suite::All, Some("no such check"), &Settings::default()).is_empty());
    }

    #[test]
    fn recurrence_suite_passes() {
        let rows = run(Suite::Recurrence, None, &Settings::default());
        let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn failing_computation_is_a_row() {
        let c = check("x".into(), "y", Tol::Abs(1.0), || Err(Error::Singular));
        let row = c.evaluate();
        assert!(!row.pass);
        assert!(row.got.is_nan());
    }
}
