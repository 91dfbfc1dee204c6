//! `eval`: regularized Γ, ψ and ψ⁽ⁿ⁾ by every applicable route.

use clap::ValueEnum;
use serde::Serialize;

use super::config::Settings;
use crate::error::{Error, Result};
use crate::oracle::{fit_integral_with, shifted_argument_constant_with, FitReport};
use crate::special::{
    digamma_neg, gamma_classical, gamma_neg_closed, polygamma_neg_closed, polygamma_nonint, Method,
    SpecialValue,
};
use crate::symbolic::{
    digamma_neg_symbolic, gamma_derivative_fp, gamma_neg_finite_part, polygamma_decomposition,
    IntegralSpec,
};

/// Standard errors of the fitted constant are scaled by this to give the
/// reported error estimate.
pub const FIT_ERROR_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Function {
    Gamma,
    Digamma,
    Polygamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Closed,
    Symbolic,
    Numeric,
    All,
}

/// How `--x` was given. Integer text selects the regularized value at a
/// non-positive integer; anything else takes the classical route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Argument {
    NegInt(u32),
    Real(f64),
}

impl Argument {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim();
        if let Ok(i) = t.parse::<i64>() {
            if i > 0 {
                return Ok(Argument::Real(i as f64));
            }
            return u32::try_from(-i)
                .map(Argument::NegInt)
                .map_err(|_| format!("integer argument {i} is out of range"));
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Argument::Real(v)),
            _ => Err(format!("cannot read {s:?} as a real number")),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Argument::NegInt(m) => 0.0 - m as f64,
            Argument::Real(x) => x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub function: Function,
    pub n: Option<u32>,
    pub x: Argument,
    pub method: EvalMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalOutput {
    pub function: Function,
    pub n: Option<u32>,
    pub x: f64,
    pub results: Vec<SpecialValue>,
    pub max_disagreement: f64,
    #[serde(skip)]
    pub unreliable: bool,
}

fn from_fit(r: &FitReport) -> Result<SpecialValue> {
    SpecialValue::estimated(
        r.finite_part,
        Method::NumericFit,
        FIT_ERROR_FACTOR * r.std_error,
    )
}

/// Order of the derivative of ψ, or `None` for Γ.
fn order(req: &EvalRequest) -> Result<Option<u32>> {
    match (req.function, req.n) {
        (Function::Gamma, _) => Ok(None),
        (Function::Digamma, _) => Ok(Some(0)),
        (Function::Polygamma, Some(n)) => Ok(Some(n)),
        (Function::Polygamma, None) => Err(Error::Domain("polygamma needs --n".into())),
    }
}

fn methods(m: EvalMethod) -> &'static [EvalMethod] {
    match m {
        EvalMethod::All => &[
            EvalMethod::Closed,
            EvalMethod::Symbolic,
            EvalMethod::Numeric,
        ],
        EvalMethod::Closed => &[EvalMethod::Closed],
        EvalMethod::Symbolic => &[EvalMethod::Symbolic],
        EvalMethod::Numeric => &[EvalMethod::Numeric],
    }
}

/// One route at `-m`, with the fit report for numeric routes.
fn at_neg_int(
    order: Option<u32>,
    m: u32,
    method: EvalMethod,
    s: &Settings,
) -> Result<(SpecialValue, Option<FitReport>)> {
    let shifted = |n| shifted_argument_constant_with(n, m, &s.shifted_grid, s.vanishing_order);
    let fit = |r: Result<FitReport>| -> Result<(SpecialValue, Option<FitReport>)> {
        let r = r?;
        Ok((from_fit(&r)?, Some(r)))
    };
    match (order, method) {
        (None, EvalMethod::Closed) => Ok((gamma_neg_closed(m)?, None)),
        (None, EvalMethod::Symbolic) => Ok((gamma_neg_finite_part(m)?, None)),
        (None, _) => fit(fit_integral_with(
            &IntegralSpec::gamma_tail(m),
            s.eps_grid.as_deref(),
            &s.quad,
        )),
        (Some(0), EvalMethod::Closed) => Ok((digamma_neg(m)?, None)),
        (Some(0), EvalMethod::Symbolic) => Ok((digamma_neg_symbolic(m)?, None)),
        (Some(n), EvalMethod::Closed) => Ok((polygamma_neg_closed(n, m)?, None)),
        (Some(n), EvalMethod::Symbolic) => Ok((polygamma_decomposition(n, m)?, None)),
        (Some(n), _) => fit(shifted(n)),
    }
}

/// One route at a real argument; `None` when the route does not exist there.
fn at_real(order: Option<u32>, x: f64, method: EvalMethod) -> Result<Option<SpecialValue>> {
    match (order, method) {
        (None, EvalMethod::Closed) => gamma_classical(x).map(Some),
        (None, EvalMethod::Symbolic) => gamma_derivative_fp(0, x).map(Some),
        (Some(n), EvalMethod::Closed) => polygamma_nonint(n, x).map(Some),
        _ => Ok(None),
    }
}

pub fn evaluate(req: &EvalRequest, settings: &Settings) -> Result<EvalOutput> {
    let order = order(req)?;
    let mut results = Vec::new();
    let mut unreliable = false;
    for &method in methods(req.method) {
        match req.x {
            Argument::NegInt(m) => {
                let (v, report) = at_neg_int(order, m, method, settings)?;
                unreliable |= report.is_some_and(|r| r.unreliable);
                results.push(v);
            }
            Argument::Real(x) => {
                if let Some(v) = at_real(order, x, method)? {
                    results.push(v);
                }
            }
        }
    }
    if results.is_empty() {
        return Err(Error::Domain(format!(
            "no {:?} route for {:?} at the non-integer argument {}",
            req.method,
            req.function,
            req.x.value()
        )));
    }
    let mut max_disagreement: f64 = 0.0;
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            max_disagreement = max_disagreement.max((a.value - b.value).abs());
        }
    }
    Ok(EvalOutput {
        function: req.function,
        n: if req.function == Function::Polygamma {
            req.n
        } else {
            None
        },
        x: req.x.value(),
        results,
        max_disagreement,
        unreliable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;

    fn req(function: Function, n: Option<u32>, x: &str, method: EvalMethod) -> EvalRequest {
        EvalRequest {
            function,
            n,
            x: Argument::parse(x).unwrap(),
            method,
        }
    }

    #[test]
    fn argument_parsing() {
        assert_eq!(Argument::parse("-3").unwrap(), Argument::NegInt(3));
        assert_eq!(Argument::parse("0").unwrap(), Argument::NegInt(0));
        assert_eq!(Argument::parse("2").unwrap(), Argument::Real(2.0));
        assert_eq!(Argument::parse("-3.0").unwrap(), Argument::Real(-3.0));
        assert!(Argument::parse("abc").is_err());
        assert!(Argument::parse("inf").is_err());
    }

    #[test]
    fn digamma_closed_at_minus_three() {
        let out = evaluate(
            &req(Function::Digamma, None, "-3", EvalMethod::Closed),
            &Settings::default(),
        )
        .unwrap();
        assert!((out.results[0].value - (11.0 / 6.0 - EULER_GAMMA)).abs() < 1e-15);
        assert_eq!(out.max_disagreement, 0.0);
        assert_eq!(out.n, None);
    }

    #[test]
    fn all_routes_agree_for_trigamma_at_zero() {
        let out = evaluate(
            &req(Function::Polygamma, Some(1), "0", EvalMethod::All),
            &Settings::default(),
        )
        .unwrap();
        assert_eq!(out.results.len(), 3);
        assert!(out.max_disagreement < 1e-8);
        assert!((out.results[0].value - 1.6449341).abs() < 1e-7);
        assert!(!out.unreliable);
    }

    #[test]
    fn gamma_symbolic_at_minus_one() {
        let out = evaluate(
            &req(Function::Gamma, None, "-1", EvalMethod::Symbolic),
            &Settings::default(),
        )
        .unwrap();
        assert!((out.results[0].value - (EULER_GAMMA - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn real_arguments() {
        let s = Settings::default();
        let out = evaluate(&req(Function::Gamma, None, "0.5", EvalMethod::All), &s).unwrap();
        assert_eq!(out.results.len(), 2);
        assert!((out.results[0].value - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!(matches!(
            evaluate(
                &req(Function::Digamma, None, "-2.0", EvalMethod::Closed),
                &s
            ),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            evaluate(
                &req(Function::Digamma, None, "0.5", EvalMethod::Numeric),
                &s
            ),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn polygamma_needs_order() {
        assert!(evaluate(
            &req(Function::Polygamma, None, "-1", EvalMethod::Closed),
            &Settings::default()
        )
        .is_err());
    }
}
