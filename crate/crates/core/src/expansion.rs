//! Finite sums of `c · ε^λ · ln^r ε` and their neutrix limits.
//!
//! The negligible functions are the terms with `λ < 0`, or `λ = 0` with a
//! positive log power, together with anything tending to zero. An
//! [`EpsilonExpansion`] lists the non-vanishing part of a function of ε
//! exactly (plus whatever vanishing terms a construction happens to produce)
//! and records whether the unlisted remainder is known to be `o(1)`. Under
//! that flag the neutrix limit is the coefficient of `ε^0 ln^0 ε`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficients with smaller magnitude are dropped while canonicalizing.
pub const COEFF_FLOOR: f64 = 1e-300;

/// Exponents closer than this are merged when expansions come from user
/// input. Internally generated exponents are compared exactly.
pub const USER_LAMBDA_TOL: f64 = 1e-12;

/// The `(λ, r)` shape of a term `ε^λ ln^r ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermShape {
    pub lambda: f64,
    pub logpow: u32,
}

impl TermShape {
    pub const CONSTANT: TermShape = TermShape {
        lambda: 0.0,
        logpow: 0,
    };

    pub const fn new(lambda: f64, logpow: u32) -> Self {
        TermShape { lambda, logpow }
    }

    pub fn class(self) -> TermClass {
        if self.lambda < 0.0 || (self.lambda == 0.0 && self.logpow >= 1) {
            TermClass::Negligible
        } else if self.lambda == 0.0 {
            TermClass::Finite
        } else {
            TermClass::Vanishing
        }
    }

    /// `ε^λ ln^r ε` at a point.
    pub fn eval(self, eps: f64) -> f64 {
        let l = eps.ln();
        pow_eps(eps, l, self.lambda) * l.powi(self.logpow as i32)
    }

    /// Canonical order: λ ascending, then log power descending.
    fn order(&self, other: &TermShape) -> Ordering {
        self.lambda
            .total_cmp(&other.lambda)
            .then(other.logpow.cmp(&self.logpow))
    }
}

pub(crate) fn pow_eps(eps: f64, ln_eps: f64, lambda: f64) -> f64 {
    if lambda == lambda.trunc() && lambda.abs() < 1024.0 {
        eps.powi(lambda as i32)
    } else {
        (lambda * ln_eps).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TermClass {
    Negligible,
    Finite,
    Vanishing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub coeff: f64,
    pub lambda: f64,
    pub logpow: u32,
}

impl ExpansionTerm {
    pub const fn new(coeff: f64, lambda: f64, logpow: u32) -> Self {
        ExpansionTerm {
            coeff,
            lambda,
            logpow,
        }
    }

    pub fn shape(&self) -> TermShape {
        TermShape::new(self.lambda, self.logpow)
    }

    pub fn eval(&self, eps: f64) -> f64 {
        self.coeff * self.shape().eval(eps)
    }
}

/// Classifies a single term.
pub fn classify(t: &ExpansionTerm) -> TermClass {
    t.shape().class()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonExpansion {
    terms: Vec<ExpansionTerm>,
    remainder_is_o1: bool,
}

impl Default for EpsilonExpansion {
    fn default() -> Self {
        EpsilonExpansion::zero()
    }
}

impl EpsilonExpansion {
    /// The empty expansion: identically zero with no remainder.
    pub fn zero() -> Self {
        EpsilonExpansion {
            terms: Vec::new(),
            remainder_is_o1: true,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms(vec![ExpansionTerm::new(c, 0.0, 0)], true)
    }

    pub fn single(coeff: f64, lambda: f64, logpow: u32) -> Self {
        Self::from_terms(vec![ExpansionTerm::new(coeff, lambda, logpow)], true)
    }

    /// Builds a canonical expansion from internally generated terms; equal
    /// exponents are merged only when bit-identical.
    pub fn from_terms(terms: Vec<ExpansionTerm>, remainder_is_o1: bool) -> Self {
        EpsilonExpansion {
            terms: canonicalize(terms, 0.0),
            remainder_is_o1,
        }
    }

    /// Builds a canonical expansion from user-supplied terms, merging
    /// exponents within [`USER_LAMBDA_TOL`].
    pub fn from_user_terms(terms: Vec<ExpansionTerm>, remainder_is_o1: bool) -> Result<Self> {
        if let Some(bad) = terms
            .iter()
            .find(|t| !t.coeff.is_finite() || !t.lambda.is_finite())
        {
            return Err(Error::Domain(format!(
                "non-finite term coefficient {} or exponent {}",
                bad.coeff, bad.lambda
            )));
        }
        Ok(EpsilonExpansion {
            terms: canonicalize(terms, USER_LAMBDA_TOL),
            remainder_is_o1,
        })
    }

    pub fn terms(&self) -> &[ExpansionTerm] {
        &self.terms
    }

    pub fn remainder_is_o1(&self) -> bool {
        self.remainder_is_o1
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shapes(&self) -> Vec<TermShape> {
        self.terms.iter().map(ExpansionTerm::shape).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        combine(self, &EpsilonExpansion::zero(), s, 0.0)
    }

    /// Pointwise value of the listed terms at `eps`.
    pub fn evaluate(&self, eps: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(eps)).sum()
    }

    /// The terms of the given class, keeping the remainder flag.
    pub fn filter(&self, class: TermClass) -> Self {
        EpsilonExpansion {
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|t| classify(t) == class)
                .collect(),
            remainder_is_o1: self.remainder_is_o1,
        }
    }

    /// Coefficient of the finite term, ignoring the remainder flag.
    pub fn constant_coeff(&self) -> f64 {
        self.terms
            .iter()
            .find(|t| classify(t) == TermClass::Finite)
            .map_or(0.0, |t| t.coeff)
    }

    /// The neutrix limit as ε → 0.
    pub fn neutrix_limit(&self) -> Result<f64> {
        neutrix_limit(self)
    }
}

/// `sa·a + sb·b` in canonical form.
pub fn combine(a: &EpsilonExpansion, b: &EpsilonExpansion, sa: f64, sb: f64) -> EpsilonExpansion {
    let terms = a
        .terms
        .iter()
        .map(|t| ExpansionTerm {
            coeff: sa * t.coeff,
            ..*t
        })
        .chain(b.terms.iter().map(|t| ExpansionTerm {
            coeff: sb * t.coeff,
            ..*t
        }))
        .collect();
    EpsilonExpansion {
        terms: canonicalize(terms, 0.0),
        remainder_is_o1: a.remainder_is_o1 && b.remainder_is_o1,
    }
}

/// Coefficient of the unique finite term (0 when absent). Requires the
/// remainder to be known `o(1)`.
pub fn neutrix_limit(e: &EpsilonExpansion) -> Result<f64> {
    if !e.remainder_is_o1 {
        return Err(Error::UncontrolledRemainder);
    }
    Ok(e.constant_coeff())
}

fn canonicalize(mut terms: Vec<ExpansionTerm>, lambda_tol: f64) -> Vec<ExpansionTerm> {
    terms.sort_by(|a, b| a.shape().order(&b.shape()));
    let mut out: Vec<ExpansionTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last)
                if last.logpow == t.logpow && (last.lambda - t.lambda).abs() <= lambda_tol =>
            {
                last.coeff += t.coeff;
            }
            _ => out.push(t),
        }
    }
    if lambda_tol > 0.0 {
        // Snap near-integers produced by user rounding so classification is exact.
        for t in out.iter_mut() {
            if (t.lambda - t.lambda.round()).abs() <= lambda_tol {
                t.lambda = t.lambda.round();
            }
        }
        out.sort_by(|a, b| a.shape().order(&b.shape()));
    }
    out.retain(|t| t.coeff.abs() >= COEFF_FLOOR);
    out
}
