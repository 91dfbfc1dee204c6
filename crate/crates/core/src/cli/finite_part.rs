//! `finite-part`: the neutrix limit of one truncated integral, exactly or
//! by fitting.

use clap::ValueEnum;
use serde::Serialize;

use super::config::Settings;
use crate::error::{Error, Result};
use crate::expansion::{EpsilonExpansion, ExpansionTerm};
use crate::oracle::{fit_integral_with, FitReport};
use crate::symbolic::{mixed_half_expansion, IntegralKind, IntegralSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    PowerLogUnit,
    MixedHalf,
    GammaTail,
    PolygammaFull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FpMethod {
    Symbolic,
    Fit,
}

/// The raw flags; which ones a family needs is checked in [`build_spec`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SpecFlags {
    pub x: Option<f64>,
    pub n: Option<u32>,
    pub r: Option<u32>,
    pub m: Option<u32>,
}

pub fn build_spec(kind: Kind, f: SpecFlags) -> std::result::Result<IntegralSpec, String> {
    let (needs, spec) = match kind {
        Kind::PowerLogUnit => (
            "x, n",
            f.x.map(|x| IntegralSpec::power_log_unit(x, f.n.unwrap_or(0))),
        ),
        Kind::MixedHalf => (
            "x, n, r",
            f.x.map(|x| IntegralSpec::mixed_half(x, f.n.unwrap_or(0), f.r.unwrap_or(0))),
        ),
        Kind::GammaTail => ("m", f.m.map(IntegralSpec::gamma_tail)),
        Kind::PolygammaFull => (
            "m, n",
            f.m.zip(f.n)
                .map(|(m, n)| IntegralSpec::polygamma_full(m, n)),
        ),
    };
    let spec = spec.ok_or_else(|| format!("{kind:?} needs --{}", needs.replace(", ", ", --")))?;
    let extra = match kind {
        Kind::PowerLogUnit => f.r.is_some() || f.m.is_some(),
        Kind::MixedHalf => f.m.is_some(),
        Kind::GammaTail => f.x.is_some() || f.n.is_some() || f.r.is_some(),
        Kind::PolygammaFull => f.x.is_some() || f.r.is_some(),
    };
    if extra {
        return Err(format!(
            "{kind:?} takes only --{}",
            needs.replace(", ", ", --")
        ));
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolicOutput {
    pub kind: IntegralKind,
    pub finite_part: f64,
    pub expansion_terms: Vec<ExpansionTerm>,
    pub remainder_is_o1: bool,
}

fn expansion(spec: &IntegralSpec, s: &Settings) -> Result<EpsilonExpansion> {
    if spec.kind == IntegralKind::MixedHalf {
        spec.validate()?;
        return Ok(mixed_half_expansion(spec.x, spec.n, spec.r, s.series_order)?.expansion);
    }
    spec.expansion()
}

pub fn symbolic(spec: &IntegralSpec, s: &Settings) -> Result<SymbolicOutput> {
    let e = expansion(spec, s)?;
    Ok(SymbolicOutput {
        kind: spec.kind,
        finite_part: e.neutrix_limit()?,
        expansion_terms: e.terms().to_vec(),
        remainder_is_o1: e.remainder_is_o1(),
    })
}

pub fn fit(spec: &IntegralSpec, s: &Settings) -> Result<FitReport> {
    let grid = s.eps_grid.as_deref();
    if grid.is_some_and(<[f64]>::is_empty) {
        return Err(Error::InvalidGrid("empty ε grid".into()));
    }
    fit_integral_with(spec, grid, &s.quad)
}
