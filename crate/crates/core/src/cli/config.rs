//! Optional TOML settings file.
//!
//! ```toml
//! eps_grid = [0.00390625, 0.001953125, 0.0009765625]  # finite-part / gamma fits
//! quad_rel_tol = 1e-29                                  # double-double quadrature
//! series_order = 60                                     # mixed_half series length
//! vanishing_order = 8                                   # analytic powers in shifted fits
//! shifted_grid = [0.015625, 0.0078125]                  # shifted-argument fits
//! ```
//!
//! Every key is optional. Command-line flags take precedence.

use std::path::Path;

use serde::Deserialize;

use crate::oracle::{default_shifted_grid, DEFAULT_VANISHING_ORDER};
use crate::quad::QuadOptions;
use crate::symbolic::DEFAULT_SERIES_ORDER;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub eps_grid: Option<Vec<f64>>,
    pub quad_rel_tol: Option<f64>,
    pub series_order: Option<usize>,
    pub vanishing_order: Option<u32>,
    pub shifted_grid: Option<Vec<f64>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    /// `self` with every key that `other` sets replaced.
    pub fn overlay(mut self, other: ConfigFile) -> Self {
        if other.eps_grid.is_some() {
            self.eps_grid = other.eps_grid;
        }
        if other.quad_rel_tol.is_some() {
            self.quad_rel_tol = other.quad_rel_tol;
        }
        if other.series_order.is_some() {
            self.series_order = other.series_order;
        }
        if other.vanishing_order.is_some() {
            self.vanishing_order = other.vanishing_order;
        }
        if other.shifted_grid.is_some() {
            self.shifted_grid = other.shifted_grid;
        }
        self
    }
}

/// Settings after defaults, file and flags are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    /// `None` lets each fit pick its default grid.
    pub eps_grid: Option<Vec<f64>>,
    pub quad: QuadOptions,
    pub series_order: usize,
    pub vanishing_order: u32,
    pub shifted_grid: Vec<f64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            eps_grid: None,
            quad: QuadOptions::DD,
            series_order: DEFAULT_SERIES_ORDER,
            vanishing_order: DEFAULT_VANISHING_ORDER,
            shifted_grid: default_shifted_grid(),
        }
    }
}

impl Settings {
    pub fn resolve(cfg: ConfigFile) -> Result<Self, String> {
        let mut s = Settings::default();
        if let Some(g) = cfg.eps_grid {
            if g.is_empty() {
                return Err("eps_grid must not be empty".into());
            }
            s.eps_grid = Some(g);
        }
        if let Some(t) = cfg.quad_rel_tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(format!("quad_rel_tol = {t} must lie in (0, 1)"));
            }
            s.quad.rel_tol = t;
        }
        if let Some(o) = cfg.series_order {
            if o == 0 {
                return Err("series_order must be positive".into());
            }
            s.series_order = o;
        }
        if let Some(d) = cfg.vanishing_order {
            s.vanishing_order = d;
        }
        if let Some(g) = cfg.shifted_grid {
            if g.is_empty() {
                return Err("shifted_grid must not be empty".into());
            }
            s.shifted_grid = g;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let cfg = ConfigFile::parse(
            "eps_grid = [0.01, 0.001]\nquad_rel_tol = 1e-20\nseries_order = 30\n\
             vanishing_order = 4\nshifted_grid = [0.1]\n",
        )
        .unwrap();
        let s = Settings::resolve(cfg).unwrap();
        assert_eq!(s.eps_grid, Some(vec![0.01, 0.001]));
        assert_eq!(s.quad.rel_tol, 1e-20);
        assert_eq!(s.series_order, 30);
        assert_eq!(s.vanishing_order, 4);
        assert_eq!(s.shifted_grid, vec![0.1]);
    }

    #[test]
    fn flags_win_over_file() {
        let file = ConfigFile::parse("series_order = 30\nvanishing_order = 4").unwrap();
        let flags = ConfigFile {
            series_order: Some(12),
            ..Default::default()
        };
        let s = Settings::resolve(file.overlay(flags)).unwrap();
        assert_eq!(s.series_order, 12);
        assert_eq!(s.vanishing_order, 4);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(ConfigFile::parse("grid = [1]").is_err());
        let bad = ConfigFile::parse("quad_rel_tol = -1.0").unwrap();
        assert!(Settings::resolve(bad).is_err());
        assert_eq!(
            Settings::resolve(ConfigFile::default()).unwrap(),
            Settings::default()
        );
    }
}
