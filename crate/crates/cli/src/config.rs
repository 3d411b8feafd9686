//! Game configuration files.

use std::path::Path;

use blotto_core::numeric::to_f64;
use blotto_core::solver::{DEFAULT_GRID, DEFAULT_TOL};
use blotto_core::{GameSpec, Method, Polynomial};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::rational::RationalValue;

/// A game `(n, a, r)` and optional solver settings, as read from JSON.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameConfig {
    pub n: RationalValue,
    pub a: RationalValue,
    /// Coefficients of `r`, constant term first.
    pub r_coeffs: Vec<RationalValue>,
    #[serde(default)]
    pub solver: SolverBlock,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverBlock {
    #[serde(rename = "L")]
    pub grid: Option<RationalValue>,
    pub tol: Option<RationalValue>,
    #[serde(rename = "K")]
    pub components: Option<RationalValue>,
    pub method: Option<String>,
    pub seed: Option<RationalValue>,
    pub samples: Option<RationalValue>,
}

/// Solver settings after command-line flags have been applied.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverSettings {
    pub method: String,
    #[serde(rename = "L")]
    pub grid: usize,
    pub tol: f64,
    #[serde(rename = "K")]
    pub components: Option<usize>,
    pub seed: u64,
    pub samples: Option<u64>,
}

/// Flag values that override the config's solver block.
#[derive(Clone, Debug, Default)]
pub struct SolverOverrides {
    pub method: Option<Method>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub components: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

fn whole(value: &RationalValue, field: &str) -> CliResult<u64> {
    let r = &value.0;
    if !r.is_integer() || r.is_negative() {
        return Err(CliError::Input(format!(
            "{field} must be a non-negative integer"
        )));
    }
    r.to_integer()
        .to_u64()
        .ok_or_else(|| CliError::Input(format!("{field} is too large")))
}

impl GameConfig {
    pub fn from_json(text: &str, path: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|source| CliError::Json {
            path: path.to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: shown.clone(),
            source,
        })?;
        Self::from_json(&text, &shown)
    }

    pub fn game(&self) -> CliResult<GameSpec> {
        if self.r_coeffs.is_empty() {
            return Err(CliError::Input("r_coeffs must not be empty".into()));
        }
        if self.n.0.is_negative() {
            return Err(CliError::Input("n must be non-negative".into()));
        }
        if self.a.0.is_negative() {
            return Err(CliError::Input("a must be non-negative".into()));
        }
        let r = Polynomial::new(self.r_coeffs.iter().map(|c| c.0.clone()).collect());
        Ok(GameSpec::new(self.n.0.clone(), self.a.0.clone(), r)?)
    }

    pub fn settings(&self, flags: &SolverOverrides) -> CliResult<SolverSettings> {
        let block = &self.solver;
        let method = match (flags.method, &block.method) {
            (Some(m), _) => m,
            (None, Some(text)) => text.parse::<Method>()?,
            (None, None) => Method::LpGrid,
        };
        if !matches!(method, Method::LpGrid | Method::SymmetricGrid) {
            return Err(CliError::Input(format!(
                "method {method} cannot be used to solve"
            )));
        }
        let grid = match (flags.grid, &block.grid) {
            (Some(l), _) => l,
            (None, Some(v)) => whole(v, "L")? as usize,
            (None, None) => DEFAULT_GRID,
        };
        if grid == 0 {
            return Err(CliError::Input("L must be at least 1".into()));
        }
        let tol = match (flags.tol, &block.tol) {
            (Some(t), _) => t,
            (None, Some(v)) => to_f64(&v.0),
            (None, None) => DEFAULT_TOL,
        };
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Input("tol must be positive".into()));
        }
        let components = match (flags.components, &block.components) {
            (Some(k), _) => Some(k),
            (None, Some(v)) => Some(whole(v, "K")? as usize),
            (None, None) => None,
        };
        if components == Some(0) {
            return Err(CliError::Input("K must be at least 1".into()));
        }
        let seed = match (flags.seed, &block.seed) {
            (Some(s), _) => s,
            (None, Some(v)) => whole(v, "seed")?,
            (None, None) => 0,
        };
        let samples = match (flags.samples, &block.samples) {
            (Some(s), _) => Some(s),
            (None, Some(v)) => Some(whole(v, "samples")?),
            (None, None) => None,
        };
        if samples == Some(0) {
            return Err(CliError::Input("samples must be at least 1".into()));
        }
        Ok(SolverSettings {
            method: method.as_str().to_string(),
            grid,
            tol,
            components,
            seed,
            samples,
        })
    }
}
