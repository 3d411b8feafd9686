//! JSON documents written to stdout.

use blotto_core::{format_rational, EquilibriumReport, GameSpec, McEstimate};
use serde::Serialize;

use crate::config::SolverSettings;
use crate::rational::RationalValue;
use crate::strategies::StrategyOut;

/// The game as it was understood, with solver settings after flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub n: RationalValue,
    pub a: RationalValue,
    pub r_coeffs: Vec<RationalValue>,
    pub solver: SolverSettings,
}

impl ConfigEcho {
    pub fn new(game: &GameSpec, solver: SolverSettings) -> Self {
        ConfigEcho {
            n: RationalValue(game.n().clone()),
            a: RationalValue(game.a().clone()),
            r_coeffs: game
                .r()
                .coeffs()
                .iter()
                .cloned()
                .map(RationalValue)
                .collect(),
            solver,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelInfo {
    /// Coefficients of `P(z) = r(z + a/2) + r(-z + a/2)`, constant first.
    pub coeffs: Vec<RationalValue>,
    #[serde(rename = "M")]
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub stderr: f64,
    /// Whether the estimate lies within four standard errors of the exact value.
    pub consistent: bool,
}

impl MonteCarlo {
    pub fn new(est: McEstimate, seed: u64, exact: f64) -> Self {
        MonteCarlo {
            samples: est.samples,
            seed,
            estimate: est.estimate,
            stderr: est.stderr,
            consistent: (est.estimate - exact).abs() <= 4.0 * est.stderr,
        }
    }
}

/// Output of `solve`. Its `strategy1`/`strategy2` fields make it a valid
/// strategies file for `verify` and `reduce`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub config: ConfigEcho,
    pub kernel: KernelInfo,
    /// Reduced matrix in the orthonormal bases; absent when `n = 0`.
    pub reduced_matrix: Option<Vec<Vec<f64>>>,
    pub method: String,
    pub value: f64,
    pub value_exact: RationalValue,
    pub gap1: f64,
    pub gap2: f64,
    pub gap_threshold: f64,
    pub certified: bool,
    pub support_sizes: [usize; 2],
    pub strategy1: StrategyOut,
    pub strategy2: StrategyOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarlo>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyDocument {
    pub value: f64,
    pub value_exact: RationalValue,
    pub gap1: f64,
    pub gap2: f64,
    /// Best pure deviations found, in shifted coordinates.
    pub best_x: f64,
    pub best_y: f64,
    pub gap_threshold: f64,
    pub pass: bool,
    pub support_sizes: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarlo>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedEntry {
    pub support_before: usize,
    pub support_after: usize,
    pub max_deviation: f64,
    pub max_deviation_exact: RationalValue,
    pub atoms: Vec<crate::strategies::AtomOut>,
}

/// Output of `reduce`; also a valid strategies file.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReduceDocument {
    #[serde(rename = "M")]
    pub degree: usize,
    /// Support bound `M + 2`.
    pub bound: usize,
    pub opponents: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy1: Option<ReducedEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy2: Option<ReducedEntry>,
}

/// Human-readable summary of a report, for stderr.
pub fn describe(game: &GameSpec, report: &EquilibriumReport) -> String {
    let mut out = String::new();
    for (label, s) in [
        ("player 1", &report.strategy1),
        ("player 2", &report.strategy2),
    ] {
        let offset = game.offset(s.player());
        out.push_str(&format!("{label}:\n"));
        out.push_str(&format!(
            "  {:>12}  {:>12}  {:>12}\n",
            "shifted", "original", "weight"
        ));
        for atom in s.atoms() {
            out.push_str(&format!(
                "  {:>12}  {:>12}  {:>12}\n",
                format_rational(&atom.location),
                format_rational(&(&atom.location + &offset)),
                format_rational(&atom.weight)
            ));
        }
    }
    out.push_str(&format!(
        "value {} ({})\ngap1 {:e}  gap2 {:e}\n",
        report.value,
        format_rational(&report.value_exact),
        report.gap1,
        report.gap2
    ));
    out
}
