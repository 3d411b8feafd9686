//! The four subcommands. Each writes one JSON document to `out`, a
//! human-readable summary to `err`, and returns the process exit code.

use std::io::Write;
use std::path::Path;

use blotto_core::numeric::to_f64;
use blotto_core::solver::{solve_symmetric_grid, DEFAULT_ENUMERATION_CAP};
use blotto_core::{
    best_response_gap, format_rational, gram_schmidt_basis, max_payoff_deviation, mc_check,
    reduce_support, reduced_matrix, shift_payoff, solve_lp_pipeline, DiscreteStrategy, GameSpec,
    Interval, Method, Player, Rational,
};
use serde::Serialize;

use crate::config::{GameConfig, SolverOverrides, SolverSettings};
use crate::document::{
    describe, ConfigEcho, KernelInfo, MonteCarlo, ReduceDocument, ReducedEntry, ResultDocument,
    VerifyDocument,
};
use crate::error::{CliError, CliResult, EXIT_OK, EXIT_UNCERTIFIED};
use crate::rational::RationalValue;
use crate::strategies::{player_index, Coords, StrategiesFile, StrategyOut};

/// Random opponents used by `reduce` to measure payoff deviation.
pub const REDUCE_OPPONENTS: usize = 10;

fn emit<T: Serialize>(out: &mut dyn Write, doc: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(doc).map_err(|source| CliError::Json {
        path: "<stdout>".into(),
        source,
    })?;
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn note(err: &mut dyn Write, text: &str) {
    // diagnostics are best effort
    let _ = err.write_all(text.as_bytes());
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct BasisRow {
    degree: usize,
    monic: Vec<RationalValue>,
    sq_norm: RationalValue,
    normalized: Vec<f64>,
}

#[derive(Serialize)]
struct BasisDocument {
    nu: RationalValue,
    max_degree: usize,
    polynomials: Vec<BasisRow>,
}

pub fn basis(
    nu: &Rational,
    max_degree: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let interval = Interval::new(nu.clone())?;
    let basis = gram_schmidt_basis(max_degree, &interval)?;
    let rows: Vec<BasisRow> = (0..basis.len())
        .map(|i| BasisRow {
            degree: i,
            monic: basis.monic()[i]
                .coeffs()
                .iter()
                .cloned()
                .map(RationalValue)
                .collect(),
            sq_norm: RationalValue(basis.sq_norms()[i].clone()),
            normalized: basis.normalized_coeffs(i),
        })
        .collect();
    let mut table = format!(
        "orthogonal polynomials on [-{0}, {0}]\n",
        format_rational(nu)
    );
    for row in &rows {
        let coeffs: Vec<String> = row.normalized.iter().map(|c| format!("{c:.12}")).collect();
        table.push_str(&format!(
            "{:>3}  |p|^2 = {:<14}  [{}]\n",
            row.degree,
            format_rational(&row.sq_norm.0),
            coeffs.join(", ")
        ));
    }
    note(err, &table);
    emit(
        out,
        &BasisDocument {
            nu: RationalValue(nu.clone()),
            max_degree,
            polynomials: rows,
        },
    )?;
    Ok(EXIT_OK)
}

fn monte_carlo(
    game: &GameSpec,
    s1: &DiscreteStrategy,
    s2: &DiscreteStrategy,
    samples: Option<u64>,
    seed: u64,
    exact: f64,
) -> CliResult<Option<MonteCarlo>> {
    samples
        .map(|k| {
            Ok(MonteCarlo::new(
                mc_check(game, s1, s2, k, seed)?,
                seed,
                exact,
            ))
        })
        .transpose()
}

/// Runs the configured solver and assembles the result document.
pub fn solve_document(
    config: &GameConfig,
    flags: &SolverOverrides,
    gap_threshold: f64,
) -> CliResult<(ResultDocument, String)> {
    let game = config.game()?;
    let settings: SolverSettings = config.settings(flags)?;
    let method: Method = settings.method.parse()?;
    let report = match method {
        Method::SymmetricGrid => solve_symmetric_grid(
            &game,
            settings.grid,
            settings.components,
            DEFAULT_ENUMERATION_CAP,
        )?,
        _ => solve_lp_pipeline(&game, settings.grid, settings.tol)?,
    };
    let kernel = shift_payoff(&game);
    let m = kernel.rank_degree();
    let matrix = if game.interval(Player::Two).is_degenerate() {
        None
    } else {
        Some(reduced_matrix(&game, m)?.normalized().to_vec())
    };
    let mc = monte_carlo(
        &game,
        &report.strategy1,
        &report.strategy2,
        settings.samples,
        settings.seed,
        report.value,
    )?;
    let certified = report.within(gap_threshold);
    let (k1, k2) = report.support_sizes();
    let mut summary = format!(
        "method {} on L = {}{}\n",
        report.method,
        settings.grid,
        report
            .components
            .map(|k| format!(", K = {k}"))
            .unwrap_or_default()
    );
    summary.push_str(&describe(&game, &report));
    if let Some(mc) = &mc {
        summary.push_str(&format!(
            "monte carlo {} ± {} over {} samples\n",
            mc.estimate, mc.stderr, mc.samples
        ));
    }
    summary.push_str(&format!(
        "{} (threshold {gap_threshold:e})\n",
        verdict(certified)
    ));
    let doc = ResultDocument {
        config: ConfigEcho::new(&game, settings),
        kernel: KernelInfo {
            coeffs: kernel
                .poly()
                .coeffs()
                .iter()
                .cloned()
                .map(RationalValue)
                .collect(),
            degree: m,
        },
        reduced_matrix: matrix,
        method: report.method.to_string(),
        value: report.value,
        value_exact: RationalValue(report.value_exact.clone()),
        gap1: report.gap1,
        gap2: report.gap2,
        gap_threshold,
        certified,
        support_sizes: [k1, k2],
        strategy1: StrategyOut::new(&game, &report.strategy1),
        strategy2: StrategyOut::new(&game, &report.strategy2),
        monte_carlo: mc,
    };
    Ok((doc, summary))
}

pub fn solve(
    config_path: &Path,
    flags: &SolverOverrides,
    gap_threshold: f64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let config = GameConfig::load(config_path)?;
    let (doc, summary) = solve_document(&config, flags, gap_threshold)?;
    note(err, &summary);
    emit(out, &doc)?;
    Ok(if doc.certified {
        EXIT_OK
    } else {
        EXIT_UNCERTIFIED
    })
}

pub struct VerifyOptions {
    pub gap_threshold: f64,
    pub coords: Option<Coords>,
    pub seed: u64,
    pub samples: Option<u64>,
}

pub fn verify(
    config_path: &Path,
    strategies_path: &Path,
    opts: &VerifyOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let game = GameConfig::load(config_path)?.game()?;
    let file = StrategiesFile::load(strategies_path)?;
    let s1 = file.require(&game, Player::One, opts.coords)?;
    let s2 = file.require(&game, Player::Two, opts.coords)?;
    let br = best_response_gap(&game, &s1, &s2);
    let pass = br.gap1 <= opts.gap_threshold && br.gap2 <= opts.gap_threshold;
    let mc = monte_carlo(&game, &s1, &s2, opts.samples, opts.seed, br.value)?;
    note(
        err,
        &format!(
            "value {} ({})\ngap1 {:e}  gap2 {:e}\n{} (threshold {:e})\n",
            br.value,
            format_rational(&br.value_exact),
            br.gap1,
            br.gap2,
            verdict(pass),
            opts.gap_threshold
        ),
    );
    emit(
        out,
        &VerifyDocument {
            value: br.value,
            value_exact: RationalValue(br.value_exact.clone()),
            gap1: br.gap1,
            gap2: br.gap2,
            best_x: br.best_x,
            best_y: br.best_y,
            gap_threshold: opts.gap_threshold,
            pass,
            support_sizes: [s1.support_size(), s2.support_size()],
            monte_carlo: mc,
        },
    )?;
    Ok(if pass { EXIT_OK } else { EXIT_UNCERTIFIED })
}

fn reduce_one(
    game: &GameSpec,
    s: &DiscreteStrategy,
    degree: usize,
    seed: u64,
) -> CliResult<ReducedEntry> {
    let reduced = if s.interval().is_degenerate() {
        s.clone()
    } else {
        reduce_support(s, &gram_schmidt_basis(degree, s.interval())?)?
    };
    let deviation = max_payoff_deviation(game, s, &reduced, REDUCE_OPPONENTS, seed)?;
    Ok(ReducedEntry {
        support_before: s.support_size(),
        support_after: reduced.support_size(),
        max_deviation: to_f64(&deviation),
        max_deviation_exact: RationalValue(deviation),
        atoms: StrategyOut::new(game, &reduced).atoms,
    })
}

pub fn reduce(
    config_path: &Path,
    strategies_path: &Path,
    coords: Option<Coords>,
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let game = GameConfig::load(config_path)?.game()?;
    let file = StrategiesFile::load(strategies_path)?;
    let m = shift_payoff(&game).rank_degree();
    let mut entries = [None, None];
    for (slot, player) in entries.iter_mut().zip([Player::One, Player::Two]) {
        if let Some(s) = file.strategy(&game, player, coords)? {
            *slot = Some(reduce_one(&game, &s, m, seed)?);
        }
    }
    if entries.iter().all(Option::is_none) {
        return Err(CliError::Input(
            "strategies file has neither strategy1 nor strategy2".into(),
        ));
    }
    let mut summary = String::new();
    for (entry, player) in entries.iter().zip([Player::One, Player::Two]) {
        if let Some(e) = entry {
            summary.push_str(&format!(
                "strategy{}: {} atoms -> {} atoms (bound {}), max deviation {:e} over {REDUCE_OPPONENTS} opponents\n",
                player_index(player),
                e.support_before,
                e.support_after,
                m + 2,
                e.max_deviation
            ));
        }
    }
    note(err, &summary);
    let [strategy1, strategy2] = entries;
    emit(
        out,
        &ReduceDocument {
            degree: m,
            bound: m + 2,
            opponents: REDUCE_OPPONENTS,
            seed,
            strategy1,
            strategy2,
        },
    )?;
    Ok(EXIT_OK)
}
