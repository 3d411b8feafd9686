//! Strategy files: atom lists for both players in shifted or original
//! coordinates.

use std::path::Path;

use blotto_core::numeric::to_f64;
use blotto_core::{DiscreteStrategy, GameSpec, Player, Rational};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::rational::RationalValue;

/// Coordinate system of an atom's `location`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Coords {
    /// Deviation from the even split, in `[-ν, ν]`.
    #[default]
    Shifted,
    /// Raw allocation to the first battlefield, in `[0, 2ν]`.
    Original,
}

/// Any JSON object with `strategy1`/`strategy2` atom lists, including a
/// solve result.
#[derive(Clone, Debug, Deserialize)]
pub struct StrategiesFile {
    #[serde(default)]
    pub coords: Option<Coords>,
    pub strategy1: Option<StrategyEntry>,
    pub strategy2: Option<StrategyEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct StrategyEntry {
    pub atoms: Vec<AtomEntry>,
}

/// One atom. `location` is read in the file's coordinate system; `shifted`
/// and `original` name theirs explicitly. Any that are present must agree.
#[derive(Clone, Debug, Deserialize)]
pub struct AtomEntry {
    pub location: Option<RationalValue>,
    pub shifted: Option<RationalValue>,
    pub original: Option<RationalValue>,
    pub weight: RationalValue,
}

/// Atom written in both coordinate systems.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomOut {
    pub shifted: RationalValue,
    pub original: RationalValue,
    pub weight: RationalValue,
    pub weight_f64: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrategyOut {
    pub atoms: Vec<AtomOut>,
}

impl StrategyOut {
    pub fn new(game: &GameSpec, s: &DiscreteStrategy) -> Self {
        let offset = game.offset(s.player());
        StrategyOut {
            atoms: s
                .atoms()
                .iter()
                .map(|a| AtomOut {
                    shifted: RationalValue(a.location.clone()),
                    original: RationalValue(&a.location + &offset),
                    weight: RationalValue(a.weight.clone()),
                    weight_f64: to_f64(&a.weight),
                })
                .collect(),
        }
    }
}

impl StrategiesFile {
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

    /// The strategy for `player`, if the file has one. `coords` overrides
    /// the file's own `coords` field.
    pub fn strategy(
        &self,
        game: &GameSpec,
        player: Player,
        coords: Option<Coords>,
    ) -> CliResult<Option<DiscreteStrategy>> {
        let entry = match player {
            Player::One => &self.strategy1,
            Player::Two => &self.strategy2,
        };
        let coords = coords.or(self.coords).unwrap_or_default();
        entry
            .as_ref()
            .map(|e| e.resolve(game, player, coords))
            .transpose()
    }

    pub fn require(
        &self,
        game: &GameSpec,
        player: Player,
        coords: Option<Coords>,
    ) -> CliResult<DiscreteStrategy> {
        self.strategy(game, player, coords)?.ok_or_else(|| {
            CliError::Input(format!(
                "strategies file has no strategy{}",
                player_index(player)
            ))
        })
    }
}

pub fn player_index(player: Player) -> usize {
    match player {
        Player::One => 1,
        Player::Two => 2,
    }
}

impl AtomEntry {
    fn shifted_location(&self, offset: &Rational, coords: Coords) -> CliResult<Rational> {
        let from_location = self.location.as_ref().map(|v| match coords {
            Coords::Shifted => v.0.clone(),
            Coords::Original => &v.0 - offset,
        });
        let from_original = self.original.as_ref().map(|v| &v.0 - offset);
        let from_shifted = self.shifted.as_ref().map(|v| v.0.clone());
        let mut found: Option<Rational> = None;
        for candidate in [from_shifted, from_original, from_location]
            .into_iter()
            .flatten()
        {
            match &found {
                Some(prev) if *prev != candidate => {
                    return Err(CliError::Input(
                        "atom has inconsistent shifted/original locations".into(),
                    ))
                }
                _ => found = Some(candidate),
            }
        }
        found.ok_or_else(|| CliError::Input("atom has no location".into()))
    }
}

impl StrategyEntry {
    /// Converts to a strategy. Weights that miss a total of one by at most
    /// `1e-12` are rescaled; larger misses are rejected.
    pub fn resolve(
        &self,
        game: &GameSpec,
        player: Player,
        coords: Coords,
    ) -> CliResult<DiscreteStrategy> {
        let which = player_index(player);
        if self.atoms.is_empty() {
            return Err(CliError::Input(format!("strategy{which} has no atoms")));
        }
        let offset = game.offset(player);
        let atoms: Vec<(Rational, Rational)> = self
            .atoms
            .iter()
            .map(|a| Ok((a.shifted_location(&offset, coords)?, a.weight.0.clone())))
            .collect::<CliResult<_>>()?;
        if atoms.iter().any(|(_, w)| w.is_negative()) {
            return Err(CliError::Input(format!(
                "strategy{which} has a negative weight"
            )));
        }
        let total: Rational = atoms.iter().map(|(_, w)| w).sum();
        if (to_f64(&total) - 1.0).abs() > 1e-12 || !total.is_positive() {
            return Err(CliError::Input(format!(
                "strategy{which} weights sum to {}, not 1",
                to_f64(&total)
            )));
        }
        let atoms = atoms.into_iter().map(|(t, w)| {
            if total.is_one() {
                (t, w)
            } else {
                (t, w / &total)
            }
        });
        Ok(DiscreteStrategy::for_game(game, player, atoms)?)
    }
}
