//! Instance families selectable from the command line.

use clap::Args;
use rand::Rng;

use bracketopt::families;
use bracketopt::matching::make_tight_instance;
use bracketopt::{Instance, Value};

use crate::CliError;

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Round-dependent values for every ordered pair.
    #[arg(long, value_name = "N")]
    pub general: Option<usize>,
    /// Values for every ordered pair, independent of the round.
    #[arg(long = "round-oblivious", value_name = "N")]
    pub round_oblivious: Option<usize>,
    /// Values depending only on the winner and the round.
    #[arg(long = "win-count", value_name = "N")]
    pub win_count: Option<usize>,
    /// Every game is worth the popularity of its winner.
    #[arg(long, value_name = "N")]
    pub popularity: Option<usize>,
    /// Instance on which the matching approximation is far from optimal.
    #[arg(long, num_args = 2, value_names = ["N", "SCALE"])]
    pub tight: Option<Vec<i64>>,
    /// Draw popularity from this many distinct values.
    #[arg(long, value_name = "K")]
    pub values: Option<usize>,
    /// Plant a popularity profile that disagrees with strength on at most K players.
    #[arg(long, value_name = "K")]
    pub disagreement: Option<usize>,
    /// Popularity nondecreasing in strength.
    #[arg(long)]
    pub monotone: bool,
    /// Smallest random value (default -9, or 0 for popularity).
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<Value>,
    /// Largest random value.
    #[arg(long, allow_negative_numbers = true, default_value_t = 9)]
    pub hi: Value,
    #[arg(long = "rng-seed", default_value_t = 0)]
    pub rng_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PopularityMode {
    Uniform,
    Levels(usize),
    Monotone,
    Planted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    General(usize),
    RoundOblivious(usize),
    WinCount(usize),
    Popularity(usize, PopularityMode),
    Tight(usize, Value),
}

impl FamilyArgs {
    /// The selected family, or `None` if no family flag was given.
    pub fn family(&self) -> Result<Option<Family>, CliError> {
        let mut picked = Vec::new();
        if let Some(n) = self.general {
            picked.push(Family::General(n));
        }
        if let Some(n) = self.round_oblivious {
            picked.push(Family::RoundOblivious(n));
        }
        if let Some(n) = self.win_count {
            picked.push(Family::WinCount(n));
        }
        if let Some(n) = self.popularity {
            let modes = [
                self.values.map(PopularityMode::Levels),
                self.disagreement.map(PopularityMode::Planted),
                self.monotone.then_some(PopularityMode::Monotone),
            ];
            let mut modes = modes.into_iter().flatten();
            let mode = modes.next().unwrap_or(PopularityMode::Uniform);
            if modes.next().is_some() {
                return Err(CliError::Usage(
                    "--values, --disagreement and --monotone are mutually exclusive".into(),
                ));
            }
            picked.push(Family::Popularity(n, mode));
        } else if self.values.is_some() || self.disagreement.is_some() || self.monotone {
            return Err(CliError::Usage(
                "--values, --disagreement and --monotone need --popularity".into(),
            ));
        }
        if let Some(t) = &self.tight {
            let n = usize::try_from(t[0])
                .map_err(|_| CliError::Usage(format!("--tight needs a positive size, got {}", t[0])))?;
            picked.push(Family::Tight(n, t[1]));
        }
        match picked.len() {
            0 => Ok(None),
            1 => Ok(picked.pop()),
            _ => Err(CliError::Usage("choose a single instance family".into())),
        }
    }

    pub fn range(&self, family: Family) -> (Value, Value) {
        let default_lo = match family {
            Family::Popularity(..) => 0,
            _ => -9,
        };
        (self.lo.unwrap_or(default_lo), self.hi)
    }
}

impl Family {
    pub fn n(self) -> usize {
        match self {
            Family::General(n)
            | Family::RoundOblivious(n)
            | Family::WinCount(n)
            | Family::Popularity(n, _)
            | Family::Tight(n, _) => n,
        }
    }

    /// Short name used in benchmark instance ids.
    pub fn name(self) -> String {
        match self {
            Family::General(n) => format!("general-n{n}"),
            Family::RoundOblivious(n) => format!("ro-n{n}"),
            Family::WinCount(n) => format!("wc-n{n}"),
            Family::Popularity(n, PopularityMode::Uniform) => format!("pop-n{n}"),
            Family::Popularity(n, PopularityMode::Levels(k)) => format!("pop-n{n}-v{k}"),
            Family::Popularity(n, PopularityMode::Monotone) => format!("pop-n{n}-mono"),
            Family::Popularity(n, PopularityMode::Planted(k)) => format!("pop-n{n}-k{k}"),
            Family::Tight(n, s) => format!("tight-n{n}-s{s}"),
        }
    }

    pub fn generate(self, lo: Value, hi: Value, rng: &mut impl Rng) -> bracketopt::Result<Instance> {
        match self {
            Family::General(n) => families::random_general(n, lo, hi, rng),
            Family::RoundOblivious(n) => families::random_round_oblivious(n, lo, hi, rng),
            Family::WinCount(n) => families::random_win_count(n, lo, hi, rng),
            Family::Popularity(n, mode) => match mode {
                PopularityMode::Uniform => families::random_popularity(n, lo, hi, rng),
                PopularityMode::Levels(k) => families::random_popularity_levels(n, k, hi, rng),
                PopularityMode::Monotone => families::random_monotone_popularity(n, hi, rng),
                PopularityMode::Planted(k) => families::planted_disagreement(n, k, hi, rng),
            },
            Family::Tight(n, scale) => make_tight_instance(n, scale),
        }
    }
}
