//! Solver results and algorithm dispatch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::exact::{brute_force, dp_wincount, BruteForceOptions};
use crate::greedy::{
    compute_disagreement_set, fpt_disagreement, greedy_agree_order, greedy_two_values,
    PopularityInstance,
};
use crate::matching::approx_matching;
use crate::model::{detect_win_count, evaluate, rounds_for, Instance, Player, Seeding, Value, ValueKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Brute,
    Dp,
    Greedy2,
    Agree,
    Fpt,
    Matching,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Brute,
        Algorithm::Dp,
        Algorithm::Greedy2,
        Algorithm::Agree,
        Algorithm::Fpt,
        Algorithm::Matching,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::Dp => "dp",
            Algorithm::Greedy2 => "greedy2",
            Algorithm::Agree => "agree",
            Algorithm::Fpt => "fpt",
            Algorithm::Matching => "matching",
        }
    }

    /// False only for the matching approximation.
    pub fn is_exact(self) -> bool {
        self != Algorithm::Matching
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// A seeding together with its value and the algorithm that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ResultDoc", into = "ResultDoc")]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub value: Value,
    pub seeding: Seeding,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultDoc {
    pub algorithm: Algorithm,
    pub value: Value,
    pub order: Vec<Player>,
}

impl TryFrom<ResultDoc> for SolveResult {
    type Error = Error;

    fn try_from(doc: ResultDoc) -> Result<Self> {
        Ok(SolveResult {
            algorithm: doc.algorithm,
            value: doc.value,
            seeding: Seeding::new(doc.order)?,
        })
    }
}

impl From<SolveResult> for ResultDoc {
    fn from(r: SolveResult) -> Self {
        ResultDoc {
            algorithm: r.algorithm,
            value: r.value,
            order: r.seeding.into_order(),
        }
    }
}

impl SolveResult {
    /// Scores `seeding` with the evaluator, so `value` always matches it.
    pub fn from_seeding(algorithm: Algorithm, instance: &Instance, seeding: Seeding) -> Result<Self> {
        let value = evaluate(instance, &seeding)?.total;
        Ok(SolveResult {
            algorithm,
            value,
            seeding,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("results always serialize")
    }
}

/// Largest guess space `auto` hands to the disagreement algorithm.
const AUTO_FPT_GUESSES: u128 = 1 << 16;

/// The algorithm `auto` picks: the most specialised exact solver that
/// applies, then brute force within its cap, then the matching
/// approximation for round-oblivious values.
pub fn auto_algorithm(instance: &Instance, brute: BruteForceOptions) -> Result<Algorithm> {
    if let Ok(pop) = PopularityInstance::from_instance(instance) {
        if pop.is_monotone() {
            return Ok(Algorithm::Agree);
        }
        if pop.distinct_values().len() <= 2 {
            return Ok(Algorithm::Greedy2);
        }
        let k = compute_disagreement_set(&pop).len() as u32;
        let guesses = (rounds_for(instance.n()) as u128 + 1).checked_pow(k);
        if guesses.is_some_and(|g| g <= AUTO_FPT_GUESSES) {
            return Ok(Algorithm::Fpt);
        }
        return Ok(Algorithm::Dp);
    }
    if detect_win_count(instance).is_some() {
        return Ok(Algorithm::Dp);
    }
    if instance.n() <= brute.cap {
        return Ok(Algorithm::Brute);
    }
    if matches!(instance.kind(), ValueKind::RoundOblivious) {
        return Ok(Algorithm::Matching);
    }
    Err(mismatch(
        "auto",
        format!(
            "no exact solver handles a {} instance with {} players (brute force cap {})",
            instance.kind().as_str(),
            instance.n(),
            brute.cap
        ),
    ))
}

/// Runs `algorithm`, or the one chosen by [`auto_algorithm`] when `None`.
pub fn solve(
    instance: &Instance,
    algorithm: Option<Algorithm>,
    brute: BruteForceOptions,
) -> Result<SolveResult> {
    let algorithm = match algorithm {
        Some(a) => a,
        None => auto_algorithm(instance, brute)?,
    };
    match algorithm {
        Algorithm::Brute => brute_force(instance, brute),
        Algorithm::Dp => dp_wincount(instance),
        Algorithm::Greedy2 => greedy_two_values(&PopularityInstance::for_algorithm(instance, "greedy2")?),
        Algorithm::Agree => greedy_agree_order(&PopularityInstance::for_algorithm(instance, "agree")?),
        Algorithm::Fpt => fpt_disagreement(&PopularityInstance::for_algorithm(instance, "fpt")?),
        Algorithm::Matching => approx_matching(instance),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!("auto".parse::<Algorithm>().is_err());
    }

    #[test]
    fn result_json_shape() {
        let r = SolveResult {
            algorithm: Algorithm::Dp,
            value: 11,
            seeding: Seeding::new(vec![4, 1, 3, 2]).unwrap(),
        };
        let s = r.to_json();
        assert_eq!(s, r#"{"algorithm":"dp","value":11,"order":[4,1,3,2]}"#);
        let back: SolveResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
