//! Greedy solvers for popularity-based values, where every game is worth the
//! popularity of its winner.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::brackets::BracketBuilder;
use crate::error::{mismatch, Result};
use crate::model::{
    detect_win_count, rounds_for, GameValueFunction, Instance, Player, Round, Seeding, Value,
};
use crate::solve::{Algorithm, SolveResult};

/// Nonnegative popularity values `v[i - 1]` for players `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopularityInstance {
    v: Vec<Value>,
}

impl PopularityInstance {
    pub fn new(v: Vec<Value>) -> Result<Self> {
        Self::checked(v, "popularity")
    }

    fn checked(v: Vec<Value>, algorithm: &'static str) -> Result<Self> {
        if v.is_empty() || !v.len().is_power_of_two() {
            return Err(mismatch(
                algorithm,
                format!("player count {} is not a power of two", v.len()),
            ));
        }
        if let Some(i) = v.iter().position(|&x| x < 0) {
            return Err(mismatch(
                algorithm,
                format!("player {} has negative popularity {}", i + 1, v[i]),
            ));
        }
        Ok(PopularityInstance { v })
    }

    /// Reads popularity values from a popularity instance, or from any
    /// instance whose value depends only on the winner.
    pub fn from_instance(instance: &Instance) -> Result<Self> {
        Self::for_algorithm(instance, "popularity")
    }

    pub(crate) fn for_algorithm(instance: &Instance, algorithm: &'static str) -> Result<Self> {
        let n = instance.n();
        let v = match instance.values() {
            GameValueFunction::Popularity(t) => {
                (1..=n).map(|i| t.get(&i).copied().unwrap_or(0)).collect()
            }
            _ => {
                let not_pop = || {
                    mismatch(
                        algorithm,
                        format!(
                            "{} values are not popularity-based",
                            instance.kind().as_str()
                        ),
                    )
                };
                let wc = detect_win_count(instance).ok_or_else(not_pop)?;
                let mut v = Vec::with_capacity(n);
                for i in 1..=n {
                    let first = wc.value(i, 0, 1);
                    if (2..=instance.rounds()).any(|r| wc.value(i, 0, r) != first) {
                        return Err(not_pop());
                    }
                    v.push(first);
                }
                v
            }
        };
        Self::checked(v, algorithm)
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn popularity(&self, player: Player) -> Value {
        self.v[player - 1]
    }

    pub fn values(&self) -> &[Value] {
        &self.v
    }

    pub fn to_instance(&self) -> Instance {
        let t: BTreeMap<Player, Value> = self
            .v
            .iter()
            .enumerate()
            .map(|(i, &x)| (i + 1, x))
            .collect();
        Instance::new(self.n(), GameValueFunction::Popularity(t), None)
            .expect("players are in range by construction")
    }

    /// True iff a stronger player is never less popular.
    pub fn is_monotone(&self) -> bool {
        self.v.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn distinct_values(&self) -> BTreeSet<Value> {
        self.v.iter().copied().collect()
    }
}

fn finish(algorithm: Algorithm, pop: &PopularityInstance, builder: BracketBuilder) -> Result<SolveResult> {
    SolveResult::from_seeding(algorithm, &pop.to_instance(), builder.into_seeding()?)
}

/// Exact solver for at most two distinct popularity values `a > b`.
///
/// Players go strongest first. A popular player wins the largest open
/// subtournament and an unpopular one the smallest.
pub fn greedy_two_values(pop: &PopularityInstance) -> Result<SolveResult> {
    let values = pop.distinct_values();
    if values.len() > 2 {
        return Err(mismatch(
            "greedy2",
            format!("{} distinct popularity values, at most 2 allowed", values.len()),
        ));
    }
    let a = *values.last().expect("at least one player");
    let n = pop.n();
    let mut b = BracketBuilder::new(n);
    b.place(n, b.first_open(rounds_for(n)).expect("root is open"))?;
    for player in (1..n).rev() {
        let r = if pop.popularity(player) == a {
            b.largest_open_rounds()
        } else {
            b.smallest_open_rounds()
        }
        .expect("an open subtournament remains for every unplaced player");
        let slot = b.first_open(r).expect("round count is open");
        b.place(player, slot)?;
    }
    finish(Algorithm::Greedy2, pop, b)
}

/// Linear-time solver when popularity never decreases with strength: every
/// player wins the largest subtournament still open.
pub fn greedy_agree_order(pop: &PopularityInstance) -> Result<SolveResult> {
    if !pop.is_monotone() {
        return Err(mismatch(
            "agree",
            "popularity is not monotone in strength",
        ));
    }
    let n = pop.n();
    let mut b = BracketBuilder::new(n);
    for player in (1..=n).rev() {
        let r = b.largest_open_rounds().expect("a slot per unplaced player");
        b.place(player, b.first_open(r).expect("round count is open"))?;
    }
    finish(Algorithm::Agree, pop, b)
}

/// Stronger player with lower popularity than some weaker active player, and
/// that weaker player, if any.
fn find_conflict(pop: &PopularityInstance, removed: &[bool]) -> Option<(Player, Player)> {
    let active: Vec<Player> = (1..=pop.n()).rev().filter(|&p| !removed[p]).collect();
    let mut by_value = active.clone();
    by_value.sort_by_key(|&x| std::cmp::Reverse((pop.popularity(x), x)));
    active
        .iter()
        .zip(&by_value)
        .find(|(s, v)| s != v)
        .map(|(&s, &v)| (s, v))
}

/// A minimum set of players whose removal leaves popularity monotone in
/// strength.
///
/// Branches on the first position where the strength order and the
/// popularity order disagree, with iterative deepening on the set size.
pub fn compute_disagreement_set(pop: &PopularityInstance) -> BTreeSet<Player> {
    let mut removed = vec![false; pop.n() + 1];
    let mut k = 0;
    loop {
        if remove_conflicts(pop, &mut removed, k) {
            return (1..=pop.n()).filter(|&p| removed[p]).collect();
        }
        k += 1;
    }
}

fn remove_conflicts(pop: &PopularityInstance, removed: &mut [bool], budget: usize) -> bool {
    let Some((stronger, weaker)) = find_conflict(pop, removed) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for p in [weaker, stronger] {
        removed[p] = true;
        if remove_conflicts(pop, removed, budget - 1) {
            return true;
        }
        removed[p] = false;
    }
    false
}

/// Exact solver parameterized by the size `k` of the disagreement set.
///
/// For every guess of how many games each disagreeing player wins, a greedy
/// pass seeds the players; every subtournament remembers the player that
/// opened it and only weaker players may win it. The best guess wins.
pub fn fpt_disagreement(pop: &PopularityInstance) -> Result<SolveResult> {
    let n = pop.n();
    let rounds = rounds_for(n);
    let disagreeing: Vec<Player> = compute_disagreement_set(pop).into_iter().collect();
    let rest: Vec<Player> = (1..=n)
        .rev()
        .filter(|p| disagreeing.binary_search(p).is_err())
        .collect();

    let guesses: Box<dyn Iterator<Item = Vec<Round>>> = if disagreeing.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(
            std::iter::repeat_n(0..=rounds, disagreeing.len()).multi_cartesian_product(),
        )
    };

    let instance = pop.to_instance();
    let mut best: Option<SolveResult> = None;
    for guess in guesses {
        let Some(seeding) = restricted_pass(n, &disagreeing, &guess, &rest)? else {
            continue;
        };
        let candidate = SolveResult::from_seeding(Algorithm::Fpt, &instance, seeding)?;
        let better = match &best {
            None => true,
            Some(b) => {
                candidate.value > b.value
                    || (candidate.value == b.value && candidate.seeding < b.seeding)
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    Ok(best.expect("the guess matching an optimal seeding never aborts"))
}

/// One greedy pass for a fixed guess; `None` when the guess is infeasible.
fn restricted_pass(
    n: usize,
    disagreeing: &[Player],
    guess: &[Round],
    rest: &[Player],
) -> Result<Option<Seeding>> {
    let mut guessed: Vec<(Round, Player)> =
        disagreeing.iter().copied().zip(guess.iter().copied()).map(|(p, g)| (g, p)).collect();
    guessed.sort_unstable_by(|x, y| y.cmp(x));

    let mut b = BracketBuilder::new(n);
    let mut next_guessed = guessed.iter().peekable();
    let mut next_rest = rest.iter().peekable();
    while !b.is_complete() {
        let r = b.largest_open_rounds().expect("a slot per unplaced player");
        if let Some(&&(g, j)) = next_guessed.peek() {
            if g > r {
                return Ok(None);
            }
            if g == r {
                let Some(slot) = b.best_fit(r, j) else {
                    return Ok(None);
                };
                b.place(j, slot)?;
                next_guessed.next();
                continue;
            }
        }
        let Some(&i) = next_rest.next() else {
            return Ok(None);
        };
        let Some(slot) = b.largest_fit(i) else {
            return Ok(None);
        };
        b.place(i, slot)?;
    }
    let tree = b.into_tree()?;
    // The pass may hand a disagreeing player a different win count than
    // guessed only if it aborted, which it did not.
    debug_assert!(guessed.iter().all(|&(g, j)| tree.children(j).len() == g as usize));
    Ok(Some(crate::brackets::seeding_from_ba(&tree)?))
}
