//! Instances, seedings and how a seeding is scored.
//!
//! Players are the integers `1..=n` and a larger id is a stronger player, so
//! every game is won by the player with the larger id. Rounds are numbered
//! from 1 (the leaf round) up to `log2(n)` (the final).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Player = usize;
pub type Round = u32;
pub type Value = i64;

/// Number of rounds of a bracket with `n` players; `n` must be a power of two.
pub fn rounds_for(n: usize) -> Round {
    debug_assert!(n.is_power_of_two());
    n.trailing_zeros()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    General,
    RoundOblivious,
    WinCount,
    Popularity,
}

impl ValueKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ValueKind::General => "general",
            ValueKind::RoundOblivious => "round_oblivious",
            ValueKind::WinCount => "win_count",
            ValueKind::Popularity => "popularity",
        }
    }
}

/// A game-value function stored as a sparse table; absent keys are worth 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameValueFunction {
    /// `(i, j, r) -> v(i, j, r)`.
    General(BTreeMap<(Player, Player, Round), Value>),
    /// `(i, j) -> v(i, j)` for every round.
    RoundOblivious(BTreeMap<(Player, Player), Value>),
    /// `(winner, r) -> v'(winner, r)`, so `v(i, j, r) = v'(max(i, j), r)`.
    WinCount(BTreeMap<(Player, Round), Value>),
    /// `i -> v_i`, so `v(i, j, r) = v_max(i, j)`.
    Popularity(BTreeMap<Player, Value>),
}

impl GameValueFunction {
    pub fn kind(&self) -> ValueKind {
        match self {
            GameValueFunction::General(_) => ValueKind::General,
            GameValueFunction::RoundOblivious(_) => ValueKind::RoundOblivious,
            GameValueFunction::WinCount(_) => ValueKind::WinCount,
            GameValueFunction::Popularity(_) => ValueKind::Popularity,
        }
    }

    /// Value of a game in round `r` whose first argument is `i` (the winner of
    /// the lower-position half) and second argument is `j`.
    pub fn value(&self, i: Player, j: Player, r: Round) -> Value {
        let found = match self {
            GameValueFunction::General(t) => t.get(&(i, j, r)),
            GameValueFunction::RoundOblivious(t) => t.get(&(i, j)),
            GameValueFunction::WinCount(t) => t.get(&(i.max(j), r)),
            GameValueFunction::Popularity(t) => t.get(&i.max(j)),
        };
        found.copied().unwrap_or(0)
    }

    /// Number of stored (nonzero) entries.
    pub fn len(&self) -> usize {
        match self {
            GameValueFunction::General(t) => t.len(),
            GameValueFunction::RoundOblivious(t) => t.len(),
            GameValueFunction::WinCount(t) => t.len(),
            GameValueFunction::Popularity(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every value that some game can take, including the implicit 0 when the
    /// table is not dense.
    pub fn codomain(&self, n: usize) -> std::collections::BTreeSet<Value> {
        let rounds = rounds_for(n);
        let mut out = std::collections::BTreeSet::new();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                for r in 1..=rounds {
                    out.insert(self.value(i, j, r));
                }
            }
        }
        out
    }

    fn drop_zeros(&mut self) {
        match self {
            GameValueFunction::General(t) => t.retain(|_, v| *v != 0),
            GameValueFunction::RoundOblivious(t) => t.retain(|_, v| *v != 0),
            GameValueFunction::WinCount(t) => t.retain(|_, v| *v != 0),
            GameValueFunction::Popularity(t) => t.retain(|_, v| *v != 0),
        }
    }
}

/// A value function over `n` players, with an optional target value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::InstanceDoc", into = "crate::io::InstanceDoc")]
pub struct Instance {
    n: usize,
    values: GameValueFunction,
    target: Option<Value>,
}

impl Instance {
    pub fn new(n: usize, mut values: GameValueFunction, target: Option<Value>) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidInstance(format!(
                "player count {n} is not a power of two"
            )));
        }
        let rounds = rounds_for(n);
        let player_ok = |p: Player| (1..=n).contains(&p);
        let round_ok = |r: Round| (1..=rounds).contains(&r);
        let bad = |what: String| Err(Error::InvalidInstance(what));
        match &values {
            GameValueFunction::General(t) => {
                for &(i, j, r) in t.keys() {
                    if !player_ok(i) || !player_ok(j) || i == j || !round_ok(r) {
                        return bad(format!("entry (i={i}, j={j}, r={r}) out of range"));
                    }
                }
            }
            GameValueFunction::RoundOblivious(t) => {
                for &(i, j) in t.keys() {
                    if !player_ok(i) || !player_ok(j) || i == j {
                        return bad(format!("entry (i={i}, j={j}) out of range"));
                    }
                }
            }
            GameValueFunction::WinCount(t) => {
                for &(i, r) in t.keys() {
                    if !player_ok(i) || !round_ok(r) {
                        return bad(format!("entry (i={i}, r={r}) out of range"));
                    }
                }
            }
            GameValueFunction::Popularity(t) => {
                for &i in t.keys() {
                    if !player_ok(i) {
                        return bad(format!("entry (i={i}) out of range"));
                    }
                }
            }
        }
        values.drop_zeros();
        Ok(Instance { n, values, target })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rounds(&self) -> Round {
        rounds_for(self.n)
    }

    pub fn values(&self) -> &GameValueFunction {
        &self.values
    }

    pub fn kind(&self) -> ValueKind {
        self.values.kind()
    }

    pub fn target(&self) -> Option<Value> {
        self.target
    }

    pub fn with_target(mut self, target: Option<Value>) -> Self {
        self.target = target;
        self
    }

    pub fn value(&self, i: Player, j: Player, r: Round) -> Value {
        self.values.value(i, j, r)
    }
}

/// A seeding stored in position order: `order[p - 1]` is the player at seed
/// position `p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::io::SeedingDoc", into = "crate::io::SeedingDoc")]
pub struct Seeding {
    order: Vec<Player>,
}

impl Seeding {
    pub fn new(order: Vec<Player>) -> Result<Self> {
        let n = order.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidSeeding(format!(
                "length {n} is not a power of two"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &p in &order {
            if p == 0 || p > n {
                return Err(Error::InvalidSeeding(format!("player {p} is not in 1..={n}")));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidSeeding(format!("player {p} appears twice")));
            }
        }
        Ok(Seeding { order })
    }

    /// The seeding `1, 2, ..., n`.
    pub fn identity(n: usize) -> Result<Self> {
        Seeding::new((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[Player] {
        &self.order
    }

    pub fn into_order(self) -> Vec<Player> {
        self.order
    }

    /// Player at 1-based seed position `pos`.
    pub fn at(&self, pos: usize) -> Player {
        self.order[pos - 1]
    }

    /// 1-based seed position of every player, indexed by `player - 1`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (idx, &p) in self.order.iter().enumerate() {
            pos[p - 1] = idx + 1;
        }
        pos
    }

    /// Exchanges the players at two 1-based positions.
    pub fn swap_positions(&mut self, a: usize, b: usize) {
        self.order.swap(a - 1, b - 1);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Game {
    pub round: Round,
    pub winner: Player,
    pub loser: Player,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationReport {
    pub total: Value,
    /// Games in round order, and in bracket order within a round.
    pub games: Vec<Game>,
    pub winner: Player,
    /// `win_counts[i - 1]` is the number of games won by player `i`.
    pub win_counts: Vec<u32>,
}

impl EvaluationReport {
    pub fn wins(&self, player: Player) -> u32 {
        self.win_counts[player - 1]
    }

    /// Sum of game values per round, indexed by `round - 1`.
    pub fn round_totals(&self) -> Vec<Value> {
        let rounds = self.games.iter().map(|g| g.round).max().unwrap_or(0);
        let mut out = vec![0; rounds as usize];
        for g in &self.games {
            out[g.round as usize - 1] += g.value;
        }
        out
    }

    /// Opponents of `player` in the order the games were played.
    pub fn opponents(&self, player: Player) -> impl Iterator<Item = &Game> {
        self.games
            .iter()
            .filter(move |g| g.winner == player || g.loser == player)
    }
}

/// Plays out the knockout tournament induced by `seeding`.
///
/// Each game between the surviving players of two adjacent blocks is scored as
/// `v(i1, i2, r)` with `i1` coming from the lower-position block.
pub fn evaluate(instance: &Instance, seeding: &Seeding) -> Result<EvaluationReport> {
    let n = instance.n();
    if seeding.len() != n {
        return Err(Error::InvalidSeeding(format!(
            "seeding has {} players but the instance has {n}",
            seeding.len()
        )));
    }
    let mut survivors = seeding.order().to_vec();
    let mut games = Vec::with_capacity(n.saturating_sub(1));
    let mut win_counts = vec![0u32; n];
    let mut total: Value = 0;
    let mut round: Round = 0;
    while survivors.len() > 1 {
        round += 1;
        let mut next = Vec::with_capacity(survivors.len() / 2);
        for pair in survivors.chunks_exact(2) {
            let (home, away) = (pair[0], pair[1]);
            let value = instance.value(home, away, round);
            total = total
                .checked_add(value)
                .ok_or(Error::Overflow("summing game values"))?;
            let (winner, loser) = if home > away { (home, away) } else { (away, home) };
            win_counts[winner - 1] += 1;
            games.push(Game {
                round,
                winner,
                loser,
                value,
            });
            next.push(winner);
        }
        survivors = next;
    }
    Ok(EvaluationReport {
        total,
        games,
        winner: survivors[0],
        win_counts,
    })
}

fn checked_shift(v: Value, c: Value) -> Result<Value> {
    v.checked_add(c).ok_or(Error::Overflow("shifting game values"))
}

/// Makes the value function home-team oblivious by taking, for every game,
/// the better of the two argument orders. The optimum is unchanged.
///
/// Win-count and popularity functions already ignore argument order and are
/// returned as they are.
pub fn symmetrize(instance: &Instance) -> Instance {
    let values = match instance.values() {
        GameValueFunction::General(t) => {
            let mut out = BTreeMap::new();
            for &(i, j, r) in t.keys() {
                let best = instance.value(i, j, r).max(instance.value(j, i, r));
                out.insert((i, j, r), best);
                out.insert((j, i, r), best);
            }
            GameValueFunction::General(out)
        }
        GameValueFunction::RoundOblivious(t) => {
            let mut out = BTreeMap::new();
            for &(i, j) in t.keys() {
                let best = instance.value(i, j, 1).max(instance.value(j, i, 1));
                out.insert((i, j), best);
                out.insert((j, i), best);
            }
            GameValueFunction::RoundOblivious(out)
        }
        other => other.clone(),
    };
    Instance::new(instance.n(), values, instance.target()).expect("keys were already validated")
}

/// Adds `c` to the value of every possible game, including the implicit
/// zeros, and moves the target by `(n - 1) * c`.
pub fn shift(instance: &Instance, c: Value) -> Result<Instance> {
    let n = instance.n();
    let rounds = instance.rounds();
    let values = match instance.values() {
        GameValueFunction::General(_) => {
            let mut out = BTreeMap::new();
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    for r in 1..=rounds {
                        out.insert((i, j, r), checked_shift(instance.value(i, j, r), c)?);
                    }
                }
            }
            GameValueFunction::General(out)
        }
        GameValueFunction::RoundOblivious(_) => {
            let mut out = BTreeMap::new();
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    out.insert((i, j), checked_shift(instance.value(i, j, 1), c)?);
                }
            }
            GameValueFunction::RoundOblivious(out)
        }
        GameValueFunction::WinCount(t) => {
            let mut out = BTreeMap::new();
            for i in 1..=n {
                for r in 1..=rounds {
                    let v = t.get(&(i, r)).copied().unwrap_or(0);
                    out.insert((i, r), checked_shift(v, c)?);
                }
            }
            GameValueFunction::WinCount(out)
        }
        GameValueFunction::Popularity(t) => {
            let mut out = BTreeMap::new();
            for i in 1..=n {
                let v = t.get(&i).copied().unwrap_or(0);
                out.insert(i, checked_shift(v, c)?);
            }
            GameValueFunction::Popularity(out)
        }
    };
    let target = match instance.target() {
        None => None,
        Some(t) => {
            let games = Value::try_from(n - 1).map_err(|_| Error::Overflow("counting games"))?;
            let delta = games
                .checked_mul(c)
                .ok_or(Error::Overflow("shifting the target"))?;
            Some(
                t.checked_add(delta)
                    .ok_or(Error::Overflow("shifting the target"))?,
            )
        }
    };
    Instance::new(n, values, target)
}

/// Returns `v'` with `v(i, j, r) = v'(max(i, j), r)` if the instance has that
/// form, and `None` otherwise.
///
/// The check is exhaustive over all ordered pairs and rounds; it requires the
/// function to be home-team oblivious.
pub fn detect_win_count(instance: &Instance) -> Option<GameValueFunction> {
    let n = instance.n();
    let rounds = instance.rounds();
    match instance.values() {
        GameValueFunction::WinCount(_) => return Some(instance.values().clone()),
        GameValueFunction::Popularity(t) => {
            let mut out = BTreeMap::new();
            for (&i, &v) in t {
                for r in 1..=rounds {
                    out.insert((i, r), v);
                }
            }
            return Some(GameValueFunction::WinCount(out));
        }
        _ => {}
    }
    let mut out = BTreeMap::new();
    for i in 2..=n {
        for r in 1..=rounds {
            let expected = instance.value(i, 1, r);
            for j in 1..i {
                if instance.value(i, j, r) != expected || instance.value(j, i, r) != expected {
                    return None;
                }
            }
            if expected != 0 {
                out.insert((i, r), expected);
            }
        }
    }
    Some(GameValueFunction::WinCount(out))
}

/// Player evaluation function `p(i, w)`: the value collected by player `i`
/// when it wins exactly `w` games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerEval {
    rounds: Round,
    /// `table[i - 1][w]`.
    table: Vec<Vec<Value>>,
}

impl PlayerEval {
    /// Builds `p(i, w) = sum_{r <= w} v'(i, r)` from a win-count or popularity
    /// function on `n` players.
    pub fn from_win_count(n: usize, values: &GameValueFunction) -> Result<Self> {
        let rounds = rounds_for(n);
        if !matches!(
            values.kind(),
            ValueKind::WinCount | ValueKind::Popularity
        ) {
            return Err(crate::error::mismatch(
                "player evaluation",
                format!("expected a win-count function, got {}", values.kind().as_str()),
            ));
        }
        let mut table = Vec::with_capacity(n);
        for i in 1..=n {
            let mut row = Vec::with_capacity(rounds as usize + 1);
            let mut acc: Value = 0;
            row.push(0);
            for r in 1..=rounds {
                // For a win-count function the loser argument is irrelevant;
                // passing 0 makes `max(i, 0) = i`.
                acc = acc
                    .checked_add(values.value(i, 0, r))
                    .ok_or(Error::Overflow("accumulating a player evaluation"))?;
                row.push(acc);
            }
            table.push(row);
        }
        Ok(PlayerEval { rounds, table })
    }

    pub fn rounds(&self) -> Round {
        self.rounds
    }

    pub fn p(&self, player: Player, wins: u32) -> Value {
        self.table[player - 1][wins as usize]
    }

    /// `sum_i p(i, wins[i - 1])`.
    pub fn total(&self, win_counts: &[u32]) -> Result<Value> {
        win_counts
            .iter()
            .enumerate()
            .try_fold(0 as Value, |acc, (idx, &w)| {
                acc.checked_add(self.p(idx + 1, w))
                    .ok_or(Error::Overflow("summing player evaluations"))
            })
    }
}
