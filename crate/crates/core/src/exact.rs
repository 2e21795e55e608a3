//! Exact solvers: exhaustive search and the subtournament-profile dynamic
//! program for win-count functions.

use std::collections::HashMap;

use itertools::Itertools;

use crate::brackets::{BracketBuilder, SubtournamentProfile};
use crate::error::{mismatch, Error, Result};
use crate::model::{
    detect_win_count, evaluate, rounds_for, symmetrize, Instance, Player, PlayerEval, Round,
    Seeding, Value,
};
use crate::solve::{Algorithm, SolveResult};

/// Default largest bracket that [`brute_force`] accepts.
pub const DEFAULT_BRUTE_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceOptions {
    pub cap: usize,
    /// Enumerate only one seeding per class of sibling swaps. The value
    /// function is symmetrized first so the classes have a common value.
    pub prune: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            cap: DEFAULT_BRUTE_CAP,
            prune: true,
        }
    }
}

/// Maximizes the tournament value over every seeding.
///
/// Both modes return the lexicographically smallest optimal seeding.
pub fn brute_force(instance: &Instance, opts: BruteForceOptions) -> Result<SolveResult> {
    let n = instance.n();
    if n > opts.cap {
        return Err(Error::BruteForceCap { n, cap: opts.cap });
    }
    let best = if opts.prune {
        brute_pruned(instance)?
    } else {
        brute_all(instance)?
    };
    SolveResult::from_seeding(Algorithm::Brute, instance, best)
}

fn brute_all(instance: &Instance) -> Result<Seeding> {
    let n = instance.n();
    let mut best: Option<(Value, Vec<Player>)> = None;
    // Permutations come out in lexicographic order, so keeping the first
    // maximum keeps the smallest optimal seeding.
    for order in (1..=n).permutations(n) {
        let total = evaluate(instance, &Seeding::new(order.clone())?)?.total;
        if best.as_ref().is_none_or(|(v, _)| total > *v) {
            best = Some((total, order));
        }
    }
    let (_, order) = best.expect("there is at least one seeding");
    Seeding::new(order)
}

/// Canonical arrangements of `players` (sorted ascending): at every split the
/// half holding the weakest player comes first.
fn arrangements(players: &[Player]) -> Vec<Vec<Player>> {
    if players.len() == 1 {
        return vec![players.to_vec()];
    }
    let half = players.len() / 2;
    let first = players[0];
    let mut out = Vec::new();
    for chosen in players[1..].iter().copied().combinations(half - 1) {
        let mut left = vec![first];
        left.extend_from_slice(&chosen);
        let right: Vec<Player> = players[1..]
            .iter()
            .copied()
            .filter(|p| !chosen.contains(p))
            .collect();
        let rights = arrangements(&right);
        for l in arrangements(&left) {
            for r in &rights {
                let mut both = l.clone();
                both.extend_from_slice(r);
                out.push(both);
            }
        }
    }
    out
}

/// Orders the two halves of every block of `block` so that each game is
/// scored with the better argument order of `instance`; among equally good
/// orders the lexicographically smaller one is used. Returns the winner.
fn orient(instance: &Instance, block: &mut [Player]) -> Player {
    if block.len() == 1 {
        return block[0];
    }
    let round = rounds_for(block.len());
    let half = block.len() / 2;
    let (left, right) = block.split_at_mut(half);
    let a = orient(instance, left);
    let b = orient(instance, right);
    let keep = instance.value(a, b, round);
    let swapped = instance.value(b, a, round);
    if swapped > keep || (swapped == keep && block[half] < block[0]) {
        block.rotate_left(half);
    }
    a.max(b)
}

fn brute_pruned(instance: &Instance) -> Result<Seeding> {
    let sym = symmetrize(instance);
    let all: Vec<Player> = (1..=instance.n()).collect();
    let mut best: Option<(Value, Vec<Player>)> = None;
    for mut order in arrangements(&all) {
        let total = evaluate(&sym, &Seeding::new(order.clone())?)?.total;
        if best.as_ref().is_some_and(|(v, _)| total < *v) {
            continue;
        }
        orient(instance, &mut order);
        let better = match &best {
            None => true,
            Some((v, o)) => total > *v || (total == *v && order < *o),
        };
        if better {
            best = Some((total, order));
        }
    }
    let (_, order) = best.expect("there is at least one arrangement");
    Seeding::new(order)
}

/// Every profile within the capacity bounds of an `n`-player bracket.
pub fn enumerate_profiles(n: usize) -> impl Iterator<Item = SubtournamentProfile> {
    let rounds = rounds_for(n);
    let ranges: Vec<Vec<u32>> = (0..rounds)
        .map(|r| (0..=SubtournamentProfile::capacity(n, r)).collect())
        .collect();
    let product: Box<dyn Iterator<Item = Vec<u32>>> = if ranges.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(ranges.into_iter().multi_cartesian_product())
    };
    product.map(move |counts| {
        SubtournamentProfile::from_counts(n, counts).expect("counts are within capacity")
    })
}

/// Upper bound on the number of stored dynamic-programming entries.
pub fn dp_table_bound(n: usize) -> u128 {
    (0..rounds_for(n)).fold(n as u128, |acc, r| {
        acc * (SubtournamentProfile::capacity(n, r) as u128 + 1)
    })
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    value: Value,
    /// Rounds of the subtournament whose winner was seeded last.
    closed: Round,
}

/// Exact optimum for win-count functions.
///
/// Players are seeded strongest first; the state after seeding the `ell`
/// strongest players is the profile of still open subtournaments, and a
/// player's contribution only depends on the round count of the
/// subtournament it wins.
pub fn dp_wincount(instance: &Instance) -> Result<SolveResult> {
    let n = instance.n();
    let wc = detect_win_count(instance)
        .ok_or_else(|| mismatch("dp", "the game values are not win-count oriented"))?;
    let p = PlayerEval::from_win_count(n, &wc)?;
    if n == 1 {
        return SolveResult::from_seeding(Algorithm::Dp, instance, Seeding::identity(1)?);
    }
    let rounds = rounds_for(n);

    let mut layers: Vec<HashMap<SubtournamentProfile, Cell>> = Vec::with_capacity(n);
    layers.push(HashMap::from([(
        SubtournamentProfile::after_champion(n),
        Cell {
            value: p.p(n, rounds),
            closed: rounds,
        },
    )]));
    let mut stored = 1u128;
    for ell in 2..=n {
        let player = n - ell + 1;
        let mut next: HashMap<SubtournamentProfile, Cell> = HashMap::new();
        for (profile, cell) in &layers[ell - 2] {
            for r in 0..rounds {
                if profile.count(r) == 0 {
                    continue;
                }
                let to = profile.close(r)?;
                let value = cell
                    .value
                    .checked_add(p.p(player, r))
                    .ok_or(Error::Overflow("accumulating the dynamic program"))?;
                let entry = next.entry(to).or_insert(Cell { value, closed: r });
                if value > entry.value || (value == entry.value && r < entry.closed) {
                    *entry = Cell { value, closed: r };
                }
            }
        }
        stored += next.len() as u128;
        layers.push(next);
    }
    assert!(
        stored <= dp_table_bound(n),
        "dynamic program stored {stored} entries, above the bound {}",
        dp_table_bound(n)
    );

    // Walk the argmax choices back from the all-closed profile.
    let mut wins = vec![0 as Round; n];
    let mut profile = SubtournamentProfile::zero(n);
    let best = layers[n - 1][&profile].value;
    for ell in (2..=n).rev() {
        let cell = layers[ell - 1][&profile];
        wins[n - ell] = cell.closed;
        profile = profile
            .reopen(cell.closed)
            .expect("argmax transitions are reversible");
    }
    wins[n - 1] = rounds;

    let mut builder = BracketBuilder::new(n);
    for player in (1..=n).rev() {
        let r = wins[player - 1];
        let slot = builder
            .first_open(r)
            .expect("the profile walk keeps a slot of every assigned size");
        builder.place(player, slot)?;
    }
    let result = SolveResult::from_seeding(Algorithm::Dp, instance, builder.into_seeding()?)?;
    debug_assert_eq!(result.value, best);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::model::GameValueFunction;

    fn popularity(vals: &[Value]) -> Instance {
        let t = vals.iter().enumerate().map(|(i, &v)| (i + 1, v)).collect();
        Instance::new(vals.len(), GameValueFunction::Popularity(t), None).unwrap()
    }

    #[test]
    fn arrangement_counts() {
        assert_eq!(arrangements(&[1, 2]).len(), 1);
        assert_eq!(arrangements(&[1, 2, 3, 4]).len(), 3);
        assert_eq!(arrangements(&(1..=8).collect::<Vec<_>>()).len(), 315);
    }

    #[test]
    fn brute_two_players_uses_better_order() {
        let t = BTreeMap::from([((1, 2, 1), 4), ((2, 1, 1), 1)]);
        let inst = Instance::new(2, GameValueFunction::General(t), None).unwrap();
        for prune in [false, true] {
            let res = brute_force(&inst, BruteForceOptions { cap: 8, prune }).unwrap();
            assert_eq!(res.value, 4);
            assert_eq!(res.seeding.order(), &[1, 2]);
        }
    }

    #[test]
    fn brute_popularity_four() {
        let inst = popularity(&[1, 2, 3, 4]);
        for prune in [false, true] {
            let res = brute_force(&inst, BruteForceOptions { cap: 8, prune }).unwrap();
            assert_eq!(res.value, 11);
            assert_eq!(res.seeding.order(), &[1, 3, 2, 4]);
        }
    }

    #[test]
    fn brute_respects_cap() {
        let inst = popularity(&[0; 16]);
        assert!(matches!(
            brute_force(&inst, BruteForceOptions::default()),
            Err(Error::BruteForceCap { n: 16, cap: 8 })
        ));
    }

    #[test]
    fn profile_counts() {
        assert_eq!(enumerate_profiles(1).count(), 1);
        assert_eq!(enumerate_profiles(2).count(), 2);
        assert_eq!(enumerate_profiles(4).count(), 6);
        assert_eq!(enumerate_profiles(16).count(), 270);
    }

    #[test]
    fn dp_small_cases() {
        let two = popularity(&[0, 3]);
        assert_eq!(dp_wincount(&two).unwrap().value, 3);
        let four = popularity(&[1, 2, 3, 4]);
        let res = dp_wincount(&four).unwrap();
        assert_eq!(res.value, 11);
        assert_eq!(evaluate(&four, &res.seeding).unwrap().total, 11);
        let one = popularity(&[5]);
        assert_eq!(dp_wincount(&one).unwrap().value, 0);
    }

    #[test]
    fn dp_rejects_other_kinds() {
        let t = BTreeMap::from([((1, 2), 1)]);
        let inst = Instance::new(4, GameValueFunction::RoundOblivious(t), None).unwrap();
        assert!(matches!(dp_wincount(&inst), Err(Error::KindMismatch { .. })));
    }
}
