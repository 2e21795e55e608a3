//! Seeded random instance families.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{rounds_for, GameValueFunction, Instance, Player, Seeding, Value};
use crate::reductions::{Formula23, Literal};

/// The generator used everywhere, so a seed always means the same instance.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidInstance(format!(
            "player count {n} is not a power of two"
        )));
    }
    Ok(())
}

fn check_range(lo: Value, hi: Value) -> Result<()> {
    if lo > hi {
        return Err(Error::InvalidInstance(format!("empty value range {lo}..={hi}")));
    }
    Ok(())
}

/// Every ordered pair and round gets an independent value in `lo..=hi`.
pub fn random_general(n: usize, lo: Value, hi: Value, rng: &mut impl Rng) -> Result<Instance> {
    check_n(n)?;
    check_range(lo, hi)?;
    let mut t = BTreeMap::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for r in 1..=rounds_for(n) {
                t.insert((i, j, r), rng.random_range(lo..=hi));
            }
        }
    }
    Instance::new(n, GameValueFunction::General(t), None)
}

/// Every ordered pair gets an independent value in `lo..=hi`.
pub fn random_round_oblivious(
    n: usize,
    lo: Value,
    hi: Value,
    rng: &mut impl Rng,
) -> Result<Instance> {
    check_n(n)?;
    check_range(lo, hi)?;
    let mut t = BTreeMap::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            t.insert((i, j), rng.random_range(lo..=hi));
        }
    }
    Instance::new(n, GameValueFunction::RoundOblivious(t), None)
}

/// `v'(i, r)` independent in `lo..=hi`.
pub fn random_win_count(n: usize, lo: Value, hi: Value, rng: &mut impl Rng) -> Result<Instance> {
    check_n(n)?;
    check_range(lo, hi)?;
    let mut t = BTreeMap::new();
    for i in 1..=n {
        for r in 1..=rounds_for(n) {
            t.insert((i, r), rng.random_range(lo..=hi));
        }
    }
    Instance::new(n, GameValueFunction::WinCount(t), None)
}

fn popularity_instance(values: Vec<Value>) -> Result<Instance> {
    let n = values.len();
    let t: BTreeMap<Player, Value> = values.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect();
    Instance::new(n, GameValueFunction::Popularity(t), None)
}

/// Popularity drawn independently from `lo..=hi`.
pub fn random_popularity(n: usize, lo: Value, hi: Value, rng: &mut impl Rng) -> Result<Instance> {
    check_n(n)?;
    check_range(lo, hi)?;
    popularity_instance((0..n).map(|_| rng.random_range(lo..=hi)).collect())
}

/// Popularity drawn from a set of `distinct` values chosen in `0..=hi`.
pub fn random_popularity_levels(
    n: usize,
    distinct: usize,
    hi: Value,
    rng: &mut impl Rng,
) -> Result<Instance> {
    check_n(n)?;
    let span = usize::try_from(hi).ok().map(|h| h + 1).unwrap_or(0);
    if distinct == 0 || distinct > span {
        return Err(Error::InvalidInstance(format!(
            "cannot pick {distinct} distinct values in 0..={hi}"
        )));
    }
    let levels: Vec<Value> = sample(rng, span, distinct)
        .into_iter()
        .map(|x| x as Value)
        .collect();
    popularity_instance(
        (0..n)
            .map(|_| levels[rng.random_range(0..levels.len())])
            .collect(),
    )
}

/// Popularity nondecreasing in strength, values in `0..=hi`.
pub fn random_monotone_popularity(n: usize, hi: Value, rng: &mut impl Rng) -> Result<Instance> {
    check_n(n)?;
    check_range(0, hi)?;
    let mut v: Vec<Value> = (0..n).map(|_| rng.random_range(0..=hi)).collect();
    v.sort_unstable();
    popularity_instance(v)
}

/// A monotone popularity profile in which `k` random players get a fresh
/// random value, so at most `k` players disagree with the strength order.
pub fn planted_disagreement(
    n: usize,
    k: usize,
    hi: Value,
    rng: &mut impl Rng,
) -> Result<Instance> {
    check_n(n)?;
    check_range(0, hi)?;
    if k > n {
        return Err(Error::InvalidInstance(format!("cannot plant {k} of {n} players")));
    }
    let mut v: Vec<Value> = (0..n).map(|_| rng.random_range(0..=hi)).collect();
    v.sort_unstable();
    for idx in sample(rng, n, k) {
        v[idx] = rng.random_range(0..=hi);
    }
    popularity_instance(v)
}

/// A uniformly random seeding of `n` players.
pub fn random_seeding(n: usize, rng: &mut impl Rng) -> Result<Seeding> {
    check_n(n)?;
    let order = sample(rng, n, n).into_iter().map(|i| i + 1).collect();
    Seeding::new(order)
}

/// A random formula with two-literal clauses over `num_vars` variables in
/// which no variable appears more than three times. Clauses are added while
/// a pair of distinct variables with spare occurrences exists, up to
/// `num_clauses`.
pub fn random_formula(num_vars: usize, num_clauses: usize, rng: &mut impl Rng) -> Result<Formula23> {
    let mut left = vec![3usize; num_vars + 1];
    left[0] = 0;
    let mut clauses = Vec::with_capacity(num_clauses);
    while clauses.len() < num_clauses {
        let open: Vec<usize> = (1..=num_vars).filter(|&x| left[x] > 0).collect();
        if open.len() < 2 {
            break;
        }
        let pick = sample(rng, open.len(), 2);
        let (a, b) = (open[pick.index(0)], open[pick.index(1)]);
        left[a] -= 1;
        left[b] -= 1;
        clauses.push([
            Literal::new(a, rng.random_bool(0.5)),
            Literal::new(b, rng.random_bool(0.5)),
        ]);
    }
    Formula23::new(num_vars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::PopularityInstance;

    #[test]
    fn generators_are_deterministic() {
        let a = random_general(4, -3, 3, &mut rng(9)).unwrap();
        let b = random_general(4, -3, 3, &mut rng(9)).unwrap();
        assert_eq!(a, b);
        let c = random_general(4, -3, 3, &mut rng(10)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn family_shapes() {
        let mut r = rng(1);
        let mono = random_monotone_popularity(8, 9, &mut r).unwrap();
        assert!(PopularityInstance::from_instance(&mono).unwrap().is_monotone());
        let two = random_popularity_levels(8, 2, 9, &mut r).unwrap();
        assert!(PopularityInstance::from_instance(&two).unwrap().distinct_values().len() <= 2);
        assert!(random_popularity_levels(8, 11, 9, &mut r).is_err());
        let s = random_seeding(16, &mut r).unwrap();
        assert_eq!(s.len(), 16);
        let f = random_formula(4, 6, &mut r).unwrap();
        assert!(f.occurrences().iter().all(|&c| c <= 3));
        assert!(random_win_count(6, 0, 1, &mut r).is_err());
    }
}
