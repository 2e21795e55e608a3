//! Exact solvers cross-checked against enumeration.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use bracketopt::brackets::{compute_influential_set, nonzero_pairs};
use bracketopt::exact::{brute_force, dp_wincount, BruteForceOptions};
use bracketopt::families::{self, rng};
use bracketopt::greedy::{
    compute_disagreement_set, fpt_disagreement, greedy_agree_order, greedy_two_values,
    PopularityInstance,
};
use bracketopt::matching::{max_weight_matching, WeightedPairGraph};
use bracketopt::{evaluate, solve, Algorithm, Instance, Player, SolveResult, Value};

fn brute(instance: &Instance) -> SolveResult {
    brute_force(instance, BruteForceOptions::default()).unwrap()
}

fn assert_consistent(instance: &Instance, res: &SolveResult) {
    assert_eq!(evaluate(instance, &res.seeding).unwrap().total, res.value);
}

#[test]
fn pruned_brute_force_matches_full_enumeration() {
    let mut r = rng(11);
    let full = BruteForceOptions { cap: 8, prune: false };
    for n in [2, 4] {
        for _ in 0..30 {
            let inst = families::random_general(n, -4, 4, &mut r).unwrap();
            assert_eq!(brute(&inst), brute_force(&inst, full).unwrap());
        }
    }
    for _ in 0..2 {
        let inst = families::random_general(8, -4, 4, &mut r).unwrap();
        assert_eq!(brute(&inst), brute_force(&inst, full).unwrap());
    }
}

#[test]
fn dp_matches_brute_force() {
    let mut r = rng(12);
    for n in [1, 2, 4, 8] {
        for _ in 0..25 {
            let inst = families::random_win_count(n, -9, 9, &mut r).unwrap();
            let dp = dp_wincount(&inst).unwrap();
            assert_consistent(&inst, &dp);
            assert_eq!(dp.value, brute(&inst).value);
        }
    }
}

#[test]
fn dp_accepts_general_tables_that_only_depend_on_winner_and_round() {
    let mut r = rng(13);
    let wc = families::random_win_count(4, -5, 5, &mut r).unwrap();
    let mut t = BTreeMap::new();
    for i in 1..=4 {
        for j in (1..=4).filter(|&j| j != i) {
            for round in 1..=2 {
                t.insert((i, j, round), wc.value(i, j, round));
            }
        }
    }
    let general = Instance::new(4, bracketopt::GameValueFunction::General(t), None).unwrap();
    assert_eq!(dp_wincount(&general).unwrap().value, brute(&wc).value);
}

#[test]
fn greedy_two_values_matches_brute_force() {
    let mut r = rng(14);
    for n in [1, 2, 4, 8] {
        for distinct in [1, 2] {
            for _ in 0..20 {
                let inst = families::random_popularity_levels(n, distinct, 9, &mut r).unwrap();
                let pop = PopularityInstance::from_instance(&inst).unwrap();
                let res = greedy_two_values(&pop).unwrap();
                assert_consistent(&inst, &res);
                assert_eq!(res.value, brute(&inst).value, "{:?}", pop.values());
            }
        }
    }
}

#[test]
fn agree_order_matches_dp_and_brute_force() {
    let mut r = rng(15);
    for n in [2, 4, 8] {
        for _ in 0..20 {
            let inst = families::random_monotone_popularity(n, 9, &mut r).unwrap();
            let pop = PopularityInstance::from_instance(&inst).unwrap();
            let res = greedy_agree_order(&pop).unwrap();
            assert_consistent(&inst, &res);
            assert_eq!(res.value, dp_wincount(&inst).unwrap().value);
            assert_eq!(res.value, brute(&inst).value);
        }
    }
    for _ in 0..5 {
        let inst = families::random_monotone_popularity(64, 20, &mut r).unwrap();
        let pop = PopularityInstance::from_instance(&inst).unwrap();
        assert_eq!(greedy_agree_order(&pop).unwrap().value, dp_wincount(&inst).unwrap().value);
    }
}

/// Size of the smallest player set whose removal leaves popularity
/// nondecreasing in strength.
fn min_disagreement(v: &[Value]) -> usize {
    let n = v.len();
    (0u32..1 << n)
        .filter(|mask| {
            let kept: Vec<Value> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| v[i]).collect();
            kept.windows(2).all(|w| w[0] <= w[1])
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

#[test]
fn disagreement_set_is_a_smallest_one() {
    let mut r = rng(16);
    for _ in 0..100 {
        let k = r.random_range(0..4);
        let inst = families::planted_disagreement(8, k, 9, &mut r).unwrap();
        let pop = PopularityInstance::from_instance(&inst).unwrap();
        let set = compute_disagreement_set(&pop);
        assert_eq!(set.len(), min_disagreement(pop.values()), "{:?}", pop.values());
        let rest: Vec<Value> = (1..=8).filter(|p| !set.contains(p)).map(|p| pop.popularity(p)).collect();
        assert!(rest.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn fpt_matches_brute_force_at_eight() {
    let mut r = rng(17);
    for k in 0..=3 {
        for _ in 0..25 {
            let inst = families::planted_disagreement(8, k, 9, &mut r).unwrap();
            let pop = PopularityInstance::from_instance(&inst).unwrap();
            let res = fpt_disagreement(&pop).unwrap();
            assert_consistent(&inst, &res);
            assert_eq!(res.value, brute(&inst).value, "{:?}", pop.values());
        }
    }
}

#[test]
fn fpt_matches_dp_at_sixteen_and_thirty_two() {
    let mut r = rng(18);
    for (n, runs) in [(16, 30), (32, 5)] {
        for k in 0..=3 {
            for _ in 0..runs {
                let inst = families::planted_disagreement(n, k, 20, &mut r).unwrap();
                let pop = PopularityInstance::from_instance(&inst).unwrap();
                let res = fpt_disagreement(&pop).unwrap();
                assert_consistent(&inst, &res);
                assert_eq!(res.value, dp_wincount(&inst).unwrap().value, "{:?}", pop.values());
            }
        }
    }
}

#[test]
fn fpt_handles_arbitrary_popularity() {
    let mut r = rng(19);
    for _ in 0..20 {
        let inst = families::random_popularity(8, 0, 5, &mut r).unwrap();
        let pop = PopularityInstance::from_instance(&inst).unwrap();
        assert_eq!(fpt_disagreement(&pop).unwrap().value, brute(&inst).value);
    }
}

fn is_cover(set: &BTreeSet<Player>, edges: &BTreeSet<(Player, Player)>) -> bool {
    edges.iter().all(|(a, b)| set.contains(a) || set.contains(b))
}

#[test]
fn influential_set_is_a_minimum_vertex_cover() {
    let mut r = rng(20);
    for _ in 0..40 {
        let inst = families::random_round_oblivious(8, -1, 3, &mut r).unwrap();
        let sparse = sparsify(&inst, &mut r);
        let edges = nonzero_pairs(&sparse);
        let set = compute_influential_set(&sparse);
        assert!(is_cover(&set, &edges));
        let best = (0u32..1 << 8)
            .map(|m| (1..=8).filter(|p| m >> (p - 1) & 1 == 1).collect::<BTreeSet<_>>())
            .filter(|s| is_cover(s, &edges))
            .map(|s| s.len())
            .min()
            .unwrap();
        assert_eq!(set.len(), best);
    }
}

/// Keeps roughly a fifth of the entries so that covers stay small.
fn sparsify(inst: &Instance, r: &mut impl Rng) -> Instance {
    let bracketopt::GameValueFunction::RoundOblivious(t) = inst.values() else {
        unreachable!()
    };
    let kept = t.iter().filter(|_| r.random_bool(0.2)).map(|(&k, &v)| (k, v)).collect();
    Instance::new(inst.n(), bracketopt::GameValueFunction::RoundOblivious(kept), None).unwrap()
}

/// Heaviest matching by exhaustive recursion over the lowest free vertex.
fn best_matching(g: &WeightedPairGraph, free: &mut Vec<Player>) -> Value {
    let Some(u) = free.pop() else {
        return 0;
    };
    let mut best = best_matching(g, free);
    for idx in 0..free.len() {
        let v = free.remove(idx);
        best = best.max(g.weight(u, v) + best_matching(g, free));
        free.insert(idx, v);
    }
    free.push(u);
    best
}

#[test]
fn matching_is_maximum() {
    let mut r = rng(21);
    for n in [2, 4, 8] {
        for _ in 0..30 {
            let inst = families::random_round_oblivious(n, -3, 9, &mut r).unwrap();
            let g = WeightedPairGraph::from_instance(&inst).unwrap();
            let m = max_weight_matching(&g);
            let mut seen = BTreeSet::new();
            for &(a, b) in &m {
                assert!(a < b && seen.insert(a) && seen.insert(b));
            }
            let mut free: Vec<Player> = (1..=n).collect();
            assert_eq!(g.total(&m), best_matching(&g, &mut free));
        }
    }
}

#[test]
fn matching_is_within_log_factor() {
    let mut r = rng(22);
    for _ in 0..30 {
        let inst = families::random_round_oblivious(8, 0, 9, &mut r).unwrap();
        let approx = solve(&inst, Some(Algorithm::Matching), BruteForceOptions::default()).unwrap();
        let opt = brute(&inst).value;
        assert!(approx.value <= opt && 3 * approx.value >= opt);
    }
}

#[test]
fn auto_dispatch_is_exact_on_small_instances() {
    let mut r = rng(23);
    let opts = BruteForceOptions::default();
    let cases = [
        families::random_general(8, -3, 3, &mut r).unwrap(),
        families::random_round_oblivious(4, -3, 3, &mut r).unwrap(),
        families::random_win_count(8, -3, 3, &mut r).unwrap(),
        families::random_popularity(8, 0, 4, &mut r).unwrap(),
        families::random_popularity_levels(8, 2, 9, &mut r).unwrap(),
        families::random_monotone_popularity(8, 9, &mut r).unwrap(),
        families::random_popularity(8, -3, 3, &mut r).unwrap(),
    ];
    for inst in cases {
        let res = solve(&inst, None, opts).unwrap();
        assert!(res.algorithm.is_exact());
        assert_eq!(res.value, brute(&inst).value, "{}", res.algorithm);
    }
}
