use std::collections::BTreeMap;

use proptest::prelude::*;

use bracketopt::brackets::{execution_tree_from_seeding, seeding_from_ba, SubtournamentProfile};
use bracketopt::exact::{brute_force, dp_wincount, enumerate_profiles, BruteForceOptions};
use bracketopt::families::{self, rng};
use bracketopt::greedy::{greedy_two_values, PopularityInstance};
use bracketopt::io::{instance_from_json, instance_to_json, seeding_from_json, seeding_to_json};
use bracketopt::matching::approx_matching;
use bracketopt::{
    evaluate, shift, solve, symmetrize, GameValueFunction, Instance, Seeding, Value,
};

fn opt(instance: &Instance) -> Value {
    brute_force(instance, BruteForceOptions::default()).unwrap().value
}

fn size() -> impl Strategy<Value = usize> {
    (0u32..=3).prop_map(|k| 1 << k)
}

fn seeding(n: usize) -> impl Strategy<Value = Seeding> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Seeding::new(v).unwrap())
}

fn general(n: usize) -> impl Strategy<Value = Instance> {
    any::<u64>().prop_map(move |s| families::random_general(n, -6, 6, &mut rng(s)).unwrap())
}

fn popularity(n: usize, max: Value) -> impl Strategy<Value = PopularityInstance> {
    prop::collection::vec(0..=max, n).prop_map(|v| PopularityInstance::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tournament_has_one_game_per_eliminated_player(
        (inst, s) in size().prop_flat_map(|n| (general(n), seeding(n)))
    ) {
        let n = inst.n();
        let rep = evaluate(&inst, &s).unwrap();
        prop_assert_eq!(rep.games.len(), n - 1);
        prop_assert_eq!(rep.winner, n);
        prop_assert_eq!(rep.total, rep.games.iter().map(|g| g.value).sum::<Value>());
        prop_assert_eq!(rep.round_totals().iter().sum::<Value>(), rep.total);
        for g in &rep.games {
            prop_assert!(g.winner > g.loser);
            prop_assert_eq!(rep.games.iter().filter(|h| h.round == g.round).count(), n >> g.round);
        }
        for p in 1..=n {
            prop_assert_eq!(rep.wins(p) as usize, rep.games.iter().filter(|g| g.winner == p).count());
        }
    }

    #[test]
    fn shift_moves_every_seeding_by_the_game_count(
        (inst, s) in size().prop_flat_map(|n| (general(n), seeding(n))),
        c in -7i64..=7,
    ) {
        let shifted = shift(&inst, c).unwrap();
        let games = inst.n() as Value - 1;
        prop_assert_eq!(
            evaluate(&shifted, &s).unwrap().total,
            evaluate(&inst, &s).unwrap().total + games * c
        );
    }

    #[test]
    fn symmetrize_keeps_the_optimum(inst in size().prop_flat_map(general)) {
        let sym = symmetrize(&inst);
        prop_assert_eq!(opt(&sym), opt(&inst));
        // Symmetric values do not care about the order of the two halves.
        let n = inst.n();
        let rev = Seeding::new((1..=n).rev().collect()).unwrap();
        prop_assert_eq!(
            evaluate(&sym, &rev).unwrap().total,
            evaluate(&sym, &Seeding::identity(n).unwrap()).unwrap().total
        );
    }

    #[test]
    fn dp_agrees_with_brute_force(seed in any::<u64>(), n in size()) {
        let inst = families::random_win_count(n, -9, 9, &mut rng(seed)).unwrap();
        let dp = dp_wincount(&inst).unwrap();
        prop_assert_eq!(dp.value, opt(&inst));
        prop_assert_eq!(evaluate(&inst, &dp.seeding).unwrap().total, dp.value);
    }

    #[test]
    fn greedy_two_values_is_exact(
        (bits, a, b) in (prop::collection::vec(any::<bool>(), 8), 0i64..20, 0i64..20)
    ) {
        let v: Vec<Value> = bits.iter().map(|&hi| if hi { a.max(b) } else { a.min(b) }).collect();
        let pop = PopularityInstance::new(v).unwrap();
        prop_assert_eq!(greedy_two_values(&pop).unwrap().value, opt(&pop.to_instance()));
    }

    #[test]
    fn auto_is_exact_on_popularity(pop in popularity(8, 6)) {
        let inst = pop.to_instance();
        let res = solve(&inst, None, BruteForceOptions::default()).unwrap();
        prop_assert_eq!(res.value, opt(&inst));
    }

    #[test]
    fn matching_is_a_log_approximation(seed in any::<u64>()) {
        let inst = families::random_round_oblivious(8, 0, 12, &mut rng(seed)).unwrap();
        let approx = approx_matching(&inst).unwrap().value;
        let best = opt(&inst);
        prop_assert!(approx <= best && 3 * approx >= best);
    }

    #[test]
    fn execution_trees_round_trip(
        s in (0u32..=5).prop_flat_map(|k| seeding(1 << k))
    ) {
        let tree = execution_tree_from_seeding(&s);
        let back = seeding_from_ba(&tree).unwrap();
        prop_assert_eq!(execution_tree_from_seeding(&back), tree);
    }

    #[test]
    fn json_round_trips(inst in size().prop_flat_map(general), s in seeding(8)) {
        prop_assert_eq!(instance_from_json(&instance_to_json(&inst)).unwrap(), inst);
        prop_assert_eq!(seeding_from_json(&seeding_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn popularity_tables_match_their_general_expansion(pop in popularity(4, 9), s in seeding(4)) {
        let inst = pop.to_instance();
        let mut t = BTreeMap::new();
        for i in 1..=4 {
            for j in (1..=4).filter(|&j| j != i) {
                for r in 1..=2 {
                    t.insert((i, j, r), pop.popularity(i.max(j)));
                }
            }
        }
        let general = Instance::new(4, GameValueFunction::General(t), None).unwrap();
        prop_assert_eq!(evaluate(&general, &s).unwrap().total, evaluate(&inst, &s).unwrap().total);
    }
}

#[test]
fn close_and_reopen_are_inverse() {
    for n in [2, 4, 8, 16, 32] {
        for p in enumerate_profiles(n) {
            for r in 0..p.counts().len() as u32 {
                match p.close(r) {
                    Ok(q) => assert_eq!(q.reopen(r), Some(p.clone())),
                    Err(_) => assert_eq!(p.count(r), 0),
                }
            }
        }
    }
    assert!(SubtournamentProfile::zero(8).is_zero());
}
