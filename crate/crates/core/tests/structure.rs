//! Execution trees and subtournament profiles.

use std::collections::BTreeMap;

use bracketopt::brackets::{
    execution_tree_from_seeding, seeding_from_ba, BinomialArborescence, BracketBuilder,
    SubtournamentProfile,
};
use bracketopt::exact::{dp_table_bound, enumerate_profiles};
use bracketopt::families::{self, rng};
use bracketopt::{evaluate, symmetrize, Error, Player, Seeding};

fn children(pairs: &[(Player, &[Player])]) -> BTreeMap<Player, Vec<Player>> {
    pairs.iter().map(|(p, c)| (*p, c.to_vec())).collect()
}

#[test]
fn sixteen_player_example_tree() {
    let s = Seeding::new(vec![16, 15, 4, 2, 13, 9, 11, 5, 7, 6, 10, 8, 12, 14, 3, 1]).unwrap();
    let tree = execution_tree_from_seeding(&s);
    let expected = children(&[
        (16, &[14, 13, 4, 15]),
        (14, &[10, 3, 12]),
        (13, &[11, 9]),
        (10, &[7, 8]),
        (11, &[5]),
        (7, &[6]),
        (4, &[2]),
        (3, &[1]),
    ]);
    assert_eq!(tree.root(), 16);
    assert_eq!(tree.children_map(), &expected);
    assert_eq!(tree, BinomialArborescence::new(16, expected).unwrap());

    let back = seeding_from_ba(&tree).unwrap();
    assert_eq!(execution_tree_from_seeding(&back), tree);
}

#[test]
fn small_trees() {
    let two = execution_tree_from_seeding(&Seeding::new(vec![2, 1]).unwrap());
    assert_eq!((two.root(), two.children(2)), (2, &[1][..]));
    let one = BinomialArborescence::new(1, BTreeMap::new()).unwrap();
    assert_eq!(seeding_from_ba(&one).unwrap().order(), &[1]);
    let four = BinomialArborescence::new(4, children(&[(4, &[3, 1]), (3, &[2])])).unwrap();
    assert_eq!(seeding_from_ba(&four).unwrap().order(), &[4, 1, 3, 2]);
}

#[test]
fn malformed_trees_are_rejected() {
    // Wrong shape: the root's children must have subtrees of size 2 and 1.
    assert!(BinomialArborescence::new(4, children(&[(4, &[3, 2, 1])])).is_err());
    // Three vertices.
    assert!(BinomialArborescence::new(3, children(&[(3, &[2, 1])])).is_err());
    // Vertex 2 unreachable.
    assert!(BinomialArborescence::new(4, children(&[(4, &[3, 1]), (3, &[4])])).is_err());
    // Valid shape but a weaker parent cannot come from a tournament.
    let weak = BinomialArborescence::new(4, children(&[(4, &[2, 1]), (2, &[3])])).unwrap();
    assert!(!weak.is_strength_ordered());
    assert!(matches!(seeding_from_ba(&weak), Err(Error::InvalidTree(_))));
}

#[test]
fn random_seedings_round_trip() {
    let mut r = rng(30);
    for n in [1, 2, 4, 8, 16, 32] {
        for _ in 0..40 {
            let s = families::random_seeding(n, &mut r).unwrap();
            let tree = execution_tree_from_seeding(&s);
            assert_eq!(tree.root(), n);
            assert!(tree.is_strength_ordered());
            for u in 1..=n {
                let size = tree.subtree_size(u);
                assert!(size.is_power_of_two());
                assert_eq!(tree.children(u).len() as u32, size.trailing_zeros());
            }
            let back = seeding_from_ba(&tree).unwrap();
            assert_eq!(execution_tree_from_seeding(&back), tree);
            // Same games in the same rounds, possibly with the two halves of a
            // bracket swapped, so only order-blind values must agree.
            let inst = symmetrize(&families::random_general(n, -5, 5, &mut r).unwrap());
            assert_eq!(evaluate(&inst, &s).unwrap().total, evaluate(&inst, &back).unwrap().total);
        }
    }
}

#[test]
fn tree_json_round_trip() {
    let s = Seeding::new(vec![3, 8, 1, 6, 2, 7, 5, 4]).unwrap();
    let tree = execution_tree_from_seeding(&s);
    let text = serde_json::to_string(&tree).unwrap();
    let back: BinomialArborescence = serde_json::from_str(&text).unwrap();
    assert_eq!(back, tree);
}

#[test]
fn profile_transitions() {
    let p = SubtournamentProfile::from_counts(8, vec![0, 0, 1]).unwrap();
    assert_eq!(p.close(2).unwrap().counts(), &[1, 1, 0]);
    assert!(matches!(p.close(0), Err(Error::IllegalTransition(_))));
    assert!(SubtournamentProfile::from_counts(8, vec![0, 3, 0]).is_err());
    for n in [1, 2, 4, 8, 16] {
        let mut count = 0u128;
        for prof in enumerate_profiles(n) {
            prof.check_capacity(n).unwrap();
            for r in 0..prof.counts().len() {
                if let Ok(next) = prof.close(r as u32) {
                    assert_eq!(next.reopen(r as u32).as_ref(), Some(&prof));
                }
            }
            count += 1;
        }
        assert!(count <= dp_table_bound(n));
    }
}

#[test]
fn builder_produces_requested_win_counts() {
    // Strongest first, each player into the largest open subtournament.
    let mut b = BracketBuilder::new(8);
    for player in (1..=8).rev() {
        let r = b.largest_open_rounds().unwrap();
        let slot = b.first_open(r).unwrap();
        b.place(player, slot).unwrap();
        assert_eq!(b.wins(player), Some(r));
    }
    assert!(b.is_complete());
    let s = b.into_seeding().unwrap();
    let report = evaluate(&families::random_popularity(8, 0, 3, &mut rng(31)).unwrap(), &s).unwrap();
    let wins: Vec<u32> = (1..=8).map(|p| report.wins(p)).collect();
    assert_eq!(wins, vec![0, 0, 0, 0, 1, 1, 2, 3]);
}
