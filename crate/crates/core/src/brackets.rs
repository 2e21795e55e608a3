//! Bracket structure as trees and as counts of open subtournaments. Also
//! home to the influential-set search.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{rounds_for, GameValueFunction, Instance, Player, Round, Seeding};

/// Rooted tree over the players in which each player's children are the
/// players it knocked out, ordered by subtree size (largest first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeDoc", into = "TreeDoc")]
pub struct BinomialArborescence {
    root: Player,
    /// Only players with at least one child are stored.
    children: BTreeMap<Player, Vec<Player>>,
    size: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeDoc {
    pub root: Player,
    #[serde(default)]
    pub children: BTreeMap<Player, Vec<Player>>,
}

impl TryFrom<TreeDoc> for BinomialArborescence {
    type Error = Error;

    fn try_from(doc: TreeDoc) -> Result<Self> {
        BinomialArborescence::new(doc.root, doc.children)
    }
}

impl From<BinomialArborescence> for TreeDoc {
    fn from(ba: BinomialArborescence) -> Self {
        TreeDoc {
            root: ba.root,
            children: ba.children,
        }
    }
}

impl BinomialArborescence {
    /// Checks that `children` describes a tree on `1..=size` rooted at `root`
    /// whose every node with `k` children has child subtrees of sizes
    /// `2^(k-1), ..., 2, 1` in that order.
    pub fn new(root: Player, mut children: BTreeMap<Player, Vec<Player>>) -> Result<Self> {
        children.retain(|_, c| !c.is_empty());
        let bad = |m: String| Err(Error::InvalidTree(m));
        let edges: usize = children.values().map(Vec::len).sum();
        let size = edges + 1;
        if !size.is_power_of_two() {
            return bad(format!("{size} vertices is not a power of two"));
        }
        let in_range = |p: Player| (1..=size).contains(&p);
        if !in_range(root) {
            return bad(format!("root {root} is not in 1..={size}"));
        }
        let mut seen = vec![false; size + 1];
        seen[root] = true;
        for (&parent, kids) in &children {
            if !in_range(parent) {
                return bad(format!("vertex {parent} is not in 1..={size}"));
            }
            for &k in kids {
                if !in_range(k) {
                    return bad(format!("vertex {k} is not in 1..={size}"));
                }
                if std::mem::replace(&mut seen[k], true) {
                    return bad(format!("vertex {k} has two parents or is the root"));
                }
            }
        }
        let ba = BinomialArborescence {
            root,
            children,
            size,
        };
        // Every vertex has at most one parent and the edge count is size - 1,
        // so the structure is a tree iff everything is reachable from the root.
        let mut reached = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            reached += 1;
            if reached > size {
                return bad("cycle detected".into());
            }
            stack.extend_from_slice(ba.children(u));
        }
        if reached != size {
            return bad("not every vertex is reachable from the root".into());
        }
        ba.check_shape(root)?;
        Ok(ba)
    }

    fn check_shape(&self, u: Player) -> Result<usize> {
        let kids = self.children(u);
        let k = kids.len();
        for (idx, &c) in kids.iter().enumerate() {
            let got = self.check_shape(c)?;
            let want = 1usize << (k - 1 - idx);
            if got != want {
                return Err(Error::InvalidTree(format!(
                    "child {c} of {u} has subtree size {got}, expected {want}"
                )));
            }
        }
        Ok(1 << k)
    }

    pub fn root(&self) -> Player {
        self.root
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn children(&self, u: Player) -> &[Player] {
        self.children.get(&u).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn children_map(&self) -> &BTreeMap<Player, Vec<Player>> {
        &self.children
    }

    /// Size of the subtree rooted at `u`; equals `2^|children(u)|`.
    pub fn subtree_size(&self, u: Player) -> usize {
        1 << self.children(u).len()
    }

    /// True iff every parent is stronger than each of its children, i.e. the
    /// tree is a possible execution tree.
    pub fn is_strength_ordered(&self) -> bool {
        self.children
            .iter()
            .all(|(&p, kids)| kids.iter().all(|&c| c < p))
    }

    /// Depth of every vertex (root has depth 0), indexed by `player - 1`.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.size];
        let mut stack = vec![(self.root, 0)];
        while let Some((u, d)) = stack.pop() {
            depth[u - 1] = d;
            for &c in self.children(u) {
                stack.push((c, d + 1));
            }
        }
        depth
    }
}

/// Execution tree of a seeding: an edge from every game winner to the loser.
pub fn execution_tree_from_seeding(seeding: &Seeding) -> BinomialArborescence {
    let mut children: BTreeMap<Player, Vec<Player>> = BTreeMap::new();
    let mut survivors = seeding.order().to_vec();
    while survivors.len() > 1 {
        survivors = survivors
            .chunks_exact(2)
            .map(|pair| {
                let (w, l) = if pair[0] > pair[1] {
                    (pair[0], pair[1])
                } else {
                    (pair[1], pair[0])
                };
                children.entry(w).or_default().push(l);
                w
            })
            .collect();
    }
    // Games were recorded in round order, i.e. by increasing loser subtree.
    for kids in children.values_mut() {
        kids.reverse();
    }
    BinomialArborescence {
        root: survivors[0],
        children,
        size: seeding.len(),
    }
}

/// A seeding whose execution tree is `ba`.
///
/// Each player sits at the first position of its block, followed by the blocks
/// of its children from the smallest subtree to the largest, so the child it
/// beat in round `r` occupies the `2^(r-1)` positions after the first
/// `2^(r-1)`.
pub fn seeding_from_ba(ba: &BinomialArborescence) -> Result<Seeding> {
    if !ba.is_strength_ordered() {
        return Err(Error::InvalidTree(
            "some child is stronger than its parent".into(),
        ));
    }
    let mut order = vec![0; ba.len()];
    let mut stack = vec![(ba.root(), 0usize)];
    while let Some((u, start)) = stack.pop() {
        order[start] = u;
        for (r, &c) in ba.children(u).iter().rev().enumerate() {
            stack.push((c, start + (1 << r)));
        }
    }
    Seeding::new(order)
}

/// Counts of open subtournaments by number of rounds: `counts[r]` open
/// subtournaments with `r` rounds, for `r` in `0..log2(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtournamentProfile {
    counts: Vec<u32>,
}

impl SubtournamentProfile {
    pub fn zero(n: usize) -> Self {
        SubtournamentProfile {
            counts: vec![0; rounds_for(n) as usize],
        }
    }

    /// Profile right after the champion is seeded: one open subtournament of
    /// every size below the full bracket.
    pub fn after_champion(n: usize) -> Self {
        SubtournamentProfile {
            counts: vec![1; rounds_for(n) as usize],
        }
    }

    pub fn from_counts(n: usize, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != rounds_for(n) as usize {
            return Err(Error::IllegalTransition(format!(
                "profile length {} does not match n = {n}",
                counts.len()
            )));
        }
        let p = SubtournamentProfile { counts };
        p.check_capacity(n)?;
        Ok(p)
    }

    /// Largest possible number of open subtournaments with `r` rounds.
    pub fn capacity(n: usize, r: Round) -> u32 {
        (n >> (r + 1)) as u32
    }

    pub fn check_capacity(&self, n: usize) -> Result<()> {
        for (r, &c) in self.counts.iter().enumerate() {
            let cap = Self::capacity(n, r as Round);
            if c > cap {
                return Err(Error::IllegalTransition(format!(
                    "{c} open subtournaments with {r} rounds exceed the capacity {cap}"
                )));
            }
        }
        Ok(())
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, r: Round) -> u32 {
        self.counts[r as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Seeds the winner of one open subtournament with `r` rounds. That closes
    /// it and opens one subtournament for each of `0..r`.
    pub fn close(&self, r: Round) -> Result<Self> {
        let r = r as usize;
        match self.counts.get(r) {
            Some(&c) if c >= 1 => {}
            _ => {
                return Err(Error::IllegalTransition(format!(
                    "no open subtournament with {r} rounds"
                )))
            }
        }
        let mut counts = self.counts.clone();
        counts[r] -= 1;
        for c in &mut counts[..r] {
            *c += 1;
        }
        Ok(SubtournamentProfile { counts })
    }

    /// Inverse of [`close`](Self::close): the profile before seeding a winner
    /// into an `r`-round subtournament, if one exists.
    pub fn reopen(&self, r: Round) -> Option<Self> {
        let r = r as usize;
        if r >= self.counts.len() || self.counts[..r].contains(&0) {
            return None;
        }
        let mut counts = self.counts.clone();
        for c in &mut counts[..r] {
            *c -= 1;
        }
        counts[r] += 1;
        Some(SubtournamentProfile { counts })
    }
}

/// A bracket block whose winner has not been chosen yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenSubtournament {
    pub rounds: Round,
    /// The player whose seeding opened the block; its winner must be weaker.
    /// `None` for the full bracket.
    pub restrictor: Option<Player>,
}

pub type SlotId = usize;

/// Incrementally assigns players as winners of open subtournaments and turns
/// the result into an execution tree.
#[derive(Debug, Clone)]
pub struct BracketBuilder {
    n: usize,
    slots: Vec<OpenSubtournament>,
    /// Per round count: open slots keyed by (restrictor, id), `None` restrictor
    /// mapped to `usize::MAX`.
    by_restrictor: Vec<BTreeSet<(Player, SlotId)>>,
    by_id: Vec<BTreeSet<SlotId>>,
    parent: Vec<Option<Player>>,
    wins: Vec<Option<Round>>,
    placed: usize,
}

fn restrictor_key(r: Option<Player>) -> Player {
    r.unwrap_or(usize::MAX)
}

impl BracketBuilder {
    pub fn new(n: usize) -> Self {
        let levels = rounds_for(n) as usize + 1;
        let mut b = BracketBuilder {
            n,
            slots: Vec::with_capacity(n),
            by_restrictor: vec![BTreeSet::new(); levels],
            by_id: vec![BTreeSet::new(); levels],
            parent: vec![None; n],
            wins: vec![None; n],
            placed: 0,
        };
        b.open(rounds_for(n), None);
        b
    }

    fn open(&mut self, rounds: Round, restrictor: Option<Player>) {
        let id = self.slots.len();
        self.slots.push(OpenSubtournament { rounds, restrictor });
        self.by_restrictor[rounds as usize].insert((restrictor_key(restrictor), id));
        self.by_id[rounds as usize].insert(id);
    }

    pub fn slot(&self, id: SlotId) -> OpenSubtournament {
        self.slots[id]
    }

    pub fn open_count(&self, rounds: Round) -> usize {
        self.by_id
            .get(rounds as usize)
            .map(BTreeSet::len)
            .unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.placed == self.n
    }

    pub fn largest_open_rounds(&self) -> Option<Round> {
        (0..self.by_id.len())
            .rev()
            .find(|&r| !self.by_id[r].is_empty())
            .map(|r| r as Round)
    }

    pub fn smallest_open_rounds(&self) -> Option<Round> {
        (0..self.by_id.len())
            .find(|&r| !self.by_id[r].is_empty())
            .map(|r| r as Round)
    }

    /// Lowest-id open slot with `rounds` rounds.
    pub fn first_open(&self, rounds: Round) -> Option<SlotId> {
        self.by_id.get(rounds as usize)?.iter().next().copied()
    }

    /// Open slot with `rounds` rounds whose restrictor is the weakest player
    /// stronger than `player` (ties by lowest id).
    pub fn best_fit(&self, rounds: Round, player: Player) -> Option<SlotId> {
        self.by_restrictor
            .get(rounds as usize)?
            .range((player + 1, 0)..)
            .next()
            .map(|&(_, id)| id)
    }

    /// Best-fit slot among those with the largest round count that `player`
    /// may legally win.
    pub fn largest_fit(&self, player: Player) -> Option<SlotId> {
        (0..self.by_restrictor.len())
            .rev()
            .find_map(|r| self.best_fit(r as Round, player))
    }

    /// Seeds `player` as the winner of slot `id`: closes it and opens one
    /// slot restricted by `player` for every round count below its own.
    pub fn place(&mut self, player: Player, id: SlotId) -> Result<()> {
        let err = |reason: String| Err(Error::Placement { player, reason });
        if player == 0 || player > self.n {
            return err(format!("not a player of a {}-player bracket", self.n));
        }
        if self.wins[player - 1].is_some() {
            return err("already placed".into());
        }
        let Some(&slot) = self.slots.get(id) else {
            return err(format!("unknown slot {id}"));
        };
        let level = slot.rounds as usize;
        let key = (restrictor_key(slot.restrictor), id);
        if !self.by_restrictor[level].contains(&key) {
            return err(format!("slot {id} is not open"));
        }
        if let Some(r) = slot.restrictor {
            if r <= player {
                return err(format!("slot {id} is restricted by weaker player {r}"));
            }
        }
        self.by_restrictor[level].remove(&key);
        self.by_id[level].remove(&id);
        self.parent[player - 1] = slot.restrictor;
        self.wins[player - 1] = Some(slot.rounds);
        self.placed += 1;
        for r in 0..slot.rounds {
            self.open(r, Some(player));
        }
        Ok(())
    }

    /// Win count assigned to `player`, if placed.
    pub fn wins(&self, player: Player) -> Option<Round> {
        self.wins[player - 1]
    }

    pub fn into_tree(self) -> Result<BinomialArborescence> {
        if !self.is_complete() {
            return Err(Error::InvalidTree(format!(
                "only {} of {} players were placed",
                self.placed, self.n
            )));
        }
        let mut root = None;
        let mut children: BTreeMap<Player, Vec<Player>> = BTreeMap::new();
        for (idx, parent) in self.parent.iter().enumerate() {
            match parent {
                None => root = Some(idx + 1),
                Some(p) => children.entry(*p).or_default().push(idx + 1),
            }
        }
        for kids in children.values_mut() {
            kids.sort_by_key(|&c| std::cmp::Reverse(self.wins[c - 1]));
        }
        BinomialArborescence::new(root.expect("the full bracket is always filled"), children)
    }

    pub fn into_seeding(self) -> Result<Seeding> {
        seeding_from_ba(&self.into_tree()?)
    }
}

/// Undirected pairs `{i, j}` (with `i < j`) such that some game between `i`
/// and `j` has a nonzero value.
pub fn nonzero_pairs(instance: &Instance) -> BTreeSet<(Player, Player)> {
    let n = instance.n();
    let ordered = |a: Player, b: Player| (a.min(b), a.max(b));
    let mut out = BTreeSet::new();
    match instance.values() {
        GameValueFunction::General(t) => {
            out.extend(t.keys().map(|&(i, j, _)| ordered(i, j)));
        }
        GameValueFunction::RoundOblivious(t) => {
            out.extend(t.keys().map(|&(i, j)| ordered(i, j)));
        }
        GameValueFunction::WinCount(t) => {
            let winners: BTreeSet<Player> = t.keys().map(|&(i, _)| i).collect();
            for w in winners {
                out.extend((1..w).map(|j| (j, w)));
            }
        }
        GameValueFunction::Popularity(t) => {
            for &w in t.keys() {
                out.extend((1..w).map(|j| (j, w)));
            }
        }
    }
    debug_assert!(out.iter().all(|&(a, b)| a < b && b <= n));
    out
}

/// A minimum set of players touching every pair that has a nonzero game
/// value, i.e. a minimum vertex cover of the nonzero-value graph.
///
/// Iterative deepening over the cover size with two-way branching on the
/// first uncovered edge, stronger endpoint first, so weak players only join
/// the cover when they have to.
pub fn compute_influential_set(instance: &Instance) -> BTreeSet<Player> {
    let edges: Vec<(Player, Player)> = nonzero_pairs(instance).into_iter().collect();
    let mut chosen = vec![false; instance.n() + 1];
    let mut budget = 0;
    loop {
        if cover(&edges, &mut chosen, budget) {
            return (1..=instance.n()).filter(|&p| chosen[p]).collect();
        }
        budget += 1;
    }
}

fn cover(edges: &[(Player, Player)], chosen: &mut [bool], budget: usize) -> bool {
    let mut uncovered = edges.iter().filter(|(a, b)| !chosen[*a] && !chosen[*b]);
    let Some(&(a, b)) = uncovered.next() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    // A vertex covers at most n - 1 edges, which bounds what `budget` more
    // vertices can cover.
    let remaining = 1 + uncovered.count();
    if remaining > budget * (chosen.len() - 2) {
        return false;
    }
    for v in [b, a] {
        chosen[v] = true;
        if cover(edges, chosen, budget - 1) {
            return true;
        }
        chosen[v] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GameValueFunction, Instance};

    fn tree(root: Player, edges: &[(Player, &[Player])]) -> BinomialArborescence {
        let children = edges.iter().map(|(p, c)| (*p, c.to_vec())).collect();
        BinomialArborescence::new(root, children).unwrap()
    }

    #[test]
    fn two_player_tree() {
        let t = execution_tree_from_seeding(&Seeding::new(vec![2, 1]).unwrap());
        assert_eq!(t.root(), 2);
        assert_eq!(t.children(2), &[1]);
    }

    #[test]
    fn canonical_seeding_of_small_tree() {
        let t = tree(4, &[(4, &[3, 1]), (3, &[2])]);
        let s = seeding_from_ba(&t).unwrap();
        assert_eq!(s.order(), &[4, 1, 3, 2]);
        assert_eq!(execution_tree_from_seeding(&s), t);

        let single = tree(1, &[]);
        assert_eq!(seeding_from_ba(&single).unwrap().order(), &[1]);
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let children = |e: &[(Player, &[Player])]| -> BTreeMap<Player, Vec<Player>> {
            e.iter().map(|(p, c)| (*p, c.to_vec())).collect()
        };
        // Children listed smallest first.
        assert!(BinomialArborescence::new(4, children(&[(4, &[1, 3]), (3, &[2])])).is_err());
        // A path is not binomial.
        assert!(BinomialArborescence::new(4, children(&[(4, &[3]), (3, &[2]), (2, &[1])])).is_err());
        // Three vertices.
        assert!(BinomialArborescence::new(3, children(&[(3, &[2, 1])])).is_err());
        // Vertex with two parents.
        assert!(BinomialArborescence::new(4, children(&[(4, &[3, 1]), (3, &[1])])).is_err());
        // Valid shape but a child stronger than its parent.
        let weak_root = tree(1, &[(1, &[3, 2]), (3, &[4])]);
        assert!(seeding_from_ba(&weak_root).is_err());
    }

    #[test]
    fn tree_json_round_trip() {
        let t = tree(4, &[(4, &[3, 1]), (3, &[2])]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"root":4,"children":{"3":[2],"4":[3,1]}}"#);
        let back: BinomialArborescence = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn profile_transitions() {
        let p = SubtournamentProfile::from_counts(8, vec![0, 0, 1]).unwrap();
        let q = p.close(2).unwrap();
        assert_eq!(q.counts(), &[1, 1, 0]);
        let z = q.close(0).unwrap();
        assert_eq!(z.counts(), &[0, 1, 0]);
        assert!(matches!(z.close(0), Err(Error::IllegalTransition(_))));
        assert!(matches!(z.close(5), Err(Error::IllegalTransition(_))));
        assert_eq!(q.reopen(2).unwrap(), p);
        assert!(SubtournamentProfile::from_counts(8, vec![5, 0, 0]).is_err());
    }

    #[test]
    fn full_pass_closes_everything() {
        let n = 8;
        let mut p = SubtournamentProfile::after_champion(n);
        let mut closes = 1;
        // Always close the largest open subtournament.
        while !p.is_zero() {
            let r = (0..3).rev().find(|&r| p.count(r) > 0).unwrap();
            p = p.close(r).unwrap();
            p.check_capacity(n).unwrap();
            closes += 1;
        }
        assert_eq!(closes, n);
    }

    #[test]
    fn builder_respects_restrictors() {
        let mut b = BracketBuilder::new(4);
        let root = b.first_open(2).unwrap();
        b.place(3, root).unwrap();
        // Player 4 cannot win a block opened by player 3.
        let s = b.best_fit(1, 2).unwrap();
        assert_eq!(b.slot(s).restrictor, Some(3));
        assert!(b.place(4, s).is_err());
        assert!(b.best_fit(1, 4).is_none());
        assert!(b.largest_fit(4).is_none());
        b.place(2, s).unwrap();
        assert!(b.place(2, b.first_open(0).unwrap()).is_err());
    }

    #[test]
    fn builder_produces_seeding() {
        let mut b = BracketBuilder::new(4);
        b.place(4, b.first_open(2).unwrap()).unwrap();
        b.place(3, b.first_open(1).unwrap()).unwrap();
        let s0 = b.best_fit(0, 2).unwrap();
        b.place(2, s0).unwrap();
        b.place(1, b.first_open(0).unwrap()).unwrap();
        let s = b.into_seeding().unwrap();
        let t = execution_tree_from_seeding(&s);
        assert_eq!(t.children(4), &[3, 1]);
        assert_eq!(t.children(3), &[2]);
    }

    #[test]
    fn influential_set_small_cases() {
        let zero = Instance::new(8, GameValueFunction::RoundOblivious(BTreeMap::new()), None).unwrap();
        assert!(compute_influential_set(&zero).is_empty());

        let mut t = BTreeMap::new();
        for j in 1..=6 {
            t.insert((7, j), 10);
            t.insert((j, 7), 10);
        }
        t.insert((7, 8), 11);
        t.insert((8, 7), 11);
        let hub = Instance::new(8, GameValueFunction::RoundOblivious(t), None).unwrap();
        assert_eq!(compute_influential_set(&hub), BTreeSet::from([7]));

        // Triangle plus pendant edge: {1,3} and {2,3} both work, the
        // stronger pair wins.
        let t = BTreeMap::from([((1, 2), 1), ((2, 3), 1), ((1, 3), 1), ((3, 4), 1)]);
        let tri = Instance::new(4, GameValueFunction::RoundOblivious(t), None).unwrap();
        assert_eq!(compute_influential_set(&tri), BTreeSet::from([2, 3]));
    }
}
