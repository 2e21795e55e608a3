//! Approximation for round-oblivious values through a maximum-weight
//! matching of first-round games.

use std::collections::{BTreeMap, BTreeSet};

use rustworkx_core::petgraph::graph::UnGraph;

use crate::error::{mismatch, Error, Result};
use crate::model::{GameValueFunction, Instance, Player, Seeding, Value, ValueKind};
use crate::solve::{Algorithm, SolveResult};

/// Complete graph on the players; the weight of `{i, j}` is the better of the
/// two argument orders of their game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPairGraph {
    n: usize,
    /// Keyed by `(i, j)` with `i < j`; absent pairs weigh 0.
    weights: BTreeMap<(Player, Player), Value>,
}

impl WeightedPairGraph {
    pub fn new(n: usize, weights: BTreeMap<(Player, Player), Value>) -> Self {
        let weights = weights
            .into_iter()
            .map(|((i, j), w)| ((i.min(j), i.max(j)), w))
            .filter(|&(_, w)| w != 0)
            .collect();
        WeightedPairGraph { n, weights }
    }

    /// Pair weights of a round-oblivious or popularity instance.
    pub fn from_instance(instance: &Instance) -> Result<Self> {
        let n = instance.n();
        let mut weights = BTreeMap::new();
        match instance.values() {
            GameValueFunction::RoundOblivious(t) => {
                for &(i, j) in t.keys() {
                    let w = instance.value(i, j, 1).max(instance.value(j, i, 1));
                    weights.insert((i.min(j), i.max(j)), w);
                }
            }
            GameValueFunction::Popularity(t) => {
                for &w in t.keys() {
                    for j in 1..w {
                        weights.insert((j, w), instance.value(w, j, 1));
                    }
                }
            }
            _ => {
                return Err(mismatch(
                    "matching",
                    format!(
                        "{} values are not round-oblivious",
                        instance.kind().as_str()
                    ),
                ))
            }
        }
        Ok(WeightedPairGraph::new(n, weights))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: Player, j: Player) -> Value {
        self.weights
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0)
    }

    /// Sum of the weights of `pairs`.
    pub fn total(&self, pairs: &BTreeSet<(Player, Player)>) -> Value {
        pairs.iter().map(|&(i, j)| self.weight(i, j)).sum()
    }
}

/// Exact maximum-weight matching, as pairs `(i, j)` with `i < j`. Edges of
/// nonpositive weight never help and are left out.
pub fn max_weight_matching(graph: &WeightedPairGraph) -> BTreeSet<(Player, Player)> {
    let mut g: UnGraph<(), i128> = UnGraph::with_capacity(graph.n, graph.weights.len());
    let nodes: Vec<_> = (0..graph.n).map(|_| g.add_node(())).collect();
    for (&(i, j), &w) in &graph.weights {
        if w > 0 {
            g.add_edge(nodes[i - 1], nodes[j - 1], w as i128);
        }
    }
    let matched = rustworkx_core::max_weight_matching::max_weight_matching(
        &g,
        false,
        |e| Ok::<i128, std::convert::Infallible>(*e.weight()),
        cfg!(debug_assertions),
    )
    .unwrap_or_else(|never| match never {});
    matched
        .into_iter()
        .map(|(a, b)| (a.min(b) + 1, a.max(b) + 1))
        .collect()
}

/// Seeds the pairs of a maximum-weight matching next to each other, each in
/// its better argument order, and the unmatched players after them in
/// ascending order. The reported value is that of the resulting seeding.
pub fn approx_matching(instance: &Instance) -> Result<SolveResult> {
    if !matches!(instance.kind(), ValueKind::RoundOblivious | ValueKind::Popularity) {
        return Err(mismatch(
            "matching",
            format!("{} values are not round-oblivious", instance.kind().as_str()),
        ));
    }
    let graph = WeightedPairGraph::from_instance(instance)?;
    let pairs = max_weight_matching(&graph);
    let mut order = Vec::with_capacity(instance.n());
    let mut used = vec![false; instance.n() + 1];
    for &(i, j) in &pairs {
        if instance.value(j, i, 1) > instance.value(i, j, 1) {
            order.extend([j, i]);
        } else {
            order.extend([i, j]);
        }
        used[i] = true;
        used[j] = true;
    }
    order.extend((1..=instance.n()).filter(|&p| !used[p]));
    SolveResult::from_seeding(Algorithm::Matching, instance, Seeding::new(order)?)
}

/// Round-oblivious instance on which the matching approximation is off by
/// a factor close to `log2(n)`: player `n - 1` is worth `scale` against every
/// weaker player and `scale + 1` against player `n`.
pub fn make_tight_instance(n: usize, scale: Value) -> Result<Instance> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidInstance(format!(
            "tight instance needs a power of two n >= 4, got {n}"
        )));
    }
    if scale < 2 {
        return Err(Error::InvalidInstance(format!(
            "tight instance needs scale >= 2, got {scale}"
        )));
    }
    let hub = n - 1;
    let mut t = BTreeMap::new();
    for j in 1..=n - 2 {
        t.insert((hub, j), scale);
        t.insert((j, hub), scale);
    }
    t.insert((hub, n), scale + 1);
    t.insert((n, hub), scale + 1);
    Instance::new(n, GameValueFunction::RoundOblivious(t), None)
}
