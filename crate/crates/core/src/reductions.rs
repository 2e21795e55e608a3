//! Reductions from Max (2,3)-SAT: formulas with two literals per clause and
//! at most three appearances per variable become tournament instances, and
//! assignments and seedings are translated in both directions.
//!
//! The first reduction uses round-dependent values in `{0, 1}`. The second
//! is round-oblivious with values in `{0, 1, -5}`, or `{1, 6, 7}` after
//! the optional shift by 6.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{evaluate, shift, GameValueFunction, Instance, Player, Round, Seeding, Value};

/// Most appearances a variable may have.
pub const MAX_APPEARANCES: usize = 3;

/// Shift that makes the round-oblivious reduction nonnegative.
pub const NONNEG_SHIFT: Value = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: usize, positive: bool) -> Self {
        Literal { var, positive }
    }

    pub fn is_true(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }

    fn dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

/// A formula in which every clause has exactly two literals and every
/// variable appears at most three times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula23 {
    num_vars: usize,
    clauses: Vec<[Literal; 2]>,
}

impl Formula23 {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 2]>) -> Result<Self> {
        let mut seen = vec![0usize; num_vars];
        for (ci, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var == 0 || lit.var > num_vars {
                    return Err(Error::InvalidFormula(format!(
                        "clause {} uses variable {} outside 1..={num_vars}",
                        ci + 1,
                        lit.var
                    )));
                }
                seen[lit.var - 1] += 1;
                if seen[lit.var - 1] > MAX_APPEARANCES {
                    return Err(Error::InvalidFormula(format!(
                        "variable {} appears more than {MAX_APPEARANCES} times",
                        lit.var
                    )));
                }
            }
        }
        Ok(Formula23 { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 2]] {
        &self.clauses
    }

    /// Number of appearances of every variable, indexed by `var - 1`.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_vars];
        for lit in self.clauses.iter().flatten() {
            out[lit.var - 1] += 1;
        }
        out
    }

    /// For every clause literal, which appearance of its variable it is
    /// (1-based, counting clauses in order and literals left to right).
    pub fn appearances(&self) -> Vec<[usize; 2]> {
        let mut count = vec![0; self.num_vars];
        self.clauses
            .iter()
            .map(|clause| {
                clause.map(|lit| {
                    count[lit.var - 1] += 1;
                    count[lit.var - 1]
                })
            })
            .collect()
    }

    pub fn satisfied(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.is_true(assignment)))
            .count()
    }

    /// Best assignment by enumeration, smallest in binary order on ties
    /// (variable 1 is the lowest bit). Meant for small formulas.
    pub fn max_sat(&self) -> (usize, Vec<bool>) {
        assert!(self.num_vars < 32, "enumeration over {} variables", self.num_vars);
        let mut best = (0, vec![false; self.num_vars]);
        for bits in 0u32..(1 << self.num_vars) {
            let a = assignment_from_bits(self.num_vars, bits);
            let s = self.satisfied(&a);
            if s > best.0 {
                best = (s, a);
            }
        }
        best
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for [a, b] in &self.clauses {
            writeln!(s, "{} {} 0", a.dimacs(), b.dimacs()).expect("writing to a string");
        }
        s
    }
}

/// Variable `i` is true iff bit `i - 1` of `bits` is set.
pub fn assignment_from_bits(num_vars: usize, bits: u32) -> Vec<bool> {
    (0..num_vars).map(|i| bits >> i & 1 == 1).collect()
}

/// Reads a DIMACS CNF formula and checks the two-literal, three-appearance
/// promise.
pub fn parse_dimacs(text: &str) -> Result<Formula23> {
    let bad = |m: String| Error::InvalidFormula(m);
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(bad(format!("line {}: second header", idx + 1)));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| {
                bad(format!("line {}: malformed header `{line}`", idx + 1))
            })?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(bad(format!("line {}: clause before the header", idx + 1)));
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| bad(format!("line {}: `{tok}` is not a literal", idx + 1)))?;
            if lit == 0 {
                let [a, b] = current[..] else {
                    return Err(bad(format!(
                        "clause {} has {} literals, expected 2",
                        clauses.len() + 1,
                        current.len()
                    )));
                };
                clauses.push([a, b].map(|l: i64| Literal::new(l.unsigned_abs() as usize, l > 0)));
                current.clear();
            } else {
                if lit.unsigned_abs() as usize > num_vars {
                    return Err(bad(format!(
                        "line {}: variable {} exceeds the declared {num_vars}",
                        idx + 1,
                        lit.abs()
                    )));
                }
                current.push(lit);
            }
        }
    }
    let Some((num_vars, num_clauses)) = header else {
        return Err(bad("missing `p cnf` header".into()));
    };
    if !current.is_empty() {
        return Err(bad("last clause is not terminated by 0".into()));
    }
    if clauses.len() != num_clauses {
        return Err(bad(format!(
            "header declares {num_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    Formula23::new(num_vars, clauses)
}

/// A formula with every variable appearing at least twice, plus what is
/// needed to map its assignments back to the original formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub formula: Formula23,
    /// Original index of every remaining variable, indexed by `new - 1`.
    pub var_map: Vec<usize>,
    /// Values chosen for the removed variables, by original index.
    pub fixed: BTreeMap<usize, bool>,
    /// Removed clauses, all satisfied by `fixed`.
    pub sat_offset: usize,
    original_vars: usize,
}

impl Preprocessed {
    /// Assignment of the original formula from one of the reduced formula.
    pub fn full_assignment(&self, reduced: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.original_vars];
        for (&var, &val) in &self.fixed {
            out[var - 1] = val;
        }
        for (idx, &orig) in self.var_map.iter().enumerate() {
            out[orig - 1] = reduced[idx];
        }
        out
    }
}

/// Drops variables without appearances and fixes every variable with a
/// single appearance so that its clause holds, removing that clause. Repeats
/// until no such variable is left, then renumbers the remaining variables.
pub fn preprocess(formula: &Formula23) -> Preprocessed {
    let n = formula.num_vars();
    let mut alive = vec![true; formula.clauses().len()];
    let mut fixed = BTreeMap::new();
    let mut sat_offset = 0;
    loop {
        let mut count = vec![0usize; n + 1];
        for (clause, _) in formula.clauses().iter().zip(&alive).filter(|(_, &a)| a) {
            for lit in clause {
                count[lit.var] += 1;
            }
        }
        let single = (1..=n).find(|&x| count[x] == 1 && !fixed.contains_key(&x));
        let Some(x) = single else {
            for x in (1..=n).filter(|&x| count[x] == 0) {
                fixed.entry(x).or_insert(false);
            }
            break;
        };
        let ci = (0..alive.len())
            .find(|&ci| alive[ci] && formula.clauses()[ci].iter().any(|l| l.var == x))
            .expect("the appearance belongs to a live clause");
        let lit = formula.clauses()[ci]
            .iter()
            .find(|l| l.var == x)
            .expect("clause contains the variable");
        fixed.insert(x, lit.positive);
        alive[ci] = false;
        sat_offset += 1;
    }
    let var_map: Vec<usize> = (1..=n).filter(|x| !fixed.contains_key(x)).collect();
    let mut renumber = vec![0; n + 1];
    for (idx, &orig) in var_map.iter().enumerate() {
        renumber[orig] = idx + 1;
    }
    let clauses = formula
        .clauses()
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(c, _)| c.map(|l| Literal::new(renumber[l.var], l.positive)))
        .collect();
    Preprocessed {
        formula: Formula23::new(var_map.len(), clauses).expect("renumbering keeps the promise"),
        var_map,
        fixed,
        sat_offset,
        original_vars: n,
    }
}

/// Which of the two reductions a layout belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Values in `{0, 1}` that depend on the round.
    RoundDependent,
    /// Round-oblivious values in `{0, 1, -5}` with special players.
    RoundOblivious,
}

/// What a player stands for in a reduction instance. Variables and clauses
/// are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Role {
    Variable { var: usize },
    TrueLiteral { var: usize },
    FalseLiteral { var: usize },
    Clause { index: usize },
    /// The strongest of the three special players of a variable.
    SpecialHat { var: usize },
    Special { var: usize },
    /// The weakest of the three special players of a variable.
    SpecialTilde { var: usize },
    Dummy { index: usize },
}

/// Player ids of a reduction instance, by role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    construction: Construction,
    formula: Formula23,
    nprime: u32,
    p: usize,
    roles: Vec<Role>,
    variable: Vec<Player>,
    true_literal: Vec<Player>,
    false_literal: Vec<Player>,
    clause: Vec<Player>,
    /// `[hat, plain, tilde]` per variable; empty for the round-dependent reduction.
    special: Vec<[Player; 3]>,
    dummies: Vec<Player>,
}

#[derive(Serialize)]
struct LayoutDoc<'a> {
    construction: Construction,
    nprime: u32,
    p: usize,
    roles: BTreeMap<Player, Role>,
    formula: &'a Formula23,
}

impl ReductionLayout {
    fn new(construction: Construction, formula: &Formula23) -> Self {
        let n = formula.num_vars();
        let m = formula.clauses().len();
        let mut nprime = 0;
        while (1usize << nprime) < 16 * n {
            nprime += 1;
        }
        let total = 1usize << nprime;
        let p = total - 16 * n;
        // Players listed strongest first; the strongest gets id `total`.
        let mut chain: Vec<Role> = Vec::with_capacity(total);
        if construction == Construction::RoundOblivious {
            for var in 1..=n {
                chain.extend([Role::SpecialHat { var }, Role::Special { var }, Role::SpecialTilde { var }]);
            }
        }
        for var in 1..=n {
            chain.extend([Role::Variable { var }, Role::TrueLiteral { var }, Role::FalseLiteral { var }]);
        }
        chain.extend((1..=m).map(|index| Role::Clause { index }));
        let dummies = total - chain.len();
        chain.extend((1..=dummies).map(|index| Role::Dummy { index }));
        debug_assert_eq!(
            dummies,
            match construction {
                Construction::RoundDependent => 13 * n + p - m,
                Construction::RoundOblivious => 10 * n + p - m,
            }
        );

        let mut layout = ReductionLayout {
            construction,
            formula: formula.clone(),
            nprime,
            p,
            roles: vec![Role::Dummy { index: 0 }; total],
            variable: vec![0; n],
            true_literal: vec![0; n],
            false_literal: vec![0; n],
            clause: vec![0; m],
            special: if construction == Construction::RoundOblivious {
                vec![[0; 3]; n]
            } else {
                Vec::new()
            },
            dummies: Vec::with_capacity(dummies),
        };
        for (rank, role) in chain.into_iter().enumerate() {
            let id = total - rank;
            layout.roles[id - 1] = role;
            match role {
                Role::Variable { var } => layout.variable[var - 1] = id,
                Role::TrueLiteral { var } => layout.true_literal[var - 1] = id,
                Role::FalseLiteral { var } => layout.false_literal[var - 1] = id,
                Role::Clause { index } => layout.clause[index - 1] = id,
                Role::SpecialHat { var } => layout.special[var - 1][0] = id,
                Role::Special { var } => layout.special[var - 1][1] = id,
                Role::SpecialTilde { var } => layout.special[var - 1][2] = id,
                Role::Dummy { .. } => layout.dummies.push(id),
            }
        }
        layout.dummies.reverse();
        layout
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn formula(&self) -> &Formula23 {
        &self.formula
    }

    pub fn players(&self) -> usize {
        self.roles.len()
    }

    pub fn nprime(&self) -> u32 {
        self.nprime
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn role(&self, player: Player) -> Role {
        self.roles[player - 1]
    }

    pub fn variable(&self, var: usize) -> Player {
        self.variable[var - 1]
    }

    pub fn literal(&self, lit: Literal) -> Player {
        if lit.positive {
            self.true_literal[lit.var - 1]
        } else {
            self.false_literal[lit.var - 1]
        }
    }

    pub fn clause(&self, index: usize) -> Player {
        self.clause[index - 1]
    }

    /// `[hat, plain, tilde]` special players of `var` (round-oblivious reduction only).
    pub fn special(&self, var: usize) -> [Player; 3] {
        self.special[var - 1]
    }

    /// Dummy players, ascending.
    pub fn dummies(&self) -> &[Player] {
        &self.dummies
    }

    pub fn to_json(&self) -> String {
        let doc = LayoutDoc {
            construction: self.construction,
            nprime: self.nprime,
            p: self.p,
            roles: self
                .roles
                .iter()
                .enumerate()
                .map(|(i, &r)| (i + 1, r))
                .collect(),
            formula: &self.formula,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("layouts always serialize");
        s.push('\n');
        s
    }

    /// Round of the game that only scores when a clause meets a literal
    /// player: the appearance index in the round-dependent reduction, any
    /// round in the round-oblivious one.
    fn clause_game_round(&self, clause_idx: usize, slot: usize) -> Option<Round> {
        match self.construction {
            Construction::RoundDependent => Some(self.formula.appearances()[clause_idx][slot] as Round),
            Construction::RoundOblivious => None,
        }
    }

    /// True iff `game` is a scoring game between a clause and one of its
    /// literal players.
    fn is_clause_game(&self, winner: Player, loser: Player, round: Round) -> bool {
        let Role::Clause { index } = self.role(loser) else {
            return false;
        };
        self.formula.clauses()[index - 1]
            .iter()
            .enumerate()
            .any(|(slot, &lit)| {
                self.literal(lit) == winner
                    && self
                        .clause_game_round(index - 1, slot)
                        .is_none_or(|r| r == round)
            })
    }
}

fn set_both<K: Ord>(t: &mut BTreeMap<K, Value>, a: K, b: K, v: Value) {
    t.insert(a, v);
    t.insert(b, v);
}

/// Round-dependent `{0, 1}` instance: a variable player scores against its
/// literal players in round one, and a clause scores against the literal
/// player it contains in the round given by that literal's appearance index.
pub fn construct1(formula: &Formula23) -> (Instance, ReductionLayout) {
    let layout = ReductionLayout::new(Construction::RoundDependent, formula);
    let mut t = BTreeMap::new();
    for var in 1..=formula.num_vars() {
        let x = layout.variable(var);
        for lit in [layout.true_literal[var - 1], layout.false_literal[var - 1]] {
            set_both(&mut t, (x, lit, 1), (lit, x, 1), 1);
        }
    }
    for (ci, (clause, app)) in formula.clauses().iter().zip(formula.appearances()).enumerate() {
        let c = layout.clause(ci + 1);
        for (lit, j) in clause.iter().zip(app) {
            let l = layout.literal(*lit);
            set_both(&mut t, (c, l, j as Round), (l, c, j as Round), 1);
        }
    }
    let instance = Instance::new(layout.players(), GameValueFunction::General(t), None)
        .expect("construction keys are in range");
    (instance, layout)
}

/// Round-oblivious `{0, 1, -5}` instance with three special players per
/// variable. With `nonneg` every value is shifted by 6.
pub fn construct2(formula: &Formula23, nonneg: bool) -> Result<(Instance, ReductionLayout)> {
    let layout = ReductionLayout::new(Construction::RoundOblivious, formula);
    let total = layout.players();
    let mut t = BTreeMap::new();
    for var in 1..=formula.num_vars() {
        let x = layout.variable(var);
        let [hat, d, tilde] = layout.special(var);
        for y in (1..=total).filter(|&y| y != d && y != hat && y != tilde && y != x) {
            set_both(&mut t, (d, y), (y, d), -5);
        }
        let (xt, xf) = (layout.true_literal[var - 1], layout.false_literal[var - 1]);
        for y in (1..=total).filter(|&y| y != x && y != xt && y != xf && y != d) {
            set_both(&mut t, (x, y), (y, x), -5);
        }
        set_both(&mut t, (x, xt), (xt, x), 1);
        set_both(&mut t, (x, xf), (xf, x), 1);
        for y in [hat, tilde, x] {
            t.remove(&(d, y));
            t.remove(&(y, d));
        }
    }
    for (ci, clause) in formula.clauses().iter().enumerate() {
        let c = layout.clause(ci + 1);
        for lit in clause {
            let l = layout.literal(*lit);
            set_both(&mut t, (c, l), (l, c), 1);
        }
    }
    let instance = Instance::new(total, GameValueFunction::RoundOblivious(t), None)
        .expect("construction keys are in range");
    let instance = if nonneg {
        shift(&instance, NONNEG_SHIFT)?
    } else {
        instance
    };
    Ok((instance, layout))
}

/// Target of the decision version: a seeding worth `sat + n` exists when an
/// assignment satisfies `sat` clauses. Accounts for the nonnegative shift.
pub fn decision_target(layout: &ReductionLayout, sat: usize, nonneg: bool) -> Value {
    let base = (sat + layout.formula.num_vars()) as Value;
    if nonneg {
        base + (layout.players() as Value - 1) * NONNEG_SHIFT
    } else {
        base
    }
}

/// Seeding worth at least `sat(assignment) + n`.
///
/// Each variable player meets its falsified literal player in round one and
/// the other literal player leads a block of eight positions in which every
/// clause it satisfies waits at the position where they meet in the round of
/// the appearance. Every other player fills the free positions in ascending
/// order, dummies first into the literal blocks so that no clause there is
/// knocked out early.
pub fn seeding_from_assignment(layout: &ReductionLayout, assignment: &[bool]) -> Result<Seeding> {
    let f = &layout.formula;
    let n = f.num_vars();
    if assignment.len() != n {
        return Err(Error::InvalidFormula(format!(
            "assignment has {} values for {n} variables",
            assignment.len()
        )));
    }
    let total = layout.players();
    let mut at: Vec<Player> = vec![0; total + 1];
    let mut put = |pos: usize, player: Player| {
        assert_eq!(at[pos], 0, "position {pos} is assigned twice");
        at[pos] = player;
    };
    for var in 1..=n {
        let (truth, falsified) = if assignment[var - 1] {
            (layout.true_literal[var - 1], layout.false_literal[var - 1])
        } else {
            (layout.false_literal[var - 1], layout.true_literal[var - 1])
        };
        match layout.construction {
            Construction::RoundDependent => {
                put(2 * var - 1, layout.variable(var));
                put(2 * var, falsified);
            }
            Construction::RoundOblivious => {
                let [hat, d, tilde] = layout.special(var);
                put(8 * var - 7, layout.variable(var));
                put(8 * var - 6, falsified);
                put(8 * var - 5, d);
                put(8 * var - 4, tilde);
                put(8 * var - 3, hat);
            }
        }
        put(8 * n + 8 * var - 7, truth);
    }
    let mut placed = vec![false; total + 1];
    for (ci, (clause, app)) in f.clauses().iter().zip(f.appearances()).enumerate() {
        if let Some(slot) = clause.iter().position(|l| l.is_true(assignment)) {
            let var = clause[slot].var;
            put(8 * n + 8 * var + (1 << (app[slot] - 1)) - 7, layout.clause(ci + 1));
            placed[layout.clause(ci + 1)] = true;
        }
    }
    for p in at.iter().copied().filter(|&p| p != 0) {
        placed[p] = true;
    }
    let mut filler = layout
        .dummies
        .iter()
        .copied()
        .chain(1..=total)
        .filter(|&p| !std::mem::replace(&mut placed[p], true));
    let free_blocks = (8 * n + 1..=16 * n).chain((1..=8 * n).chain(16 * n + 1..=total));
    for pos in free_blocks {
        if at[pos] == 0 {
            at[pos] = filler.next().expect("as many players as positions");
        }
    }
    drop(filler);
    Seeding::new(at.split_off(1))
}

/// Per-variable summary of the games of the literal players.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct LiteralGames {
    true_clause: usize,
    false_clause: usize,
    true_meets_var: bool,
    false_meets_var: bool,
}

impl LiteralGames {
    fn cheats_on_clauses(&self) -> bool {
        self.true_clause > 0 && self.false_clause > 0
    }
}

fn literal_games(layout: &ReductionLayout, instance: &Instance, seeding: &Seeding) -> Result<(Value, Vec<LiteralGames>)> {
    let report = evaluate(instance, seeding)?;
    let mut out = vec![LiteralGames::default(); layout.formula.num_vars()];
    for g in &report.games {
        match layout.role(g.winner) {
            Role::TrueLiteral { var } if layout.is_clause_game(g.winner, g.loser, g.round) => {
                out[var - 1].true_clause += 1
            }
            Role::FalseLiteral { var } if layout.is_clause_game(g.winner, g.loser, g.round) => {
                out[var - 1].false_clause += 1
            }
            Role::Variable { var } => match layout.role(g.loser) {
                Role::TrueLiteral { var: v } if v == var => out[var - 1].true_meets_var = true,
                Role::FalseLiteral { var: v } if v == var => out[var - 1].false_meets_var = true,
                _ => {}
            },
            _ => {}
        }
    }
    Ok((report.total, out))
}

/// Result of reading an assignment off a seeding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub assignment: Vec<bool>,
    /// The seeding after all accepted repairs.
    pub seeding: Seeding,
    /// Tournament value before the first repair and after each accepted one.
    pub values: Vec<Value>,
}

/// An assignment satisfying at least `value(seeding) - n` clauses, where the
/// value is taken under the unshifted values.
///
/// In the round-dependent reduction, variables whose two literal players both score
/// against clauses are repaired first: the variable player's first-round
/// opponent swaps places with the literal player that scores only once, so
/// that the variable player scores against it instead. A repair is kept only
/// if the value does not drop and fewer variables cheat afterwards. Then a
/// variable is true iff its true literal player scores against a clause,
/// taking the side with more such games for variables still cheating.
///
/// In the round-oblivious reduction, a variable is true iff its true literal player
/// scores against a clause when the variable does not cheat, false when
/// both literal players score against clauses, neither meets the variable
/// player and the true one scores once, and true otherwise.
pub fn extract_assignment(
    instance: &Instance,
    layout: &ReductionLayout,
    seeding: &Seeding,
) -> Result<Extraction> {
    if instance.n() != layout.players() || seeding.len() != layout.players() {
        return Err(Error::InvalidSeeding(format!(
            "reduction has {} players, instance {} and seeding {}",
            layout.players(),
            instance.n(),
            seeding.len()
        )));
    }
    match layout.construction {
        Construction::RoundDependent => extract_round_dependent(instance, layout, seeding.clone()),
        Construction::RoundOblivious => extract_round_oblivious(instance, layout, seeding.clone()),
    }
}

fn extract_round_dependent(instance: &Instance, layout: &ReductionLayout, mut seeding: Seeding) -> Result<Extraction> {
    let n = layout.formula.num_vars();
    let (mut value, mut games) = literal_games(layout, instance, &seeding)?;
    let mut values = vec![value];
    let mut given_up = vec![false; n];
    let cheaters = |g: &[LiteralGames]| g.iter().filter(|x| x.cheats_on_clauses()).count();
    while let Some(var) = (1..=n).find(|&v| games[v - 1].cheats_on_clauses() && !given_up[v - 1]) {
        let g = games[var - 1];
        let minority = if g.true_clause <= g.false_clause {
            layout.true_literal[var - 1]
        } else {
            layout.false_literal[var - 1]
        };
        let pos = seeding.positions();
        let x_pos = pos[layout.variable(var) - 1];
        let opponent_pos = if x_pos % 2 == 1 { x_pos + 1 } else { x_pos - 1 };
        let mut candidate = seeding.clone();
        candidate.swap_positions(opponent_pos, pos[minority - 1]);
        let (new_value, new_games) = literal_games(layout, instance, &candidate)?;
        if new_value >= value && cheaters(&new_games) < cheaters(&games) {
            seeding = candidate;
            value = new_value;
            games = new_games;
            values.push(value);
        } else {
            given_up[var - 1] = true;
        }
    }
    let assignment = games
        .iter()
        .map(|g| {
            if g.cheats_on_clauses() {
                g.true_clause >= g.false_clause
            } else {
                g.true_clause > 0
            }
        })
        .collect();
    Ok(Extraction {
        assignment,
        seeding,
        values,
    })
}

fn extract_round_oblivious(instance: &Instance, layout: &ReductionLayout, seeding: Seeding) -> Result<Extraction> {
    let (value, games) = literal_games(layout, instance, &seeding)?;
    let assignment = games
        .iter()
        .map(|g| {
            let cheats = g.cheats_on_clauses() || (g.true_meets_var && g.false_meets_var);
            if !cheats {
                g.true_clause > 0
            } else if g.cheats_on_clauses() && !g.true_meets_var && !g.false_meets_var {
                g.true_clause > 1
            } else {
                true
            }
        })
        .collect();
    Ok(Extraction {
        assignment,
        seeding,
        values: vec![value],
    })
}
