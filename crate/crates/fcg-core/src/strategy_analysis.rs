//! Memoryless strategies, Moore machines, and determinacy classification.
//!
//! All questions here are answered by exhaustive enumeration, which is a
//! complete decision procedure at the arena sizes the suites use; a
//! feasibility guard reports when a question is too large to enumerate
//! rather than silently sampling. Enumeration order is canonical (vertices
//! in canonical order, successors in canonical order), so the first witness
//! found is deterministic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::arena::{Arena, Player, Vertex};
use crate::cycle_properties::CycleProperty;
use crate::fcg_solver::{check_kind, solve_fcg_all, CycleEval, FcgSolution, KindMismatchError};

/// How many strategy or machine candidates an exhaustive search may visit.
pub const MEMORYLESS_ENUMERATION_BOUND: u128 = 1_000_000;
pub const MOORE_ENUMERATION_BOUND: u128 = 10_000_000;

/// A positional strategy: one chosen successor per owned vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorylessStrategy {
    player: Player,
    choice: BTreeMap<Vertex, Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyError {
    /// No choice at one of the player's vertices.
    NotTotal(String),
    /// A choice that is not an edge.
    NonEdge(String, String),
    /// A choice at a vertex the player does not own.
    NotOwned(String),
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::NotTotal(v) => write!(f, "strategy misses a choice at {v}"),
            StrategyError::NonEdge(s, d) => write!(f, "strategy chooses non-edge {s} -> {d}"),
            StrategyError::NotOwned(v) => {
                write!(f, "strategy chooses at {v}, which the player does not own")
            }
        }
    }
}

impl MemorylessStrategy {
    /// Validates totality on the player's vertices and that every choice is
    /// an edge.
    pub fn new(
        arena: &Arena,
        player: Player,
        choice: BTreeMap<Vertex, Vertex>,
    ) -> Result<MemorylessStrategy, StrategyError> {
        for (&v, &w) in &choice {
            if arena.owner(v) != player {
                return Err(StrategyError::NotOwned(arena.name(v).to_string()));
            }
            if !arena.has_edge(v, w) {
                return Err(StrategyError::NonEdge(
                    arena.name(v).to_string(),
                    arena.name(w).to_string(),
                ));
            }
        }
        for v in arena.player_vertices(player) {
            if !choice.contains_key(&v) {
                return Err(StrategyError::NotTotal(arena.name(v).to_string()));
            }
        }
        Ok(MemorylessStrategy { player, choice })
    }

    /// Builds without validation; intended for tests and for choices known
    /// to come from an arena's own successor lists.
    pub fn from_pairs(player: Player, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        MemorylessStrategy {
            player,
            choice: pairs.into_iter().collect(),
        }
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn choice(&self, v: Vertex) -> Option<Vertex> {
        self.choice.get(&v).copied()
    }

    pub fn choices(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.choice.iter().map(|(&v, &w)| (v, w))
    }
}

/// Errors of the analysis operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    Kind(KindMismatchError),
    Strategy(StrategyError),
    /// The exhaustive search would visit more candidates than the guard
    /// allows.
    EnumerationBound {
        candidates: u128,
        bound: u128,
    },
    /// Memory measurement requires a start the player wins.
    StartNotWinning(String),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::Kind(e) => write!(f, "{e}"),
            AnalysisError::Strategy(e) => write!(f, "{e}"),
            AnalysisError::EnumerationBound { candidates, bound } => {
                write!(
                    f,
                    "enumeration of {candidates} candidates exceeds bound {bound}"
                )
            }
            AnalysisError::StartNotWinning(v) => {
                write!(f, "{v} is not in the player's winning region")
            }
        }
    }
}

impl From<KindMismatchError> for AnalysisError {
    fn from(e: KindMismatchError) -> Self {
        AnalysisError::Kind(e)
    }
}

impl From<StrategyError> for AnalysisError {
    fn from(e: StrategyError) -> Self {
        AnalysisError::Strategy(e)
    }
}

/// Successor choices as an odometer over the player's vertices; the
/// internal representation for enumeration.
struct DenseStrategy {
    /// For each owned vertex, the index into its successor list.
    digits: Vec<usize>,
    owned: Vec<Vertex>,
}

impl DenseStrategy {
    fn first(arena: &Arena, player: Player) -> DenseStrategy {
        let owned: Vec<Vertex> = arena.player_vertices(player).collect();
        DenseStrategy {
            digits: alloc::vec![0; owned.len()],
            owned,
        }
    }

    fn choice(&self, arena: &Arena, v: Vertex) -> Option<Vertex> {
        let slot = self.owned.iter().position(|&u| u == v)?;
        Some(arena.successors_labeled(v)[self.digits[slot]].0)
    }

    /// Odometer step in canonical order; the last owned vertex varies
    /// fastest. Returns false when the enumeration is exhausted.
    fn advance(&mut self, arena: &Arena) -> bool {
        for slot in (0..self.owned.len()).rev() {
            self.digits[slot] += 1;
            if self.digits[slot] < arena.out_degree(self.owned[slot]) {
                return true;
            }
            self.digits[slot] = 0;
        }
        false
    }

    fn to_strategy(&self, arena: &Arena, player: Player) -> MemorylessStrategy {
        MemorylessStrategy::from_pairs(
            player,
            self.owned
                .iter()
                .map(|&v| (v, self.choice(arena, v).expect("owned vertex"))),
        )
    }
}

fn strategy_space(arena: &Arena, player: Player) -> u128 {
    arena
        .player_vertices(player)
        .map(|v| arena.out_degree(v) as u128)
        .fold(1u128, |acc, d| acc.saturating_mul(d))
}

/// Does every play from `start`, with the player's moves fixed by `choose`
/// and the opponent free, produce a first cycle won by `player`?
fn plays_all_favor(
    arena: &Arena,
    eval: &mut CycleEval,
    player: Player,
    choose: &mut dyn FnMut(&[Vertex], Vertex) -> Vertex,
    start: Vertex,
) -> bool {
    fn go(
        arena: &Arena,
        eval: &mut CycleEval,
        player: Player,
        choose: &mut dyn FnMut(&[Vertex], Vertex) -> Vertex,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
    ) -> bool {
        let cur = *path.last().expect("path nonempty");
        let step = |succ: Vertex,
                    path: &mut Vec<Vertex>,
                    on_path: &mut [bool],
                    eval: &mut CycleEval,
                    choose: &mut dyn FnMut(&[Vertex], Vertex) -> Vertex|
         -> bool {
            if on_path[succ.index()] {
                let repeat_at = path.iter().position(|&v| v == succ).expect("on path");
                eval.cycle_winner(path, repeat_at) == player
            } else {
                path.push(succ);
                on_path[succ.index()] = true;
                let ok = go(arena, eval, player, choose, path, on_path);
                path.pop();
                on_path[succ.index()] = false;
                ok
            }
        };
        if arena.owner(cur) == player {
            let succ = choose(path, cur);
            step(succ, path, on_path, eval, choose)
        } else {
            for i in 0..arena.out_degree(cur) {
                let succ = arena.successors_labeled(cur)[i].0;
                if !step(succ, path, on_path, eval, choose) {
                    return false;
                }
            }
            true
        }
    }
    let mut on_path = alloc::vec![false; arena.vertex_count()];
    on_path[start.index()] = true;
    let mut path = alloc::vec![start];
    go(arena, eval, player, choose, &mut path, &mut on_path)
}

fn dense_wins(
    arena: &Arena,
    eval: &mut CycleEval,
    player: Player,
    dense: &DenseStrategy,
    start: Vertex,
) -> bool {
    let mut choose = |_: &[Vertex], cur: Vertex| dense.choice(arena, cur).expect("total strategy");
    plays_all_favor(arena, eval, player, &mut choose, start)
}

/// Whether the memoryless strategy wins the first-cycle game from `start`:
/// every play consistent with it (a depth-first traversal of all simple
/// paths of the restricted arena) yields a first cycle won by its player.
pub fn memoryless_wins_fcg(
    arena: &Arena,
    property: &CycleProperty,
    strategy: &MemorylessStrategy,
    start: Vertex,
) -> Result<bool, AnalysisError> {
    check_kind(arena, property)?;
    // Revalidate against this arena; the strategy may come from elsewhere.
    MemorylessStrategy::new(arena, strategy.player(), strategy.choices().collect())?;
    let mut eval = CycleEval::new(arena, property);
    let mut choose = |_: &[Vertex], cur: Vertex| strategy.choice(cur).expect("validated total");
    Ok(plays_all_favor(
        arena,
        &mut eval,
        strategy.player(),
        &mut choose,
        start,
    ))
}

fn guard_memoryless(arena: &Arena, player: Player) -> Result<(), AnalysisError> {
    let candidates = strategy_space(arena, player);
    if candidates > MEMORYLESS_ENUMERATION_BOUND {
        return Err(AnalysisError::EnumerationBound {
            candidates,
            bound: MEMORYLESS_ENUMERATION_BOUND,
        });
    }
    Ok(())
}

/// The set of vertices from which some memoryless strategy of `player`
/// wins, by exhaustive enumeration.
pub fn pointwise_memoryless_region(
    arena: &Arena,
    property: &CycleProperty,
    player: Player,
) -> Result<BTreeSet<Vertex>, AnalysisError> {
    check_kind(arena, property)?;
    guard_memoryless(arena, player)?;
    let mut eval = CycleEval::new(arena, property);
    let mut region = BTreeSet::new();
    let mut dense = DenseStrategy::first(arena, player);
    loop {
        for v in arena.vertices() {
            if !region.contains(&v) && dense_wins(arena, &mut eval, player, &dense, v) {
                region.insert(v);
            }
        }
        if region.len() == arena.vertex_count() || !dense.advance(arena) {
            return Ok(region);
        }
    }
}

/// A single memoryless strategy winning from every vertex of the player's
/// winning region, if one exists. When the region is empty any total
/// strategy qualifies and the canonically first one is returned.
pub fn uniform_memoryless_strategy(
    arena: &Arena,
    property: &CycleProperty,
    player: Player,
) -> Result<Option<MemorylessStrategy>, AnalysisError> {
    let solution = solve_fcg_all(arena, property)?;
    uniform_for_region(arena, property, player, &solution)
}

pub(crate) fn uniform_for_region(
    arena: &Arena,
    property: &CycleProperty,
    player: Player,
    solution: &FcgSolution,
) -> Result<Option<MemorylessStrategy>, AnalysisError> {
    guard_memoryless(arena, player)?;
    let region: Vec<Vertex> = arena
        .vertices()
        .filter(|&v| solution.winner(v) == player)
        .collect();
    let mut eval = CycleEval::new(arena, property);
    let mut dense = DenseStrategy::first(arena, player);
    loop {
        if region
            .iter()
            .all(|&v| dense_wins(arena, &mut eval, player, &dense, v))
        {
            return Ok(Some(dense.to_strategy(arena, player)));
        }
        if !dense.advance(arena) {
            return Ok(None);
        }
    }
}

/// A finite-state strategy generator: memory set `{0, .., memory_count-1}`,
/// an initial state, an update function over (vertex, memory), and a
/// next-move function on the player's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine {
    player: Player,
    memory_count: usize,
    initial: usize,
    /// `update[v.index() * memory_count + m]` is the memory after reading
    /// `v` in memory `m`; the machine reads the source vertex of each step.
    update: Vec<usize>,
    /// Chosen successor per (owned vertex, memory).
    next_move: BTreeMap<(Vertex, usize), Vertex>,
}

impl MooreMachine {
    pub fn new(
        player: Player,
        memory_count: usize,
        initial: usize,
        update: Vec<usize>,
        next_move: BTreeMap<(Vertex, usize), Vertex>,
    ) -> MooreMachine {
        assert!(initial < memory_count);
        assert!(update.iter().all(|&m| m < memory_count));
        MooreMachine {
            player,
            memory_count,
            initial,
            update,
            next_move,
        }
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn memory_count(&self) -> usize {
        self.memory_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn update(&self, v: Vertex, m: usize) -> usize {
        self.update[v.index() * self.memory_count + m]
    }

    pub fn next_move(&self, v: Vertex, m: usize) -> Option<Vertex> {
        self.next_move.get(&(v, m)).copied()
    }
}

/// Whether the machine's strategy wins the first-cycle game from `start`,
/// by traversal of every consistent play. Memory evolves by reading the
/// source vertex of each step.
pub fn moore_wins_fcg(
    arena: &Arena,
    property: &CycleProperty,
    machine: &MooreMachine,
    start: Vertex,
) -> Result<bool, AnalysisError> {
    check_kind(arena, property)?;
    let mut eval = CycleEval::new(arena, property);
    let player = machine.player();
    let ok = {
        fn go(
            arena: &Arena,
            eval: &mut CycleEval,
            machine: &MooreMachine,
            player: Player,
            path: &mut Vec<Vertex>,
            on_path: &mut [bool],
            memory: usize,
        ) -> bool {
            let cur = *path.last().expect("path nonempty");
            let next_memory = machine.update(cur, memory);
            let step = |succ: Vertex,
                        eval: &mut CycleEval,
                        path: &mut Vec<Vertex>,
                        on_path: &mut [bool]| {
                if on_path[succ.index()] {
                    let repeat_at = path.iter().position(|&v| v == succ).expect("on path");
                    eval.cycle_winner(path, repeat_at) == player
                } else {
                    path.push(succ);
                    on_path[succ.index()] = true;
                    let ok = go(arena, eval, machine, player, path, on_path, next_memory);
                    path.pop();
                    on_path[succ.index()] = false;
                    ok
                }
            };
            if arena.owner(cur) == player {
                match machine.next_move(cur, memory) {
                    Some(succ) if arena.has_edge(cur, succ) => step(succ, eval, path, on_path),
                    _ => false,
                }
            } else {
                for i in 0..arena.out_degree(cur) {
                    let succ = arena.successors_labeled(cur)[i].0;
                    if !step(succ, eval, path, on_path) {
                        return false;
                    }
                }
                true
            }
        }
        let mut on_path = alloc::vec![false; arena.vertex_count()];
        on_path[start.index()] = true;
        let mut path = alloc::vec![start];
        go(
            arena,
            &mut eval,
            machine,
            player,
            &mut path,
            &mut on_path,
            machine.initial(),
        )
    };
    Ok(ok)
}

/// Result of the minimal-memory search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MooreMemory {
    /// The smallest memory size at most `k_max` that wins from the start,
    /// with the canonically first winning machine of that size.
    Minimal {
        memory: usize,
        machine: MooreMachine,
    },
    /// No machine with at most `k_max` memory states wins.
    ExceedsBound,
}

/// The minimal Moore-machine memory with which `player` wins from `start`,
/// searched exhaustively for each size `1..=k_max`.
pub fn min_moore_memory(
    arena: &Arena,
    property: &CycleProperty,
    player: Player,
    start: Vertex,
    k_max: usize,
) -> Result<MooreMemory, AnalysisError> {
    check_kind(arena, property)?;
    if crate::fcg_solver::solve_fcg_winner(arena, property, start)? != player {
        return Err(AnalysisError::StartNotWinning(
            arena.name(start).to_string(),
        ));
    }
    let n = arena.vertex_count();
    let owned: Vec<Vertex> = arena.player_vertices(player).collect();
    for k in 1..=k_max {
        let update_count = (k as u128).saturating_pow((n * k) as u32);
        let move_count = owned
            .iter()
            .map(|&v| arena.out_degree(v) as u128)
            .fold(1u128, |acc, d| acc.saturating_mul(d))
            .saturating_pow(k as u32);
        let candidates = update_count.saturating_mul(move_count);
        if candidates > MOORE_ENUMERATION_BOUND {
            return Err(AnalysisError::EnumerationBound {
                candidates,
                bound: MOORE_ENUMERATION_BOUND,
            });
        }
        if let Some(machine) = search_machines(arena, property, player, start, k, &owned)? {
            return Ok(MooreMemory::Minimal { memory: k, machine });
        }
    }
    Ok(MooreMemory::ExceedsBound)
}

fn search_machines(
    arena: &Arena,
    property: &CycleProperty,
    player: Player,
    start: Vertex,
    k: usize,
    owned: &[Vertex],
) -> Result<Option<MooreMachine>, AnalysisError> {
    let n = arena.vertex_count();
    let mut update = alloc::vec![0usize; n * k];
    let mut moves = alloc::vec![0usize; owned.len() * k];
    loop {
        // All next-move tables for this update table, last digit fastest.
        loop {
            let mut next_move: BTreeMap<(Vertex, usize), Vertex> = BTreeMap::new();
            for (i, &v) in owned.iter().enumerate() {
                for m in 0..k {
                    next_move.insert((v, m), arena.successors_labeled(v)[moves[i * k + m]].0);
                }
            }
            let machine = MooreMachine::new(player, k, 0, update.clone(), next_move);
            if moore_wins_fcg(arena, property, &machine, start)? {
                return Ok(Some(machine));
            }
            if !advance_mixed(&mut moves, |slot| arena.out_degree(owned[slot / k])) {
                break;
            }
        }
        if !advance_mixed(&mut update, |_| k) {
            return Ok(None);
        }
    }
}

fn advance_mixed(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for slot in (0..digits.len()).rev() {
        digits[slot] += 1;
        if digits[slot] < radix(slot) {
            return true;
        }
        digits[slot] = 0;
    }
    false
}

/// Winning regions, memoryless regions, uniform strategies, and the two
/// determinacy flags for one game.
#[derive(Debug, Clone)]
pub struct DeterminacyReport {
    pub property: String,
    pub winning_regions: [BTreeSet<Vertex>; 2],
    pub pointwise_regions: [BTreeSet<Vertex>; 2],
    pub uniform_strategies: [Option<MemorylessStrategy>; 2],
    pub pointwise_memoryless_determined: bool,
    pub uniform_memoryless_determined: bool,
}

/// Assembles winning regions, pointwise memoryless regions and uniform
/// strategies for both players.
pub fn classify_determinacy(
    arena: &Arena,
    property: &CycleProperty,
) -> Result<DeterminacyReport, AnalysisError> {
    let solution = solve_fcg_all(arena, property)?;
    let mut winning_regions = [BTreeSet::new(), BTreeSet::new()];
    let mut pointwise_regions = [BTreeSet::new(), BTreeSet::new()];
    let mut uniform_strategies = [None, None];
    for player in [Player::Zero, Player::One] {
        winning_regions[player.index()] = solution.region(player);
        pointwise_regions[player.index()] = pointwise_memoryless_region(arena, property, player)?;
        debug_assert!(pointwise_regions[player.index()].is_subset(&winning_regions[player.index()]));
        uniform_strategies[player.index()] =
            uniform_for_region(arena, property, player, &solution)?;
    }
    let pointwise_memoryless_determined =
        (0..2).all(|i| pointwise_regions[i] == winning_regions[i]);
    let uniform_memoryless_determined = uniform_strategies.iter().all(Option::is_some);
    Ok(DeterminacyReport {
        property: property.to_string(),
        winning_regions,
        pointwise_regions,
        uniform_strategies,
        pointwise_memoryless_determined,
        uniform_memoryless_determined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn prop1_memoryless_strategies_lose_from_v2() {
        let a = gallery::prop1_arena();
        let p = CycleProperty::even_len();
        let v = |n: &str| a.vertex(n).unwrap();
        let to_v2 = MemorylessStrategy::from_pairs(Player::Zero, [(v("v1"), v("v2"))]);
        let to_v3 = MemorylessStrategy::from_pairs(Player::Zero, [(v("v1"), v("v3"))]);
        assert_eq!(memoryless_wins_fcg(&a, &p, &to_v2, v("v2")), Ok(false));
        assert_eq!(memoryless_wins_fcg(&a, &p, &to_v3, v("v2")), Ok(false));
    }

    #[test]
    fn maxfirst_strategy_wins_from_v1() {
        let a = gallery::maxfirst_solitaire_arena();
        let p = CycleProperty::max_first();
        let v = |n: &str| a.vertex(n).unwrap();
        let s = MemorylessStrategy::from_pairs(
            Player::Zero,
            [(v("v1"), v("v3")), (v("v2"), v("v3")), (v("v3"), v("v2"))],
        );
        assert_eq!(memoryless_wins_fcg(&a, &p, &s, v("v1")), Ok(true));
    }

    #[test]
    fn invalid_strategies_are_rejected() {
        let a = gallery::prop1_arena();
        let p = CycleProperty::even_len();
        let v = |n: &str| a.vertex(n).unwrap();
        let partial = MemorylessStrategy::from_pairs(Player::One, [(v("v2"), v("v1"))]);
        assert!(matches!(
            memoryless_wins_fcg(&a, &p, &partial, v("v2")),
            Err(AnalysisError::Strategy(StrategyError::NotTotal(_)))
        ));
        let nonedge = MemorylessStrategy::from_pairs(Player::Zero, [(v("v1"), v("v4"))]);
        assert!(matches!(
            memoryless_wins_fcg(&a, &p, &nonedge, v("v2")),
            Err(AnalysisError::Strategy(StrategyError::NonEdge(..)))
        ));
    }

    #[test]
    fn prop1_pointwise_region_of_player_zero_is_empty() {
        let a = gallery::prop1_arena();
        let region =
            pointwise_memoryless_region(&a, &CycleProperty::even_len(), Player::Zero).unwrap();
        assert!(region.is_empty());
    }

    #[test]
    fn maxfirst_pointwise_region_is_everything() {
        let a = gallery::maxfirst_solitaire_arena();
        let region =
            pointwise_memoryless_region(&a, &CycleProperty::max_first(), Player::Zero).unwrap();
        assert_eq!(region.len(), 3);
    }

    #[test]
    fn maxfirst_has_no_uniform_strategy() {
        let a = gallery::maxfirst_solitaire_arena();
        let s = uniform_memoryless_strategy(&a, &CycleProperty::max_first(), Player::Zero).unwrap();
        assert_eq!(s, None);
    }

    #[test]
    fn empty_region_gets_the_trivial_uniform_strategy() {
        // Player 1 wins nowhere on the maxfirst solitaire arena and owns
        // nothing, so the empty strategy is uniform for it.
        let a = gallery::maxfirst_solitaire_arena();
        let s = uniform_memoryless_strategy(&a, &CycleProperty::max_first(), Player::One).unwrap();
        let s = s.expect("empty requirement is satisfiable");
        assert_eq!(s.choices().count(), 0);
    }

    #[test]
    fn min_moore_memory_on_prop1_is_two() {
        let a = gallery::prop1_arena();
        let p = CycleProperty::even_len();
        let v2 = a.vertex("v2").unwrap();
        match min_moore_memory(&a, &p, Player::Zero, v2, 3).unwrap() {
            MooreMemory::Minimal { memory, machine } => {
                assert_eq!(memory, 2);
                assert_eq!(moore_wins_fcg(&a, &p, &machine, v2), Ok(true));
            }
            MooreMemory::ExceedsBound => panic!("two memory states suffice"),
        }
    }

    #[test]
    fn memoryless_start_measures_one() {
        let a = gallery::maxfirst_solitaire_arena();
        let p = CycleProperty::max_first();
        let v1 = a.vertex("v1").unwrap();
        match min_moore_memory(&a, &p, Player::Zero, v1, 2).unwrap() {
            MooreMemory::Minimal { memory, .. } => assert_eq!(memory, 1),
            MooreMemory::ExceedsBound => panic!("memoryless suffices"),
        }
    }

    #[test]
    fn min_moore_memory_requires_winning_start() {
        let a = gallery::prop1_arena();
        let p = CycleProperty::even_len();
        let v1 = a.vertex("v1").unwrap();
        assert!(matches!(
            min_moore_memory(&a, &p, Player::Zero, v1, 2),
            Err(AnalysisError::StartNotWinning(_))
        ));
    }

    #[test]
    fn classify_prop1_and_maxfirst() {
        let a = gallery::prop1_arena();
        let report = classify_determinacy(&a, &CycleProperty::even_len()).unwrap();
        assert!(!report.pointwise_memoryless_determined);

        let a = gallery::maxfirst_solitaire_arena();
        let report = classify_determinacy(&a, &CycleProperty::max_first()).unwrap();
        assert!(report.pointwise_memoryless_determined);
        assert!(!report.uniform_memoryless_determined);
        assert!(report.uniform_strategies[Player::Zero.index()].is_none());
    }

    #[test]
    fn pointwise_regions_are_subsets_of_winning_regions() {
        for entry in gallery::entries() {
            if !entry.property.accepts_kind(entry.arena.label_kind()) {
                continue;
            }
            let solution = solve_fcg_all(&entry.arena, &entry.property).unwrap();
            for player in [Player::Zero, Player::One] {
                let pointwise =
                    pointwise_memoryless_region(&entry.arena, &entry.property, player).unwrap();
                assert!(
                    pointwise.is_subset(&solution.region(player)),
                    "{} player {player}",
                    entry.name
                );
            }
        }
    }
}
