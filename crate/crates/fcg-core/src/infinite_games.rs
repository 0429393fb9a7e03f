//! Infinite-duration conditions on lassos, the all-cycles objectives, and
//! the transfer between infinite games and first-cycle games.
//!
//! All infinite-play reasoning happens on ultimately-periodic plays
//! ([`Lasso`]). A winning condition W is Y-greedy on an arena when every
//! play whose decomposed cycles all satisfy Y is won by Player 0 and every
//! play whose decomposed cycles all satisfy the complement is won by
//! Player 1; for greedy pairs the winning regions and memoryless strategies
//! of the infinite game and of the first-cycle game for Y coincide, which
//! is what [`solve_infinite_via_transfer`] exploits. The registered greedy
//! pairs are parity with the parity cycle property, the mean-payoff
//! threshold condition with the mean-payoff cycle property, and the energy
//! condition whose initial credit is the largest weight times `|V| - 1`
//! with the energy cycle property.
//!
//! [`verify_memoryless_wins_infinite`] is deliberately independent of the
//! transfer pipeline: it certifies a memoryless strategy directly on its
//! restricted graph (cycle analysis plus, for energy, path dips or minimal
//! surviving credit), so the two routes cross-check each other.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arena::{Arena, Label, LabelKind, Lasso, Player, RestrictError, Vertex};
use crate::cycle_properties::{CycleProperty, Direction};
use crate::decomposition::decompose_lasso;
use crate::fcg_solver::{check_kind, solve_fcg_all, CycleEval, FcgSolution, KindMismatchError};
use crate::rng::SplitMix64;
use crate::strategy_analysis::{uniform_for_region, AnalysisError, MemorylessStrategy};

/// A winning condition for infinite-duration games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WinningCondition {
    /// The largest priority occurring infinitely often is even.
    Parity,
    /// The limsup average payoff is at least the threshold.
    MeanPayoff(BigRational),
    /// All running weight sums stay at least `-r` for initial credit `r`.
    Energy(u64),
    /// Conjunction of parity on priorities and energy on weights.
    EnergyParity(u64),
}

impl WinningCondition {
    pub fn required_kind(&self) -> LabelKind {
        match self {
            WinningCondition::Parity => LabelKind::Priority,
            WinningCondition::MeanPayoff(_) => LabelKind::Payoff,
            WinningCondition::Energy(_) => LabelKind::Weight,
            WinningCondition::EnergyParity(_) => LabelKind::Pair,
        }
    }
}

impl fmt::Display for WinningCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WinningCondition::Parity => write!(f, "parity"),
            WinningCondition::MeanPayoff(v) => write!(f, "meanpayoff:{}/{}", v.numer(), v.denom()),
            WinningCondition::Energy(r) => write!(f, "energy:{r}"),
            WinningCondition::EnergyParity(r) => write!(f, "energyparity:{r}"),
        }
    }
}

/// The game families this artifact speaks about; used by front ends to
/// dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameKind {
    FirstCycle(CycleProperty),
    AllCycles(CycleProperty),
    SuffixAllCycles(CycleProperty),
    Infinite(WinningCondition),
}

impl GameKind {
    pub fn accepts_kind(&self, kind: LabelKind) -> bool {
        match self {
            GameKind::FirstCycle(p) | GameKind::AllCycles(p) | GameKind::SuffixAllCycles(p) => {
                p.accepts_kind(kind)
            }
            GameKind::Infinite(w) => w.required_kind() == kind,
        }
    }
}

/// Errors of the transfer pipeline and verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransferError {
    Kind(KindMismatchError),
    /// The energy credit differs from the registered greedy credit
    /// `max_abs_weight * (|V| - 1)`.
    UnsupportedCredit {
        given: u64,
        required: u64,
    },
    /// No greedy cycle property is registered for the condition.
    UnsupportedCondition(String),
    Analysis(AnalysisError),
    Restrict(RestrictError),
    Arena(crate::arena::ArenaError),
}

impl fmt::Display for TransferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferError::Kind(e) => write!(f, "{e}"),
            TransferError::UnsupportedCredit { given, required } => write!(
                f,
                "no greedy fact for credit {given}; the registered credit is {required}"
            ),
            TransferError::UnsupportedCondition(w) => {
                write!(f, "no greedy cycle property registered for {w}")
            }
            TransferError::Analysis(e) => write!(f, "{e}"),
            TransferError::Restrict(e) => write!(f, "{e}"),
            TransferError::Arena(e) => write!(f, "{e}"),
        }
    }
}

impl From<KindMismatchError> for TransferError {
    fn from(e: KindMismatchError) -> Self {
        TransferError::Kind(e)
    }
}

impl From<AnalysisError> for TransferError {
    fn from(e: AnalysisError) -> Self {
        TransferError::Analysis(e)
    }
}

impl From<RestrictError> for TransferError {
    fn from(e: RestrictError) -> Self {
        TransferError::Restrict(e)
    }
}

fn kind_error(arena: &Arena, what: &dyn fmt::Display) -> KindMismatchError {
    KindMismatchError {
        property: what.to_string(),
        arena_kind: arena.label_kind(),
    }
}

/// Evaluates a winning condition on the play `prefix . cycle^omega`.
///
/// Parity and mean-payoff depend only on the cycle (the prefix is finite);
/// energy requires every running sum of the prefix plus one full cycle
/// traversal to stay at least `-r` and the cycle sum to be nonnegative,
/// which pins the verdict for the unbounded unrolling.
pub fn eval_condition_on_lasso(
    condition: &WinningCondition,
    lasso: &Lasso,
    arena: &Arena,
) -> Result<bool, KindMismatchError> {
    if arena.label_kind() != condition.required_kind() {
        return Err(kind_error(arena, condition));
    }
    Ok(match condition {
        WinningCondition::Parity => cycle_max_priority(arena, lasso).is_multiple_of(2),
        WinningCondition::MeanPayoff(threshold) => {
            let labels = lasso.cycle_labels(arena);
            let mut sum = BigRational::from(BigInt::from(0));
            for l in &labels {
                match l {
                    Label::Payoff(r) => sum += r,
                    _ => unreachable!("kind checked"),
                }
            }
            sum >= threshold * BigRational::from(BigInt::from(labels.len() as i64))
        }
        WinningCondition::Energy(r) => {
            energy_on_lasso(arena, lasso, *r, |l| l.weight().expect("weight labels"))
        }
        WinningCondition::EnergyParity(r) => {
            cycle_max_priority(arena, lasso).is_multiple_of(2)
                && energy_on_lasso(arena, lasso, *r, |l| l.weight().expect("pair labels"))
        }
    })
}

fn cycle_max_priority(arena: &Arena, lasso: &Lasso) -> u32 {
    lasso
        .cycle_labels(arena)
        .iter()
        .map(|l| l.priority().expect("priority component"))
        .max()
        .expect("cycle nonempty")
}

fn energy_on_lasso(
    arena: &Arena,
    lasso: &Lasso,
    credit: u64,
    weight: impl Fn(&Label) -> i64,
) -> bool {
    let play = lasso.unroll(1);
    let labels = arena.labels_along(&play);
    let cycle_sum: i128 = labels[lasso.prefix().len()..]
        .iter()
        .map(|l| weight(l) as i128)
        .sum();
    if cycle_sum < 0 {
        return false;
    }
    let mut sum: i128 = 0;
    for l in &labels {
        sum += weight(l) as i128;
        if sum < -(credit as i128) {
            return false;
        }
    }
    true
}

/// All-cycles objective on a lasso: every cycle of the decomposition (the
/// transients and the repeating period) satisfies the property.
pub fn eval_ac_on_lasso(
    property: &CycleProperty,
    lasso: &Lasso,
    arena: &Arena,
) -> Result<bool, KindMismatchError> {
    check_kind(arena, property)?;
    let d = decompose_lasso(arena, lasso);
    let ok = d.all_cycles().all(|c| {
        property
            .contains(c.labels())
            .expect("kind checked, cycles nonempty")
    });
    Ok(ok)
}

/// Suffix-all-cycles objective on a lasso. Every play suffix is itself a
/// lasso: shifts inside the prefix shorten it, later shifts are rotations
/// of the cycle, so finitely many candidates cover all suffixes.
pub fn eval_eac_on_lasso(
    property: &CycleProperty,
    lasso: &Lasso,
    arena: &Arena,
) -> Result<bool, KindMismatchError> {
    check_kind(arena, property)?;
    for shift in 0..=lasso.prefix().len() + lasso.cycle().len() - 1 {
        if eval_ac_on_lasso(property, &lasso.suffix(shift), arena)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The registered greedy cycle property for a winning condition on an
/// arena: parity, the mean-payoff threshold, or energy with initial credit
/// exactly `max_abs_weight * (|V| - 1)`.
pub fn associated_property(
    condition: &WinningCondition,
    arena: &Arena,
) -> Result<CycleProperty, TransferError> {
    match condition {
        WinningCondition::Parity => Ok(CycleProperty::parity()),
        WinningCondition::MeanPayoff(v) => {
            Ok(CycleProperty::mean_payoff(v.clone(), Direction::AtLeast))
        }
        WinningCondition::Energy(r) => {
            let required = greedy_energy_credit(arena).map_err(TransferError::Arena)?;
            if *r == required {
                Ok(CycleProperty::energy())
            } else {
                Err(TransferError::UnsupportedCredit {
                    given: *r,
                    required,
                })
            }
        }
        WinningCondition::EnergyParity(_) => {
            Err(TransferError::UnsupportedCondition(condition.to_string()))
        }
    }
}

/// The initial credit `max_abs_weight * (|V| - 1)` for which the energy
/// condition is greedy for the energy cycle property.
pub fn greedy_energy_credit(arena: &Arena) -> Result<u64, crate::arena::ArenaError> {
    Ok(arena.max_abs_weight()? * (arena.vertex_count() as u64 - 1))
}

/// Winning regions and uniform memoryless strategies of an infinite game,
/// solved through its associated first-cycle game.
#[derive(Debug, Clone)]
pub struct TransferSolution {
    pub property: CycleProperty,
    pub solution: FcgSolution,
    pub strategies: [Option<MemorylessStrategy>; 2],
}

impl TransferSolution {
    pub fn region(&self, player: Player) -> alloc::collections::BTreeSet<Vertex> {
        self.solution.region(player)
    }
}

/// Solves the first-cycle game for `property` from every vertex and
/// searches a uniform memoryless strategy per player. For a condition that
/// is greedy for `property`, the regions and strategies answer the
/// infinite game as well.
pub fn transfer_pipeline(
    arena: &Arena,
    property: CycleProperty,
) -> Result<TransferSolution, TransferError> {
    let solution = solve_fcg_all(arena, &property)?;
    let strategies = [
        uniform_for_region(arena, &property, Player::Zero, &solution)?,
        uniform_for_region(arena, &property, Player::One, &solution)?,
    ];
    Ok(TransferSolution {
        property,
        solution,
        strategies,
    })
}

/// Solves the infinite game with condition `condition` via the first-cycle
/// game of its associated cycle property.
pub fn solve_infinite_via_transfer(
    arena: &Arena,
    condition: &WinningCondition,
) -> Result<TransferSolution, TransferError> {
    let property = associated_property(condition, arena)?;
    transfer_pipeline(arena, property)
}

/// Verifies directly (without the transfer) that a memoryless strategy
/// wins the infinite game from `start` against a free opponent.
///
/// On the restricted graph the checks are exact:
///
/// * parity: every simple cycle reachable from the start has an even
///   maximum priority for Player 0, an odd one for Player 1;
/// * mean-payoff: every reachable simple cycle averages at least the
///   threshold for Player 0, strictly below it for Player 1;
/// * energy, Player 0: every reachable simple cycle has a nonnegative sum
///   and no simple path from the start dips below `-r`;
/// * energy, Player 1: the minimal surviving credit at the start exceeds
///   `r` (a prefix dip can defeat a credit even when all cycles are
///   nonnegative, so Player 1's check is not purely cycle-based).
pub fn verify_memoryless_wins_infinite(
    arena: &Arena,
    condition: &WinningCondition,
    strategy: &MemorylessStrategy,
    start: Vertex,
) -> Result<bool, TransferError> {
    if arena.label_kind() != condition.required_kind() {
        return Err(kind_error(arena, condition).into());
    }
    let restricted = arena.restrict(strategy)?;
    let reachable = reachable_from(&restricted, start);
    let player = strategy.player();
    match condition {
        WinningCondition::Parity => {
            let want = CycleProperty::parity();
            let want = if player == Player::Zero {
                want
            } else {
                want.complement()
            };
            Ok(all_reachable_cycles_in(&restricted, &reachable, &want))
        }
        WinningCondition::MeanPayoff(v) => {
            let want = CycleProperty::mean_payoff(v.clone(), Direction::AtLeast);
            let want = if player == Player::Zero {
                want
            } else {
                want.complement()
            };
            Ok(all_reachable_cycles_in(&restricted, &reachable, &want))
        }
        WinningCondition::Energy(r) => match player {
            Player::Zero => {
                let cycles_ok =
                    all_reachable_cycles_in(&restricted, &reachable, &CycleProperty::energy());
                Ok(cycles_ok && min_path_dip(&restricted, start) >= -(*r as i128))
            }
            Player::One => {
                let credits = min_surviving_credit(&restricted);
                Ok(match credits[start.index()] {
                    Some(c) => c > *r as i128,
                    None => true,
                })
            }
        },
        WinningCondition::EnergyParity(_) => {
            Err(TransferError::UnsupportedCondition(condition.to_string()))
        }
    }
}

fn reachable_from(arena: &Arena, start: Vertex) -> Vec<bool> {
    let mut seen = alloc::vec![false; arena.vertex_count()];
    let mut stack = alloc::vec![start];
    seen[start.index()] = true;
    while let Some(v) = stack.pop() {
        for w in arena.successors(v) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Enumerates every simple cycle lying inside `allowed` and checks it
/// against the property. Cycles are rooted at their minimal vertex so each
/// is visited once.
fn all_reachable_cycles_in(arena: &Arena, allowed: &[bool], property: &CycleProperty) -> bool {
    let mut eval = CycleEval::new(arena, property);
    let mut ok = true;
    for_each_simple_cycle(arena, allowed, &mut |cycle| {
        if !eval.cycle_in_property(cycle) {
            ok = false;
            return false;
        }
        true
    });
    ok
}

/// Calls `visit` with each simple cycle (as the vertex sequence starting at
/// its minimal vertex); stops early when `visit` returns false.
pub(crate) fn for_each_simple_cycle(
    arena: &Arena,
    allowed: &[bool],
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) {
    fn dfs(
        arena: &Arena,
        allowed: &[bool],
        root: Vertex,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        let cur = *path.last().expect("path nonempty");
        for w in arena.successors(cur) {
            if !allowed[w.index()] || w < root {
                continue;
            }
            if w == root {
                if !visit(path) {
                    return false;
                }
            } else if !on_path[w.index()] {
                path.push(w);
                on_path[w.index()] = true;
                let keep_going = dfs(arena, allowed, root, path, on_path, visit);
                path.pop();
                on_path[w.index()] = false;
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    let mut on_path = alloc::vec![false; arena.vertex_count()];
    for root in arena.vertices() {
        if !allowed[root.index()] {
            continue;
        }
        let mut path = alloc::vec![root];
        on_path[root.index()] = true;
        let keep_going = dfs(arena, allowed, root, &mut path, &mut on_path, visit);
        on_path[root.index()] = false;
        if !keep_going {
            return;
        }
    }
}

/// The minimum running weight sum over all simple paths from `start`.
fn min_path_dip(arena: &Arena, start: Vertex) -> i128 {
    fn dfs(arena: &Arena, path_sum: i128, cur: Vertex, on_path: &mut [bool], min: &mut i128) {
        for (w, label) in arena.successors_labeled(cur) {
            let sum = path_sum + label.weight().expect("weight labels") as i128;
            if sum < *min {
                *min = sum;
            }
            if !on_path[w.index()] {
                on_path[w.index()] = true;
                dfs(arena, sum, *w, on_path, min);
                on_path[w.index()] = false;
            }
        }
    }
    let mut on_path = alloc::vec![false; arena.vertex_count()];
    on_path[start.index()] = true;
    let mut min = 0i128;
    dfs(arena, 0, start, &mut on_path, &mut min);
    min
}

/// Least credit per vertex with which all running sums can be kept
/// nonnegative in a fully restricted (choice-free for the verifier) graph;
/// `None` means no credit suffices. Least fixpoint of
/// `f(v) = min over edges (v,w) of max(f(w) - weight, 0)` computed by value
/// iteration from zero, with values capped well above the worst simple
/// lasso dip.
fn min_surviving_credit(arena: &Arena) -> Vec<Option<i128>> {
    let top = 2
        * arena.vertex_count() as i128
        * arena.max_abs_weight().expect("weight or pair arena") as i128
        + 1;
    let mut f: Vec<Option<i128>> = alloc::vec![Some(0); arena.vertex_count()];
    loop {
        let mut changed = false;
        for v in arena.vertices() {
            let mut best: Option<i128> = None;
            for (w, label) in arena.successors_labeled(v) {
                let through = f[w.index()]
                    .map(|fw| (fw - label.weight().expect("weight labels") as i128).max(0));
                best = match (best, through) {
                    (None, x) => x,
                    (x, None) => x,
                    (Some(a), Some(b)) => Some(a.min(b)),
                };
                if best == Some(0) {
                    break;
                }
            }
            let new = match best {
                Some(b) if b > top => None,
                other => other,
            };
            if new != f[v.index()] {
                // Values only grow toward the fixpoint.
                f[v.index()] = new;
                changed = true;
            }
        }
        if !changed {
            return f;
        }
    }
}

/// Result of the bounded ambiguity search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnambiguityVerdict {
    /// A lasso in both the suffix-all-cycles objective of the property and
    /// of its complement: the arena is ambiguous for the property.
    WitnessFound(Lasso),
    /// Nothing found; inconclusive for the arena.
    NoWitness,
}

/// Result of the bounded greediness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyVerdict {
    /// A lasso separating the all-cycles objective from the condition.
    CounterexampleFound(Lasso),
    NoCounterexample,
}

/// Enumerates the pure-rotation lassos with loops up to `|V|` steps, then
/// samples random lassos (prefix up to `|V|`, loop up to `3 |V|`) and calls
/// `check` on each until it returns a hit or the budget is spent. The
/// enumeration phase is capped at a fixed number of walk extensions so a
/// dense arena degrades into pure sampling instead of hanging; the cap
/// keeps the search deterministic.
fn search_lassos(
    arena: &Arena,
    budget: usize,
    seed: u64,
    check: &mut dyn FnMut(&Lasso) -> bool,
) -> Option<Lasso> {
    const ENUMERATION_CAP: usize = 500_000;
    let n = arena.vertex_count();
    // Exhaustive phase: every closed walk of length <= |V| as a loop with
    // an empty prefix.
    let mut found: Option<Lasso> = None;
    let mut fuel = ENUMERATION_CAP;
    for start in arena.vertices() {
        if found.is_some() || fuel == 0 {
            break;
        }
        let mut walk = alloc::vec![start];
        fn extend(
            arena: &Arena,
            walk: &mut Vec<Vertex>,
            max_len: usize,
            fuel: &mut usize,
            check: &mut dyn FnMut(&Lasso) -> bool,
            found: &mut Option<Lasso>,
        ) {
            if found.is_some() || *fuel == 0 {
                return;
            }
            *fuel -= 1;
            let cur = *walk.last().expect("walk nonempty");
            if arena.has_edge(cur, walk[0]) {
                let lasso = Lasso::new(arena, Vec::new(), walk.clone()).expect("walk is valid");
                if check(&lasso) {
                    *found = Some(lasso);
                    return;
                }
            }
            if walk.len() == max_len {
                return;
            }
            for w in arena.successors(cur) {
                walk.push(w);
                extend(arena, walk, max_len, fuel, check, found);
                walk.pop();
                if found.is_some() {
                    return;
                }
            }
        }
        extend(arena, &mut walk, n, &mut fuel, check, &mut found);
    }
    if found.is_some() {
        return found;
    }
    // Random phase: walks with prefixes, and loops longer than |V|.
    let mut rng = SplitMix64::new(seed);
    for _ in 0..budget {
        let start = Vertex(rng.next_below(n) as u32);
        let prefix_len = rng.next_below(n + 1);
        // Walk length: prefix plus a loop of 1..=3|V| vertices.
        let mut walk = alloc::vec![start];
        for _ in 0..prefix_len + rng.next_below(3 * n) {
            let cur = *walk.last().expect("nonempty");
            let d = arena.out_degree(cur);
            walk.push(arena.successors_labeled(cur)[rng.next_below(d)].0);
        }
        let (prefix, cycle) = walk.split_at(prefix_len);
        if cycle.is_empty() || !arena.has_edge(*cycle.last().expect("nonempty"), cycle[0]) {
            continue;
        }
        let lasso = Lasso::new(arena, prefix.to_vec(), cycle.to_vec()).expect("walk is valid");
        if check(&lasso) {
            return Some(lasso);
        }
    }
    None
}

/// Searches for a play witnessing that the arena is ambiguous for the
/// property: a lasso satisfying the suffix-all-cycles objective of both the
/// property and its complement. A found witness is a proof; absence is
/// inconclusive.
pub fn check_unambiguous_bounded(
    arena: &Arena,
    property: &CycleProperty,
    budget: usize,
    seed: u64,
) -> Result<UnambiguityVerdict, KindMismatchError> {
    check_kind(arena, property)?;
    let complement = property.complement();
    let mut check = |lasso: &Lasso| {
        eval_eac_on_lasso(property, lasso, arena).expect("kind checked")
            && eval_eac_on_lasso(&complement, lasso, arena).expect("kind checked")
    };
    Ok(match search_lassos(arena, budget, seed, &mut check) {
        Some(lasso) => UnambiguityVerdict::WitnessFound(lasso),
        None => UnambiguityVerdict::NoWitness,
    })
}

/// Searches for a lasso refuting that the condition is greedy for the
/// property on this arena: all cycles in the property but the condition
/// fails, or all cycles in the complement but the condition holds.
pub fn check_greedy_bounded(
    arena: &Arena,
    condition: &WinningCondition,
    property: &CycleProperty,
    budget: usize,
    seed: u64,
) -> Result<GreedyVerdict, KindMismatchError> {
    check_kind(arena, property)?;
    if arena.label_kind() != condition.required_kind() {
        return Err(kind_error(arena, condition));
    }
    let complement = property.complement();
    let mut check = |lasso: &Lasso| {
        let holds = eval_condition_on_lasso(condition, lasso, arena).expect("kind checked");
        if holds {
            eval_ac_on_lasso(&complement, lasso, arena).expect("kind checked")
        } else {
            eval_ac_on_lasso(property, lasso, arena).expect("kind checked")
        }
    };
    Ok(match search_lassos(arena, budget, seed, &mut check) {
        Some(lasso) => GreedyVerdict::CounterexampleFound(lasso),
        None => GreedyVerdict::NoCounterexample,
    })
}
