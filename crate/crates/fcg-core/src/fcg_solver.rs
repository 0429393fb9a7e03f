//! Exact solving of first-cycle games.
//!
//! Unwinding an arena into all plays up to the first vertex repetition
//! gives a finite tree: Player 0 vertices are "or" nodes, Player 1 vertices
//! are "and" nodes, and a leaf is won by Player 0 iff the cycle closed on
//! the way to it satisfies the property. Backward induction over this tree
//! is exact and the game is determined.
//!
//! States are the simple paths themselves, not vertices: which vertex a
//! closing edge hits determines the cycle word, so positions cannot be
//! memoized across histories. The search depth is bounded by `|V|` edges,
//! which keeps exhaustive solving comfortable at the scale used by the
//! test suites.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::arena::{Arena, Label, LabelKind, Player, Vertex};
use crate::cycle_properties::CycleProperty;

/// A property was applied to an arena of the wrong label kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindMismatchError {
    pub property: String,
    pub arena_kind: LabelKind,
}

impl fmt::Display for KindMismatchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "property {} cannot be evaluated on a {} arena",
            self.property, self.arena_kind
        )
    }
}

pub(crate) fn check_kind(arena: &Arena, property: &CycleProperty) -> Result<(), KindMismatchError> {
    if property.accepts_kind(arena.label_kind()) {
        Ok(())
    } else {
        Err(KindMismatchError {
            property: property.to_string(),
            arena_kind: arena.label_kind(),
        })
    }
}

/// A winning strategy read off the game tree: for each decision history of
/// the winner that is reachable when the winner follows the strategy and
/// the opponent plays arbitrarily, the chosen successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTree {
    player: Player,
    choices: BTreeMap<Vec<Vertex>, Vertex>,
}

impl StrategyTree {
    pub fn player(&self) -> Player {
        self.player
    }

    pub fn choice(&self, history: &[Vertex]) -> Option<Vertex> {
        self.choices.get(history).copied()
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Vertex], Vertex)> {
        self.choices.iter().map(|(h, v)| (h.as_slice(), *v))
    }
}

/// The result of solving one start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcgOutcome {
    pub winner: Player,
    pub witness: StrategyTree,
}

/// Per-arena cycle membership evaluation with an optional cache.
///
/// Rational arithmetic dominates mean-payoff solving, and the same cycle is
/// reached along many histories, so payoff arenas memoize membership per
/// cycle (keyed by the traversal sequence starting at the repeated vertex;
/// rotations stay distinct because membership need not be rotation
/// invariant).
pub(crate) struct CycleEval<'a> {
    arena: &'a Arena,
    property: &'a CycleProperty,
    cache: Option<BTreeMap<Vec<Vertex>, bool>>,
    scratch: Vec<Label>,
}

impl<'a> CycleEval<'a> {
    pub(crate) fn new(arena: &'a Arena, property: &'a CycleProperty) -> CycleEval<'a> {
        let cache = matches!(arena.label_kind(), LabelKind::Payoff).then(BTreeMap::new);
        CycleEval {
            arena,
            property,
            cache,
            scratch: Vec::new(),
        }
    }

    /// The winner of a play whose first cycle is `path[repeat_at..]` closed
    /// back to its head.
    pub(crate) fn cycle_winner(&mut self, path: &[Vertex], repeat_at: usize) -> Player {
        if self.cycle_in_property(&path[repeat_at..]) {
            Player::Zero
        } else {
            Player::One
        }
    }

    /// Membership of the cycle that visits `cycle_vertices` in order and
    /// closes back to the first of them.
    pub(crate) fn cycle_in_property(&mut self, cycle_vertices: &[Vertex]) -> bool {
        if let Some(cache) = &self.cache {
            if let Some(&hit) = cache.get(cycle_vertices) {
                return hit;
            }
        }
        self.scratch.clear();
        for i in 0..cycle_vertices.len() {
            let src = cycle_vertices[i];
            let dst = cycle_vertices[(i + 1) % cycle_vertices.len()];
            self.scratch.push(
                self.arena
                    .label(src, dst)
                    .expect("cycle steps are edges")
                    .clone(),
            );
        }
        let holds = self
            .property
            .contains_labels(&self.scratch)
            .expect("kind checked at solve entry, cycles are nonempty");
        if let Some(cache) = &mut self.cache {
            cache.insert(cycle_vertices.to_vec(), holds);
        }
        holds
    }
}

struct Search<'a> {
    arena: &'a Arena,
    eval: CycleEval<'a>,
    path: Vec<Vertex>,
    on_path: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(arena: &'a Arena, property: &'a CycleProperty, start: Vertex) -> Search<'a> {
        let mut on_path = alloc::vec![false; arena.vertex_count()];
        on_path[start.index()] = true;
        Search {
            arena,
            eval: CycleEval::new(arena, property),
            path: alloc::vec![start],
            on_path,
        }
    }

    fn value_of_move(&mut self, succ: Vertex) -> Player {
        if self.on_path[succ.index()] {
            let repeat_at = self
                .path
                .iter()
                .position(|&v| v == succ)
                .expect("on_path vertices are on the path");
            self.eval.cycle_winner(&self.path, repeat_at)
        } else {
            self.path.push(succ);
            self.on_path[succ.index()] = true;
            let w = self.winner_here();
            self.path.pop();
            self.on_path[succ.index()] = false;
            w
        }
    }

    /// Backward induction below the current path end.
    fn winner_here(&mut self) -> Player {
        let cur = *self.path.last().expect("path nonempty");
        let owner = self.arena.owner(cur);
        let degree = self.arena.out_degree(cur);
        for i in 0..degree {
            let succ = self.arena.successors_labeled(cur)[i].0;
            if self.value_of_move(succ) == owner {
                return owner;
            }
        }
        owner.opponent()
    }

    /// Records the winner's choices over every history reachable when the
    /// winner plays optimally (first winning successor in canonical order)
    /// and the opponent plays arbitrarily.
    fn collect_witness(&mut self, winner: Player, choices: &mut BTreeMap<Vec<Vertex>, Vertex>) {
        let cur = *self.path.last().expect("path nonempty");
        let owner = self.arena.owner(cur);
        let degree = self.arena.out_degree(cur);
        if owner == winner {
            for i in 0..degree {
                let succ = self.arena.successors_labeled(cur)[i].0;
                if self.value_of_move(succ) != winner {
                    continue;
                }
                choices.insert(self.path.clone(), succ);
                if !self.on_path[succ.index()] {
                    self.path.push(succ);
                    self.on_path[succ.index()] = true;
                    self.collect_witness(winner, choices);
                    self.path.pop();
                    self.on_path[succ.index()] = false;
                }
                return;
            }
            unreachable!("winner has a winning move at every reachable decision");
        } else {
            for i in 0..degree {
                let succ = self.arena.successors_labeled(cur)[i].0;
                if !self.on_path[succ.index()] {
                    self.path.push(succ);
                    self.on_path[succ.index()] = true;
                    self.collect_witness(winner, choices);
                    self.path.pop();
                    self.on_path[succ.index()] = false;
                }
            }
        }
    }
}

/// The winner of the first-cycle game from `start`, without a witness.
/// This is the allocation-light path used by exhaustive suites.
pub fn solve_fcg_winner(
    arena: &Arena,
    property: &CycleProperty,
    start: Vertex,
) -> Result<Player, KindMismatchError> {
    check_kind(arena, property)?;
    Ok(Search::new(arena, property, start).winner_here())
}

/// Solves the first-cycle game from `start`, returning the winner and a
/// witness strategy tree. Ties are broken by canonical successor order, so
/// the witness is deterministic.
pub fn solve_fcg(
    arena: &Arena,
    property: &CycleProperty,
    start: Vertex,
) -> Result<FcgOutcome, KindMismatchError> {
    check_kind(arena, property)?;
    let mut search = Search::new(arena, property, start);
    let winner = search.winner_here();
    let mut choices = BTreeMap::new();
    search.collect_witness(winner, &mut choices);
    Ok(FcgOutcome {
        winner,
        witness: StrategyTree {
            player: winner,
            choices,
        },
    })
}

/// Winners from every start vertex. The two regions always partition the
/// vertex set (finite games are determined).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcgSolution {
    winners: Vec<Player>,
}

impl FcgSolution {
    pub fn winner(&self, v: Vertex) -> Player {
        self.winners[v.index()]
    }

    pub fn winners(&self) -> &[Player] {
        &self.winners
    }

    /// The winning region of `player`, in canonical vertex order.
    pub fn region(&self, player: Player) -> BTreeSet<Vertex> {
        self.winners
            .iter()
            .enumerate()
            .filter(|(_, w)| **w == player)
            .map(|(i, _)| Vertex(i as u32))
            .collect()
    }
}

/// Solves the game from every start vertex.
pub fn solve_fcg_all(
    arena: &Arena,
    property: &CycleProperty,
) -> Result<FcgSolution, KindMismatchError> {
    check_kind(arena, property)?;
    let winners = arena
        .vertices()
        .map(|v| Search::new(arena, property, v).winner_here())
        .collect();
    Ok(FcgSolution { winners })
}

/// Replays `outcome.witness` against every opposing strategy (exhaustively
/// over the finite tree) and checks that every resulting first cycle is won
/// by the declared winner.
pub fn verify_outcome(
    arena: &Arena,
    property: &CycleProperty,
    start: Vertex,
    outcome: &FcgOutcome,
) -> bool {
    check_kind(arena, property).is_ok()
        && replay(
            arena,
            &mut CycleEval::new(arena, property),
            outcome,
            &mut alloc::vec![start],
        )
}

fn replay(
    arena: &Arena,
    eval: &mut CycleEval,
    outcome: &FcgOutcome,
    path: &mut Vec<Vertex>,
) -> bool {
    let cur = *path.last().expect("path nonempty");
    let moves: Vec<Vertex> = if arena.owner(cur) == outcome.winner {
        match outcome.witness.choice(path) {
            Some(succ) => alloc::vec![succ],
            None => return false,
        }
    } else {
        arena.successors(cur).collect()
    };
    for succ in moves {
        if let Some(repeat_at) = path.iter().position(|&v| v == succ) {
            if eval.cycle_winner(path, repeat_at) != outcome.winner {
                return false;
            }
        } else {
            path.push(succ);
            let ok = replay(arena, eval, outcome, path);
            path.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Arena;
    use crate::gallery;
    use alloc::vec;

    fn regions_by_name(arena: &Arena, sol: &FcgSolution, player: Player) -> Vec<String> {
        sol.region(player)
            .iter()
            .map(|v| arena.name(*v).to_string())
            .collect()
    }

    #[test]
    fn single_even_self_loop_is_won_by_player_zero() {
        let a = Arena::parse("arena priority\nv v 0\ne v v 2\n").unwrap();
        let v = a.vertex("v").unwrap();
        let out = solve_fcg(&a, &CycleProperty::parity(), v).unwrap();
        assert_eq!(out.winner, Player::Zero);
        assert!(verify_outcome(&a, &CycleProperty::parity(), v, &out));
    }

    #[test]
    fn prop1_even_len_winners_per_start() {
        let a = gallery::prop1_arena();
        let p = CycleProperty::even_len();
        let v = |n: &str| a.vertex(n).unwrap();
        assert_eq!(solve_fcg_winner(&a, &p, v("v2")).unwrap(), Player::Zero);
        assert_eq!(solve_fcg_winner(&a, &p, v("v3")).unwrap(), Player::Zero);
        assert_eq!(solve_fcg_winner(&a, &p, v("v1")).unwrap(), Player::One);
        assert_eq!(solve_fcg_winner(&a, &p, v("v4")).unwrap(), Player::One);
    }

    #[test]
    fn prop1_even_len_regions() {
        let a = gallery::prop1_arena();
        let sol = solve_fcg_all(&a, &CycleProperty::even_len()).unwrap();
        assert_eq!(regions_by_name(&a, &sol, Player::Zero), vec!["v2", "v3"]);
        assert_eq!(regions_by_name(&a, &sol, Player::One), vec!["v1", "v4"]);
    }

    #[test]
    fn prop1_witness_distinguishes_histories() {
        let a = gallery::prop1_arena();
        let p = CycleProperty::even_len();
        let v = |n: &str| a.vertex(n).unwrap();
        let out = solve_fcg(&a, &p, v("v2")).unwrap();
        assert_eq!(out.winner, Player::Zero);
        // Player 0 decides only at v1, and must answer the two ways
        // Player 1 can get there differently.
        assert_eq!(out.witness.choice(&[v("v2"), v("v1")]), Some(v("v2")));
        assert_eq!(
            out.witness.choice(&[v("v2"), v("v4"), v("v1")]),
            Some(v("v3"))
        );
        assert!(verify_outcome(&a, &p, v("v2"), &out));
    }

    #[test]
    fn witnesses_verify_on_gallery_arenas() {
        for entry in gallery::entries() {
            if !entry.property.accepts_kind(entry.arena.label_kind()) {
                continue;
            }
            for start in entry.arena.vertices() {
                let out = solve_fcg(&entry.arena, &entry.property, start).unwrap();
                assert!(
                    verify_outcome(&entry.arena, &entry.property, start, &out),
                    "witness fails on {} from {}",
                    entry.name,
                    entry.arena.name(start)
                );
            }
        }
    }

    #[test]
    fn maxfirst_solitaire_region_is_everything() {
        let a = gallery::maxfirst_solitaire_arena();
        let sol = solve_fcg_all(&a, &CycleProperty::max_first()).unwrap();
        assert_eq!(
            regions_by_name(&a, &sol, Player::Zero),
            vec!["v1", "v2", "v3"]
        );
        assert!(sol.region(Player::One).is_empty());
    }

    #[test]
    fn regions_swap_under_player_and_property_complement() {
        // Renaming the players while complementing the property gives the
        // same game with the regions exchanged. (Complementing alone does
        // not: from v2 of the prop1 arena Player 0 can force an even or an
        // odd first cycle at will.)
        for entry in gallery::entries() {
            if !entry.property.accepts_kind(entry.arena.label_kind()) {
                continue;
            }
            let mut swapped = Arena::builder(entry.arena.label_kind());
            for v in entry.arena.vertices() {
                swapped.vertex(entry.arena.name(v), entry.arena.owner(v).opponent());
            }
            for v in entry.arena.vertices() {
                for (w, label) in entry.arena.successors_labeled(v) {
                    swapped.edge(entry.arena.name(v), entry.arena.name(*w), label.clone());
                }
            }
            let swapped = swapped.build().unwrap();
            let sol = solve_fcg_all(&entry.arena, &entry.property).unwrap();
            let co = solve_fcg_all(&swapped, &entry.property.complement()).unwrap();
            assert_eq!(
                sol.region(Player::Zero),
                co.region(Player::One),
                "{}",
                entry.name
            );
            assert_eq!(
                sol.region(Player::One),
                co.region(Player::Zero),
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let a = gallery::prop1_arena();
        let err = solve_fcg_all(&a, &CycleProperty::energy()).unwrap_err();
        assert_eq!(err.arena_kind, LabelKind::Priority);
    }
}
