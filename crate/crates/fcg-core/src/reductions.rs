//! Generalised geography and its encoding as a first-cycle game.
//!
//! The geography game here is played on (vertex, player-to-move) states:
//! the token starts on the start vertex with the mover to choose, a move
//! enters the state (target, next player), no state may be entered twice,
//! the start state counts as entered, and a player without a legal move
//! loses. On move-alternating graphs this is the usual vertex geography;
//! tracking states rather than bare vertices is exactly what makes the
//! two-copies-per-vertex first-cycle encoding below faithful on every
//! graph.
//!
//! The encoding builds the turn product: one copy of each vertex per
//! player-to-move, owned by that player, every outgoing edge labeled by the
//! owner, and a self-loop on dead-end copies so the stuck player closes an
//! immediate length-one cycle. A cycle closes exactly when a state repeats,
//! and the label word then ends with the closing player's number; with the
//! complemented ends-with-zero property the closing player loses, which is
//! also how the stuck player loses in the geography game. The exhaustive
//! cross-checks in the test suites pin this orientation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::arena::{name_cmp, Arena, Label, LabelKind, Player, Vertex};
use crate::cycle_properties::CycleProperty;
use crate::fcg_solver::solve_fcg_winner;

/// A directed graph with a start vertex for the geography game. Unlike
/// arenas, dead-ends and isolated vertices are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeographyInstance {
    names: Vec<String>,
    /// Successor indices per vertex, ascending.
    succ: Vec<Vec<usize>>,
    start: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GgError {
    NoVertices,
    DuplicateVertex(String),
    UnknownVertex(String),
    DuplicateEdge(String, String),
    MissingStart,
}

impl fmt::Display for GgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GgError::NoVertices => write!(f, "instance has no vertices"),
            GgError::DuplicateVertex(v) => write!(f, "vertex {v} declared twice"),
            GgError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            GgError::DuplicateEdge(s, d) => write!(f, "duplicate edge {s} -> {d}"),
            GgError::MissingStart => write!(f, "missing start vertex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GgParseError {
    Syntax { line: usize, message: String },
    Invalid(GgError),
}

impl fmt::Display for GgParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GgParseError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            GgParseError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl GeographyInstance {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
        start: &str,
    ) -> Result<GeographyInstance, GgError> {
        if vertices.is_empty() {
            return Err(GgError::NoVertices);
        }
        let mut names = vertices;
        names.sort_by(|a, b| name_cmp(a, b));
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(GgError::DuplicateVertex(pair[0].clone()));
            }
        }
        let lookup = |n: &str| -> Result<usize, GgError> {
            names
                .binary_search_by(|x| name_cmp(x, n))
                .map_err(|_| GgError::UnknownVertex(n.to_string()))
        };
        let mut succ: Vec<Vec<usize>> = alloc::vec![Vec::new(); names.len()];
        for (s, d) in &edges {
            let s_id = lookup(s)?;
            let d_id = lookup(d)?;
            if succ[s_id].contains(&d_id) {
                return Err(GgError::DuplicateEdge(s.clone(), d.clone()));
            }
            succ[s_id].push(d_id);
        }
        for adj in &mut succ {
            adj.sort_unstable();
        }
        let start = lookup(start)?;
        Ok(GeographyInstance { names, succ, start })
    }

    /// Parses the geography file format: `v <id>`, `e <src> <dst>`,
    /// `start <id>`, with `#` comments.
    pub fn parse(text: &str) -> Result<GeographyInstance, GgParseError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut start: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            };
            let mut tokens = line.split_whitespace();
            let Some(head) = tokens.next() else { continue };
            let syntax = |message: &str| GgParseError::Syntax {
                line: line_no,
                message: message.to_string(),
            };
            match head {
                "v" => {
                    let id = tokens.next().ok_or_else(|| syntax("expected `v <id>`"))?;
                    vertices.push(id.to_string());
                }
                "e" => {
                    let s = tokens
                        .next()
                        .ok_or_else(|| syntax("expected `e <src> <dst>`"))?;
                    let d = tokens
                        .next()
                        .ok_or_else(|| syntax("expected `e <src> <dst>`"))?;
                    edges.push((s.to_string(), d.to_string()));
                }
                "start" => {
                    let id = tokens
                        .next()
                        .ok_or_else(|| syntax("expected `start <id>`"))?;
                    start = Some(id.to_string());
                }
                _ => return Err(syntax("unknown directive")),
            }
            if tokens.next().is_some() {
                return Err(syntax("trailing tokens"));
            }
        }
        let start = start.ok_or(GgParseError::Invalid(GgError::MissingStart))?;
        GeographyInstance::new(vertices, edges, &start).map_err(GgParseError::Invalid)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn start_name(&self) -> &str {
        &self.names[self.start]
    }
}

/// Winner of a geography game, relative to the player who moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgWinner {
    Mover,
    Opponent,
}

impl fmt::Display for GgWinner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GgWinner::Mover => write!(f, "mover"),
            GgWinner::Opponent => write!(f, "opponent"),
        }
    }
}

/// The mover is Player 1 in the first-cycle encoding; the opponent is
/// Player 0.
pub const MOVER: Player = Player::One;

/// Solves the geography game by memoized backward induction over
/// (current vertex, player to move, entered states). Supports up to 32
/// vertices (states are packed into a 64-bit set).
pub fn solve_gg_direct(instance: &GeographyInstance) -> GgWinner {
    let n = instance.vertex_count();
    assert!(
        n <= 32,
        "direct geography solving is limited to 32 vertices"
    );
    // State bit for vertex v with player-to-move t.
    let bit = |v: usize, t: usize| 1u64 << (v * 2 + t);
    let mut memo: BTreeMap<(usize, usize, u64), bool> = BTreeMap::new();

    fn mover_to_move_wins(
        instance: &GeographyInstance,
        memo: &mut BTreeMap<(usize, usize, u64), bool>,
        bit: &dyn Fn(usize, usize) -> u64,
        current: usize,
        turn: usize,
        entered: u64,
    ) -> bool {
        if let Some(&hit) = memo.get(&(current, turn, entered)) {
            return hit;
        }
        let next_turn = 1 - turn;
        let mut wins = false;
        for &w in &instance.succ[current] {
            if entered & bit(w, next_turn) != 0 {
                continue;
            }
            if !mover_to_move_wins(
                instance,
                memo,
                bit,
                w,
                next_turn,
                entered | bit(w, next_turn),
            ) {
                wins = true;
                break;
            }
        }
        memo.insert((current, turn, entered), wins);
        wins
    }

    let mover_turn = MOVER.index();
    let start_wins = mover_to_move_wins(
        instance,
        &mut memo,
        &bit,
        instance.start,
        mover_turn,
        bit(instance.start, mover_turn),
    );
    if start_wins {
        GgWinner::Mover
    } else {
        GgWinner::Opponent
    }
}

/// The first-cycle encoding of a geography instance.
#[derive(Debug, Clone)]
pub struct GgReduction {
    pub arena: Arena,
    pub property: CycleProperty,
    pub start: Vertex,
}

fn copy_name(name: &str, player: Player) -> String {
    alloc::format!("{name}@{player}")
}

/// Builds the turn-product arena: copies `<v>@0` and `<v>@1` owned by the
/// named player, edges `(v@t) -> (w@(1-t))` labeled `t` for every graph
/// edge, a self-loop labeled `t` on copies of dead-end vertices, start copy
/// `<start>@1` (the mover is Player 1), and the complemented ends-with-zero
/// property so that the player who closes the first cycle loses.
pub fn gg_to_fcg(instance: &GeographyInstance) -> GgReduction {
    let mut builder = Arena::builder(LabelKind::Priority);
    for (i, name) in instance.names().iter().enumerate() {
        for player in [Player::Zero, Player::One] {
            let this = copy_name(name, player);
            builder.vertex(&this, player);
            if instance.succ[i].is_empty() {
                builder.edge(&this, &this, Label::Priority(player.index() as u32));
            } else {
                for &w in &instance.succ[i] {
                    builder.edge(
                        &this,
                        &copy_name(&instance.names()[w], player.opponent()),
                        Label::Priority(player.index() as u32),
                    );
                }
            }
        }
    }
    let arena = builder.build().expect("the turn product is a valid arena");
    let start = arena
        .vertex(&copy_name(instance.start_name(), MOVER))
        .expect("start copy exists");
    GgReduction {
        arena,
        property: CycleProperty::ends_zero().complement(),
        start,
    }
}

/// Solves the geography game through the first-cycle encoding. With the
/// mover playing as Player 1, the geography winner is literally the
/// first-cycle winner.
pub fn solve_gg_via_fcg(instance: &GeographyInstance) -> GgWinner {
    let reduction = gg_to_fcg(instance);
    match solve_fcg_winner(&reduction.arena, &reduction.property, reduction.start)
        .expect("priority property on priority arena")
    {
        Player::One => GgWinner::Mover,
        Player::Zero => GgWinner::Opponent,
    }
}
