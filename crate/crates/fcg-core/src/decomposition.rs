//! The stack-based cycles-decomposition of plays.
//!
//! Processing a play pushes each edge onto a stack; as soon as the top `k`
//! edges form a cycle, that cycle is popped and output. The vertices along
//! the stack always form a simple path, so the stack never holds more than
//! `|V| - 1` edges, every popped cycle is simple, and for an infinite play
//! all but at most `|V| - 1` edges end up in some popped cycle.
//!
//! Ultimately-periodic plays (lassos) are decomposed exactly: the pair
//! (position in the loop, stack contents) ranges over finitely many values,
//! so the sequence of popped cycles is eventually periodic and the period
//! is detected rather than approximated.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::arena::{Arena, Lasso, Vertex};
use crate::cycle_properties::LabelWord;

/// An edge as an ordered vertex pair.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    /// A play step that is not an edge of the arena.
    NonEdgeStep(String, String),
    /// A pushed edge whose source is not the current end of the stack path.
    DiscontinuousEdge { expected: String, found: String },
}

impl fmt::Display for DecompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionError::NonEdgeStep(s, d) => write!(f, "step {s} -> {d} is not an edge"),
            DecompositionError::DiscontinuousEdge { expected, found } => {
                write!(f, "edge starts at {found}, stack path ends at {expected}")
            }
        }
    }
}

/// A popped simple cycle together with its label word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord {
    edges: Vec<Edge>,
    labels: LabelWord,
}

impl CycleRecord {
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> &LabelWord {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Renders as `(v1,v2)(v2,v3)...` using arena vertex names.
    pub fn display<'a>(&'a self, arena: &'a Arena) -> impl fmt::Display + 'a {
        DisplayEdges {
            arena,
            edges: &self.edges,
        }
    }
}

pub(crate) struct DisplayEdges<'a> {
    pub(crate) arena: &'a Arena,
    pub(crate) edges: &'a [Edge],
}

impl fmt::Display for DisplayEdges<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, d) in self.edges {
            write!(f, "({},{})", self.arena.name(*s), self.arena.name(*d))?;
        }
        Ok(())
    }
}

/// The stack of edges maintained by the decomposition. Values are
/// immutable snapshots: [`DecompositionState::push`] returns the new state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecompositionState {
    stack: Vec<Edge>,
}

impl DecompositionState {
    pub fn new() -> DecompositionState {
        DecompositionState { stack: Vec::new() }
    }

    pub fn stack(&self) -> &[Edge] {
        &self.stack
    }

    pub fn len(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    /// The vertex the stack path currently ends at.
    pub fn path_end(&self) -> Option<Vertex> {
        self.stack.last().map(|(_, d)| *d)
    }

    /// The vertices along the stack path: the source of the first edge
    /// followed by the targets of all stacked edges.
    pub fn path_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.stack
            .first()
            .map(|(s, _)| *s)
            .into_iter()
            .chain(self.stack.iter().map(|(_, d)| *d))
    }

    /// Pushes one edge; if its target closes a cycle with a suffix of the
    /// stack, that suffix is popped and returned. The popped cycle starts
    /// at the first occurrence of the repeated vertex, so its label word is
    /// read in traversal order.
    pub fn push(
        &self,
        arena: &Arena,
        edge: Edge,
    ) -> Result<(DecompositionState, Option<CycleRecord>), DecompositionError> {
        let (src, dst) = edge;
        if let Some(end) = self.path_end() {
            if src != end {
                return Err(DecompositionError::DiscontinuousEdge {
                    expected: arena.name(end).to_string(),
                    found: arena.name(src).to_string(),
                });
            }
        }
        if !arena.has_edge(src, dst) {
            return Err(DecompositionError::NonEdgeStep(
                arena.name(src).to_string(),
                arena.name(dst).to_string(),
            ));
        }
        let mut stack = self.stack.clone();
        stack.push(edge);
        // With the simple-path invariant the closing vertex occurs at most
        // once on the path, so the popped suffix is unique.
        let close_at = stack
            .first()
            .filter(|(s, _)| *s == dst)
            .map(|_| 0)
            .or_else(|| {
                stack[..stack.len() - 1]
                    .iter()
                    .position(|(_, d)| *d == dst)
                    .map(|i| i + 1)
            });
        let popped = match close_at {
            Some(start) => {
                let cycle_edges: Vec<Edge> = stack.split_off(start);
                let labels = LabelWord::new(
                    cycle_edges
                        .iter()
                        .map(|(s, d)| arena.label(*s, *d).expect("validated edge").clone())
                        .collect(),
                )
                .expect("one arena, one label kind");
                Some(CycleRecord {
                    edges: cycle_edges,
                    labels,
                })
            }
            None => None,
        };
        debug_assert!(stack.len() < arena.vertex_count());
        Ok((DecompositionState { stack }, popped))
    }
}

/// Decomposes a finite play prefix. Returns the cycles in pop order and the
/// residual stack of unpopped edges.
pub fn decompose_prefix(
    arena: &Arena,
    play: &[Vertex],
) -> Result<(Vec<CycleRecord>, DecompositionState), DecompositionError> {
    let mut state = DecompositionState::new();
    let mut cycles = Vec::new();
    for step in play.windows(2) {
        let (next, popped) = state.push(arena, (step[0], step[1]))?;
        state = next;
        cycles.extend(popped);
    }
    Ok((cycles, state))
}

/// The first cycle of a play prefix, or `None` if no vertex repeats.
pub fn first_cycle(
    arena: &Arena,
    play: &[Vertex],
) -> Result<Option<CycleRecord>, DecompositionError> {
    let mut state = DecompositionState::new();
    for step in play.windows(2) {
        let (next, popped) = state.push(arena, (step[0], step[1]))?;
        if popped.is_some() {
            return Ok(popped);
        }
        state = next;
    }
    Ok(None)
}

/// Exact decomposition of the infinite play `prefix . cycle^omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoDecomposition {
    /// Cycles popped before the decomposition becomes periodic.
    pub transient: Vec<CycleRecord>,
    /// The cycles popped in every period; they repeat forever and there is
    /// at least one of them.
    pub periodic: Vec<CycleRecord>,
    /// The stack at the start of the period.
    pub tail_residual: DecompositionState,
}

impl LassoDecomposition {
    /// All distinct cycles occurring in the decomposition of the play.
    pub fn all_cycles(&self) -> impl Iterator<Item = &CycleRecord> {
        self.transient.iter().chain(self.periodic.iter())
    }
}

/// Runs the decomposition along a lasso until the pair (position in the
/// loop, stack contents) repeats; termination is guaranteed because stacks
/// range over simple paths. Cycles popped before the repeated state first
/// occurred are transient, the rest repeat forever.
pub fn decompose_lasso(arena: &Arena, lasso: &Lasso) -> LassoDecomposition {
    let cycle = lasso.cycle();
    let mut state = DecompositionState::new();
    let mut emitted: Vec<CycleRecord> = Vec::new();

    let feed = |state: &DecompositionState, edge: Edge, emitted: &mut Vec<CycleRecord>| {
        let (next, popped) = state
            .push(arena, edge)
            .expect("lasso validated against this arena");
        emitted.extend(popped);
        next
    };

    for step in lasso.prefix().windows(2) {
        state = feed(&state, (step[0], step[1]), &mut emitted);
    }
    if let Some(&last) = lasso.prefix().last() {
        state = feed(&state, (last, cycle[0]), &mut emitted);
    }

    let mut seen: BTreeMap<(usize, Vec<Edge>), usize> = BTreeMap::new();
    let mut pos = 0usize;
    loop {
        let key = (pos, state.stack().to_vec());
        if let Some(&emitted_at_first_visit) = seen.get(&key) {
            let periodic = emitted.split_off(emitted_at_first_visit);
            debug_assert!(
                !periodic.is_empty(),
                "a full period pops at least one cycle"
            );
            return LassoDecomposition {
                transient: emitted,
                periodic,
                tail_residual: state,
            };
        }
        seen.insert(key, emitted.len());
        let edge = (cycle[pos], cycle[(pos + 1) % cycle.len()]);
        state = feed(&state, edge, &mut emitted);
        pos = (pos + 1) % cycle.len();
    }
}
