//! Labeled game arenas and the line-oriented arena text format.
//!
//! An arena is a finite directed graph without dead-ends whose vertices are
//! partitioned between Player 0 and Player 1 and whose edges carry labels of
//! a single kind: naturals (`priority`), integers (`weight`), exact
//! rationals (`payoff`), or priority/weight pairs (`pair`). Payoffs are kept
//! as reduced arbitrary-precision rationals so that threshold comparisons
//! are exact.
//!
//! Vertices are identified by strings; the canonical vertex order is
//! short-lex (length, then bytes), and every ordered listing in this crate
//! (successors, regions, serialization) follows it so that results are
//! reproducible regardless of input order.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::strategy_analysis::MemorylessStrategy;

/// One of the two players. Player 0 owns "or" vertices, Player 1 "and"
/// vertices in the game-tree view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Player> {
        match i {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// The label kind shared by all edges of one arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelKind {
    Priority,
    Weight,
    Payoff,
    Pair,
}

impl LabelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LabelKind::Priority => "priority",
            LabelKind::Weight => "weight",
            LabelKind::Payoff => "payoff",
            LabelKind::Pair => "pair",
        }
    }

    pub fn parse(s: &str) -> Option<LabelKind> {
        match s {
            "priority" => Some(LabelKind::Priority),
            "weight" => Some(LabelKind::Weight),
            "payoff" => Some(LabelKind::Payoff),
            "pair" => Some(LabelKind::Pair),
            _ => None,
        }
    }
}

impl fmt::Display for LabelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An edge label. All labels of an arena share one [`LabelKind`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Priority(u32),
    Weight(i64),
    Payoff(BigRational),
    Pair(u32, i64),
}

impl Label {
    pub fn kind(&self) -> LabelKind {
        match self {
            Label::Priority(_) => LabelKind::Priority,
            Label::Weight(_) => LabelKind::Weight,
            Label::Payoff(_) => LabelKind::Payoff,
            Label::Pair(_, _) => LabelKind::Pair,
        }
    }

    pub fn payoff_from_int(n: i64) -> Label {
        Label::Payoff(BigRational::from(BigInt::from(n)))
    }

    pub fn payoff_from_ratio(num: i64, den: i64) -> Label {
        Label::Payoff(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The priority component, for `priority` and `pair` labels.
    pub fn priority(&self) -> Option<u32> {
        match self {
            Label::Priority(p) | Label::Pair(p, _) => Some(*p),
            _ => None,
        }
    }

    /// The integer weight component, for `weight` and `pair` labels.
    pub fn weight(&self) -> Option<i64> {
        match self {
            Label::Weight(w) | Label::Pair(_, w) => Some(*w),
            _ => None,
        }
    }

    fn parse(kind: LabelKind, s: &str) -> Option<Label> {
        match kind {
            LabelKind::Priority => s.parse::<u32>().ok().map(Label::Priority),
            LabelKind::Weight => s.parse::<i64>().ok().map(Label::Weight),
            LabelKind::Payoff => {
                if let Some((num, den)) = s.split_once('/') {
                    let num: i64 = num.parse().ok()?;
                    let den: i64 = den.parse().ok()?;
                    if den <= 0 {
                        return None;
                    }
                    Some(Label::payoff_from_ratio(num, den))
                } else {
                    s.parse::<i64>().ok().map(Label::payoff_from_int)
                }
            }
            LabelKind::Pair => {
                let (c, d) = s.split_once(',')?;
                Some(Label::Pair(c.parse().ok()?, d.parse().ok()?))
            }
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Priority(p) => write!(f, "{p}"),
            Label::Weight(w) => write!(f, "{w}"),
            Label::Payoff(r) => {
                if r.denom() == &BigInt::from(1) {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Label::Pair(c, d) => write!(f, "{c},{d}"),
        }
    }
}

/// A vertex handle: the index of the vertex in the canonical (short-lex)
/// order of its arena. Cheap to copy; only meaningful together with the
/// arena it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Errors from arena construction and validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArenaError {
    EmptyVertexSet,
    DuplicateVertex(String),
    /// An edge endpoint was never declared as a vertex.
    UndeclaredVertex(String),
    DuplicateEdge(String, String),
    /// The named vertex has no outgoing edge.
    DeadEnd(String),
    /// A label of a different kind than the arena's declared kind.
    MixedLabelKinds {
        expected: LabelKind,
        found: LabelKind,
    },
    /// An operation needed a label kind the arena does not have.
    WrongLabelKind {
        expected: &'static str,
        found: LabelKind,
    },
}

impl fmt::Display for ArenaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArenaError::EmptyVertexSet => write!(f, "arena has no vertices"),
            ArenaError::DuplicateVertex(v) => write!(f, "vertex {v} declared twice"),
            ArenaError::UndeclaredVertex(v) => {
                write!(f, "edge endpoint {v} is not a declared vertex")
            }
            ArenaError::DuplicateEdge(s, d) => write!(f, "duplicate edge {s} -> {d}"),
            ArenaError::DeadEnd(v) => write!(f, "vertex {v} has no outgoing edge"),
            ArenaError::MixedLabelKinds { expected, found } => {
                write!(f, "label kind {found} mixed into a {expected} arena")
            }
            ArenaError::WrongLabelKind { expected, found } => {
                write!(
                    f,
                    "operation needs {expected} labels but arena has {found} labels"
                )
            }
        }
    }
}

/// Errors from the arena text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// A malformed line; `line` is 1-based.
    Syntax { line: usize, message: String },
    /// The file was well-formed but the described arena is invalid.
    Invalid(ArenaError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            ParseError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl From<ArenaError> for ParseError {
    fn from(e: ArenaError) -> Self {
        ParseError::Invalid(e)
    }
}

/// Error applying a memoryless strategy to an arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RestrictError {
    /// The strategy does not choose a successor for one of the player's
    /// vertices.
    MissingChoice(String),
    /// The strategy chose a pair that is not an edge.
    NonEdge(String, String),
}

impl fmt::Display for RestrictError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictError::MissingChoice(v) => write!(f, "strategy has no choice at {v}"),
            RestrictError::NonEdge(s, d) => write!(f, "strategy assigns non-edge {s} -> {d}"),
        }
    }
}

/// Canonical vertex-name order: by length, then bytes. This keeps numbered
/// names like `v2 < v10` in the expected order.
pub fn name_cmp(a: &str, b: &str) -> core::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.as_bytes().cmp(b.as_bytes()))
}

/// A finite labeled game arena. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    kind: LabelKind,
    names: Vec<String>,
    owners: Vec<Player>,
    succ: Vec<Vec<(Vertex, Label)>>,
    edge_count: usize,
}

impl Arena {
    pub fn builder(kind: LabelKind) -> ArenaBuilder {
        ArenaBuilder {
            kind,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Parses the arena text format:
    ///
    /// ```text
    /// arena <kind>            # kind: priority | weight | payoff | pair
    /// v <id> <owner>          # owner: 0 | 1
    /// e <src> <dst> <label>
    /// ```
    ///
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Arena, ParseError> {
        let mut kind: Option<LabelKind> = None;
        let mut builder: Option<ArenaBuilder> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            };
            let mut tokens = line.split_whitespace();
            let Some(head) = tokens.next() else { continue };
            let syntax = |message: String| ParseError::Syntax {
                line: line_no,
                message,
            };
            match head {
                "arena" => {
                    if kind.is_some() {
                        return Err(syntax("second arena header".to_string()));
                    }
                    let k = tokens.next().and_then(LabelKind::parse).ok_or_else(|| {
                        syntax("expected `arena <priority|weight|payoff|pair>`".to_string())
                    })?;
                    kind = Some(k);
                    builder = Some(Arena::builder(k));
                }
                "v" => {
                    let b = builder
                        .as_mut()
                        .ok_or_else(|| syntax("vertex line before arena header".to_string()))?;
                    let id = tokens
                        .next()
                        .ok_or_else(|| syntax("expected `v <id> <owner>`".to_string()))?;
                    let owner = tokens
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .and_then(Player::from_index)
                        .ok_or_else(|| syntax("owner must be 0 or 1".to_string()))?;
                    b.vertex(id, owner);
                }
                "e" => {
                    let k =
                        kind.ok_or_else(|| syntax("edge line before arena header".to_string()))?;
                    let b = builder.as_mut().expect("builder exists when kind is set");
                    let src = tokens
                        .next()
                        .ok_or_else(|| syntax("expected `e <src> <dst> <label>`".to_string()))?;
                    let dst = tokens
                        .next()
                        .ok_or_else(|| syntax("expected `e <src> <dst> <label>`".to_string()))?;
                    let label_tok = tokens
                        .next()
                        .ok_or_else(|| syntax("missing edge label".to_string()))?;
                    let label = Label::parse(k, label_tok)
                        .ok_or_else(|| syntax(alloc::format!("bad {k} label `{label_tok}`")))?;
                    b.edge(src, dst, label);
                }
                other => {
                    return Err(syntax(alloc::format!("unknown directive `{other}`")));
                }
            }
            if tokens.next().is_some() {
                return Err(ParseError::Syntax {
                    line: line_no,
                    message: "trailing tokens".to_string(),
                });
            }
        }
        let builder = builder.ok_or(ParseError::Syntax {
            line: 1,
            message: "missing `arena <kind>` header".to_string(),
        })?;
        builder.build().map_err(ParseError::from)
    }

    /// Serializes back to the text format, vertices then edges in canonical
    /// order. `Arena::parse(a.to_text()) == a` for every arena.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "arena {}", self.kind);
        for v in self.vertices() {
            let _ = writeln!(out, "v {} {}", self.name(v), self.owner(v));
        }
        for v in self.vertices() {
            for (w, label) in &self.succ[v.index()] {
                let _ = writeln!(out, "e {} {} {}", self.name(v), self.name(*w), label);
            }
        }
        out
    }

    pub fn label_kind(&self) -> LabelKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.names.len() as u32).map(Vertex)
    }

    pub fn player_vertices(&self, player: Player) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |v| self.owner(*v) == player)
    }

    /// Looks a vertex up by name.
    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names
            .binary_search_by(|n| name_cmp(n, name))
            .ok()
            .map(|i| Vertex(i as u32))
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn owner(&self, v: Vertex) -> Player {
        self.owners[v.index()]
    }

    /// Successors of `v` in ascending canonical order, the tie-breaking
    /// order used by every search in this crate.
    pub fn successors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.succ[v.index()].iter().map(|(w, _)| *w)
    }

    pub fn successors_labeled(&self, v: Vertex) -> &[(Vertex, Label)] {
        &self.succ[v.index()]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.succ[v.index()].len()
    }

    pub fn has_edge(&self, src: Vertex, dst: Vertex) -> bool {
        self.label(src, dst).is_some()
    }

    pub fn label(&self, src: Vertex, dst: Vertex) -> Option<&Label> {
        self.succ[src.index()]
            .binary_search_by_key(&dst, |(w, _)| *w)
            .ok()
            .map(|i| &self.succ[src.index()][i].1)
    }

    /// Labels along a vertex path `p0 p1 ... pk` (the labels of its k
    /// steps). Panics if a step is not an edge.
    pub fn labels_along(&self, path: &[Vertex]) -> Vec<Label> {
        path.windows(2)
            .map(|w| {
                self.label(w[0], w[1])
                    .expect("path step must be an edge")
                    .clone()
            })
            .collect()
    }

    /// Largest absolute weight component over all edges, for `weight` and
    /// `pair` arenas.
    pub fn max_abs_weight(&self) -> Result<u64, ArenaError> {
        if !matches!(self.kind, LabelKind::Weight | LabelKind::Pair) {
            return Err(ArenaError::WrongLabelKind {
                expected: "weight or pair",
                found: self.kind,
            });
        }
        let mut max = 0u64;
        for adj in &self.succ {
            for (_, label) in adj {
                let w = label
                    .weight()
                    .expect("weight/pair label has weight component");
                max = max.max(w.unsigned_abs());
            }
        }
        Ok(max)
    }

    /// The arena with every vertex of the strategy's player keeping only
    /// its chosen edge. The result has no dead-ends when the strategy is
    /// total on that player's vertices.
    pub fn restrict(&self, strategy: &MemorylessStrategy) -> Result<Arena, RestrictError> {
        let player = strategy.player();
        let mut succ = Vec::with_capacity(self.names.len());
        let mut edge_count = 0;
        for v in self.vertices() {
            if self.owner(v) == player {
                let w = strategy
                    .choice(v)
                    .ok_or_else(|| RestrictError::MissingChoice(self.name(v).to_string()))?;
                let label = self.label(v, w).ok_or_else(|| {
                    RestrictError::NonEdge(self.name(v).to_string(), self.name(w).to_string())
                })?;
                succ.push(alloc::vec![(w, label.clone())]);
                edge_count += 1;
            } else {
                succ.push(self.succ[v.index()].clone());
                edge_count += self.succ[v.index()].len();
            }
        }
        Ok(Arena {
            kind: self.kind,
            names: self.names.clone(),
            owners: self.owners.clone(),
            succ,
            edge_count,
        })
    }
}

/// Incremental arena construction; validation happens in [`ArenaBuilder::build`].
#[derive(Debug, Clone)]
pub struct ArenaBuilder {
    kind: LabelKind,
    vertices: Vec<(String, Player)>,
    edges: Vec<(String, String, Label)>,
}

impl ArenaBuilder {
    pub fn vertex(&mut self, name: &str, owner: Player) -> &mut Self {
        self.vertices.push((name.to_string(), owner));
        self
    }

    pub fn edge(&mut self, src: &str, dst: &str, label: Label) -> &mut Self {
        self.edges.push((src.to_string(), dst.to_string(), label));
        self
    }

    pub fn build(&self) -> Result<Arena, ArenaError> {
        if self.vertices.is_empty() {
            return Err(ArenaError::EmptyVertexSet);
        }
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| name_cmp(&self.vertices[a].0, &self.vertices[b].0));
        let mut names = Vec::with_capacity(order.len());
        let mut owners = Vec::with_capacity(order.len());
        for &i in &order {
            let (name, owner) = &self.vertices[i];
            if names.last().map(String::as_str) == Some(name.as_str()) {
                return Err(ArenaError::DuplicateVertex(name.clone()));
            }
            names.push(name.clone());
            owners.push(*owner);
        }
        let lookup = |name: &str| -> Result<Vertex, ArenaError> {
            names
                .binary_search_by(|n| name_cmp(n, name))
                .map(|i| Vertex(i as u32))
                .map_err(|_| ArenaError::UndeclaredVertex(name.to_string()))
        };
        let mut succ: Vec<Vec<(Vertex, Label)>> = alloc::vec![Vec::new(); names.len()];
        for (src, dst, label) in &self.edges {
            if label.kind() != self.kind {
                return Err(ArenaError::MixedLabelKinds {
                    expected: self.kind,
                    found: label.kind(),
                });
            }
            let s = lookup(src)?;
            let d = lookup(dst)?;
            succ[s.index()].push((d, label.clone()));
        }
        let mut edge_count = 0;
        for (i, adj) in succ.iter_mut().enumerate() {
            adj.sort_by_key(|(w, _)| *w);
            for pair in adj.windows(2) {
                if pair[0].0 == pair[1].0 {
                    return Err(ArenaError::DuplicateEdge(
                        names[i].clone(),
                        names[pair[0].0.index()].clone(),
                    ));
                }
            }
            if adj.is_empty() {
                return Err(ArenaError::DeadEnd(names[i].clone()));
            }
            edge_count += adj.len();
        }
        Ok(Arena {
            kind: self.kind,
            names,
            owners,
            succ,
            edge_count,
        })
    }
}

/// Error constructing a lasso against an arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LassoError {
    EmptyCycle,
    /// A consecutive pair in the induced play is not an edge.
    NonEdgeStep(String, String),
}

impl fmt::Display for LassoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LassoError::EmptyCycle => write!(f, "lasso cycle must be nonempty"),
            LassoError::NonEdgeStep(s, d) => write!(f, "lasso step {s} -> {d} is not an edge"),
        }
    }
}

/// An ultimately-periodic play `prefix . cycle^omega`, the representation
/// used for all infinite-play reasoning in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    prefix: Vec<Vertex>,
    cycle: Vec<Vertex>,
}

impl Lasso {
    /// Validates that every consecutive pair of the induced infinite play
    /// (prefix steps, the junction into the cycle, cycle steps, and the
    /// cycle wrap-around) is an edge of `arena`.
    pub fn new(
        arena: &Arena,
        prefix: Vec<Vertex>,
        cycle: Vec<Vertex>,
    ) -> Result<Lasso, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyCycle);
        }
        let check = |a: Vertex, b: Vertex| -> Result<(), LassoError> {
            if arena.has_edge(a, b) {
                Ok(())
            } else {
                Err(LassoError::NonEdgeStep(
                    arena.name(a).to_string(),
                    arena.name(b).to_string(),
                ))
            }
        };
        for w in prefix.windows(2) {
            check(w[0], w[1])?;
        }
        if let Some(&last) = prefix.last() {
            check(last, cycle[0])?;
        }
        for w in cycle.windows(2) {
            check(w[0], w[1])?;
        }
        check(*cycle.last().expect("cycle nonempty"), cycle[0])?;
        Ok(Lasso { prefix, cycle })
    }

    pub fn prefix(&self) -> &[Vertex] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Vertex] {
        &self.cycle
    }

    /// The lasso representing the play suffix that starts `shift` positions
    /// into the infinite play. Positions inside the prefix shorten it;
    /// positions beyond it rotate the cycle.
    pub fn suffix(&self, shift: usize) -> Lasso {
        if shift <= self.prefix.len() {
            Lasso {
                prefix: self.prefix[shift..].to_vec(),
                cycle: self.cycle.clone(),
            }
        } else {
            let r = (shift - self.prefix.len()) % self.cycle.len();
            let mut cycle = self.cycle[r..].to_vec();
            cycle.extend_from_slice(&self.cycle[..r]);
            Lasso {
                prefix: Vec::new(),
                cycle,
            }
        }
    }

    /// The play prefix covering the lasso prefix plus `laps` full cycle
    /// traversals (ending back at the cycle head).
    pub fn unroll(&self, laps: usize) -> Vec<Vertex> {
        let mut play = self.prefix.clone();
        for _ in 0..laps {
            play.extend_from_slice(&self.cycle);
        }
        play.push(self.cycle[0]);
        play
    }

    /// Labels of the cycle steps including the wrap-around edge.
    pub fn cycle_labels(&self, arena: &Arena) -> Vec<Label> {
        let mut path = self.cycle.clone();
        path.push(self.cycle[0]);
        arena.labels_along(&path)
    }
}
