//! The roots-and-chips polygon game.
//!
//! A position is a nonnegative value on every vertex plus a direction on
//! every edge. A vertex may be fired when every incident edge points into
//! it and the reflection update keeps its value nonnegative; firing applies
//! the update and turns the vertex into a source. Distinct legal moves
//! always commute (the diamond property), which forces the dichotomy: from
//! a given start either every maximal play halts in the same position after
//! the same number of moves, or every play can be continued forever.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::field::{weight, ArithError, Sign, Value};
use crate::graph::{CoxeterGraph, GraphError, Vertex};
use crate::word::{bicoloured_word, intervening_violation, InViolation, Word};

#[derive(Debug, Error)]
pub enum GameError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex `{0}` never occurs in the word, so its edges cannot be oriented")]
    VertexMissingFromWord(String),
    #[error("word violates intervening neighbours: letter `{letter}` at positions {first} and {second} misses neighbour `{missing}`")]
    NotIntervening { letter: String, first: usize, second: usize, missing: String },
    #[error("vertex `{vertex}` is not a sink")]
    NotASink { vertex: String },
    #[error("firing `{vertex}` would make its value negative")]
    NegativeFire { vertex: String },
    #[error("a position recurred at two different depths; the play graph is not graded")]
    NotGraded,
    #[error("maximal plays disagree on the final position")]
    DivergentTerminals,
    #[error("too many edges for an orientation tour: {edges} (cap {cap})")]
    TooManyOrientations { edges: usize, cap: usize },
}

fn in_violation_error(g: &CoxeterGraph, v: InViolation) -> GameError {
    GameError::NotIntervening {
        letter: g.vertex_name(v.letter).to_string(),
        first: v.first,
        second: v.second,
        missing: g.vertex_name(v.missing).to_string(),
    }
}

/// One direction per edge: `heads[e]` is the vertex edge `e` points at.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    heads: Vec<Vertex>,
}

impl Orientation {
    pub fn new(heads: Vec<Vertex>) -> Self {
        Orientation { heads }
    }

    /// Orientation from an edge bitmask: bit e set points edge e at its
    /// higher-indexed endpoint.
    pub fn from_bits(g: &CoxeterGraph, bits: u64) -> Self {
        let heads = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| if bits >> e & 1 == 1 { edge.v } else { edge.u })
            .collect();
        Orientation { heads }
    }

    pub fn head(&self, edge: usize) -> Vertex {
        self.heads[edge]
    }

    pub fn heads(&self) -> &[Vertex] {
        &self.heads
    }

    pub fn is_sink(&self, g: &CoxeterGraph, v: Vertex) -> bool {
        g.edges()
            .iter()
            .enumerate()
            .all(|(e, edge)| !edge.touches(v) || self.heads[e] == v)
    }

    /// Reverses every edge at `v`, making it a source.
    pub fn fire(&mut self, g: &CoxeterGraph, v: Vertex) {
        for (e, edge) in g.edges().iter().enumerate() {
            if edge.touches(v) {
                self.heads[e] = edge.other(v);
            }
        }
    }

    pub fn render(&self, g: &CoxeterGraph) -> String {
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let head = self.heads[e];
                let tail = edge.other(head);
                format!("{}->{}", g.vertex_name(tail), g.vertex_name(head))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GamePosition {
    pub values: Vec<Value>,
    pub orientation: Orientation,
}

impl GamePosition {
    pub fn render(&self, g: &CoxeterGraph) -> String {
        let values = self.values.iter().map(Value::render).collect::<Vec<_>>().join(" ");
        format!("{} | {}", values, self.orientation.render(g))
    }

    fn key(&self, g: &CoxeterGraph) -> String {
        self.render(g)
    }
}

/// The position an intervening-neighbours word starts from: zeros
/// everywhere, each edge pointing at whichever endpoint occurs first, then
/// the first letter played (value 1, edges reversed outward). The word must
/// mention every vertex, otherwise some edge has no direction.
pub fn initial_position(g: &CoxeterGraph, w: &Word) -> Result<GamePosition, GameError> {
    w.check_letters(g)?;
    if let Some(v) = intervening_violation(w, g)? {
        return Err(in_violation_error(g, v));
    }
    let mut first_occurrence: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for (pos, &s) in w.letters().iter().enumerate() {
        if first_occurrence[s].is_none() {
            first_occurrence[s] = Some(pos);
        }
    }
    for v in 0..g.vertex_count() {
        if first_occurrence[v].is_none() {
            return Err(GameError::VertexMissingFromWord(g.vertex_name(v).to_string()));
        }
    }
    let heads = g
        .edges()
        .iter()
        .map(|edge| {
            if first_occurrence[edge.u] < first_occurrence[edge.v] {
                edge.u
            } else {
                edge.v
            }
        })
        .collect();
    let mut orientation = Orientation::new(heads);
    let s = w.letters()[0];
    orientation.fire(g, s);
    let mut values = vec![Value::zero(); g.vertex_count()];
    values[s] = Value::one();
    Ok(GamePosition { values, orientation })
}

/// The reflection update the vertex would receive if fired now.
pub fn fired_value(p: &GamePosition, t: Vertex, g: &CoxeterGraph) -> Result<Value, GameError> {
    let mut acc = p.values[t].neg();
    for &(y, label) in g.neighbours(t) {
        acc = acc.add(&weight(label)?.mul(&p.values[y]));
    }
    Ok(acc)
}

/// Sinks whose fired value stays nonnegative. Always an independent set:
/// two neighbours cannot both be sinks.
pub fn legal_moves(p: &GamePosition, g: &CoxeterGraph) -> Result<Vec<Vertex>, GameError> {
    let mut moves = Vec::new();
    for t in 0..g.vertex_count() {
        if !p.orientation.is_sink(g, t) {
            continue;
        }
        if fired_value(p, t, g)?.sign()? != Sign::Negative {
            moves.push(t);
        }
    }
    Ok(moves)
}

pub fn fire(p: &GamePosition, t: Vertex, g: &CoxeterGraph) -> Result<GamePosition, GameError> {
    if !p.orientation.is_sink(g, t) {
        return Err(GameError::NotASink { vertex: g.vertex_name(t).to_string() });
    }
    let value = fired_value(p, t, g)?;
    if value.sign()? == Sign::Negative {
        return Err(GameError::NegativeFire { vertex: g.vertex_name(t).to_string() });
    }
    let mut next = p.clone();
    next.values[t] = value;
    next.orientation.fire(g, t);
    Ok(next)
}

/// Whether every pair of distinct legal moves commutes from this position.
pub fn check_diamond(p: &GamePosition, g: &CoxeterGraph) -> Result<bool, GameError> {
    let moves = legal_moves(p, g)?;
    for (idx, &s) in moves.iter().enumerate() {
        for &t in &moves[idx + 1..] {
            let after_s = fire(p, s, g)?;
            if !legal_moves(&after_s, g)?.contains(&t) {
                return Ok(false);
            }
            let after_t = fire(p, t, g)?;
            if !legal_moves(&after_t, g)?.contains(&s) {
                return Ok(false);
            }
            if fire(&after_s, t, g)? != fire(&after_t, s, g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub enum ExploreOutcome {
    /// Every maximal play halts, all in this position after this many moves.
    Converged { position: GamePosition, length: usize },
    /// Some play outran the depth or state cap.
    OpenBeyondCap { states_seen: usize },
}

/// Breadth-first exploration of every play from `p`, deduplicating
/// positions. Cap exhaustion is a result, not an error.
pub fn explore(
    p: &GamePosition,
    g: &CoxeterGraph,
    depth_cap: usize,
    state_cap: usize,
) -> Result<ExploreOutcome, GameError> {
    let mut depth_of: HashMap<String, usize> = HashMap::new();
    let mut queue: VecDeque<(GamePosition, usize)> = VecDeque::new();
    let mut terminal: Option<(GamePosition, usize)> = None;
    depth_of.insert(p.key(g), 0);
    queue.push_back((p.clone(), 0));
    while let Some((pos, depth)) = queue.pop_front() {
        let moves = legal_moves(&pos, g)?;
        if moves.is_empty() {
            match &terminal {
                None => terminal = Some((pos, depth)),
                Some((seen, seen_depth)) => {
                    if *seen != pos {
                        return Err(GameError::DivergentTerminals);
                    }
                    if *seen_depth != depth {
                        return Err(GameError::NotGraded);
                    }
                }
            }
            continue;
        }
        if depth >= depth_cap {
            return Ok(ExploreOutcome::OpenBeyondCap { states_seen: depth_of.len() });
        }
        for t in moves {
            let next = fire(&pos, t, g)?;
            let key = next.key(g);
            match depth_of.get(&key) {
                Some(&d) => {
                    if d != depth + 1 {
                        return Err(GameError::NotGraded);
                    }
                }
                None => {
                    if depth_of.len() >= state_cap {
                        return Ok(ExploreOutcome::OpenBeyondCap { states_seen: depth_of.len() });
                    }
                    depth_of.insert(key, depth + 1);
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    let (position, length) = terminal.expect("finite exploration ends somewhere");
    Ok(ExploreOutcome::Converged { position, length })
}

/// A play of full positions: `positions[0]` is the start, one entry after
/// each fired vertex.
#[derive(Debug, Clone)]
pub struct MoveSequence {
    pub moves: Vec<Vertex>,
    pub positions: Vec<GamePosition>,
}

/// Plays the rest of an intervening-neighbours word from its initial
/// position, firing one letter at a time.
pub fn play_word(g: &CoxeterGraph, w: &Word) -> Result<MoveSequence, GameError> {
    let start = initial_position(g, w)?;
    let mut positions = vec![start];
    let mut moves = Vec::new();
    for &letter in &w.letters()[1..] {
        let next = fire(positions.last().unwrap(), letter, g)?;
        moves.push(letter);
        positions.push(next);
    }
    Ok(MoveSequence { moves, positions })
}

/// The bicoloured starting position of a tree: the initial position of a
/// bicoloured word long enough to mention every vertex.
pub fn bicoloured_position(g: &CoxeterGraph, s: Vertex) -> Result<GamePosition, GameError> {
    let w = bicoloured_word(g, s, g.vertex_count() + 1)?;
    initial_position(g, &w)
}

/// A play on orientations only: values are ignored, a move fires any sink.
#[derive(Debug, Clone)]
pub struct OrientationPath {
    pub moves: Vec<Vertex>,
    /// Orientation after each move.
    pub states: Vec<Orientation>,
}

struct OrientationWalker<'g> {
    g: &'g CoxeterGraph,
    current: Orientation,
    peeled: Vec<bool>,
    moves: Vec<Vertex>,
    states: Vec<Orientation>,
}

impl<'g> OrientationWalker<'g> {
    fn alive_edges_at(&self, v: Vertex) -> Vec<usize> {
        self.g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.touches(v) && !self.peeled[e.other(v)] && !self.peeled[v])
            .map(|(i, _)| i)
            .collect()
    }

    /// Fires `v` in the real tree. Peeled leaf edges pointing away from `v`
    /// are first turned around by recursively firing those leaves; callers
    /// guarantee the alive edges already point at `v`.
    fn real_fire(&mut self, v: Vertex) {
        loop {
            let mut fired_any = false;
            for (e, edge) in self.g.edges().iter().enumerate() {
                if edge.touches(v) && self.peeled[edge.other(v)] && self.current.head(e) != v {
                    let leaf = edge.other(v);
                    self.real_fire(leaf);
                    fired_any = true;
                }
            }
            if !fired_any {
                break;
            }
        }
        debug_assert!(self.current.is_sink(self.g, v), "firing a non-sink");
        self.current.fire(self.g, v);
        self.moves.push(v);
        self.states.push(self.current.clone());
    }

    /// Points every alive edge at `v` except the excluded one, descending
    /// into subtrees as needed.
    fn gather(&mut self, v: Vertex, exclude: Option<usize>) {
        for e in self.alive_edges_at(v) {
            if Some(e) == exclude {
                continue;
            }
            if self.current.head(e) != v {
                let w = self.g.edges()[e].other(v);
                self.gather(w, Some(e));
                self.real_fire(w);
            }
        }
    }

    fn transform(&mut self, target: &Orientation) {
        let alive: Vec<usize> = (0..self.g.edges().len())
            .filter(|&e| {
                let edge = &self.g.edges()[e];
                !self.peeled[edge.u] && !self.peeled[edge.v]
            })
            .collect();
        if alive.is_empty() {
            return;
        }
        let leaf = (0..self.g.vertex_count())
            .find(|&v| !self.peeled[v] && self.alive_edges_at(v).len() == 1)
            .expect("a tree with edges has a leaf");
        let e = self.alive_edges_at(leaf)[0];
        let parent = self.g.edges()[e].other(leaf);
        if target.head(e) == leaf {
            if self.current.head(e) == parent {
                self.gather(parent, Some(e));
                self.real_fire(parent);
            }
            self.peeled[leaf] = true;
            self.transform(target);
            debug_assert_eq!(self.current.head(e), leaf);
        } else {
            if self.current.head(e) == leaf {
                self.real_fire(leaf);
            }
            self.peeled[leaf] = true;
            self.transform(target);
            if self.current.head(e) == leaf {
                self.real_fire(leaf);
            }
        }
    }
}

/// A sequence of sink-firings on orientations that turns `from` into `to`
/// on a tree. Leaves are processed in vertex-declaration order.
pub fn orientation_path(
    g: &CoxeterGraph,
    from: &Orientation,
    to: &Orientation,
) -> Result<OrientationPath, GameError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    let mut walker = OrientationWalker {
        g,
        current: from.clone(),
        peeled: vec![false; g.vertex_count()],
        moves: Vec::new(),
        states: Vec::new(),
    };
    walker.transform(to);
    debug_assert_eq!(&walker.current, to);
    Ok(OrientationPath { moves: walker.moves, states: walker.states })
}

pub const TOUR_EDGE_CAP: usize = 20;

/// A play that starts at `start` and passes through all 2^n orientations of
/// a tree, as a concatenation of orientation paths.
pub fn orientation_tour(g: &CoxeterGraph, start: &Orientation) -> Result<OrientationPath, GameError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    let edges = g.edges().len();
    if edges > TOUR_EDGE_CAP {
        return Err(GameError::TooManyOrientations { edges, cap: TOUR_EDGE_CAP });
    }
    let mut moves = Vec::new();
    let mut states = Vec::new();
    let mut current = start.clone();
    for bits in 0..(1u64 << edges) {
        let next = Orientation::from_bits(g, bits);
        if next == *start {
            continue;
        }
        let leg = orientation_path(g, &current, &next)?;
        moves.extend(leg.moves);
        states.extend(leg.states);
        current = next;
    }
    Ok(OrientationPath { moves, states })
}

/// A position as a DOT digraph with value-labelled nodes.
pub fn position_dot(p: &GamePosition, g: &CoxeterGraph) -> String {
    let mut out = String::from("digraph position {\n");
    for v in 0..g.vertex_count() {
        out.push_str(&format!(
            "  {} [label=\"{}\\n{}\"];\n",
            g.vertex_name(v),
            g.vertex_name(v),
            p.values[v].render()
        ));
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let head = p.orientation.head(e);
        let tail = edge.other(head);
        out.push_str(&format!(
            "  {} -> {} [label=\"{}\"];\n",
            g.vertex_name(tail),
            g.vertex_name(head),
            edge.label
        ));
    }
    out.push_str("}\n");
    out
}
