//! Finite simple graphs, subset moves, and connectivity-preserving deletion.
//!
//! A *move* on a vertex subset `I` replaces some `r ∈ I` by a neighbour
//! `t ∉ I`. On a connected graph any two subsets of equal size are joined by
//! a finite sequence of moves; [`move_sequence`] constructs one by walking
//! the subset along a path, shifting every subset vertex met on the way one
//! slot forward. Vertices keep their labels in induced subgraphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("subsets have different sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("subset needs at least two vertices")]
    SubsetTooSmall,
    #[error("vertex {outside} outside the subset has exactly one neighbour ({neighbour}) in it")]
    HypothesisViolated { outside: usize, neighbour: usize },
    #[error("illegal move at step {step}: {reason}")]
    IllegalMove { step: usize, reason: String },
}

/// Undirected graph without loops or multiple edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    vertices: VertexSet,
    /// Each edge stored once as `(min, max)`.
    edges: BTreeSet<(usize, usize)>,
}

/// One move: `removed` leaves the subset and `added` enters along the edge
/// between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoveStep {
    pub removed: usize,
    pub added: usize,
}

impl Graph {
    /// Graph on `0..k` with no edges.
    pub fn empty(k: usize) -> Self {
        Graph {
            vertices: (0..k).collect(),
            edges: BTreeSet::new(),
        }
    }

    /// Graph on `0..k`; loops are dropped, duplicate edges merged.
    pub fn new(k: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(k);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Graph on an arbitrary vertex set with no edges.
    pub fn on(vertices: VertexSet) -> Self {
        Graph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    pub fn path(k: usize) -> Self {
        Graph::new(k, (1..k).map(|i| (i - 1, i))).expect("in range")
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
        Graph::new(k, edges).expect("in range")
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        for v in [a, b] {
            if !self.vertices.contains(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    fn check_subset(&self, subset: &VertexSet) -> Result<(), GraphError> {
        match subset.iter().find(|v| !self.vertices.contains(v)) {
            Some(&v) => Err(GraphError::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// Subgraph spanned by `subset`, keeping vertex labels.
    pub fn induced(&self, subset: &VertexSet) -> Graph {
        Graph {
            vertices: subset.intersection(&self.vertices).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| subset.contains(a) && subset.contains(b))
                .copied()
                .collect(),
        }
    }

    /// BFS distances from `source` to every reachable vertex.
    pub fn distances_from(&self, source: usize) -> BTreeMap<usize, usize> {
        let mut dist = BTreeMap::from([(source, 0)]);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[&v];
            for w in self.neighbours(v) {
                if !dist.contains_key(&w) {
                    dist.insert(w, dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest path from `from` to `to`, both endpoints included.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = BTreeMap::from([(from, from)]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.neighbours(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(v);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Empty and single-vertex graphs count as connected.
    pub fn is_connected(&self) -> bool {
        match self.vertices.first() {
            None => true,
            Some(&v) => self.distances_from(v).len() == self.vertices.len(),
        }
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if seen.contains(&v) {
                continue;
            }
            let comp: VertexSet = self.distances_from(v).into_keys().collect();
            seen.extend(&comp);
            out.push(comp);
        }
        out
    }
}

/// Applies one move, checking that it is legal.
pub fn apply_move(g: &Graph, current: &VertexSet, step: MoveStep) -> Result<VertexSet, String> {
    if !g.has_edge(step.removed, step.added) {
        return Err(format!("{{{}, {}}} is not an edge", step.removed, step.added));
    }
    if !current.contains(&step.removed) {
        return Err(format!("{} is not in the current subset", step.removed));
    }
    if current.contains(&step.added) {
        return Err(format!("{} is already in the current subset", step.added));
    }
    let mut next = current.clone();
    next.remove(&step.removed);
    next.insert(step.added);
    Ok(next)
}

/// Replays a move sequence from `start` and returns the final subset.
pub fn replay_moves(g: &Graph, start: &VertexSet, steps: &[MoveStep]) -> Result<VertexSet, GraphError> {
    steps.iter().enumerate().try_fold(start.clone(), |cur, (i, &s)| {
        apply_move(g, &cur, s).map_err(|reason| GraphError::IllegalMove { step: i, reason })
    })
}

/// Moves turning `from` into `to` on a connected graph.
///
/// Repeatedly picks the smallest `r ∈ I \ J` and `t ∈ J \ I`, takes a
/// shortest path `r = p_0, .., p_l = t`, and lets each subset vertex on the
/// path step forward to the position of the next one (the last one walks all
/// the way to `t`). The net effect replaces `r` by `t`, so `|I ∩ J|` grows by
/// one per round.
pub fn move_sequence(g: &Graph, from: &VertexSet, to: &VertexSet) -> Result<Vec<MoveStep>, GraphError> {
    g.check_subset(from)?;
    g.check_subset(to)?;
    if from.len() != to.len() {
        return Err(GraphError::SizeMismatch(from.len(), to.len()));
    }
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    let mut steps = Vec::new();
    let mut current = from.clone();
    while current != *to {
        let r = *current.difference(to).next().expect("sets differ with equal size");
        let t = *to.difference(&current).next().expect("sets differ with equal size");
        let path = g.shortest_path(r, t).ok_or(GraphError::NotConnected)?;
        let last = path.len() - 1;
        // Positions (before the end) of path vertices that lie in the subset.
        let stops: Vec<usize> = (0..last).filter(|&i| current.contains(&path[i])).collect();
        let mut target = last;
        for &start in stops.iter().rev() {
            for pos in start..target {
                steps.push(MoveStep {
                    removed: path[pos],
                    added: path[pos + 1],
                });
            }
            target = start;
        }
        current.remove(&r);
        current.insert(t);
    }
    Ok(steps)
}

/// Checks that every vertex outside `subset` has zero or at least two
/// neighbours in it.
pub fn check_deletion_hypothesis(g: &Graph, subset: &VertexSet) -> Result<(), GraphError> {
    for &t in g.vertices().difference(subset) {
        let inside: Vec<usize> = g.neighbours(t).filter(|v| subset.contains(v)).collect();
        if inside.len() == 1 {
            return Err(GraphError::HypothesisViolated {
                outside: t,
                neighbour: inside[0],
            });
        }
    }
    Ok(())
}

/// A vertex `s ∈ subset` whose removal leaves `g` connected.
///
/// Requires `g` connected, `|subset| >= 2`, and the hypothesis of
/// [`check_deletion_hypothesis`]. Picks `s` from a pair `(s, s')` in the
/// subset at maximal distance, smallest labels first; the result is verified
/// by BFS before returning.
pub fn deletable_vertex(g: &Graph, subset: &VertexSet) -> Result<usize, GraphError> {
    g.check_subset(subset)?;
    if subset.len() < 2 {
        return Err(GraphError::SubsetTooSmall);
    }
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    check_deletion_hypothesis(g, subset)?;
    let mut best: Option<(usize, usize)> = None;
    let mut best_dist = 0;
    for &s in subset {
        let dist = g.distances_from(s);
        for &t in subset.range(s + 1..) {
            let d = dist[&t];
            if best.is_none() || d > best_dist {
                best = Some((s, t));
                best_dist = d;
            }
        }
    }
    let (s, _) = best.expect("at least two vertices");
    let mut rest = g.vertices().clone();
    rest.remove(&s);
    if !g.induced(&rest).is_connected() {
        // Unreachable under the hypothesis; surfaced rather than hidden.
        return Err(GraphError::NotConnected);
    }
    Ok(s)
}
