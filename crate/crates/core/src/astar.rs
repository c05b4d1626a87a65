//! Exact unordered tree edit distance by A* search over partial mappings.
//!
//! The search assigns the nodes of `x` in preorder. A search node maps
//! `x_1 .. x_{i-1}` and has the roots mapped onto each other. Expanding it
//! either deletes `x_i` or maps it to an unused descendant `y_j` of `y_l`,
//! where `(k, l)` is the mapped pair with the lowest `x_k` above `x_i`; the
//! nodes strictly between `y_l` and `y_j` are inserted on the way. Each child
//! is ranked by its cost so far plus three independent lower bounds: one for
//! the subtrees below the new pair, one for the rest of the `(k, l)`
//! subtrees, and one (`h^p`) for everything outside of them.
//!
//! `h^p` only depends on parts of the mapping that are frozen while the
//! search stays inside the `(k, l)` subtrees, so it is computed once when a
//! search node first makes `(k, l)` active and then shared, through an
//! ancestor-frame chain, by all search nodes below it.
//!
//! Search nodes live in an arena and only store the pair they add, their
//! costs, and two `n`-bit sets (substituted and inserted right nodes).

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::rc::Rc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::IndexSet;
use crate::cost::{CostError, CostFunction, CostMatrix};
use crate::heuristics::{Heuristic, HeuristicKind};
use crate::mapping::{Mapping, MappingClass};
use crate::tree::{Label, Tree};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("input tree is empty")]
    EmptyTree,
    #[error("search budget exhausted after {} polls; best lower bound {lower_bound}", stats.polls)]
    BudgetExhausted {
        lower_bound: f64,
        stats: SearchStats,
    },
    #[error("tree sizes ({m}, {n}) do not match the cost matrix ({rows}, {cols})")]
    ShapeMismatch {
        m: usize,
        n: usize,
        rows: usize,
        cols: usize,
    },
    #[error(transparent)]
    Cost(#[from] CostError),
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub heuristic: HeuristicKind,
    /// Abort after this many polled partial mappings.
    pub max_polls: Option<u64>,
    /// Abort after this much wall time.
    pub max_time: Option<Duration>,
}

impl SearchOptions {
    pub fn new(heuristic: HeuristicKind) -> Self {
        SearchOptions {
            heuristic,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SearchStats {
    /// Partial mappings taken off the queue.
    pub polls: u64,
    pub pushes: u64,
    pub peak_queue: usize,
    pub heuristic_evaluations: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct DistanceResult {
    pub distance: f64,
    pub mapping: Mapping,
    pub stats: SearchStats,
}

/// Distance with the roots of `x` and `y` mapped onto each other.
pub fn astar_uted<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
    heuristic: HeuristicKind,
) -> Result<DistanceResult, SearchError> {
    astar_uted_with(x, y, c, &SearchOptions::new(heuristic))
}

pub fn astar_uted_with<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
    options: &SearchOptions,
) -> Result<DistanceResult, SearchError> {
    if x.is_empty() || y.is_empty() {
        return Err(SearchError::EmptyTree);
    }
    let costs = CostMatrix::new(x, y, c)?;
    astar_uted_costs(x, y, &costs, options)
}

/// Unrestricted distance: both trees are wrapped in a placeholder root, so
/// the original roots may be deleted, inserted, or mapped below each other.
/// The returned mapping refers to the original (unwrapped) indices.
pub fn astar_uted_forest_entry<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
    options: &SearchOptions,
) -> Result<DistanceResult, SearchError> {
    if x.is_empty() || y.is_empty() {
        return Err(SearchError::EmptyTree);
    }
    let costs = CostMatrix::new(x, y, c)?;
    astar_uted_forest_costs(x, y, &costs, options)
}

/// [`astar_uted_forest_entry`] on a precomputed cost matrix for `(x, y)`.
pub fn astar_uted_forest_costs(
    x: &Tree,
    y: &Tree,
    costs: &CostMatrix,
    options: &SearchOptions,
) -> Result<DistanceResult, SearchError> {
    check_shape(x, y, costs)?;
    let placeholder = Label::new("^").expect("valid label");
    let xp = x.with_placeholder_root(placeholder.clone());
    let yp = y.with_placeholder_root(placeholder);
    let wrapped = costs.with_placeholder_roots();
    let mut result = astar_uted_costs(&xp, &yp, &wrapped, options)?;
    let unwrap = |i: usize| i.saturating_sub(1);
    let pairs = result
        .mapping
        .pairs()
        .iter()
        .filter(|&&p| p != (1, 1))
        .map(|&(i, j)| (unwrap(i), unwrap(j)))
        .collect();
    result.mapping = Mapping::new(pairs).with_class(MappingClass::Unordered);
    Ok(result)
}

fn check_shape(x: &Tree, y: &Tree, costs: &CostMatrix) -> Result<(), SearchError> {
    if x.is_empty() || y.is_empty() {
        return Err(SearchError::EmptyTree);
    }
    if costs.m() != x.len() || costs.n() != y.len() {
        return Err(SearchError::ShapeMismatch {
            m: x.len(),
            n: y.len(),
            rows: costs.m(),
            cols: costs.n(),
        });
    }
    Ok(())
}

/// Root-to-root search on a precomputed cost matrix for `(x, y)`.
pub fn astar_uted_costs(
    x: &Tree,
    y: &Tree,
    costs: &CostMatrix,
    options: &SearchOptions,
) -> Result<DistanceResult, SearchError> {
    check_shape(x, y, costs)?;
    Search::new(x, y, costs, options).run()
}

/// Mapped ancestor pair `(k, l)` together with its lazily computed outer bound.
#[derive(Debug)]
struct Frame {
    k: usize,
    l: usize,
    outer_bound: Cell<Option<f64>>,
    up: Option<Rc<Frame>>,
}

#[derive(Debug)]
struct SearchNode {
    predecessor: Option<usize>,
    /// The pair this node adds; `(i, 0)` for a deletion.
    pair: (usize, usize),
    cost: f64,
    frontier: usize,
    frames: Rc<Frame>,
    substituted: IndexSet,
    inserted: IndexSet,
}

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    f: f64,
    frontier: usize,
    id: usize,
}

// Max-heap order: lowest f first, then the deepest frontier, then FIFO.
impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then(self.frontier.cmp(&other.frontier))
            .then(other.id.cmp(&self.id))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

struct Search<'a> {
    x: &'a Tree,
    y: &'a Tree,
    costs: &'a CostMatrix,
    options: &'a SearchOptions,
    heuristic: Heuristic,
    arena: Vec<SearchNode>,
    queue: BinaryHeap<QueueEntry>,
    stats: SearchStats,
    left: Vec<usize>,
    right: Vec<usize>,
    path: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(x: &'a Tree, y: &'a Tree, costs: &'a CostMatrix, options: &'a SearchOptions) -> Self {
        Search {
            x,
            y,
            costs,
            options,
            heuristic: Heuristic::new(options.heuristic),
            arena: Vec::new(),
            queue: BinaryHeap::new(),
            stats: SearchStats::default(),
            left: Vec::new(),
            right: Vec::new(),
            path: Vec::new(),
        }
    }

    fn bound(
        &mut self,
        left: impl IntoIterator<Item = usize>,
        right: impl IntoIterator<Item = usize>,
    ) -> f64 {
        self.left.clear();
        self.left.extend(left);
        self.right.clear();
        self.right.extend(right);
        self.heuristic.bound(self.costs, &self.left, &self.right)
    }

    fn push(&mut self, node: SearchNode, f: f64) {
        let entry = QueueEntry {
            f,
            frontier: node.frontier,
            id: self.arena.len(),
        };
        self.arena.push(node);
        self.queue.push(entry);
        self.stats.pushes += 1;
        self.stats.peak_queue = self.stats.peak_queue.max(self.queue.len());
    }

    fn run(mut self) -> Result<DistanceResult, SearchError> {
        let start = Instant::now();
        let (m, n) = (self.x.len(), self.y.len());

        let mut substituted = IndexSet::with_capacity(n + 1);
        substituted.insert(1);
        let root_frame = Rc::new(Frame {
            k: 1,
            l: 1,
            outer_bound: Cell::new(Some(0.0)),
            up: None,
        });
        let cost = self.costs.get(1, 1);
        let f = cost + self.bound(2..=m, 2..=n);
        self.push(
            SearchNode {
                predecessor: None,
                pair: (1, 1),
                cost,
                frontier: 2,
                frames: root_frame,
                substituted,
                inserted: IndexSet::with_capacity(n + 1),
            },
            f,
        );

        let mut max_polled_f = f64::NEG_INFINITY;
        while let Some(entry) = self.queue.pop() {
            self.stats.polls += 1;
            max_polled_f = max_polled_f.max(entry.f);
            let over_polls = self
                .options
                .max_polls
                .is_some_and(|limit| self.stats.polls > limit);
            let over_time = self
                .options
                .max_time
                .is_some_and(|limit| start.elapsed() > limit);
            if over_polls || over_time {
                self.stats.elapsed = start.elapsed();
                self.stats.heuristic_evaluations = self.heuristic.evaluations();
                return Err(SearchError::BudgetExhausted {
                    lower_bound: entry.f,
                    stats: self.stats,
                });
            }

            let id = entry.id;
            if self.arena[id].frontier > m {
                let result = self.complete(id, start);
                debug_assert!(
                    result.distance + 1e-9 * (1.0 + result.distance.abs()) >= max_polled_f,
                    "solution {} below a polled lower bound {}",
                    result.distance,
                    max_polled_f
                );
                return Ok(result);
            }
            self.expand(id);
        }
        unreachable!(
            "the deletion child always exists, so the queue cannot run dry before a goal is polled"
        )
    }

    fn complete(&mut self, id: usize, start: Instant) -> DistanceResult {
        let node = &self.arena[id];
        let mut pairs = Vec::with_capacity(self.x.len() + self.y.len());
        let mut cursor = Some(id);
        while let Some(c) = cursor {
            pairs.push(self.arena[c].pair);
            cursor = self.arena[c].predecessor;
        }
        pairs.reverse();
        let mut distance = node.cost;
        for j in 1..=self.y.len() {
            if !node.substituted.contains(j) {
                pairs.push((0, j));
                if !node.inserted.contains(j) {
                    distance += self.costs.insertion(j);
                }
            }
        }
        self.stats.elapsed = start.elapsed();
        self.stats.heuristic_evaluations = self.heuristic.evaluations();
        DistanceResult {
            distance,
            mapping: Mapping::new(pairs).with_class(MappingClass::Unordered),
            stats: self.stats,
        }
    }

    /// Outer bound `h^p` for the active frame, computed on first use.
    fn outer_bound(&mut self, id: usize) -> f64 {
        let frame = Rc::clone(&self.arena[id].frames);
        if let Some(v) = frame.outer_bound.get() {
            return v;
        }
        let (x, y) = (self.x, self.y);
        let (m, n) = (x.len(), y.len());
        let (k_end, l, l_end) = (x.subtree_end(frame.k), frame.l, y.subtree_end(frame.l));
        let node = &self.arena[id];
        let right: Vec<usize> = (1..=n)
            .filter(|&j| {
                (j < l || j > l_end) && !node.substituted.contains(j) && !node.inserted.contains(j)
            })
            .collect();
        let v = self.bound(k_end + 1..=m, right);
        frame.outer_bound.set(Some(v));
        v
    }

    fn expand(&mut self, id: usize) {
        let (x, y) = (self.x, self.y);
        let i = self.arena[id].frontier;
        let (k, l) = (self.arena[id].frames.k, self.arena[id].frames.l);
        debug_assert!(x.is_ancestor(k, i));
        let outer = self.outer_bound(id);
        let (i_end, k_end, l_end) = (x.subtree_end(i), x.subtree_end(k), y.subtree_end(l));
        let base_cost = self.arena[id].cost;

        // Deletion child.
        let free_in_l: Vec<usize> = (l + 1..=l_end).filter(|&j| !self.is_used(id, j)).collect();
        let h0 = self.bound(i + 1..=k_end, free_in_l.iter().copied()) + outer;
        let child = self.child(id, (i, 0), base_cost + self.costs.deletion(i), None, &[]);
        self.push(child, base_cost + self.costs.deletion(i) + h0);

        // Substitution children.
        for &j in &free_in_l {
            let mut path = std::mem::take(&mut self.path);
            let ok = eligible(
                y,
                l,
                j,
                &self.arena[id].substituted,
                &self.arena[id].inserted,
                &mut path,
            );
            if ok {
                let mut cost = base_cost + self.costs.get(i, j);
                for &p in &path {
                    cost += self.costs.insertion(p);
                }
                let child = self.child(id, (i, j), cost, Some(i_end > i), &path);
                let j_end = y.subtree_end(j);
                let below: Vec<usize> = (j + 1..=j_end).filter(|&q| !used_in(&child, q)).collect();
                let beside: Vec<usize> = free_in_l
                    .iter()
                    .copied()
                    .filter(|&q| (q < j || q > j_end) && !path.contains(&q))
                    .collect();
                let h = self.bound(i + 1..=i_end, below)
                    + self.bound(i_end + 1..=k_end, beside)
                    + outer;
                self.push(child, cost + h);
            }
            self.path = path;
        }
    }

    fn is_used(&self, id: usize, j: usize) -> bool {
        used_in(&self.arena[id], j)
    }

    /// Child of `id` adding `pair` (and inserting `path`). `opens_frame` is
    /// `Some(true)` when the new pair has x-descendants to be mapped below it.
    fn child(
        &self,
        id: usize,
        pair: (usize, usize),
        cost: f64,
        opens_frame: Option<bool>,
        path: &[usize],
    ) -> SearchNode {
        let parent = &self.arena[id];
        let (i, j) = pair;
        let next = i + 1;
        let mut frames = Rc::clone(&parent.frames);
        if opens_frame == Some(true) {
            frames = Rc::new(Frame {
                k: i,
                l: j,
                outer_bound: Cell::new(None),
                up: Some(frames),
            });
        } else if next <= self.x.len() {
            while !self.x.is_ancestor(frames.k, next) {
                frames = Rc::clone(
                    frames
                        .up
                        .as_ref()
                        .expect("the root frame is an ancestor of every node"),
                );
            }
        }
        let mut substituted = parent.substituted.clone();
        let mut inserted = parent.inserted.clone();
        if j > 0 {
            substituted.insert(j);
        }
        for &p in path {
            inserted.insert(p);
        }
        SearchNode {
            predecessor: Some(id),
            pair,
            cost,
            frontier: next,
            frames,
            substituted,
            inserted,
        }
    }
}

fn used_in(node: &SearchNode, j: usize) -> bool {
    node.substituted.contains(j) || node.inserted.contains(j)
}

/// Whether `x_i` may be mapped to `y_j` below the active pair `(k, l)`, given
/// the right nodes already substituted or inserted. On success, `inserts`
/// holds the nodes strictly between `y_l` and `y_j` that still need to be
/// inserted.
///
/// `y_j` is rejected if it is used, if it lies below a substituted node
/// under `y_l`, or if a substituted node lies below it: any of these would
/// break ancestry, because the partner of that node was mapped before `x_i`
/// and is therefore not an ancestor of `x_i` (nor a descendant).
fn eligible(
    y: &Tree,
    l: usize,
    j: usize,
    substituted: &IndexSet,
    inserted: &IndexSet,
    inserts: &mut Vec<usize>,
) -> bool {
    inserts.clear();
    if j <= l || !y.is_ancestor(l, j) || substituted.contains(j) || inserted.contains(j) {
        return false;
    }
    if substituted.any_in(j + 1, y.subtree_end(j)) {
        return false;
    }
    let mut p = y.parent(j).expect("j lies strictly below l");
    while p != l {
        if substituted.contains(p) {
            return false;
        }
        if !inserted.contains(p) {
            inserts.push(p);
        }
        p = y.parent(p).expect("l is an ancestor of j");
    }
    inserts.reverse();
    true
}

/// A materialized partial mapping: the state of one A* search node.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialMapping {
    pairs: Vec<(usize, usize)>,
    frontier: usize,
    substituted: IndexSet,
    inserted: IndexSet,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartialMappingError {
    #[error("left node {0} is still unmapped")]
    Incomplete(usize),
    #[error("pair ({0}, {1}) is out of bounds or repeats an index")]
    BadPair(usize, usize),
    #[error("left indices must form a prefix 1..i")]
    NotAPrefix,
}

impl PartialMapping {
    /// Builds a partial mapping from pairs whose left indices form `1..i`
    /// (right-only pairs `(0, j)` are insertions).
    pub fn from_pairs(
        x: &Tree,
        y: &Tree,
        pairs: Vec<(usize, usize)>,
    ) -> Result<Self, PartialMappingError> {
        let (m, n) = (x.len(), y.len());
        let mut seen_left = vec![false; m + 1];
        let mut substituted = IndexSet::with_capacity(n + 1);
        let mut inserted = IndexSet::with_capacity(n + 1);
        for &(i, j) in &pairs {
            if i > m
                || j > n
                || (i == 0 && j == 0)
                || (i > 0 && seen_left[i])
                || (j > 0 && (substituted.contains(j) || inserted.contains(j)))
            {
                return Err(PartialMappingError::BadPair(i, j));
            }
            if i > 0 {
                seen_left[i] = true;
            }
            match (i, j) {
                (_, 0) => {}
                (0, j) => inserted.insert(j),
                (_, j) => substituted.insert(j),
            }
        }
        let frontier = seen_left[1..]
            .iter()
            .position(|&s| !s)
            .map_or(m + 1, |p| p + 1);
        if seen_left[frontier.min(m + 1)..].iter().any(|&s| s) {
            return Err(PartialMappingError::NotAPrefix);
        }
        Ok(PartialMapping {
            pairs,
            frontier,
            substituted,
            inserted,
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Smallest unmapped left index (`m + 1` when all are mapped).
    pub fn frontier(&self) -> usize {
        self.frontier
    }

    /// Mapped pair `(k, l)`, `l > 0`, with the largest `k` that is an
    /// ancestor of the frontier node.
    pub fn active_pair(&self, x: &Tree) -> Option<(usize, usize)> {
        let i = self.frontier;
        self.pairs
            .iter()
            .copied()
            .filter(|&(k, l)| k > 0 && l > 0 && i <= x.len() && x.is_ancestor(k, i))
            .max_by_key(|&(k, _)| k)
    }

    /// Candidate right nodes for the frontier node under the active pair `(k, l)`.
    pub fn eligible_substitutions(&self, l: usize, y: &Tree) -> Vec<usize> {
        let mut scratch = Vec::new();
        (l + 1..=y.subtree_end(l))
            .filter(|&j| eligible(y, l, j, &self.substituted, &self.inserted, &mut scratch))
            .collect()
    }

    /// Adds `(0, j)` for every right node not yet in the mapping.
    pub fn complete_mapping(&self, x: &Tree, y: &Tree) -> Result<Mapping, PartialMappingError> {
        if self.frontier <= x.len() {
            return Err(PartialMappingError::Incomplete(self.frontier));
        }
        let mut pairs = self.pairs.clone();
        pairs.extend(
            (1..=y.len())
                .filter(|&j| !self.substituted.contains(j) && !self.inserted.contains(j))
                .map(|j| (0, j)),
        );
        Ok(Mapping::new(pairs).with_class(MappingClass::Unordered))
    }
}
