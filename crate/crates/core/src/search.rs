//! Maximum-clique search.
//!
//! [`MaxCliqueSearch`] is the solver's engine: an iterative Bron–Kerbosch
//! with pivoting and two incumbent-driven prunes, one on a per-node upper
//! bound (core number or degree) and one on the size of the remaining
//! candidate set. It keeps an explicit stack of levels instead of
//! recursing, so deep cliques cannot overflow the call stack.
//!
//! [`reference_bk_max_clique`] and [`brute_force_max_clique`] are
//! independent implementations used as baselines and test oracles.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Subgraph};

/// Default node-count guard for [`brute_force_max_clique`].
pub const DEFAULT_ORACLE_GUARD: usize = 40;

/// A set of pairwise-adjacent nodes, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clique {
    members: Vec<NodeId>,
}

impl Clique {
    pub fn new(mut members: Vec<NodeId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Clique { members }
    }

    pub fn empty() -> Self {
        Clique::default()
    }

    pub fn single(v: NodeId) -> Self {
        Clique { members: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    /// Re-expresses a clique of `sub.graph` in the parent graph's ids.
    pub fn lift(&self, sub: &Subgraph) -> Clique {
        Clique::new(sub.map_to_parent(&self.members))
    }
}

/// Pairwise adjacency check. Errors if a member is not a node of `g`.
pub fn verify_clique(g: &Graph, c: &Clique) -> Result<bool> {
    for &v in c.members() {
        g.checked_degree(v)?;
    }
    let m = c.members();
    Ok(m.iter()
        .enumerate()
        .all(|(i, &u)| m[i + 1..].iter().all(|&v| g.has_edge(u, v))))
}

/// Per-node upper bound on the size of a clique through that node, minus
/// one. A candidate `q` is skipped when `bound(q) + 1 < |incumbent|`.
#[derive(Clone, Copy, Debug)]
pub enum BoundMode<'a> {
    /// Core numbers indexed by the searched graph's ids.
    CoreNumber(&'a [u32]),
    /// Degrees in the searched graph; used before cores exist.
    Degree,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Candidates popped from a work list.
    pub visited: u64,
    /// Candidates skipped by the per-node bound.
    pub bound_pruned: u64,
    /// Candidates skipped because too few candidates remained.
    pub size_pruned: u64,
    /// Levels pushed onto the explicit stack.
    pub expansions: u64,
    pub max_depth: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// `Some` only when a clique strictly larger than the incumbent was found.
    pub improved: Option<Clique>,
    pub stats: SearchStats,
}

/// One level of the search: the nodes consistent with the current clique
/// (`cand`), which of them are already processed (`done`), and the
/// positions still to branch on (`work`, popped in ascending id order).
struct Level {
    cand: Vec<NodeId>,
    done: Vec<bool>,
    work: Vec<u32>,
}

pub struct MaxCliqueSearch<'a> {
    graph: &'a Graph,
    bound: BoundMode<'a>,
    bound_prune: bool,
    size_prune: bool,
}

impl<'a> MaxCliqueSearch<'a> {
    pub fn new(graph: &'a Graph, bound: BoundMode<'a>) -> Self {
        if let BoundMode::CoreNumber(cores) = bound {
            assert_eq!(cores.len(), graph.node_count(), "one core number per node");
        }
        MaxCliqueSearch {
            graph,
            bound,
            bound_prune: true,
            size_prune: true,
        }
    }

    /// Toggles the per-node bound prune (on by default).
    pub fn bound_prune(mut self, on: bool) -> Self {
        self.bound_prune = on;
        self
    }

    /// Toggles the candidate-count prune (on by default).
    pub fn size_prune(mut self, on: bool) -> Self {
        self.size_prune = on;
        self
    }

    #[inline]
    fn node_bound(&self, v: NodeId) -> usize {
        match self.bound {
            BoundMode::CoreNumber(cores) => cores[v as usize] as usize,
            BoundMode::Degree => self.graph.degree(v),
        }
    }

    /// Searches for a clique with more than `incumbent_size` members.
    pub fn run(&self, incumbent_size: usize) -> SearchOutcome {
        let g = self.graph;
        let mut stats = SearchStats::default();
        let mut best_size = incumbent_size;
        let mut best: Option<Vec<NodeId>> = None;

        if g.is_empty() {
            return SearchOutcome {
                improved: None,
                stats,
            };
        }

        let root_cand: Vec<NodeId> = g.nodes().collect();
        let root_done = vec![false; root_cand.len()];
        let root = self.open_level(root_cand, root_done);
        let mut stack = vec![root];
        let mut clique: Vec<NodeId> = Vec::new();

        while let Some(level) = stack.last_mut() {
            let Some(pos) = level.work.pop() else {
                stack.pop();
                clique.pop();
                continue;
            };
            let q = level.cand[pos as usize];
            level.done[pos as usize] = true;
            stats.visited += 1;

            if self.bound_prune && self.node_bound(q) + 1 < best_size {
                stats.bound_pruned += 1;
                continue;
            }

            let (cand, done) = restrict(level, g.neighbors(q));
            let size = clique.len() + 1;
            if self.size_prune && cand.len() + size < best_size {
                stats.size_pruned += 1;
                continue;
            }
            if size > best_size {
                best_size = size;
                let mut found = clique.clone();
                found.push(q);
                best = Some(found);
            }
            if done.iter().any(|d| !d) {
                clique.push(q);
                let child = self.open_level(cand, done);
                stack.push(child);
                stats.expansions += 1;
                stats.max_depth = stats.max_depth.max(stack.len() - 1);
            }
        }

        SearchOutcome {
            improved: best.map(Clique::new),
            stats,
        }
    }

    /// Picks the highest-degree node of `cand` (lowest id on ties) as pivot
    /// and queues every unprocessed candidate outside its neighbourhood.
    fn open_level(&self, cand: Vec<NodeId>, done: Vec<bool>) -> Level {
        let g = self.graph;
        let mut pivot = cand[0];
        for &v in &cand[1..] {
            if g.degree(v) > g.degree(pivot) {
                pivot = v;
            }
        }
        let pivot_nbrs = g.neighbors(pivot);
        let adjacent = |v: NodeId| pivot_nbrs.binary_search(&v).is_ok();
        let mut work: Vec<u32> = (0..cand.len() as u32)
            .filter(|&i| !done[i as usize] && !adjacent(cand[i as usize]))
            .collect();
        work.reverse();
        Level { cand, done, work }
    }
}

/// Intersects a level's candidate set with a sorted neighbour list,
/// carrying the processed flags along.
fn restrict(level: &Level, nbrs: &[NodeId]) -> (Vec<NodeId>, Vec<bool>) {
    let cand = &level.cand;
    let cap = cand.len().min(nbrs.len());
    let mut out = Vec::with_capacity(cap);
    let mut done = Vec::with_capacity(cap);
    if cand.last().is_some_and(|&v| v as usize + 1 == cand.len()) {
        // every node up to the largest is a candidate: positions are ids
        for &v in nbrs.iter().take_while(|&&v| (v as usize) < cand.len()) {
            out.push(v);
            done.push(level.done[v as usize]);
        }
    } else if nbrs.len() * 8 < cand.len() {
        for &v in nbrs {
            if let Ok(i) = cand.binary_search(&v) {
                out.push(v);
                done.push(level.done[i]);
            }
        }
    } else if cand.len() * 8 < nbrs.len() {
        for (i, &v) in cand.iter().enumerate() {
            if nbrs.binary_search(&v).is_ok() {
                out.push(v);
                done.push(level.done[i]);
            }
        }
    } else {
        let (mut i, mut j) = (0, 0);
        while i < cand.len() && j < nbrs.len() {
            match cand[i].cmp(&nbrs[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(cand[i]);
                    done.push(level.done[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    (out, done)
}

/// Best clique of `g` that beats `incumbent`, or `incumbent` itself.
///
/// Only the incumbent's size is used, so it may live in another id space;
/// when nothing larger exists it is returned unchanged.
pub fn search_max_clique(g: &Graph, incumbent: &Clique, bound: BoundMode<'_>) -> Clique {
    MaxCliqueSearch::new(g, bound)
        .run(incumbent.len())
        .improved
        .unwrap_or_else(|| incumbent.clone())
}

/// Baseline maximum clique: recursive Bron–Kerbosch over a degeneracy
/// ordering with Tomita pivoting and an incumbent-size cutoff.
pub fn reference_bk_max_clique(g: &Graph) -> Clique {
    let n = g.node_count();
    if n == 0 {
        return Clique::empty();
    }
    let order = degeneracy_order(g);
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i;
    }
    let mut best: Vec<NodeId> = vec![order[0]];
    let mut current = Vec::new();
    for &v in &order {
        let (mut later, mut earlier) = (Vec::new(), Vec::new());
        for &u in g.neighbors(v) {
            if rank[u as usize] > rank[v as usize] {
                later.push(u);
            } else {
                earlier.push(u);
            }
        }
        if later.len() < best.len() {
            continue;
        }
        current.push(v);
        tomita(g, &mut current, later, earlier, &mut best);
        current.pop();
    }
    Clique::new(best)
}

fn tomita(
    g: &Graph,
    current: &mut Vec<NodeId>,
    mut cand: Vec<NodeId>,
    mut excluded: Vec<NodeId>,
    best: &mut Vec<NodeId>,
) {
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + cand.len() <= best.len() {
        return;
    }
    let count_in = |u: NodeId, set: &[NodeId]| {
        let nb = g.neighbors(u);
        set.iter().filter(|x| nb.binary_search(x).is_ok()).count()
    };
    let pivot = cand
        .iter()
        .chain(excluded.iter())
        .copied()
        .max_by_key(|&u| (count_in(u, &cand), Reverse(u)))
        .unwrap();
    let pivot_nbrs = g.neighbors(pivot);
    let branch: Vec<NodeId> = cand
        .iter()
        .copied()
        .filter(|v| pivot_nbrs.binary_search(v).is_err())
        .collect();
    for v in branch {
        let nb = g.neighbors(v);
        let next_cand: Vec<NodeId> = cand
            .iter()
            .copied()
            .filter(|x| nb.binary_search(x).is_ok())
            .collect();
        let next_excl: Vec<NodeId> = excluded
            .iter()
            .copied()
            .filter(|x| nb.binary_search(x).is_ok())
            .collect();
        current.push(v);
        tomita(g, current, next_cand, next_excl, best);
        current.pop();
        cand.retain(|&x| x != v);
        excluded.push(v);
    }
}

/// Smallest-last ordering via a lazy binary heap.
fn degeneracy_order(g: &Graph) -> Vec<NodeId> {
    let n = g.node_count();
    let mut deg: Vec<usize> = g.nodes().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, NodeId)>> =
        g.nodes().map(|v| Reverse((deg[v as usize], v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((d, v))) = heap.pop() {
        if removed[v as usize] || d != deg[v as usize] {
            continue;
        }
        removed[v as usize] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u as usize] {
                deg[u as usize] -= 1;
                heap.push(Reverse((deg[u as usize], u)));
            }
        }
    }
    order
}

/// Exhaustive maximum clique by plain Bron–Kerbosch (no pivot, no bounds).
/// Refuses graphs with more than `guard` nodes.
pub fn brute_force_max_clique(g: &Graph, guard: usize) -> Result<Clique> {
    if g.node_count() > guard {
        return Err(Error::GuardExceeded {
            nodes: g.node_count(),
            guard,
        });
    }
    fn expand(g: &Graph, current: &mut Vec<NodeId>, cand: &[NodeId], best: &mut Vec<NodeId>) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<NodeId> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            current.push(v);
            expand(g, current, &next, best);
            current.pop();
        }
    }
    let all: Vec<NodeId> = g.nodes().collect();
    let mut best = Vec::new();
    expand(g, &mut Vec::new(), &all, &mut best);
    Ok(Clique::new(best))
}
