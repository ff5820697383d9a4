//! Seeded random graph models for tests, benchmarks and the demo.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId};

/// G(n, p): every pair independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_checked_edges(n, &edges)
}

/// Barabási–Albert preferential attachment: each new node links to `m`
/// distinct earlier nodes chosen proportionally to degree. Mean degree
/// approaches `2m`.
pub fn preferential_attachment(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = m.max(1);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(n * m);
    // every edge endpoint, so a uniform pick is degree-proportional
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * n * m);
    let seed_nodes = (m + 1).min(n);
    for u in 0..seed_nodes as NodeId {
        for v in u + 1..seed_nodes as NodeId {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut chosen: Vec<NodeId> = Vec::with_capacity(m);
    for v in seed_nodes as NodeId..n as NodeId {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((v, t));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Graph::from_checked_edges(n, &edges)
}

/// Copy of `g` with every pair of `members` joined.
pub fn plant_clique(g: &Graph, members: &[NodeId]) -> Graph {
    let mut edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            edges.push((u, v));
        }
    }
    Graph::from_checked_edges(g.node_count(), &edges)
}

/// `k` distinct nodes of `0..n` chosen uniformly.
pub fn random_subset(n: usize, k: usize, seed: u64) -> Vec<NodeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<NodeId> = (0..n as NodeId).collect();
    all.shuffle(&mut rng);
    all.truncate(k);
    all.sort_unstable();
    all
}
