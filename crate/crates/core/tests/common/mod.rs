//! Independent oracles shared by the integration tests. Nothing here calls
//! into the solver's search or peeling code.
#![allow(dead_code)]

use cubis::{Graph, NodeId};

/// Core numbers by repeated deletion: the k-core is whatever survives
/// removing nodes of degree `< k` until nothing changes.
pub fn naive_cores(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    let mut core = vec![0u32; n];
    let mut k = 1u32;
    loop {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] {
                    let d = g
                        .neighbors(v as NodeId)
                        .iter()
                        .filter(|&&u| alive[u as usize])
                        .count();
                    if (d as u32) < k {
                        alive[v] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.iter().any(|&a| a) {
            return core;
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
        k += 1;
    }
}

/// Bitset adjacency for the clique oracle.
struct Bits {
    words: usize,
    rows: Vec<u64>,
}

impl Bits {
    fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for (u, v) in g.edges() {
            let (u, v) = (u as usize, v as usize);
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        Bits { words, rows }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }
}

fn popcount(s: &[u64]) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

fn expand(bits: &Bits, current: &mut Vec<NodeId>, cand: Vec<u64>, best: &mut Vec<NodeId>) {
    if current.len() + popcount(&cand) <= best.len() {
        return;
    }
    let mut cand = cand;
    while let Some(word) = cand.iter().position(|&w| w != 0) {
        let v = word * 64 + cand[word].trailing_zeros() as usize;
        if current.len() + popcount(&cand) <= best.len() {
            return;
        }
        cand[word] &= !(1 << (v % 64));
        let next: Vec<u64> = cand.iter().zip(bits.row(v)).map(|(a, b)| a & b).collect();
        current.push(v as NodeId);
        if current.len() > best.len() {
            *best = current.clone();
        }
        expand(bits, current, next, best);
        current.pop();
    }
}

/// Maximum clique by plain include/exclude enumeration over bitsets with
/// only the trivial size bound.
pub fn oracle_max_clique(g: &Graph) -> Vec<NodeId> {
    let n = g.node_count();
    let bits = Bits::new(g);
    let mut all = vec![0u64; bits.words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut best = Vec::new();
    expand(&bits, &mut Vec::new(), all, &mut best);
    best
}

pub fn is_clique(g: &Graph, nodes: &[NodeId]) -> bool {
    nodes
        .iter()
        .enumerate()
        .all(|(i, &u)| nodes[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v)))
}

/// Path of the fixture directory.
pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}
