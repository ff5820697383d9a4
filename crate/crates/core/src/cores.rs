//! k-core decomposition by bucketed minimum-degree peeling.
//!
//! Runs in `O(n + m)`. Besides per-node core numbers the result keeps the
//! descending ladder of distinct core values and the nodes holding each
//! value, which is what CUBIS construction indexes into.

use serde::Serialize;

use crate::graph::{Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreDecomposition {
    core_of: Vec<u32>,
    ladder: Vec<u32>,
    nodes_by_core: Vec<Vec<NodeId>>,
}

impl CoreDecomposition {
    pub fn compute(g: &Graph) -> Self {
        let n = g.node_count();
        if n == 0 {
            return CoreDecomposition {
                core_of: Vec::new(),
                ladder: Vec::new(),
                nodes_by_core: Vec::new(),
            };
        }

        let mut degree: Vec<u32> = g.nodes().map(|v| g.degree(v) as u32).collect();
        let max_degree = *degree.iter().max().unwrap() as usize;

        // bin[d] = first position of degree-d nodes in `order`
        let mut bin = vec![0usize; max_degree + 1];
        for &d in &degree {
            bin[d as usize] += 1;
        }
        let mut start = 0;
        for b in bin.iter_mut() {
            let count = *b;
            *b = start;
            start += count;
        }
        // counting sort keeps ascending id order inside each bucket
        let mut order = vec![0 as NodeId; n];
        let mut pos = vec![0usize; n];
        {
            let mut next = bin.clone();
            for v in 0..n {
                let d = degree[v] as usize;
                pos[v] = next[d];
                order[next[d]] = v as NodeId;
                next[d] += 1;
            }
        }

        for i in 0..n {
            let v = order[i];
            let dv = degree[v as usize];
            for &u in g.neighbors(v) {
                let u = u as usize;
                let du = degree[u];
                if du > dv {
                    // swap u with the first node of its bucket, then shrink it
                    let pu = pos[u];
                    let pw = bin[du as usize];
                    let w = order[pw] as usize;
                    if u != w {
                        order.swap(pu, pw);
                        pos[u] = pw;
                        pos[w] = pu;
                    }
                    bin[du as usize] += 1;
                    degree[u] -= 1;
                }
            }
        }
        let core_of = degree;

        let mut ladder: Vec<u32> = core_of.clone();
        ladder.sort_unstable_by(|a, b| b.cmp(a));
        ladder.dedup();
        let mut slot = vec![usize::MAX; ladder[0] as usize + 1];
        for (i, &c) in ladder.iter().enumerate() {
            slot[c as usize] = i;
        }
        let mut nodes_by_core = vec![Vec::new(); ladder.len()];
        for (v, &c) in core_of.iter().enumerate() {
            nodes_by_core[slot[c as usize]].push(v as NodeId);
        }

        CoreDecomposition {
            core_of,
            ladder,
            nodes_by_core,
        }
    }

    pub fn core(&self, v: NodeId) -> u32 {
        self.core_of[v as usize]
    }

    pub fn core_numbers(&self) -> &[u32] {
        &self.core_of
    }

    /// Distinct core values, strictly descending.
    pub fn ladder(&self) -> &[u32] {
        &self.ladder
    }

    /// Nodes whose core number is `ladder()[index]`, ascending by id.
    pub fn nodes_at(&self, index: usize) -> &[NodeId] {
        &self.nodes_by_core[index]
    }

    pub fn c_max(&self) -> Option<u32> {
        self.ladder.first().copied()
    }

    pub fn nodes_with_core_at_least(&self, c: u32) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self
            .ladder
            .iter()
            .zip(&self.nodes_by_core)
            .take_while(|(&value, _)| value >= c)
            .flat_map(|(_, nodes)| nodes.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// `c_max + 1`, or 0 for the empty graph. No clique can be larger.
    pub fn clique_upper_bound(&self) -> usize {
        self.c_max().map_or(0, |c| c as usize + 1)
    }

    pub fn len(&self) -> usize {
        self.core_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core_of.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_with_pendant() -> Graph {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        edges.push((4, 5));
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn triangle() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.core_numbers(), &[2, 2, 2]);
        assert_eq!(d.ladder(), &[2]);
        assert_eq!(d.clique_upper_bound(), 3);
    }

    #[test]
    fn path() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.core_numbers(), &[1, 1, 1]);
        assert_eq!(d.ladder(), &[1]);
    }

    #[test]
    fn k5_pendant() {
        let d = CoreDecomposition::compute(&k5_with_pendant());
        assert_eq!(d.core_numbers(), &[4, 4, 4, 4, 4, 1]);
        assert_eq!(d.ladder(), &[4, 1]);
        assert_eq!(d.nodes_at(1), &[5]);
        assert_eq!(d.nodes_with_core_at_least(4), vec![0, 1, 2, 3, 4]);
        assert_eq!(d.nodes_with_core_at_least(0).len(), 6);
        assert!(d.nodes_with_core_at_least(5).is_empty());
        assert_eq!(d.clique_upper_bound(), 5);
    }

    #[test]
    fn isolated_nodes_have_core_zero() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.core_numbers(), &[1, 1, 0]);
        assert_eq!(d.ladder(), &[1, 0]);
    }

    #[test]
    fn empty() {
        let d = CoreDecomposition::compute(&Graph::empty());
        assert!(d.is_empty());
        assert_eq!(d.clique_upper_bound(), 0);
        assert_eq!(d.c_max(), None);
    }
}
