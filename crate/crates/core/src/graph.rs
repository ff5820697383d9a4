//! Immutable simple undirected graphs in compressed sparse row form.
//!
//! Node ids are dense `u32` indices. Every adjacency list is sorted and
//! free of duplicates and self-loops, so neighbourhood intersections are
//! linear merges or binary searches. Graphs are never mutated; pruning
//! steps build a [`Subgraph`] that remembers where each node came from.

use std::borrow::Cow;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Dense node index in `[0, node_count)`.
pub type NodeId = u32;

const ABSENT: NodeId = NodeId::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    labels: Option<Vec<String>>,
}

impl Default for Graph {
    fn default() -> Self {
        Self::empty()
    }
}

impl Graph {
    pub fn empty() -> Self {
        Graph {
            offsets: vec![0],
            targets: Vec::new(),
            labels: None,
        }
    }

    /// Builds a graph on `node_count` nodes from id pairs. Self-loops are
    /// dropped and parallel edges collapsed.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let edges: Vec<(NodeId, NodeId)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for x in [u, v] {
                if x as usize >= node_count {
                    return Err(Error::UnknownNode {
                        node: x,
                        node_count,
                    });
                }
            }
        }
        Ok(Self::from_checked_edges(node_count, &edges))
    }

    /// Builds a graph from labelled pairs. Labels are remapped to dense ids
    /// in first-appearance order and kept as the graph's label map.
    pub fn from_labeled_edges<I, L>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (L, L)>,
        L: AsRef<str>,
    {
        let mut builder = LabeledEdgeBuilder::default();
        for (a, b) in pairs {
            builder.push(a.as_ref(), b.as_ref());
        }
        builder.finish()
    }

    pub(crate) fn from_checked_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let mut degree = vec![0usize; node_count];
        for &(u, v) in edges {
            if u != v {
                degree[u as usize] += 1;
                degree[v as usize] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..node_count].to_vec();
        let mut targets = vec![0 as NodeId; *offsets.last().unwrap()];
        for &(u, v) in edges {
            if u != v {
                targets[fill[u as usize]] = v;
                fill[u as usize] += 1;
                targets[fill[v as usize]] = u;
                fill[v as usize] += 1;
            }
        }

        // sort each list, then compact away duplicates
        let mut write = 0;
        let mut compact_offsets = Vec::with_capacity(node_count + 1);
        compact_offsets.push(0);
        for v in 0..node_count {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            targets[lo..hi].sort_unstable();
            let mut last = None;
            for i in lo..hi {
                let t = targets[i];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
            compact_offsets.push(write);
        }
        targets.truncate(write);
        targets.shrink_to_fit();

        Graph {
            offsets: compact_offsets,
            targets,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.node_count(), "one label per node");
        self.labels = Some(labels);
        self
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    pub fn contains(&self, v: NodeId) -> bool {
        (v as usize) < self.node_count()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        0..self.node_count() as NodeId
    }

    /// Sorted neighbour list of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn checked_degree(&self, v: NodeId) -> Result<usize> {
        self.check(v)?;
        Ok(self.degree(v))
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Highest-degree node, lowest id on ties. `None` on the empty graph.
    pub fn max_degree_node(&self) -> Option<NodeId> {
        let mut best: Option<(usize, NodeId)> = None;
        for v in self.nodes() {
            let d = self.degree(v);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.map(|(_, v)| v)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External label of `v`, or its decimal id when the graph has none.
    pub fn label(&self, v: NodeId) -> Cow<'_, str> {
        match &self.labels {
            Some(labels) => Cow::Borrowed(labels[v as usize].as_str()),
            None => Cow::Owned(v.to_string()),
        }
    }

    /// Iterates each undirected edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownNode {
                node: v,
                node_count: self.node_count(),
            })
        }
    }

    /// Node-induced subgraph over `nodes` (duplicates ignored). Local ids
    /// follow ascending parent id.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<Subgraph> {
        for &v in nodes {
            self.check(v)?;
        }
        let mut keep = nodes.to_vec();
        keep.sort_unstable();
        keep.dedup();
        Ok(self.induced_sorted(keep))
    }

    /// Induced subgraph over every node for which `pred` holds.
    pub fn induced_by<F>(&self, mut pred: F) -> Subgraph
    where
        F: FnMut(NodeId) -> bool,
    {
        let keep: Vec<NodeId> = self.nodes().filter(|&v| pred(v)).collect();
        self.induced_sorted(keep)
    }

    /// Subgraph induced by `v` together with all of its neighbours.
    pub fn closed_neighborhood(&self, v: NodeId) -> Result<Subgraph> {
        self.check(v)?;
        let mut keep = Vec::with_capacity(self.degree(v) + 1);
        keep.push(v);
        keep.extend_from_slice(self.neighbors(v));
        keep.sort_unstable();
        Ok(self.induced_sorted(keep))
    }

    fn induced_sorted(&self, keep: Vec<NodeId>) -> Subgraph {
        let mut local = vec![ABSENT; self.node_count()];
        for (i, &v) in keep.iter().enumerate() {
            local[v as usize] = i as NodeId;
        }
        let mut offsets = Vec::with_capacity(keep.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for &v in &keep {
            // parent lists are sorted and local ids are monotone in parent
            // ids, so the filtered list stays sorted
            targets.extend(
                self.neighbors(v)
                    .iter()
                    .map(|&u| local[u as usize])
                    .filter(|&u| u != ABSENT),
            );
            offsets.push(targets.len());
        }
        Subgraph {
            graph: Graph {
                offsets,
                targets,
                labels: None,
            },
            parent: keep,
        }
    }
}

/// An induced subgraph plus the map from its local ids to the parent's ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub parent: Vec<NodeId>,
}

impl Subgraph {
    /// Wraps a whole graph as its own identity subgraph.
    pub fn identity(graph: Graph) -> Self {
        let parent = graph.nodes().collect();
        Subgraph { graph, parent }
    }

    pub fn to_parent(&self, v: NodeId) -> NodeId {
        self.parent[v as usize]
    }

    pub fn map_to_parent(&self, nodes: &[NodeId]) -> Vec<NodeId> {
        nodes.iter().map(|&v| self.to_parent(v)).collect()
    }
}

/// Incremental label-to-id assignment used by [`Graph::from_labeled_edges`]
/// and the file readers.
#[derive(Debug, Default)]
pub struct LabeledEdgeBuilder {
    ids: HashMap<String, NodeId>,
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
}

impl LabeledEdgeBuilder {
    pub fn with_capacity(edges: usize) -> Self {
        LabeledEdgeBuilder {
            edges: Vec::with_capacity(edges),
            ..Default::default()
        }
    }

    fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.ids.insert(label.to_owned(), id);
        self.labels.push(label.to_owned());
        id
    }

    pub fn push(&mut self, a: &str, b: &str) {
        let u = self.intern(a);
        let v = self.intern(b);
        self.edges.push((u, v));
    }

    pub fn finish(self) -> Graph {
        Graph::from_checked_edges(self.labels.len(), &self.edges).with_labels(self.labels)
    }
}

/// Number of common elements of two sorted slices.
pub fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.len() * 8 < large.len() {
        return small
            .iter()
            .filter(|x| large.binary_search(x).is_ok())
            .count();
    }
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < small.len() && j < large.len() {
        match small[i].cmp(&large[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
