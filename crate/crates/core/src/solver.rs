//! Decomposition-based exact maximum clique.
//!
//! The pipeline:
//!
//! 1. **Pre-prune.** Find a clique `M` in the closed neighbourhood of a
//!    maximum-degree node, then drop every node of degree `< |M| - 1`.
//! 2. **Cores.** Compute core numbers of the residual graph `G'` once.
//! 3. **CUBIS-1.** Search the subgraph induced by the `topl` highest core
//!    values (with `topl = 1` this is the `c_max`-core).
//! 4. **CUBIS-2.** If a node below that band could still sit in a larger
//!    clique, take the band of core values `c` with `c + 1 > |M|`, filter
//!    it with a per-node necessary-condition test, add the kept nodes'
//!    higher-core neighbours, and search the induced subgraph.
//!
//! Early exits between the stages compare `|M|` against the best clique
//! size the remaining graph could still hold.

use web_time::Instant;

use serde::{Deserialize, Serialize};

use crate::cores::CoreDecomposition;
use crate::error::{Error, Result};
use crate::graph::{intersection_size, Graph, NodeId, Subgraph};
use crate::search::{verify_clique, BoundMode, Clique, MaxCliqueSearch, DEFAULT_ORACLE_GUARD};

/// Which neighbours of a band node take part in its assessment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborFloor {
    /// Neighbours whose core number is at least the band floor `min(H)`.
    /// Exact: every band member of a larger clique sees all other members.
    #[default]
    BandFloor,
    /// Neighbours whose core number is at least the assessed node's own.
    /// Cheaper, but can reject a member of a larger clique whose other
    /// members sit lower in the band.
    OwnCore,
}

fn default_topl() -> usize {
    1
}

fn default_true() -> bool {
    true
}

fn default_guard() -> usize {
    DEFAULT_ORACLE_GUARD
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveConfig {
    #[serde(default = "default_topl")]
    pub topl: usize,
    /// Strict `>` early-exit comparisons; `false` uses `>=`.
    #[serde(default = "default_true")]
    pub strict_bounds: bool,
    #[serde(default = "default_true")]
    pub further_pruning: bool,
    #[serde(skip_serializing, default)]
    pub neighbor_floor: NeighborFloor,
    #[serde(skip_serializing, default = "default_guard")]
    pub oracle_guard: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            topl: 1,
            strict_bounds: true,
            further_pruning: true,
            neighbor_floor: NeighborFloor::default(),
            oracle_guard: DEFAULT_ORACLE_GUARD,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.topl == 0 {
            return Err(Error::Config("topl must be at least 1".into()));
        }
        Ok(())
    }

    /// `|M|` exceeds (or, inclusive, reaches) `limit`.
    fn exceeds(&self, size: usize, limit: usize) -> bool {
        if self.strict_bounds {
            size > limit
        } else {
            size >= limit
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStats {
    pub pre_pruned_nodes: usize,
    pub heuristic_clique_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubisStats {
    pub nodes: usize,
    pub edges: usize,
    /// Construction plus search, in seconds at millisecond resolution.
    pub seconds: f64,
}

/// Per-network summary; serializes to the stable JSON report schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub network: String,
    pub n: usize,
    pub m: usize,
    pub pre_pruned_nodes: usize,
    pub heuristic_clique_size: usize,
    pub cubis1: Option<CubisStats>,
    pub cubis2: Option<CubisStats>,
    pub omega: usize,
    pub clique: Vec<String>,
    pub core_seconds: f64,
    pub total_seconds: f64,
    pub config: SolveConfig,
}

/// Where the pipeline stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    EmptyGraph,
    /// `|M|` against the residual node count.
    Residual,
    /// `|M|` against `c_max + 1`.
    CoreBound,
    /// `|M|` against the best core value below the CUBIS-1 band.
    AfterFirstCubis,
    /// No core value below the band can host a larger clique.
    EmptyBand,
    Complete,
}

/// Intermediate sets, for inspection and visualisation. Node ids refer to
/// the input graph.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SolveTrace {
    pub heuristic: Clique,
    pub residual: Vec<NodeId>,
    pub ladder: Vec<u32>,
    pub effective_topl: usize,
    pub band: Vec<u32>,
    pub cubis1: Vec<NodeId>,
    pub cubis2: Option<Vec<NodeId>>,
    pub assessed: usize,
    pub kept: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub clique: Clique,
    pub exit: Exit,
    pub report: RunReport,
    pub trace: SolveTrace,
}

pub struct PrePruned {
    pub residual: Subgraph,
    pub clique: Clique,
    pub stats: PruneStats,
}

/// Heuristic clique from the closed neighbourhood of a maximum-degree node
/// (lowest id on ties), then removal of every node of degree `< |M| - 1`.
pub fn pre_prune(g: &Graph) -> Result<PrePruned> {
    let hub = g.max_degree_node().ok_or(Error::EmptyGraph)?;
    let local = g.closed_neighborhood(hub)?;
    let hub_local = local.parent.binary_search(&hub).unwrap() as NodeId;
    let seed = Clique::single(hub_local);
    let found = MaxCliqueSearch::new(&local.graph, BoundMode::Degree)
        .run(seed.len())
        .improved
        .unwrap_or(seed);
    let clique = found.lift(&local);

    let min_degree = clique.len().saturating_sub(1);
    let residual = g.induced_by(|v| g.degree(v) >= min_degree);
    let stats = PruneStats {
        pre_pruned_nodes: g.node_count() - residual.graph.node_count(),
        heuristic_clique_size: clique.len(),
    };
    Ok(PrePruned {
        residual,
        clique,
        stats,
    })
}

/// Number of leading ladder values usable as the CUBIS-1 band: at most
/// `topl`, and no further than the last value `>= incumbent`, but never
/// fewer than one.
pub fn effective_topl(d: &CoreDecomposition, topl: usize, incumbent: usize) -> usize {
    let admissible = d
        .ladder()
        .iter()
        .take_while(|&&c| c as usize >= incumbent)
        .count();
    topl.min(admissible).min(d.ladder().len()).max(1)
}

/// Subgraph of `gp` induced by the nodes whose core number is among the
/// first `topl` ladder values (after clamping).
pub fn construct_first_cubis(
    gp: &Graph,
    d: &CoreDecomposition,
    topl: usize,
    incumbent: usize,
) -> Result<Subgraph> {
    if d.ladder().is_empty() {
        return Err(Error::EmptyLadder);
    }
    let k = effective_topl(d, topl, incumbent);
    let nodes = d.nodes_with_core_at_least(d.ladder()[k - 1]);
    gp.induced_subgraph(&nodes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assessment {
    pub keep: bool,
    /// Neighbours with core number above the band; empty unless kept.
    pub high_neighbors: Vec<NodeId>,
}

/// Necessary-condition test for a band node `i` to lie in a clique larger
/// than `omega1`.
///
/// Every neighbour `j` of `i` with core number `>= floor` is scanned in
/// ascending degree order. `j` is satisfied when it has more than
/// `omega1 - 2` neighbours among those same nodes. `i` is kept once more
/// than `omega1 - 1` neighbours are satisfied and rejected once the
/// unsatisfied ones exceed `|N_i| - (omega1 - 1)` or the scan runs out.
pub fn assess_node(
    gp: &Graph,
    d: &CoreDecomposition,
    i: NodeId,
    omega1: usize,
    band_top: u32,
    floor: u32,
) -> Assessment {
    let reject = Assessment {
        keep: false,
        high_neighbors: Vec::new(),
    };
    let candidates: Vec<NodeId> = gp
        .neighbors(i)
        .iter()
        .copied()
        .filter(|&j| d.core(j) >= floor)
        .collect();
    if candidates.len() < omega1 {
        return reject;
    }

    let mut by_degree = candidates.clone();
    by_degree.sort_by_key(|&j| (gp.degree(j), j));

    let omega1 = omega1 as i64;
    let unsat_limit = candidates.len() as i64 - (omega1 - 1);
    let (mut sat, mut unsat) = (0i64, 0i64);
    let mut keep = false;
    for &j in &by_degree {
        let shared = intersection_size(&candidates, gp.neighbors(j)) as i64;
        if shared > omega1 - 2 {
            sat += 1;
            if sat > omega1 - 1 {
                keep = true;
                break;
            }
        } else {
            unsat += 1;
            if unsat > unsat_limit {
                break;
            }
        }
    }
    if !keep {
        return reject;
    }
    Assessment {
        keep,
        high_neighbors: gp
            .neighbors(i)
            .iter()
            .copied()
            .filter(|&p| d.core(p) > band_top)
            .collect(),
    }
}

/// Outcome of CUBIS-2 construction.
pub struct SecondCubis {
    pub subgraph: Subgraph,
    /// Core values `c` below the CUBIS-1 band with `c + 1 > |M|`.
    pub band: Vec<u32>,
    pub assessed: usize,
    pub kept: usize,
}

/// Builds CUBIS-2 below the first `topl` ladder values, or `None` when no
/// lower core value can host a clique larger than `incumbent`.
pub fn construct_second_cubis(
    gp: &Graph,
    d: &CoreDecomposition,
    topl: usize,
    incumbent: usize,
    cfg: &SolveConfig,
) -> Option<SecondCubis> {
    let ladder = d.ladder();
    let start = topl.min(ladder.len());
    let band_len = ladder[start..]
        .iter()
        .take_while(|&&c| c as usize + 1 > incumbent)
        .count();
    if band_len == 0 {
        return None;
    }
    let band: Vec<u32> = ladder[start..start + band_len].to_vec();
    let band_top = band[0];
    let band_floor = *band.last().unwrap();

    let band_nodes = (start..start + band_len).flat_map(|k| d.nodes_at(k).iter().copied());
    let mut selected: Vec<NodeId> = Vec::new();
    let (mut assessed, mut kept) = (0, 0);
    for i in band_nodes {
        assessed += 1;
        let high: Vec<NodeId> = if cfg.further_pruning {
            let floor = match cfg.neighbor_floor {
                NeighborFloor::BandFloor => band_floor,
                NeighborFloor::OwnCore => d.core(i),
            };
            let a = assess_node(gp, d, i, incumbent, band_top, floor);
            if !a.keep {
                continue;
            }
            a.high_neighbors
        } else {
            gp.neighbors(i)
                .iter()
                .copied()
                .filter(|&p| d.core(p) > band_top)
                .collect()
        };
        kept += 1;
        selected.push(i);
        selected.extend(high);
    }
    let subgraph = gp
        .induced_subgraph(&selected)
        .expect("band nodes and their neighbours belong to the graph");
    Some(SecondCubis {
        subgraph,
        band,
        assessed,
        kept,
    })
}

fn millis(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

fn labels_of(g: &Graph, c: &Clique) -> Vec<String> {
    c.members()
        .iter()
        .map(|&v| g.label(v).into_owned())
        .collect()
}

fn core_slice(sub: &Subgraph, d: &CoreDecomposition) -> Vec<u32> {
    sub.parent.iter().map(|&v| d.core(v)).collect()
}

/// Runs the full pipeline on `g`.
pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<Solution> {
    cfg.validate()?;
    let started = Instant::now();
    let mut report = RunReport {
        network: String::new(),
        n: g.node_count(),
        m: g.edge_count(),
        pre_pruned_nodes: 0,
        heuristic_clique_size: 0,
        cubis1: None,
        cubis2: None,
        omega: 0,
        clique: Vec::new(),
        core_seconds: 0.0,
        total_seconds: 0.0,
        config: cfg.clone(),
    };
    let mut trace = SolveTrace::default();
    if g.is_empty() {
        return Ok(Solution {
            clique: Clique::empty(),
            exit: Exit::EmptyGraph,
            report,
            trace,
        });
    }

    let pruned = pre_prune(g)?;
    report.pre_pruned_nodes = pruned.stats.pre_pruned_nodes;
    report.heuristic_clique_size = pruned.stats.heuristic_clique_size;
    trace.heuristic = pruned.clique.clone();
    trace.residual = pruned.residual.parent.clone();
    let residual = &pruned.residual;
    let gp = &residual.graph;
    // best clique so far, in the input graph's ids
    let mut best = pruned.clique;

    let mut core_elapsed = 0.0;
    let exit = 'pipeline: {
        if cfg.exceeds(best.len(), gp.node_count()) {
            break 'pipeline Exit::Residual;
        }

        let t = Instant::now();
        let d = CoreDecomposition::compute(gp);
        core_elapsed = t.elapsed().as_secs_f64();
        trace.ladder = d.ladder().to_vec();
        if cfg.exceeds(best.len(), d.clique_upper_bound()) {
            break 'pipeline Exit::CoreBound;
        }

        let t = Instant::now();
        let topl = effective_topl(&d, cfg.topl, best.len());
        trace.effective_topl = topl;
        let first = construct_first_cubis(gp, &d, cfg.topl, best.len())?;
        let cores = core_slice(&first, &d);
        if let Some(c) = MaxCliqueSearch::new(&first.graph, BoundMode::CoreNumber(&cores))
            .run(best.len())
            .improved
        {
            best = c.lift(&first).lift(residual);
        }
        report.cubis1 = Some(CubisStats {
            nodes: first.graph.node_count(),
            edges: first.graph.edge_count(),
            seconds: millis(t.elapsed().as_secs_f64()),
        });
        trace.cubis1 = residual.map_to_parent(&first.parent);

        let Some(&next_core) = d.ladder().get(topl) else {
            break 'pipeline Exit::AfterFirstCubis;
        };
        if cfg.exceeds(best.len(), next_core as usize + 1) {
            break 'pipeline Exit::AfterFirstCubis;
        }

        let t = Instant::now();
        let Some(second) = construct_second_cubis(gp, &d, topl, best.len(), cfg) else {
            break 'pipeline Exit::EmptyBand;
        };
        let cores = core_slice(&second.subgraph, &d);
        if let Some(c) = MaxCliqueSearch::new(&second.subgraph.graph, BoundMode::CoreNumber(&cores))
            .run(best.len())
            .improved
        {
            best = c.lift(&second.subgraph).lift(residual);
        }
        report.cubis2 = Some(CubisStats {
            nodes: second.subgraph.graph.node_count(),
            edges: second.subgraph.graph.edge_count(),
            seconds: millis(t.elapsed().as_secs_f64()),
        });
        trace.band = second.band;
        trace.assessed = second.assessed;
        trace.kept = second.kept;
        trace.cubis2 = Some(residual.map_to_parent(&second.subgraph.parent));

        if d.c_max().is_some_and(|c| best.len() > c as usize + 1) {
            return Err(Error::Invariant(format!(
                "clique of {} exceeds core bound {}",
                best.len(),
                d.clique_upper_bound()
            )));
        }
        Exit::Complete
    };

    if !verify_clique(g, &best)? {
        return Err(Error::Invariant("solver returned a non-clique".into()));
    }
    report.omega = best.len();
    report.clique = labels_of(g, &best);
    report.core_seconds = millis(core_elapsed);
    report.total_seconds = millis(started.elapsed().as_secs_f64() - core_elapsed);
    Ok(Solution {
        clique: best,
        exit,
        report,
        trace,
    })
}

impl RunReport {
    pub fn with_network(mut self, name: impl Into<String>) -> Self {
        self.network = name.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("bad report JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_edges(nodes: &[NodeId]) -> Vec<(NodeId, NodeId)> {
        let mut edges = Vec::new();
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &nodes[i + 1..] {
                edges.push((u, v));
            }
        }
        edges
    }

    fn k5_with_pendant() -> Graph {
        let mut edges = complete_edges(&[0, 1, 2, 3, 4]);
        edges.push((4, 5));
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn pre_prune_k5_pendant() {
        let g = k5_with_pendant();
        let p = pre_prune(&g).unwrap();
        assert!(p.clique.len() >= 4);
        assert_eq!(p.residual.parent, vec![0, 1, 2, 3, 4]);
        assert_eq!(p.stats.pre_pruned_nodes, 1);
    }

    #[test]
    fn pre_prune_complete() {
        let g = Graph::from_edges(6, complete_edges(&[0, 1, 2, 3, 4, 5])).unwrap();
        let p = pre_prune(&g).unwrap();
        assert_eq!(p.clique.len(), 6);
        assert_eq!(p.residual.graph.node_count(), 6);
        assert_eq!(p.stats.pre_pruned_nodes, 0);
    }

    #[test]
    fn pre_prune_empty() {
        assert!(matches!(pre_prune(&Graph::empty()), Err(Error::EmptyGraph)));
    }

    #[test]
    fn first_cubis_of_clique_is_whole_graph() {
        let g = Graph::from_edges(4, complete_edges(&[0, 1, 2, 3])).unwrap();
        let d = CoreDecomposition::compute(&g);
        let sub = construct_first_cubis(&g, &d, 1, 0).unwrap();
        assert_eq!(sub.graph, g);
        assert!(matches!(
            construct_first_cubis(
                &Graph::empty(),
                &CoreDecomposition::compute(&Graph::empty()),
                1,
                0
            ),
            Err(Error::EmptyLadder)
        ));
    }

    #[test]
    fn topl_clamping() {
        // ladder [4, 2, 1]
        let mut edges = complete_edges(&[0, 1, 2, 3, 4]);
        edges.extend(complete_edges(&[5, 6, 7]));
        edges.push((8, 9));
        let g = Graph::from_edges(10, edges).unwrap();
        let d = CoreDecomposition::compute(&g);
        assert_eq!(d.ladder(), &[4, 2, 1]);
        assert_eq!(effective_topl(&d, 3, 2), 2);
        assert_eq!(effective_topl(&d, 3, 0), 3);
        assert_eq!(effective_topl(&d, 8, 0), 3);
        assert_eq!(effective_topl(&d, 2, 5), 1);
    }

    #[test]
    fn single_value_ladder_has_no_second_cubis() {
        let g = Graph::from_edges(4, complete_edges(&[0, 1, 2, 3])).unwrap();
        let d = CoreDecomposition::compute(&g);
        assert!(construct_second_cubis(&g, &d, 1, 4, &SolveConfig::default()).is_none());
    }

    #[test]
    fn assess_keeps_member_of_larger_clique() {
        // K5 on 0..5 with core 4; omega1 = 4 so a 5-clique is "larger"
        let g = Graph::from_edges(5, complete_edges(&[0, 1, 2, 3, 4])).unwrap();
        let d = CoreDecomposition::compute(&g);
        let a = assess_node(&g, &d, 0, 4, 4, 4);
        assert!(a.keep);
    }

    #[test]
    fn assess_rejects_sparse_node() {
        // node 0 has 2 neighbours but omega1 = 4
        let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let d = CoreDecomposition::compute(&g);
        let a = assess_node(&g, &d, 0, 4, 1, 0);
        assert!(!a.keep);
        assert!(a.high_neighbors.is_empty());
    }

    #[test]
    fn solve_two_triangles() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let s = solve(&g, &SolveConfig::default()).unwrap();
        assert_eq!(s.report.omega, 3);
        assert_eq!(s.report.clique.len(), 3);
    }

    #[test]
    fn solve_empty() {
        let s = solve(&Graph::empty(), &SolveConfig::default()).unwrap();
        assert_eq!(s.report.omega, 0);
        assert_eq!(s.exit, Exit::EmptyGraph);
    }

    #[test]
    fn zero_topl_rejected() {
        let cfg = SolveConfig {
            topl: 0,
            ..SolveConfig::default()
        };
        assert!(solve(&k5_with_pendant(), &cfg).is_err());
    }

    #[test]
    fn inclusive_bounds_exit_early() {
        let g = k5_with_pendant();
        let cfg = SolveConfig {
            strict_bounds: false,
            ..SolveConfig::default()
        };
        let s = solve(&g, &cfg).unwrap();
        assert_eq!(s.report.omega, 5);
        assert_eq!(s.exit, Exit::Residual);
        assert!(s.report.cubis1.is_none());

        let s = solve(&g, &SolveConfig::default()).unwrap();
        assert_eq!(s.report.omega, 5);
        assert!(s.report.cubis1.is_some());
    }

    #[test]
    fn report_json_shape() {
        let s = solve(&k5_with_pendant(), &SolveConfig::default()).unwrap();
        let json = s.report.clone().with_network("k5").to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in [
            "network",
            "n",
            "m",
            "pre_pruned_nodes",
            "heuristic_clique_size",
            "cubis1",
            "cubis2",
            "omega",
            "clique",
            "core_seconds",
            "total_seconds",
            "config",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v["cubis2"].is_null());
        assert_eq!(
            v["config"],
            serde_json::json!({"topl": 1, "strict_bounds": true, "further_pruning": true})
        );
    }
}
