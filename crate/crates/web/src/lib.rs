//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes plain numbers or strings and returns a JSON string,
//! so the page needs no generated TypeScript types.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cubis::generate::{erdos_renyi, preferential_attachment};
use cubis::ingest::parse_graph_text;
use cubis::solver::SolveTrace;
use cubis::{solve, CoreDecomposition, Exit, Format, Graph, NodeId, RunReport, SolveConfig};

/// Largest node set shipped back for drawing.
pub const DRAW_LIMIT: usize = 400;

#[derive(Serialize)]
struct CoreBar {
    core: u32,
    nodes: usize,
}

/// Nodes and edges to draw. `core` and `label` are parallel to `nodes`;
/// edges index into `nodes`.
#[derive(Serialize)]
struct Drawing {
    nodes: Vec<NodeId>,
    label: Vec<String>,
    core: Vec<u32>,
    edges: Vec<(u32, u32)>,
    truncated: bool,
}

#[derive(Serialize)]
struct Run {
    report: RunReport,
    exit: Exit,
    trace: SolveTrace,
    cores: Vec<CoreBar>,
    drawing: Drawing,
}

#[derive(Serialize)]
struct SweepPoint {
    topl: usize,
    effective_topl: usize,
    omega: usize,
    cubis1_nodes: Option<usize>,
    cubis2_nodes: Option<usize>,
    exit: Exit,
}

fn config(topl: u32, strict: bool, further: bool) -> SolveConfig {
    SolveConfig {
        topl: topl.max(1) as usize,
        strict_bounds: strict,
        further_pruning: further,
        ..SolveConfig::default()
    }
}

fn generate(model: &str, n: u32, param: f64, seed: u32) -> Result<Graph, String> {
    let n = n as usize;
    match model {
        "er" => Ok(erdos_renyi(n, param.clamp(0.0, 1.0), seed as u64)),
        "pa" => Ok(preferential_attachment(
            n,
            param.max(1.0) as usize,
            seed as u64,
        )),
        other => Err(format!("unknown model `{other}`")),
    }
}

fn core_bars(d: &CoreDecomposition) -> Vec<CoreBar> {
    d.ladder()
        .iter()
        .enumerate()
        .map(|(k, &core)| CoreBar {
            core,
            nodes: d.nodes_at(k).len(),
        })
        .collect()
}

/// Picks what to draw: the clique first, then CUBIS members, then the rest
/// by descending core number, up to `DRAW_LIMIT` nodes.
fn drawing(g: &Graph, d: &CoreDecomposition, trace: &SolveTrace, clique: &[NodeId]) -> Drawing {
    let n = g.node_count();
    let mut rank = vec![3u8; n];
    for &v in trace.cubis2.iter().flatten() {
        rank[v as usize] = 2;
    }
    for &v in &trace.cubis1 {
        rank[v as usize] = 1;
    }
    for &v in clique {
        rank[v as usize] = 0;
    }
    let mut order: Vec<NodeId> = g.nodes().collect();
    order.sort_by_key(|&v| (rank[v as usize], std::cmp::Reverse(d.core(v)), v));
    let truncated = order.len() > DRAW_LIMIT;
    order.truncate(DRAW_LIMIT);
    order.sort_unstable();
    let sub = g
        .induced_subgraph(&order)
        .expect("drawn nodes belong to the graph");
    Drawing {
        label: order.iter().map(|&v| g.label(v).into_owned()).collect(),
        core: order.iter().map(|&v| d.core(v)).collect(),
        edges: sub.graph.edges().collect(),
        nodes: order,
        truncated,
    }
}

fn run(g: &Graph, cfg: &SolveConfig) -> Result<String, String> {
    let sol = solve(g, cfg).map_err(|e| e.to_string())?;
    let d = CoreDecomposition::compute(g);
    let out = Run {
        drawing: drawing(g, &d, &sol.trace, sol.clique.members()),
        cores: core_bars(&d),
        report: sol.report,
        exit: sol.exit,
        trace: sol.trace,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

pub fn solve_generated_json(
    model: &str,
    n: u32,
    param: f64,
    seed: u32,
    topl: u32,
    strict: bool,
    further: bool,
) -> Result<String, String> {
    let g = generate(model, n, param, seed)?;
    run(&g, &config(topl, strict, further))
}

pub fn solve_text_json(
    text: &str,
    format: &str,
    topl: u32,
    strict: bool,
    further: bool,
) -> Result<String, String> {
    let format: Format = format.parse().map_err(|e: cubis::Error| e.to_string())?;
    let g = parse_graph_text(text, format).map_err(|e| e.to_string())?;
    run(&g, &config(topl, strict, further))
}

pub fn topl_sweep_json(
    model: &str,
    n: u32,
    param: f64,
    seed: u32,
    strict: bool,
    further: bool,
) -> Result<String, String> {
    let g = generate(model, n, param, seed)?;
    let mut points = Vec::new();
    for topl in 1..=8 {
        let sol = solve(&g, &config(topl, strict, further)).map_err(|e| e.to_string())?;
        points.push(SweepPoint {
            topl: topl as usize,
            effective_topl: sol.trace.effective_topl,
            omega: sol.report.omega,
            cubis1_nodes: sol.report.cubis1.as_ref().map(|c| c.nodes),
            cubis2_nodes: sol.report.cubis2.as_ref().map(|c| c.nodes),
            exit: sol.exit,
        });
    }
    serde_json::to_string(&points).map_err(|e| e.to_string())
}

/// Generates an Erdős–Rényi (`"er"`, `param` = edge probability) or
/// preferential-attachment (`"pa"`, `param` = links per new node) graph
/// and solves it.
#[wasm_bindgen(js_name = solveGenerated)]
pub fn solve_generated(
    model: &str,
    n: u32,
    param: f64,
    seed: u32,
    topl: u32,
    strict: bool,
    further: bool,
) -> Result<String, JsError> {
    solve_generated_json(model, n, param, seed, topl, strict, further).map_err(|e| JsError::new(&e))
}

/// Solves a pasted edge list (`"edges"`) or Matrix Market (`"mtx"`) text.
#[wasm_bindgen(js_name = solveText)]
pub fn solve_text(
    text: &str,
    format: &str,
    topl: u32,
    strict: bool,
    further: bool,
) -> Result<String, JsError> {
    solve_text_json(text, format, topl, strict, further).map_err(|e| JsError::new(&e))
}

/// Solves one generated graph for topL = 1..=8.
#[wasm_bindgen(js_name = toplSweep)]
pub fn topl_sweep(
    model: &str,
    n: u32,
    param: f64,
    seed: u32,
    strict: bool,
    further: bool,
) -> Result<String, JsError> {
    topl_sweep_json(model, n, param, seed, strict, further).map_err(|e| JsError::new(&e))
}
