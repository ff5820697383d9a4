//! Benchmark manifests and report rendering for the command-line tool.
//!
//! A manifest is a JSON document listing graph files with optional
//! expected results:
//!
//! ```json
//! {
//!   "defaults": { "topl": 1 },
//!   "entries": [
//!     { "name": "jazz", "path": "data/jazz.edges", "expected_omega": 30,
//!       "expected_cubis1": [30, 435] }
//!   ]
//! }
//! ```
//!
//! Relative paths resolve against the manifest's directory.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use web_time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{load_graph, EdgeListSource, Format};
use crate::solver::{solve, CubisStats, RunReport, SolveConfig};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchEntry {
    pub name: String,
    pub path: PathBuf,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub expected_omega: Option<usize>,
    /// `(nodes, edges)` of CUBIS-1.
    #[serde(default)]
    pub expected_cubis1: Option<(usize, usize)>,
}

impl BenchEntry {
    pub fn source(&self) -> EdgeListSource {
        let src = EdgeListSource::new(&self.path);
        match self.format {
            Some(f) => src.with_format(f),
            None => src,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchManifest {
    #[serde(default)]
    pub defaults: SolveConfig,
    pub entries: Vec<BenchEntry>,
}

impl BenchManifest {
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut manifest: BenchManifest = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("invalid manifest: {e}")))?;
        manifest.defaults.validate()?;
        let mut seen = HashSet::new();
        for entry in &mut manifest.entries {
            if entry.path.is_relative() {
                entry.path = base.join(&entry.path);
            }
            if !seen.insert(entry.path.clone()) {
                return Err(Error::Config(format!(
                    "duplicate manifest path {}",
                    entry.path.display()
                )));
            }
        }
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Mismatch(Vec<String>),
    /// Ingestion failure; the run continues.
    Failed(String),
    /// The solver reported a broken internal invariant.
    Invariant(String),
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub name: String,
    pub topl: usize,
    pub report: Option<RunReport>,
    pub status: RowStatus,
    pub load_seconds: f64,
}

pub fn run_entry(entry: &BenchEntry, cfg: &SolveConfig) -> BenchRow {
    let mut row = BenchRow {
        name: entry.name.clone(),
        topl: cfg.topl,
        report: None,
        status: RowStatus::Ok,
        load_seconds: 0.0,
    };
    let t = Instant::now();
    let graph = match load_graph(&entry.source()) {
        Ok(g) => g,
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    row.load_seconds = t.elapsed().as_secs_f64();
    let report = match solve(&graph, cfg) {
        Ok(s) => s.report.with_network(&entry.name),
        Err(Error::Invariant(msg)) => {
            row.status = RowStatus::Invariant(msg);
            return row;
        }
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    let mismatches = expectation_mismatches(entry, &report);
    if !mismatches.is_empty() {
        row.status = RowStatus::Mismatch(mismatches);
    }
    row.report = Some(report);
    row
}

fn expectation_mismatches(entry: &BenchEntry, report: &RunReport) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(want) = entry.expected_omega {
        if report.omega != want {
            out.push(format!("omega {} != expected {want}", report.omega));
        }
    }
    if let Some((nodes, edges)) = entry.expected_cubis1 {
        match report.cubis1 {
            Some(c) if c.nodes == nodes && c.edges == edges => {}
            Some(c) => out.push(format!(
                "cubis1 {}/{} != expected {nodes}/{edges}",
                c.nodes, c.edges
            )),
            None => out.push(format!("cubis1 null != expected {nodes}/{edges}")),
        }
    }
    out
}

/// Process exit code for a finished run: 0 clean, 1 load failure,
/// 2 expectation mismatch, 3 invariant breach.
pub fn exit_code(rows: &[BenchRow]) -> i32 {
    let worst = |pred: fn(&RowStatus) -> bool| rows.iter().any(|r| pred(&r.status));
    if worst(|s| matches!(s, RowStatus::Invariant(_))) {
        3
    } else if worst(|s| matches!(s, RowStatus::Failed(_))) {
        1
    } else if worst(|s| matches!(s, RowStatus::Mismatch(_))) {
        2
    } else {
        0
    }
}

fn status_text(status: &RowStatus) -> String {
    match status {
        RowStatus::Ok => "ok".into(),
        RowStatus::Mismatch(m) => format!("MISMATCH: {}", m.join("; ")),
        RowStatus::Failed(e) => format!("ERROR: {e}"),
        RowStatus::Invariant(e) => format!("INVARIANT: {e}"),
    }
}

fn cubis_cells(c: &Option<CubisStats>) -> [String; 3] {
    match c {
        Some(c) => [
            c.nodes.to_string(),
            c.edges.to_string(),
            format!("{:.3}", c.seconds),
        ],
        None => ["null".into(), "null".into(), "null".into()],
    }
}

pub const CSV_HEADER: &str = "network,n,m,pre_pruned_nodes,heuristic_clique_size,\
cubis1_nodes,cubis1_edges,cubis1_seconds,cubis2_nodes,cubis2_edges,cubis2_seconds,\
omega,core_seconds,total_seconds,topl,strict_bounds,further_pruning,status";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn csv_row(row: &BenchRow) -> String {
    let status = csv_field(&status_text(&row.status));
    let Some(r) = &row.report else {
        let mut fields = vec![String::new(); 17];
        fields[0] = csv_field(&row.name);
        fields[14] = row.topl.to_string();
        return format!("{},{status}", fields.join(","));
    };
    let [c1n, c1e, c1s] = cubis_cells(&r.cubis1);
    let [c2n, c2e, c2s] = cubis_cells(&r.cubis2);
    format!(
        "{},{},{},{},{},{c1n},{c1e},{c1s},{c2n},{c2e},{c2s},{},{:.3},{:.3},{},{},{},{status}",
        csv_field(&r.network),
        r.n,
        r.m,
        r.pre_pruned_nodes,
        r.heuristic_clique_size,
        r.omega,
        r.core_seconds,
        r.total_seconds,
        r.config.topl,
        r.config.strict_bounds,
        r.config.further_pruning,
    )
}

/// One JSON object per row: the report (plus `status` when not ok), or
/// `{network, topl, status}` when nothing was solved.
pub fn jsonl_row(row: &BenchRow) -> String {
    match (&row.report, &row.status) {
        (Some(r), RowStatus::Ok) => r.to_json(),
        (Some(r), status) => {
            let mut v = serde_json::to_value(r).expect("report serializes");
            v["status"] = serde_json::Value::String(status_text(status));
            v.to_string()
        }
        (None, status) => serde_json::json!({
            "network": row.name,
            "topl": row.topl,
            "status": status_text(status),
        })
        .to_string(),
    }
}

/// Aligned text table with the published column layout.
pub fn render_table(rows: &[BenchRow]) -> String {
    let header = [
        "network", "n", "m", "pruned", "c1_nodes", "c1_edges", "c1_s", "c2_nodes", "c2_edges",
        "c2_s", "omega", "total_s", "topl", "status",
    ];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for row in rows {
        let mut line = vec![row.name.clone()];
        match &row.report {
            Some(r) => {
                line.extend([
                    r.n.to_string(),
                    r.m.to_string(),
                    r.pre_pruned_nodes.to_string(),
                ]);
                line.extend(cubis_cells(&r.cubis1));
                line.extend(cubis_cells(&r.cubis2));
                line.extend([r.omega.to_string(), format!("{:.3}", r.total_seconds)]);
            }
            None => line.extend(std::iter::repeat_n("-".to_string(), 11)),
        }
        line.push(row.topl.to_string());
        line.push(status_text(&row.status));
        cells.push(line);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| cells.iter().map(|l| l[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &cells {
        let last = line.len() - 1;
        for (c, cell) in line.iter().enumerate() {
            if c == last {
                let _ = write!(out, "{cell}");
            } else if c == 0 {
                let _ = write!(out, "{cell:<w$}  ", w = widths[c]);
            } else {
                let _ = write!(out, "{cell:>w$}  ", w = widths[c]);
            }
        }
        out.push('\n');
    }
    out
}

/// Human-readable summary of a single run.
pub fn render_report(r: &RunReport) -> String {
    let cubis = |c: &Option<CubisStats>| match c {
        Some(c) => format!("{} nodes / {} edges / {:.3} s", c.nodes, c.edges, c.seconds),
        None => "null".to_string(),
    };
    let mut out = String::new();
    let _ = writeln!(out, "network      {}", r.network);
    let _ = writeln!(out, "nodes        {}", r.n);
    let _ = writeln!(out, "edges        {}", r.m);
    let _ = writeln!(
        out,
        "pre-pruned   {} (heuristic clique {})",
        r.pre_pruned_nodes, r.heuristic_clique_size
    );
    let _ = writeln!(out, "CUBIS-1      {}", cubis(&r.cubis1));
    let _ = writeln!(out, "CUBIS-2      {}", cubis(&r.cubis2));
    let _ = writeln!(out, "omega        {}", r.omega);
    let _ = writeln!(out, "clique       {}", r.clique.join(" "));
    let _ = writeln!(out, "core time    {:.3} s", r.core_seconds);
    let _ = writeln!(out, "total time   {:.3} s", r.total_seconds);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_paths_resolve_and_defaults_apply() {
        let text = r#"{"entries": [{"name": "a", "path": "a.edges", "expected_omega": 3}]}"#;
        let m = BenchManifest::parse(text, Path::new("/data")).unwrap();
        assert_eq!(m.entries[0].path, PathBuf::from("/data/a.edges"));
        assert_eq!(m.defaults, SolveConfig::default());
    }

    #[test]
    fn manifest_rejects_duplicates_and_bad_topl() {
        let dup = r#"{"entries": [{"name": "a", "path": "x"}, {"name": "b", "path": "x"}]}"#;
        assert!(BenchManifest::parse(dup, Path::new(".")).is_err());
        let bad = r#"{"defaults": {"topl": 0}, "entries": []}"#;
        assert!(BenchManifest::parse(bad, Path::new(".")).is_err());
    }

    #[test]
    fn missing_file_row() {
        let entry = BenchEntry {
            name: "ghost".into(),
            path: "/nonexistent.edges".into(),
            format: None,
            expected_omega: None,
            expected_cubis1: None,
        };
        let row = run_entry(&entry, &SolveConfig::default());
        assert!(matches!(row.status, RowStatus::Failed(_)));
        assert_eq!(exit_code(std::slice::from_ref(&row)), 1);
        assert_eq!(
            csv_row(&row).split(',').count(),
            CSV_HEADER.split(',').count()
        );
        assert!(jsonl_row(&row).contains("ghost"));
    }

    #[test]
    fn exit_code_priority() {
        let row = |status| BenchRow {
            name: "x".into(),
            topl: 1,
            report: None,
            status,
            load_seconds: 0.0,
        };
        assert_eq!(exit_code(&[row(RowStatus::Ok)]), 0);
        assert_eq!(
            exit_code(&[row(RowStatus::Ok), row(RowStatus::Mismatch(vec![]))]),
            2
        );
        assert_eq!(
            exit_code(&[
                row(RowStatus::Mismatch(vec![])),
                row(RowStatus::Failed("e".into()))
            ]),
            1
        );
        assert_eq!(
            exit_code(&[
                row(RowStatus::Failed("e".into())),
                row(RowStatus::Invariant("i".into()))
            ]),
            3
        );
    }

    #[test]
    fn csv_quotes() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
