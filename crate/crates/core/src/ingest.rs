//! Readers for the plain-text graph formats found in public network
//! repositories: whitespace/comma separated edge lists and coordinate
//! Matrix Market files.
//!
//! Both readers stream line by line, remap labels to dense ids in
//! first-appearance order, symmetrize, and ignore any weight columns.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabeledEdgeBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[serde(alias = "edges")]
    EdgeList,
    #[serde(alias = "mtx")]
    MatrixMarket,
}

impl Format {
    /// `.mtx` means Matrix Market, anything else an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("mtx") => Format::MatrixMarket,
            _ => Format::EdgeList,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" | "edge_list" | "edgelist" => Ok(Format::EdgeList),
            "mtx" | "matrix_market" => Ok(Format::MatrixMarket),
            other => Err(Error::Config(format!("unknown graph format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EdgeListSource {
    pub path: PathBuf,
    pub format: Format,
    pub comment_prefixes: Vec<char>,
}

impl EdgeListSource {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let format = Format::from_path(&path);
        EdgeListSource {
            path,
            format,
            comment_prefixes: vec!['#', '%'],
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }
}

pub fn load_graph(src: &EdgeListSource) -> Result<Graph> {
    let io_err = |source| Error::Io {
        path: src.path.clone(),
        source,
    };
    let file = File::open(&src.path).map_err(io_err)?;
    // rough guess: ~12 bytes per edge line
    let hint = file.metadata().map(|m| m.len() as usize / 12).unwrap_or(0);
    let reader = BufReader::with_capacity(1 << 16, file);
    let mut builder = LabeledEdgeBuilder::with_capacity(hint);
    match src.format {
        Format::EdgeList => read_edge_list(reader, &src.path, &src.comment_prefixes, &mut builder)?,
        Format::MatrixMarket => read_matrix_market(reader, &src.path, &mut builder)?,
    }
    Ok(builder.finish())
}

/// Parses graph text already held in memory (used by the browser demo).
pub fn parse_graph_text(text: &str, format: Format) -> Result<Graph> {
    let mut builder = LabeledEdgeBuilder::default();
    let name = Path::new("<input>");
    match format {
        Format::EdgeList => read_edge_list(text.as_bytes(), name, &['#', '%'], &mut builder)?,
        Format::MatrixMarket => read_matrix_market(text.as_bytes(), name, &mut builder)?,
    }
    Ok(builder.finish())
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

fn read_edge_list<R: BufRead>(
    reader: R,
    path: &Path,
    comments: &[char],
    builder: &mut LabeledEdgeBuilder,
) -> Result<()> {
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with(comments) {
            continue;
        }
        let mut it = tokens(trimmed);
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => builder.push(a, b),
            _ => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message: format!("expected two node labels, found `{trimmed}`"),
                })
            }
        }
    }
    Ok(())
}

fn read_matrix_market<R: BufRead>(
    reader: R,
    path: &Path,
    builder: &mut LabeledEdgeBuilder,
) -> Result<()> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut seen_size = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = tokens(trimmed).collect();
        if !seen_size {
            if fields.len() < 3 || fields[..3].iter().any(|f| f.parse::<u64>().is_err()) {
                return Err(parse_err(
                    idx + 1,
                    format!("expected `rows cols nnz` size line, found `{trimmed}`"),
                ));
            }
            seen_size = true;
            continue;
        }
        if fields.len() < 2 {
            return Err(parse_err(
                idx + 1,
                format!("expected `row col [value]`, found `{trimmed}`"),
            ));
        }
        let mut ids = [0u64; 2];
        for (slot, tok) in ids.iter_mut().zip(&fields[..2]) {
            *slot = tok
                .parse()
                .map_err(|_| parse_err(idx + 1, format!("non-numeric node index `{tok}`")))?;
        }
        builder.push(&ids[0].to_string(), &ids[1].to_string());
    }
    Ok(())
}
