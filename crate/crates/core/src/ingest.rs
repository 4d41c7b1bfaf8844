//! Readers and the canonical writer for on-disk call-graph dumps.
//!
//! Canonical JSON schema: a top-level object with keys `program` (string),
//! `variant` (`{framework, algorithm, config}` with `config` sorted),
//! `status` (`ok` | `failed` | `timeout`), `nodes` (array of canonical
//! signature strings), and `edges` (array of `[srcIndex, dstIndex]` pairs
//! into `nodes`, sorted lexicographically). `program`, `variant`, and
//! `status` are optional on input; the writer always emits all keys in that
//! order, so writer output re-reads and re-writes byte-identically.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::model::{CallGraph, FileFormat, GraphStatus, RawGraph, SignatureFlavor};
use crate::order::Variant;
use crate::signature::render_signature;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("schema error at {path}{}: {message}", offset_suffix(.offset))]
    Schema { offset: Option<usize>, path: String, message: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("dot syntax error at {line}:{column}: {message}")]
    DotSyntax { line: usize, column: usize, message: String },
}

fn offset_suffix(offset: &Option<usize>) -> String {
    match offset {
        Some(o) => format!(" (byte {o})"),
        None => String::new(),
    }
}

impl IngestError {
    fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        IngestError::Schema { offset: None, path: path.into(), message: message.into() }
    }
}

/// Binds a graph dump on disk to its declared format, signature dialect,
/// program, and producing variant. Format and flavor are always declared up
/// front; [`sniff_format`] exists for convenience but reports how it
/// guessed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub path: std::path::PathBuf,
    pub format: FileFormat,
    pub flavor: SignatureFlavor,
    pub program: String,
    pub variant: Variant,
}

/// Guesses a file format from its first bytes, returning the guess and a
/// provenance note meant for diagnostics.
pub fn sniff_format(text: &str) -> (FileFormat, String) {
    let head = text.trim_start();
    let (format, why) = if head.starts_with('{') {
        (FileFormat::CanonicalJson, "starts with '{'")
    } else if head.starts_with("digraph") || head.starts_with("graph") {
        (FileFormat::Dot, "starts with a graph keyword")
    } else {
        (FileFormat::EdgeList, "fallback")
    };
    (format, format!("format not declared; sniffed {format} ({why})"))
}

/// Dispatches on the declared format.
pub fn read_raw(text: &str, format: FileFormat) -> Result<RawGraph, IngestError> {
    match format {
        FileFormat::CanonicalJson => read_canonical_json(text.as_bytes()),
        FileFormat::EdgeList => read_edge_list(text),
        FileFormat::Dot => crate::dot::read_dot_subset(text),
    }
}

// ---------------------------------------------------------------------------
// Canonical JSON
// ---------------------------------------------------------------------------

/// A parsed canonical document: the raw graph plus the run metadata the
/// schema carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDoc {
    pub program: Option<String>,
    pub variant: Option<Variant>,
    pub status: GraphStatus,
    pub graph: RawGraph,
}

#[derive(Serialize)]
struct DocWire<'a> {
    program: &'a str,
    variant: VariantWire<'a>,
    status: &'a str,
    nodes: &'a [String],
    edges: &'a [[usize; 2]],
}

#[derive(Serialize, Deserialize)]
struct VariantWire<'a> {
    framework: &'a str,
    algorithm: &'a str,
    config: Vec<String>,
}

/// Parses the canonical schema including metadata.
pub fn read_canonical_doc(bytes: &[u8]) -> Result<CanonicalDoc, IngestError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| IngestError::Schema { offset: Some(e.valid_up_to()), path: "$".into(), message: "not valid UTF-8".into() })?;
    let value: Value = serde_json::from_str(text).map_err(|e| IngestError::Schema {
        offset: Some(byte_offset(text, e.line(), e.column())),
        path: "$".into(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| IngestError::schema("$", "top level must be an object"))?;

    let program = match obj.get("program") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(IngestError::schema("program", "must be a string")),
    };
    let status = match obj.get("status") {
        None => GraphStatus::Ok,
        Some(Value::String(s)) => match s.as_str() {
            "ok" => GraphStatus::Ok,
            "failed" => GraphStatus::Failed,
            "timeout" => GraphStatus::Timeout,
            other => {
                return Err(IngestError::schema(
                    "status",
                    format!("expected ok|failed|timeout, got {other:?}"),
                ))
            }
        },
        Some(_) => return Err(IngestError::schema("status", "must be a string")),
    };
    let variant = match obj.get("variant") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_variant(v)?),
    };

    let nodes_value = obj
        .get("nodes")
        .ok_or_else(|| IngestError::schema("nodes", "missing required field"))?;
    let nodes = nodes_value
        .as_array()
        .ok_or_else(|| IngestError::schema("nodes", "must be an array"))?;
    let mut labels = Vec::with_capacity(nodes.len());
    for (i, n) in nodes.iter().enumerate() {
        let label = n
            .as_str()
            .ok_or_else(|| IngestError::schema(format!("nodes[{i}]"), "must be a string"))?;
        labels.push(label.to_string());
    }

    let edges_value = obj
        .get("edges")
        .ok_or_else(|| IngestError::schema("edges", "missing required field"))?;
    let edges = edges_value
        .as_array()
        .ok_or_else(|| IngestError::schema("edges", "must be an array"))?;

    let mut graph = RawGraph::new(SignatureFlavor::Canonical);
    for label in &labels {
        graph.insert_node(label.clone(), label.clone());
    }
    for (i, e) in edges.iter().enumerate() {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| IngestError::schema(format!("edges[{i}]"), "must be an index pair"))?;
        let mut endpoints = [0usize; 2];
        for (j, idx) in pair.iter().enumerate() {
            let k = idx.as_u64().ok_or_else(|| {
                IngestError::schema(format!("edges[{i}][{j}]"), "must be a non-negative integer")
            })? as usize;
            if k >= labels.len() {
                return Err(IngestError::schema(
                    format!("edges[{i}][{j}]"),
                    format!("index {k} out of range for {} nodes", labels.len()),
                ));
            }
            endpoints[j] = k;
        }
        graph.edges.insert((labels[endpoints[0]].clone(), labels[endpoints[1]].clone()));
    }

    for key in obj.keys() {
        if !matches!(key.as_str(), "program" | "variant" | "status" | "nodes" | "edges") {
            return Err(IngestError::schema(key.clone(), "unknown field"));
        }
    }

    Ok(CanonicalDoc { program, variant, status, graph })
}

fn parse_variant(v: &Value) -> Result<Variant, IngestError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IngestError::schema("variant", "must be an object"))?;
    let framework = obj
        .get("framework")
        .and_then(Value::as_str)
        .ok_or_else(|| IngestError::schema("variant.framework", "must be a string"))?;
    let algorithm = obj
        .get("algorithm")
        .and_then(Value::as_str)
        .ok_or_else(|| IngestError::schema("variant.algorithm", "must be a string"))?;
    let mut variant = Variant::new(framework, algorithm);
    if let Some(cfg) = obj.get("config") {
        let arr = cfg
            .as_array()
            .ok_or_else(|| IngestError::schema("variant.config", "must be an array"))?;
        let mut flags = Vec::new();
        for (i, f) in arr.iter().enumerate() {
            let flag = f.as_str().ok_or_else(|| {
                IngestError::schema(format!("variant.config[{i}]"), "must be a string")
            })?;
            flags.push(flag.to_string());
        }
        variant = variant.with_config(flags);
    }
    Ok(variant)
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    // serde_json lines/columns are 1-based.
    let mut offset = 0;
    for (i, l) in text.split_inclusive('\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len();
    }
    offset
}

/// Parses the canonical schema and returns just the graph.
pub fn read_canonical_json(bytes: &[u8]) -> Result<RawGraph, IngestError> {
    Ok(read_canonical_doc(bytes)?.graph)
}

/// Writes a normalized graph in the canonical schema: node labels sorted,
/// edges as sorted index pairs, fixed key order, two-space indentation,
/// trailing newline.
pub fn write_canonical_json(graph: &CallGraph) -> String {
    let nodes: Vec<String> =
        graph.nodes.iter().map(|m| render_signature(m, SignatureFlavor::Canonical)).collect();
    let index: std::collections::BTreeMap<&String, usize> =
        nodes.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut edges: Vec<[usize; 2]> = graph
        .edges
        .iter()
        .map(|(src, dst)| {
            [
                index[&render_signature(src, SignatureFlavor::Canonical)],
                index[&render_signature(dst, SignatureFlavor::Canonical)],
            ]
        })
        .collect();
    edges.sort_unstable();
    let wire = DocWire {
        program: &graph.program,
        variant: VariantWire {
            framework: &graph.variant.framework,
            algorithm: &graph.variant.algorithm,
            config: graph.variant.config.iter().cloned().collect(),
        },
        status: match graph.status {
            GraphStatus::Ok => "ok",
            GraphStatus::Failed => "failed",
            GraphStatus::Timeout => "timeout",
        },
        nodes: &nodes,
        edges: &edges,
    };
    let mut out = serde_json::to_string_pretty(&wire).expect("canonical doc serializes");
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// Edge list
// ---------------------------------------------------------------------------

/// One edge per line as `SRC -> DST`; lines whose first non-blank character
/// is `#` are comments. Labels are the node ids. The comment marker is only
/// recognized at the start of a line so that labels like `Cluster#3` pass
/// through untouched.
pub fn read_edge_list(text: &str) -> Result<RawGraph, IngestError> {
    let mut graph = RawGraph::new(SignatureFlavor::Canonical);
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (src, dst) = trimmed.split_once("->").ok_or_else(|| IngestError::Line {
            line: lineno,
            message: "expected `SRC -> DST`".into(),
        })?;
        let src = src.trim();
        let dst = dst.trim();
        if src.is_empty() || dst.is_empty() {
            return Err(IngestError::Line {
                line: lineno,
                message: "empty edge endpoint".into(),
            });
        }
        graph.insert_edge(src, dst);
    }
    Ok(graph)
}

/// Renders a raw graph as an edge list. Isolated nodes are written as
/// comment lines so the format round-trips edges exactly.
pub fn write_edge_list(graph: &RawGraph) -> String {
    let mut out = String::new();
    for (src, dst) in &graph.edges {
        out.push_str(src);
        out.push_str(" -> ");
        out.push_str(dst);
        out.push('\n');
    }
    out
}

pub fn read_file(path: impl AsRef<Path>, format: FileFormat) -> Result<RawGraph, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    read_raw(&text, format).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_applies_the_schema() {
        let raw = read_canonical_json(br#"{"program":"p1","nodes":["A.f()","A.g()"],"edges":[[0,1]]}"#)
            .unwrap();
        assert_eq!(raw.edges.len(), 1);
        assert!(raw.edges.contains(&("A.f()".to_string(), "A.g()".to_string())));
    }

    #[test]
    fn canonical_json_accepts_empty_graphs() {
        let raw = read_canonical_json(br#"{"nodes":[],"edges":[]}"#).unwrap();
        assert!(raw.nodes.is_empty() && raw.edges.is_empty());
    }

    #[test]
    fn canonical_json_requires_nodes() {
        let err = read_canonical_json(br#"{"edges":[[0,1]]}"#).unwrap_err();
        match err {
            IngestError::Schema { path, .. } => assert_eq!(path, "nodes"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_json_rejects_out_of_range_indices() {
        let err = read_canonical_json(br#"{"nodes":["A.f()"],"edges":[[0,3]]}"#).unwrap_err();
        match err {
            IngestError::Schema { path, .. } => assert_eq!(path, "edges[0][1]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_json_syntax_errors_carry_byte_offsets() {
        let err = read_canonical_json(b"{\n  \"nodes\": [,]\n}").unwrap_err();
        match err {
            IngestError::Schema { offset: Some(o), .. } => assert!(o > 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_doc_reads_status_and_variant() {
        let doc = read_canonical_doc(
            br#"{"program":"p","variant":{"framework":"Soot","algorithm":"CHA","config":["FS"]},
                "status":"failed","nodes":[],"edges":[]}"#,
        )
        .unwrap();
        assert_eq!(doc.status, GraphStatus::Failed);
        assert_eq!(doc.variant.unwrap(), Variant::new("Soot", "CHA").with_config(["FS"]));
    }

    #[test]
    fn edge_list_reads_edges_and_comments() {
        let raw = read_edge_list("# comment\nA.f() -> A.g()\n\nA.g() -> A.h()\n").unwrap();
        assert_eq!(raw.edges.len(), 2);
    }

    #[test]
    fn edge_list_rejects_dangling_arrow() {
        let err = read_edge_list("A.f -> ").unwrap_err();
        assert_eq!(err, IngestError::Line { line: 1, message: "empty edge endpoint".into() });
    }

    #[test]
    fn edge_list_keeps_hash_in_labels() {
        let raw = read_edge_list("Cluster#3 -> A.f()").unwrap();
        assert!(raw.nodes.contains_key("Cluster#3"));
    }

    #[test]
    fn writer_output_rereads_byte_identically() {
        use crate::model::MethodRef;
        use std::collections::BTreeSet;
        let a = MethodRef::new("p", "C", "f", vec![]).unwrap();
        let b = MethodRef::new("p", "C", "g", vec!["int".into()]).unwrap();
        let edges: BTreeSet<_> = [(a.clone(), b.clone()), (b.clone(), a.clone())].into();
        let graph = CallGraph::new(
            "p1",
            Variant::new("Soot", "CHA").with_config(["FS"]),
            BTreeSet::new(),
            edges,
        );
        let first = write_canonical_json(&graph);
        let doc = read_canonical_doc(first.as_bytes()).unwrap();
        let normalized = crate::normalize::normalize(
            &doc.graph,
            doc.program.as_deref().unwrap(),
            &doc.variant.unwrap(),
            &crate::normalize::Denylist::default(),
        )
        .unwrap();
        let second = write_canonical_json(&normalized.graph);
        assert_eq!(first, second);
    }

    #[test]
    fn sniffing_reports_provenance() {
        let (fmt, note) = sniff_format("{\"nodes\":[]}");
        assert_eq!(fmt, FileFormat::CanonicalJson);
        assert!(note.contains("sniffed"));
        let (fmt, _) = sniff_format("digraph g {}");
        assert_eq!(fmt, FileFormat::Dot);
        let (fmt, _) = sniff_format("A.f() -> A.g()");
        assert_eq!(fmt, FileFormat::EdgeList);
    }
}
