//! The four-stage normalization pipeline that makes call graphs from
//! heterogeneous analyzers comparable: artifact stripping, node-id
//! resolution, metadata filtering, and signature canonicalization — applied
//! in exactly that order.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{CallGraph, MethodRef, RawGraph, SignatureFlavor};
use crate::order::Variant;
use crate::signature::{canonicalize_signature, render_signature, SignatureError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("edge references node {node_id:?} whose label is empty")]
    MissingLabel { node_id: String },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Removes terminal `_` + 6-or-more lowercase-hex tokens from a label,
/// repeating until no such suffix remains. Everything else is preserved
/// byte for byte. Total: never fails.
pub fn strip_artifacts(label: &str) -> String {
    let mut s = label;
    while let Some(cut) = terminal_hash_token(s) {
        s = &s[..cut];
    }
    s.to_string()
}

fn terminal_hash_token(s: &str) -> Option<usize> {
    let cut = s.rfind('_')?;
    let suffix = &s[cut + 1..];
    let is_hash = suffix.len() >= 6
        && suffix.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b));
    is_hash.then_some(cut)
}

/// Replaces opaque node ids with their artifact-stripped labels. Ids that
/// share one post-strip label merge into a single node whose edges are the
/// union. The result maps each label to itself.
pub fn resolve_nodes(raw: &RawGraph) -> Result<RawGraph, NormalizeError> {
    let stripped: BTreeMap<&str, String> = raw
        .nodes
        .iter()
        .map(|(id, label)| (id.as_str(), strip_artifacts(label)))
        .collect();

    let mut out = RawGraph::new(raw.flavor);
    for label in stripped.values() {
        out.nodes.insert(label.clone(), label.clone());
    }
    for (src, dst) in &raw.edges {
        let src_label = &stripped[src.as_str()];
        if src_label.is_empty() {
            return Err(NormalizeError::MissingLabel { node_id: src.clone() });
        }
        let dst_label = &stripped[dst.as_str()];
        if dst_label.is_empty() {
            return Err(NormalizeError::MissingLabel { node_id: dst.clone() });
        }
        out.edges.insert((src_label.clone(), dst_label.clone()));
    }
    Ok(out)
}

/// Literal label prefixes identifying framework metadata nodes to drop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Denylist(Vec<String>);

impl Default for Denylist {
    /// Drops `Cluster...` bookkeeping nodes. Placeholder nodes such as
    /// `dummy.InvokeDynamic` are deliberately not matched: they encode
    /// analyzer behavior the detector must observe.
    fn default() -> Self {
        Denylist(vec!["Cluster".to_string()])
    }
}

impl Denylist {
    pub fn new(patterns: impl IntoIterator<Item = String>) -> Self {
        Denylist(patterns.into_iter().collect())
    }

    pub fn empty() -> Self {
        Denylist(Vec::new())
    }

    pub fn patterns(&self) -> &[String] {
        &self.0
    }

    /// A label matches when it equals a pattern or starts with it.
    pub fn matches(&self, label: &str) -> bool {
        self.0.iter().any(|p| label.starts_with(p.as_str()))
    }
}

/// Drops nodes whose label matches the denylist, together with all incident
/// edges.
pub fn filter_metadata(raw: &RawGraph, denylist: &Denylist) -> RawGraph {
    let dropped: BTreeSet<&String> = raw
        .nodes
        .iter()
        .filter(|(_, label)| denylist.matches(label))
        .map(|(id, _)| id)
        .collect();
    let mut out = RawGraph::new(raw.flavor);
    for (id, label) in &raw.nodes {
        if !dropped.contains(id) {
            out.nodes.insert(id.clone(), label.clone());
        }
    }
    for (src, dst) in &raw.edges {
        if !dropped.contains(src) && !dropped.contains(dst) {
            out.edges.insert((src.clone(), dst.clone()));
        }
    }
    out
}

/// Counters reported alongside a normalized graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizeStats {
    /// Raw node ids that collapsed onto an existing post-strip label.
    pub merged_node_ids: usize,
    /// Distinct labels that canonicalized to the same method identity.
    pub merged_methods: usize,
    /// Metadata nodes removed by the denylist.
    pub filtered_nodes: usize,
    /// Edges removed together with metadata nodes.
    pub filtered_edges: usize,
}

#[derive(Debug, Clone)]
pub struct Normalized {
    pub graph: CallGraph,
    pub stats: NormalizeStats,
}

/// Runs the full pipeline over one raw graph and produces an `ok` call
/// graph. Idempotent: re-normalizing the canonical rendering of the result
/// yields the same edge set.
pub fn normalize(
    raw: &RawGraph,
    program: &str,
    variant: &Variant,
    denylist: &Denylist,
) -> Result<Normalized, NormalizeError> {
    let resolved = resolve_nodes(raw)?;
    let merged_node_ids = raw.nodes.len() - resolved.nodes.len();

    let filtered = filter_metadata(&resolved, denylist);
    let stats_filtered_nodes = resolved.nodes.len() - filtered.nodes.len();
    let stats_filtered_edges = resolved.edges.len() - filtered.edges.len();

    let mut methods: BTreeMap<&String, MethodRef> = BTreeMap::new();
    let mut nodes: BTreeSet<MethodRef> = BTreeSet::new();
    for label in filtered.nodes.keys() {
        let m = canonicalize_signature(label, filtered.flavor)?;
        nodes.insert(m.clone());
        methods.insert(label, m);
    }
    let merged_methods = filtered.nodes.len() - nodes.len();

    let mut edges: BTreeSet<(MethodRef, MethodRef)> = BTreeSet::new();
    for (src, dst) in &filtered.edges {
        edges.insert((methods[src].clone(), methods[dst].clone()));
    }

    Ok(Normalized {
        graph: CallGraph::new(program, variant.clone(), nodes, edges),
        stats: NormalizeStats {
            merged_node_ids,
            merged_methods,
            filtered_nodes: stats_filtered_nodes,
            filtered_edges: stats_filtered_edges,
        },
    })
}

/// Renders a normalized graph back into a raw graph with canonical labels.
pub fn render_canonical(graph: &CallGraph) -> RawGraph {
    render_raw(graph, SignatureFlavor::Canonical)
}

/// Renders a normalized graph into any dialect, labels as ids.
pub fn render_raw(graph: &CallGraph, flavor: SignatureFlavor) -> RawGraph {
    let mut raw = RawGraph::new(flavor);
    for node in &graph.nodes {
        let label = render_signature(node, flavor);
        raw.insert_node(label.clone(), label);
    }
    for (src, dst) in &graph.edges {
        raw.edges
            .insert((render_signature(src, flavor), render_signature(dst, flavor)));
    }
    raw
}
