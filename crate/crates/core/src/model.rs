//! Core call-graph representation: method identities, raw (pre-normalization)
//! graphs, and normalized call graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::Variant;

/// A directed call edge between two normalized methods.
pub type CallEdge = (MethodRef, MethodRef);

/// Normalized method identity in `package.Class.method(args)` form.
///
/// `package` may be empty (default package); `class` and `method` may contain
/// `$` for inner/synthetic members, and `method` may be one of the special
/// names `<init>` / `<clinit>`. Parameters are canonical Java source-type
/// names (`int`, `java.lang.String`, `byte[]`), never JVM descriptors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MethodRef {
    pub package: String,
    pub class: String,
    pub method: String,
    pub params: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MethodRefError {
    #[error("class name is empty")]
    EmptyClass,
    #[error("method name is empty")]
    EmptyMethod,
    #[error("method name {0:?} contains whitespace or parentheses")]
    MalformedMethod(String),
}

impl MethodRef {
    pub fn new(
        package: impl Into<String>,
        class: impl Into<String>,
        method: impl Into<String>,
        params: Vec<String>,
    ) -> Result<Self, MethodRefError> {
        let package = package.into();
        let class = class.into();
        let method = method.into();
        if class.is_empty() {
            return Err(MethodRefError::EmptyClass);
        }
        if method.is_empty() {
            return Err(MethodRefError::EmptyMethod);
        }
        if method.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
            return Err(MethodRefError::MalformedMethod(method));
        }
        Ok(MethodRef { package, class, method, params })
    }

    /// Fully qualified class name (`package.Class`, no leading dot for the
    /// default package).
    pub fn qualified_class(&self) -> String {
        if self.package.is_empty() {
            self.class.clone()
        } else {
            format!("{}.{}", self.package, self.class)
        }
    }
}

impl fmt::Display for MethodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{}({})",
            self.qualified_class(),
            self.method,
            self.params.join(",")
        )
    }
}

impl Serialize for MethodRef {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MethodRef {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        crate::signature::canonicalize_signature(&s, SignatureFlavor::Canonical)
            .map_err(serde::de::Error::custom)
    }
}

/// Renders a call edge as `src -> dst` with canonical signatures.
pub fn edge_string(edge: &CallEdge) -> String {
    format!("{} -> {}", edge.0, edge.1)
}

/// Signature dialect a raw label is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignatureFlavor {
    /// `pkg.Cls.m(t1,t2)` — the unified output form.
    Canonical,
    /// `<pkg.Cls: ret m(t1,t2)>`.
    Soot,
    /// `pkg/Cls.m(Desc)Ret` with JVM type descriptors.
    Wala,
    /// Same bracketed form as [`SignatureFlavor::Soot`].
    Doop,
}

impl fmt::Display for SignatureFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SignatureFlavor::Canonical => "canonical",
            SignatureFlavor::Soot => "soot",
            SignatureFlavor::Wala => "wala",
            SignatureFlavor::Doop => "doop",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for SignatureFlavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(SignatureFlavor::Canonical),
            "soot" => Ok(SignatureFlavor::Soot),
            "wala" => Ok(SignatureFlavor::Wala),
            "doop" => Ok(SignatureFlavor::Doop),
            other => Err(format!("unknown signature flavor {other:?}")),
        }
    }
}

/// On-disk graph file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FileFormat {
    CanonicalJson,
    EdgeList,
    Dot,
}

impl fmt::Display for FileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FileFormat::CanonicalJson => "canonical-json",
            FileFormat::EdgeList => "edge-list",
            FileFormat::Dot => "dot",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for FileFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical-json" | "json" => Ok(FileFormat::CanonicalJson),
            "edge-list" | "edges" => Ok(FileFormat::EdgeList),
            "dot" => Ok(FileFormat::Dot),
            other => Err(format!("unknown file format {other:?}")),
        }
    }
}

/// Pre-normalization graph: opaque node ids mapped to raw label strings.
///
/// Every edge endpoint is present in `nodes`; readers that accept implicit
/// node declarations insert them with `label = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    pub nodes: BTreeMap<String, String>,
    pub edges: BTreeSet<(String, String)>,
    pub flavor: SignatureFlavor,
}

impl RawGraph {
    pub fn new(flavor: SignatureFlavor) -> Self {
        RawGraph { nodes: BTreeMap::new(), edges: BTreeSet::new(), flavor }
    }

    pub fn with_flavor(mut self, flavor: SignatureFlavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn insert_node(&mut self, id: impl Into<String>, label: impl Into<String>) {
        self.nodes.insert(id.into(), label.into());
    }

    /// Declares a node only if absent, with `label = id`.
    pub fn declare_node(&mut self, id: &str) {
        if !self.nodes.contains_key(id) {
            self.nodes.insert(id.to_string(), id.to_string());
        }
    }

    /// Inserts an edge, auto-declaring missing endpoints with `label = id`.
    pub fn insert_edge(&mut self, src: impl Into<String>, dst: impl Into<String>) {
        let src = src.into();
        let dst = dst.into();
        self.declare_node(&src);
        self.declare_node(&dst);
        self.edges.insert((src, dst));
    }
}

/// Outcome of an analysis run recorded in a graph dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphStatus {
    Ok,
    Failed,
    Timeout,
}

impl Default for GraphStatus {
    fn default() -> Self {
        GraphStatus::Ok
    }
}

impl fmt::Display for GraphStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GraphStatus::Ok => "ok",
            GraphStatus::Failed => "failed",
            GraphStatus::Timeout => "timeout",
        };
        f.write_str(name)
    }
}

/// Normalized call graph for one program under one analysis variant.
///
/// Invariants: every edge endpoint is a member of `nodes`; a non-`ok` status
/// implies empty nodes and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallGraph {
    pub program: String,
    pub variant: Variant,
    pub nodes: BTreeSet<MethodRef>,
    pub edges: BTreeSet<CallEdge>,
    pub status: GraphStatus,
}

impl CallGraph {
    /// Builds an `ok` graph; endpoints of `edges` are folded into `nodes`.
    pub fn new(
        program: impl Into<String>,
        variant: Variant,
        nodes: BTreeSet<MethodRef>,
        edges: BTreeSet<CallEdge>,
    ) -> Self {
        let mut nodes = nodes;
        for (src, dst) in &edges {
            nodes.insert(src.clone());
            nodes.insert(dst.clone());
        }
        CallGraph { program: program.into(), variant, nodes, edges, status: GraphStatus::Ok }
    }

    /// Empty placeholder for an analysis run that did not complete.
    pub fn unavailable(program: impl Into<String>, variant: Variant, status: GraphStatus) -> Self {
        debug_assert!(status != GraphStatus::Ok);
        CallGraph {
            program: program.into(),
            variant,
            nodes: BTreeSet::new(),
            edges: BTreeSet::new(),
            status,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == GraphStatus::Ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_ref_display_omits_empty_package() {
        let m = MethodRef::new("", "Demo", "f", vec![]).unwrap();
        assert_eq!(m.to_string(), "Demo.f()");
        let m = MethodRef::new("example", "Demo", "f", vec!["int".into(), "byte[]".into()]).unwrap();
        assert_eq!(m.to_string(), "example.Demo.f(int,byte[])");
    }

    #[test]
    fn method_ref_rejects_malformed_names() {
        assert_eq!(MethodRef::new("p", "", "f", vec![]), Err(MethodRefError::EmptyClass));
        assert_eq!(MethodRef::new("p", "C", "", vec![]), Err(MethodRefError::EmptyMethod));
        assert!(matches!(
            MethodRef::new("p", "C", "f(", vec![]),
            Err(MethodRefError::MalformedMethod(_))
        ));
        assert!(MethodRef::new("p", "C", "<clinit>", vec![]).is_ok());
    }

    #[test]
    fn call_graph_folds_edge_endpoints_into_nodes() {
        let a = MethodRef::new("p", "C", "f", vec![]).unwrap();
        let b = MethodRef::new("p", "C", "g", vec![]).unwrap();
        let edges: BTreeSet<_> = [(a.clone(), b.clone())].into_iter().collect();
        let g = CallGraph::new("prog", Variant::new("fw", "alg"), BTreeSet::new(), edges);
        assert!(g.nodes.contains(&a) && g.nodes.contains(&b));
    }

    #[test]
    fn raw_graph_edge_auto_declares_endpoints() {
        let mut g = RawGraph::new(SignatureFlavor::Canonical);
        g.insert_edge("a", "b");
        assert_eq!(g.nodes.get("a").unwrap(), "a");
        assert_eq!(g.nodes.get("b").unwrap(), "b");
    }
}
