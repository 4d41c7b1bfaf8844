//! Pairwise comparison of normalized call graphs under a declared relation:
//! exact Jaccard similarity, the violation edge set, and per-edge root-cause
//! tags. Detection needs no ground truth — an edge present on the
//! more-precise side of a precision relation but absent from the
//! less-precise side violates the declared pair of relations; for declared
//! equivalent variants any edge in the symmetric difference diverges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{edge_string, CallEdge, CallGraph, GraphStatus};
use crate::order::{OrderSpec, Relation, RelationKind, Variant};

// ---------------------------------------------------------------------------
// Similarity
// ---------------------------------------------------------------------------

/// An exact rational in [0, 1]. Rendering rounds half-up to one decimal
/// percent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Similarity(BigRational);

impl Similarity {
    pub fn from_counts(intersection: u64, union: u64) -> Self {
        if union == 0 {
            return Similarity(BigRational::one());
        }
        Similarity(BigRational::new(BigInt::from(intersection), BigInt::from(union)))
    }

    pub fn from_u64_ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0);
        Similarity(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Self {
        Similarity(BigRational::zero())
    }

    pub fn one() -> Self {
        Similarity(BigRational::one())
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn approx(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Arithmetic mean, exact.
    pub fn mean<'a>(values: impl IntoIterator<Item = &'a Similarity>) -> Option<Similarity> {
        let mut sum = BigRational::zero();
        let mut n = 0u64;
        for v in values {
            sum += &v.0;
            n += 1;
        }
        (n > 0).then(|| Similarity(sum / BigRational::from(BigInt::from(n))))
    }

    /// Percent scaled by ten and rounded half-up: `94.3%` is 943.
    pub fn percent_tenths(&self) -> BigInt {
        let scaled = &self.0 * BigRational::from(BigInt::from(1000));
        let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
        // round(n/d) half-up for non-negative values
        (num * 2 + &den) / (den * 2)
    }

    /// One-decimal percent, e.g. `"94.3"`, `"100.0"`.
    pub fn percent_string(&self) -> String {
        let tenths = self.percent_tenths();
        let whole = &tenths / BigInt::from(10);
        let frac = (&tenths % BigInt::from(10)).abs();
        format!("{whole}.{frac}")
    }

    /// `numer/denom` in lowest terms.
    pub fn fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Similarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fraction_string())
    }
}

impl Serialize for Similarity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.fraction_string())
    }
}

impl<'de> Deserialize<'de> for Similarity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom("expected numer/denom"))?;
        let n: BigInt = n.parse().map_err(serde::de::Error::custom)?;
        let d: BigInt = d.parse().map_err(serde::de::Error::custom)?;
        if d.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Similarity(BigRational::new(n, d)))
    }
}

/// Jaccard index |A intersect B| / |A union B| over any ordered element
/// type; two empty sets are identical, so the index is 1.
pub fn jaccard<T: Ord>(left: &BTreeSet<T>, right: &BTreeSet<T>) -> Similarity {
    let intersection = left.intersection(right).count() as u64;
    let union = left.union(right).count() as u64;
    Similarity::from_counts(intersection, union)
}

// ---------------------------------------------------------------------------
// Root causes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootCauseCategory {
    StaticInit,
    InvokedynamicLambda,
    Reflection,
    Lifecycle,
    Other,
}

impl fmt::Display for RootCauseCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RootCauseCategory::StaticInit => "static-init",
            RootCauseCategory::InvokedynamicLambda => "invokedynamic-lambda",
            RootCauseCategory::Reflection => "reflection",
            RootCauseCategory::Lifecycle => "lifecycle",
            RootCauseCategory::Other => "other",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootCause {
    pub category: RootCauseCategory,
    /// The literal pattern that fired; empty exactly for `other`.
    pub matched_pattern: String,
}

/// Assigns one root-cause category to a violation edge. Rules are checked
/// in a fixed order and the first match wins, so tagging is total and
/// deterministic.
pub fn tag_root_cause(edge: &CallEdge) -> RootCause {
    let (src, dst) = edge;

    // 1. static initialization
    if src.method == "<clinit>" || dst.method == "<clinit>" {
        return RootCause { category: RootCauseCategory::StaticInit, matched_pattern: "<clinit>".into() };
    }

    // 2. invokedynamic / lambda machinery
    for m in [src, dst] {
        if m.method.starts_with("lambda$") {
            return RootCause {
                category: RootCauseCategory::InvokedynamicLambda,
                matched_pattern: "lambda$".into(),
            };
        }
        for pattern in ["InvokeDynamic", "Metafactory", "metafactory"] {
            if m.class.contains(pattern) || m.method.contains(pattern) {
                return RootCause {
                    category: RootCauseCategory::InvokedynamicLambda,
                    matched_pattern: pattern.into(),
                };
            }
        }
    }

    // 3. reflection (call target only)
    if dst.package == "java.lang" && dst.class == "Class" {
        return RootCause {
            category: RootCauseCategory::Reflection,
            matched_pattern: "java.lang.Class".into(),
        };
    }
    if dst.package.starts_with("java.lang.reflect") {
        return RootCause {
            category: RootCauseCategory::Reflection,
            matched_pattern: "java.lang.reflect".into(),
        };
    }
    if matches!(dst.method.as_str(), "forName" | "invoke" | "newInstance") {
        return RootCause {
            category: RootCauseCategory::Reflection,
            matched_pattern: dst.method.clone(),
        };
    }

    // 4. implicit lifecycle
    if matches!(dst.method.as_str(), "<init>" | "finalize") {
        return RootCause {
            category: RootCauseCategory::Lifecycle,
            matched_pattern: dst.method.clone(),
        };
    }

    RootCause { category: RootCauseCategory::Other, matched_pattern: String::new() }
}

// ---------------------------------------------------------------------------
// Detection
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DetectError {
    #[error("variants are not related by the declared orders: {left} vs {right}")]
    OrderMismatch { left: Variant, right: Variant },
    #[error("graphs compare different programs: {left:?} vs {right:?}")]
    ProgramMismatch { left: String, right: String },
    #[error("input graph for {variant} has status {status}")]
    InputFailed { variant: Variant, status: GraphStatus },
}

fn check_same_program(a: &CallGraph, b: &CallGraph) -> Result<(), DetectError> {
    if a.program != b.program {
        return Err(DetectError::ProgramMismatch {
            left: a.program.clone(),
            right: b.program.clone(),
        });
    }
    Ok(())
}

fn check_ok(g: &CallGraph) -> Result<(), DetectError> {
    if !g.is_ok() {
        return Err(DetectError::InputFailed { variant: g.variant.clone(), status: g.status });
    }
    Ok(())
}

/// Edges present in the more-precise graph and absent from the less-precise
/// one. Requires `hi.variant` to precede `lo.variant` in the product order.
pub fn detect_violations(
    spec: &OrderSpec,
    hi: &CallGraph,
    lo: &CallGraph,
) -> Result<BTreeSet<CallEdge>, DetectError> {
    check_same_program(hi, lo)?;
    check_ok(hi)?;
    check_ok(lo)?;
    if !spec.variant_precedes(&hi.variant, &lo.variant) {
        return Err(DetectError::OrderMismatch {
            left: hi.variant.clone(),
            right: lo.variant.clone(),
        });
    }
    Ok(hi.edges.difference(&lo.edges).cloned().collect())
}

/// Which side of an equivalence comparison an edge came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivergenceSide {
    OnlyLeft,
    OnlyRight,
}

/// Symmetric difference with direction tags; no declaration check.
pub fn symmetric_divergence(
    left: &BTreeSet<CallEdge>,
    right: &BTreeSet<CallEdge>,
) -> BTreeSet<(CallEdge, DivergenceSide)> {
    let mut out = BTreeSet::new();
    for e in left.difference(right) {
        out.insert((e.clone(), DivergenceSide::OnlyLeft));
    }
    for e in right.difference(left) {
        out.insert((e.clone(), DivergenceSide::OnlyRight));
    }
    out
}

/// Divergence between two graphs declared theoretically equivalent: the
/// symmetric difference of their edge sets, each edge tagged with the side
/// it appears on.
pub fn detect_equivalence_divergence(
    spec: &OrderSpec,
    left: &CallGraph,
    right: &CallGraph,
) -> Result<BTreeSet<(CallEdge, DivergenceSide)>, DetectError> {
    check_same_program(left, right)?;
    check_ok(left)?;
    check_ok(right)?;
    if !spec.declared_equivalent(&left.variant, &right.variant) {
        return Err(DetectError::OrderMismatch {
            left: left.variant.clone(),
            right: right.variant.clone(),
        });
    }
    Ok(symmetric_divergence(&left.edges, &right.edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparisonStatus {
    Ok,
    SkippedFailedInput,
}

/// Result of comparing two graphs of the same program under one relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonResult {
    pub program: String,
    pub left: Variant,
    pub right: Variant,
    pub relation_kind: RelationKind,
    pub jaccard: Similarity,
    /// Violation edges, each mapped to its root cause. Always a subset of
    /// the two edge sets' union.
    pub violations: BTreeMap<CallEdge, RootCause>,
    pub status: ComparisonStatus,
}

impl ComparisonResult {
    pub fn violation_count(&self) -> u64 {
        self.violations.len() as u64
    }

    pub fn tag_histogram(&self) -> BTreeMap<RootCauseCategory, u64> {
        let mut hist = BTreeMap::new();
        for cause in self.violations.values() {
            *hist.entry(cause.category).or_insert(0) += 1;
        }
        hist
    }

    fn skipped(program: &str, left: &Variant, right: &Variant, kind: RelationKind) -> Self {
        ComparisonResult {
            program: program.to_string(),
            left: left.clone(),
            right: right.clone(),
            relation_kind: kind,
            jaccard: Similarity::zero(),
            violations: BTreeMap::new(),
            status: ComparisonStatus::SkippedFailedInput,
        }
    }
}

impl Serialize for ComparisonResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ViolationWire<'a> {
            edge: String,
            category: RootCauseCategory,
            matched_pattern: &'a str,
        }
        let mut map = serializer.serialize_map(Some(8))?;
        map.serialize_entry("program", &self.program)?;
        map.serialize_entry("left", &self.left)?;
        map.serialize_entry("right", &self.right)?;
        map.serialize_entry("relation_kind", &self.relation_kind)?;
        map.serialize_entry("jaccard", &self.jaccard)?;
        map.serialize_entry("similarity_pct", &self.jaccard.percent_string())?;
        let violations: Vec<ViolationWire> = self
            .violations
            .iter()
            .map(|(edge, cause)| ViolationWire {
                edge: edge_string(edge),
                category: cause.category,
                matched_pattern: &cause.matched_pattern,
            })
            .collect();
        map.serialize_entry("violations", &violations)?;
        map.serialize_entry("status", &self.status)?;
        map.end()
    }
}

fn tag_all(edges: impl IntoIterator<Item = CallEdge>) -> BTreeMap<CallEdge, RootCause> {
    edges
        .into_iter()
        .map(|e| {
            let cause = tag_root_cause(&e);
            (e, cause)
        })
        .collect()
}

/// Compares two graphs under a relation from the order spec. Precision and
/// implicit-soundness relations check edge presence with the more-precise
/// variant as the high side; equivalence relations diverge on the symmetric
/// difference. Failed inputs produce a `skipped-failed-input` result rather
/// than an error.
pub fn compare(
    spec: &OrderSpec,
    left: &CallGraph,
    right: &CallGraph,
    relation: &Relation,
) -> Result<ComparisonResult, DetectError> {
    check_same_program(left, right)?;
    let pair_matches = (left.variant == relation.left && right.variant == relation.right)
        || (left.variant == relation.right && right.variant == relation.left);
    if !pair_matches {
        return Err(DetectError::OrderMismatch {
            left: left.variant.clone(),
            right: right.variant.clone(),
        });
    }
    if !left.is_ok() || !right.is_ok() {
        return Ok(ComparisonResult::skipped(
            &left.program,
            &left.variant,
            &right.variant,
            relation.kind,
        ));
    }

    let violations = match relation.kind {
        RelationKind::Precision | RelationKind::ImplicitSoundness => {
            let (hi, lo) = if spec.variant_precedes(&left.variant, &right.variant) {
                (left, right)
            } else if spec.variant_precedes(&right.variant, &left.variant) {
                (right, left)
            } else {
                return Err(DetectError::OrderMismatch {
                    left: left.variant.clone(),
                    right: right.variant.clone(),
                });
            };
            tag_all(detect_violations(spec, hi, lo)?)
        }
        RelationKind::Equivalence => {
            let divergence = detect_equivalence_divergence(spec, left, right)?;
            tag_all(divergence.into_iter().map(|(e, _)| e))
        }
    };

    Ok(ComparisonResult {
        program: left.program.clone(),
        left: left.variant.clone(),
        right: right.variant.clone(),
        relation_kind: relation.kind,
        jaccard: jaccard(&left.edges, &right.edges),
        violations,
        status: ComparisonStatus::Ok,
    })
}

/// Equivalence-style comparison without a declared pair — used when the
/// caller explicitly forces a symmetric-difference comparison.
pub fn compare_forced_equivalence(
    left: &CallGraph,
    right: &CallGraph,
) -> Result<ComparisonResult, DetectError> {
    check_same_program(left, right)?;
    if !left.is_ok() || !right.is_ok() {
        return Ok(ComparisonResult::skipped(
            &left.program,
            &left.variant,
            &right.variant,
            RelationKind::Equivalence,
        ));
    }
    let divergence = symmetric_divergence(&left.edges, &right.edges);
    Ok(ComparisonResult {
        program: left.program.clone(),
        left: left.variant.clone(),
        right: right.variant.clone(),
        relation_kind: RelationKind::Equivalence,
        jaccard: jaccard(&left.edges, &right.edges),
        violations: tag_all(divergence.into_iter().map(|(e, _)| e)),
        status: ComparisonStatus::Ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MethodRef;
    use crate::order::{Provenance, RelationKind};

    fn mref(pkg: &str, cls: &str, m: &str) -> MethodRef {
        MethodRef::new(pkg, cls, m, vec![]).unwrap()
    }

    fn edge(a: &MethodRef, b: &MethodRef) -> CallEdge {
        (a.clone(), b.clone())
    }

    fn numbered_edges(n: usize) -> BTreeSet<CallEdge> {
        (0..n)
            .map(|i| edge(&mref("p", "C", &format!("f{i}")), &mref("p", "C", &format!("g{i}"))))
            .collect()
    }

    #[test]
    fn jaccard_of_nested_sets_matches_exact_ratio() {
        let small = numbered_edges(150);
        let large = numbered_edges(15000);
        let j = jaccard(&small, &large);
        assert_eq!(j, Similarity::from_u64_ratio(1, 100));
        assert_eq!(j.approx(), 0.01);
    }

    #[test]
    fn jaccard_identity_and_disjoint() {
        let a = numbered_edges(10);
        assert_eq!(jaccard(&a, &a), Similarity::one());
        let b: BTreeSet<CallEdge> =
            (0..5).map(|i| edge(&mref("q", "D", &format!("x{i}")), &mref("q", "D", "y"))).collect();
        assert_eq!(jaccard(&a, &b), Similarity::zero());
        let empty = BTreeSet::new();
        assert_eq!(jaccard::<CallEdge>(&empty, &empty), Similarity::one());
    }

    #[test]
    fn percent_rendering_rounds_half_up_to_one_decimal() {
        assert_eq!(Similarity::from_u64_ratio(943, 1000).percent_string(), "94.3");
        assert_eq!(Similarity::one().percent_string(), "100.0");
        assert_eq!(Similarity::from_u64_ratio(1, 100).percent_string(), "1.0");
        assert_eq!(Similarity::from_u64_ratio(1, 3).percent_string(), "33.3");
        assert_eq!(Similarity::from_u64_ratio(2, 3).percent_string(), "66.7");
        assert_eq!(Similarity::from_u64_ratio(1, 1600).percent_string(), "0.1");
    }

    #[test]
    fn tag_rules_fire_in_order() {
        let clinit = edge(&mref("p", "Demo", "main"), &mref("p", "Demo", "<clinit>"));
        assert_eq!(tag_root_cause(&clinit).category, RootCauseCategory::StaticInit);

        let lambda = edge(&mref("p", "Demo", "main"), &mref("p", "Demo", "lambda$main$0"));
        assert_eq!(tag_root_cause(&lambda).category, RootCauseCategory::InvokedynamicLambda);

        let for_name = edge(&mref("p", "Demo", "load"), &mref("java.lang", "Class", "forName"));
        assert_eq!(tag_root_cause(&for_name).category, RootCauseCategory::Reflection);

        let reflect =
            edge(&mref("p", "Demo", "call"), &mref("java.lang.reflect", "Method", "invoke"));
        assert_eq!(tag_root_cause(&reflect).category, RootCauseCategory::Reflection);

        let init = edge(&mref("p", "Demo", "make"), &mref("p", "Widget", "<init>"));
        assert_eq!(tag_root_cause(&init).category, RootCauseCategory::Lifecycle);

        // <clinit> wins over a lambda source
        let both = edge(&mref("p", "Demo", "lambda$x$0"), &mref("p", "Demo", "<clinit>"));
        assert_eq!(tag_root_cause(&both).category, RootCauseCategory::StaticInit);

        let plain = edge(&mref("p", "Demo", "a"), &mref("p", "Demo", "b"));
        let cause = tag_root_cause(&plain);
        assert_eq!(cause.category, RootCauseCategory::Other);
        assert!(cause.matched_pattern.is_empty());
    }

    #[test]
    fn invokedynamic_placeholder_class_tags_as_lambda() {
        let e = edge(&mref("p", "Demo", "main"), &mref("", "dummy", "InvokeDynamic"));
        assert_eq!(tag_root_cause(&e).category, RootCauseCategory::InvokedynamicLambda);
    }

    fn chain_spec() -> OrderSpec {
        OrderSpec::load(
            br#"{"frameworks":[{"name":"synth","algorithms":["v1","v2"],
                 "alg_order":[["v1","v2"]]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn pure_pruning_never_violates() {
        let spec = chain_spec();
        let all = numbered_edges(20);
        let subset: BTreeSet<CallEdge> = all.iter().take(7).cloned().collect();
        let hi = CallGraph::new("p", Variant::new("synth", "v1"), BTreeSet::new(), subset);
        let lo = CallGraph::new("p", Variant::new("synth", "v2"), BTreeSet::new(), all);
        assert!(detect_violations(&spec, &hi, &lo).unwrap().is_empty());
    }

    #[test]
    fn added_edges_are_reported_exactly() {
        let spec = chain_spec();
        let base = numbered_edges(10);
        let mut refined = base.clone();
        let planted = edge(&mref("x", "New", "call"), &mref("x", "New", "target"));
        refined.insert(planted.clone());
        let hi = CallGraph::new("p", Variant::new("synth", "v1"), BTreeSet::new(), refined);
        let lo = CallGraph::new("p", Variant::new("synth", "v2"), BTreeSet::new(), base);
        let violations = detect_violations(&spec, &hi, &lo).unwrap();
        assert_eq!(violations, [planted].into());
    }

    #[test]
    fn unrelated_variants_are_an_order_mismatch() {
        let spec = chain_spec();
        let a = CallGraph::new("p", Variant::new("synth", "v2"), BTreeSet::new(), BTreeSet::new());
        let b = CallGraph::new("p", Variant::new("synth", "v1"), BTreeSet::new(), BTreeSet::new());
        // v2 does not precede v1
        assert!(matches!(
            detect_violations(&spec, &a, &b),
            Err(DetectError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn failed_inputs_become_skipped_results() {
        let spec = chain_spec();
        let rel = Relation {
            kind: RelationKind::Precision,
            left: Variant::new("synth", "v1"),
            right: Variant::new("synth", "v2"),
            provenance: Provenance::Declared,
        };
        let ok = CallGraph::new("p", Variant::new("synth", "v1"), BTreeSet::new(), BTreeSet::new());
        let failed =
            CallGraph::unavailable("p", Variant::new("synth", "v2"), GraphStatus::Failed);
        let result = compare(&spec, &ok, &failed, &rel).unwrap();
        assert_eq!(result.status, ComparisonStatus::SkippedFailedInput);
        assert!(result.violations.is_empty());
    }

    #[test]
    fn program_mismatch_is_rejected() {
        let spec = chain_spec();
        let a = CallGraph::new("p1", Variant::new("synth", "v1"), BTreeSet::new(), BTreeSet::new());
        let b = CallGraph::new("p2", Variant::new("synth", "v2"), BTreeSet::new(), BTreeSet::new());
        let rel = Relation {
            kind: RelationKind::Precision,
            left: Variant::new("synth", "v1"),
            right: Variant::new("synth", "v2"),
            provenance: Provenance::Declared,
        };
        assert!(matches!(compare(&spec, &a, &b, &rel), Err(DetectError::ProgramMismatch { .. })));
    }

    #[test]
    fn equivalence_divergence_is_the_symmetric_difference() {
        let left = numbered_edges(10);
        let mut right: BTreeSet<CallEdge> = left.iter().skip(1).cloned().collect(); // drop 1
        right.insert(edge(&mref("z", "Z", "a"), &mref("z", "Z", "b")));
        right.insert(edge(&mref("z", "Z", "c"), &mref("z", "Z", "d")));
        let d = symmetric_divergence(&left, &right);
        assert_eq!(d.len(), 3);
        assert_eq!(d.iter().filter(|(_, s)| *s == DivergenceSide::OnlyLeft).count(), 1);
        assert_eq!(symmetric_divergence(&right, &left).len(), d.len());
        assert!(symmetric_divergence(&left, &left).is_empty());
    }

    #[test]
    fn compare_on_identical_graphs_is_clean() {
        let spec = chain_spec();
        let edges = numbered_edges(5);
        let hi = CallGraph::new("p", Variant::new("synth", "v1"), BTreeSet::new(), edges.clone());
        let lo = CallGraph::new("p", Variant::new("synth", "v2"), BTreeSet::new(), edges);
        let rel = Relation {
            kind: RelationKind::Precision,
            left: Variant::new("synth", "v1"),
            right: Variant::new("synth", "v2"),
            provenance: Provenance::Declared,
        };
        let result = compare(&spec, &hi, &lo, &rel).unwrap();
        assert_eq!(result.jaccard, Similarity::one());
        assert_eq!(result.violation_count(), 0);
    }
}
