//! Ground-truth-free differential and metamorphic testing for static
//! analysis call graphs.
//!
//! The crate normalizes call graphs exported by heterogeneous analyzers
//! into one canonical representation, evaluates pairs of results against
//! declared precision/soundness partial orders over algorithms and
//! configurations, and reports semantic violations together with exact
//! Jaccard similarity and root-cause tags. A seeded synthetic-family
//! generator with planted refinement behavior provides the independent
//! oracle that stands in for ground truth.

pub mod campaign;
pub mod detector;
pub mod dot;
pub mod ingest;
pub mod model;
pub mod normalize;
pub mod order;
pub mod signature;
pub mod synth;

pub use detector::{compare, detect_violations, jaccard, tag_root_cause, Similarity};
pub use model::{CallEdge, CallGraph, MethodRef, RawGraph, SignatureFlavor};
pub use normalize::{normalize, strip_artifacts, Denylist};
pub use order::{OrderSpec, Relation, Variant};
