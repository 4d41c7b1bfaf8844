//! Synthetic call-graph families with planted refinement behavior.
//!
//! A family is a base graph whose edges carry a known true/false-positive
//! split, plus a precision chain of variants where every refinement step
//! prunes only false positives and plants a known set of fresh edges — the
//! violations a correct detector must recover exactly. Because the planted
//! sets are known, this module is the one place where true/false-positive
//! labels exist, and it doubles as the independent oracle for the detector.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::campaign::{Manifest, ManifestEntry};
use crate::ingest::write_canonical_json;
use crate::model::{edge_string, CallEdge, CallGraph, FileFormat, MethodRef, RawGraph, SignatureFlavor};
use crate::order::{OrderSpec, Variant};
use crate::signature::render_signature;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("infeasible family parameters: {0}")]
pub struct ParamError(pub String);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub enabled: bool,
    /// Probability of appending a random `_` + 8-hex suffix to a label.
    pub hash_suffix_prob: f64,
    /// Number of `Cluster#n` metadata nodes injected per graph.
    pub metadata_nodes: usize,
    /// Render each variant in a randomly chosen dialect instead of the
    /// canonical one.
    pub mixed_dialects: bool,
}

impl Default for NoiseParams {
    fn default() -> Self {
        NoiseParams { enabled: true, hash_suffix_prob: 0.3, metadata_nodes: 2, mixed_dialects: true }
    }
}

impl NoiseParams {
    pub fn off() -> Self {
        NoiseParams { enabled: false, ..NoiseParams::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n_nodes: usize,
    pub n_edges: usize,
    /// Number of refinement steps; the chain has `chain_length + 1` variants.
    pub chain_length: usize,
    pub violations_per_step: usize,
    pub noise: NoiseParams,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            n_nodes: 60,
            n_edges: 120,
            chain_length: 3,
            violations_per_step: 4,
            noise: NoiseParams::default(),
        }
    }
}

/// Per-variant planted refinement data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantTruth {
    /// False positives pruned relative to the base graph.
    pub pruned_fp: BTreeSet<CallEdge>,
    /// Fresh edges planted on this variant (the expected violations).
    pub added: BTreeSet<CallEdge>,
}

/// Ground truth for a generated family. `base_edges` is the disjoint union
/// of `true_edges` and `false_edges`; planted additions never overlap the
/// base graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedTruth {
    pub base_edges: BTreeSet<CallEdge>,
    pub true_edges: BTreeSet<CallEdge>,
    pub false_edges: BTreeSet<CallEdge>,
    pub per_variant: BTreeMap<Variant, VariantTruth>,
}

impl PlantedTruth {
    /// The clean (noise-free) edge set of one variant.
    pub fn variant_edges(&self, variant: &Variant) -> Option<BTreeSet<CallEdge>> {
        let vt = self.per_variant.get(variant)?;
        let mut edges: BTreeSet<CallEdge> =
            self.base_edges.difference(&vt.pruned_fp).cloned().collect();
        edges.extend(vt.added.iter().cloned());
        Some(edges)
    }

    pub fn expected_violations(
        &self,
        hi: &Variant,
        lo: &Variant,
    ) -> Option<BTreeSet<CallEdge>> {
        let hi_edges = self.variant_edges(hi)?;
        let lo_edges = self.variant_edges(lo)?;
        Some(hi_edges.difference(&lo_edges).cloned().collect())
    }
}

/// One generated family: the chain order spec, the per-variant rendered raw
/// graphs, and the planted truth.
#[derive(Debug, Clone)]
pub struct SynthFamily {
    pub program: String,
    pub seed: u64,
    pub params: FamilyParams,
    pub spec: OrderSpec,
    /// Most precise first.
    pub variants: Vec<Variant>,
    pub graphs: BTreeMap<Variant, RawGraph>,
    pub truth: PlantedTruth,
}

impl SynthFamily {
    /// Adjacent (more precise, less precise) pairs along the chain.
    pub fn adjacent_pairs(&self) -> Vec<(Variant, Variant)> {
        self.variants.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    }

    /// All ordered (more precise, less precise) pairs.
    pub fn ordered_pairs(&self) -> Vec<(Variant, Variant)> {
        let mut out = Vec::new();
        for i in 0..self.variants.len() {
            for j in i + 1..self.variants.len() {
                out.push((self.variants[i].clone(), self.variants[j].clone()));
            }
        }
        out
    }
}

pub const SYNTH_FRAMEWORK: &str = "synth";

// ---------------------------------------------------------------------------
// Name grammar
// ---------------------------------------------------------------------------

const PACKAGE_SEGMENTS: &[&str] =
    &["com", "org", "net", "io", "app", "core", "util", "data", "web", "svc", "rt"];
const CLASS_NAMES: &[&str] = &[
    "Widget", "Engine", "Parser", "Handler", "Registry", "Worker", "Channel", "Buffer",
    "Session", "Codec", "Router", "Store", "Clock", "Gauge", "Ledger", "Cursor",
];
const METHOD_NAMES: &[&str] = &[
    "run", "start", "process", "handle", "update", "compute", "dispatch", "render", "close",
    "flush", "read", "write", "accept", "resolve", "merge", "scan", "emit", "poll",
];
const PARAM_TYPES: &[&str] = &[
    "int", "long", "boolean", "double", "byte[]", "int[]", "java.lang.String",
    "java.lang.Object", "java.lang.String[]",
];

/// Draws realistic method identities from a small grammar: package depth up
/// to three, occasional inner classes, occasional `lambda$`/`<clinit>`
/// texture so root-cause tagging is exercised on ordinary graphs too.
pub struct SignatureSampler {
    seen: BTreeSet<String>,
    uniq: usize,
}

impl SignatureSampler {
    pub fn new() -> Self {
        SignatureSampler { seen: BTreeSet::new(), uniq: 0 }
    }

    fn package(&self, rng: &mut ChaCha8Rng) -> String {
        let depth = rng.gen_range(0..=3);
        (0..depth)
            .map(|_| *PACKAGE_SEGMENTS.choose(rng).unwrap())
            .collect::<Vec<_>>()
            .join(".")
    }

    fn class(&self, rng: &mut ChaCha8Rng) -> String {
        let base = *CLASS_NAMES.choose(rng).unwrap();
        if rng.gen_bool(0.1) {
            format!("{base}$1")
        } else {
            base.to_string()
        }
    }

    fn params(&self, rng: &mut ChaCha8Rng) -> Vec<String> {
        let n = rng.gen_range(0..=3);
        (0..n).map(|_| PARAM_TYPES.choose(rng).unwrap().to_string()).collect()
    }

    /// A method that triggers no root-cause rule from either endpoint.
    pub fn sample_plain(&mut self, rng: &mut ChaCha8Rng) -> MethodRef {
        loop {
            let m = MethodRef::new(
                self.package(rng),
                self.class(rng),
                (*METHOD_NAMES.choose(rng).unwrap()).to_string(),
                self.params(rng),
            )
            .expect("grammar yields valid refs");
            if let Some(m) = self.claim(m) {
                return m;
            }
        }
    }

    /// Mostly plain with ~10% special names (`lambda$`, `<clinit>`,
    /// `<init>`) for texture.
    pub fn sample(&mut self, rng: &mut ChaCha8Rng) -> MethodRef {
        if !rng.gen_bool(0.1) {
            return self.sample_plain(rng);
        }
        loop {
            let method = match rng.gen_range(0..3) {
                0 => format!("lambda${}$0", METHOD_NAMES.choose(rng).unwrap()),
                1 => "<clinit>".to_string(),
                _ => "<init>".to_string(),
            };
            let m = MethodRef::new(self.package(rng), self.class(rng), method, self.params(rng))
                .expect("grammar yields valid refs");
            if let Some(m) = self.claim(m) {
                return m;
            }
        }
    }

    fn claim(&mut self, m: MethodRef) -> Option<MethodRef> {
        if self.seen.insert(m.to_string()) {
            return Some(m);
        }
        // Disambiguate instead of rejection-sampling forever on tiny grammars.
        self.uniq += 1;
        let bumped = MethodRef::new(
            m.package.clone(),
            format!("{}X{}", m.class, self.uniq),
            m.method.clone(),
            m.params.clone(),
        )
        .ok()?;
        self.seen.insert(bumped.to_string()).then_some(bumped)
    }
}

impl Default for SignatureSampler {
    fn default() -> Self {
        Self::new()
    }
}

fn planted_target(category: usize, counter: usize, rng: &mut ChaCha8Rng) -> MethodRef {
    let pkg = *PACKAGE_SEGMENTS.choose(rng).unwrap();
    match category {
        // static initialization
        0 => MethodRef::new(pkg, format!("Init{counter}"), "<clinit>", vec![]),
        // invokedynamic / lambda
        1 => MethodRef::new(pkg, format!("Fn{counter}"), format!("lambda$apply${counter}"), vec![]),
        // reflection: alternate between the reflective core classes and
        // reflective method names on ordinary classes
        2 => match counter % 3 {
            0 => MethodRef::new(
                "java.lang",
                "Class",
                "forName",
                vec![format!("java.lang.String{}", "[]".repeat(counter % 2))],
            ),
            1 => MethodRef::new("java.lang.reflect", format!("Handle{counter}"), "invoke", vec![]),
            _ => MethodRef::new(pkg, format!("Provider{counter}"), "newInstance", vec![]),
        },
        // implicit lifecycle
        _ => {
            let method = if counter % 2 == 0 { "<init>" } else { "finalize" };
            MethodRef::new(pkg, format!("Obj{counter}"), method, vec![])
        }
    }
    .expect("planted targets are valid refs")
}

/// Weighted category draw for planted violations; weights follow the
/// observed skew (static-init heaviest, then lambdas, reflection,
/// lifecycle).
pub const CATEGORY_WEIGHTS: [u32; 4] = [45, 30, 15, 10];

fn draw_category(rng: &mut ChaCha8Rng) -> usize {
    let total: u32 = CATEGORY_WEIGHTS.iter().sum();
    let mut x = rng.gen_range(0..total);
    for (i, w) in CATEGORY_WEIGHTS.iter().enumerate() {
        if x < *w {
            return i;
        }
        x -= w;
    }
    unreachable!()
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

/// Generates one family. The logical structure depends only on the seed and
/// the structural parameters: with the same seed, noise on and noise off
/// produce identical post-normalization graphs.
pub fn generate_family(seed: u64, params: &FamilyParams) -> Result<SynthFamily, ParamError> {
    if params.n_nodes == 0 {
        return Err(ParamError("n_nodes must be positive".into()));
    }
    if params.n_edges > params.n_nodes * params.n_nodes {
        return Err(ParamError(format!(
            "n_edges {} exceeds n_nodes^2 = {}",
            params.n_edges,
            params.n_nodes * params.n_nodes
        )));
    }
    if params.chain_length == 0 {
        return Err(ParamError("chain_length must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&params.noise.hash_suffix_prob) {
        return Err(ParamError("hash_suffix_prob must be in [0, 1]".into()));
    }

    let mut structure_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = SignatureSampler::new();
    let pool: Vec<MethodRef> =
        (0..params.n_nodes).map(|_| sampler.sample(&mut structure_rng)).collect();
    let plain_pool: Vec<&MethodRef> = pool
        .iter()
        .filter(|m| {
            crate::detector::tag_root_cause(&((*m).clone(), (*m).clone())).category
                == crate::detector::RootCauseCategory::Other
        })
        .collect();
    if plain_pool.is_empty() {
        return Err(ParamError("no plain nodes available for violation sources".into()));
    }

    // Base edges: shuffle the full pair space and take a prefix.
    let mut pairs: Vec<(usize, usize)> = (0..params.n_nodes)
        .flat_map(|i| (0..params.n_nodes).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(&mut structure_rng);
    let base_edges: BTreeSet<CallEdge> = pairs
        .iter()
        .take(params.n_edges)
        .map(|&(i, j)| (pool[i].clone(), pool[j].clone()))
        .collect();

    // True/false-positive split: two fifths of the base are false positives
    // available for pruning along the chain.
    let mut base_list: Vec<CallEdge> = base_edges.iter().cloned().collect();
    base_list.shuffle(&mut structure_rng);
    let fp_count = base_list.len() * 2 / 5;
    let false_edges: BTreeSet<CallEdge> = base_list[..fp_count].iter().cloned().collect();
    let true_edges: BTreeSet<CallEdge> = base_list[fp_count..].iter().cloned().collect();

    let variant_count = params.chain_length + 1;
    let variants: Vec<Variant> = (1..=variant_count)
        .map(|i| Variant::new(SYNTH_FRAMEWORK, format!("v{i}")))
        .collect();

    // Cumulative pruning from the least precise side up: variant k prunes
    // everything later variants pruned plus its own chunk.
    let fp_list: Vec<CallEdge> = base_list[..fp_count].to_vec();
    let steps = params.chain_length;
    let mut chunk_sizes = vec![fp_count / steps; steps];
    for item in chunk_sizes.iter_mut().take(fp_count % steps) {
        *item += 1;
    }
    let mut pruned_per_variant: Vec<BTreeSet<CallEdge>> = vec![BTreeSet::new(); variant_count];
    let mut consumed = 0usize;
    for step in 0..steps {
        let idx = variant_count - 2 - step; // walking from next-to-last up to v1
        let mut pruned = pruned_per_variant[idx + 1].clone();
        pruned.extend(fp_list[consumed..consumed + chunk_sizes[step]].iter().cloned());
        consumed += chunk_sizes[step];
        pruned_per_variant[idx] = pruned;
    }

    // Planted violations: fresh edges from plain sources to unique
    // category-shaped targets.
    let mut used: BTreeSet<CallEdge> = base_edges.clone();
    let mut counter = 0usize;
    let mut added_per_variant: Vec<BTreeSet<CallEdge>> = vec![BTreeSet::new(); variant_count];
    for added in added_per_variant.iter_mut().take(variant_count - 1) {
        while added.len() < params.violations_per_step {
            let src = (*plain_pool.choose(&mut structure_rng).unwrap()).clone();
            let category = draw_category(&mut structure_rng);
            let dst = planted_target(category, counter, &mut structure_rng);
            counter += 1;
            let edge = (src, dst);
            if used.insert(edge.clone()) {
                added.insert(edge);
            }
        }
    }

    let mut per_variant = BTreeMap::new();
    for (i, variant) in variants.iter().enumerate() {
        per_variant.insert(
            variant.clone(),
            VariantTruth {
                pruned_fp: pruned_per_variant[i].clone(),
                added: added_per_variant[i].clone(),
            },
        );
    }
    let truth = PlantedTruth { base_edges, true_edges, false_edges, per_variant };

    // Chain order spec: v1 over v2 over ... over v{K}.
    let spec = chain_spec(variant_count);

    // Rendering with independently seeded noise.
    let mut noise_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut graphs = BTreeMap::new();
    for variant in &variants {
        let edges = truth.variant_edges(variant).expect("variant exists");
        let mut nodes: BTreeSet<MethodRef> = pool.iter().cloned().collect();
        for (src, dst) in &edges {
            nodes.insert(src.clone());
            nodes.insert(dst.clone());
        }
        graphs.insert(
            variant.clone(),
            render_variant_graph(&nodes, &edges, &params.noise, &mut noise_rng),
        );
    }

    Ok(SynthFamily {
        program: format!("synth-{seed}"),
        seed,
        params: params.clone(),
        spec,
        variants,
        graphs,
        truth,
    })
}

fn chain_spec(variant_count: usize) -> OrderSpec {
    let algorithms: Vec<String> = (1..=variant_count).map(|i| format!("v{i}")).collect();
    let alg_order: Vec<(String, String)> =
        algorithms.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let wire = serde_json::json!({
        "frameworks": [{
            "name": SYNTH_FRAMEWORK,
            "algorithms": algorithms,
            "configs": [],
            "alg_order": alg_order,
            "cfg_order": [],
        }],
    });
    OrderSpec::load(wire.to_string().as_bytes()).expect("chain spec is valid")
}

fn render_variant_graph(
    nodes: &BTreeSet<MethodRef>,
    edges: &BTreeSet<CallEdge>,
    noise: &NoiseParams,
    rng: &mut ChaCha8Rng,
) -> RawGraph {
    let flavor = if noise.enabled && noise.mixed_dialects {
        [SignatureFlavor::Canonical, SignatureFlavor::Soot, SignatureFlavor::Wala]
            [rng.gen_range(0..3)]
    } else {
        SignatureFlavor::Canonical
    };
    let mut raw = RawGraph::new(flavor);
    let mut ids: BTreeMap<&MethodRef, String> = BTreeMap::new();
    for (i, node) in nodes.iter().enumerate() {
        let mut label = render_signature(node, flavor);
        let id = if noise.enabled {
            if rng.gen_bool(noise.hash_suffix_prob) {
                label = format!("{label}_{:08x}", rng.gen::<u32>());
            }
            format!("n{i}")
        } else {
            label.clone()
        };
        raw.insert_node(id.clone(), label);
        ids.insert(node, id);
    }
    for (src, dst) in edges {
        raw.edges.insert((ids[src].clone(), ids[dst].clone()));
    }
    if noise.enabled && !nodes.is_empty() {
        let real_ids: Vec<&String> = ids.values().collect();
        for i in 0..noise.metadata_nodes {
            let meta_id = format!("meta{i}");
            raw.insert_node(meta_id.clone(), format!("Cluster#{i}"));
            let other = (*real_ids.choose(rng).unwrap()).clone();
            if rng.gen_bool(0.5) {
                raw.edges.insert((meta_id, other));
            } else {
                raw.edges.insert((other, meta_id));
            }
        }
    }
    raw
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

/// Outcome of checking detector results against the planted truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub mismatches: Vec<String>,
}

/// Recomputes every comparison by direct set difference over the clean
/// planted sets and checks the detector agreed; also asserts the refinement
/// contract on the truth itself: along pure-pruning steps true positives
/// stay fixed and false positives only shrink.
pub fn oracle_check(
    truth: &PlantedTruth,
    results: &[(Variant, Variant, BTreeSet<CallEdge>)],
) -> Verdict {
    let mut mismatches = Vec::new();
    for (hi, lo, detected) in results {
        match truth.expected_violations(hi, lo) {
            Some(expected) => {
                if &expected != detected {
                    let missing: Vec<String> =
                        expected.difference(detected).map(edge_string).collect();
                    let spurious: Vec<String> =
                        detected.difference(&expected).map(edge_string).collect();
                    mismatches.push(format!(
                        "{hi} vs {lo}: expected {} violations, detector reported {} \
                         (missing: [{}]; spurious: [{}])",
                        expected.len(),
                        detected.len(),
                        missing.join(", "),
                        spurious.join(", "),
                    ));
                }
            }
            None => mismatches.push(format!("{hi} vs {lo}: unknown variant in results")),
        }
    }

    let variants: Vec<&Variant> = truth.per_variant.keys().collect();
    for hi in &variants {
        for lo in &variants {
            let (hi_t, lo_t) = (&truth.per_variant[**hi], &truth.per_variant[**lo]);
            // hi prunes at least what lo prunes => treat as a chain step
            if hi_t.pruned_fp.is_superset(&lo_t.pruned_fp) && hi != lo {
                let hi_edges = truth.variant_edges(hi).unwrap();
                let lo_edges = truth.variant_edges(lo).unwrap();
                let tp_hi: BTreeSet<_> = hi_edges.intersection(&truth.true_edges).collect();
                let tp_lo: BTreeSet<_> = lo_edges.intersection(&truth.true_edges).collect();
                if tp_hi != tp_lo {
                    mismatches.push(format!("{hi} vs {lo}: true-positive set not stable"));
                }
                let fp_hi: BTreeSet<_> = hi_edges.intersection(&truth.false_edges).collect();
                let fp_lo: BTreeSet<_> = lo_edges.intersection(&truth.false_edges).collect();
                if !fp_hi.is_subset(&fp_lo) {
                    mismatches.push(format!("{hi} vs {lo}: false positives grew"));
                }
            }
        }
    }

    Verdict { passed: mismatches.is_empty(), mismatches }
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct WrittenFamily {
    pub manifest_path: PathBuf,
    pub spec_path: PathBuf,
    pub truth_path: PathBuf,
    pub graph_paths: Vec<PathBuf>,
}

#[derive(Serialize)]
struct TruthWire<'a> {
    seed: u64,
    params: &'a FamilyParams,
    program: &'a str,
    base_edges: Vec<String>,
    true_edges: Vec<String>,
    false_edges: Vec<String>,
    variants: Vec<VariantTruthWire>,
}

#[derive(Serialize)]
struct VariantTruthWire {
    variant: Variant,
    pruned_fp: Vec<String>,
    added: Vec<String>,
}

fn edge_strings(edges: &BTreeSet<CallEdge>) -> Vec<String> {
    edges.iter().map(edge_string).collect()
}

/// Serializes the planted truth sidecar.
pub fn truth_json(family: &SynthFamily) -> String {
    let wire = TruthWire {
        seed: family.seed,
        params: &family.params,
        program: &family.program,
        base_edges: edge_strings(&family.truth.base_edges),
        true_edges: edge_strings(&family.truth.true_edges),
        false_edges: edge_strings(&family.truth.false_edges),
        variants: family
            .truth
            .per_variant
            .iter()
            .map(|(variant, vt)| VariantTruthWire {
                variant: variant.clone(),
                pruned_fp: edge_strings(&vt.pruned_fp),
                added: edge_strings(&vt.added),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&wire).expect("truth serializes");
    s.push('\n');
    s
}

/// Writes the family to a directory: one graph file per variant (canonical
/// JSON when clean, DOT when noisy so internal node ids survive), the chain
/// order spec, the planted-truth sidecar, and a ready-to-run campaign
/// manifest. Deterministic: the same seed writes identical bytes.
pub fn write_family(family: &SynthFamily, dir: impl AsRef<Path>) -> std::io::Result<WrittenFamily> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;

    let spec_path = dir.join("order_spec.json");
    std::fs::write(&spec_path, family.spec.to_json())?;

    let truth_path = dir.join("truth.json");
    std::fs::write(&truth_path, truth_json(family))?;

    let mut entries = Vec::new();
    let mut graph_paths = Vec::new();
    for variant in &family.variants {
        let raw = &family.graphs[variant];
        let (file_name, format, contents) = if family.params.noise.enabled {
            let name = format!("{}.dot", variant.algorithm);
            (name, FileFormat::Dot, crate::dot::write_dot(raw))
        } else {
            let edges = family.truth.variant_edges(variant).expect("variant exists");
            let graph = CallGraph::new(&family.program, variant.clone(), BTreeSet::new(), edges);
            let name = format!("{}.json", variant.algorithm);
            (name, FileFormat::CanonicalJson, write_canonical_json(&graph))
        };
        let path = dir.join(&file_name);
        std::fs::write(&path, contents)?;
        entries.push(ManifestEntry {
            program: family.program.clone(),
            variant: variant.clone(),
            file: path.clone(),
            format,
            flavor: raw.flavor,
        });
        graph_paths.push(path);
    }

    let manifest = Manifest {
        spec_path: Some(spec_path.clone()),
        corpus: vec![family.program.clone()],
        entries,
    };
    let manifest_path = dir.join("manifest.json");
    std::fs::write(&manifest_path, manifest.to_json(dir))?;

    Ok(WrittenFamily { manifest_path, spec_path, truth_path, graph_paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::{tag_root_cause, RootCauseCategory};

    #[test]
    fn planted_sets_respect_the_refinement_contract() {
        let family = generate_family(7, &FamilyParams::default()).unwrap();
        let t = &family.truth;
        assert!(t.true_edges.is_disjoint(&t.false_edges));
        let rebuilt: BTreeSet<_> = t.true_edges.union(&t.false_edges).cloned().collect();
        assert_eq!(rebuilt, t.base_edges);
        for vt in t.per_variant.values() {
            assert!(vt.pruned_fp.is_subset(&t.false_edges));
            assert!(vt.added.is_disjoint(&t.base_edges));
        }
        // base variant is untouched
        let last = family.variants.last().unwrap();
        assert!(t.per_variant[last].pruned_fp.is_empty());
        assert!(t.per_variant[last].added.is_empty());
    }

    #[test]
    fn adjacent_expected_violations_equal_the_planted_additions() {
        let params = FamilyParams { violations_per_step: 6, chain_length: 2, ..Default::default() };
        let family = generate_family(11, &params).unwrap();
        for (hi, lo) in family.adjacent_pairs() {
            let expected = family.truth.expected_violations(&hi, &lo).unwrap();
            assert_eq!(expected, family.truth.per_variant[&hi].added);
            assert_eq!(expected.len(), 6);
        }
    }

    #[test]
    fn zero_violations_means_pure_pruning() {
        let params = FamilyParams { violations_per_step: 0, ..Default::default() };
        let family = generate_family(3, &params).unwrap();
        for (hi, lo) in family.ordered_pairs() {
            assert!(family.truth.expected_violations(&hi, &lo).unwrap().is_empty());
        }
    }

    #[test]
    fn planted_targets_tag_as_their_category() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut sampler = SignatureSampler::new();
        let src = sampler.sample_plain(&mut rng);
        let expected = [
            RootCauseCategory::StaticInit,
            RootCauseCategory::InvokedynamicLambda,
            RootCauseCategory::Reflection,
            RootCauseCategory::Lifecycle,
        ];
        for (category, expected) in expected.iter().enumerate() {
            for counter in 0..10 {
                let dst = planted_target(category, counter, &mut rng);
                let cause = tag_root_cause(&(src.clone(), dst));
                assert_eq!(cause.category, *expected);
            }
        }
    }

    #[test]
    fn same_seed_is_deterministic_and_noise_does_not_change_structure() {
        let noisy = FamilyParams::default();
        let clean = FamilyParams { noise: NoiseParams::off(), ..FamilyParams::default() };
        let a = generate_family(42, &noisy).unwrap();
        let b = generate_family(42, &noisy).unwrap();
        assert_eq!(a.truth, b.truth);
        assert_eq!(a.graphs, b.graphs);
        let c = generate_family(42, &clean).unwrap();
        assert_eq!(a.truth, c.truth);
    }

    #[test]
    fn infeasible_params_are_rejected() {
        let params = FamilyParams { n_nodes: 3, n_edges: 100, ..Default::default() };
        assert!(generate_family(1, &params).is_err());
        let params = FamilyParams { n_nodes: 0, ..Default::default() };
        assert!(generate_family(1, &params).is_err());
    }

    #[test]
    fn stub_detector_fails_the_oracle() {
        let params = FamilyParams { violations_per_step: 3, ..Default::default() };
        let family = generate_family(9, &params).unwrap();
        let results: Vec<(Variant, Variant, BTreeSet<CallEdge>)> = family
            .adjacent_pairs()
            .into_iter()
            .map(|(hi, lo)| (hi, lo, BTreeSet::new()))
            .collect();
        let verdict = oracle_check(&family.truth, &results);
        assert!(!verdict.passed);
        assert!(!verdict.mismatches.is_empty());
    }

    #[test]
    fn honest_results_pass_the_oracle() {
        let family = generate_family(13, &FamilyParams::default()).unwrap();
        let results: Vec<(Variant, Variant, BTreeSet<CallEdge>)> = family
            .ordered_pairs()
            .into_iter()
            .map(|(hi, lo)| {
                let v = family.truth.expected_violations(&hi, &lo).unwrap();
                (hi, lo, v)
            })
            .collect();
        assert!(oracle_check(&family.truth, &results).passed);
    }
}
