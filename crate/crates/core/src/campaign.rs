//! Campaign runner: enumerates the testing dimensions over a corpus
//! manifest, compares every ordered pair per program, and aggregates the
//! outcomes into a deterministic report (JSON, CSV, markdown).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detector::{
    compare, ComparisonStatus, RootCauseCategory, Similarity,
};
use crate::ingest;
use crate::model::{CallGraph, FileFormat, GraphStatus, SignatureFlavor};
use crate::normalize::{normalize, Denylist};
use crate::order::{
    config_label, OrderSpec, Provenance, Relation, RelationKind, SpecError, Variant,
};

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error("order spec error: {0}")]
    Spec(#[from] SpecError),
    #[error("internal comparison error: {0}")]
    Detect(#[from] crate::detector::DetectError),
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

/// Binds (program, variant) pairs to graph dumps on disk.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub spec_path: Option<PathBuf>,
    pub corpus: Vec<String>,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub program: String,
    pub variant: Variant,
    pub file: PathBuf,
    pub format: FileFormat,
    pub flavor: SignatureFlavor,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestWire {
    #[serde(default)]
    spec: Option<String>,
    corpus: Vec<String>,
    entries: Vec<EntryWire>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryWire {
    program: String,
    framework: String,
    algorithm: String,
    #[serde(default)]
    config: Vec<String>,
    file: String,
    format: FileFormat,
    flavor: SignatureFlavor,
}

impl Manifest {
    /// Parses manifest JSON; relative paths resolve against `base_dir`.
    /// Rejects duplicate (program, variant) bindings.
    pub fn load(bytes: &[u8], base_dir: &Path) -> Result<Manifest, CampaignError> {
        let wire: ManifestWire = serde_json::from_slice(bytes)
            .map_err(|e| CampaignError::Manifest(e.to_string()))?;
        let mut entries = Vec::with_capacity(wire.entries.len());
        let mut seen: BTreeSet<(String, Variant)> = BTreeSet::new();
        for e in wire.entries {
            let variant = Variant::new(&e.framework, &e.algorithm).with_config(e.config.clone());
            if !seen.insert((e.program.clone(), variant.clone())) {
                return Err(CampaignError::Manifest(format!(
                    "duplicate file binding for program {:?} and variant {variant}",
                    e.program
                )));
            }
            entries.push(ManifestEntry {
                program: e.program,
                variant,
                file: base_dir.join(e.file),
                format: e.format,
                flavor: e.flavor,
            });
        }
        Ok(Manifest {
            spec_path: wire.spec.map(|s| base_dir.join(s)),
            corpus: wire.corpus,
            entries,
        })
    }

    pub fn load_file(path: impl AsRef<Path>) -> Result<Manifest, CampaignError> {
        let path = path.as_ref();
        let bytes = std::fs::read(path)
            .map_err(|e| CampaignError::Manifest(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Manifest::load(&bytes, base)
    }

    /// Loads the order spec named by the manifest, or the bundled default
    /// when none is named.
    pub fn load_spec(&self) -> Result<OrderSpec, CampaignError> {
        match &self.spec_path {
            Some(path) => Ok(OrderSpec::load_file(path)?),
            None => Ok(OrderSpec::bundled_default()),
        }
    }

    /// Every variant with at least one file binding.
    pub fn variants(&self) -> BTreeSet<Variant> {
        self.entries.iter().map(|e| e.variant.clone()).collect()
    }

    pub fn entry(&self, program: &str, variant: &Variant) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.program == program && &e.variant == variant)
    }

    pub fn to_json(&self, base_dir: &Path) -> String {
        let wire = ManifestWire {
            spec: self.spec_path.as_ref().map(|p| relative_to(p, base_dir)),
            corpus: self.corpus.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| EntryWire {
                    program: e.program.clone(),
                    framework: e.variant.framework.clone(),
                    algorithm: e.variant.algorithm.clone(),
                    config: e.variant.config.iter().cloned().collect(),
                    file: relative_to(&e.file, base_dir),
                    format: e.format,
                    flavor: e.flavor,
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&wire).expect("manifest serializes");
        s.push('\n');
        s
    }
}

fn relative_to(path: &Path, base: &Path) -> String {
    path.strip_prefix(base).unwrap_or(path).to_string_lossy().into_owned()
}

// ---------------------------------------------------------------------------
// Pair enumeration
// ---------------------------------------------------------------------------

/// The testing dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dimension {
    /// Same framework and algorithm, ordered configuration pairs.
    ConfigIntra,
    /// Same framework and configuration, ordered algorithm pairs.
    AlgIntraSameCfg,
    /// Same framework, product-order pairs where both components differ.
    AlgCfgHybrid,
    /// Product-order pairs spanning frameworks.
    CrossFramework,
    /// Declared theoretically-equivalent variant pairs.
    Equivalence,
}

impl Dimension {
    pub const ALL: [Dimension; 5] = [
        Dimension::ConfigIntra,
        Dimension::AlgIntraSameCfg,
        Dimension::AlgCfgHybrid,
        Dimension::CrossFramework,
        Dimension::Equivalence,
    ];
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Dimension::ConfigIntra => "config-intra",
            Dimension::AlgIntraSameCfg => "alg-intra-same-cfg",
            Dimension::AlgCfgHybrid => "alg-cfg-hybrid",
            Dimension::CrossFramework => "cross-framework",
            Dimension::Equivalence => "equivalence",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Dimension {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "config-intra" => Ok(Dimension::ConfigIntra),
            "alg-intra-same-cfg" => Ok(Dimension::AlgIntraSameCfg),
            "alg-cfg-hybrid" => Ok(Dimension::AlgCfgHybrid),
            "cross-framework" => Ok(Dimension::CrossFramework),
            "equivalence" => Ok(Dimension::Equivalence),
            other => Err(format!("unknown dimension {other:?}")),
        }
    }
}

/// Enumerates the ordered variant pairs of one dimension, restricted to
/// variants that have at least one file in the manifest. Every emitted pair
/// is related in the declared orders.
pub fn enumerate_pairs(
    spec: &OrderSpec,
    manifest: &Manifest,
    dimension: Dimension,
) -> Vec<Relation> {
    let variants: Vec<Variant> = manifest.variants().into_iter().collect();
    let mut out = Vec::new();
    match dimension {
        Dimension::ConfigIntra => {
            for hi in &variants {
                for lo in &variants {
                    if hi != lo
                        && hi.framework == lo.framework
                        && hi.algorithm == lo.algorithm
                        && spec.cfg_precedes(&hi.framework, &hi.config, &lo.framework, &lo.config)
                    {
                        out.push(precision(spec, hi, lo));
                    }
                }
            }
        }
        Dimension::AlgIntraSameCfg => {
            for hi in &variants {
                for lo in &variants {
                    if hi != lo
                        && hi.framework == lo.framework
                        && hi.config == lo.config
                        && hi.algorithm != lo.algorithm
                        && spec.alg_precedes(&hi.alg_ref(), &lo.alg_ref())
                    {
                        out.push(precision(spec, hi, lo));
                    }
                }
            }
        }
        Dimension::AlgCfgHybrid => {
            for hi in &variants {
                for lo in &variants {
                    if hi.framework == lo.framework
                        && hi.algorithm != lo.algorithm
                        && hi.config != lo.config
                        && spec.variant_precedes(hi, lo)
                    {
                        out.push(precision(spec, hi, lo));
                    }
                }
            }
        }
        Dimension::CrossFramework => {
            for hi in &variants {
                for lo in &variants {
                    if hi.framework != lo.framework && spec.variant_precedes(hi, lo) {
                        out.push(precision(spec, hi, lo));
                    }
                }
            }
        }
        Dimension::Equivalence => {
            let present: BTreeSet<&Variant> = variants.iter().collect();
            for (a, b) in spec.equivalence_pairs() {
                if present.contains(a) && present.contains(b) {
                    out.push(Relation {
                        kind: RelationKind::Equivalence,
                        left: a.clone(),
                        right: b.clone(),
                        provenance: Provenance::Declared,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

fn precision(spec: &OrderSpec, hi: &Variant, lo: &Variant) -> Relation {
    // Declared provenance only when the exact algorithm edge was written
    // down and the configurations agree; everything else is derived.
    let declared = spec
        .closure_relations()
        .iter()
        .any(|r| {
            r.provenance == Provenance::Declared
                && r.left.alg_ref() == hi.alg_ref()
                && r.right.alg_ref() == lo.alg_ref()
        })
        && hi.config == lo.config;
    Relation {
        kind: RelationKind::Precision,
        left: hi.clone(),
        right: lo.clone(),
        provenance: if declared { Provenance::Declared } else { Provenance::DerivedProduct },
    }
}

// ---------------------------------------------------------------------------
// Report model
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Compared,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub left: Variant,
    pub right: Variant,
    pub relation_kind: RelationKind,
    /// Arithmetic mean of per-program Jaccard over compared programs.
    pub macro_similarity: Option<Similarity>,
    /// Jaccard of per-program edge sets pooled disjointly.
    pub micro_similarity: Option<Similarity>,
    pub total_violations: u64,
    pub programs_compared: u32,
    pub programs_failed: u32,
    pub programs_skipped: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub dimension: Dimension,
    pub rows: Vec<PairRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DrillRow {
    pub dimension: Dimension,
    pub left: Variant,
    pub right: Variant,
    pub program: String,
    pub status: RowStatus,
    pub similarity: Option<Similarity>,
    pub violations: u64,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub notes: Vec<String>,
    pub dimensions: Vec<DimensionReport>,
    pub tag_histogram: BTreeMap<RootCauseCategory, u64>,
    pub drill_down: Vec<DrillRow>,
}

impl CampaignReport {
    pub fn total_violations(&self) -> u64 {
        self.dimensions.iter().flat_map(|d| &d.rows).map(|r| r.total_violations).sum()
    }

    pub fn pair_count(&self) -> usize {
        self.dimensions.iter().map(|d| d.rows.len()).sum()
    }
}

fn report_notes() -> Vec<String> {
    vec![
        "similarity: macro average (mean of per-program Jaccard) is the displayed value; \
         the micro average (Jaccard over per-program edge sets pooled disjointly) is reported \
         alongside"
            .to_string(),
        "equivalence divergence is counted as the symmetric difference of edge sets".to_string(),
        "violation totals are sums over compared programs; skipped programs never count as 0%"
            .to_string(),
    ]
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub dimensions: Vec<Dimension>,
    pub denylist: Denylist,
    /// Worker threads for the comparison fan-out; `None` uses the global
    /// pool. Output is deterministic regardless.
    pub jobs: Option<usize>,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            dimensions: Dimension::ALL.to_vec(),
            denylist: Denylist::default(),
            jobs: None,
        }
    }
}

enum Loaded {
    Graph(Box<CallGraph>),
    Failed(GraphStatus),
    Unreadable(String),
}

fn load_entry(entry: &ManifestEntry, denylist: &Denylist) -> Loaded {
    let text = match std::fs::read_to_string(&entry.file) {
        Ok(t) => t,
        Err(e) => return Loaded::Unreadable(format!("cannot read {}: {e}", entry.file.display())),
    };
    let (raw, status) = match entry.format {
        FileFormat::CanonicalJson => match ingest::read_canonical_doc(text.as_bytes()) {
            Ok(doc) => (doc.graph, doc.status),
            Err(e) => return Loaded::Unreadable(e.to_string()),
        },
        other => match ingest::read_raw(&text, other) {
            Ok(raw) => (raw, GraphStatus::Ok),
            Err(e) => return Loaded::Unreadable(e.to_string()),
        },
    };
    if status != GraphStatus::Ok {
        return Loaded::Failed(status);
    }
    let raw = raw.with_flavor(entry.flavor);
    match normalize(&raw, &entry.program, &entry.variant, denylist) {
        Ok(n) => Loaded::Graph(Box::new(n.graph)),
        Err(e) => Loaded::Unreadable(e.to_string()),
    }
}

/// Runs the configured dimensions over the manifest and aggregates a
/// deterministic report. Per-file problems demote the affected rows to
/// skipped; analysis-level failures recorded in the dumps surface as
/// `Failed` rows.
pub fn run_campaign(
    spec: &OrderSpec,
    manifest: &Manifest,
    options: &CampaignOptions,
) -> Result<CampaignReport, CampaignError> {
    for entry in &manifest.entries {
        spec.validate_variant(&entry.variant).map_err(|e| CampaignError::Manifest(e.to_string()))?;
    }

    let graphs: BTreeMap<(String, Variant), Loaded> = manifest
        .entries
        .iter()
        .map(|e| ((e.program.clone(), e.variant.clone()), load_entry(e, &options.denylist)))
        .collect();

    let mut tasks: Vec<(Dimension, Relation, String)> = Vec::new();
    for &dimension in &options.dimensions {
        for relation in enumerate_pairs(spec, manifest, dimension) {
            for program in &manifest.corpus {
                tasks.push((dimension, relation.clone(), program.clone()));
            }
        }
    }

    let run = |tasks: &[(Dimension, Relation, String)]| -> Result<Vec<TaskOutcome>, CampaignError> {
        tasks
            .par_iter()
            .map(|(dimension, relation, program)| {
                execute_task(spec, &graphs, *dimension, relation, program)
            })
            .collect()
    };
    let mut outcomes = match options.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| CampaignError::Manifest(format!("cannot build thread pool: {e}")))?;
            pool.install(|| run(&tasks))?
        }
        None => run(&tasks)?,
    };
    outcomes.sort_by(|a, b| {
        (a.dimension, &a.relation.left, &a.relation.right, &a.program).cmp(&(
            b.dimension,
            &b.relation.left,
            &b.relation.right,
            &b.program,
        ))
    });

    Ok(aggregate(&options.dimensions, outcomes))
}

struct TaskOutcome {
    dimension: Dimension,
    relation: Relation,
    program: String,
    status: RowStatus,
    similarity: Option<Similarity>,
    violations: u64,
    intersection: u64,
    union: u64,
    histogram: BTreeMap<RootCauseCategory, u64>,
    note: String,
}

fn execute_task(
    spec: &OrderSpec,
    graphs: &BTreeMap<(String, Variant), Loaded>,
    dimension: Dimension,
    relation: &Relation,
    program: &str,
) -> Result<TaskOutcome, CampaignError> {
    let mut outcome = TaskOutcome {
        dimension,
        relation: relation.clone(),
        program: program.to_string(),
        status: RowStatus::Skipped,
        similarity: None,
        violations: 0,
        intersection: 0,
        union: 0,
        histogram: BTreeMap::new(),
        note: String::new(),
    };

    let mut sides = Vec::with_capacity(2);
    for variant in [&relation.left, &relation.right] {
        match graphs.get(&(program.to_string(), variant.clone())) {
            Some(Loaded::Graph(g)) => sides.push(g.as_ref()),
            Some(Loaded::Failed(status)) => {
                outcome.status = RowStatus::Failed;
                outcome.note = format!("{variant}: analysis {status}");
                return Ok(outcome);
            }
            Some(Loaded::Unreadable(note)) => {
                outcome.note = format!("{variant}: {note}");
                return Ok(outcome);
            }
            None => {
                outcome.note = format!("{variant}: no file for program {program:?}");
                return Ok(outcome);
            }
        }
    }

    let result = compare(spec, sides[0], sides[1], relation)?;
    if result.status == ComparisonStatus::SkippedFailedInput {
        outcome.status = RowStatus::Failed;
        return Ok(outcome);
    }
    outcome.status = RowStatus::Compared;
    outcome.intersection = sides[0].edges.intersection(&sides[1].edges).count() as u64;
    outcome.union = sides[0].edges.union(&sides[1].edges).count() as u64;
    outcome.violations = result.violation_count();
    outcome.histogram = result.tag_histogram();
    outcome.similarity = Some(result.jaccard);
    Ok(outcome)
}

fn aggregate(dimensions: &[Dimension], outcomes: Vec<TaskOutcome>) -> CampaignReport {
    let mut grouped: BTreeMap<(Dimension, Relation), Vec<&TaskOutcome>> = BTreeMap::new();
    for o in &outcomes {
        grouped.entry((o.dimension, o.relation.clone())).or_default().push(o);
    }

    let mut per_dimension: BTreeMap<Dimension, Vec<PairRow>> = BTreeMap::new();
    let mut tag_histogram: BTreeMap<RootCauseCategory, u64> = BTreeMap::new();
    for ((dimension, relation), group) in &grouped {
        let compared: Vec<&&TaskOutcome> =
            group.iter().filter(|o| o.status == RowStatus::Compared).collect();
        let macro_similarity =
            Similarity::mean(compared.iter().filter_map(|o| o.similarity.as_ref()));
        let micro_similarity = (!compared.is_empty()).then(|| {
            Similarity::from_counts(
                compared.iter().map(|o| o.intersection).sum(),
                compared.iter().map(|o| o.union).sum(),
            )
        });
        for o in &compared {
            for (cat, n) in &o.histogram {
                *tag_histogram.entry(*cat).or_insert(0) += n;
            }
        }
        per_dimension.entry(*dimension).or_default().push(PairRow {
            left: relation.left.clone(),
            right: relation.right.clone(),
            relation_kind: relation.kind,
            macro_similarity,
            micro_similarity,
            total_violations: compared.iter().map(|o| o.violations).sum(),
            programs_compared: compared.len() as u32,
            programs_failed: group.iter().filter(|o| o.status == RowStatus::Failed).count() as u32,
            programs_skipped: group.iter().filter(|o| o.status == RowStatus::Skipped).count()
                as u32,
        });
    }

    let drill_down = outcomes
        .iter()
        .map(|o| DrillRow {
            dimension: o.dimension,
            left: o.relation.left.clone(),
            right: o.relation.right.clone(),
            program: o.program.clone(),
            status: o.status,
            similarity: o.similarity.clone(),
            violations: o.violations,
            note: o.note.clone(),
        })
        .collect();

    CampaignReport {
        notes: report_notes(),
        dimensions: dimensions
            .iter()
            .map(|&dimension| DimensionReport {
                dimension,
                rows: per_dimension.remove(&dimension).unwrap_or_default(),
            })
            .collect(),
        tag_histogram,
        drill_down,
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

/// Cell in the `Similarity (%) / #Violations` convention; pairs with no
/// compared programs render as `Fail`.
fn similarity_cell(row: &PairRow) -> String {
    match &row.macro_similarity {
        Some(sim) => format!("{}%/{}", sim.percent_string(), row.total_violations),
        None => "Fail".to_string(),
    }
}

pub fn render_report(report: &CampaignReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Markdown => render_markdown(report),
    }
}

fn render_csv(report: &CampaignReport) -> String {
    let mut out = String::from(
        "dimension,left,right,relation,similarity_pct,micro_pct,violations,compared,failed,skipped\n",
    );
    for dim in &report.dimensions {
        for row in &dim.rows {
            let macro_pct =
                row.macro_similarity.as_ref().map(|s| s.percent_string()).unwrap_or_else(|| "Fail".into());
            let micro_pct =
                row.micro_similarity.as_ref().map(|s| s.percent_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                dim.dimension,
                row.left,
                row.right,
                row.relation_kind,
                macro_pct,
                micro_pct,
                row.total_violations,
                row.programs_compared,
                row.programs_failed,
                row.programs_skipped,
            ));
        }
    }
    out
}

fn render_markdown(report: &CampaignReport) -> String {
    let mut out = String::from("# Campaign Report\n");
    if !report.notes.is_empty() {
        out.push('\n');
        for note in &report.notes {
            out.push_str(&format!("- {note}\n"));
        }
    }
    for dim in &report.dimensions {
        out.push_str(&format!("\n## {}\n\n", dim.dimension));
        if dim.rows.is_empty() {
            out.push_str("No pairs.\n");
            continue;
        }
        out.push_str(
            "| More precise / Left | Less precise / Right | Relation | Similarity (%) / #Violations | Micro (%) | Compared | Failed | Skipped |\n",
        );
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        for row in &dim.rows {
            let micro = row
                .micro_similarity
                .as_ref()
                .map(|s| format!("{}%", s.percent_string()))
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                row.left,
                row.right,
                row.relation_kind,
                similarity_cell(row),
                micro,
                row.programs_compared,
                row.programs_failed,
                row.programs_skipped,
            ));
        }
    }
    out.push_str("\n## Root-cause histogram\n\n");
    if report.tag_histogram.is_empty() {
        out.push_str("No violations.\n");
    } else {
        out.push_str("| Category | Violations |\n|---|---|\n");
        for (cat, n) in &report.tag_histogram {
            out.push_str(&format!("| {cat} | {n} |\n"));
        }
    }
    out.push_str("\n## Per-program detail\n\n");
    if report.drill_down.is_empty() {
        out.push_str("No comparisons.\n");
    } else {
        out.push_str("| Dimension | Left | Right | Program | Status | Similarity | Violations | Note |\n");
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        for row in &report.drill_down {
            let sim = row
                .similarity
                .as_ref()
                .map(|s| format!("{}%", s.percent_string()))
                .unwrap_or_else(|| "-".into());
            let status = match row.status {
                RowStatus::Compared => "compared",
                RowStatus::Failed => "Fail",
                RowStatus::Skipped => "skip",
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                row.dimension, row.left, row.right, row.program, status, sim, row.violations, row.note,
            ));
        }
    }
    out
}

/// Pretty label used in reports for a variant's configuration column.
pub fn variant_config_label(v: &Variant) -> String {
    config_label(&v.config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    fn entry(program: &str, variant: Variant, file: &Path) -> ManifestEntry {
        ManifestEntry {
            program: program.into(),
            variant,
            file: file.to_path_buf(),
            format: FileFormat::CanonicalJson,
            flavor: SignatureFlavor::Canonical,
        }
    }

    fn wala_variant(alg: &str, cfg: &[&str]) -> Variant {
        Variant::new("WALA", alg).with_config(cfg.iter().copied())
    }

    fn manifest_with_variants(variants: &[Variant]) -> Manifest {
        Manifest {
            spec_path: None,
            corpus: vec!["p".into()],
            entries: variants
                .iter()
                .map(|v| entry("p", v.clone(), Path::new("unused.json")))
                .collect(),
        }
    }

    #[test]
    fn config_intra_enumerates_the_ordered_config_pairs() {
        let spec = OrderSpec::bundled_default();
        let variants: Vec<Variant> = [
            &[][..],
            &["FS"][..],
            &["OS"][..],
            &["FS", "OS"][..],
        ]
        .iter()
        .map(|cfg| wala_variant("RTA", cfg))
        .collect();
        let manifest = manifest_with_variants(&variants);
        let pairs = enumerate_pairs(&spec, &manifest, Dimension::ConfigIntra);
        // per algorithm: FS>BS, OS>BS, FS+OS>BS, FS+OS>FS, FS+OS>OS
        assert_eq!(pairs.len(), 5);
        for r in &pairs {
            assert!(spec.variant_precedes(&r.left, &r.right));
            assert_eq!(r.left.algorithm, r.right.algorithm);
        }
    }

    #[test]
    fn alg_intra_same_cfg_enumerates_ordered_algorithm_pairs_per_config() {
        let spec = OrderSpec::bundled_default();
        let mut variants = Vec::new();
        for alg in ["CHA", "RTA", "VTA"] {
            for cfg in [&[][..], &["FS"][..], &["OS"][..], &["FS", "OS"][..]] {
                variants.push(Variant::new("Soot", alg).with_config(cfg.iter().copied()));
            }
        }
        let manifest = manifest_with_variants(&variants);
        let pairs = enumerate_pairs(&spec, &manifest, Dimension::AlgIntraSameCfg);
        // {VTA>RTA, RTA>CHA, VTA>CHA} x 4 configs
        assert_eq!(pairs.len(), 12);
        for r in &pairs {
            assert_eq!(r.left.config, r.right.config);
            assert_ne!(r.left.algorithm, r.right.algorithm);
        }
    }

    #[test]
    fn hybrid_requires_both_components_to_differ() {
        let spec = OrderSpec::bundled_default();
        let variants = vec![
            wala_variant("0-CFA", &["FS"]),
            wala_variant("RTA", &[]),
            wala_variant("RTA", &["FS"]),
            wala_variant("0-CFA", &[]),
        ];
        let manifest = manifest_with_variants(&variants);
        let pairs = enumerate_pairs(&spec, &manifest, Dimension::AlgCfgHybrid);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].left, wala_variant("0-CFA", &["FS"]));
        assert_eq!(pairs[0].right, wala_variant("RTA", &[]));
    }

    #[test]
    fn equivalence_emits_the_declared_pairs_present_in_the_manifest() {
        let spec = OrderSpec::bundled_default();
        let variants = vec![
            Variant::new("Soot", "CHA"),
            Variant::new("SootUp", "CHA"),
            Variant::new("Soot", "RTA"),
            Variant::new("SootUp", "RTA"),
            Variant::new("WALA", "RTA"),
            wala_variant("RTA", &["FS"]),
            wala_variant("RTA", &["OS"]),
            wala_variant("RTA", &["FS", "OS"]),
        ];
        let manifest = manifest_with_variants(&variants);
        let pairs = enumerate_pairs(&spec, &manifest, Dimension::Equivalence);
        assert_eq!(pairs.len(), 7);
    }

    #[test]
    fn campaign_over_identical_graphs_is_all_clean() {
        let dir = tempfile::tempdir().unwrap();
        let spec = OrderSpec::bundled_default();
        let graph_json = r#"{"nodes":["p.C.f()","p.C.g()"],"edges":[[0,1]]}"#;
        let f1 = write_file(dir.path(), "a.json", graph_json);
        let f2 = write_file(dir.path(), "b.json", graph_json);
        let manifest = Manifest {
            spec_path: None,
            corpus: vec!["p".into()],
            entries: vec![
                entry("p", Variant::new("Soot", "VTA"), &f1),
                entry("p", Variant::new("Soot", "CHA"), &f2),
            ],
        };
        let report = run_campaign(&spec, &manifest, &CampaignOptions::default()).unwrap();
        assert_eq!(report.total_violations(), 0);
        let rows: Vec<&PairRow> = report.dimensions.iter().flat_map(|d| &d.rows).collect();
        assert!(!rows.is_empty());
        for row in rows {
            assert_eq!(row.macro_similarity.as_ref().unwrap(), &Similarity::one());
            assert_eq!(similarity_cell(row), "100.0%/0");
        }
    }

    #[test]
    fn failed_dumps_render_fail_rows() {
        let dir = tempfile::tempdir().unwrap();
        let spec = OrderSpec::bundled_default();
        let ok = write_file(dir.path(), "ok.json", r#"{"nodes":["p.C.f()"],"edges":[]}"#);
        let failed =
            write_file(dir.path(), "failed.json", r#"{"status":"failed","nodes":[],"edges":[]}"#);
        let manifest = Manifest {
            spec_path: None,
            corpus: vec!["p".into()],
            entries: vec![
                entry("p", Variant::new("Doop", "1-Object-Sensitive-Heap"), &failed),
                entry("p", Variant::new("Doop", "Context-Insensitive"), &ok),
            ],
        };
        let report = run_campaign(&spec, &manifest, &CampaignOptions::default()).unwrap();
        let row = report
            .dimensions
            .iter()
            .flat_map(|d| &d.rows)
            .find(|r| r.left.algorithm == "1-Object-Sensitive-Heap")
            .unwrap();
        assert_eq!(row.programs_failed, 1);
        assert_eq!(similarity_cell(row), "Fail");
    }

    #[test]
    fn duplicate_bindings_are_rejected() {
        let json = br#"{"corpus":["p"],"entries":[
            {"program":"p","framework":"Soot","algorithm":"CHA","config":[],
             "file":"a.json","format":"canonical-json","flavor":"canonical"},
            {"program":"p","framework":"Soot","algorithm":"CHA","config":[],
             "file":"b.json","format":"canonical-json","flavor":"canonical"}]}"#;
        let err = Manifest::load(json, Path::new(".")).unwrap_err();
        assert!(matches!(err, CampaignError::Manifest(_)));
    }

    #[test]
    fn empty_corpus_renders_header_only_report() {
        let spec = OrderSpec::bundled_default();
        let manifest = Manifest { spec_path: None, corpus: vec![], entries: vec![] };
        let report = run_campaign(&spec, &manifest, &CampaignOptions::default()).unwrap();
        assert_eq!(report.pair_count(), 0);
        let md = render_report(&report, ReportFormat::Markdown);
        assert!(md.starts_with("# Campaign Report"));
        let csv = render_csv(&report);
        assert_eq!(csv.lines().count(), 1);
    }
}
