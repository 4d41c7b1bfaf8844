//! Declared precision partial orders over analysis algorithms and
//! configurations, plus the derived relations: reflexive-transitive
//! closures, implicit soundness (both directions of every precision edge),
//! and the product order over algorithm-configuration pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A set of configuration flags; the empty set is the baseline (`BS`).
pub type ConfigSet = BTreeSet<String>;

/// Identifies who produced a call graph: framework, algorithm, and the set
/// of enabled configuration flags.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Variant {
    pub framework: String,
    pub algorithm: String,
    #[serde(default)]
    pub config: ConfigSet,
}

impl Variant {
    pub fn new(framework: impl Into<String>, algorithm: impl Into<String>) -> Self {
        Variant {
            framework: framework.into(),
            algorithm: algorithm.into(),
            config: ConfigSet::new(),
        }
    }

    pub fn with_config(mut self, flags: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.config = flags.into_iter().map(Into::into).collect();
        self
    }

    pub fn alg_ref(&self) -> AlgRef {
        AlgRef { framework: self.framework.clone(), algorithm: self.algorithm.clone() }
    }

    /// `BS` for the empty set, otherwise flags joined with `+`.
    pub fn config_label(&self) -> String {
        config_label(&self.config)
    }
}

pub fn config_label(config: &ConfigSet) -> String {
    if config.is_empty() {
        "BS".to_string()
    } else {
        config.iter().cloned().collect::<Vec<_>>().join("+")
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}[{}]", self.framework, self.algorithm, self.config_label())
    }
}

/// A framework-qualified algorithm name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AlgRef {
    pub framework: String,
    pub algorithm: String,
}

impl AlgRef {
    pub fn new(framework: impl Into<String>, algorithm: impl Into<String>) -> Self {
        AlgRef { framework: framework.into(), algorithm: algorithm.into() }
    }
}

impl fmt::Display for AlgRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.framework, self.algorithm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Precision,
    ImplicitSoundness,
    Equivalence,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RelationKind::Precision => "precision",
            RelationKind::ImplicitSoundness => "implicit-soundness",
            RelationKind::Equivalence => "equivalence",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Declared,
    DerivedClosure,
    DerivedImplicit,
    DerivedProduct,
}

/// One directed (or, for equivalence, unordered) relation between two
/// variants. For precision and implicit-soundness, `left` is the side the
/// relation claims is at least as precise / sound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub left: Variant,
    pub right: Variant,
    pub provenance: Provenance,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("order spec is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("order spec schema error: {0}")]
    Schema(String),
    #[error("unknown symbol {symbol:?} in {context}")]
    UnknownSymbol { symbol: String, context: String },
    #[error("precision relation has a cycle: {}", .cycle.join(" => "))]
    Cycle { cycle: Vec<String> },
    #[error("cannot read order spec: {0}")]
    Io(#[from] std::io::Error),
}

/// Per-framework grammar: which algorithms exist, which configuration flags
/// exist, and the declared orders over them.
#[derive(Debug, Clone)]
pub struct FrameworkSpec {
    pub algorithms: Vec<String>,
    pub configs: Vec<String>,
    pub alg_order: Vec<(String, String)>,
    pub cfg_order: Vec<(ConfigSet, ConfigSet)>,
}

/// Validated order specification with precomputed closures.
#[derive(Debug, Clone)]
pub struct OrderSpec {
    frameworks: BTreeMap<String, FrameworkSpec>,
    cross_alg_order: BTreeSet<(AlgRef, AlgRef)>,
    equivalences: BTreeSet<(Variant, Variant)>,
    alg_closure: BTreeSet<(AlgRef, AlgRef)>,
    cfg_closures: BTreeMap<String, BTreeSet<(ConfigSet, ConfigSet)>>,
}

// ---------------------------------------------------------------------------
// Wire schema
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct SpecWire {
    frameworks: Vec<FrameworkWire>,
    #[serde(default)]
    cross_alg_order: Vec<((String, String), (String, String))>,
    #[serde(default)]
    equivalences: Vec<(VariantWire, VariantWire)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FrameworkWire {
    name: String,
    algorithms: Vec<String>,
    #[serde(default)]
    configs: Vec<String>,
    #[serde(default)]
    alg_order: Vec<(String, String)>,
    #[serde(default)]
    cfg_order: Vec<(Vec<String>, Vec<String>)>,
}

type VariantWire = (String, String, Vec<String>);

fn variant_from_wire(w: &VariantWire) -> Variant {
    Variant::new(&w.0, &w.1).with_config(w.2.iter().cloned())
}

fn variant_to_wire(v: &Variant) -> VariantWire {
    (v.framework.clone(), v.algorithm.clone(), v.config.iter().cloned().collect())
}

// ---------------------------------------------------------------------------
// Closure machinery
// ---------------------------------------------------------------------------

/// Reflexive-transitive closure over an explicit universe (Warshall).
pub(crate) fn reflexive_transitive_closure<T: Ord + Clone>(
    universe: &BTreeSet<T>,
    edges: &BTreeSet<(T, T)>,
) -> BTreeSet<(T, T)> {
    let elems: Vec<&T> = universe.iter().collect();
    let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let n = elems.len();
    let mut reach = vec![false; n * n];
    for i in 0..n {
        reach[i * n + i] = true;
    }
    for (a, b) in edges {
        if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
            reach[i * n + j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i * n + k] {
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if reach[i * n + j] {
                out.insert((elems[i].clone(), elems[j].clone()));
            }
        }
    }
    out
}

/// Finds one cycle through declared edges if the closure is not
/// antisymmetric.
fn find_cycle<T: Ord + Clone>(
    closure: &BTreeSet<(T, T)>,
    edges: &BTreeSet<(T, T)>,
    label: impl Fn(&T) -> String,
) -> Option<Vec<String>> {
    let offender = closure
        .iter()
        .find(|(a, b)| a != b && closure.contains(&(b.clone(), a.clone())))?;
    let (start, via) = (&offender.0, &offender.1);
    // BFS start -> via over declared edges, then close the loop back.
    let path = bfs_path(edges, start, via)?;
    let back = bfs_path(edges, via, start)?;
    let mut names: Vec<String> = path.iter().map(&label).collect();
    names.extend(back.iter().skip(1).map(&label));
    Some(names)
}

fn bfs_path<T: Ord + Clone>(edges: &BTreeSet<(T, T)>, from: &T, to: &T) -> Option<Vec<T>> {
    let mut prev: BTreeMap<T, T> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from.clone()]);
    let mut seen: BTreeSet<T> = BTreeSet::from([from.clone()]);
    while let Some(cur) = queue.pop_front() {
        if &cur == to {
            let mut path = vec![cur.clone()];
            let mut walk = cur;
            while let Some(p) = prev.get(&walk) {
                path.push(p.clone());
                walk = p.clone();
            }
            path.reverse();
            return Some(path);
        }
        for (a, b) in edges {
            if a == &cur && seen.insert(b.clone()) {
                prev.insert(b.clone(), cur.clone());
                queue.push_back(b.clone());
            }
        }
    }
    None
}

fn powerset(flags: &[String]) -> Vec<ConfigSet> {
    let mut out = Vec::with_capacity(1 << flags.len());
    for mask in 0u32..(1 << flags.len()) {
        let set: ConfigSet = flags
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        out.push(set);
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// OrderSpec
// ---------------------------------------------------------------------------

const DEFAULT_SPEC_JSON: &str = include_str!("default_spec.json");

impl OrderSpec {
    /// Parses and validates a spec from its JSON schema. Rejects unknown
    /// algorithm/flag symbols and cyclic precision declarations.
    pub fn load(bytes: &[u8]) -> Result<OrderSpec, SpecError> {
        let wire: SpecWire = serde_json::from_slice(bytes)?;
        Self::from_wire(wire)
    }

    pub fn load_file(path: impl AsRef<Path>) -> Result<OrderSpec, SpecError> {
        Self::load(&std::fs::read(path)?)
    }

    /// The order spec shipped with the tool: Soot, SootUp, WALA and Doop
    /// algorithm chains, the field-/object-sensitivity configuration
    /// lattice, the cross-framework chain, and the declared equivalent
    /// algorithm pairs.
    pub fn bundled_default() -> OrderSpec {
        OrderSpec::load(DEFAULT_SPEC_JSON.as_bytes()).expect("bundled default spec is valid")
    }

    fn from_wire(wire: SpecWire) -> Result<OrderSpec, SpecError> {
        let mut frameworks = BTreeMap::new();
        for fw in wire.frameworks {
            let spec = FrameworkSpec {
                algorithms: fw.algorithms,
                configs: fw.configs,
                alg_order: fw.alg_order,
                cfg_order: fw
                    .cfg_order
                    .into_iter()
                    .map(|(hi, lo)| {
                        (hi.into_iter().collect::<ConfigSet>(), lo.into_iter().collect())
                    })
                    .collect(),
            };
            if frameworks.insert(fw.name.clone(), spec).is_some() {
                return Err(SpecError::Schema(format!("duplicate framework {:?}", fw.name)));
            }
        }
        let cross_alg_order: BTreeSet<(AlgRef, AlgRef)> = wire
            .cross_alg_order
            .iter()
            .map(|(hi, lo)| (AlgRef::new(&hi.0, &hi.1), AlgRef::new(&lo.0, &lo.1)))
            .collect();
        let equivalences: BTreeSet<(Variant, Variant)> = wire
            .equivalences
            .iter()
            .map(|(a, b)| {
                let (a, b) = (variant_from_wire(a), variant_from_wire(b));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();

        let mut spec = OrderSpec {
            frameworks,
            cross_alg_order,
            equivalences,
            alg_closure: BTreeSet::new(),
            cfg_closures: BTreeMap::new(),
        };
        spec.validate_symbols()?;
        spec.compute_closures()?;
        Ok(spec)
    }

    fn validate_symbols(&self) -> Result<(), SpecError> {
        for (name, fw) in &self.frameworks {
            for (hi, lo) in &fw.alg_order {
                for alg in [hi, lo] {
                    if !fw.algorithms.contains(alg) {
                        return Err(SpecError::UnknownSymbol {
                            symbol: alg.clone(),
                            context: format!("alg_order of framework {name}"),
                        });
                    }
                }
            }
            for (hi, lo) in &fw.cfg_order {
                for set in [hi, lo] {
                    for flag in set {
                        if !fw.configs.contains(flag) {
                            return Err(SpecError::UnknownSymbol {
                                symbol: flag.clone(),
                                context: format!("cfg_order of framework {name}"),
                            });
                        }
                    }
                }
            }
        }
        for (hi, lo) in &self.cross_alg_order {
            for alg in [hi, lo] {
                self.check_alg(alg, "cross_alg_order")?;
            }
        }
        for (a, b) in &self.equivalences {
            for v in [a, b] {
                self.validate_variant_inner(v, "equivalences")?;
            }
        }
        Ok(())
    }

    fn check_alg(&self, alg: &AlgRef, context: &str) -> Result<(), SpecError> {
        let fw = self.frameworks.get(&alg.framework).ok_or_else(|| SpecError::UnknownSymbol {
            symbol: alg.framework.clone(),
            context: context.to_string(),
        })?;
        if !fw.algorithms.contains(&alg.algorithm) {
            return Err(SpecError::UnknownSymbol {
                symbol: alg.to_string(),
                context: context.to_string(),
            });
        }
        Ok(())
    }

    fn validate_variant_inner(&self, v: &Variant, context: &str) -> Result<(), SpecError> {
        self.check_alg(&v.alg_ref(), context)?;
        let fw = &self.frameworks[&v.framework];
        for flag in &v.config {
            if !fw.configs.contains(flag) {
                return Err(SpecError::UnknownSymbol {
                    symbol: flag.clone(),
                    context: format!("{context} (framework {})", v.framework),
                });
            }
        }
        Ok(())
    }

    fn compute_closures(&mut self) -> Result<(), SpecError> {
        let mut alg_universe: BTreeSet<AlgRef> = BTreeSet::new();
        let mut alg_edges: BTreeSet<(AlgRef, AlgRef)> = self.cross_alg_order.clone();
        for (name, fw) in &self.frameworks {
            for alg in &fw.algorithms {
                alg_universe.insert(AlgRef::new(name, alg));
            }
            for (hi, lo) in &fw.alg_order {
                alg_edges.insert((AlgRef::new(name, hi), AlgRef::new(name, lo)));
            }
        }
        let closure = reflexive_transitive_closure(&alg_universe, &alg_edges);
        if let Some(cycle) = find_cycle(&closure, &alg_edges) {
            return Err(SpecError::Cycle { cycle });
        }
        self.alg_closure = closure;

        for (name, fw) in &self.frameworks {
            let universe: BTreeSet<ConfigSet> = powerset(&fw.configs).into_iter().collect();
            let edges: BTreeSet<(ConfigSet, ConfigSet)> = fw.cfg_order.iter().cloned().collect();
            let closure = reflexive_transitive_closure(&universe, &edges);
            if let Some(cycle) = find_cycle(&closure, &edges) {
                let cycle = cycle.iter().map(|s| format!("{name}:{s}")).collect();
                return Err(SpecError::Cycle { cycle });
            }
            self.cfg_closures.insert(name.clone(), closure);
        }
        Ok(())
    }

    // -- queries ------------------------------------------------------------

    pub fn frameworks(&self) -> impl Iterator<Item = (&String, &FrameworkSpec)> {
        self.frameworks.iter()
    }

    pub fn framework(&self, name: &str) -> Option<&FrameworkSpec> {
        self.frameworks.get(name)
    }

    /// All valid configuration sets of a framework (power set of its flags).
    pub fn config_universe(&self, framework: &str) -> Vec<ConfigSet> {
        self.frameworks.get(framework).map(|fw| powerset(&fw.configs)).unwrap_or_default()
    }

    /// Checks that a variant's framework, algorithm and flags all exist in
    /// the grammar.
    pub fn validate_variant(&self, v: &Variant) -> Result<(), SpecError> {
        self.validate_variant_inner(v, "variant")
    }

    pub fn alg_closure(&self) -> &BTreeSet<(AlgRef, AlgRef)> {
        &self.alg_closure
    }

    pub fn cfg_closure(&self, framework: &str) -> Option<&BTreeSet<(ConfigSet, ConfigSet)>> {
        self.cfg_closures.get(framework)
    }

    pub fn alg_precedes(&self, hi: &AlgRef, lo: &AlgRef) -> bool {
        self.alg_closure.contains(&(hi.clone(), lo.clone()))
    }

    /// Configuration order, also across frameworks: within one framework the
    /// framework's closure decides; across frameworks the pair must hold in
    /// both frameworks' closures (flags are shared names, but neither
    /// framework's lattice may be contradicted).
    pub fn cfg_precedes(
        &self,
        hi_framework: &str,
        hi: &ConfigSet,
        lo_framework: &str,
        lo: &ConfigSet,
    ) -> bool {
        let pair = (hi.clone(), lo.clone());
        if hi_framework == lo_framework {
            return self.cfg_closures.get(hi_framework).is_some_and(|c| c.contains(&pair));
        }
        self.cfg_closures.get(hi_framework).is_some_and(|c| c.contains(&pair))
            && self.cfg_closures.get(lo_framework).is_some_and(|c| c.contains(&pair))
    }

    /// Product order over algorithm-configuration pairs: `hi` is at least as
    /// precise as `lo` iff both the algorithm and the configuration
    /// components are ordered.
    pub fn variant_precedes(&self, hi: &Variant, lo: &Variant) -> bool {
        self.alg_precedes(&hi.alg_ref(), &lo.alg_ref())
            && self.cfg_precedes(&hi.framework, &hi.config, &lo.framework, &lo.config)
    }

    pub fn equivalence_pairs(&self) -> impl Iterator<Item = &(Variant, Variant)> {
        self.equivalences.iter()
    }

    pub fn declared_equivalent(&self, a: &Variant, b: &Variant) -> bool {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.equivalences.contains(&key)
    }

    fn declared_alg_edge(&self, hi: &AlgRef, lo: &AlgRef) -> bool {
        if self.cross_alg_order.contains(&(hi.clone(), lo.clone())) {
            return true;
        }
        hi.framework == lo.framework
            && self.frameworks.get(&hi.framework).is_some_and(|fw| {
                fw.alg_order
                    .iter()
                    .any(|(h, l)| h == &hi.algorithm && l == &lo.algorithm)
            })
    }

    // -- derived relation sets ----------------------------------------------

    /// The algorithm precision closure as relations over baseline variants.
    /// Declared edges keep `declared` provenance; everything else (including
    /// reflexive edges) is `derived-closure`.
    pub fn closure_relations(&self) -> Vec<Relation> {
        self.alg_closure
            .iter()
            .map(|(hi, lo)| Relation {
                kind: RelationKind::Precision,
                left: Variant::new(&hi.framework, &hi.algorithm),
                right: Variant::new(&lo.framework, &lo.algorithm),
                provenance: if self.declared_alg_edge(hi, lo) {
                    Provenance::Declared
                } else {
                    Provenance::DerivedClosure
                },
            })
            .collect()
    }

    /// For every non-reflexive precision closure edge `X over Y`, both
    /// `X >= Y` and `Y >= X` as implicit soundness relations.
    pub fn implicit_soundness_relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for (hi, lo) in &self.alg_closure {
            if hi == lo {
                continue;
            }
            let left = Variant::new(&hi.framework, &hi.algorithm);
            let right = Variant::new(&lo.framework, &lo.algorithm);
            out.push(Relation {
                kind: RelationKind::ImplicitSoundness,
                left: left.clone(),
                right: right.clone(),
                provenance: Provenance::DerivedImplicit,
            });
            out.push(Relation {
                kind: RelationKind::ImplicitSoundness,
                left: right,
                right: left,
                provenance: Provenance::DerivedImplicit,
            });
        }
        out.sort();
        out
    }

    fn variant_universe(&self) -> Vec<Variant> {
        let mut out = Vec::new();
        for (name, fw) in &self.frameworks {
            for alg in &fw.algorithms {
                for cfg in powerset(&fw.configs) {
                    out.push(Variant::new(name, alg).with_config(cfg));
                }
            }
        }
        out.sort();
        out
    }

    /// Materialized product order over the whole variant universe, reflexive
    /// pairs included.
    pub fn product_relations(&self) -> Vec<Relation> {
        let universe = self.variant_universe();
        let mut out = Vec::new();
        for hi in &universe {
            for lo in &universe {
                if self.variant_precedes(hi, lo) {
                    out.push(Relation {
                        kind: RelationKind::Precision,
                        left: hi.clone(),
                        right: lo.clone(),
                        provenance: Provenance::DerivedProduct,
                    });
                }
            }
        }
        out
    }

    /// Implicit soundness lifted to algorithm-configuration pairs: both
    /// directions of every non-reflexive product-order pair.
    pub fn product_soundness_relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for rel in self.product_relations() {
            if rel.left == rel.right {
                continue;
            }
            out.push(Relation {
                kind: RelationKind::ImplicitSoundness,
                left: rel.left.clone(),
                right: rel.right.clone(),
                provenance: Provenance::DerivedImplicit,
            });
            out.push(Relation {
                kind: RelationKind::ImplicitSoundness,
                left: rel.right,
                right: rel.left,
                provenance: Provenance::DerivedImplicit,
            });
        }
        out.sort();
        out.dedup();
        out
    }

    /// Serializes back to the JSON wire schema (deterministic ordering).
    pub fn to_json(&self) -> String {
        let wire = SpecWire {
            frameworks: self
                .frameworks
                .iter()
                .map(|(name, fw)| FrameworkWire {
                    name: name.clone(),
                    algorithms: fw.algorithms.clone(),
                    configs: fw.configs.clone(),
                    alg_order: fw.alg_order.clone(),
                    cfg_order: fw
                        .cfg_order
                        .iter()
                        .map(|(hi, lo)| {
                            (hi.iter().cloned().collect(), lo.iter().cloned().collect())
                        })
                        .collect(),
                })
                .collect(),
            cross_alg_order: self
                .cross_alg_order
                .iter()
                .map(|(hi, lo)| {
                    (
                        (hi.framework.clone(), hi.algorithm.clone()),
                        (lo.framework.clone(), lo.algorithm.clone()),
                    )
                })
                .collect(),
            equivalences: self
                .equivalences
                .iter()
                .map(|(a, b)| (variant_to_wire(a), variant_to_wire(b)))
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&wire).expect("spec serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn soot_only_spec() -> OrderSpec {
        OrderSpec::load(
            br#"{"frameworks":[{"name":"Soot","algorithms":["CHA","RTA","VTA"],
                 "configs":["FS","OS"],
                 "alg_order":[["VTA","RTA"],["RTA","CHA"]],
                 "cfg_order":[[["FS","OS"],["FS"]],[["FS","OS"],["OS"]],[["FS"],[]],[["OS"],[]]]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn default_spec_loads_and_contains_expected_chains() {
        let spec = OrderSpec::bundled_default();
        assert!(spec.alg_precedes(&AlgRef::new("Soot", "VTA"), &AlgRef::new("Soot", "CHA")));
        assert!(spec.alg_precedes(&AlgRef::new("WALA", "0-1-CFA"), &AlgRef::new("WALA", "RTA")));
        assert!(spec.alg_precedes(&AlgRef::new("WALA", "0-CFA"), &AlgRef::new("Soot", "VTA")));
        assert!(spec.alg_precedes(&AlgRef::new("WALA", "RTA"), &AlgRef::new("Soot", "CHA")));
        assert!(spec.alg_precedes(&AlgRef::new("SootUp", "RTA"), &AlgRef::new("SootUp", "CHA")));
        assert!(spec.alg_precedes(
            &AlgRef::new("Doop", "1-Object-Sensitive-Heap"),
            &AlgRef::new("Doop", "Context-Insensitive")
        ));
        // FS and OS are orthogonal refinements of the baseline.
        let fs: ConfigSet = ["FS".to_string()].into();
        let os: ConfigSet = ["OS".to_string()].into();
        let both: ConfigSet = ["FS".to_string(), "OS".to_string()].into();
        let bs = ConfigSet::new();
        assert!(spec.cfg_precedes("WALA", &both, "WALA", &bs));
        assert!(spec.cfg_precedes("WALA", &fs, "WALA", &bs));
        assert!(!spec.cfg_precedes("WALA", &fs, "WALA", &os));
        assert!(!spec.cfg_precedes("WALA", &os, "WALA", &fs));
    }

    #[test]
    fn soot_closure_is_exactly_the_declared_chain_plus_reflexive() {
        // Brute-force oracle lives in tests/order_props.rs; the frozen value:
        let spec = soot_only_spec();
        let nonreflexive: BTreeSet<(String, String)> = spec
            .alg_closure()
            .iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.algorithm.clone(), b.algorithm.clone()))
            .collect();
        let expected: BTreeSet<(String, String)> = [
            ("VTA".to_string(), "RTA".to_string()),
            ("RTA".to_string(), "CHA".to_string()),
            ("VTA".to_string(), "CHA".to_string()),
        ]
        .into();
        assert_eq!(nonreflexive, expected);
        let reflexive = spec.alg_closure().iter().filter(|(a, b)| a == b).count();
        assert_eq!(reflexive, 3);
    }

    #[test]
    fn cycles_are_rejected_with_the_cycle_listed() {
        let err = OrderSpec::load(
            br#"{"frameworks":[{"name":"F","algorithms":["A","B"],
                 "alg_order":[["A","B"],["B","A"]]}]}"#,
        )
        .unwrap_err();
        match err {
            SpecError::Cycle { cycle } => {
                assert!(cycle.len() >= 3, "cycle too short: {cycle:?}")
            }
            other => panic!("expected cycle error, got {other}"),
        }
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        let err = OrderSpec::load(
            br#"{"frameworks":[{"name":"F","algorithms":["A"],"configs":["FS"],
                 "cfg_order":[[["XS"],[]]]}]}"#,
        )
        .unwrap_err();
        match err {
            SpecError::UnknownSymbol { symbol, .. } => assert_eq!(symbol, "XS"),
            other => panic!("expected unknown symbol, got {other}"),
        }
    }

    #[test]
    fn implicit_soundness_is_symmetric_and_double_counted() {
        let spec = soot_only_spec();
        let sound = spec.implicit_soundness_relations();
        let nonreflexive = spec.alg_closure().iter().filter(|(a, b)| a != b).count();
        assert_eq!(sound.len(), 2 * nonreflexive);
        for rel in &sound {
            assert!(sound.iter().any(|r| r.left == rel.right && r.right == rel.left));
        }
    }

    #[test]
    fn product_order_requires_both_components() {
        let spec = soot_only_spec();
        let vta_full = Variant::new("Soot", "VTA").with_config(["FS", "OS"]);
        let cha_bs = Variant::new("Soot", "CHA");
        assert!(spec.variant_precedes(&vta_full, &cha_bs));
        // Algorithm order holds one way, config order the other: incomparable.
        let vta_bs = Variant::new("Soot", "VTA");
        let cha_fs = Variant::new("Soot", "CHA").with_config(["FS"]);
        assert!(!spec.variant_precedes(&vta_bs, &cha_fs));
        assert!(!spec.variant_precedes(&cha_fs, &vta_bs));
    }

    #[test]
    fn equivalences_are_unordered() {
        let spec = OrderSpec::bundled_default();
        let soot_rta = Variant::new("Soot", "RTA");
        let wala_rta = Variant::new("WALA", "RTA");
        assert!(spec.declared_equivalent(&soot_rta, &wala_rta));
        assert!(spec.declared_equivalent(&wala_rta, &soot_rta));
        assert_eq!(spec.equivalence_pairs().count(), 7);
    }

    #[test]
    fn doop_variants_have_no_config_order_beyond_baseline() {
        let spec = OrderSpec::bundled_default();
        assert_eq!(spec.config_universe("Doop"), vec![ConfigSet::new()]);
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = OrderSpec::bundled_default();
        let json = spec.to_json();
        let reloaded = OrderSpec::load(json.as_bytes()).unwrap();
        assert_eq!(reloaded.to_json(), json);
        assert_eq!(reloaded.alg_closure(), spec.alg_closure());
    }
}
