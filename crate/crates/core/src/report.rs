//! Per-instance analysis documents, in text or JSON.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bounds, Element, ModuleRep};
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::lattice::{NodeId, Submodule};
use crate::predicates::Analysis;
use crate::structure::{classify_regular, Classification, PartLabel, RingClassification, SupplementKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateRow {
    pub generators: Vec<Element>,
    pub size: usize,
    pub small: bool,
    pub delta_small: bool,
    pub essential: bool,
    pub coclosed: bool,
    pub delta_coclosed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub generators: Vec<Element>,
    pub label: PartLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleAnalysis {
    pub name: String,
    pub size: usize,
    pub lattice_size: usize,
    pub rad: Vec<Element>,
    pub soc: Vec<Element>,
    pub z: Vec<Element>,
    pub delta: Vec<Element>,
    pub classification: Classification,
    pub supplemented: bool,
    pub delta_supplemented: bool,
    pub delta_lifting: bool,
    pub predicates: Vec<PredicateRow>,
    /// Present when the module is δ-supplemented.
    pub decomposition: Option<Vec<Part>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceAnalysis {
    pub ring: String,
    pub ring_size: usize,
    pub tags: Vec<String>,
    pub ring_classification: RingClassification,
    pub modules: Vec<ModuleAnalysis>,
}

fn gens(a: &Analysis, id: NodeId) -> Vec<Element> {
    a.lattice().node(id).generator_elements()
}

fn show(g: &[Element]) -> String {
    let parts: Vec<String> = g.iter().map(|e| e.to_string()).collect();
    format!("<{}>", parts.join(","))
}

pub fn analyze_module(module: &Arc<ModuleRep>, bounds: &Bounds) -> Result<ModuleAnalysis> {
    let a = Analysis::from_arc(module.clone(), bounds)?;
    let f = a.fundamental_submodules()?;
    let predicates = (0..a.lattice().len())
        .map(|n| PredicateRow {
            generators: gens(&a, n),
            size: a.lattice().size_of(n),
            small: a.is_small(n),
            delta_small: a.is_delta_small(n),
            essential: a.is_essential(n),
            coclosed: a.is_coclosed(n),
            delta_coclosed: a.is_delta_coclosed(n),
        })
        .collect();
    let delta_supplemented = a.is_delta_supplemented();
    let decomposition = if delta_supplemented {
        let d = a.decompose_simple_delta_local()?;
        Some(
            d.parts
                .iter()
                .zip(&d.labels)
                .map(|(&p, &label)| Part {
                    generators: gens(&a, p),
                    label,
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(ModuleAnalysis {
        name: module.name().to_string(),
        size: module.size(),
        lattice_size: a.lattice().len(),
        rad: gens(&a, f.rad),
        soc: gens(&a, f.soc),
        z: gens(&a, f.z),
        delta: gens(&a, f.delta),
        classification: a.classify(),
        supplemented: a.is_supplemented(),
        delta_supplemented,
        delta_lifting: a.is_delta_lifting(),
        predicates,
        decomposition,
    })
}

pub fn analyze_entry(entry: &CorpusEntry, bounds: &Bounds) -> Result<InstanceAnalysis> {
    let regular = Analysis::new(ModuleRep::regular(&entry.ring), bounds)?;
    Ok(InstanceAnalysis {
        ring: entry.name().to_string(),
        ring_size: entry.ring.size(),
        tags: entry.tags.clone(),
        ring_classification: classify_regular(&regular)?,
        modules: entry
            .modules
            .iter()
            .map(|m| analyze_module(m, bounds))
            .collect::<Result<_>>()?,
    })
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl InstanceAnalysis {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let rc = &self.ring_classification;
        let _ = writeln!(out, "ring {} (order {})", self.ring, self.ring_size);
        let _ = writeln!(
            out,
            "  semiperfect {}  delta-semiperfect {}  semilocal {}  consistent {}",
            flag(rc.semiperfect),
            flag(rc.delta_semiperfect),
            flag(rc.semilocal),
            flag(rc.consistent)
        );
        for m in &self.modules {
            let c = &m.classification;
            let _ = writeln!(out, "\nmodule {}  |M| = {}  submodules = {}", m.name, m.size, m.lattice_size);
            let _ = writeln!(out, "  Rad {}", show(&m.rad));
            let _ = writeln!(out, "  Soc {}", show(&m.soc));
            let _ = writeln!(out, "  Z   {}", show(&m.z));
            let _ = writeln!(out, "  δ   {}", show(&m.delta));
            let _ = writeln!(
                out,
                "  local {}  delta-local {}  semilocal {}  semisimple {}  singular {}",
                flag(c.local),
                flag(c.delta_local),
                flag(c.semilocal),
                flag(c.semisimple),
                flag(c.singular)
            );
            let _ = writeln!(
                out,
                "  supplemented {}  delta-supplemented {}  delta-lifting {}",
                flag(m.supplemented),
                flag(m.delta_supplemented),
                flag(m.delta_lifting)
            );
            let _ = writeln!(out, "  submodule            size small δ-small essential coclosed δ-coclosed");
            for r in &m.predicates {
                let _ = writeln!(
                    out,
                    "  {:<20} {:>4} {:<5} {:<7} {:<9} {:<8} {}",
                    show(&r.generators),
                    r.size,
                    flag(r.small),
                    flag(r.delta_small),
                    flag(r.essential),
                    flag(r.coclosed),
                    flag(r.delta_coclosed)
                );
            }
            if let Some(parts) = &m.decomposition {
                let shown: Vec<String> = parts
                    .iter()
                    .map(|p| {
                        let label = match p.label {
                            PartLabel::Simple => "simple",
                            PartLabel::DeltaLocal => "delta-local",
                        };
                        format!("{} {label}", show(&p.generators))
                    })
                    .collect();
                let _ = writeln!(out, "  decomposition: {}", shown.join(" + "));
            }
        }
        out
    }
}

/// The `analyze` document for an entry.
pub fn analyze_report(entry: &CorpusEntry, format: Format, bounds: &Bounds) -> Result<String> {
    let doc = analyze_entry(entry, bounds)?;
    Ok(match format {
        Format::Text => doc.to_text(),
        Format::Json => serde_json::to_string_pretty(&doc).expect("analysis serializes"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeNode {
    pub id: NodeId,
    pub size: usize,
    pub generators: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDump {
    pub module: String,
    pub nodes: Vec<LatticeNode>,
    /// Covering pairs `(lower, upper)`.
    pub hasse: Vec<(NodeId, NodeId)>,
}

pub fn lattice_dump(module: &Arc<ModuleRep>, bounds: &Bounds) -> Result<LatticeDump> {
    let a = Analysis::from_arc(module.clone(), bounds)?;
    let lat = a.lattice();
    Ok(LatticeDump {
        module: module.name().to_string(),
        nodes: (0..lat.len())
            .map(|id| LatticeNode {
                id,
                size: lat.size_of(id),
                generators: gens(&a, id),
            })
            .collect(),
        hasse: lat.hasse_edges(),
    })
}

impl LatticeDump {
    pub fn to_text(&self) -> String {
        let mut out = format!("module {}: {} submodules\n", self.module, self.nodes.len());
        for n in &self.nodes {
            let _ = writeln!(out, "  {:>3}  size {:>4}  {}", n.id, n.size, show(&n.generators));
        }
        let edges: Vec<String> = self.hasse.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        let _ = writeln!(out, "covers: {}", edges.join(" "));
        out
    }
}

/// Parses `"1,0;0,1"` into generator coefficient vectors. An empty string
/// means the zero submodule.
pub fn parse_generators(text: &str) -> Result<Vec<Vec<i64>>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut column = 1;
    let mut out = Vec::new();
    for part in text.split(';') {
        let coeffs = part
            .split(',')
            .map(|c| {
                c.trim().parse::<i64>().map_err(|e| Error::Parse {
                    message: format!("bad coefficient {:?}: {e}", c.trim()),
                    line: 1,
                    column,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        column += part.len() + 1;
        out.push(coeffs);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub kind: SupplementKind,
    pub of: Vec<Element>,
    pub witness: Vec<Element>,
    pub sum_is_whole: bool,
    pub intersection_condition: bool,
    pub minimal: Option<bool>,
}

/// All supplement certificates of the requested kinds for the submodule
/// generated by `generators`.
pub fn supplements_report(
    module: &Arc<ModuleRep>,
    generators: &[Vec<i64>],
    kinds: &[SupplementKind],
    bounds: &Bounds,
) -> Result<Vec<CertificateDoc>> {
    let a = Analysis::from_arc(module.clone(), bounds)?;
    let idx = generators
        .iter()
        .map(|g| module.index_of_raw(g))
        .collect::<Result<Vec<_>>>()?;
    let k = a.lattice().id_of(&Submodule::generated_by(module, &idx))?;
    let mut out = Vec::new();
    for &kind in kinds {
        let certs = match kind {
            SupplementKind::Supplement => a.find_supplements(k)?,
            _ => a.find_delta_supplements(k, kind),
        };
        out.extend(certs.into_iter().map(|c| CertificateDoc {
            kind: c.kind,
            of: gens(&a, c.of),
            witness: gens(&a, c.witness),
            sum_is_whole: c.checks.sum_is_whole,
            intersection_condition: c.checks.intersection_condition,
            minimal: c.checks.minimal,
        }));
    }
    Ok(out)
}

pub fn certificates_text(certs: &[CertificateDoc]) -> String {
    let mut out = String::new();
    for c in certs {
        let kind = match c.kind {
            SupplementKind::Supplement => "supplement",
            SupplementKind::DeltaSupplement => "delta",
            SupplementKind::WeakDeltaSupplement => "weak",
        };
        let _ = writeln!(out, "{kind:<10} of {} : {}", show(&c.of), show(&c.witness));
    }
    out
}

pub fn classify_report(module: &Arc<ModuleRep>, bounds: &Bounds) -> Result<Classification> {
    Ok(Analysis::from_arc(module.clone(), bounds)?.classify())
}
