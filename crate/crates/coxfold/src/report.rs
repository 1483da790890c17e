//! Report structures. Field order is fixed by the struct declarations and
//! all maps are ordered, so identical inputs serialize byte-identically.

use serde::Serialize;

use crate::catalog::ClassificationVerdict;
use crate::folding::{FoldedSystem, FMap, RootOrbit};
use crate::graph::{CoxeterGraph, OrbitPartition, SymmetryGroup};
use crate::roots::{GenTag, RootSet};
use crate::scalar::Scalar;
use crate::verify::{
    AffineCertificate, ComponentVerdict, Coverage, FailureWitness, TranslationKind, Verdict,
    VerdictStatus,
};

/// One nonzero coordinate of a root: vertex and exact scalar string.
#[derive(Debug, Clone, Serialize)]
pub struct CoordEntry {
    pub v: i64,
    pub c: String,
}

pub fn coords_entries(graph: &CoxeterGraph, coords: &[Scalar]) -> Vec<CoordEntry> {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| CoordEntry {
            v: graph.vertex_at(i).0,
            c: c.to_string(),
        })
        .collect()
}

pub fn word_strings(word: &[GenTag]) -> Vec<String> {
    word.iter().map(|t| t.to_string()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub name: Option<String>,
    pub vertices: Vec<i64>,
    pub edges: Vec<EdgeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_of: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeReport {
    pub a: i64,
    pub b: i64,
    pub label: String,
}

pub fn graph_report(graph: &CoxeterGraph) -> GraphReport {
    GraphReport {
        name: graph.name.clone(),
        vertices: graph.vertices().iter().map(|v| v.0).collect(),
        edges: graph
            .edges()
            .map(|(a, b, l)| EdgeReport {
                a: a.0,
                b: b.0,
                label: l.to_string(),
            })
            .collect(),
        truncation_of: graph.truncation_of.map(|f| f.to_string()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootReport {
    pub coords: Vec<CoordEntry>,
    pub depth: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSetReport {
    pub count: usize,
    pub complete: bool,
    pub depth_reached: u32,
    pub roots: Vec<RootReport>,
}

pub fn rootset_report(set: &RootSet) -> RootSetReport {
    let roots = set
        .sorted_indices()
        .into_iter()
        .map(|i| RootReport {
            coords: coords_entries(&set.graph, &set.roots[i].coords),
            depth: set.roots[i].depth,
        })
        .collect();
    RootSetReport {
        count: set.len(),
        complete: set.complete,
        depth_reached: set.depth_reached,
        roots,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub generators: Vec<String>,
    pub elements: Vec<String>,
}

pub fn group_report(group: &SymmetryGroup) -> GroupReport {
    let graph = group.graph();
    GroupReport {
        order: group.order(),
        generators: group
            .generators()
            .iter()
            .map(|g| g.cycle_string(graph))
            .collect(),
        elements: group
            .elements()
            .iter()
            .map(|g| g.cycle_string(graph))
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitPartitionReport {
    pub orbits: Vec<Vec<i64>>,
    pub finite: Vec<bool>,
}

pub fn orbit_partition_report(p: &OrbitPartition) -> OrbitPartitionReport {
    OrbitPartitionReport {
        orbits: p
            .orbits
            .iter()
            .map(|o| o.iter().map(|v| v.0).collect())
            .collect(),
        finite: p.finite.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FoldReport {
    pub vertex_orbits: OrbitPartitionReport,
    pub spherical_orbits: Vec<Vec<i64>>,
    pub non_spherical_orbits: Vec<Vec<i64>>,
    pub longest_words: Vec<Vec<String>>,
    pub alpha_hat: Vec<Vec<CoordEntry>>,
    pub folded_matrix: Vec<Vec<String>>,
    pub folded_graph: GraphReport,
}

pub fn fold_report(folded: &FoldedSystem) -> FoldReport {
    FoldReport {
        vertex_orbits: orbit_partition_report(&folded.orbits),
        spherical_orbits: folded
            .spherical
            .iter()
            .map(|&k| folded.orbits.orbits[k].iter().map(|v| v.0).collect())
            .collect(),
        non_spherical_orbits: folded
            .non_spherical
            .iter()
            .map(|&k| folded.orbits.orbits[k].iter().map(|v| v.0).collect())
            .collect(),
        longest_words: folded
            .longest
            .iter()
            .map(|u| word_strings(&u.word))
            .collect(),
        alpha_hat: folded
            .alpha_hat
            .iter()
            .map(|a| coords_entries(&folded.graph, a))
            .collect(),
        folded_matrix: folded
            .folded_matrix
            .iter()
            .map(|row| row.iter().map(|l| l.to_string()).collect())
            .collect(),
        folded_graph: graph_report(&folded.folded_graph),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootOrbitReport {
    pub size: usize,
    pub representative: Vec<CoordEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitsReport {
    pub vertex_orbits: OrbitPartitionReport,
    pub positive_roots: usize,
    pub roots_complete: bool,
    pub root_orbits: Vec<RootOrbitReport>,
    pub folded_positive_roots: usize,
    pub folded_complete: bool,
    pub orbit_map_injective: bool,
    pub orbit_map_surjective: bool,
}

pub fn orbits_report(
    folded: &FoldedSystem,
    canonical: &RootSet,
    folded_set: &RootSet,
    orbits: &[RootOrbit],
    fmap: &FMap,
) -> OrbitsReport {
    OrbitsReport {
        vertex_orbits: orbit_partition_report(&folded.orbits),
        positive_roots: canonical.len(),
        roots_complete: canonical.complete,
        root_orbits: orbits
            .iter()
            .map(|o| RootOrbitReport {
                size: o.members.len(),
                representative: coords_entries(
                    &canonical.graph,
                    &canonical.roots[o.repr].coords,
                ),
            })
            .collect(),
        folded_positive_roots: folded_set.len(),
        folded_complete: folded_set.complete,
        orbit_map_injective: fmap.injective,
        orbit_map_surjective: fmap.surjective,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub root: Vec<CoordEntry>,
    pub symmetry: String,
    pub image: Vec<CoordEntry>,
    pub pairing: String,
}

pub fn witness_report(graph: &CoxeterGraph, w: &FailureWitness) -> WitnessReport {
    WitnessReport {
        root: coords_entries(graph, &w.root),
        symmetry: w.symmetry.clone(),
        image: coords_entries(graph, &w.image),
        pairing: w.pairing.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub covered: usize,
    pub uncovered: usize,
    pub orbit_closed: bool,
    pub covered_to_depth: u32,
    pub witnesses: Vec<CoverageWitnessReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageWitnessReport {
    pub root: Vec<CoordEntry>,
    pub source: i64,
    pub word: Vec<String>,
}

pub fn coverage_report(graph: &CoxeterGraph, c: &Coverage) -> CoverageReport {
    CoverageReport {
        covered: c.entries.len(),
        uncovered: c.uncovered.len(),
        orbit_closed: c.orbit_closed,
        covered_to_depth: c.covered_to_depth,
        witnesses: c
            .entries
            .iter()
            .map(|w| CoverageWitnessReport {
                root: coords_entries(graph, &w.root),
                source: w.source.0,
                word: word_strings(&w.word),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub delta: Vec<CoordEntry>,
    pub beta: Vec<CoordEntry>,
    pub affine_vertex: i64,
    pub base_set: Vec<i64>,
    pub translations: Vec<TranslationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslationReport {
    pub vertex: i64,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_affine: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to_affine: Option<Vec<String>>,
}

pub fn certificate_report(graph: &CoxeterGraph, c: &AffineCertificate) -> CertificateReport {
    CertificateReport {
        delta: coords_entries(graph, &c.delta),
        beta: coords_entries(graph, &c.beta),
        affine_vertex: c.affine_vertex.0,
        base_set: c.base_set.iter().map(|v| v.0).collect(),
        translations: c
            .witnesses
            .iter()
            .map(|(v, kind)| match kind {
                TranslationKind::Direct { word } => TranslationReport {
                    vertex: v.0,
                    kind: "direct".into(),
                    word: Some(word_strings(word)),
                    from_affine: None,
                    to_affine: None,
                },
                TranslationKind::Paired {
                    from_affine,
                    to_affine,
                } => TranslationReport {
                    vertex: v.0,
                    kind: "paired".into(),
                    word: None,
                    from_affine: Some(word_strings(from_affine)),
                    to_affine: Some(word_strings(to_affine)),
                },
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub family: Option<String>,
    pub case: Option<String>,
    pub parameter: Option<u32>,
    pub folded_family: Option<String>,
    pub reason: Option<String>,
}

pub fn classify_report(v: &ClassificationVerdict) -> ClassifyReport {
    ClassifyReport {
        family: v.recognized.map(|f| f.to_string()),
        case: v.matched.as_ref().map(|m| m.case.to_string()),
        parameter: v.matched.as_ref().map(|m| m.parameter),
        folded_family: v.folded_family.map(|f| f.to_string()),
        reason: v.reason.clone(),
    }
}

pub fn status_strings(status: &VerdictStatus) -> (String, Option<u32>) {
    match status {
        VerdictStatus::Holds => ("holds".into(), None),
        VerdictStatus::Fails => ("fails".into(), None),
        VerdictStatus::VerifiedToDepth(d) => ("verified-to-depth".into(), Some(*d)),
        VerdictStatus::CertifiedAffine => ("certified-affine".into(), None),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub graph: GraphReport,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    pub root_count: usize,
    pub roots_complete: bool,
    pub truncation_capped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<CoverageReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassifyReport>,
}

pub fn component_report(c: &ComponentVerdict) -> ComponentReport {
    let (status, depth) = status_strings(&c.status);
    ComponentReport {
        graph: graph_report(&c.graph),
        status,
        depth,
        root_count: c.root_count,
        roots_complete: c.roots_complete,
        truncation_capped: c.truncation_capped,
        witness: c.witness.as_ref().map(|w| witness_report(&c.graph, w)),
        coverage: c.coverage.as_ref().map(|cov| coverage_report(&c.graph, cov)),
        certificate: c
            .certificate
            .as_ref()
            .map(|cert| certificate_report(&c.graph, cert)),
        classification: c.classification.as_ref().map(classify_report),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    pub truncation_capped: bool,
    pub dropped_vertices: Vec<i64>,
    pub components: Vec<ComponentReport>,
}

pub fn verdict_report(v: &Verdict) -> VerdictReport {
    let (status, depth) = status_strings(&v.status);
    VerdictReport {
        status,
        depth,
        truncation_capped: v.truncation_capped,
        dropped_vertices: v.dropped_vertices.iter().map(|x| x.0).collect(),
        components: v.components.iter().map(component_report).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::FormMatrix;
    use crate::roots::{enumerate_positive_roots, EnumerationCaps};
    use std::sync::Arc;

    #[test]
    fn reports_carry_exact_scalar_strings() {
        let (graph, _) = crate::catalog::pair_from_token("B2").unwrap();
        let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
        let set = enumerate_positive_roots(&form, 99, EnumerationCaps::default()).unwrap();
        let rep = rootset_report(&set);
        assert_eq!(rep.count, 4);
        let rendered = serde_json::to_string(&rep).unwrap();
        // the long roots of the label-4 pair have a √2 coordinate
        assert!(rendered.contains("\u{221a}2"), "{rendered}");
    }

    #[test]
    fn key_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::graph::CoxeterGraph>();
        assert_send_sync::<crate::graph::SymmetryGroup>();
        assert_send_sync::<crate::scalar::Scalar>();
        assert_send_sync::<crate::roots::RootSet>();
        assert_send_sync::<crate::folding::FoldedSystem>();
        assert_send_sync::<crate::verify::Verdict>();
    }
}
