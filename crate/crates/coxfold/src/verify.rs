//! Deciding the equivariant basis property: a pair has it exactly when
//! every root lies in a fixed-subgroup orbit of a simple root.
//!
//! The pipeline restricts to finite orbits, splits into connected
//! components, and per component runs cheap necessary-condition probes, a
//! refutation witness search, an orbit-coverage check, and (on the listed
//! affine shapes) a translation-certificate search that extends a covered
//! finite part to the whole infinite root system. A negative verdict
//! always carries a concrete witness; absence of coverage at finite depth
//! alone never refutes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::catalog::{self, CaseTag, ClassificationVerdict};
use crate::folding::{fold, permute_coords, FoldedSystem, FoldingError};
use crate::form::{FormError, FormMatrix};
use crate::graph::{
    connected_components, restrict_to_finite_orbits, CoxeterGraph, Symmetry, SymmetryGroup,
    VertexId,
};
use crate::matrix::Mat;
use crate::roots::{enumerate_positive_roots, EnumerationCaps, GenTag, RootError, RootSet};
use crate::scalar::{Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Folding(#[from] FoldingError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
}

/// Search budgets. Depth budgets bound the breadth-first searches on
/// infinite root systems; finite systems always run to closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Budget {
    /// Root enumeration depth.
    pub root_depth: u32,
    /// Fixed-subgroup orbit search depth.
    pub orbit_depth: u32,
    /// Symmetry-group closure cap.
    pub closure_cap: usize,
    /// Folded bond-order iteration cap.
    pub order_cap: u32,
    /// Hard cap on enumerated roots and orbit nodes.
    pub node_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            root_depth: 12,
            orbit_depth: 16,
            closure_cap: 1_000_000,
            order_cap: 1_000,
            node_cap: 1 << 20,
        }
    }
}

impl Budget {
    pub fn enumeration_caps(&self) -> EnumerationCaps {
        EnumerationCaps {
            max_roots: self.node_cap,
            witness_cap: 4,
        }
    }
}

/// Outcome of a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum VerdictStatus {
    /// Complete enumeration, every root covered.
    Holds,
    /// A concrete refutation witness exists.
    Fails,
    /// All roots to the stated depth covered; nothing refuted.
    VerifiedToDepth(u32),
    /// Finite part covered and translations certify the rest.
    CertifiedAffine,
}

impl VerdictStatus {
    pub fn is_positive(&self) -> bool {
        matches!(self, VerdictStatus::Holds | VerdictStatus::CertifiedAffine)
    }
}

/// A root moved by a symmetry without becoming orthogonal: refutes the
/// property.
#[derive(Debug, Clone)]
pub struct FailureWitness {
    pub root: Vec<Scalar>,
    /// Cycle notation of the symmetry.
    pub symmetry: String,
    pub image: Vec<Scalar>,
    /// ⟨root, g(root)⟩ ≠ 0.
    pub pairing: Scalar,
}

/// One covered root: word applied to the simple root of `source`.
#[derive(Debug, Clone)]
pub struct CoverageWitness {
    pub root: Vec<Scalar>,
    pub source: VertexId,
    pub word: Vec<GenTag>,
}

/// Result of the orbit-coverage search over an enumerated root set.
#[derive(Debug, Clone)]
pub struct Coverage {
    pub entries: Vec<CoverageWitness>,
    pub uncovered: Vec<Vec<Scalar>>,
    /// The orbit search closed (no new roots in the last layer).
    pub orbit_closed: bool,
    /// Every enumerated root of depth ≤ this is covered.
    pub covered_to_depth: u32,
}

/// Translation witnesses of an affine certificate.
#[derive(Debug, Clone)]
pub enum TranslationKind {
    /// w(α_s) = α_s + δ.
    Direct { word: Vec<GenTag> },
    /// w(α_0) = α_s + δ and w'(α_s) = α_0 + δ.
    Paired {
        from_affine: Vec<GenTag>,
        to_affine: Vec<GenTag>,
    },
}

/// Certificate that the full infinite root system is covered: the finite
/// part is covered from the listed base set, the null vector pairs to
/// zero with every simple root, and every base simple root translates by
/// δ inside its fixed-subgroup orbit.
#[derive(Debug, Clone)]
pub struct AffineCertificate {
    pub delta: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub affine_vertex: VertexId,
    pub base_set: Vec<VertexId>,
    pub witnesses: Vec<(VertexId, TranslationKind)>,
}

/// Per-component decision with its evidence.
#[derive(Debug, Clone)]
pub struct ComponentVerdict {
    pub graph: Arc<CoxeterGraph>,
    pub status: VerdictStatus,
    pub witness: Option<FailureWitness>,
    pub coverage: Option<Coverage>,
    pub certificate: Option<AffineCertificate>,
    pub classification: Option<ClassificationVerdict>,
    pub root_count: usize,
    pub roots_complete: bool,
    pub depth_reached: u32,
    /// Verdict capped because the graph is a truncation of an infinite
    /// family.
    pub truncation_capped: bool,
}

/// Aggregated decision over all components.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub components: Vec<ComponentVerdict>,
    /// Vertices dropped by the finite-orbit restriction.
    pub dropped_vertices: Vec<VertexId>,
    pub truncation_capped: bool,
}

// ---------------------------------------------------------------------------
// probes
// ---------------------------------------------------------------------------

/// Scan for s and g with g(s) ≠ s yet m_{s,g(s)} ≠ 2. Any hit refutes the
/// property: the simple root and its image pair nontrivially.
pub fn check_orbit_commutation(
    graph: &CoxeterGraph,
    group: &SymmetryGroup,
) -> Option<(VertexId, VertexId, Symmetry)> {
    for g in group.elements() {
        if g.is_identity() {
            continue;
        }
        for &s in graph.vertices() {
            let t = g.image(graph, s);
            if t != s && graph.label(s, t) != crate::graph::Label::Finite(2) {
                return Some((s, t, g.clone()));
            }
        }
    }
    None
}

/// Find a symmetry that fixes no vertex (the property requires every
/// symmetry to fix one).
pub fn check_fixed_vertex(graph: &CoxeterGraph, group: &SymmetryGroup) -> Option<Symmetry> {
    group
        .elements()
        .iter()
        .find(|g| {
            !g.is_identity() && graph.vertices().iter().all(|&s| g.image(graph, s) != s)
        })
        .cloned()
}

/// Build the refutation witness for a fixed-point-free symmetry: walk a
/// minimal path from some s to g(s) and reflect the far simple root along
/// it; the result and its image pair strictly negatively.
pub fn fixed_point_free_witness(
    form: &FormMatrix,
    g: &Symmetry,
) -> Result<FailureWitness, VerifyError> {
    let graph = form.graph();
    let (s, path) = graph
        .vertices()
        .iter()
        .filter_map(|&s| graph.shortest_path(s, g.image(graph, s)).map(|p| (s, p)))
        .min_by_key(|(_, p)| p.len())
        .expect("connected component");
    let n = graph.n();
    let coords = if path.len() <= 2 {
        // adjacent: the simple root itself witnesses
        let mut alpha = vec![Scalar::zero(); n];
        alpha[graph.position(s).expect("vertex")] = Scalar::one();
        alpha
    } else {
        let ell = path.len() - 1;
        let mut alpha = vec![Scalar::zero(); n];
        alpha[graph.position(path[ell - 1]).expect("vertex")] = Scalar::one();
        for i in (0..=ell.saturating_sub(2)).rev() {
            let pos = graph.position(path[i]).expect("vertex");
            let mat = crate::roots::simple_reflection_matrix(form, pos);
            alpha = mat.apply(&alpha);
        }
        alpha
    };
    let image = permute_coords(g, &coords);
    let pairing = form.bilinear(&coords, &image)?;
    if pairing.sign() == Sign::Zero || image == coords {
        return Err(VerifyError::Root(RootError::InvariantViolation(
            "constructed path witness failed to pair nontrivially".into(),
        )));
    }
    Ok(FailureWitness {
        root: coords,
        symmetry: g.cycle_string(graph),
        image,
        pairing,
    })
}

/// First root (seeds first, then the enumerated set in stable order) that
/// some symmetry moves without killing the pairing.
pub fn witness_search(
    form: &FormMatrix,
    set: &RootSet,
    group: &SymmetryGroup,
    seeds: &[Vec<Scalar>],
) -> Result<Option<FailureWitness>, VerifyError> {
    let graph = form.graph();
    let two = Scalar::from_integer(2);
    let try_root = |coords: &[Scalar]| -> Result<Option<FailureWitness>, VerifyError> {
        for g in group.elements() {
            if g.is_identity() {
                continue;
            }
            let image = permute_coords(g, coords);
            if image == coords {
                continue;
            }
            let pairing = form.bilinear(coords, &image)?;
            if pairing.sign() != Sign::Zero {
                return Ok(Some(FailureWitness {
                    root: coords.to_vec(),
                    symmetry: g.cycle_string(graph),
                    image,
                    pairing,
                }));
            }
        }
        Ok(None)
    };
    for seed in seeds {
        if seed.len() != graph.n() {
            continue;
        }
        // only genuine roots may witness
        if form.bilinear(seed, seed)? != two {
            continue;
        }
        if let Some(w) = try_root(seed)? {
            return Ok(Some(w));
        }
    }
    for idx in set.sorted_indices() {
        if let Some(w) = try_root(&set.roots[idx].coords)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// orbit search and coverage
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct OrbitNode {
    pub source: usize,
    pub word: Vec<usize>,
    pub depth: u32,
}

/// Breadth-first search of fixed-subgroup orbits through signed roots (no
/// positivity filter): from the start vectors, close under the given
/// generator matrices.
pub struct SignedOrbit {
    pub nodes: BTreeMap<Vec<Scalar>, OrbitNode>,
    pub closed: bool,
}

pub fn signed_orbit_bfs(
    gen_mats: &[Mat],
    starts: &[Vec<Scalar>],
    max_depth: u32,
    node_cap: usize,
) -> Result<SignedOrbit, RootError> {
    let mut nodes: BTreeMap<Vec<Scalar>, OrbitNode> = BTreeMap::new();
    let mut layer: Vec<Vec<Scalar>> = Vec::new();
    for (i, s) in starts.iter().enumerate() {
        if !nodes.contains_key(s) {
            nodes.insert(
                s.clone(),
                OrbitNode {
                    source: i,
                    word: Vec::new(),
                    depth: 0,
                },
            );
            layer.push(s.clone());
        }
    }
    let mut closed = false;
    let mut depth = 0u32;
    while !layer.is_empty() {
        if depth >= max_depth {
            break;
        }
        depth += 1;
        let mut next = Vec::new();
        for coords in &layer {
            let base = nodes[coords].clone();
            for (g, mat) in gen_mats.iter().enumerate() {
                let image = mat.apply(coords);
                if nodes.contains_key(&image) {
                    continue;
                }
                if nodes.len() + 1 > node_cap {
                    return Err(RootError::Budget(node_cap));
                }
                let mut word = Vec::with_capacity(base.word.len() + 1);
                word.push(g);
                word.extend(base.word.iter().copied());
                nodes.insert(
                    image.clone(),
                    OrbitNode {
                        source: base.source,
                        word,
                        depth,
                    },
                );
                next.push(image);
            }
        }
        if next.is_empty() {
            closed = true;
            break;
        }
        layer = next;
    }
    Ok(SignedOrbit { nodes, closed })
}

fn folded_gen_mats(folded: &FoldedSystem) -> Vec<Mat> {
    (0..folded.rank())
        .map(|k| folded.longest[k].matrix.clone())
        .collect()
}

fn folded_word(folded: &FoldedSystem, word: &[usize]) -> Vec<GenTag> {
    word.iter().map(|&k| folded.gen_tag(k)).collect()
}

/// Orbit coverage: search the fixed-subgroup orbits of all simple roots
/// and report which enumerated positive roots are reached. Complete root
/// systems close the search; infinite ones honor the depth budget.
pub fn coverage_check(
    folded: &FoldedSystem,
    set: &RootSet,
    budget: &Budget,
) -> Result<Coverage, VerifyError> {
    let graph = &folded.graph;
    let n = graph.n();
    let starts: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    let depth = if set.complete {
        u32::MAX
    } else {
        budget.orbit_depth
    };
    let orbit = signed_orbit_bfs(&folded_gen_mats(folded), &starts, depth, budget.node_cap)?;
    let mut entries = Vec::new();
    let mut uncovered = Vec::new();
    let mut uncovered_min_depth: Option<u32> = None;
    for idx in set.sorted_indices() {
        let root = &set.roots[idx];
        match orbit.nodes.get(&root.coords) {
            Some(node) => entries.push(CoverageWitness {
                root: root.coords.clone(),
                source: graph.vertex_at(node.source),
                word: folded_word(folded, &node.word),
            }),
            None => {
                uncovered_min_depth = Some(match uncovered_min_depth {
                    Some(d) => d.min(root.depth),
                    None => root.depth,
                });
                uncovered.push(root.coords.clone());
            }
        }
    }
    let covered_to_depth = match uncovered_min_depth {
        Some(0) => 0,
        Some(d) => d - 1,
        None => set.depth_reached,
    };
    Ok(Coverage {
        entries,
        uncovered,
        orbit_closed: orbit.closed,
        covered_to_depth,
    })
}

/// Re-apply every coverage witness word and compare against its root.
/// Returns the number of discrepancies (zero on sound evidence).
pub fn verify_coverage_words(folded: &FoldedSystem, coverage: &Coverage) -> usize {
    let graph = &folded.graph;
    let mut bad = 0usize;
    for w in &coverage.entries {
        let elem = match folded.element_from_tags(&w.word) {
            Some(e) => e,
            None => {
                bad += 1;
                continue;
            }
        };
        let mut alpha = vec![Scalar::zero(); graph.n()];
        match graph.position(w.source) {
            Some(p) => alpha[p] = Scalar::one(),
            None => {
                bad += 1;
                continue;
            }
        }
        if elem.apply(&alpha) != w.root {
            bad += 1;
        }
    }
    bad
}

// ---------------------------------------------------------------------------
// equivalence classes of the pairing relation
// ---------------------------------------------------------------------------

/// Connected components of the relation α ~ β ⇔ ⟨α,β⟩ ∉ {0,1,−1} on the
/// enumerated positive roots. The relation is invariant under negating
/// either side and every class contains the negatives of its members, so
/// these components are exactly the classes over the full signed system.
#[derive(Debug, Clone)]
pub struct EquivClasses {
    pub classes: Vec<Vec<usize>>,
    /// Class counts are definitive only over complete enumerations.
    pub definitive: bool,
}

pub fn equiv_classes(form: &FormMatrix, set: &RootSet) -> Result<EquivClasses, VerifyError> {
    let n = set.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let one = Scalar::one();
    let minus_one = Scalar::from_integer(-1);
    for i in 0..n {
        for j in (i + 1)..n {
            let p = form.bilinear(&set.roots[i].coords, &set.roots[j].coords)?;
            if !p.is_zero() && p != one && p != minus_one {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        by_root.entry(r).or_default().push(i);
    }
    Ok(EquivClasses {
        classes: by_root.into_values().collect(),
        definitive: set.complete,
    })
}

// ---------------------------------------------------------------------------
// affine certificates
// ---------------------------------------------------------------------------

/// Search for the affine translation certificate of a classified affine
/// pair. Returns None when some base simple root has no translation
/// witness within the depth budget.
pub fn affine_certificate(
    graph: &Arc<CoxeterGraph>,
    group: &SymmetryGroup,
    folded: &FoldedSystem,
    classification: &ClassificationVerdict,
    budget: &Budget,
) -> Result<Option<AffineCertificate>, VerifyError> {
    let matched = match &classification.matched {
        Some(m) if matches!(m.case, CaseTag::V | CaseTag::VI | CaseTag::VII | CaseTag::VIII) => {
            m
        }
        _ => return Ok(None),
    };
    let family = classification
        .recognized
        .expect("matched classification names a family");
    let n = graph.n();
    let affine_vertex = matched.relabeling[&VertexId(0)];

    // δ in input coordinates, via the matched relabeling
    let mut delta = vec![Scalar::zero(); n];
    for (cat_v, coeff) in catalog::delta(family)? {
        let input_v = matched.relabeling[&cat_v];
        delta[graph.position(input_v).expect("relabeled vertex")] =
            Scalar::from_integer(coeff);
    }
    // β = δ − α_0
    let mut beta = delta.clone();
    let zero_pos = graph.position(affine_vertex).expect("affine vertex");
    beta[zero_pos] -= &Scalar::one();

    // ⟨α_s, δ⟩ = 0 for every simple root
    for i in 0..n {
        if folded.form.pair_simple(i, &delta)?.sign() != Sign::Zero {
            return Err(VerifyError::Root(RootError::InvariantViolation(
                "null vector pairs nontrivially with a simple root".into(),
            )));
        }
    }

    // finite part: drop the affine vertex, restrict the group, fold, and
    // cover its (complete) root system from its own simple roots
    let keep: std::collections::BTreeSet<VertexId> = graph
        .vertices()
        .iter()
        .copied()
        .filter(|&v| v != affine_vertex)
        .collect();
    let finite_graph = Arc::new(graph.full_subgraph(&keep));
    let finite_gens: Vec<Symmetry> = group
        .elements()
        .iter()
        .map(|g| {
            let mapping: BTreeMap<VertexId, VertexId> =
                keep.iter().map(|&v| (v, g.image(graph, v))).collect();
            Symmetry::validate(&finite_graph, &mapping)
                .expect("symmetries fix the affine vertex in listed cases")
        })
        .collect();
    let finite_group =
        SymmetryGroup::generate(Arc::clone(&finite_graph), finite_gens, budget.closure_cap)
            .expect("restriction of a finite group");
    let finite_folded = fold(&finite_graph, &finite_group, budget.order_cap)?;
    let finite_form = FormMatrix::new(Arc::clone(&finite_graph))?;
    let finite_set =
        enumerate_positive_roots(&finite_form, 10_000, budget.enumeration_caps())?;
    if !finite_set.complete {
        return Ok(None);
    }
    let finite_cov = coverage_check(&finite_folded, &finite_set, budget)?;
    if !finite_cov.uncovered.is_empty() {
        return Ok(None);
    }
    // base set: the sources that actually covered the finite part
    let mut base_set: Vec<VertexId> = finite_cov
        .entries
        .iter()
        .map(|w| w.source)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    base_set.sort();

    // translation witnesses over the full affine system
    let gen_mats = folded_gen_mats(folded);
    let simple = |v: VertexId| -> Vec<Scalar> {
        let mut a = vec![Scalar::zero(); n];
        a[graph.position(v).expect("vertex")] = Scalar::one();
        a
    };
    let plus_delta = |a: &[Scalar]| -> Vec<Scalar> {
        a.iter().zip(delta.iter()).map(|(x, d)| x.clone() + d.clone()).collect()
    };
    let orbit_of = |start: &Vec<Scalar>| -> Result<SignedOrbit, RootError> {
        signed_orbit_bfs(
            &gen_mats,
            std::slice::from_ref(start),
            budget.orbit_depth,
            budget.node_cap,
        )
    };
    let affine_orbit = orbit_of(&simple(affine_vertex))?;
    let mut witnesses = Vec::new();
    for &s in &base_set {
        let alpha = simple(s);
        let target = plus_delta(&alpha);
        let orbit = orbit_of(&alpha)?;
        if let Some(node) = orbit.nodes.get(&target) {
            witnesses.push((
                s,
                TranslationKind::Direct {
                    word: folded_word(folded, &node.word),
                },
            ));
            continue;
        }
        // paired form through the affine vertex
        let from_affine = affine_orbit.nodes.get(&target);
        let to_affine = orbit.nodes.get(&plus_delta(&simple(affine_vertex)));
        match (from_affine, to_affine) {
            (Some(a), Some(b)) => witnesses.push((
                s,
                TranslationKind::Paired {
                    from_affine: folded_word(folded, &a.word),
                    to_affine: folded_word(folded, &b.word),
                },
            )),
            _ => return Ok(None),
        }
    }

    // re-verify every witness word exactly
    for (s, kind) in &witnesses {
        let alpha = simple(*s);
        let ok = match kind {
            TranslationKind::Direct { word } => match folded.element_from_tags(word) {
                Some(e) => e.apply(&alpha) == plus_delta(&alpha),
                None => false,
            },
            TranslationKind::Paired {
                from_affine,
                to_affine,
            } => {
                let a0 = simple(affine_vertex);
                let ok1 = match folded.element_from_tags(from_affine) {
                    Some(e) => e.apply(&a0) == plus_delta(&alpha),
                    None => false,
                };
                let ok2 = match folded.element_from_tags(to_affine) {
                    Some(e) => e.apply(&alpha) == plus_delta(&a0),
                    None => false,
                };
                ok1 && ok2
            }
        };
        if !ok {
            return Err(VerifyError::Root(RootError::InvariantViolation(
                "translation witness failed exact re-verification".into(),
            )));
        }
    }

    Ok(Some(AffineCertificate {
        delta,
        beta,
        affine_vertex,
        base_set,
        witnesses,
    }))
}

// ---------------------------------------------------------------------------
// the decision pipeline
// ---------------------------------------------------------------------------

fn seed_roots(graph: &Arc<CoxeterGraph>) -> Vec<Vec<Scalar>> {
    let gt = match catalog::recognize(graph) {
        Ok(gt) => gt,
        Err(_) => return Vec::new(),
    };
    let family = match gt.family {
        Some(f) => f,
        None => return Vec::new(),
    };
    let n = graph.n();
    catalog::refutation_seeds(family)
        .into_iter()
        .filter_map(|seed| {
            let mut coords = vec![Scalar::zero(); n];
            for (cat_v, coeff) in seed {
                let input_v = *gt.relabeling.get(&cat_v)?;
                coords[graph.position(input_v)?] = Scalar::from_integer(coeff);
            }
            Some(coords)
        })
        .collect()
}

fn component_decide(
    graph: &Arc<CoxeterGraph>,
    group: &SymmetryGroup,
    budget: &Budget,
) -> Result<ComponentVerdict, VerifyError> {
    let form = FormMatrix::new(Arc::clone(graph))?;
    let set = enumerate_positive_roots(&form, budget.root_depth, budget.enumeration_caps())?;
    let folded = fold(graph, group, budget.order_cap)?;
    let classification = catalog::classify_pair(graph, group).ok();
    let truncation = graph.truncation_of.is_some();

    let mut verdict = ComponentVerdict {
        graph: Arc::clone(graph),
        status: VerdictStatus::VerifiedToDepth(0),
        witness: None,
        coverage: None,
        certificate: None,
        classification,
        root_count: set.len(),
        roots_complete: set.complete,
        depth_reached: set.depth_reached,
        truncation_capped: false,
    };

    // necessary-condition probes, each yielding a concrete witness
    if let Some((s, _t, g)) = check_orbit_commutation(graph, group) {
        let mut alpha = vec![Scalar::zero(); graph.n()];
        alpha[graph.position(s).expect("vertex")] = Scalar::one();
        let image = permute_coords(&g, &alpha);
        let pairing = form.bilinear(&alpha, &image)?;
        verdict.status = VerdictStatus::Fails;
        verdict.witness = Some(FailureWitness {
            root: alpha,
            symmetry: g.cycle_string(graph),
            image,
            pairing,
        });
        return Ok(verdict);
    }
    if let Some(g) = check_fixed_vertex(graph, group) {
        verdict.status = VerdictStatus::Fails;
        verdict.witness = Some(fixed_point_free_witness(&form, &g)?);
        return Ok(verdict);
    }
    let seeds = seed_roots(graph);
    if let Some(w) = witness_search(&form, &set, group, &seeds)? {
        verdict.status = VerdictStatus::Fails;
        verdict.witness = Some(w);
        return Ok(verdict);
    }

    let coverage = coverage_check(&folded, &set, budget)?;
    let fully_covered = coverage.uncovered.is_empty();
    let covered_to_depth = coverage.covered_to_depth;
    verdict.coverage = Some(coverage);

    if set.complete && fully_covered {
        if truncation {
            verdict.status = VerdictStatus::VerifiedToDepth(set.depth_reached);
            verdict.truncation_capped = true;
        } else {
            verdict.status = VerdictStatus::Holds;
        }
        return Ok(verdict);
    }

    if !set.complete {
        if let Some(classification) = verdict.classification.clone() {
            if let Some(cert) =
                affine_certificate(graph, group, &folded, &classification, budget)?
            {
                verdict.certificate = Some(cert);
                verdict.status = VerdictStatus::CertifiedAffine;
                return Ok(verdict);
            }
        }
    }

    verdict.status = VerdictStatus::VerifiedToDepth(covered_to_depth);
    Ok(verdict)
}

/// Decide the basis property of a pair: restrict to finite orbits, split
/// into components, decide each, and take the conjunction.
pub fn decide(
    graph: &Arc<CoxeterGraph>,
    group: &SymmetryGroup,
    budget: &Budget,
) -> Result<Verdict, VerifyError> {
    let (restricted, restricted_group) = restrict_to_finite_orbits(graph, group);
    let dropped_vertices: Vec<VertexId> = graph
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !restricted.contains(v))
        .collect();
    let components = connected_components(&restricted, &restricted_group);
    let mut component_verdicts = Vec::with_capacity(components.len());
    for (comp_graph, comp_group) in &components {
        component_verdicts.push(component_decide(comp_graph, comp_group, budget)?);
    }
    Ok(aggregate(component_verdicts, dropped_vertices))
}

/// Conjunction over components: any failure wins, then depth-bounded,
/// then certified-affine, then holds.
pub fn aggregate(components: Vec<ComponentVerdict>, dropped: Vec<VertexId>) -> Verdict {
    let mut status = VerdictStatus::Holds;
    let mut min_depth: Option<u32> = None;
    let mut any_certified = false;
    let mut failed = false;
    for c in &components {
        match c.status {
            VerdictStatus::Fails => failed = true,
            VerdictStatus::VerifiedToDepth(d) => {
                min_depth = Some(min_depth.map_or(d, |m| m.min(d)));
            }
            VerdictStatus::CertifiedAffine => any_certified = true,
            VerdictStatus::Holds => {}
        }
    }
    if failed {
        status = VerdictStatus::Fails;
    } else if let Some(d) = min_depth {
        status = VerdictStatus::VerifiedToDepth(d);
    } else if any_certified {
        status = VerdictStatus::CertifiedAffine;
    }
    let truncation_capped = components.iter().any(|c| c.truncation_capped);
    Verdict {
        status,
        components,
        dropped_vertices: dropped,
        truncation_capped,
    }
}

/// Positive side of the classification cross-check: holds, certified, or
/// a truncation-capped full verification.
pub fn counts_as_positive(verdict: &Verdict) -> bool {
    match verdict.status {
        VerdictStatus::Holds | VerdictStatus::CertifiedAffine => true,
        VerdictStatus::VerifiedToDepth(_) => {
            verdict.truncation_capped
                && verdict.components.iter().all(|c| {
                    c.witness.is_none()
                        && c.roots_complete
                        && c.coverage
                            .as_ref()
                            .map(|cov| cov.uncovered.is_empty())
                            .unwrap_or(false)
                })
        }
        VerdictStatus::Fails => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::pair_from_token;

    fn decide_token(token: &str) -> Verdict {
        let (graph, group) = pair_from_token(token).unwrap();
        decide(&graph, &group, &Budget::default()).unwrap()
    }

    #[test]
    fn spherical_listed_pairs_hold() {
        for token in ["A3:g", "A5:g", "D4:g", "D4:g1", "D4:g1g2", "D5:g", "E6:g"] {
            let v = decide_token(token);
            assert_eq!(v.status, VerdictStatus::Holds, "{token}");
            let cov = v.components[0].coverage.as_ref().unwrap();
            assert!(cov.uncovered.is_empty());
        }
    }

    #[test]
    fn affine_listed_pairs_certify() {
        for token in ["tA3:g", "tD4:g", "tD4:g1", "tD4:g1g2", "tE6:g"] {
            let v = decide_token(token);
            assert_eq!(v.status, VerdictStatus::CertifiedAffine, "{token}");
            assert!(v.components[0].certificate.is_some());
        }
    }

    #[test]
    fn failing_pairs_carry_witnesses() {
        for token in ["tD4:swap01", "tD4:rot4", "tD6:rev", "tE6:rot3", "tE7:g"] {
            let v = decide_token(token);
            assert_eq!(v.status, VerdictStatus::Fails, "{token}");
            let w = v.components[0].witness.as_ref().unwrap();
            assert_ne!(w.pairing.sign(), Sign::Zero);
            assert_ne!(w.root, w.image);
        }
    }

    #[test]
    fn adjacent_swap_fails_through_the_commutation_probe() {
        // triangle with a reflection swapping an adjacent pair
        let v = decide_token("tA2:g");
        assert_eq!(v.status, VerdictStatus::Fails);
        let w = v.components[0].witness.as_ref().unwrap();
        assert_eq!(w.pairing, Scalar::from_integer(-1));
    }

    #[test]
    fn circuit_rotation_fails_with_an_empty_folded_system() {
        // the 3-cycle rotation leaves one orbit spanning the whole affine
        // circuit: no spherical orbits at all, and the commutation probe
        // refutes the pair
        let (graph, _) = pair_from_token("tA2").unwrap();
        let rot = Symmetry::validate(
            &graph,
            &[(0, 1), (1, 2), (2, 0)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let group = SymmetryGroup::generate(Arc::clone(&graph), vec![rot], 100).unwrap();
        let folded = fold(&graph, &group, 1000).unwrap();
        assert_eq!(folded.rank(), 0);
        assert_eq!(folded.non_spherical.len(), 1);
        let v = decide(&graph, &group, &Budget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::Fails);
        assert!(v.components[0].witness.is_some());
    }

    #[test]
    fn composed_flips_without_fixed_vertex_fail() {
        // two distinct circuit reflections compose to a fixed-point-free
        // rotation; the probe constructs a path witness
        let (graph, _) = pair_from_token("tA3:g").unwrap();
        let g1 = Symmetry::validate(
            &graph,
            &[(0, 0), (1, 3), (2, 2), (3, 1)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let g2 = Symmetry::validate(
            &graph,
            &[(0, 2), (1, 1), (2, 0), (3, 3)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let group =
            SymmetryGroup::generate(Arc::clone(&graph), vec![g1, g2], 100).unwrap();
        // the composite rotation fixes nothing
        assert!(check_fixed_vertex(&graph, &group).is_some());
        let v = decide(&graph, &group, &Budget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::Fails);
        let w = v.components[0].witness.as_ref().unwrap();
        assert_ne!(w.pairing.sign(), Sign::Zero);
    }

    #[test]
    fn large_coefficient_roots_share_a_class_with_distant_simple_roots() {
        // over an enumerated affine system: a root with a coordinate > 1
        // at a vertex realizing the distance to some outside vertex t is
        // in the same pairing class as the simple root of t
        for token in ["tD4:g", "tD5:g"] {
            let (graph, _group) = pair_from_token(token).unwrap();
            let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
            let set = enumerate_positive_roots(&form, 10, EnumerationCaps::default()).unwrap();
            let eq = equiv_classes(&form, &set).unwrap();
            let mut class_of = vec![usize::MAX; set.len()];
            for (ci, class) in eq.classes.iter().enumerate() {
                for &r in class {
                    class_of[r] = ci;
                }
            }
            let one = Scalar::one();
            let mut fired = 0usize;
            for (idx, root) in set.roots.iter().enumerate() {
                let support: Vec<VertexId> = (0..graph.n())
                    .filter(|&i| !root.coords[i].is_zero())
                    .map(|i| graph.vertex_at(i))
                    .collect();
                for &t in graph.vertices() {
                    if support.contains(&t) {
                        continue;
                    }
                    let dist = support
                        .iter()
                        .filter_map(|&s| graph.distance(t, s))
                        .min()
                        .unwrap();
                    let hypothesis = support.iter().any(|&t0| {
                        graph.distance(t, t0) == Some(dist)
                            && root.coords[graph.position(t0).unwrap()].cmp_real(&one)
                                == std::cmp::Ordering::Greater
                    });
                    if !hypothesis {
                        continue;
                    }
                    fired += 1;
                    let alpha_t = set
                        .position(&{
                            let mut a = vec![Scalar::zero(); graph.n()];
                            a[graph.position(t).unwrap()] = Scalar::one();
                            a
                        })
                        .expect("simple roots are enumerated");
                    assert_eq!(
                        class_of[idx], class_of[alpha_t],
                        "{token}: root {idx} and simple root of {t} split"
                    );
                }
            }
            assert!(fired > 0, "{token}: hypothesis never fired");
        }
    }

    #[test]
    fn trivial_groups_hold_on_spherical_graphs() {
        for token in ["A1", "A4", "B3", "F4", "H3"] {
            let v = decide_token(token);
            assert_eq!(v.status, VerdictStatus::Holds, "{token}");
        }
    }

    #[test]
    fn truncations_stay_depth_bounded() {
        for token in ["iAi[2]:g", "Dinf[5]:g"] {
            let v = decide_token(token);
            assert!(matches!(v.status, VerdictStatus::VerifiedToDepth(_)), "{token}");
            assert!(v.truncation_capped);
            assert!(counts_as_positive(&v), "{token}");
        }
    }

    #[test]
    fn fixed_roots_of_the_double_branch_flip() {
        // the twelve flip-fixed positive roots of the rank-6 system, by
        // coefficient vector over vertices 1..6
        let expected: Vec<[i64; 6]> = vec![
            [0, 0, 0, 1, 0, 0],
            [0, 1, 0, 1, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 1, 1, 0],
            [0, 1, 1, 1, 1, 0],
            [1, 0, 1, 1, 1, 1],
            [1, 1, 1, 1, 1, 1],
            [0, 1, 1, 2, 1, 0],
            [1, 1, 1, 2, 1, 1],
            [1, 1, 2, 2, 2, 1],
            [1, 1, 2, 3, 2, 1],
            [1, 2, 2, 3, 2, 1],
        ];
        let (graph, group) = pair_from_token("E6:g").unwrap();
        let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
        let set = enumerate_positive_roots(&form, 99, EnumerationCaps::default()).unwrap();
        let g = &group.elements()[1];
        let mut fixed: Vec<Vec<Scalar>> = set
            .roots
            .iter()
            .map(|r| r.coords.clone())
            .filter(|c| permute_coords(g, c) == *c)
            .collect();
        fixed.sort();
        let mut expect: Vec<Vec<Scalar>> = expected
            .iter()
            .map(|row| row.iter().map(|&c| Scalar::from_integer(c)).collect())
            .collect();
        expect.sort();
        assert_eq!(fixed, expect);
        // moved roots split 12 + 12 across the two sides of the flip
        assert_eq!(set.len() - fixed.len(), 24);
    }

    #[test]
    fn tabulated_refutation_images_match() {
        // seed roots and their displayed symmetry images, by (token,
        // seed coefficients, image coefficients) over sorted vertices
        let cases: Vec<(&str, Vec<i64>, Vec<i64>, i64)> = vec![
            (
                "tD4:swap01",
                vec![0, 1, 1, 1, 0],
                vec![1, 0, 1, 0, 1],
                -2,
            ),
            (
                "tD6:rev",
                vec![1, 1, 2, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 2, 1, 1],
                -2,
            ),
            (
                "tD4:rot4",
                vec![1, 0, 1, 1, 0],
                vec![0, 1, 1, 0, 1],
                -2,
            ),
            (
                "tE6:rot3",
                vec![1, 0, 1, 0, 1, 1, 0],
                vec![0, 0, 0, 1, 1, 1, 1],
                -1,
            ),
        ];
        for (token, seed, image, pairing) in cases {
            let (graph, group) = pair_from_token(token).unwrap();
            let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
            let seed: Vec<Scalar> = seed.into_iter().map(Scalar::from_integer).collect();
            let image: Vec<Scalar> = image.into_iter().map(Scalar::from_integer).collect();
            // the seed really is a root
            assert_eq!(
                form.bilinear(&seed, &seed).unwrap(),
                Scalar::from_integer(2),
                "{token}"
            );
            let g = group
                .elements()
                .iter()
                .find(|g| permute_coords(g, &seed) == image)
                .unwrap_or_else(|| panic!("{token}: no element yields the tabulated image"));
            assert_eq!(
                form.bilinear(&seed, &permute_coords(g, &seed)).unwrap(),
                Scalar::from_integer(pairing),
                "{token}"
            );
        }
    }

    #[test]
    fn coverage_words_reverify() {
        let (graph, group) = pair_from_token("E6:g").unwrap();
        let folded = fold(&graph, &group, 1000).unwrap();
        let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
        let set = enumerate_positive_roots(&form, 99, EnumerationCaps::default()).unwrap();
        let cov = coverage_check(&folded, &set, &Budget::default()).unwrap();
        assert!(cov.uncovered.is_empty());
        assert_eq!(verify_coverage_words(&folded, &cov), 0);
    }

    #[test]
    fn equiv_classes_separate_and_merge() {
        // simply-laced complete systems have ≥ 2 classes
        let (graph, _) = pair_from_token("A3").unwrap();
        let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
        let set = enumerate_positive_roots(&form, 99, EnumerationCaps::default()).unwrap();
        let eq = equiv_classes(&form, &set).unwrap();
        assert!(eq.definitive);
        assert!(eq.classes.len() >= 2);
        // a label ≥ 4 merges everything
        let (b2, _) = pair_from_token("B2").unwrap();
        let b2_form = FormMatrix::new(Arc::clone(&b2)).unwrap();
        let b2_set =
            enumerate_positive_roots(&b2_form, 99, EnumerationCaps::default()).unwrap();
        let eq = equiv_classes(&b2_form, &b2_set).unwrap();
        assert_eq!(eq.classes.len(), 1);
    }

    #[test]
    fn disjoint_union_takes_the_conjunction() {
        use crate::graph::Label;
        // A3 with flip, disjoint from a square-labeled pair with flip
        let graph = Arc::new(
            CoxeterGraph::new(
                vec![
                    VertexId(1),
                    VertexId(2),
                    VertexId(3),
                    VertexId(11),
                    VertexId(12),
                ],
                vec![
                    (VertexId(1), VertexId(2), Label::Finite(3)),
                    (VertexId(2), VertexId(3), Label::Finite(3)),
                    (VertexId(11), VertexId(12), Label::Finite(4)),
                ],
            )
            .unwrap(),
        );
        let f = Symmetry::validate(
            &graph,
            &[(1, 3), (2, 2), (3, 1), (11, 12), (12, 11)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let group = SymmetryGroup::generate(Arc::clone(&graph), vec![f], 100).unwrap();
        let v = decide(&graph, &group, &Budget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::Fails);
        assert_eq!(v.components.len(), 2);
        assert_eq!(v.components[0].status, VerdictStatus::Holds);
        assert_eq!(v.components[1].status, VerdictStatus::Fails);
    }
}
