//! Coxeter graphs, their label-preserving symmetries, orbit partitions,
//! and the finite-orbit / connected-component reductions.

pub mod parse;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

/// A vertex label. Bourbaki numbering is used for catalog graphs, with the
/// extra affine vertex labelled 0; negative labels are allowed so that
/// bi-infinite truncations keep their natural numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub i64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Coxeter matrix entry m_{s,t} for s ≠ t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{}", m),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

/// Infinite families represented by finite truncations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum InfiniteFamily {
    /// One-ended unlabeled path.
    AInfinity,
    /// Two-ended unlabeled path (vertices indexed over all integers).
    BiInfiniteA,
    /// Fork at one end, then an unbounded unlabeled path.
    DInfinity,
}

impl fmt::Display for InfiniteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteFamily::AInfinity => write!(f, "Ainf"),
            InfiniteFamily::BiInfiniteA => write!(f, "iAi"),
            InfiniteFamily::DInfinity => write!(f, "Dinf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("label {label} on edge {a}-{b} must be at least 2")]
    LabelTooSmall { a: VertexId, b: VertexId, label: u32 },
    #[error("conflicting labels declared for edge {a}-{b}: {first} vs {second}")]
    ConflictingLabel {
        a: VertexId,
        b: VertexId,
        first: Label,
        second: Label,
    },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
}

/// A finite Coxeter graph: vertices plus a symmetric label function.
/// Only labels ≥ 3 are stored; an absent pair means label 2 (no edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    vertices: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    labels: BTreeMap<(VertexId, VertexId), Label>,
    pub name: Option<String>,
    /// Set when this graph is a finite truncation of a named infinite
    /// family; enumerative verdicts about it are then depth-bounded.
    pub truncation_of: Option<InfiniteFamily>,
    /// Vertices declared to stand for infinite symmetry orbits (used by
    /// synthetic truncation schemas); dropped by the finite-orbit
    /// restriction.
    infinite_marked: BTreeSet<VertexId>,
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl CoxeterGraph {
    pub fn new(
        vertices: Vec<VertexId>,
        edges: Vec<(VertexId, VertexId, Label)>,
    ) -> Result<Self, GraphError> {
        let mut sorted = vertices;
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateVertex(w[0]));
            }
        }
        let index: BTreeMap<VertexId, usize> =
            sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut labels = BTreeMap::new();
        for (a, b, label) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for v in [a, b] {
                if !index.contains_key(&v) {
                    return Err(GraphError::UnknownVertex(v));
                }
            }
            if let Label::Finite(m) = label {
                if m < 2 {
                    return Err(GraphError::LabelTooSmall { a, b, label: m });
                }
            }
            let k = key(a, b);
            if let Some(&prev) = labels.get(&k) {
                if prev != label {
                    return Err(GraphError::ConflictingLabel {
                        a: k.0,
                        b: k.1,
                        first: prev,
                        second: label,
                    });
                }
            } else if label != Label::Finite(2) {
                labels.insert(k, label);
            }
        }
        Ok(CoxeterGraph {
            vertices: sorted,
            index,
            labels,
            name: None,
            truncation_of: None,
            infinite_marked: BTreeSet::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_truncation_of(mut self, family: InfiniteFamily) -> Self {
        self.truncation_of = Some(family);
        self
    }

    pub fn mark_infinite(&mut self, vertices: impl IntoIterator<Item = VertexId>) {
        for v in vertices {
            self.infinite_marked.insert(v);
        }
    }

    pub fn infinite_marked(&self) -> &BTreeSet<VertexId> {
        &self.infinite_marked
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    /// Position of a vertex in the sorted vertex list (the coordinate index).
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn vertex_at(&self, i: usize) -> VertexId {
        self.vertices[i]
    }

    /// m_{s,t}: 1 on the diagonal, 2 for non-edges.
    pub fn label(&self, a: VertexId, b: VertexId) -> Label {
        if a == b {
            return Label::Finite(1);
        }
        self.labels
            .get(&key(a, b))
            .copied()
            .unwrap_or(Label::Finite(2))
    }

    /// Stored edges (m ≥ 3) in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Label)> + '_ {
        self.labels.iter().map(|(&(a, b), &l)| (a, b, l))
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&u| u != v && self.label(u, v) != Label::Finite(2))
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    /// Full subgraph spanned by a vertex subset (labels restricted).
    pub fn full_subgraph(&self, keep: &BTreeSet<VertexId>) -> CoxeterGraph {
        let vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| keep.contains(v))
            .collect();
        let trivial = vertices.len() == self.vertices.len();
        let edges: Vec<_> = self
            .edges()
            .filter(|(a, b, _)| keep.contains(a) && keep.contains(b))
            .collect();
        let mut g = CoxeterGraph::new(vertices, edges).expect("subgraph of a valid graph");
        if trivial {
            g.name = self.name.clone();
        }
        g.truncation_of = self.truncation_of;
        g.infinite_marked = self
            .infinite_marked
            .intersection(keep)
            .copied()
            .collect();
        g
    }

    /// Connected components as vertex sets, sorted by least vertex.
    pub fn component_sets(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                if !comp.insert(v) {
                    continue;
                }
                for u in self.neighbors(v) {
                    if !comp.contains(&u) {
                        queue.push_back(u);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() <= 1
    }

    /// Graph distance (edges with m ≥ 3), or None when disconnected.
    pub fn distance(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.shortest_path(a, b).map(|p| p.len() - 1)
    }

    /// A shortest path a = p_0, ..., p_ℓ = b, or None when disconnected.
    pub fn shortest_path(&self, a: VertexId, b: VertexId) -> Option<Vec<VertexId>> {
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        parent.insert(a, a);
        while let Some(v) = queue.pop_front() {
            if v == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for u in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(u) {
                    e.insert(v);
                    queue.push_back(u);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("permutation is not a bijection of the vertex set: {0}")]
    NotABijection(String),
    #[error("labels not preserved: m({a},{b}) = {before} but m({ia},{ib}) = {after}")]
    LabelViolation {
        a: VertexId,
        b: VertexId,
        ia: VertexId,
        ib: VertexId,
        before: Label,
        after: Label,
    },
    #[error("symmetry closure exceeded the cap of {0} elements")]
    ClosureCapExceeded(usize),
}

/// A label-preserving permutation of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Symmetry {
    /// perm[i] = position of the image of the vertex at position i.
    perm: Vec<usize>,
}

impl Symmetry {
    /// Validates bijectivity and m_{g(s),g(t)} = m_{s,t} for all pairs.
    pub fn validate(
        graph: &CoxeterGraph,
        mapping: &BTreeMap<VertexId, VertexId>,
    ) -> Result<Symmetry, SymmetryError> {
        let n = graph.n();
        if mapping.len() != n {
            return Err(SymmetryError::NotABijection(format!(
                "{} assignments for {} vertices",
                mapping.len(),
                n
            )));
        }
        let mut perm = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for (&v, &w) in mapping {
            let (i, j) = match (graph.position(v), graph.position(w)) {
                (Some(i), Some(j)) => (i, j),
                _ => {
                    return Err(SymmetryError::NotABijection(format!(
                        "{} -> {} leaves the vertex set",
                        v, w
                    )))
                }
            };
            if hit[j] {
                return Err(SymmetryError::NotABijection(format!(
                    "two vertices map to {}",
                    w
                )));
            }
            hit[j] = true;
            perm[i] = j;
        }
        let g = Symmetry { perm };
        for a in 0..n {
            for b in (a + 1)..n {
                let (va, vb) = (graph.vertex_at(a), graph.vertex_at(b));
                let (ia, ib) = (g.image(graph, va), g.image(graph, vb));
                let before = graph.label(va, vb);
                let after = graph.label(ia, ib);
                if before != after {
                    return Err(SymmetryError::LabelViolation {
                        a: va,
                        b: vb,
                        ia,
                        ib,
                        before,
                        after,
                    });
                }
            }
        }
        Ok(g)
    }

    pub fn identity(graph: &CoxeterGraph) -> Symmetry {
        Symmetry {
            perm: (0..graph.n()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn image(&self, graph: &CoxeterGraph, v: VertexId) -> VertexId {
        graph.vertex_at(self.perm[graph.position(v).expect("vertex in graph")])
    }

    pub fn image_position(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        Symmetry {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Symmetry {
        let mut perm = vec![0usize; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
        }
        Symmetry { perm }
    }

    pub fn mapping(&self, graph: &CoxeterGraph) -> BTreeMap<VertexId, VertexId> {
        graph
            .vertices()
            .iter()
            .map(|&v| (v, self.image(graph, v)))
            .collect()
    }

    /// Cycle notation over vertex labels, fixed points omitted.
    pub fn cycle_string(&self, graph: &CoxeterGraph) -> String {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.perm[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(graph.vertex_at(i).to_string());
                i = self.perm[i];
            }
            out.push('(');
            out.push_str(&cyc.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Default cap on symmetry-group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A group of symmetries with its precomputed element closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    graph: Arc<CoxeterGraph>,
    generators: Vec<Symmetry>,
    elements: Vec<Symmetry>,
}

impl SymmetryGroup {
    pub fn trivial(graph: Arc<CoxeterGraph>) -> SymmetryGroup {
        let id = Symmetry::identity(&graph);
        SymmetryGroup {
            graph,
            generators: Vec::new(),
            elements: vec![id],
        }
    }

    /// Breadth-first closure of the generated subgroup; deterministic
    /// element ordering (discovery order from sorted generators).
    pub fn generate(
        graph: Arc<CoxeterGraph>,
        generators: Vec<Symmetry>,
        cap: usize,
    ) -> Result<SymmetryGroup, SymmetryError> {
        let id = Symmetry::identity(&graph);
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let mut elements = vec![id];
        let mut seen: BTreeSet<Vec<usize>> =
            elements.iter().map(|g| g.perm.clone()).collect();
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &gens {
                let next = g.compose(&current);
                if seen.insert(next.perm.clone()) {
                    if elements.len() + 1 > cap {
                        return Err(SymmetryError::ClosureCapExceeded(cap));
                    }
                    elements.push(next);
                }
            }
        }
        Ok(SymmetryGroup {
            graph,
            generators: gens,
            elements,
        })
    }

    pub fn graph(&self) -> &Arc<CoxeterGraph> {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Symmetry] {
        &self.elements
    }

    pub fn generators(&self) -> &[Symmetry] {
        &self.generators
    }

    pub fn contains(&self, g: &Symmetry) -> bool {
        self.elements.iter().any(|h| h == g)
    }

    /// Element set as positional permutations, sorted (for group equality).
    pub fn element_perms_sorted(&self) -> Vec<Vec<usize>> {
        let mut perms: Vec<Vec<usize>> =
            self.elements.iter().map(|g| g.perm.clone()).collect();
        perms.sort();
        perms
    }

    /// Orbit partition of the vertex set, orbits sorted by least member.
    pub fn vertex_orbits(&self) -> OrbitPartition {
        let n = self.graph.n();
        let mut assigned = vec![false; n];
        let mut orbits: Vec<Vec<VertexId>> = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let mut orbit: BTreeSet<usize> = BTreeSet::new();
            for g in &self.elements {
                orbit.insert(g.perm[i]);
            }
            for &j in &orbit {
                assigned[j] = true;
            }
            orbits.push(orbit.into_iter().map(|j| self.graph.vertex_at(j)).collect());
        }
        orbits.sort_by_key(|o| o[0]);
        let mut index = BTreeMap::new();
        for (k, orbit) in orbits.iter().enumerate() {
            for &v in orbit {
                index.insert(v, k);
            }
        }
        let finite = orbits
            .iter()
            .map(|o| !o.iter().any(|v| self.graph.infinite_marked().contains(v)))
            .collect();
        OrbitPartition {
            orbits,
            index,
            finite,
        }
    }
}

/// Partition of the vertex set into symmetry orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<VertexId>>,
    pub index: BTreeMap<VertexId, usize>,
    /// Orbit k is finite unless one of its vertices is marked as standing
    /// for an infinite orbit of a truncated family.
    pub finite: Vec<bool>,
}

impl OrbitPartition {
    pub fn orbit_of(&self, v: VertexId) -> Option<&[VertexId]> {
        self.index.get(&v).map(|&k| self.orbits[k].as_slice())
    }
}

/// Full subgraph on the union of finite orbits together with the induced
/// symmetry group. The identity transformation for ordinary finite graphs.
pub fn restrict_to_finite_orbits(
    graph: &Arc<CoxeterGraph>,
    group: &SymmetryGroup,
) -> (Arc<CoxeterGraph>, SymmetryGroup) {
    let orbits = group.vertex_orbits();
    let keep: BTreeSet<VertexId> = orbits
        .orbits
        .iter()
        .zip(orbits.finite.iter())
        .filter(|(_, &fin)| fin)
        .flat_map(|(o, _)| o.iter().copied())
        .collect();
    if keep.len() == graph.n() {
        return (Arc::clone(graph), group.clone());
    }
    let mut sub = graph.full_subgraph(&keep);
    sub.infinite_marked.clear();
    let sub = Arc::new(sub);
    let gens: Vec<Symmetry> = group
        .elements()
        .iter()
        .map(|g| {
            let mapping: BTreeMap<VertexId, VertexId> = keep
                .iter()
                .map(|&v| (v, g.image(graph, v)))
                .collect();
            Symmetry::validate(&sub, &mapping).expect("finite orbits are group-stable")
        })
        .collect();
    let induced = SymmetryGroup::generate(Arc::clone(&sub), gens, DEFAULT_CLOSURE_CAP)
        .expect("induced group is no larger than the original");
    (sub, induced)
}

/// Connected components with their induced stabilizer groups, sorted by
/// least vertex. Components permuted among each other by the group are
/// each returned with their own stabilizer-induced symmetries.
pub fn connected_components(
    graph: &Arc<CoxeterGraph>,
    group: &SymmetryGroup,
) -> Vec<(Arc<CoxeterGraph>, SymmetryGroup)> {
    let comps = graph.component_sets();
    comps
        .into_iter()
        .map(|comp| {
            let sub = Arc::new(graph.full_subgraph(&comp));
            let gens: Vec<Symmetry> = group
                .elements()
                .iter()
                .filter(|g| comp.iter().all(|&v| comp.contains(&g.image(graph, v))))
                .map(|g| {
                    let mapping: BTreeMap<VertexId, VertexId> =
                        comp.iter().map(|&v| (v, g.image(graph, v))).collect();
                    Symmetry::validate(&sub, &mapping)
                        .expect("stabilizer elements restrict to symmetries")
                })
                .collect();
            let induced =
                SymmetryGroup::generate(Arc::clone(&sub), gens, DEFAULT_CLOSURE_CAP)
                    .expect("stabilizer restriction is finite");
            (sub, induced)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: i64) -> CoxeterGraph {
        CoxeterGraph::new(
            (1..=n).map(VertexId).collect(),
            (1..n)
                .map(|i| (VertexId(i), VertexId(i + 1), Label::Finite(3)))
                .collect(),
        )
        .unwrap()
    }

    fn flip(graph: &CoxeterGraph, n: i64) -> Symmetry {
        let mapping: BTreeMap<VertexId, VertexId> = (1..=n)
            .map(|i| (VertexId(i), VertexId(n + 1 - i)))
            .collect();
        Symmetry::validate(graph, &mapping).unwrap()
    }

    #[test]
    fn labels_are_symmetric_and_defaulted() {
        let g = path(3);
        assert_eq!(g.label(VertexId(1), VertexId(2)), Label::Finite(3));
        assert_eq!(g.label(VertexId(2), VertexId(1)), Label::Finite(3));
        assert_eq!(g.label(VertexId(1), VertexId(3)), Label::Finite(2));
        assert_eq!(g.label(VertexId(1), VertexId(1)), Label::Finite(1));
    }

    #[test]
    fn label_two_is_not_stored() {
        let g = CoxeterGraph::new(
            vec![VertexId(1), VertexId(2)],
            vec![(VertexId(1), VertexId(2), Label::Finite(2))],
        )
        .unwrap();
        assert_eq!(g.edges().count(), 0);
    }

    #[test]
    fn flip_of_path_is_valid_but_shift_is_not() {
        let g = path(3);
        assert!(!flip(&g, 3).is_identity());
        // 1<->2 with 3 fixed breaks m(1,3) = 2 vs m(2,3) = 3
        let mapping: BTreeMap<VertexId, VertexId> = [(1, 2), (2, 1), (3, 3)]
            .into_iter()
            .map(|(a, b)| (VertexId(a), VertexId(b)))
            .collect();
        let err = Symmetry::validate(&g, &mapping).unwrap_err();
        assert!(matches!(err, SymmetryError::LabelViolation { .. }));
    }

    #[test]
    fn identity_is_always_valid() {
        let g = path(5);
        let id: BTreeMap<VertexId, VertexId> =
            g.vertices().iter().map(|&v| (v, v)).collect();
        assert!(Symmetry::validate(&g, &id).unwrap().is_identity());
    }

    #[test]
    fn closure_orders() {
        // empty generating set -> trivial group
        let g = Arc::new(path(3));
        assert_eq!(SymmetryGroup::trivial(Arc::clone(&g)).order(), 1);
        // one involution -> order 2
        let f = flip(&g, 3);
        let grp = SymmetryGroup::generate(Arc::clone(&g), vec![f], 100).unwrap();
        assert_eq!(grp.order(), 2);
        // D4 star: triality (order 3) plus a leaf swap -> S3 of order 6
        let d4 = Arc::new(
            CoxeterGraph::new(
                vec![VertexId(1), VertexId(2), VertexId(3), VertexId(4)],
                vec![
                    (VertexId(2), VertexId(1), Label::Finite(3)),
                    (VertexId(2), VertexId(3), Label::Finite(3)),
                    (VertexId(2), VertexId(4), Label::Finite(3)),
                ],
            )
            .unwrap(),
        );
        let g1 = Symmetry::validate(
            &d4,
            &[(1, 3), (2, 2), (3, 4), (4, 1)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let g2 = Symmetry::validate(
            &d4,
            &[(1, 1), (2, 2), (3, 4), (4, 3)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let grp = SymmetryGroup::generate(Arc::clone(&d4), vec![g1, g2], 100).unwrap();
        assert_eq!(grp.order(), 6);
    }

    #[test]
    fn closure_cap_is_an_error() {
        let g = Arc::new(path(5));
        let f = flip(&g, 5);
        let err = SymmetryGroup::generate(g, vec![f], 1).unwrap_err();
        assert!(matches!(err, SymmetryError::ClosureCapExceeded(1)));
    }

    #[test]
    fn orbits_of_flip() {
        let g = Arc::new(path(3));
        let f = flip(&g, 3);
        let grp = SymmetryGroup::generate(Arc::clone(&g), vec![f], 100).unwrap();
        let p = grp.vertex_orbits();
        assert_eq!(
            p.orbits,
            vec![vec![VertexId(1), VertexId(3)], vec![VertexId(2)]]
        );
        assert!(p.finite.iter().all(|&f| f));
        // trivial group -> singletons
        let t = SymmetryGroup::trivial(g);
        assert_eq!(t.vertex_orbits().orbits.len(), 3);
    }

    #[test]
    fn orbit_partition_covers_vertices() {
        let g = Arc::new(path(4));
        let grp = SymmetryGroup::generate(Arc::clone(&g), vec![flip(&g, 4)], 100).unwrap();
        let p = grp.vertex_orbits();
        let total: usize = p.orbits.iter().map(|o| o.len()).sum();
        assert_eq!(total, 4);
        for &v in g.vertices() {
            assert!(p.orbit_of(v).is_some());
        }
    }

    #[test]
    fn restriction_drops_marked_orbits() {
        // A3 with a marked tail vertex hanging off the middle
        let mut g = CoxeterGraph::new(
            vec![VertexId(1), VertexId(2), VertexId(3), VertexId(10)],
            vec![
                (VertexId(1), VertexId(2), Label::Finite(3)),
                (VertexId(2), VertexId(3), Label::Finite(3)),
                (VertexId(2), VertexId(10), Label::Finite(3)),
            ],
        )
        .unwrap();
        g.mark_infinite([VertexId(10)]);
        let g = Arc::new(g);
        let f = Symmetry::validate(
            &g,
            &[(1, 3), (2, 2), (3, 1), (10, 10)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let grp = SymmetryGroup::generate(Arc::clone(&g), vec![f], 100).unwrap();
        let (sub, sub_grp) = restrict_to_finite_orbits(&g, &grp);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub_grp.order(), 2);
        // idempotent
        let (sub2, _) = restrict_to_finite_orbits(&sub, &sub_grp);
        assert_eq!(sub2.n(), 3);
        // unmarked graphs are untouched
        let plain = Arc::new(CoxeterGraph::new(vec![VertexId(1)], vec![]).unwrap());
        let trivial = SymmetryGroup::trivial(Arc::clone(&plain));
        let (same, _) = restrict_to_finite_orbits(&plain, &trivial);
        assert_eq!(same.n(), 1);
    }

    #[test]
    fn components_with_swapping_group() {
        // two copies of A3 swapped by the group
        let verts: Vec<VertexId> = [1, 2, 3, 11, 12, 13].into_iter().map(VertexId).collect();
        let edges = vec![
            (VertexId(1), VertexId(2), Label::Finite(3)),
            (VertexId(2), VertexId(3), Label::Finite(3)),
            (VertexId(11), VertexId(12), Label::Finite(3)),
            (VertexId(12), VertexId(13), Label::Finite(3)),
        ];
        let g = Arc::new(CoxeterGraph::new(verts, edges).unwrap());
        let swap = Symmetry::validate(
            &g,
            &[(1, 11), (2, 12), (3, 13), (11, 1), (12, 2), (13, 3)]
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        )
        .unwrap();
        let grp = SymmetryGroup::generate(Arc::clone(&g), vec![swap], 100).unwrap();
        let comps = connected_components(&g, &grp);
        assert_eq!(comps.len(), 2);
        // the swap stabilizes neither component, so each induced group is trivial
        for (sub, induced) in &comps {
            assert_eq!(sub.n(), 3);
            assert!(induced.is_trivial());
        }
        // reassembly reproduces the original label function
        let mut all_edges = Vec::new();
        for (sub, _) in &comps {
            all_edges.extend(sub.edges());
        }
        all_edges.sort();
        let mut orig: Vec<_> = g.edges().collect();
        orig.sort();
        assert_eq!(all_edges, orig);
    }
}
