//! Root systems of the canonical root basis, enumerated by reflection
//! breadth-first search with exact coordinates.
//!
//! Positive roots are stored with their discovery depth (= minimal word
//! length of a witness) and with up to a few BFS witnesses each, so the
//! root-to-reflection correspondence can be cross-checked for witness
//! independence.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::form::{FormError, FormMatrix};
use crate::graph::{CoxeterGraph, VertexId};
use crate::matrix::Mat;
use crate::scalar::{Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("enumeration exceeded the cap of {0} roots")]
    Budget(usize),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("root not found in the enumerated set")]
    UnknownRoot,
}

/// Sign of a root: all nonzero coordinates share it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RootSign {
    Positive,
    Negative,
}

/// Classify a coordinate vector; `None` means mixed signs (not a root of
/// a root basis).
pub fn root_sign(coords: &[Scalar]) -> Option<RootSign> {
    let mut pos = false;
    let mut neg = false;
    for c in coords {
        match c.sign() {
            Sign::Positive => pos = true,
            Sign::Negative => neg = true,
            Sign::Zero => {}
        }
        if pos && neg {
            return None;
        }
    }
    Some(if neg { RootSign::Negative } else { RootSign::Positive })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates over the owning graph's sorted vertex list.
    pub coords: Vec<Scalar>,
    /// BFS layer of first discovery.
    pub depth: u32,
    pub sign: RootSign,
}

/// A generator tag inside a word: a simple reflection or the longest
/// element of a spherical orbit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GenTag {
    S(VertexId),
    U(Vec<VertexId>),
}

impl fmt::Display for GenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenTag::S(v) => write!(f, "s{}", v),
            GenTag::U(orbit) => {
                let members: Vec<String> = orbit.iter().map(|v| v.to_string()).collect();
                write!(f, "u{{{}}}", members.join(","))
            }
        }
    }
}

/// A group element carried as a word in declared generators together with
/// its exact matrix action. Words are witnesses, not identities: equality
/// is matrix equality.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub word: Vec<GenTag>,
    pub matrix: Mat,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn identity(n: usize) -> GroupElement {
        GroupElement {
            word: Vec::new(),
            matrix: Mat::identity(n),
        }
    }

    /// self ∘ rhs (apply rhs first).
    pub fn compose(&self, rhs: &GroupElement) -> GroupElement {
        let mut word = self.word.clone();
        word.extend(rhs.word.iter().cloned());
        GroupElement {
            word,
            matrix: self.matrix.mul(&rhs.matrix),
        }
    }

    /// Inverse of a word in involutive generators: the reverse word.
    pub fn inverse_of_involutive_word(&self) -> GroupElement {
        let word: Vec<GenTag> = self.word.iter().rev().cloned().collect();
        // The matrix of the reversed word is the inverse; recomputing it
        // from generator matrices is the caller's business, so here we
        // exploit involutivity only at the word level and require the
        // caller to supply matrices via compose_from.
        GroupElement {
            word,
            matrix: self.matrix.clone(),
        }
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x)
    }
}

/// σ_s as an n×n matrix on the ambient space: x ↦ x − ⟨α_s, x⟩α_s.
pub fn simple_reflection_matrix(form: &FormMatrix, s_pos: usize) -> Mat {
    let n = form.n();
    let mut m = Mat::identity(n);
    for j in 0..n {
        let pairing = form.at(s_pos, j).clone();
        if !pairing.is_zero() {
            *m.at_mut(s_pos, j) -= &pairing;
        }
    }
    m
}

/// σ_s packaged as a group element.
pub fn simple_reflection(form: &FormMatrix, v: VertexId) -> GroupElement {
    let pos = form
        .graph()
        .position(v)
        .expect("vertex belongs to the graph");
    GroupElement {
        word: vec![GenTag::S(v)],
        matrix: simple_reflection_matrix(form, pos),
    }
}

/// Reflection along an arbitrary norm-2 root: x ↦ x − ⟨β, x⟩β.
pub fn reflection_along(form: &FormMatrix, beta: &[Scalar]) -> Result<Mat, RootError> {
    let n = form.n();
    let mut m = Mat::identity(n);
    for j in 0..n {
        let e_j: Vec<Scalar> = (0..n)
            .map(|k| if k == j { Scalar::one() } else { Scalar::zero() })
            .collect();
        let pairing = form.bilinear(beta, &e_j)?;
        if pairing.is_zero() {
            continue;
        }
        for i in 0..n {
            if !beta[i].is_zero() {
                *m.at_mut(i, j) -= &(&pairing * &beta[i]);
            }
        }
    }
    Ok(m)
}

/// One BFS witness: the root equals (gens[word[0]] ∘ ... ∘ gens[word[k-1]])
/// applied to source number `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: Vec<usize>,
    pub source: usize,
}

/// Enumeration limits.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationCaps {
    pub max_roots: usize,
    pub witness_cap: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_roots: 1 << 20,
            witness_cap: 4,
        }
    }
}

/// Positive roots found by reflection BFS from a start set, closed under
/// a fixed generator family.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub graph: Arc<CoxeterGraph>,
    pub gen_tags: Vec<GenTag>,
    pub gen_mats: Vec<Mat>,
    /// Start roots in coordinate form; `source_tags[i]` names what starts[i] is.
    pub starts: Vec<Vec<Scalar>>,
    pub source_tags: Vec<GenTag>,
    pub roots: Vec<Root>,
    pub witnesses: Vec<Vec<Witness>>,
    index: BTreeMap<Vec<Scalar>, usize>,
    pub complete: bool,
    pub depth_reached: u32,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn position(&self, coords: &[Scalar]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn contains(&self, coords: &[Scalar]) -> bool {
        self.index.contains_key(coords)
    }

    /// Indices sorted by (depth, canonical coordinate order): the stable
    /// export and iteration order.
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.roots.len()).collect();
        idx.sort_by(|&a, &b| {
            self.roots[a]
                .depth
                .cmp(&self.roots[b].depth)
                .then_with(|| self.roots[a].coords.cmp(&self.roots[b].coords))
        });
        idx
    }

    /// Rebuild the group element of a witness from generator matrices.
    pub fn witness_element(&self, w: &Witness) -> GroupElement {
        let n = self.graph.n();
        let mut word = Vec::with_capacity(w.word.len());
        let mut matrix = Mat::identity(n);
        for &g in &w.word {
            word.push(self.gen_tags[g].clone());
            matrix = matrix.mul(&self.gen_mats[g]);
        }
        GroupElement { word, matrix }
    }

    /// The reflection ϖ(β) = w·s·w⁻¹ built from the first BFS witness;
    /// independent of the witness chosen (verified in tests).
    pub fn reflection_of(&self, idx: usize) -> Result<GroupElement, RootError> {
        let witness = self
            .witnesses
            .get(idx)
            .and_then(|ws| ws.first())
            .ok_or(RootError::UnknownRoot)?;
        Ok(self.reflection_from_witness(witness))
    }

    pub fn reflection_from_witness(&self, witness: &Witness) -> GroupElement {
        let n = self.graph.n();
        let mut word: Vec<GenTag> = Vec::with_capacity(2 * witness.word.len() + 1);
        let mut matrix = Mat::identity(n);
        for &g in &witness.word {
            word.push(self.gen_tags[g].clone());
            matrix = matrix.mul(&self.gen_mats[g]);
        }
        // conjugate by the source generator
        word.push(self.source_tags[witness.source].clone());
        let source_mat = self.source_reflection_mat(witness.source);
        matrix = matrix.mul(&source_mat);
        for &g in witness.word.iter().rev() {
            word.push(self.gen_tags[g].clone());
            matrix = matrix.mul(&self.gen_mats[g]);
        }
        GroupElement { word, matrix }
    }

    fn source_reflection_mat(&self, source: usize) -> Mat {
        // Sources are simple roots of the ambient graph or folded basis
        // vectors; in both cases the defining generator list contains the
        // matching reflection.
        let tag = &self.source_tags[source];
        let pos = self
            .gen_tags
            .iter()
            .position(|t| t == tag)
            .expect("every source tag has a matching generator");
        self.gen_mats[pos].clone()
    }

    /// Sub-rootset of roots supported inside X, re-indexed to the full
    /// subgraph on X. Witnesses are not carried over.
    pub fn restrict_to_subset(
        &self,
        keep: &std::collections::BTreeSet<VertexId>,
    ) -> RootSet {
        let sub = Arc::new(self.graph.full_subgraph(keep));
        let positions: Vec<usize> = sub
            .vertices()
            .iter()
            .map(|&v| self.graph.position(v).expect("subset of vertex set"))
            .collect();
        let outside: Vec<usize> = (0..self.graph.n())
            .filter(|i| !positions.contains(i))
            .collect();
        let mut roots = Vec::new();
        let mut index = BTreeMap::new();
        for r in &self.roots {
            if outside.iter().any(|&i| !r.coords[i].is_zero()) {
                continue;
            }
            let coords: Vec<Scalar> =
                positions.iter().map(|&i| r.coords[i].clone()).collect();
            index.insert(coords.clone(), roots.len());
            roots.push(Root {
                coords,
                depth: r.depth,
                sign: r.sign,
            });
        }
        let witnesses = vec![Vec::new(); roots.len()];
        RootSet {
            graph: sub,
            gen_tags: Vec::new(),
            gen_mats: Vec::new(),
            starts: Vec::new(),
            source_tags: Vec::new(),
            roots,
            witnesses,
            index,
            complete: self.complete,
            depth_reached: self.depth_reached,
        }
    }
}

/// Reflection BFS over a generator family from a start set, keeping the
/// positive side. Negative images are discarded (they are negatives of
/// members); a mixed-sign image is an internal invariant violation.
pub fn positive_bfs(
    graph: Arc<CoxeterGraph>,
    gen_tags: Vec<GenTag>,
    gen_mats: Vec<Mat>,
    starts: Vec<Vec<Scalar>>,
    source_tags: Vec<GenTag>,
    max_depth: u32,
    caps: EnumerationCaps,
) -> Result<RootSet, RootError> {
    let mut roots: Vec<Root> = Vec::new();
    let mut witnesses: Vec<Vec<Witness>> = Vec::new();
    let mut index: BTreeMap<Vec<Scalar>, usize> = BTreeMap::new();
    for (s, coords) in starts.iter().enumerate() {
        if index.contains_key(coords) {
            continue;
        }
        index.insert(coords.clone(), roots.len());
        roots.push(Root {
            coords: coords.clone(),
            depth: 0,
            sign: RootSign::Positive,
        });
        witnesses.push(vec![Witness {
            word: Vec::new(),
            source: s,
        }]);
    }
    let mut layer: Vec<usize> = (0..roots.len()).collect();
    let mut depth_reached = 0u32;
    let mut complete = false;
    let mut depth = 0u32;
    while !layer.is_empty() {
        if depth >= max_depth {
            break;
        }
        depth += 1;
        let mut next = Vec::new();
        for &ri in &layer {
            let base_witness = witnesses[ri][0].clone();
            let coords = roots[ri].coords.clone();
            for (g, mat) in gen_mats.iter().enumerate() {
                let image = mat.apply(&coords);
                match root_sign(&image) {
                    Some(RootSign::Negative) => continue,
                    None => {
                        return Err(RootError::InvariantViolation(format!(
                            "mixed-sign image of a positive root under {}",
                            gen_tags[g]
                        )))
                    }
                    Some(RootSign::Positive) => {}
                }
                match index.get(&image) {
                    Some(&existing) => {
                        if witnesses[existing].len() < caps.witness_cap {
                            let mut word = Vec::with_capacity(base_witness.word.len() + 1);
                            word.push(g);
                            word.extend(base_witness.word.iter().copied());
                            let w = Witness {
                                word,
                                source: base_witness.source,
                            };
                            if !witnesses[existing].contains(&w) {
                                witnesses[existing].push(w);
                            }
                        }
                    }
                    None => {
                        if roots.len() + 1 > caps.max_roots {
                            return Err(RootError::Budget(caps.max_roots));
                        }
                        let mut word = Vec::with_capacity(base_witness.word.len() + 1);
                        word.push(g);
                        word.extend(base_witness.word.iter().copied());
                        index.insert(image.clone(), roots.len());
                        next.push(roots.len());
                        roots.push(Root {
                            coords: image,
                            depth,
                            sign: RootSign::Positive,
                        });
                        witnesses.push(vec![Witness {
                            word,
                            source: base_witness.source,
                        }]);
                    }
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        depth_reached = depth;
        layer = next;
    }
    if roots.is_empty() {
        complete = true;
    }
    Ok(RootSet {
        graph,
        gen_tags,
        gen_mats,
        starts,
        source_tags,
        roots,
        witnesses,
        index,
        complete,
        depth_reached,
    })
}

/// Enumerate Φ⁺ of the canonical root basis, layer by layer up to
/// `max_depth`; `complete` is set when a full layer adds nothing new.
pub fn enumerate_positive_roots(
    form: &FormMatrix,
    max_depth: u32,
    caps: EnumerationCaps,
) -> Result<RootSet, RootError> {
    let graph = Arc::clone(form.graph());
    let n = graph.n();
    let mut gen_tags = Vec::with_capacity(n);
    let mut gen_mats = Vec::with_capacity(n);
    let mut starts = Vec::with_capacity(n);
    for i in 0..n {
        gen_tags.push(GenTag::S(graph.vertex_at(i)));
        gen_mats.push(simple_reflection_matrix(form, i));
        starts.push(
            (0..n)
                .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
                .collect(),
        );
    }
    let source_tags = gen_tags.clone();
    positive_bfs(
        graph, gen_tags, gen_mats, starts, source_tags, max_depth, caps,
    )
}

/// Apply a group element to a coordinate vector and re-classify the sign.
/// A mixed-sign result is impossible over a root basis and reported as an
/// invariant violation.
pub fn act(w: &GroupElement, coords: &[Scalar]) -> Result<(Vec<Scalar>, RootSign), RootError> {
    let image = w.matrix.apply(coords);
    match root_sign(&image) {
        Some(sign) => Ok((image, sign)),
        None => Err(RootError::InvariantViolation(
            "group action produced a mixed-sign vector".into(),
        )),
    }
}
