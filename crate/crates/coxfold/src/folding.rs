//! Folding a Coxeter graph along a symmetry group: spherical vertex
//! orbits, their longest elements, the folded Coxeter matrix and graph,
//! the equivariant root basis spanned by the orbit sums α̂_X, and the map
//! from folded positive roots to orbits of positive roots.

use std::sync::Arc;

use crate::catalog;
use crate::form::{FormError, FormMatrix};
use crate::graph::{CoxeterGraph, Label, OrbitPartition, Symmetry, SymmetryGroup, VertexId};
use crate::matrix::Mat;
use crate::roots::{
    positive_bfs, simple_reflection_matrix, EnumerationCaps, GenTag, GroupElement, RootError,
    RootSet, RootSign,
};
use crate::scalar::{cos_squared, Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoldingError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("orbit {{{0}}} spans a non-spherical subgraph; it has no longest element")]
    NonSpherical(String),
    #[error("bond order iteration exceeded the cap of {0}")]
    OrderCapExceeded(u32),
    #[error("folding requires all vertex orbits finite; restrict first")]
    InfiniteOrbit,
}

/// Apply a vertex symmetry to a coordinate vector.
pub fn permute_coords(sym: &Symmetry, coords: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); coords.len()];
    for (i, c) in coords.iter().enumerate() {
        out[sym.image_position(i)] = c.clone();
    }
    out
}

/// True iff the full subgraph on X has finite Coxeter group: every
/// connected component is of spherical type.
pub fn spherical_check(graph: &CoxeterGraph, x: &[VertexId]) -> bool {
    let keep: std::collections::BTreeSet<VertexId> = x.iter().copied().collect();
    let sub = graph.full_subgraph(&keep);
    sub.component_sets().into_iter().all(|comp| {
        let comp_graph = sub.full_subgraph(&comp);
        match catalog::recognize(&comp_graph) {
            Ok(gt) => gt.family.map(|f| f.is_spherical()).unwrap_or(false),
            Err(_) => false,
        }
    })
}

/// Longest element of the parabolic subgroup on a spherical vertex set,
/// by greedy ascent: while some s in X keeps w(α_s) positive, extend the
/// word by s. Terminates after exactly |Φ_X⁺| steps and is verified to be
/// an involution.
pub fn longest_element(
    form: &FormMatrix,
    x: &[VertexId],
) -> Result<GroupElement, FoldingError> {
    let graph = form.graph();
    let n = graph.n();
    let orbit_str = || {
        x.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    if !spherical_check(graph, x) {
        return Err(FoldingError::NonSpherical(orbit_str()));
    }
    // |Φ_X⁺| bounds the ascent
    let keep: std::collections::BTreeSet<VertexId> = x.iter().copied().collect();
    let sub = Arc::new(graph.full_subgraph(&keep));
    let sub_form = FormMatrix::new(Arc::clone(&sub))?;
    let sub_roots = crate::roots::enumerate_positive_roots(
        &sub_form,
        10_000,
        EnumerationCaps::default(),
    )?;
    debug_assert!(sub_roots.complete, "spherical subgraph enumerates fully");
    let positive_count = sub_roots.len();

    let positions: Vec<usize> = x
        .iter()
        .map(|&v| graph.position(v).expect("orbit vertices in graph"))
        .collect();
    let mut word: Vec<GenTag> = Vec::with_capacity(positive_count);
    let mut matrix = Mat::identity(n);
    'ascent: for _ in 0..=positive_count {
        for (&v, &pos) in x.iter().zip(positions.iter()) {
            let image: Vec<Scalar> = (0..n).map(|i| matrix.at(i, pos).clone()).collect();
            if crate::roots::root_sign(&image) == Some(RootSign::Positive) {
                word.push(GenTag::S(v));
                matrix = matrix.mul(&simple_reflection_matrix(form, pos));
                continue 'ascent;
            }
        }
        // all w(α_s) negative: done
        if word.len() != positive_count {
            return Err(FoldingError::Root(RootError::InvariantViolation(format!(
                "longest-element ascent on {{{}}} stopped after {} steps, expected {}",
                orbit_str(),
                word.len(),
                positive_count
            ))));
        }
        if !matrix.mul(&matrix).is_identity() {
            return Err(FoldingError::Root(RootError::InvariantViolation(format!(
                "longest element of {{{}}} is not involutive",
                orbit_str()
            ))));
        }
        return Ok(GroupElement { word, matrix });
    }
    Err(FoldingError::Root(RootError::InvariantViolation(format!(
        "longest-element ascent on {{{}}} failed to terminate",
        orbit_str()
    ))))
}

/// Order of u_X·u_Y. Fast path: the normalized pairing
/// c = ⟨α̂_X,α̂_Y⟩/√(⟨α̂_X,α̂_X⟩⟨α̂_Y,α̂_Y⟩) gives ∞ for c ≤ −1 and m when
/// c² = cos²(π/m), m ∈ {2,…,6}; otherwise fall back to matrix iteration.
pub fn folded_order(
    form: &FormMatrix,
    u_x: &GroupElement,
    u_y: &GroupElement,
    alpha_x: &[Scalar],
    alpha_y: &[Scalar],
    order_cap: u32,
) -> Result<Label, FoldingError> {
    let pairing = form.bilinear(alpha_x, alpha_y)?;
    let nx = form.bilinear(alpha_x, alpha_x)?;
    let ny = form.bilinear(alpha_y, alpha_y)?;
    let p2 = &pairing * &pairing;
    let nn = &nx * &ny;
    if pairing.sign() != Sign::Positive {
        if (p2.clone() - nn.clone()).sign() != Sign::Negative {
            return Ok(Label::Infinite);
        }
        for m in [2u32, 3, 4, 5, 6] {
            let target = &cos_squared(m).expect("table covers 2..=6") * &nn;
            if p2 == target {
                return Ok(Label::Finite(m));
            }
        }
    }
    let product = u_x.matrix.mul(&u_y.matrix);
    match product.multiplicative_order(order_cap) {
        Some(k) => Ok(Label::Finite(k)),
        None => Err(FoldingError::OrderCapExceeded(order_cap)),
    }
}

/// The folded data of a pair: spherical orbits, longest elements, orbit
/// sums, the folded Coxeter matrix, and the folded graph.
#[derive(Debug, Clone)]
pub struct FoldedSystem {
    pub graph: Arc<CoxeterGraph>,
    pub form: FormMatrix,
    pub orbits: OrbitPartition,
    /// Orbit indices whose parabolic subgroup is finite, ascending.
    pub spherical: Vec<usize>,
    /// Finite orbits excluded for spanning infinite-type subgraphs.
    pub non_spherical: Vec<usize>,
    /// Longest elements, aligned with `spherical`.
    pub longest: Vec<GroupElement>,
    /// Orbit sums α̂_X, aligned with `spherical`.
    pub alpha_hat: Vec<Vec<Scalar>>,
    /// Folded Coxeter matrix over `spherical` indices.
    pub folded_matrix: Vec<Vec<Label>>,
    pub folded_graph: Arc<CoxeterGraph>,
}

impl FoldedSystem {
    pub fn rank(&self) -> usize {
        self.spherical.len()
    }

    pub fn orbit_vertices(&self, k: usize) -> &[VertexId] {
        &self.orbits.orbits[self.spherical[k]]
    }

    /// Generator tag of the k-th folded generator: the plain reflection
    /// for singleton orbits, the longest-element tag otherwise.
    pub fn gen_tag(&self, k: usize) -> GenTag {
        let orbit = self.orbit_vertices(k);
        if orbit.len() == 1 {
            GenTag::S(orbit[0])
        } else {
            GenTag::U(orbit.to_vec())
        }
    }

    /// Index (into `spherical`) of the orbit containing a vertex.
    pub fn spherical_index_of(&self, v: VertexId) -> Option<usize> {
        let orbit = *self.orbits.index.get(&v)?;
        self.spherical.iter().position(|&k| k == orbit)
    }

    pub fn generator(&self, k: usize) -> GroupElement {
        GroupElement {
            word: vec![self.gen_tag(k)],
            matrix: self.longest[k].matrix.clone(),
        }
    }

    /// Resolve a word over generator tags into a group element. `S(v)`
    /// resolves to the plain reflection, `U(orbit)` to the longest element
    /// of the spherical orbit containing the listed vertices.
    pub fn element_from_tags(&self, tags: &[GenTag]) -> Option<GroupElement> {
        let n = self.graph.n();
        let mut matrix = Mat::identity(n);
        for tag in tags {
            let factor = match tag {
                GenTag::S(v) => {
                    let pos = self.graph.position(*v)?;
                    simple_reflection_matrix(&self.form, pos)
                }
                GenTag::U(members) => {
                    let k = self.spherical_index_of(*members.first()?)?;
                    self.longest[k].matrix.clone()
                }
            };
            matrix = matrix.mul(&factor);
        }
        Some(GroupElement {
            word: tags.to_vec(),
            matrix,
        })
    }
}

/// Fold a pair along its vertex orbits (all orbits must be finite).
pub fn fold(
    graph: &Arc<CoxeterGraph>,
    group: &SymmetryGroup,
    order_cap: u32,
) -> Result<FoldedSystem, FoldingError> {
    let form = FormMatrix::new(Arc::clone(graph))?;
    let orbits = group.vertex_orbits();
    if orbits.finite.iter().any(|&f| !f) {
        return Err(FoldingError::InfiniteOrbit);
    }
    let mut spherical = Vec::new();
    let mut non_spherical = Vec::new();
    for (k, orbit) in orbits.orbits.iter().enumerate() {
        if spherical_check(graph, orbit) {
            spherical.push(k);
        } else {
            non_spherical.push(k);
        }
    }
    let mut longest = Vec::with_capacity(spherical.len());
    let mut alpha_hat = Vec::with_capacity(spherical.len());
    for &k in &spherical {
        let orbit = &orbits.orbits[k];
        longest.push(longest_element(&form, orbit)?);
        let mut coords = vec![Scalar::zero(); graph.n()];
        for &v in orbit {
            coords[graph.position(v).expect("orbit vertex")] = Scalar::one();
        }
        alpha_hat.push(coords);
    }
    let rank = spherical.len();
    let mut folded_matrix = vec![vec![Label::Finite(2); rank]; rank];
    for i in 0..rank {
        folded_matrix[i][i] = Label::Finite(1);
        for j in (i + 1)..rank {
            let label = folded_order(
                &form,
                &longest[i],
                &longest[j],
                &alpha_hat[i],
                &alpha_hat[j],
                order_cap,
            )?;
            folded_matrix[i][j] = label;
            folded_matrix[j][i] = label;
        }
    }
    let folded_vertices: Vec<VertexId> = (0..rank as i64).map(VertexId).collect();
    let mut folded_edges: Vec<(VertexId, VertexId, Label)> = Vec::new();
    for i in 0..rank {
        for j in (i + 1)..rank {
            let l = folded_matrix[i][j];
            if l != Label::Finite(2) {
                folded_edges.push((VertexId(i as i64), VertexId(j as i64), l));
            }
        }
    }
    let mut folded_graph =
        CoxeterGraph::new(folded_vertices, folded_edges).expect("folded matrix is symmetric");
    if let Ok(gt) = catalog::recognize(&folded_graph) {
        if let Some(f) = gt.family {
            folded_graph = folded_graph.with_name(f.to_string());
        }
    }
    Ok(FoldedSystem {
        graph: Arc::clone(graph),
        form,
        orbits,
        spherical,
        non_spherical,
        longest,
        alpha_hat,
        folded_matrix,
        folded_graph: Arc::new(folded_graph),
    })
}

/// Enumerate the positive roots of the equivariant basis: BFS over the
/// orbit sums using the longest-element actions, with positivity read
/// from the ambient coordinates.
pub fn enumerate_folded_roots(
    folded: &FoldedSystem,
    max_depth: u32,
    caps: EnumerationCaps,
) -> Result<RootSet, RootError> {
    let rank = folded.rank();
    let gen_tags: Vec<GenTag> = (0..rank).map(|k| folded.gen_tag(k)).collect();
    let gen_mats: Vec<Mat> = (0..rank)
        .map(|k| folded.longest[k].matrix.clone())
        .collect();
    let starts = folded.alpha_hat.clone();
    positive_bfs(
        Arc::clone(&folded.graph),
        gen_tags.clone(),
        gen_mats,
        starts,
        gen_tags,
        max_depth,
        caps,
    )
}

/// One orbit of enumerated positive roots under the symmetry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOrbit {
    /// Indices into the root set, ascending.
    pub members: Vec<usize>,
    /// Index of the representative: least coordinate vector.
    pub repr: usize,
}

/// Partition an enumerated root set into symmetry orbits. The image of an
/// enumerated root under a symmetry is always enumerated (symmetries
/// preserve BFS depth), so a missing image is an internal error.
pub fn root_orbits(
    set: &RootSet,
    group: &SymmetryGroup,
) -> Result<Vec<RootOrbit>, RootError> {
    let mut assigned = vec![false; set.len()];
    let mut orbits = Vec::new();
    for idx in set.sorted_indices() {
        if assigned[idx] {
            continue;
        }
        let mut members = std::collections::BTreeSet::new();
        for g in group.elements() {
            let image = permute_coords(g, &set.roots[idx].coords);
            let j = set.position(&image).ok_or_else(|| {
                RootError::InvariantViolation(
                    "symmetry image of an enumerated root is not enumerated".into(),
                )
            })?;
            members.insert(j);
        }
        let members: Vec<usize> = members.into_iter().collect();
        for &j in &members {
            assigned[j] = true;
        }
        let repr = *members
            .iter()
            .min_by(|&&a, &&b| set.roots[a].coords.cmp(&set.roots[b].coords))
            .expect("orbit nonempty");
        orbits.push(RootOrbit { members, repr });
    }
    Ok(orbits)
}

/// The orbit map: each folded positive root w(α̂_X) goes to the orbit of
/// w(α_s), s ∈ X. Checked for witness independence and injectivity.
#[derive(Debug, Clone)]
pub struct FMap {
    /// Per folded root index: the orbit index, or None when the image
    /// falls outside the enumerated canonical set (depth-truncated data).
    pub image: Vec<Option<usize>>,
    /// Injectivity over the resolved images.
    pub injective: bool,
    /// All orbits hit (meaningful when both enumerations are complete).
    pub surjective: bool,
}

pub fn compute_f(
    folded: &FoldedSystem,
    folded_set: &RootSet,
    canonical_set: &RootSet,
    orbits: &[RootOrbit],
) -> Result<FMap, RootError> {
    let mut orbit_of_root = vec![usize::MAX; canonical_set.len()];
    for (oi, orbit) in orbits.iter().enumerate() {
        for &r in &orbit.members {
            orbit_of_root[r] = oi;
        }
    }
    let mut image: Vec<Option<usize>> = Vec::with_capacity(folded_set.len());
    for idx in 0..folded_set.len() {
        let mut found: Option<usize> = None;
        for witness in &folded_set.witnesses[idx] {
            let w = folded_set.witness_element(witness);
            let x = folded.orbit_vertices(witness.source);
            for &s in x {
                let mut alpha = vec![Scalar::zero(); folded.graph.n()];
                alpha[folded.graph.position(s).expect("vertex in graph")] = Scalar::one();
                let img = w.apply(&alpha);
                if let Some(r) = canonical_set.position(&img) {
                    let oi = orbit_of_root[r];
                    match found {
                        None => found = Some(oi),
                        Some(prev) if prev == oi => {}
                        Some(prev) => {
                            return Err(RootError::InvariantViolation(format!(
                                "orbit-map witnesses disagree on folded root {idx}: \
                                 orbit {prev} vs orbit {oi}"
                            )))
                        }
                    }
                }
            }
        }
        image.push(found);
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut injective = true;
    for oi in image.iter().flatten() {
        if !seen.insert(*oi) {
            injective = false;
        }
    }
    let surjective = folded_set.complete
        && canonical_set.complete
        && image.iter().all(|i| i.is_some())
        && seen.len() == orbits.len();
    Ok(FMap {
        image,
        injective,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::pair_from_token;
    use crate::roots::enumerate_positive_roots;

    fn fold_token(token: &str) -> (FoldedSystem, SymmetryGroup) {
        let (graph, group) = pair_from_token(token).unwrap();
        let folded = fold(&graph, &group, 1000).unwrap();
        (folded, group)
    }

    #[test]
    fn vertex_orbits_of_the_listed_pairs() {
        let (_, group) = pair_from_token("E6:g").unwrap();
        let orbits = group.vertex_orbits();
        let expect: Vec<Vec<VertexId>> = vec![
            vec![VertexId(1), VertexId(6)],
            vec![VertexId(2)],
            vec![VertexId(3), VertexId(5)],
            vec![VertexId(4)],
        ];
        assert_eq!(orbits.orbits, expect);
        // the flip pair on the 3-path
        let (_, group) = pair_from_token("A3:g").unwrap();
        assert_eq!(
            group.vertex_orbits().orbits,
            vec![vec![VertexId(1), VertexId(3)], vec![VertexId(2)]]
        );
    }

    #[test]
    fn truncations_have_only_finite_orbits() {
        let (graph, group) = pair_from_token("Dinf[6]:g").unwrap();
        let (restricted, _) = crate::graph::restrict_to_finite_orbits(&graph, &group);
        assert_eq!(restricted.n(), graph.n());
    }

    #[test]
    fn spherical_check_examples() {
        let (graph, _) = pair_from_token("tA2").unwrap();
        // the whole triangle is affine, any two vertices are spherical
        let all: Vec<VertexId> = graph.vertices().to_vec();
        assert!(!spherical_check(&graph, &all));
        assert!(spherical_check(&graph, &all[..2]));
        assert!(spherical_check(&graph, &all[..1]));
    }

    #[test]
    fn longest_element_of_discrete_and_dihedral_sets() {
        let (graph, _) = pair_from_token("A3").unwrap();
        let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
        // single vertex: u = s
        let u = longest_element(&form, &[VertexId(1)]).unwrap();
        assert_eq!(u.word.len(), 1);
        // discrete pair {1,3}: u = s1 s3, both roots negated
        let u = longest_element(&form, &[VertexId(1), VertexId(3)]).unwrap();
        assert_eq!(u.word.len(), 2);
        let alpha1 = vec![Scalar::one(), Scalar::zero(), Scalar::zero()];
        assert_eq!(
            u.apply(&alpha1),
            vec![Scalar::from_integer(-1), Scalar::zero(), Scalar::zero()]
        );
        // adjacent pair {1,2}: dihedral of order 6, word length 3
        let u = longest_element(&form, &[VertexId(1), VertexId(2)]).unwrap();
        assert_eq!(u.word.len(), 3);
        assert!(u.matrix.mul(&u.matrix).is_identity());
        // non-spherical set is rejected
        let (ta2, _) = pair_from_token("tA2").unwrap();
        let ta2_form = FormMatrix::new(Arc::clone(&ta2)).unwrap();
        assert!(matches!(
            longest_element(&ta2_form, ta2.vertices()),
            Err(FoldingError::NonSpherical(_))
        ));
    }

    #[test]
    fn folding_dictionary_small_cases() {
        for (token, expected) in [
            ("A3:g", "B2"),
            ("D4:g1g2", "G2"),
            ("D4:g1", "G2"),
            ("E6:g", "F4"),
            ("tA3:g", "tB2"),
            ("tD4:g1g2", "tG2"),
            ("tE6:g", "tF4"),
        ] {
            let (folded, _) = fold_token(token);
            assert_eq!(
                folded.folded_graph.name.as_deref(),
                Some(expected),
                "{token}"
            );
        }
    }

    #[test]
    fn trivial_group_folds_to_itself() {
        let (folded, group) = fold_token("A3");
        assert_eq!(folded.rank(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let orig = folded
                    .graph
                    .label(folded.graph.vertex_at(i), folded.graph.vertex_at(j));
                assert_eq!(folded.folded_matrix[i][j], orig);
            }
        }
        // the folded enumeration reproduces the canonical one, and every
        // root orbit is a singleton
        let canonical =
            enumerate_positive_roots(&folded.form, 99, EnumerationCaps::default()).unwrap();
        let folded_set =
            enumerate_folded_roots(&folded, 99, EnumerationCaps::default()).unwrap();
        let mut a: Vec<_> = canonical.roots.iter().map(|r| r.coords.clone()).collect();
        let mut b: Vec<_> = folded_set.roots.iter().map(|r| r.coords.clone()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let orbits = root_orbits(&canonical, &group).unwrap();
        assert_eq!(orbits.len(), canonical.len());
        assert!(orbits.iter().all(|o| o.members.len() == 1));
    }

    #[test]
    fn folded_bond_orders_match_matrix_iteration() {
        for token in ["A3:g", "D4:g1g2", "E6:g", "tA3:g", "tD4:g", "tE6:g", "tA1"] {
            let (folded, _) = fold_token(token);
            for i in 0..folded.rank() {
                for j in (i + 1)..folded.rank() {
                    let product = folded.longest[i].matrix.mul(&folded.longest[j].matrix);
                    let iterated = product.multiplicative_order(200);
                    match folded.folded_matrix[i][j] {
                        Label::Finite(m) => {
                            assert_eq!(iterated, Some(m), "{token} bond {i},{j}")
                        }
                        Label::Infinite => assert_eq!(iterated, None, "{token}"),
                    }
                }
            }
        }
    }

    #[test]
    fn folded_roots_of_the_flip_pair() {
        let (folded, group) = fold_token("A3:g");
        let set = enumerate_folded_roots(&folded, 99, EnumerationCaps::default()).unwrap();
        assert!(set.complete);
        assert_eq!(set.len(), 4);
        // every folded root is fixed by the symmetry coordinatewise
        for r in &set.roots {
            for g in group.elements() {
                assert_eq!(permute_coords(g, &r.coords), r.coords);
            }
        }
        // norms are constant along the orbit of each basis vector
        for (idx, r) in set.roots.iter().enumerate() {
            let source = set.witnesses[idx][0].source;
            let base = &folded.alpha_hat[source];
            let n1 = folded.form.bilinear(&r.coords, &r.coords).unwrap();
            let n2 = folded.form.bilinear(base, base).unwrap();
            assert_eq!(n1, n2);
        }
    }

    #[test]
    fn orbit_map_is_a_bijection_for_the_flip_pair() {
        let (folded, group) = fold_token("A3:g");
        let canonical =
            enumerate_positive_roots(&folded.form, 99, EnumerationCaps::default()).unwrap();
        assert_eq!(canonical.len(), 6);
        let orbits = root_orbits(&canonical, &group).unwrap();
        assert_eq!(orbits.len(), 4);
        let folded_set =
            enumerate_folded_roots(&folded, 99, EnumerationCaps::default()).unwrap();
        let f = compute_f(&folded, &folded_set, &canonical, &orbits).unwrap();
        assert!(f.injective);
        assert!(f.surjective);
    }

    #[test]
    fn folded_count_never_exceeds_orbit_count() {
        // equality exactly on the pairs with the basis property
        for (token, equal) in [
            ("A3:g", true),
            ("A5:g", true),
            ("D4:g1g2", true),
            ("E6:g", true),
            ("B2:g", false),
            ("G2:g", false),
            ("A2:g", false),
        ] {
            let (folded, group) = fold_token(token);
            let canonical =
                enumerate_positive_roots(&folded.form, 9999, EnumerationCaps::default())
                    .unwrap();
            assert!(canonical.complete, "{token}");
            let folded_set =
                enumerate_folded_roots(&folded, 9999, EnumerationCaps::default()).unwrap();
            assert!(folded_set.complete, "{token}");
            let orbits = root_orbits(&canonical, &group).unwrap();
            assert!(folded_set.len() <= orbits.len(), "{token}");
            assert_eq!(folded_set.len() == orbits.len(), equal, "{token}");
        }
    }

    #[test]
    fn longest_elements_commute_with_the_group() {
        for token in ["A3:g", "D4:g1g2", "E6:g", "tD4:g1g2"] {
            let (folded, group) = fold_token(token);
            for u in &folded.longest {
                for g in group.elements() {
                    // g·u·g⁻¹ = u as matrices: check column images
                    let n = folded.graph.n();
                    for j in 0..n {
                        let mut e = vec![Scalar::zero(); n];
                        e[j] = Scalar::one();
                        let ge = permute_coords(g, &e);
                        let lhs = permute_coords(&g.inverse(), &u.matrix.apply(&ge));
                        let rhs = u.matrix.apply(&e);
                        assert_eq!(lhs, rhs, "{token}");
                    }
                }
            }
        }
    }
}
