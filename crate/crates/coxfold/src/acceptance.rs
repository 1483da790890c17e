//! The acceptance matrix: every release-gating check as a callable
//! criterion, shared between `selftest` and the integration suite.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::{self, pair_from_token, Family, WordSym};
use crate::folding::{
    compute_f, enumerate_folded_roots, fold, permute_coords, root_orbits, FoldedSystem,
};
use crate::form::FormMatrix;
use crate::graph::{
    CoxeterGraph, Label, Symmetry, SymmetryGroup, VertexId, DEFAULT_CLOSURE_CAP,
};
use crate::roots::{enumerate_positive_roots, GenTag, RootSet};
use crate::scalar::{Scalar, Sign};
use crate::verify::{
    self, decide, signed_orbit_bfs, verify_coverage_words, witness_search, Budget,
    TranslationKind, Verdict, VerdictStatus,
};

pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub run: fn() -> Result<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: "root-counts",
            title: "complete root counts against the permutation oracle",
            run: root_counts,
        },
        Criterion {
            id: "folding-dictionary",
            title: "folded graph families for all listed pairs up to rank 8",
            run: folding_dictionary,
        },
        Criterion {
            id: "positive-verdicts",
            title: "holds / certified-affine on the listed pairs with words re-verified",
            run: positive_verdicts,
        },
        Criterion {
            id: "negative-verdicts",
            title: "refutation witnesses with the tabulated pairings",
            run: negative_verdicts,
        },
        Criterion {
            id: "orbit-map-bijection",
            title: "folded roots biject with root orbits on the complete examples",
            run: orbit_map_bijection,
        },
        Criterion {
            id: "affine-certificates",
            title: "explicit translation words and the power law",
            run: affine_certificates,
        },
        Criterion {
            id: "invariant-suites",
            title: "orthogonality, fixedness propagation, orbit negation, class counts, reflection map",
            run: invariant_suites,
        },
        Criterion {
            id: "reduction-consistency",
            title: "component conjunction and finite-orbit restriction agree with direct decisions",
            run: reduction_consistency,
        },
        Criterion {
            id: "classifier-cross-validation",
            title: "pattern classification agrees with computational verdicts on the pair matrix",
            run: classifier_cross_validation,
        },
    ]
}

pub fn run_all(filter: Option<&str>) -> Vec<CriterionOutcome> {
    criteria()
        .into_iter()
        .filter(|c| filter.map(|f| c.id.contains(f)).unwrap_or(true))
        .map(|c| {
            let result = (c.run)();
            CriterionOutcome {
                id: c.id.to_string(),
                title: c.title.to_string(),
                passed: result.is_ok(),
                detail: match result {
                    Ok(d) => d,
                    Err(e) => e,
                },
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

fn budget() -> Budget {
    Budget::default()
}

fn enumerate_pair(token: &str) -> Result<(FoldedSystem, SymmetryGroup, RootSet), String> {
    let (graph, group) = pair_from_token(token).map_err(|e| format!("{token}: {e}"))?;
    let folded = fold(&graph, &group, 1000).map_err(|e| format!("{token}: {e}"))?;
    let set = enumerate_positive_roots(
        &folded.form,
        budget().root_depth,
        budget().enumeration_caps(),
    )
    .map_err(|e| format!("{token}: {e}"))?;
    Ok((folded, group, set))
}

fn enumerate_complete(token: &str) -> Result<(FoldedSystem, SymmetryGroup, RootSet), String> {
    let (graph, group) = pair_from_token(token).map_err(|e| format!("{token}: {e}"))?;
    let folded = fold(&graph, &group, 1000).map_err(|e| format!("{token}: {e}"))?;
    let set = enumerate_positive_roots(&folded.form, 10_000, budget().enumeration_caps())
        .map_err(|e| format!("{token}: {e}"))?;
    if !set.complete {
        return Err(format!("{token}: enumeration did not complete"));
    }
    Ok((folded, group, set))
}

fn decide_token(token: &str) -> Result<Verdict, String> {
    let (graph, group) = pair_from_token(token).map_err(|e| format!("{token}: {e}"))?;
    decide(&graph, &group, &budget()).map_err(|e| format!("{token}: {e}"))
}

fn simple_root(graph: &CoxeterGraph, v: VertexId) -> Vec<Scalar> {
    let mut a = vec![Scalar::zero(); graph.n()];
    a[graph.position(v).expect("vertex")] = Scalar::one();
    a
}

fn coeff_coords(graph: &CoxeterGraph, pairs: &[(VertexId, i64)]) -> Vec<Scalar> {
    let mut a = vec![Scalar::zero(); graph.n()];
    for &(v, c) in pairs {
        a[graph.position(v).expect("vertex")] = Scalar::from_integer(c);
    }
    a
}

fn resolve_word(folded: &FoldedSystem, word: &[WordSym]) -> Result<Vec<GenTag>, String> {
    word.iter()
        .map(|sym| match *sym {
            WordSym::S(i) => Ok(GenTag::S(VertexId(i))),
            WordSym::UOrbitOf(i) => {
                let k = folded
                    .spherical_index_of(VertexId(i))
                    .ok_or_else(|| format!("vertex {i} is in no spherical orbit"))?;
                Ok(folded.gen_tag(k))
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// criterion 1: root counts
// ---------------------------------------------------------------------------

/// Independent oracle: the rank-n path group acts as permutations of
/// {0..n}; roots are the difference vectors e_i − e_j. Counts positive
/// images of the simple differences over the whole permutation group.
fn path_root_count_oracle(n: usize) -> usize {
    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for slot in 0..=p.len() {
                let mut q = p.clone();
                q.insert(slot, k - 1);
                out.push(q);
            }
        }
        out
    }
    let mut positives = std::collections::BTreeSet::new();
    for w in permutations(n + 1) {
        for i in 0..n {
            let (a, b) = (w[i], w[i + 1]);
            // e_a − e_b is positive exactly when a < b
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            positives.insert((a, b));
        }
    }
    positives.len()
}

fn root_counts() -> Result<String, String> {
    let (_, _, d4) = enumerate_complete("D4")?;
    if d4.len() != 12 {
        return Err(format!("D4 count {} != 12", d4.len()));
    }
    let (_, _, e6) = enumerate_complete("E6")?;
    if e6.len() != 36 {
        return Err(format!("E6 count {} != 36", e6.len()));
    }
    for n in 1..=6usize {
        let token = format!("A{}", n);
        let (_, _, set) = enumerate_complete(&token)?;
        let oracle = path_root_count_oracle(n);
        let formula = n * (n + 1) / 2;
        if set.len() != oracle || oracle != formula {
            return Err(format!(
                "A{n}: enumerated {} vs oracle {} vs formula {}",
                set.len(),
                oracle,
                formula
            ));
        }
    }
    Ok("D4=12, E6=36, A1..A6 match the permutation oracle".into())
}

// ---------------------------------------------------------------------------
// criterion 2: folding dictionary
// ---------------------------------------------------------------------------

fn folding_dictionary() -> Result<String, String> {
    let table: Vec<(String, Family)> = vec![
        ("A3:g".into(), Family::B(2)),
        ("A5:g".into(), Family::B(3)),
        ("A7:g".into(), Family::B(4)),
        ("D4:g".into(), Family::B(3)),
        ("D5:g".into(), Family::B(4)),
        ("D6:g".into(), Family::B(5)),
        ("D7:g".into(), Family::B(6)),
        ("D8:g".into(), Family::B(7)),
        ("D4:g1".into(), Family::G2),
        ("D4:g1g2".into(), Family::G2),
        ("E6:g".into(), Family::F4),
        ("tA3:g".into(), Family::TildeB(2)),
        ("tA5:g".into(), Family::TildeC(3)),
        ("tA7:g".into(), Family::TildeC(4)),
        ("tD4:g".into(), Family::TildeB(3)),
        ("tD5:g".into(), Family::TildeB(4)),
        ("tD6:g".into(), Family::TildeB(5)),
        ("tD7:g".into(), Family::TildeB(6)),
        ("tD8:g".into(), Family::TildeB(7)),
        ("tD4:g1".into(), Family::TildeG2),
        ("tD4:g1g2".into(), Family::TildeG2),
        ("tE6:g".into(), Family::TildeF4),
    ];
    for (token, expected) in &table {
        let (graph, group) = pair_from_token(token).map_err(|e| format!("{token}: {e}"))?;
        let folded = fold(&graph, &group, 1000).map_err(|e| format!("{token}: {e}"))?;
        let got = catalog::recognize(&folded.folded_graph)
            .map_err(|e| format!("{token}: {e}"))?
            .family;
        if got != Some(*expected) {
            return Err(format!("{token}: folded to {:?}, expected {}", got, expected));
        }
    }
    Ok(format!("{} foldings match the dictionary", table.len()))
}

// ---------------------------------------------------------------------------
// criterion 3: positive verdicts
// ---------------------------------------------------------------------------

fn positive_verdicts() -> Result<String, String> {
    let holds = [
        "A3:g", "A5:g", "A7:g", "A9:g", "D4:g", "D4:g1", "D4:g1g2", "E6:g",
    ];
    let certified = [
        "tA3:g", "tA5:g", "tA7:g", "tA9:g", "tD4:g", "tD4:g1", "tD4:g1g2", "tE6:g",
    ];
    let mut reverified = 0usize;
    for token in holds {
        let v = decide_token(token)?;
        if v.status != VerdictStatus::Holds {
            return Err(format!("{token}: expected holds, got {:?}", v.status));
        }
        reverified += reverify_components(token, &v)?;
    }
    for token in certified {
        let v = decide_token(token)?;
        if v.status != VerdictStatus::CertifiedAffine {
            return Err(format!(
                "{token}: expected certified-affine, got {:?}",
                v.status
            ));
        }
        reverified += reverify_components(token, &v)?;
    }
    Ok(format!(
        "8 holds + 8 certified-affine; {reverified} coverage witness equations re-verified, zero discrepancies"
    ))
}

fn reverify_components(token: &str, v: &Verdict) -> Result<usize, String> {
    let mut count = 0usize;
    for c in &v.components {
        if let Some(cov) = &c.coverage {
            // rebuild the folded system of the component pair
            let (graph, group) = pair_from_token(token).map_err(|e| e.to_string())?;
            let folded = fold(&graph, &group, 1000).map_err(|e| e.to_string())?;
            let bad = verify_coverage_words(&folded, cov);
            if bad != 0 {
                return Err(format!("{token}: {bad} coverage witnesses failed re-verification"));
            }
            count += cov.entries.len();
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// criterion 4: negative verdicts
// ---------------------------------------------------------------------------

fn negative_verdicts() -> Result<String, String> {
    let table: [(&str, i64); 5] = [
        ("tD4:swap01", -2),
        ("tD6:rev", -2),
        ("tD4:rot4", -2),
        ("tE6:rot3", -1),
        ("tE7:g", -2),
    ];
    for (token, expected) in table {
        let v = decide_token(token)?;
        if v.status != VerdictStatus::Fails {
            return Err(format!("{token}: expected fails, got {:?}", v.status));
        }
        let w = v.components[0]
            .witness
            .as_ref()
            .ok_or_else(|| format!("{token}: refutation without witness"))?;
        if w.pairing != Scalar::from_integer(expected) {
            return Err(format!(
                "{token}: seeded witness pairing {} != {expected}",
                w.pairing
            ));
        }
        // an unseeded search must still find a sound witness
        let (folded, group, set) = enumerate_pair(token)?;
        let unseeded = witness_search(&folded.form, &set, &group, &[])
            .map_err(|e| format!("{token}: {e}"))?
            .ok_or_else(|| format!("{token}: no unseeded witness found"))?;
        if unseeded.image == unseeded.root || unseeded.pairing.sign() == Sign::Zero {
            return Err(format!("{token}: unseeded witness unsound"));
        }
    }
    Ok("five failing families refuted with the tabulated pairings".into())
}

// ---------------------------------------------------------------------------
// criterion 5: orbit map bijection
// ---------------------------------------------------------------------------

fn orbit_map_bijection() -> Result<String, String> {
    // the rank-6 double-branch flip pair
    let (folded, group, set) = enumerate_complete("E6:g")?;
    let orbits = root_orbits(&set, &group).map_err(|e| e.to_string())?;
    let folded_set = enumerate_folded_roots(&folded, 10_000, budget().enumeration_caps())
        .map_err(|e| e.to_string())?;
    if !(folded_set.complete && folded_set.len() == 24 && orbits.len() == 24) {
        return Err(format!(
            "E6:g: folded {} (complete {}), orbits {}",
            folded_set.len(),
            folded_set.complete,
            orbits.len()
        ));
    }
    let singletons = orbits.iter().filter(|o| o.members.len() == 1).count();
    let pairs = orbits.iter().filter(|o| o.members.len() == 2).count();
    if singletons != 12 || pairs != 12 {
        return Err(format!("E6:g orbit sizes: {singletons} singles, {pairs} pairs"));
    }
    let fmap = compute_f(&folded, &folded_set, &set, &orbits).map_err(|e| e.to_string())?;
    if !(fmap.injective && fmap.surjective) {
        return Err("E6:g orbit map not bijective".into());
    }
    // the path flip pair
    let (folded, group, set) = enumerate_complete("A3:g")?;
    let orbits = root_orbits(&set, &group).map_err(|e| e.to_string())?;
    let folded_set = enumerate_folded_roots(&folded, 10_000, budget().enumeration_caps())
        .map_err(|e| e.to_string())?;
    if !(folded_set.len() == 4 && orbits.len() == 4) {
        return Err(format!(
            "A3:g: folded {}, orbits {}",
            folded_set.len(),
            orbits.len()
        ));
    }
    let fmap = compute_f(&folded, &folded_set, &set, &orbits).map_err(|e| e.to_string())?;
    if !(fmap.injective && fmap.surjective) {
        return Err("A3:g orbit map not bijective".into());
    }
    Ok("E6:g: 24 = 24 (12 singles + 12 pairs); A3:g: 4 = 4; maps bijective".into())
}

// ---------------------------------------------------------------------------
// criterion 6: affine certificates
// ---------------------------------------------------------------------------

fn check_identities(
    token: &str,
    folded: &FoldedSystem,
    identities: &[catalog::TranslationIdentity],
) -> Result<usize, String> {
    for identity in identities {
        let tags = resolve_word(folded, &identity.word)?;
        let elem = folded
            .element_from_tags(&tags)
            .ok_or_else(|| format!("{token}: word failed to resolve"))?;
        let start = coeff_coords(&folded.graph, &identity.start);
        let expect = coeff_coords(&folded.graph, &identity.expect);
        if elem.apply(&start) != expect {
            return Err(format!(
                "{token}: word {:?} applied to {:?} missed its target",
                identity.word, identity.start
            ));
        }
    }
    Ok(identities.len())
}

fn affine_certificates() -> Result<String, String> {
    let mut checked = 0usize;
    // tabulated word identities per family
    for (token, family) in [
        ("tA3:g", Family::TildeA(3)),
        ("tA5:g", Family::TildeA(5)),
        ("tA7:g", Family::TildeA(7)),
        ("tD4:g", Family::TildeD(4)),
        ("tD5:g", Family::TildeD(5)),
        ("tD6:g", Family::TildeD(6)),
        ("tE6:g", Family::TildeE(6)),
    ] {
        let (graph, group) = pair_from_token(token).map_err(|e| format!("{token}: {e}"))?;
        let folded = fold(&graph, &group, 1000).map_err(|e| format!("{token}: {e}"))?;
        checked += check_identities(token, &folded, &catalog::translation_identities(family))?;
    }
    {
        let (graph, group) = pair_from_token("tD4:g1g2").map_err(|e| e.to_string())?;
        let folded = fold(&graph, &group, 1000).map_err(|e| e.to_string())?;
        checked += check_identities("tD4:g1g2", &folded, &catalog::tilde_d4_identities())?;
    }

    // the power law on witnesses stored by the decision pipeline
    let mut power_checked = 0usize;
    for token in ["tA3:g", "tD4:g", "tD4:g1g2", "tE6:g"] {
        let v = decide_token(token)?;
        let c = &v.components[0];
        let cert = c
            .certificate
            .as_ref()
            .ok_or_else(|| format!("{token}: no certificate stored"))?;
        let (graph, group) = pair_from_token(token).map_err(|e| e.to_string())?;
        let folded = fold(&graph, &group, 1000).map_err(|e| e.to_string())?;
        let delta = &cert.delta;
        // every element fixes δ
        for k in 0..folded.rank() {
            if folded.longest[k].apply(delta) != *delta {
                return Err(format!("{token}: a folded generator moves the null vector"));
            }
        }
        for (s, kind) in &cert.witnesses {
            let alpha = simple_root(&folded.graph, *s);
            match kind {
                TranslationKind::Direct { word } => {
                    let w = folded
                        .element_from_tags(word)
                        .ok_or_else(|| format!("{token}: unresolvable witness word"))?;
                    let winv_tags: Vec<GenTag> = word.iter().rev().cloned().collect();
                    let winv = folded
                        .element_from_tags(&winv_tags)
                        .ok_or_else(|| format!("{token}: unresolvable inverse word"))?;
                    for k in -3i64..=3 {
                        let (elem, reps) = if k >= 0 { (&w, k) } else { (&winv, -k) };
                        let mut x = alpha.clone();
                        for _ in 0..reps {
                            x = elem.apply(&x);
                        }
                        let mut expect = alpha.clone();
                        for (e, d) in expect.iter_mut().zip(delta.iter()) {
                            *e += &d.scale(&num::BigRational::from_integer(k.into()));
                        }
                        if x != expect {
                            return Err(format!("{token}: power law failed at k={k}"));
                        }
                        power_checked += 1;
                    }
                }
                TranslationKind::Paired {
                    from_affine,
                    to_affine,
                } => {
                    // the composite translates by 2δ
                    let w1 = folded
                        .element_from_tags(from_affine)
                        .ok_or_else(|| format!("{token}: unresolvable paired word"))?;
                    let w2 = folded
                        .element_from_tags(to_affine)
                        .ok_or_else(|| format!("{token}: unresolvable paired word"))?;
                    let composite = w1.compose(&w2);
                    let mut x = alpha.clone();
                    for k in 1..=3i64 {
                        x = composite.apply(&x);
                        let mut expect = alpha.clone();
                        for (e, d) in expect.iter_mut().zip(delta.iter()) {
                            *e += &d.scale(&num::BigRational::from_integer((2 * k).into()));
                        }
                        if x != expect {
                            return Err(format!("{token}: paired power law failed at k={k}"));
                        }
                        power_checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checked} tabulated word identities verified; power law checked {power_checked} times"
    ))
}

// ---------------------------------------------------------------------------
// criterion 7: invariant suites
// ---------------------------------------------------------------------------

fn invariant_suites() -> Result<String, String> {
    let positive_pairs = [
        "A3:g", "A5:g", "D4:g", "D4:g1", "D4:g1g2", "D5:g", "E6:g", "tA3:g", "tD4:g",
        "tD4:g1g2", "tE6:g",
    ];
    // (a) orbit orthogonality: no moved root pairs nontrivially with its image
    for token in positive_pairs {
        let (folded, group, set) = enumerate_pair(token)?;
        if let Some(w) = witness_search(&folded.form, &set, &group, &[])
            .map_err(|e| format!("{token}: {e}"))?
        {
            return Err(format!(
                "{token}: orthogonality violated with pairing {}",
                w.pairing
            ));
        }
    }
    // (b) fixedness propagation: g(α)=α and ⟨α,β⟩ ∉ {0,±1} force g(β)=β
    for token in ["A3:g", "A5:g", "D4:g1g2", "E6:g", "tD4:g"] {
        let (folded, group, set) = enumerate_pair(token)?;
        let one = Scalar::one();
        let minus_one = Scalar::from_integer(-1);
        for g in group.elements() {
            if g.is_identity() {
                continue;
            }
            for i in 0..set.len() {
                let alpha = &set.roots[i].coords;
                if permute_coords(g, alpha) != *alpha {
                    continue;
                }
                for j in 0..set.len() {
                    let beta = &set.roots[j].coords;
                    let p = folded
                        .form
                        .bilinear(alpha, beta)
                        .map_err(|e| format!("{token}: {e}"))?;
                    if !p.is_zero() && p != one && p != minus_one
                        && permute_coords(g, beta) != *beta
                    {
                        return Err(format!("{token}: fixedness propagation violated"));
                    }
                }
            }
        }
    }
    // (c) −α_s lies in the fixed-subgroup orbit of α_s on the listed pairs
    for token in ["A3:g", "D4:g1g2", "E6:g", "tA3:g", "tD4:g", "tE6:g"] {
        let (folded, _group, _set) = enumerate_pair(token)?;
        let gens: Vec<_> = (0..folded.rank())
            .map(|k| folded.longest[k].matrix.clone())
            .collect();
        for i in 0..folded.graph.n() {
            let v = folded.graph.vertex_at(i);
            let alpha = simple_root(&folded.graph, v);
            let minus: Vec<Scalar> = alpha.iter().map(|c| -c.clone()).collect();
            let orbit = signed_orbit_bfs(&gens, &[alpha], 16, 1 << 20)
                .map_err(|e| format!("{token}: {e}"))?;
            if !orbit.nodes.contains_key(&minus) {
                return Err(format!("{token}: -α_{v} not reached from α_{v}"));
            }
        }
    }
    // (d) at least two pairing classes when the property holds (complete systems)
    for token in ["A3:g", "A5:g", "D4:g", "D4:g1g2", "D5:g", "E6:g"] {
        let (folded, _, set) = enumerate_complete(token)?;
        let eq = verify::equiv_classes(&folded.form, &set).map_err(|e| e.to_string())?;
        if !eq.definitive || eq.classes.len() < 2 {
            return Err(format!("{token}: {} classes", eq.classes.len()));
        }
    }
    // (e) a single class once a label ≥ 4 appears (complete systems)
    for token in ["B2", "G2"] {
        let (folded, _, set) = enumerate_complete(token)?;
        let eq = verify::equiv_classes(&folded.form, &set).map_err(|e| e.to_string())?;
        if eq.classes.len() != 1 {
            return Err(format!("{token}: {} classes, expected 1", eq.classes.len()));
        }
    }
    // (f) the reflection correspondence: witness-independent and injective
    let mut reflections_checked = 0usize;
    let spherical: Vec<Family> = vec![
        Family::A(1),
        Family::A(2),
        Family::A(3),
        Family::A(4),
        Family::A(5),
        Family::A(6),
        Family::B(2),
        Family::B(3),
        Family::B(4),
        Family::D(4),
        Family::D(5),
        Family::D(6),
        Family::E(6),
        Family::E(7),
        Family::E(8),
        Family::F4,
        Family::G2,
        Family::H(3),
        Family::H(4),
        Family::I2(5),
    ];
    for family in spherical {
        let graph = Arc::new(
            catalog::build(family, None).map_err(|e| format!("{family}: {e}"))?,
        );
        let form = FormMatrix::new(Arc::clone(&graph)).map_err(|e| e.to_string())?;
        let set = enumerate_positive_roots(&form, 10_000, budget().enumeration_caps())
            .map_err(|e| format!("{family}: {e}"))?;
        if !set.complete {
            return Err(format!("{family}: enumeration incomplete"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for idx in 0..set.len() {
            let direct = crate::roots::reflection_along(&form, &set.roots[idx].coords)
                .map_err(|e| format!("{family}: {e}"))?;
            for witness in &set.witnesses[idx] {
                let conj = set.reflection_from_witness(witness);
                if conj.matrix != direct {
                    return Err(format!("{family}: witness-dependent reflection at {idx}"));
                }
                reflections_checked += 1;
            }
            // injectivity: reflections of distinct roots are distinct
            let mut key: Vec<Scalar> = Vec::with_capacity(graph.n() * graph.n());
            for r in 0..graph.n() {
                for c in 0..graph.n() {
                    key.push(direct.at(r, c).clone());
                }
            }
            if !seen.insert(key) {
                return Err(format!("{family}: reflection map not injective"));
            }
        }
    }
    Ok(format!(
        "orthogonality, propagation, negation, class counts hold; {reflections_checked} reflection witnesses agree"
    ))
}

// ---------------------------------------------------------------------------
// criterion 8: reduction consistency
// ---------------------------------------------------------------------------

/// Disjoint union of two catalog pairs, the second shifted to fresh
/// vertex labels; the symmetry group is generated blockwise.
fn disjoint_union(
    a_token: &str,
    b_token: &str,
) -> Result<(Arc<CoxeterGraph>, SymmetryGroup), String> {
    let (ga, grp_a) = pair_from_token(a_token).map_err(|e| format!("{a_token}: {e}"))?;
    let (gb, grp_b) = pair_from_token(b_token).map_err(|e| format!("{b_token}: {e}"))?;
    let offset = ga.vertices().iter().map(|v| v.0).max().unwrap_or(0) + 100;
    let mut vertices: Vec<VertexId> = ga.vertices().to_vec();
    vertices.extend(gb.vertices().iter().map(|v| VertexId(v.0 + offset)));
    let mut edges: Vec<(VertexId, VertexId, Label)> = ga.edges().collect();
    edges.extend(
        gb.edges()
            .map(|(a, b, l)| (VertexId(a.0 + offset), VertexId(b.0 + offset), l)),
    );
    let graph = Arc::new(CoxeterGraph::new(vertices, edges).map_err(|e| e.to_string())?);
    let mut gens = Vec::new();
    for g in grp_a.generators() {
        let mut m: BTreeMap<VertexId, VertexId> =
            ga.vertices().iter().map(|&v| (v, g.image(&ga, v))).collect();
        for &v in gb.vertices() {
            m.insert(VertexId(v.0 + offset), VertexId(v.0 + offset));
        }
        gens.push(Symmetry::validate(&graph, &m).map_err(|e| e.to_string())?);
    }
    for g in grp_b.generators() {
        let mut m: BTreeMap<VertexId, VertexId> = ga
            .vertices()
            .iter()
            .map(|&v| (v, v))
            .collect();
        for &v in gb.vertices() {
            m.insert(VertexId(v.0 + offset), VertexId(g.image(&gb, v).0 + offset));
        }
        gens.push(Symmetry::validate(&graph, &m).map_err(|e| e.to_string())?);
    }
    let group = if gens.is_empty() {
        SymmetryGroup::trivial(Arc::clone(&graph))
    } else {
        SymmetryGroup::generate(Arc::clone(&graph), gens, DEFAULT_CLOSURE_CAP)
            .map_err(|e| e.to_string())?
    };
    Ok((graph, group))
}

fn conjoin(statuses: &[VerdictStatus]) -> VerdictStatus {
    let mut out = VerdictStatus::Holds;
    let mut min_depth: Option<u32> = None;
    let mut certified = false;
    for s in statuses {
        match s {
            VerdictStatus::Fails => return VerdictStatus::Fails,
            VerdictStatus::VerifiedToDepth(d) => {
                min_depth = Some(min_depth.map_or(*d, |m| m.min(*d)))
            }
            VerdictStatus::CertifiedAffine => certified = true,
            VerdictStatus::Holds => {}
        }
    }
    if let Some(d) = min_depth {
        out = VerdictStatus::VerifiedToDepth(d);
    } else if certified {
        out = VerdictStatus::CertifiedAffine;
    }
    out
}

fn reduction_consistency() -> Result<String, String> {
    // unions decide as the conjunction of their pieces
    let unions = [
        ("A3:g", "A3"),
        ("A3:g", "B2:g"),
        ("tD4:rot4", "A1"),
        ("D4:g1g2", "E6:g"),
        ("tA3:g", "A3:g"),
    ];
    for (a, b) in unions {
        let (graph, group) = disjoint_union(a, b)?;
        let union_verdict =
            decide(&graph, &group, &budget()).map_err(|e| format!("{a}+{b}: {e}"))?;
        let expected = conjoin(&[decide_token(a)?.status, decide_token(b)?.status]);
        if union_verdict.status != expected {
            return Err(format!(
                "{a} ⊔ {b}: union {:?} vs conjunction {:?}",
                union_verdict.status, expected
            ));
        }
        if union_verdict.components.len() != 2 {
            return Err(format!("{a} ⊔ {b}: expected two components"));
        }
    }
    // two swapped copies: component groups become trivial and the union holds
    {
        let (graph, _) = disjoint_union("A3", "A3")?;
        let ids: Vec<i64> = graph.vertices().iter().map(|v| v.0).collect();
        let half = ids.len() / 2;
        let mut m = BTreeMap::new();
        for i in 0..half {
            m.insert(VertexId(ids[i]), VertexId(ids[i + half]));
            m.insert(VertexId(ids[i + half]), VertexId(ids[i]));
        }
        let swap = Symmetry::validate(&graph, &m).map_err(|e| e.to_string())?;
        let group = SymmetryGroup::generate(Arc::clone(&graph), vec![swap], 100)
            .map_err(|e| e.to_string())?;
        let v = decide(&graph, &group, &budget()).map_err(|e| e.to_string())?;
        if v.status != VerdictStatus::Holds {
            return Err(format!("swapped copies: {:?}", v.status));
        }
        if !v.components.iter().all(|c| c.status == VerdictStatus::Holds) {
            return Err("swapped copies: components disagree".into());
        }
    }
    // synthetic mixed-orbit inputs: restriction agrees with the direct verdict
    for token in ["A3:g", "D4:g1g2"] {
        let (base, base_group) = pair_from_token(token).map_err(|e| e.to_string())?;
        // attach a marked pendant to a vertex fixed by the whole group
        let anchor = *base
            .vertices()
            .iter()
            .find(|&&v| base_group.elements().iter().all(|g| g.image(&base, v) == v))
            .ok_or_else(|| format!("{token}: no fixed vertex to anchor the pendant"))?;
        let pendant = VertexId(999);
        let mut vertices = base.vertices().to_vec();
        vertices.push(pendant);
        let mut edges: Vec<(VertexId, VertexId, Label)> = base.edges().collect();
        edges.push((anchor, pendant, Label::Finite(3)));
        let mut marked = CoxeterGraph::new(vertices, edges).map_err(|e| e.to_string())?;
        marked.mark_infinite([pendant]);
        let marked = Arc::new(marked);
        let gens: Vec<Symmetry> = base_group
            .generators()
            .iter()
            .map(|g| {
                let mut m: BTreeMap<VertexId, VertexId> = base
                    .vertices()
                    .iter()
                    .map(|&v| (v, g.image(&base, v)))
                    .collect();
                m.insert(pendant, pendant);
                Symmetry::validate(&marked, &m).map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        // the anchor must stay fixed for the pendant edge to be preserved
        let group = SymmetryGroup::generate(Arc::clone(&marked), gens, 100)
            .map_err(|e| format!("{token}: {e}"))?;
        let with_marker = decide(&marked, &group, &budget()).map_err(|e| e.to_string())?;
        let direct = decide_token(token)?;
        if with_marker.status != direct.status {
            return Err(format!(
                "{token}: marked verdict {:?} vs direct {:?}",
                with_marker.status, direct.status
            ));
        }
        if with_marker.dropped_vertices != vec![pendant] {
            return Err(format!("{token}: wrong dropped set"));
        }
    }
    Ok("unions match conjunctions; marked-orbit restriction matches direct verdicts".into())
}

// ---------------------------------------------------------------------------
// criterion 9: classifier cross-validation
// ---------------------------------------------------------------------------

fn classifier_cross_validation() -> Result<String, String> {
    let matrix: Vec<(&str, bool)> = vec![
        ("A3:g", true),
        ("A5:g", true),
        ("A7:g", true),
        ("D4:g", true),
        ("D5:g", true),
        ("D6:g", true),
        ("D7:g", true),
        ("D4:g1", true),
        ("D4:g1g2", true),
        ("E6:g", true),
        ("tA3:g", true),
        ("tA5:g", true),
        ("tA7:g", true),
        ("tD4:g", true),
        ("tD5:g", true),
        ("tD6:g", true),
        ("tD4:g1", true),
        ("tD4:g1g2", true),
        ("tE6:g", true),
        ("iAi[2]:g", true),
        ("Dinf[6]:g", true),
        ("tD4:swap01", false),
        ("tD4:rot4", false),
        ("tD6:rev", false),
        ("tE6:rot3", false),
        ("tE7:g", false),
        ("tA2:g", false),
        ("tA4:g", false),
        ("A4:g", false),
        ("B2:g", false),
        ("G2:g", false),
        ("F4:g", false),
        ("tC3:g", false),
    ];
    for (token, expected_match) in &matrix {
        let (graph, group) = pair_from_token(token).map_err(|e| format!("{token}: {e}"))?;
        let classification =
            catalog::classify_pair(&graph, &group).map_err(|e| format!("{token}: {e}"))?;
        let matched = classification.matched.is_some();
        if matched != *expected_match {
            return Err(format!(
                "{token}: classifier match {matched}, expected {expected_match} ({:?})",
                classification.reason
            ));
        }
        let verdict = decide(&graph, &group, &budget()).map_err(|e| format!("{token}: {e}"))?;
        let positive = verify::counts_as_positive(&verdict);
        if matched != positive {
            return Err(format!(
                "{token}: classifier {matched} but verdict {:?}",
                verdict.status
            ));
        }
    }
    Ok(format!(
        "{} pairs cross-validated: pattern match ⇔ positive verdict",
        matrix.len()
    ))
}
