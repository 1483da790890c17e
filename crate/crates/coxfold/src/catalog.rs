//! The catalog: spherical/affine/locally-spherical families in Bourbaki
//! numbering (affine vertex labelled 0), graph recognition, and pattern
//! classification of graph/symmetry pairs against the known list of pairs
//! with the equivariant basis property.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::graph::{
    CoxeterGraph, InfiniteFamily, Label, Symmetry, SymmetryGroup, VertexId,
    DEFAULT_CLOSURE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    A(u32),
    B(u32),
    D(u32),
    E(u32),
    F4,
    G2,
    H(u32),
    I2(u32),
    TildeA(u32),
    TildeB(u32),
    TildeC(u32),
    TildeD(u32),
    TildeE(u32),
    TildeF4,
    TildeG2,
    AInfinity,
    BiInfiniteA,
    DInfinity,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(m) => write!(f, "A{}", m),
            Family::B(m) => write!(f, "B{}", m),
            Family::D(m) => write!(f, "D{}", m),
            Family::E(m) => write!(f, "E{}", m),
            Family::F4 => write!(f, "F4"),
            Family::G2 => write!(f, "G2"),
            Family::H(m) => write!(f, "H{}", m),
            Family::I2(p) => write!(f, "I2({})", p),
            Family::TildeA(m) => write!(f, "tA{}", m),
            Family::TildeB(m) => write!(f, "tB{}", m),
            Family::TildeC(m) => write!(f, "tC{}", m),
            Family::TildeD(m) => write!(f, "tD{}", m),
            Family::TildeE(m) => write!(f, "tE{}", m),
            Family::TildeF4 => write!(f, "tF4"),
            Family::TildeG2 => write!(f, "tG2"),
            Family::AInfinity => write!(f, "Ainf"),
            Family::BiInfiniteA => write!(f, "iAi"),
            Family::DInfinity => write!(f, "Dinf"),
        }
    }
}

impl Family {
    /// Finite Coxeter group?
    pub fn is_spherical(&self) -> bool {
        matches!(
            self,
            Family::A(_)
                | Family::B(_)
                | Family::D(_)
                | Family::E(_)
                | Family::F4
                | Family::G2
                | Family::H(_)
                | Family::I2(_)
        )
    }

    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            Family::TildeA(_)
                | Family::TildeB(_)
                | Family::TildeC(_)
                | Family::TildeD(_)
                | Family::TildeE(_)
                | Family::TildeF4
                | Family::TildeG2
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog token '{0}'")]
    UnknownToken(String),
    #[error("parameter out of range for {0}")]
    OutOfRange(String),
    #[error("recognition requires a connected graph")]
    Disconnected,
    #[error("family {0} has no tabulated highest root")]
    NoHighestRoot(Family),
}

fn v(i: i64) -> VertexId {
    VertexId(i)
}

fn chain_edges(range: std::ops::RangeInclusive<i64>) -> Vec<(VertexId, VertexId, Label)> {
    let (lo, hi) = (*range.start(), *range.end());
    (lo..hi)
        .map(|i| (v(i), v(i + 1), Label::Finite(3)))
        .collect()
}

/// Build the catalog representative of a family in Bourbaki numbering.
pub fn build(family: Family, truncation: Option<u32>) -> Result<CoxeterGraph, CatalogError> {
    let graph = match family {
        Family::A(m) if m >= 1 => {
            CoxeterGraph::new((1..=m as i64).map(v).collect(), chain_edges(1..=m as i64))
        }
        Family::B(m) if m >= 2 => {
            let m = m as i64;
            let mut edges = chain_edges(1..=m - 1);
            edges.push((v(m - 1), v(m), Label::Finite(4)));
            CoxeterGraph::new((1..=m).map(v).collect(), edges)
        }
        Family::D(m) if m >= 4 => {
            let m = m as i64;
            let mut edges = chain_edges(1..=m - 2);
            edges.push((v(m - 2), v(m - 1), Label::Finite(3)));
            edges.push((v(m - 2), v(m), Label::Finite(3)));
            CoxeterGraph::new((1..=m).map(v).collect(), edges)
        }
        Family::E(m) if (6..=8).contains(&m) => {
            let m = m as i64;
            let mut edges = vec![(v(1), v(3), Label::Finite(3)), (v(2), v(4), Label::Finite(3))];
            edges.extend(chain_edges(3..=m));
            CoxeterGraph::new((1..=m).map(v).collect(), edges)
        }
        Family::F4 => CoxeterGraph::new(
            (1..=4).map(v).collect(),
            vec![
                (v(1), v(2), Label::Finite(3)),
                (v(2), v(3), Label::Finite(4)),
                (v(3), v(4), Label::Finite(3)),
            ],
        ),
        Family::G2 => CoxeterGraph::new(
            (1..=2).map(v).collect(),
            vec![(v(1), v(2), Label::Finite(6))],
        ),
        Family::H(m) if m == 3 || m == 4 => {
            let m = m as i64;
            let mut edges = vec![(v(1), v(2), Label::Finite(5))];
            edges.extend(chain_edges(2..=m));
            CoxeterGraph::new((1..=m).map(v).collect(), edges)
        }
        Family::I2(p) if p >= 5 => CoxeterGraph::new(
            (1..=2).map(v).collect(),
            vec![(v(1), v(2), Label::Finite(p))],
        ),
        Family::TildeA(1) => CoxeterGraph::new(
            vec![v(0), v(1)],
            vec![(v(0), v(1), Label::Infinite)],
        ),
        Family::TildeA(m) if m >= 2 => {
            let m = m as i64;
            let mut edges = chain_edges(0..=m);
            edges.push((v(0), v(m), Label::Finite(3)));
            CoxeterGraph::new((0..=m).map(v).collect(), edges)
        }
        Family::TildeB(2) | Family::TildeC(2) => CoxeterGraph::new(
            (0..=2).map(v).collect(),
            vec![
                (v(0), v(1), Label::Finite(4)),
                (v(1), v(2), Label::Finite(4)),
            ],
        ),
        Family::TildeB(m) if m >= 3 => {
            let m = m as i64;
            let mut edges = vec![(v(0), v(2), Label::Finite(3)), (v(1), v(2), Label::Finite(3))];
            edges.extend(chain_edges(2..=m - 1));
            edges.push((v(m - 1), v(m), Label::Finite(4)));
            CoxeterGraph::new((0..=m).map(v).collect(), edges)
        }
        Family::TildeC(m) if m >= 3 => {
            let m = m as i64;
            let mut edges = vec![(v(0), v(1), Label::Finite(4))];
            edges.extend(chain_edges(1..=m - 1));
            edges.push((v(m - 1), v(m), Label::Finite(4)));
            CoxeterGraph::new((0..=m).map(v).collect(), edges)
        }
        Family::TildeD(m) if m >= 4 => {
            let m = m as i64;
            let mut edges = vec![(v(0), v(2), Label::Finite(3)), (v(1), v(2), Label::Finite(3))];
            edges.extend(chain_edges(2..=m - 2));
            edges.push((v(m - 2), v(m - 1), Label::Finite(3)));
            edges.push((v(m - 2), v(m), Label::Finite(3)));
            CoxeterGraph::new((0..=m).map(v).collect(), edges)
        }
        Family::TildeE(6) => {
            let mut edges = vec![
                (v(1), v(3), Label::Finite(3)),
                (v(2), v(4), Label::Finite(3)),
                (v(0), v(2), Label::Finite(3)),
            ];
            edges.extend(chain_edges(3..=6));
            CoxeterGraph::new((0..=6).map(v).collect(), edges)
        }
        Family::TildeE(7) => {
            let mut edges = vec![
                (v(1), v(3), Label::Finite(3)),
                (v(2), v(4), Label::Finite(3)),
                (v(0), v(1), Label::Finite(3)),
            ];
            edges.extend(chain_edges(3..=7));
            CoxeterGraph::new((0..=7).map(v).collect(), edges)
        }
        Family::TildeE(8) => {
            let mut edges = vec![
                (v(1), v(3), Label::Finite(3)),
                (v(2), v(4), Label::Finite(3)),
                (v(0), v(8), Label::Finite(3)),
            ];
            edges.extend(chain_edges(3..=8));
            CoxeterGraph::new((0..=8).map(v).collect(), edges)
        }
        Family::TildeF4 => CoxeterGraph::new(
            (0..=4).map(v).collect(),
            vec![
                (v(0), v(1), Label::Finite(3)),
                (v(1), v(2), Label::Finite(3)),
                (v(2), v(3), Label::Finite(4)),
                (v(3), v(4), Label::Finite(3)),
            ],
        ),
        Family::TildeG2 => CoxeterGraph::new(
            (0..=2).map(v).collect(),
            vec![
                (v(0), v(1), Label::Finite(3)),
                (v(1), v(2), Label::Finite(6)),
            ],
        ),
        Family::BiInfiniteA => {
            let n = truncation.unwrap_or(3) as i64;
            if n < 1 {
                return Err(CatalogError::OutOfRange("iAi".into()));
            }
            return Ok(CoxeterGraph::new(
                (-n..=n).map(v).collect(),
                chain_edges(-n..=n),
            )
            .expect("valid truncation")
            .with_name(format!("iAi[{}]", n))
            .with_truncation_of(InfiniteFamily::BiInfiniteA));
        }
        Family::DInfinity => {
            let n = truncation.unwrap_or(8) as i64;
            if n < 4 {
                return Err(CatalogError::OutOfRange("Dinf".into()));
            }
            let mut edges = vec![(v(1), v(3), Label::Finite(3)), (v(2), v(3), Label::Finite(3))];
            edges.extend(chain_edges(3..=n));
            return Ok(CoxeterGraph::new((1..=n).map(v).collect(), edges)
                .expect("valid truncation")
                .with_name(format!("Dinf[{}]", n))
                .with_truncation_of(InfiniteFamily::DInfinity));
        }
        Family::AInfinity => {
            let n = truncation.unwrap_or(8) as i64;
            if n < 1 {
                return Err(CatalogError::OutOfRange("Ainf".into()));
            }
            return Ok(CoxeterGraph::new((1..=n).map(v).collect(), chain_edges(1..=n))
                .expect("valid truncation")
                .with_name(format!("Ainf[{}]", n))
                .with_truncation_of(InfiniteFamily::AInfinity));
        }
        other => return Err(CatalogError::OutOfRange(other.to_string())),
    };
    Ok(graph
        .map_err(|_| CatalogError::OutOfRange(family.to_string()))?
        .with_name(family.to_string()))
}

/// All label-preserving positional isomorphisms a → b (backtracking with
/// degree and label pruning; catalog shapes are tiny).
pub fn isomorphisms(a: &CoxeterGraph, b: &CoxeterGraph) -> Vec<Vec<usize>> {
    let n = a.n();
    if n != b.n() {
        return Vec::new();
    }
    let mut a_deg: Vec<usize> = (0..n).map(|i| a.degree(a.vertex_at(i))).collect();
    let mut b_deg: Vec<usize> = (0..n).map(|i| b.degree(b.vertex_at(i))).collect();
    {
        let mut x = a_deg.clone();
        let mut y = b_deg.clone();
        x.sort();
        y.sort();
        if x != y {
            return Vec::new();
        }
    }
    // order assignment by connectivity for pruning
    let order: Vec<usize> = {
        let mut order = Vec::new();
        let mut seen = vec![false; n];
        while order.len() < n {
            let next = (0..n)
                .filter(|&i| !seen[i])
                .max_by_key(|&i| {
                    let attached = order
                        .iter()
                        .filter(|&&j| {
                            a.label(a.vertex_at(i), a.vertex_at(j)) != Label::Finite(2)
                        })
                        .count();
                    (attached, a_deg[i])
                })
                .unwrap();
            seen[next] = true;
            order.push(next);
        }
        order
    };
    let mut out = Vec::new();
    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn recurse(
        a: &CoxeterGraph,
        b: &CoxeterGraph,
        order: &[usize],
        k: usize,
        a_deg: &mut [usize],
        b_deg: &mut [usize],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(assignment.clone());
            return;
        }
        let i = order[k];
        for cand in 0..b.n() {
            if used[cand] || a_deg[i] != b_deg[cand] {
                continue;
            }
            let ok = order[..k].iter().all(|&j| {
                a.label(a.vertex_at(i), a.vertex_at(j))
                    == b.label(b.vertex_at(cand), b.vertex_at(assignment[j]))
            });
            if !ok {
                continue;
            }
            assignment[i] = cand;
            used[cand] = true;
            recurse(a, b, order, k + 1, a_deg, b_deg, assignment, used, out);
            used[cand] = false;
            assignment[i] = usize::MAX;
        }
    }
    recurse(
        a,
        b,
        &order,
        0,
        &mut a_deg,
        &mut b_deg,
        &mut assignment,
        &mut used,
        &mut out,
    );
    out
}

/// Recognition result: the family plus a relabeling catalog → input.
#[derive(Debug, Clone)]
pub struct GraphType {
    pub family: Option<Family>,
    pub relabeling: BTreeMap<VertexId, VertexId>,
}

/// Recognize a finite connected graph against the catalog by degree,
/// label, and branch-length analysis (circuits first, then paths, then
/// trees with branch vertices).
pub fn recognize(graph: &CoxeterGraph) -> Result<GraphType, CatalogError> {
    if graph.n() == 0 {
        return Ok(GraphType {
            family: None,
            relabeling: BTreeMap::new(),
        });
    }
    if !graph.is_connected() {
        return Err(CatalogError::Disconnected);
    }
    if let Some(marker) = graph.truncation_of {
        // relabel to the truncation representative of the same size
        let sized = match marker {
            InfiniteFamily::AInfinity => Some((Family::AInfinity, graph.n() as u32)),
            InfiniteFamily::BiInfiniteA if graph.n() % 2 == 1 => {
                Some((Family::BiInfiniteA, (graph.n() as u32 - 1) / 2))
            }
            InfiniteFamily::BiInfiniteA => None,
            InfiniteFamily::DInfinity => Some((Family::DInfinity, graph.n() as u32)),
        };
        if let Some((family, trunc)) = sized {
            if let Some(gt) = relabel_against(graph, family, Some(trunc)) {
                return Ok(gt);
            }
        }
    }
    let family = match shape_family(graph) {
        Some(f) => f,
        None => {
            return Ok(GraphType {
                family: None,
                relabeling: BTreeMap::new(),
            })
        }
    };
    match relabel_against(graph, family, None) {
        Some(gt) => Ok(gt),
        None => Ok(GraphType {
            family: None,
            relabeling: BTreeMap::new(),
        }),
    }
}

fn relabel_against(
    graph: &CoxeterGraph,
    family: Family,
    truncation: Option<u32>,
) -> Option<GraphType> {
    let rep = build(family, truncation).ok()?;
    let isos = isomorphisms(graph, &rep);
    let phi = isos.first()?;
    let mut relabeling = BTreeMap::new();
    for (i, &j) in phi.iter().enumerate() {
        relabeling.insert(rep.vertex_at(j), graph.vertex_at(i));
    }
    Some(GraphType {
        family: Some(family),
        relabeling,
    })
}

/// The shape decision tree over a connected graph.
fn shape_family(graph: &CoxeterGraph) -> Option<Family> {
    let n = graph.n();
    let edges: Vec<(VertexId, VertexId, Label)> = graph.edges().collect();
    if edges.len() >= n {
        // exactly one circuit can match: the unlabeled cycle
        let all_deg2 = graph.vertices().iter().all(|&u| graph.degree(u) == 2);
        let all_label3 = edges.iter().all(|e| e.2 == Label::Finite(3));
        if edges.len() == n && all_deg2 && all_label3 && n >= 3 {
            return Some(Family::TildeA(n as u32 - 1));
        }
        return None;
    }
    if n == 1 {
        return Some(Family::A(1));
    }
    if edges.iter().any(|e| e.2 == Label::Infinite) {
        if n == 2 {
            return Some(Family::TildeA(1));
        }
        return None;
    }
    let branch: Vec<VertexId> = graph
        .vertices()
        .iter()
        .copied()
        .filter(|&u| graph.degree(u) >= 3)
        .collect();
    match branch.len() {
        0 => path_family(graph),
        1 => branched_family(graph, branch[0]),
        2 => double_fork_family(graph, branch[0], branch[1]),
        _ => None,
    }
}

fn path_labels(graph: &CoxeterGraph) -> Option<Vec<u32>> {
    let n = graph.n();
    let mut ends: Vec<VertexId> = graph
        .vertices()
        .iter()
        .copied()
        .filter(|&u| graph.degree(u) == 1)
        .collect();
    ends.sort();
    if ends.len() != 2 {
        return None;
    }
    let mut labels = Vec::with_capacity(n - 1);
    let mut prev = None;
    let mut cur = ends[0];
    for _ in 0..n - 1 {
        let next = graph
            .neighbors(cur)
            .into_iter()
            .find(|&u| Some(u) != prev)?;
        match graph.label(cur, next) {
            Label::Finite(m) => labels.push(m),
            Label::Infinite => return None,
        }
        prev = Some(cur);
        cur = next;
    }
    Some(labels)
}

fn path_family(graph: &CoxeterGraph) -> Option<Family> {
    let n = graph.n();
    let labels = path_labels(graph)?;
    for seq in [labels.clone(), labels.iter().rev().copied().collect()] {
        if seq.iter().all(|&m| m == 3) {
            return Some(Family::A(n as u32));
        }
        if n == 2 {
            return match seq[0] {
                4 => Some(Family::B(2)),
                6 => Some(Family::G2),
                p if p >= 5 => Some(Family::I2(p)),
                _ => None,
            };
        }
        let body_3 = seq[..seq.len() - 1].iter().all(|&m| m == 3);
        if body_3 && seq[seq.len() - 1] == 4 {
            return Some(Family::B(n as u32));
        }
        if seq[0] == 4
            && seq[seq.len() - 1] == 4
            && seq[1..seq.len() - 1].iter().all(|&m| m == 3)
        {
            return Some(if n == 3 {
                Family::TildeB(2)
            } else {
                Family::TildeC(n as u32 - 1)
            });
        }
        let tail_3 = seq[1..].iter().all(|&m| m == 3);
        if seq[0] == 5 && tail_3 {
            return match n {
                3 => Some(Family::H(3)),
                4 => Some(Family::H(4)),
                _ => None,
            };
        }
        if seq[0] == 6 && tail_3 && n == 3 {
            return Some(Family::TildeG2);
        }
        if n == 4 && seq == [3, 4, 3] {
            return Some(Family::F4);
        }
        if n == 5 && seq == [3, 3, 4, 3] {
            return Some(Family::TildeF4);
        }
    }
    None
}

/// Branch decomposition from a branch vertex: (length, labels outward).
fn branches_from(graph: &CoxeterGraph, center: VertexId) -> Option<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for start in graph.neighbors(center) {
        let mut labels = Vec::new();
        let mut prev = center;
        let mut cur = start;
        loop {
            match graph.label(prev, cur) {
                Label::Finite(m) => labels.push(m),
                Label::Infinite => return None,
            }
            let next: Vec<VertexId> = graph
                .neighbors(cur)
                .into_iter()
                .filter(|&u| u != prev)
                .collect();
            match next.len() {
                0 => break,
                1 => {
                    prev = cur;
                    cur = next[0];
                }
                _ => return None, // second branch vertex inside a branch
            }
        }
        out.push(labels);
    }
    out.sort_by_key(|b| (b.len(), b.clone()));
    Some(out)
}

fn branched_family(graph: &CoxeterGraph, center: VertexId) -> Option<Family> {
    let mut branches = branches_from(graph, center)?;
    if graph.degree(center) == 4 {
        if branches.iter().all(|b| b == &vec![3]) {
            return Some(Family::TildeD(4));
        }
        return None;
    }
    if graph.degree(center) != 3 {
        return None;
    }
    // one 4-label at the far end of the long branch, two bare leaves
    let labeled: Vec<usize> = branches
        .iter()
        .enumerate()
        .filter(|(_, b)| b.iter().any(|&m| m != 3))
        .map(|(i, _)| i)
        .collect();
    if labeled.len() == 1 {
        let li = labeled[0];
        let long = branches.remove(li);
        let others_ok = branches.iter().all(|b| b == &vec![3]) && branches.len() == 2;
        let shape_ok = long[..long.len() - 1].iter().all(|&m| m == 3)
            && long[long.len() - 1] == 4;
        if others_ok && shape_ok {
            return Some(Family::TildeB(long.len() as u32 + 2));
        }
        return None;
    }
    if !labeled.is_empty() {
        return None;
    }
    let lens: Vec<usize> = branches.iter().map(|b| b.len()).collect();
    match (lens[0], lens[1], lens[2]) {
        (1, 1, l) => Some(Family::D(l as u32 + 3)),
        (1, 2, 2) => Some(Family::E(6)),
        (1, 2, 3) => Some(Family::E(7)),
        (1, 2, 4) => Some(Family::E(8)),
        (2, 2, 2) => Some(Family::TildeE(6)),
        (1, 3, 3) => Some(Family::TildeE(7)),
        (1, 2, 5) => Some(Family::TildeE(8)),
        _ => None,
    }
}

fn double_fork_family(
    graph: &CoxeterGraph,
    u: VertexId,
    w: VertexId,
) -> Option<Family> {
    if graph.degree(u) != 3 || graph.degree(w) != 3 {
        return None;
    }
    if graph.edges().any(|e| e.2 != Label::Finite(3)) {
        return None;
    }
    // each branch vertex carries exactly two leaves, the rest is the chain
    for center in [u, w] {
        let leaves = graph
            .neighbors(center)
            .into_iter()
            .filter(|&x| graph.degree(x) == 1)
            .count();
        if leaves != 2 {
            return None;
        }
    }
    Some(Family::TildeD(graph.n() as u32 - 1))
}

// ---------------------------------------------------------------------------
// catalog tokens and named symmetries
// ---------------------------------------------------------------------------

/// A catalog pair: graph plus named symmetries (partial vertex maps, fixed
/// points implicit) and the generator names selected by the token suffix.
#[derive(Debug, Clone)]
pub struct CatalogPair {
    pub graph: CoxeterGraph,
    pub symmetries: BTreeMap<String, BTreeMap<VertexId, VertexId>>,
    pub selected: Option<Vec<String>>,
}

fn family_from_base(base: &str) -> Option<(Family, Option<u32>)> {
    if let Some(rest) = base.strip_prefix("iAi") {
        let n = parse_bracket(rest)?;
        return Some((Family::BiInfiniteA, n));
    }
    if let Some(rest) = base.strip_prefix("Dinf") {
        let n = parse_bracket(rest)?;
        return Some((Family::DInfinity, n));
    }
    if let Some(rest) = base.strip_prefix("Ainf") {
        let n = parse_bracket(rest)?;
        return Some((Family::AInfinity, n));
    }
    let (prefix, digits) = base.split_at(base.find(|c: char| c.is_ascii_digit())?);
    let m: u32 = digits.parse().ok()?;
    let family = match prefix {
        "A" => Family::A(m),
        "B" => Family::B(m),
        "D" => Family::D(m),
        "E" => Family::E(m),
        "F" if m == 4 => Family::F4,
        "G" if m == 2 => Family::G2,
        "H" => Family::H(m),
        "tA" => Family::TildeA(m),
        "tB" => Family::TildeB(m),
        "tC" => Family::TildeC(m),
        "tD" => Family::TildeD(m),
        "tE" => Family::TildeE(m),
        "tF" if m == 4 => Family::TildeF4,
        "tG" if m == 2 => Family::TildeG2,
        _ => return None,
    };
    Some((family, None))
}

fn parse_bracket(rest: &str) -> Option<Option<u32>> {
    if rest.is_empty() {
        return Some(None);
    }
    let inner = rest.strip_prefix('[')?.strip_suffix(']')?;
    inner.parse().ok().map(Some)
}

fn pairs(list: &[(i64, i64)]) -> BTreeMap<VertexId, VertexId> {
    list.iter().map(|&(a, b)| (v(a), v(b))).collect()
}

/// Named symmetries of a catalog family (partial maps; fixed points implicit).
pub fn named_symmetries(
    family: Family,
    truncation: Option<u32>,
) -> BTreeMap<String, BTreeMap<VertexId, VertexId>> {
    let mut out = BTreeMap::new();
    match family {
        Family::A(m) if m >= 2 => {
            let m = m as i64;
            out.insert(
                "g".to_string(),
                (1..=m).map(|i| (v(i), v(m + 1 - i))).collect(),
            );
        }
        Family::D(m) if m >= 4 => {
            let m = m as i64;
            out.insert("g".to_string(), pairs(&[(m - 1, m), (m, m - 1)]));
            out.insert("g2".to_string(), pairs(&[(m - 1, m), (m, m - 1)]));
            if m == 4 {
                out.insert("g1".to_string(), pairs(&[(1, 3), (3, 4), (4, 1)]));
            }
        }
        Family::B(2) => {
            out.insert("g".to_string(), pairs(&[(1, 2), (2, 1)]));
        }
        Family::G2 => {
            out.insert("g".to_string(), pairs(&[(1, 2), (2, 1)]));
        }
        Family::F4 => {
            out.insert("g".to_string(), pairs(&[(1, 4), (4, 1), (2, 3), (3, 2)]));
        }
        Family::E(6) => {
            out.insert("g".to_string(), pairs(&[(1, 6), (6, 1), (3, 5), (5, 3)]));
        }
        Family::TildeC(m) if m >= 3 => {
            let m = m as i64;
            out.insert(
                "g".to_string(),
                (0..=m).map(|i| (v(i), v(m - i))).collect(),
            );
        }
        Family::TildeA(m) if m >= 2 => {
            let m = m as i64;
            out.insert(
                "g".to_string(),
                (1..=m).map(|i| (v(i), v(m + 1 - i))).collect(),
            );
        }
        Family::TildeD(m) if m >= 4 => {
            let m = m as i64;
            out.insert("g".to_string(), pairs(&[(m - 1, m), (m, m - 1)]));
            out.insert("g2".to_string(), pairs(&[(m - 1, m), (m, m - 1)]));
            out.insert(
                "swap01".to_string(),
                pairs(&[(0, 1), (1, 0), (m - 1, m), (m, m - 1)]),
            );
            if m % 2 == 0 {
                out.insert(
                    "rev".to_string(),
                    (0..=m).map(|i| (v(i), v(m - i))).collect(),
                );
            }
            if m == 4 {
                out.insert("g1".to_string(), pairs(&[(1, 3), (3, 4), (4, 1)]));
                out.insert(
                    "rot4".to_string(),
                    pairs(&[(0, 4), (4, 3), (3, 1), (1, 0)]),
                );
            }
        }
        Family::TildeE(6) => {
            out.insert("g".to_string(), pairs(&[(1, 6), (6, 1), (3, 5), (5, 3)]));
            out.insert(
                "rot3".to_string(),
                pairs(&[(0, 6), (6, 1), (1, 0), (2, 5), (5, 3), (3, 2)]),
            );
        }
        Family::TildeE(7) => {
            out.insert(
                "g".to_string(),
                pairs(&[(0, 7), (7, 0), (1, 6), (6, 1), (3, 5), (5, 3)]),
            );
        }
        Family::BiInfiniteA => {
            let n = truncation.unwrap_or(3) as i64;
            out.insert(
                "g".to_string(),
                (-n..=n).map(|i| (v(i), v(-i))).collect(),
            );
        }
        Family::DInfinity => {
            out.insert("g".to_string(), pairs(&[(1, 2), (2, 1)]));
        }
        _ => {}
    }
    out
}

/// Resolve a catalog token like `E6:g`, `tD4:rot4`, or `Dinf[8]:g`.
pub fn catalog_graph(token: &str) -> Result<CatalogPair, CatalogError> {
    let token = token.trim();
    let (base, suffix) = match token.split_once(':') {
        Some((b, s)) => (b.trim(), Some(s.trim())),
        None => (token, None),
    };
    let (family, truncation) =
        family_from_base(base).ok_or_else(|| CatalogError::UnknownToken(token.to_string()))?;
    let graph = build(family, truncation)?;
    let symmetries = named_symmetries(family, truncation);
    let selected = match suffix {
        None | Some("id") => Some(Vec::new()),
        Some("g1g2") => {
            for name in ["g1", "g2"] {
                if !symmetries.contains_key(name) {
                    return Err(CatalogError::UnknownToken(token.to_string()));
                }
            }
            Some(vec!["g1".to_string(), "g2".to_string()])
        }
        Some(name) => {
            if !symmetries.contains_key(name) {
                return Err(CatalogError::UnknownToken(token.to_string()));
            }
            Some(vec![name.to_string()])
        }
    };
    Ok(CatalogPair {
        graph,
        symmetries,
        selected,
    })
}

/// Convenience: resolve a token all the way to a validated pair.
pub fn pair_from_token(
    token: &str,
) -> Result<(Arc<CoxeterGraph>, SymmetryGroup), CatalogError> {
    let pair = catalog_graph(token)?;
    let graph = Arc::new(pair.graph);
    let names = pair.selected.unwrap_or_default();
    let mut gens = Vec::new();
    for name in &names {
        let partial = &pair.symmetries[name];
        let full = crate::graph::parse::complete_mapping(&graph, partial);
        gens.push(
            Symmetry::validate(&graph, &full)
                .unwrap_or_else(|e| panic!("catalog symmetry {name} invalid: {e}")),
        );
    }
    let group = if gens.is_empty() {
        SymmetryGroup::trivial(Arc::clone(&graph))
    } else {
        SymmetryGroup::generate(Arc::clone(&graph), gens, DEFAULT_CLOSURE_CAP)
            .expect("catalog groups are tiny")
    };
    Ok((graph, group))
}

// ---------------------------------------------------------------------------
// classification of pairs
// ---------------------------------------------------------------------------

/// Case tags of the classified pairs with the basis property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CaseTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::I => "i",
            CaseTag::II => "ii",
            CaseTag::III => "iii",
            CaseTag::IV => "iv",
            CaseTag::V => "v",
            CaseTag::VI => "vi",
            CaseTag::VII => "vii",
            CaseTag::VIII => "viii",
            CaseTag::IX => "ix",
            CaseTag::X => "x",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationVerdict {
    pub recognized: Option<Family>,
    pub matched: Option<CaseMatch>,
    /// Expected folded family when matched.
    pub folded_family: Option<Family>,
    /// Rejection clause when no match.
    pub reason: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CaseMatch {
    pub case: CaseTag,
    pub parameter: u32,
    /// The relabeling catalog → input under which the group matched.
    pub relabeling: BTreeMap<VertexId, VertexId>,
}

fn target_groups(family: Family) -> Vec<(CaseTag, u32, Vec<BTreeMap<VertexId, VertexId>>)> {
    let named = |f: Family, names: &[&str]| -> Vec<BTreeMap<VertexId, VertexId>> {
        let syms = named_symmetries(f, None);
        names.iter().map(|n| syms[*n].clone()).collect()
    };
    match family {
        Family::A(r) if r >= 3 && r % 2 == 1 => {
            vec![(CaseTag::I, (r - 1) / 2, named(family, &["g"]))]
        }
        Family::D(4) => vec![
            (CaseTag::II, 4, named(family, &["g"])),
            (CaseTag::III, 4, named(family, &["g1"])),
            (CaseTag::III, 4, named(family, &["g1", "g2"])),
        ],
        Family::D(r) if r >= 5 => vec![(CaseTag::II, r, named(family, &["g"]))],
        Family::E(6) => vec![(CaseTag::IV, 6, named(family, &["g"]))],
        Family::TildeA(r) if r >= 3 && r % 2 == 1 => {
            vec![(CaseTag::V, (r - 1) / 2, named(family, &["g"]))]
        }
        Family::TildeD(4) => vec![
            (CaseTag::VI, 4, named(family, &["g"])),
            (CaseTag::VII, 4, named(family, &["g1"])),
            (CaseTag::VII, 4, named(family, &["g1", "g2"])),
        ],
        Family::TildeD(r) if r >= 5 => vec![(CaseTag::VI, r, named(family, &["g"]))],
        Family::TildeE(6) => vec![(CaseTag::VIII, 6, named(family, &["g"]))],
        _ => Vec::new(),
    }
}

/// Folded family for a matched case (the folding dictionary).
pub fn folded_family(case: CaseTag, parameter: u32) -> Family {
    match case {
        CaseTag::I => Family::B(parameter + 1),
        CaseTag::II => Family::B(parameter - 1),
        CaseTag::III => Family::G2,
        CaseTag::IV => Family::F4,
        CaseTag::V => {
            if parameter == 1 {
                Family::TildeB(2)
            } else {
                Family::TildeC(parameter + 1)
            }
        }
        CaseTag::VI => Family::TildeB(parameter - 1),
        CaseTag::VII => Family::TildeG2,
        CaseTag::VIII => Family::TildeF4,
        CaseTag::IX => Family::B(parameter + 1),
        CaseTag::X => Family::B(parameter - 1),
    }
}

/// Decide by pattern whether (Γ, G) is, up to isomorphism, one of the
/// classified pairs with the basis property, trying every graph
/// isomorphism-induced conjugation of G against the listed groups.
pub fn classify_pair(
    graph: &Arc<CoxeterGraph>,
    group: &SymmetryGroup,
) -> Result<ClassificationVerdict, CatalogError> {
    let gt = recognize(graph)?;
    let family = match gt.family {
        Some(f) => f,
        None => {
            return Ok(ClassificationVerdict {
                recognized: None,
                matched: None,
                folded_family: None,
                reason: Some("graph not in the catalog".into()),
            })
        }
    };
    if group.is_trivial() {
        return Ok(ClassificationVerdict {
            recognized: Some(family),
            matched: None,
            folded_family: None,
            reason: Some("symmetry group is trivial".into()),
        });
    }
    // truncations of the locally spherical families classify through
    // their finite shape
    let (finite_family, infinite_case) = match family {
        Family::BiInfiniteA => {
            let n = graph.n() as u32;
            (Family::A(n), Some(CaseTag::IX))
        }
        Family::DInfinity => (Family::D(graph.n() as u32), Some(CaseTag::X)),
        Family::AInfinity => {
            return Ok(ClassificationVerdict {
                recognized: Some(family),
                matched: None,
                folded_family: None,
                reason: Some("one-ended path admits no nontrivial symmetry".into()),
            })
        }
        f => (f, None),
    };
    let targets = target_groups(finite_family);
    if targets.is_empty() {
        let reason = match finite_family {
            Family::TildeE(7) => "excluded affine family: its flip pair fails the property",
            Family::A(_) => "even-rank path admits no listed symmetry",
            Family::TildeA(_) => "even-circuit symmetries are excluded",
            _ => "family admits no listed symmetry group",
        };
        return Ok(ClassificationVerdict {
            recognized: Some(family),
            matched: None,
            folded_family: None,
            reason: Some(reason.to_string()),
        });
    }
    let rep = build(finite_family, None)
        .expect("listed families build for their admissible parameters");
    let rep_arc = Arc::new(rep);
    for phi in isomorphisms(graph, &rep_arc) {
        // conjugate the input group into catalog numbering
        let mut sorted: Vec<Vec<usize>> = group
            .elements()
            .iter()
            .map(|g| {
                let mut perm = vec![0usize; graph.n()];
                for i in 0..graph.n() {
                    perm[phi[i]] = phi[g.image_position(i)];
                }
                perm
            })
            .collect();
        sorted.sort();
        for (case, parameter, gen_maps) in &targets {
            let gens: Vec<Symmetry> = gen_maps
                .iter()
                .map(|m| {
                    let full = crate::graph::parse::complete_mapping(&rep_arc, m);
                    Symmetry::validate(&rep_arc, &full).expect("catalog symmetry valid")
                })
                .collect();
            let target =
                SymmetryGroup::generate(Arc::clone(&rep_arc), gens, DEFAULT_CLOSURE_CAP)
                    .expect("catalog group closes");
            if target.element_perms_sorted() == sorted {
                let (case, parameter) = match infinite_case {
                    Some(tag) => {
                        let p = match tag {
                            CaseTag::IX => (graph.n() as u32 - 1) / 2,
                            _ => graph.n() as u32,
                        };
                        (tag, p)
                    }
                    None => (*case, *parameter),
                };
                let mut relabeling = BTreeMap::new();
                for i in 0..graph.n() {
                    relabeling.insert(rep_arc.vertex_at(phi[i]), graph.vertex_at(i));
                }
                return Ok(ClassificationVerdict {
                    recognized: Some(family),
                    matched: Some(CaseMatch {
                        case,
                        parameter,
                        relabeling,
                    }),
                    folded_family: Some(folded_family(case, parameter)),
                    reason: None,
                });
            }
        }
    }
    Ok(ClassificationVerdict {
        recognized: Some(family),
        matched: None,
        folded_family: None,
        reason: Some("symmetry group matches no listed group for this family".into()),
    })
}

// ---------------------------------------------------------------------------
// tabulated roots and certificate data
// ---------------------------------------------------------------------------

/// Highest root of a finite family, as (vertex, coefficient) pairs in
/// catalog numbering.
pub fn highest_root(family: Family) -> Result<Vec<(VertexId, i64)>, CatalogError> {
    let coeffs: Vec<(i64, i64)> = match family {
        Family::A(m) if m >= 1 => (1..=m as i64).map(|i| (i, 1)).collect(),
        Family::D(m) if m >= 4 => {
            let m = m as i64;
            let mut c = vec![(1, 1)];
            c.extend((2..=m - 2).map(|i| (i, 2)));
            c.push((m - 1, 1));
            c.push((m, 1));
            c
        }
        Family::E(6) => vec![(1, 1), (2, 2), (3, 2), (4, 3), (5, 2), (6, 1)],
        Family::E(7) => vec![(1, 2), (2, 2), (3, 3), (4, 4), (5, 3), (6, 2), (7, 1)],
        Family::E(8) => vec![
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 6),
            (5, 5),
            (6, 4),
            (7, 3),
            (8, 2),
        ],
        other => return Err(CatalogError::NoHighestRoot(other)),
    };
    Ok(coeffs.into_iter().map(|(i, c)| (v(i), c)).collect())
}

/// Null vector δ = α_0 + (highest root of the finite part) for the listed
/// affine families.
pub fn delta(family: Family) -> Result<Vec<(VertexId, i64)>, CatalogError> {
    let finite = match family {
        Family::TildeA(m) if m >= 2 => Family::A(m),
        Family::TildeD(m) if m >= 4 => Family::D(m),
        Family::TildeE(m) if (6..=8).contains(&m) => Family::E(m),
        other => return Err(CatalogError::NoHighestRoot(other)),
    };
    let mut coeffs = highest_root(finite)?;
    coeffs.insert(0, (v(0), 1));
    Ok(coeffs)
}

/// Roots whose symmetry images have nonzero pairing: the tabulated
/// refutation seeds for the failing families, in catalog numbering.
pub fn refutation_seeds(family: Family) -> Vec<Vec<(VertexId, i64)>> {
    match family {
        Family::TildeD(m) => {
            let m = m as i64;
            let mut seeds = Vec::new();
            // fork-to-fork flip seed
            seeds.push((1..=m - 1).map(|i| (v(i), 1)).collect());
            // end-to-end reversal seed on even parameter
            if m % 2 == 0 {
                let h = m / 2;
                let mut s = vec![(v(0), 1), (v(1), 1)];
                s.extend((2..=h - 1).map(|i| (v(i), 2)));
                s.push((v(h), 1));
                seeds.push(s);
            }
            if m == 4 {
                seeds.push(vec![(v(0), 1), (v(2), 1), (v(3), 1)]);
            }
            seeds
        }
        Family::TildeE(6) => vec![vec![(v(0), 1), (v(2), 1), (v(4), 1), (v(5), 1)]],
        Family::TildeE(7) => vec![vec![
            (v(1), 1),
            (v(2), 1),
            (v(3), 1),
            (v(4), 2),
            (v(5), 2),
            (v(6), 1),
            (v(7), 1),
        ]],
        _ => Vec::new(),
    }
}

/// A symbol of a certificate word: a simple reflection or the longest
/// element of the orbit containing the given vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordSym {
    S(i64),
    UOrbitOf(i64),
}

/// A tabulated translation identity: word applied to `start` equals
/// `start + δ` (both sides in catalog numbering).
#[derive(Debug, Clone)]
pub struct TranslationIdentity {
    pub word: Vec<WordSym>,
    pub start: Vec<(VertexId, i64)>,
    pub expect: Vec<(VertexId, i64)>,
}

fn add_delta(start: &[(VertexId, i64)], d: &[(VertexId, i64)]) -> Vec<(VertexId, i64)> {
    let mut acc: BTreeMap<VertexId, i64> = start.iter().copied().collect();
    for &(vx, c) in d {
        *acc.entry(vx).or_insert(0) += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// The explicit translation words for the affine cases with the basis
/// property, parameterized over the family.
pub fn translation_identities(family: Family) -> Vec<TranslationIdentity> {
    let simple = |i: i64| vec![(v(i), 1)];
    match family {
        Family::TildeA(r) if r >= 3 && r % 2 == 1 => {
            let m = ((r - 1) / 2) as i64;
            let d = delta(family).expect("listed affine family");
            let ux: Vec<WordSym> = (1..=m).map(WordSym::UOrbitOf).collect();
            let ux_rev: Vec<WordSym> = (1..=m).rev().map(WordSym::UOrbitOf).collect();
            let mut w1 = vec![WordSym::S(0)];
            w1.extend(&ux);
            let mut w2 = vec![WordSym::S(m + 1)];
            w2.extend(&ux_rev);
            let mut w3 = ux_rev.clone();
            w3.push(WordSym::S(0));
            w3.extend(&ux);
            w3.push(WordSym::S(m + 1));
            vec![
                TranslationIdentity {
                    word: w1,
                    start: simple(m + 1),
                    expect: add_delta(&simple(0), &d),
                },
                TranslationIdentity {
                    word: w2,
                    start: simple(0),
                    expect: add_delta(&simple(m + 1), &d),
                },
                TranslationIdentity {
                    word: w3,
                    start: simple(m),
                    expect: add_delta(&simple(m), &d),
                },
            ]
        }
        Family::TildeD(r) if r >= 4 => {
            let m = r as i64;
            let d = delta(family).expect("listed affine family");
            // s_{m-2} ... s_2 s_0 u_X s_1 s_2 ... s_{m-3} applied to α_{m-2}
            let mut w1: Vec<WordSym> = (2..=m - 2).rev().map(WordSym::S).collect();
            w1.push(WordSym::S(0));
            w1.push(WordSym::UOrbitOf(m - 1));
            w1.push(WordSym::S(1));
            w1.extend((2..=m - 3).map(WordSym::S));
            // u_X s_{m-2} ... s_2 s_0 u_X s_1 s_2 ... s_{m-2} applied to α_m
            let mut w2 = vec![WordSym::UOrbitOf(m - 1)];
            w2.extend((2..=m - 2).rev().map(WordSym::S));
            w2.push(WordSym::S(0));
            w2.push(WordSym::UOrbitOf(m - 1));
            w2.push(WordSym::S(1));
            w2.extend((2..=m - 2).map(WordSym::S));
            vec![
                TranslationIdentity {
                    word: w1,
                    start: simple(m - 2),
                    expect: add_delta(&simple(m - 2), &d),
                },
                TranslationIdentity {
                    word: w2,
                    start: simple(m),
                    expect: add_delta(&simple(m), &d),
                },
            ]
        }
        Family::TildeE(6) => {
            let d = delta(family).expect("listed affine family");
            let g_delta12 = vec![
                (v(1), 1),
                (v(2), 1),
                (v(3), 1),
                (v(4), 2),
                (v(5), 2),
                (v(6), 1),
            ];
            let gamma10 = vec![
                (v(1), 1),
                (v(2), 1),
                (v(3), 2),
                (v(4), 2),
                (v(5), 2),
                (v(6), 1),
            ];
            vec![
                TranslationIdentity {
                    word: vec![
                        WordSym::UOrbitOf(3),
                        WordSym::S(4),
                        WordSym::S(2),
                        WordSym::S(0),
                    ],
                    start: g_delta12,
                    expect: add_delta(&simple(3), &d),
                },
                TranslationIdentity {
                    word: vec![WordSym::S(4), WordSym::S(2), WordSym::S(0)],
                    start: gamma10,
                    expect: add_delta(&simple(4), &d),
                },
            ]
        }
        _ => Vec::new(),
    }
}

/// The explicit orbit-translation words on the star graph with four
/// spokes: each spoke generator and the hub.
pub fn tilde_d4_identities() -> Vec<TranslationIdentity> {
    let d = delta(Family::TildeD(4)).expect("listed affine family");
    let simple = |i: i64| vec![(v(i), 1)];
    let mut out = Vec::new();
    for leaf in [1i64, 3, 4] {
        out.push(TranslationIdentity {
            word: vec![
                WordSym::UOrbitOf(1),
                WordSym::S(2),
                WordSym::S(0),
                WordSym::UOrbitOf(1),
                WordSym::S(2),
            ],
            start: simple(leaf),
            expect: add_delta(&simple(leaf), &d),
        });
    }
    out.push(TranslationIdentity {
        word: vec![WordSym::S(2), WordSym::S(0), WordSym::UOrbitOf(1)],
        start: simple(2),
        expect: add_delta(&simple(2), &d),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_recognition() {
        let families = [
            Family::A(1),
            Family::A(5),
            Family::B(2),
            Family::B(4),
            Family::D(4),
            Family::D(6),
            Family::E(6),
            Family::E(7),
            Family::E(8),
            Family::F4,
            Family::G2,
            Family::H(3),
            Family::H(4),
            Family::I2(5),
            Family::I2(7),
            Family::TildeA(1),
            Family::TildeA(2),
            Family::TildeA(5),
            Family::TildeB(2),
            Family::TildeB(3),
            Family::TildeB(5),
            Family::TildeC(3),
            Family::TildeC(5),
            Family::TildeD(4),
            Family::TildeD(7),
            Family::TildeE(6),
            Family::TildeE(7),
            Family::TildeE(8),
            Family::TildeF4,
            Family::TildeG2,
        ];
        for f in families {
            let g = build(f, None).unwrap();
            let gt = recognize(&g).unwrap();
            assert_eq!(gt.family, Some(f), "family {f}");
            // the relabeling is a label-preserving bijection
            assert_eq!(gt.relabeling.len(), g.n());
        }
    }

    #[test]
    fn circuit_recognition() {
        // 4-cycle of unlabeled edges is the affine circuit on 4 vertices
        let g = CoxeterGraph::new(
            (0..4).map(v).collect(),
            vec![
                (v(0), v(1), Label::Finite(3)),
                (v(1), v(2), Label::Finite(3)),
                (v(2), v(3), Label::Finite(3)),
                (v(3), v(0), Label::Finite(3)),
            ],
        )
        .unwrap();
        assert_eq!(recognize(&g).unwrap().family, Some(Family::TildeA(3)));
    }

    #[test]
    fn star_and_branch_recognition() {
        // star with three length-1 branches
        let g = build(Family::D(4), None).unwrap();
        assert_eq!(recognize(&g).unwrap().family, Some(Family::D(4)));
        // unique valence-3 vertex with branch lengths (1,2,2)
        let e6 = build(Family::E(6), None).unwrap();
        assert_eq!(recognize(&e6).unwrap().family, Some(Family::E(6)));
        // disconnected input is an error
        let disc = CoxeterGraph::new(vec![v(1), v(2)], vec![]).unwrap();
        assert!(matches!(
            recognize(&disc),
            Err(CatalogError::Disconnected)
        ));
    }

    #[test]
    fn classify_the_listed_pairs() {
        let checks: Vec<(&str, CaseTag, u32, Family)> = vec![
            ("A3:g", CaseTag::I, 1, Family::B(2)),
            ("A5:g", CaseTag::I, 2, Family::B(3)),
            ("D4:g", CaseTag::II, 4, Family::B(3)),
            ("D5:g", CaseTag::II, 5, Family::B(4)),
            ("D4:g1", CaseTag::III, 4, Family::G2),
            ("D4:g1g2", CaseTag::III, 4, Family::G2),
            ("E6:g", CaseTag::IV, 6, Family::F4),
            ("D8:g", CaseTag::II, 8, Family::B(7)),
            ("A7:g", CaseTag::I, 3, Family::B(4)),
            ("tA3:g", CaseTag::V, 1, Family::TildeB(2)),
            ("tA5:g", CaseTag::V, 2, Family::TildeC(3)),
            ("tA7:g", CaseTag::V, 3, Family::TildeC(4)),
            ("tD4:g", CaseTag::VI, 4, Family::TildeB(3)),
            ("tD6:g", CaseTag::VI, 6, Family::TildeB(5)),
            ("tD8:g", CaseTag::VI, 8, Family::TildeB(7)),
            ("tD4:g1", CaseTag::VII, 4, Family::TildeG2),
            ("tD4:g1g2", CaseTag::VII, 4, Family::TildeG2),
            ("tE6:g", CaseTag::VIII, 6, Family::TildeF4),
            ("iAi[2]:g", CaseTag::IX, 2, Family::B(3)),
            ("Dinf[6]:g", CaseTag::X, 6, Family::B(5)),
        ];
        for (token, case, parameter, folded) in checks {
            let (graph, group) = pair_from_token(token).unwrap();
            let verdict = classify_pair(&graph, &group).unwrap();
            let m = verdict
                .matched
                .unwrap_or_else(|| panic!("{token} should match"));
            assert_eq!(m.case, case, "{token}");
            assert_eq!(m.parameter, parameter, "{token}");
            assert_eq!(verdict.folded_family, Some(folded), "{token}");
        }
    }

    #[test]
    fn classify_rejects_unlisted_pairs() {
        for token in [
            "tD4:rot4",
            "tD4:swap01",
            "tD6:rev",
            "tE6:rot3",
            "tE7:g",
            "A4:g",
            "tA2:g",
        ] {
            let (graph, group) = pair_from_token(token).unwrap();
            let verdict = classify_pair(&graph, &group).unwrap();
            assert!(verdict.matched.is_none(), "{token} must not match");
            assert!(verdict.reason.is_some());
        }
        // a trivial group never matches
        let (graph, group) = pair_from_token("E6").unwrap();
        let verdict = classify_pair(&graph, &group).unwrap();
        assert!(verdict.matched.is_none());
    }

    #[test]
    fn classification_is_isomorphism_invariant() {
        // same shape as A3:g but with scrambled vertex names
        let g = Arc::new(
            CoxeterGraph::new(
                vec![v(10), v(20), v(30)],
                vec![
                    (v(20), v(10), Label::Finite(3)),
                    (v(10), v(30), Label::Finite(3)),
                ],
            )
            .unwrap(),
        );
        // path is 20 - 10 - 30; the flip swaps 20 and 30
        let f = Symmetry::validate(
            &g,
            &[(10, 10), (20, 30), (30, 20)]
                .into_iter()
                .map(|(a, b)| (v(a), v(b)))
                .collect(),
        )
        .unwrap();
        let grp = SymmetryGroup::generate(Arc::clone(&g), vec![f], 100).unwrap();
        let verdict = classify_pair(&g, &grp).unwrap();
        assert_eq!(verdict.matched.unwrap().case, CaseTag::I);
    }

    #[test]
    fn unknown_tokens_are_rejected() {
        assert!(catalog_graph("Z9").is_err());
        assert!(catalog_graph("E6:rot9").is_err());
        assert!(catalog_graph("Dinf[2]").is_err());
        assert!(catalog_graph("A0").is_err());
    }

    #[test]
    fn affine_catalog_data_is_consistent() {
        use crate::form::FormMatrix;
        use crate::scalar::Scalar;
        // ⟨α_0, β⟩ = −2 and ⟨α_s, δ⟩ = 0 for every affine entry with a
        // tabulated highest root
        let families = [
            Family::TildeA(2),
            Family::TildeA(3),
            Family::TildeA(5),
            Family::TildeD(4),
            Family::TildeD(5),
            Family::TildeD(6),
            Family::TildeD(7),
            Family::TildeD(8),
            Family::TildeE(6),
            Family::TildeE(7),
            Family::TildeE(8),
        ];
        for family in families {
            let graph = Arc::new(build(family, None).unwrap());
            let form = FormMatrix::new(Arc::clone(&graph)).unwrap();
            let n = graph.n();
            let coords = |pairs: &[(VertexId, i64)]| -> Vec<Scalar> {
                let mut a = vec![Scalar::zero(); n];
                for &(vx, c) in pairs {
                    a[graph.position(vx).unwrap()] = Scalar::from_integer(c);
                }
                a
            };
            let d = coords(&delta(family).unwrap());
            let mut beta = d.clone();
            beta[graph.position(v(0)).unwrap()] -= &Scalar::one();
            let alpha0 = coords(&[(v(0), 1)]);
            assert_eq!(
                form.bilinear(&alpha0, &beta).unwrap(),
                Scalar::from_integer(-2),
                "{family}"
            );
            for i in 0..n {
                assert!(
                    form.pair_simple(i, &d).unwrap().is_zero(),
                    "{family}: delta pairs with vertex {}",
                    graph.vertex_at(i)
                );
            }
        }
    }

    #[test]
    fn highest_roots_tabulated() {
        let beta = highest_root(Family::A(4)).unwrap();
        assert_eq!(beta.len(), 4);
        assert!(beta.iter().all(|&(_, c)| c == 1));
        let beta = highest_root(Family::D(5)).unwrap();
        assert_eq!(
            beta,
            vec![(v(1), 1), (v(2), 2), (v(3), 2), (v(4), 1), (v(5), 1)]
        );
        assert!(highest_root(Family::F4).is_err());
        let d = delta(Family::TildeE(6)).unwrap();
        assert_eq!(
            d,
            vec![
                (v(0), 1),
                (v(1), 1),
                (v(2), 2),
                (v(3), 2),
                (v(4), 3),
                (v(5), 2),
                (v(6), 1)
            ]
        );
    }
}
