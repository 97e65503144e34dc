//! Big cliques in squares of plane graphs.
//!
//! The central object is the candidate set of a vertex triple (x, y, z):
//!
//! ```text
//! S(x, y, z) = { v : |N[v] ∩ {x, y, z}| >= 2 }
//! ```
//!
//! For a plane graph with maximum degree at most D (D >= 19), every maximal
//! clique of the square with at least D+20 vertices equals such a candidate
//! set, and a counting argument over the five-way partition of S bounds its
//! size by floor(3D/2)+1.  This module turns both facts into executable
//! machinery: candidate sets and their partitions, the counting certificate,
//! a lossless triple-enumeration search for big cliques, the low-degree edge
//! contraction reduction, and an end-to-end characterization verifier backed
//! by the exact clique oracle.

use serde::Serialize;
use thiserror::Error;

use crate::clique_core::{
    self, extend_to_maximal, is_clique, max_clique_capped, max_clique_exact, square_witnesses,
    CertKind, CliqueCertificate, CliqueError,
};
use crate::plane_graph::{PlaneGraph, VertexId};
use crate::square_ops::{square_of_plane, SimpleGraph};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BigCliqueError {
    #[error("triple vertices must be distinct")]
    DuplicateVertices,
    #[error("vertex {vertex} has degree {degree}, above the budget D = {budget}")]
    DegreeBudgetViolated {
        vertex: VertexId,
        degree: usize,
        budget: usize,
    },
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

/// Degree budget D >= 19 with the derived bigness threshold D + 20.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BigSetQuery {
    d: usize,
}

impl BigSetQuery {
    pub fn new(d: usize) -> Self {
        assert!(d >= 19, "degree budget must be at least 19");
        BigSetQuery { d }
    }

    pub fn degree_budget(&self) -> usize {
        self.d
    }

    pub fn threshold(&self) -> usize {
        self.d + 20
    }
}

/// A triple (x, y, z) with its candidate set S and the five-way partition
/// T, W, X, Y, Z used by the counting argument:
///
/// * core     (T): S ∩ {x, y, z}
/// * center   (W): common neighbors of all three
/// * pair_yz  (X): neighbors of y and z only
/// * pair_xz  (Y): neighbors of x and z only
/// * pair_xy  (Z): neighbors of x and y only
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub triple: (VertexId, VertexId, VertexId),
    pub members: Vec<VertexId>,
    pub core: Vec<VertexId>,
    pub center: Vec<VertexId>,
    pub pair_yz: Vec<VertexId>,
    pub pair_xz: Vec<VertexId>,
    pub pair_xy: Vec<VertexId>,
}

impl TriplePattern {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn partition_sizes(&self) -> PartitionSizes {
        PartitionSizes {
            t: self.core.len(),
            w: self.center.len(),
            x: self.pair_yz.len(),
            y: self.pair_xz.len(),
            z: self.pair_xy.len(),
        }
    }
}

/// Sizes of the partition classes, serialized under their traditional names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionSizes {
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "W")]
    pub w: usize,
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "Y")]
    pub y: usize,
    #[serde(rename = "Z")]
    pub z: usize,
}

/// The counting bound derived from the partition of a candidate set:
/// summing the three per-vertex degree inequalities gives
///
/// ```text
/// 2(|X|+|Y|+|Z|) + 3|W| + sum_{w in T} d_T(w) <= 3D
/// ```
///
/// hence |S| <= |T| + |W| + floor((3D - 3|W| - sum d_T)/2) = `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingCertificate {
    pub bound: usize,
    /// bound - |S|; non-negative whenever the degree budget holds.
    pub slack: i64,
    /// Sum over T of degrees inside T (twice the edges of G[T]).
    pub core_degree_sum: usize,
    /// Whether T is nonempty and G[T] is connected, the hypothesis under
    /// which `bound` is at most floor(3D/2)+1.
    pub core_connected: bool,
}

/// Candidate set of the triple (x, y, z), with its partition.
pub fn candidate_set(
    g: &PlaneGraph,
    x: VertexId,
    y: VertexId,
    z: VertexId,
) -> Result<TriplePattern, BigCliqueError> {
    if x == y || y == z || x == z {
        return Err(BigCliqueError::DuplicateVertices);
    }
    let n = g.vertex_count();
    let mut count = vec![0u8; n];
    for &t in &[x, y, z] {
        count[t] += 1;
        for &u in g.neighbors(t) {
            count[u] += 1;
        }
    }
    let members: Vec<VertexId> = (0..n).filter(|&v| count[v] >= 2).collect();

    let mut core = Vec::new();
    let mut center = Vec::new();
    let mut pair_yz = Vec::new();
    let mut pair_xz = Vec::new();
    let mut pair_xy = Vec::new();
    for &v in &members {
        if v == x || v == y || v == z {
            core.push(v);
            continue;
        }
        let ax = g.has_edge(v, x);
        let ay = g.has_edge(v, y);
        let az = g.has_edge(v, z);
        match (ax, ay, az) {
            (true, true, true) => center.push(v),
            (false, true, true) => pair_yz.push(v),
            (true, false, true) => pair_xz.push(v),
            (true, true, false) => pair_xy.push(v),
            _ => unreachable!("members meet at least two of the triple"),
        }
    }
    let pattern = TriplePattern {
        triple: (x, y, z),
        members,
        core,
        center,
        pair_yz,
        pair_xz,
        pair_xy,
    };
    assert_eq!(
        pattern.size(),
        pattern.core.len()
            + pattern.center.len()
            + pattern.pair_yz.len()
            + pattern.pair_xz.len()
            + pattern.pair_xy.len(),
        "partition must cover S exactly"
    );
    Ok(pattern)
}

fn check_degree_budget(g: &PlaneGraph, d: usize) -> Result<(), BigCliqueError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) > d {
            return Err(BigCliqueError::DegreeBudgetViolated {
                vertex: v,
                degree: g.degree(v),
                budget: d,
            });
        }
    }
    Ok(())
}

/// Verify the partition counting argument for `pattern` against degree
/// budget `d` and return the resulting size bound and its slack.
pub fn counting_certificate(
    g: &PlaneGraph,
    pattern: &TriplePattern,
    d: usize,
) -> Result<CountingCertificate, BigCliqueError> {
    check_degree_budget(g, d)?;
    let (x, y, z) = pattern.triple;
    let in_core = |v: VertexId| pattern.core.contains(&v);
    let d_core = |v: VertexId| g.neighbors(v).iter().filter(|&&u| in_core(u)).count();
    // The three per-vertex inequalities; each left side is a disjoint union
    // of neighbor classes, so they hold whenever the budget does.
    let w = pattern.center.len();
    let (xs, ys, zs) = (
        pattern.pair_yz.len(),
        pattern.pair_xz.len(),
        pattern.pair_xy.len(),
    );
    assert!(ys + zs + w + d_core(x) <= g.degree(x));
    assert!(xs + zs + w + d_core(y) <= g.degree(y));
    assert!(xs + ys + w + d_core(z) <= g.degree(z));

    let core_degree_sum: usize = pattern.core.iter().map(|&v| d_core(v)).sum();
    debug_assert_eq!(
        core_degree_sum,
        d_core(x) + d_core(y) + d_core(z),
        "vertices of the triple outside S have no core neighbors"
    );
    let bound = pattern.core.len() + w + (3 * d - 3 * w - core_degree_sum) / 2;
    let slack = bound as i64 - pattern.size() as i64;
    assert!(slack >= 0, "counting bound must dominate |S|");

    let core_connected = core_is_connected(g, &pattern.core);
    if core_connected {
        assert!(core_degree_sum >= 2 * (pattern.core.len() - 1));
        assert!(bound <= 3 * d / 2 + 1);
    }
    Ok(CountingCertificate {
        bound,
        slack,
        core_degree_sum,
        core_connected,
    })
}

fn core_is_connected(g: &PlaneGraph, core: &[VertexId]) -> bool {
    if core.is_empty() {
        return false;
    }
    let mut seen = vec![core[0]];
    let mut frontier = vec![core[0]];
    while let Some(v) = frontier.pop() {
        for &u in g.neighbors(v) {
            if core.contains(&u) && !seen.contains(&u) {
                seen.push(u);
                frontier.push(u);
            }
        }
    }
    seen.len() == core.len()
}

/// Members of the candidate set of (x, y, z), without building the pattern.
fn candidate_members(
    g: &PlaneGraph,
    x: VertexId,
    y: VertexId,
    z: VertexId,
    count: &mut [u8],
    touched: &mut Vec<VertexId>,
) -> Vec<VertexId> {
    for &t in &[x, y, z] {
        if count[t] == 0 {
            touched.push(t);
        }
        count[t] += 1;
        for &u in g.neighbors(t) {
            if count[u] == 0 {
                touched.push(u);
            }
            count[u] += 1;
        }
    }
    let mut members: Vec<VertexId> = touched.iter().copied().filter(|&v| count[v] >= 2).collect();
    members.sort_unstable();
    for &v in touched.iter() {
        count[v] = 0;
    }
    touched.clear();
    members
}

fn bit(rows: &[Vec<u64>], u: VertexId, v: VertexId) -> bool {
    rows[u][v / 64] >> (v % 64) & 1 == 1
}

fn clique_in_rows(rows: &[Vec<u64>], set: &[VertexId]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| bit(rows, u, v)))
}

/// Search all triples for the largest candidate set that is a clique in
/// square(G) of size at least D+20.  Triples are pruned by the lossless
/// degree-sum condition d(x)+d(y)+d(z) >= D+17, which follows from
/// S ⊆ N[x] ∪ N[y] ∪ N[z].  Ties break toward the lexicographically
/// smallest sorted triple.
pub fn find_big_clique(
    g: &PlaneGraph,
    query: BigSetQuery,
) -> Result<Option<TriplePattern>, BigCliqueError> {
    find_big_clique_inner(g, query, true)
}

fn find_big_clique_inner(
    g: &PlaneGraph,
    query: BigSetQuery,
    prune: bool,
) -> Result<Option<TriplePattern>, BigCliqueError> {
    let d = query.degree_budget();
    check_degree_budget(g, d)?;
    let n = g.vertex_count();
    let threshold = query.threshold();
    if n < threshold {
        return Ok(None);
    }
    let square = square_of_plane(g);
    let rows = square.bit_rows();
    let needed = d + 17;

    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg = |i: usize| g.degree(order[i]);

    let mut count = vec![0u8; n];
    let mut touched = Vec::new();
    let mut best: Option<(Vec<VertexId>, [VertexId; 3])> = None;

    for i in 0..n {
        if prune && 3 * deg(i) < needed {
            break;
        }
        for j in i + 1..n {
            if prune && deg(i) + 2 * deg(j) < needed {
                break;
            }
            for k in j + 1..n {
                if prune && deg(i) + deg(j) + deg(k) < needed {
                    break;
                }
                let (x, y, z) = (order[i], order[j], order[k]);
                let members = candidate_members(g, x, y, z, &mut count, &mut touched);
                if members.len() < threshold {
                    continue;
                }
                if !clique_in_rows(&rows, &members) {
                    continue;
                }
                let mut triple = [x, y, z];
                triple.sort_unstable();
                let better = match &best {
                    None => true,
                    Some((bm, bt)) => {
                        members.len() > bm.len() || (members.len() == bm.len() && triple < *bt)
                    }
                };
                if better {
                    best = Some((members, triple));
                }
            }
        }
    }
    match best {
        None => Ok(None),
        Some((_, [x, y, z])) => Ok(Some(candidate_set(g, x, y, z)?)),
    }
}

/// Result of the structured clique-number computation: the clique number of
/// square(G) together with its certificate, and the triple pattern when the
/// winner came from the candidate-set route.
#[derive(Debug, Clone)]
pub struct OmegaResult {
    pub omega: usize,
    pub certificate: CliqueCertificate,
    pub pattern: Option<TriplePattern>,
}

/// Clique number of square(G) for plane G with Δ(G) <= D, D >= 19, computed
/// structurally: cliques of at least D+20 vertices are found by triple
/// enumeration (which is exhaustive for them), smaller ones by the exact
/// solver capped at D+19.
pub fn omega_square_structured(
    g: &PlaneGraph,
    d: usize,
    budget: u64,
) -> Result<OmegaResult, BigCliqueError> {
    let query = BigSetQuery::new(d);
    check_degree_budget(g, d)?;
    let base = SimpleGraph::from_plane(g);
    let square = base.square();

    let big = find_big_clique(g, query)?;
    let (capped, _) = max_clique_capped(&square, budget, d + 19)?;

    match big {
        Some(pattern) if pattern.size() >= capped.size() => {
            let (x, y, z) = pattern.triple;
            let certificate = CliqueCertificate {
                members: pattern.members.clone(),
                kind: CertKind::Triple { x, y, z },
                witnesses: square_witnesses(&base, &pattern.members),
            };
            Ok(OmegaResult {
                omega: pattern.size(),
                certificate,
                pattern: Some(pattern),
            })
        }
        _ => {
            let certificate = CliqueCertificate {
                witnesses: square_witnesses(&base, &capped.members),
                ..capped
            };
            Ok(OmegaResult {
                omega: certificate.size(),
                certificate,
                pattern: None,
            })
        }
    }
}

/// One contraction performed by `reduce_small_degree_edges`, in the vertex
/// ids current at the time of the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractionStep {
    pub removed: VertexId,
    pub into: VertexId,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: PlaneGraph,
    /// The tracked set, mapped through all contractions, ascending.
    pub members: Vec<VertexId>,
    pub log: Vec<ContractionStep>,
}

/// Repeatedly contract an edge vw with v outside S, d(v) <= 5 and
/// d(v) + d(w) <= D + 2, merging v into w (which keeps its S-membership),
/// until no such edge remains.  Enforces the low-degree-edge hypothesis
/// while preserving Δ <= D and the cliqueness of S in the square.
pub fn reduce_small_degree_edges(
    g: &PlaneGraph,
    members: &[VertexId],
    d: usize,
) -> Result<Reduction, BigCliqueError> {
    check_degree_budget(g, d)?;
    debug_assert!(is_clique(&square_of_plane(g), members));
    let mut graph = g.clone();
    let mut in_set = vec![false; g.vertex_count()];
    for &v in members {
        in_set[v] = true;
    }
    let mut log = Vec::new();
    'outer: loop {
        for v in 0..graph.vertex_count() {
            if in_set[v] || graph.degree(v) > 5 || graph.degree(v) == 0 {
                continue;
            }
            let mut nbrs: Vec<VertexId> = graph.neighbors(v).to_vec();
            nbrs.sort_unstable();
            for w in nbrs {
                if graph.degree(v) + graph.degree(w) <= d + 2 {
                    let (next, mapping, _) = graph
                        .contract_edge(v, w)
                        .expect("w was taken from v's neighbor list");
                    let mut next_in_set = vec![false; next.vertex_count()];
                    for (old, new) in mapping.iter().enumerate() {
                        if let Some(new) = new {
                            next_in_set[*new] = in_set[old];
                        }
                    }
                    log.push(ContractionStep {
                        removed: v,
                        into: w,
                    });
                    graph = next;
                    in_set = next_in_set;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let members: Vec<VertexId> = (0..graph.vertex_count()).filter(|&v| in_set[v]).collect();
    debug_assert!(graph.max_degree() <= d);
    Ok(Reduction {
        graph,
        members,
        log,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CharacterizationStatus {
    /// Square has a clique of at least D+20 vertices and its maximal
    /// extension is the candidate set of some triple.
    Pass,
    /// A big clique exists but no triple matches (impossible for valid
    /// plane inputs; kept representable so the verifier stays honest).
    Fail,
    /// The clique number is below the D+20 threshold.
    NotApplicable,
}

/// Outcome of the end-to-end characterization check on one instance.
#[derive(Debug, Clone)]
pub struct Characterization {
    pub status: CharacterizationStatus,
    pub omega: usize,
    pub threshold: usize,
    /// The maximum clique found by the oracle, extended to a maximal one.
    pub maximal_clique: Vec<VertexId>,
    pub pattern: Option<TriplePattern>,
    pub certificate: Option<CountingCertificate>,
}

impl Characterization {
    pub fn applicable(&self) -> bool {
        self.status != CharacterizationStatus::NotApplicable
    }
}

/// Find a maximum clique of square(G); if it reaches D+20 vertices, extend
/// it to a maximal clique and locate a triple whose candidate set equals it.
pub fn verify_characterization(
    g: &PlaneGraph,
    d: usize,
    budget: u64,
) -> Result<Characterization, BigCliqueError> {
    assert!(d >= 19, "degree budget must be at least 19");
    check_degree_budget(g, d)?;
    let square = square_of_plane(g);
    let star = max_clique_exact(&square, budget)?;
    let threshold = d + 20;
    if star.size() < threshold {
        return Ok(Characterization {
            status: CharacterizationStatus::NotApplicable,
            omega: star.size(),
            threshold,
            maximal_clique: star.members,
            pattern: None,
            certificate: None,
        });
    }
    let maximal = extend_to_maximal(&square, &star.members)?;
    let omega = star.size();
    match locate_matching_triple(g, &maximal.members) {
        Some((x, y, z)) => {
            let pattern = candidate_set(g, x, y, z)?;
            let certificate = counting_certificate(g, &pattern, d)?;
            Ok(Characterization {
                status: CharacterizationStatus::Pass,
                omega,
                threshold,
                maximal_clique: maximal.members,
                pattern: Some(pattern),
                certificate: Some(certificate),
            })
        }
        None => Ok(Characterization {
            status: CharacterizationStatus::Fail,
            omega,
            threshold,
            maximal_clique: maximal.members,
            pattern: None,
            certificate: None,
        }),
    }
}

/// Find (x, y, z) with candidate set exactly `target`, or None.
///
/// Every member of a candidate set is adjacent-or-equal to at least two of
/// the triple, so at least two triple vertices lie in the closed
/// neighborhood of any chosen member s0.  Enumerating pairs there and
/// intersecting the closed neighborhoods of the members the pair fails to
/// double-cover yields all possible third vertices; each candidate triple
/// is then checked exactly.
fn locate_matching_triple(
    g: &PlaneGraph,
    target: &[VertexId],
) -> Option<(VertexId, VertexId, VertexId)> {
    let n = g.vertex_count();
    let s0 = *target
        .iter()
        .min_by_key(|&&v| (g.degree(v), v))
        .expect("target set is nonempty");
    let mut cands: Vec<VertexId> = g.neighbors(s0).to_vec();
    cands.push(s0);
    cands.sort_unstable();

    let mut closed = vec![false; n];
    for (ai, &a) in cands.iter().enumerate() {
        for &b in &cands[ai + 1..] {
            // Members covered once by {a, b} constrain the third vertex to
            // their closed neighborhoods; members covered zero times rule
            // the pair out.
            let mut ones: Vec<VertexId> = Vec::new();
            let mut feasible = true;
            for &v in target {
                let cov = usize::from(v == a || g.has_edge(v, a))
                    + usize::from(v == b || g.has_edge(v, b));
                match cov {
                    0 => {
                        feasible = false;
                        break;
                    }
                    1 => ones.push(v),
                    _ => {}
                }
            }
            if !feasible {
                continue;
            }
            let third: Vec<VertexId> = if ones.is_empty() {
                (0..n).collect()
            } else {
                let mut count = vec![0usize; n];
                for &v in &ones {
                    count[v] += 1;
                    for &u in g.neighbors(v) {
                        count[u] += 1;
                    }
                }
                (0..n).filter(|&c| count[c] == ones.len()).collect()
            };
            for c in third {
                if c == a || c == b {
                    continue;
                }
                for &v in target {
                    closed[v] = true;
                }
                let members = candidate_set(g, a, b, c).expect("distinct by construction");
                let matches =
                    members.size() == target.len() && members.members.iter().all(|&v| closed[v]);
                for &v in target {
                    closed[v] = false;
                }
                if matches {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Report emitted for solve/verify runs; field names and order follow the
/// persisted JSON schema (keys sorted bytewise, schema version "v").
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "S")]
    pub s: Vec<VertexId>,
    pub applicable: bool,
    pub bound: Option<usize>,
    pub elapsed_ms: u64,
    pub instance: String,
    pub omega: usize,
    pub partition_sizes: Option<PartitionSizes>,
    pub slack: Option<i64>,
    pub threshold: usize,
    pub triple: Option<[VertexId; 3]>,
    pub v: u32,
}

impl SolveReport {
    pub const SCHEMA_VERSION: u32 = 1;

    pub fn from_characterization(
        instance: &str,
        d: usize,
        ch: &Characterization,
        elapsed_ms: u64,
    ) -> Self {
        SolveReport {
            d,
            s: ch.maximal_clique.clone(),
            applicable: ch.applicable(),
            bound: ch.certificate.map(|c| c.bound),
            elapsed_ms,
            instance: instance.to_string(),
            omega: ch.omega,
            partition_sizes: ch.pattern.as_ref().map(|p| p.partition_sizes()),
            slack: ch.certificate.map(|c| c.slack),
            threshold: ch.threshold,
            triple: ch.pattern.as_ref().map(|p| {
                let (x, y, z) = p.triple;
                [x, y, z]
            }),
            v: Self::SCHEMA_VERSION,
        }
    }

    pub fn from_omega(
        instance: &str,
        g: &PlaneGraph,
        d: usize,
        res: &OmegaResult,
        elapsed_ms: u64,
    ) -> Self {
        let certificate = res
            .pattern
            .as_ref()
            .map(|p| counting_certificate(g, p, d).expect("pattern was built against g"));
        SolveReport {
            d,
            s: res.certificate.members.clone(),
            applicable: res.omega >= d + 20,
            bound: certificate.map(|c| c.bound),
            elapsed_ms,
            instance: instance.to_string(),
            omega: res.omega,
            partition_sizes: res.pattern.as_ref().map(|p| p.partition_sizes()),
            slack: certificate.map(|c| c.slack),
            threshold: d + 20,
            triple: res.pattern.as_ref().map(|p| {
                let (x, y, z) = p.triple;
                [x, y, z]
            }),
            v: Self::SCHEMA_VERSION,
        }
    }
}

pub use clique_core::DEFAULT_BUDGET;
