//! Exact maximum-clique search and maximal-clique utilities.
//!
//! The solver is a branch-and-bound over candidate sets ordered by degree,
//! with a greedy-coloring upper bound recomputed at every node (the classic
//! scheme for dense graphs, where coloring bounds prune hard).  It is the
//! brute-force oracle the rest of the crate is checked against, so it keeps
//! no heuristics that could trade exactness for speed.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::plane_graph::VertexId;
use crate::square_ops::SimpleGraph;

/// Default node-expansion budget; the instances this crate works at finish
/// far below it.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("exceeded {budget} node expansions; best clique so far has {} vertices", best.members.len())]
    BudgetExceeded {
        budget: u64,
        best: CliqueCertificate,
    },
    #[error("the given vertex set is not a clique")]
    NotAClique,
}

/// How a clique was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertKind {
    /// Explicit vertex set, checked pairwise.
    Explicit,
    /// Candidate set of a triple (x, y, z) in the base graph.
    Triple {
        x: VertexId,
        y: VertexId,
        z: VertexId,
    },
}

/// Paths of length at most 2 witnessing square-adjacency for each member
/// pair, keyed by (min, max).
pub type WitnessMap = BTreeMap<(VertexId, VertexId), Vec<VertexId>>;

/// A verified clique, optionally with base-graph distance witnesses when
/// the host graph is a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCertificate {
    pub members: Vec<VertexId>,
    pub kind: CertKind,
    pub witnesses: Option<WitnessMap>,
}

impl CliqueCertificate {
    pub fn explicit(mut members: Vec<VertexId>) -> Self {
        members.sort_unstable();
        CliqueCertificate {
            members,
            kind: CertKind::Explicit,
            witnesses: None,
        }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Pairwise adjacency in the host graph, and witness paths (when
    /// present) really are paths of length at most 2 in the base graph.
    pub fn verify(&self, host: &SimpleGraph, base: Option<&SimpleGraph>) -> bool {
        if !is_clique(host, &self.members) {
            return false;
        }
        match (&self.witnesses, base) {
            (Some(map), Some(base)) => self.members.iter().enumerate().all(|(i, &u)| {
                self.members[i + 1..]
                    .iter()
                    .all(|&v| match map.get(&(u.min(v), u.max(v))) {
                        Some(path) => path_connects(base, path, u.min(v), u.max(v)),
                        None => false,
                    })
            }),
            _ => true,
        }
    }
}

fn path_connects(base: &SimpleGraph, path: &[VertexId], u: VertexId, v: VertexId) -> bool {
    if path.first() != Some(&u) || path.last() != Some(&v) {
        return false;
    }
    if path.len() > 3 {
        return false;
    }
    path.windows(2).all(|w| base.has_edge(w[0], w[1]))
}

/// Distance-&le;2 witnesses for a member set in the square of `base`, or
/// None if some pair is further apart.
pub fn square_witnesses(base: &SimpleGraph, members: &[VertexId]) -> Option<WitnessMap> {
    let mut map = WitnessMap::new();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            let (a, b) = (u.min(v), u.max(v));
            if base.has_edge(a, b) {
                map.insert((a, b), vec![a, b]);
                continue;
            }
            let mid = common_neighbor(base, a, b)?;
            map.insert((a, b), vec![a, mid, b]);
        }
    }
    Some(map)
}

fn common_neighbor(g: &SimpleGraph, a: VertexId, b: VertexId) -> Option<VertexId> {
    let (mut i, mut j) = (0, 0);
    let (na, nb) = (g.neighbors(a), g.neighbors(b));
    while i < na.len() && j < nb.len() {
        match na[i].cmp(&nb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(na[i]),
        }
    }
    None
}

/// True iff all pairs in `set` are adjacent in `h`.
pub fn is_clique(h: &SimpleGraph, set: &[VertexId]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| h.has_edge(u, v)))
}

/// Exact maximum clique by branch and bound under a node-expansion budget.
/// Deterministic for a fixed input.
pub fn max_clique_exact(h: &SimpleGraph, budget: u64) -> Result<CliqueCertificate, CliqueError> {
    max_clique_capped(h, budget, usize::MAX).map(|(best, _)| best)
}

/// As `max_clique_exact`, but the search stops as soon as a clique of
/// `cap` vertices is found; the returned flag says whether the cap was hit
/// (in which case the true maximum may be larger).
pub(crate) fn max_clique_capped(
    h: &SimpleGraph,
    budget: u64,
    cap: usize,
) -> Result<(CliqueCertificate, bool), CliqueError> {
    let n = h.vertex_count();
    let rows = h.bit_rows();
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));

    let mut search = Search {
        rows: &rows,
        budget,
        expanded: 0,
        best: Vec::new(),
        cap,
        cap_hit: false,
        exceeded: false,
    };
    let mut current = Vec::new();
    search.expand(&mut current, &order);

    let cert = CliqueCertificate::explicit(search.best);
    if search.exceeded {
        return Err(CliqueError::BudgetExceeded { budget, best: cert });
    }
    Ok((cert, search.cap_hit))
}

struct Search<'a> {
    rows: &'a [Vec<u64>],
    budget: u64,
    expanded: u64,
    best: Vec<VertexId>,
    cap: usize,
    cap_hit: bool,
    exceeded: bool,
}

impl Search<'_> {
    fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    fn expand(&mut self, current: &mut Vec<VertexId>, cands: &[VertexId]) {
        self.expanded += 1;
        if self.expanded > self.budget {
            self.exceeded = true;
            return;
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
            if self.best.len() >= self.cap {
                self.cap_hit = true;
                return;
            }
        }
        if cands.is_empty() {
            return;
        }

        // Greedy coloring of the candidates in their given order; the color
        // of a vertex bounds any clique inside the prefix ending at it.
        let mut classes: Vec<Vec<VertexId>> = Vec::new();
        let mut colored: Vec<(VertexId, usize)> = Vec::with_capacity(cands.len());
        for &v in cands {
            let slot = classes
                .iter()
                .position(|class| class.iter().all(|&u| !self.adjacent(u, v)))
                .unwrap_or_else(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
            classes[slot].push(v);
        }
        for (c, class) in classes.iter().enumerate() {
            for &v in class {
                colored.push((v, c + 1));
            }
        }

        for idx in (0..colored.len()).rev() {
            let (v, color) = colored[idx];
            if current.len() + color <= self.best.len() {
                return;
            }
            current.push(v);
            let next: Vec<VertexId> = colored[..idx]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| self.adjacent(u, v))
                .collect();
            self.expand(current, &next);
            current.pop();
            if self.exceeded || self.cap_hit {
                return;
            }
        }
    }
}

/// Greedily grow a clique to a maximal one, scanning ids in ascending
/// order.  Deterministic; errors if the seed set is not a clique.
pub fn extend_to_maximal(
    h: &SimpleGraph,
    seed: &[VertexId],
) -> Result<CliqueCertificate, CliqueError> {
    if !is_clique(h, seed) {
        return Err(CliqueError::NotAClique);
    }
    let mut members: Vec<VertexId> = seed.to_vec();
    members.sort_unstable();
    for v in 0..h.vertex_count() {
        if members.binary_search(&v).is_ok() {
            continue;
        }
        if members.iter().all(|&u| h.has_edge(u, v)) {
            members.push(v);
            members.sort_unstable();
        }
    }
    Ok(CliqueCertificate::explicit(members))
}

/// Exhaustive subset-enumeration oracle, usable up to roughly n = 20.
/// Exists to check the branch-and-bound solver against the definition.
pub fn max_clique_bruteforce(h: &SimpleGraph) -> Vec<VertexId> {
    let n = h.vertex_count();
    assert!(n <= 20, "brute force is exponential; n = {n}");
    let mut best: Vec<VertexId> = Vec::new();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let set: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if is_clique(h, &set) {
            best = set;
        }
    }
    best
}
