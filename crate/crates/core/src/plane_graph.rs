//! Plane graphs as rotation systems.
//!
//! A plane graph is stored as one cyclic neighbor list per vertex (the
//! clockwise order in which edges leave the vertex).  That combinatorial
//! data determines the faces of the embedding, so planarity of the given
//! embedding is certified at construction time by checking Euler's formula
//! on every connected component.  All mutating operations return new graphs;
//! values are never modified in place.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

/// Dense vertex index, valid for the graph that produced it.  Indices are
/// stable until a mutating operation returns a new graph together with an
/// explicit remapping.
pub type VertexId = usize;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PlaneGraphError {
    #[error("adjacency is not symmetric: {0} lists {1} but not vice versa")]
    AsymmetricAdjacency(VertexId, VertexId),
    #[error("vertex {0} has a self-entry or a repeated rotation entry")]
    SelfLoopOrMultiEdge(VertexId),
    #[error("rotation system is not a plane embedding: component of vertex {vertex} has n={n}, m={m}, f={f}")]
    NonPlanarEmbedding {
        vertex: VertexId,
        n: usize,
        m: usize,
        f: usize,
    },
    #[error("vertex index {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(VertexId, usize),
    #[error("{0} and {1} are not joined by an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("vertex {0} lies on the cycle")]
    VertexOnCycle(VertexId),
    #[error("not a cycle: {0}")]
    InvalidCycle(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Simple plane graph given by its rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: Vec<Vec<VertexId>>,
}

/// One face of the embedding: the cyclic sequence of directed edges traced
/// by the rule "after entering v along (u, v), leave along the successor of
/// u in rotation(v)".  Every directed edge of the graph lies on exactly one
/// face walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    edges: Vec<(VertexId, VertexId)>,
}

impl FaceWalk {
    /// Number of edge-sides on the walk.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Vertices in walk order (tails of the directed edges).  A vertex may
    /// appear more than once, e.g. on the single face of a tree.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.edges.iter().map(|e| e.0)
    }
}

/// A cycle in a plane graph: at least three distinct vertices, cyclically
/// consecutive ones adjacent.  Constructed against a specific graph so the
/// adjacency invariant is established once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    vertices: Vec<VertexId>,
}

impl CycleSpec {
    pub fn new(graph: &PlaneGraph, vertices: Vec<VertexId>) -> Result<Self, PlaneGraphError> {
        if vertices.len() < 3 {
            return Err(PlaneGraphError::InvalidCycle(format!(
                "cycle needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let mut seen = HashSet::new();
        for &v in &vertices {
            graph.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(PlaneGraphError::InvalidCycle(format!(
                    "vertex {v} repeated"
                )));
            }
        }
        for i in 0..vertices.len() {
            let u = vertices[i];
            let w = vertices[(i + 1) % vertices.len()];
            if !graph.has_edge(u, w) {
                return Err(PlaneGraphError::InvalidCycle(format!(
                    "consecutive vertices {u} and {w} are not adjacent"
                )));
            }
        }
        Ok(CycleSpec { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

impl PlaneGraph {
    /// Build a plane graph from per-vertex clockwise neighbor lists.
    ///
    /// Checks symmetry, simplicity, and Euler consistency of every
    /// connected component (the genus-0 certificate).
    pub fn from_rotations(rotations: Vec<Vec<VertexId>>) -> Result<Self, PlaneGraphError> {
        let g = PlaneGraph {
            rotation: rotations,
        };
        g.validate()?;
        Ok(g)
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    /// Number of (undirected) edges.
    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Clockwise neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rotation[u].contains(&v)
    }

    /// Undirected edges as (min, max) pairs in ascending order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, nbrs) in self.rotation.iter().enumerate() {
            for &u in nbrs {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), PlaneGraphError> {
        if v >= self.rotation.len() {
            return Err(PlaneGraphError::VertexOutOfRange(v, self.rotation.len()));
        }
        Ok(())
    }

    /// Re-checks all three type invariants.  Cheap enough to run eagerly on
    /// construction; mutating operations re-run it in debug builds only.
    pub fn validate(&self) -> Result<(), PlaneGraphError> {
        let n = self.rotation.len();
        for (v, nbrs) in self.rotation.iter().enumerate() {
            let mut seen = HashSet::with_capacity(nbrs.len());
            for &u in nbrs {
                if u >= n {
                    return Err(PlaneGraphError::VertexOutOfRange(u, n));
                }
                if u == v || !seen.insert(u) {
                    return Err(PlaneGraphError::SelfLoopOrMultiEdge(v));
                }
            }
        }
        for (v, nbrs) in self.rotation.iter().enumerate() {
            for &u in nbrs {
                if !self.rotation[u].contains(&v) {
                    return Err(PlaneGraphError::AsymmetricAdjacency(v, u));
                }
            }
        }
        // Euler consistency per connected component.
        let comp = self.component_labels();
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut nc = vec![0usize; ncomp];
        let mut mc = vec![0usize; ncomp];
        let mut fc = vec![0usize; ncomp];
        for v in 0..n {
            nc[comp[v]] += 1;
            mc[comp[v]] += self.rotation[v].len();
        }
        for m in mc.iter_mut() {
            *m /= 2;
        }
        for walk in self.faces() {
            fc[comp[walk.edges[0].0]] += 1;
        }
        for c in 0..ncomp {
            if mc[c] == 0 {
                continue; // isolated vertex, trivially embeddable
            }
            if nc[c] + fc[c] != mc[c] + 2 {
                let vertex = (0..n).find(|&v| comp[v] == c).unwrap();
                return Err(PlaneGraphError::NonPlanarEmbedding {
                    vertex,
                    n: nc[c],
                    m: mc[c],
                    f: fc[c],
                });
            }
        }
        Ok(())
    }

    fn component_labels(&self) -> Vec<usize> {
        let n = self.rotation.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.rotation[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = next;
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// All face walks of the embedding.  Every directed edge appears on
    /// exactly one walk, so the lengths sum to 2m.  Each walk starts at its
    /// lexicographically smallest directed edge and the list is sorted by
    /// that edge, which makes the output deterministic.
    pub fn faces(&self) -> Vec<FaceWalk> {
        let pos: Vec<HashMap<VertexId, usize>> = self
            .rotation
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &u)| (u, i)).collect())
            .collect();
        let mut darts: Vec<(VertexId, VertexId)> = Vec::new();
        for (v, nbrs) in self.rotation.iter().enumerate() {
            for &u in nbrs {
                darts.push((v, u));
            }
        }
        darts.sort_unstable();
        let mut seen: HashSet<(VertexId, VertexId)> = HashSet::with_capacity(darts.len());
        let mut walks = Vec::new();
        for &start in &darts {
            if seen.contains(&start) {
                continue;
            }
            let mut edges = Vec::new();
            let (mut u, mut v) = start;
            loop {
                edges.push((u, v));
                seen.insert((u, v));
                let i = pos[v][&u];
                let w = self.rotation[v][(i + 1) % self.rotation[v].len()];
                u = v;
                v = w;
                if (u, v) == start {
                    break;
                }
            }
            walks.push(FaceWalk { edges });
        }
        walks
    }

    /// Contract the edge vw, merging v into w.  The merged vertex keeps w's
    /// id; v's id is recycled by swapping in the last vertex.  Returns the
    /// new graph, the old-to-new id mapping (None for the vanished v), and
    /// the id of the merged vertex.
    ///
    /// The rotation of the merged vertex splices v's fan into w's list at
    /// the position of the contracted edge; edges from v to common neighbors
    /// of v and w are dropped first so the result stays simple.  The merged
    /// degree is therefore at most d(v)+d(w)-2, and distances between
    /// surviving vertices never increase.
    pub fn contract_edge(
        &self,
        v: VertexId,
        w: VertexId,
    ) -> Result<(PlaneGraph, Vec<Option<VertexId>>, VertexId), PlaneGraphError> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w || !self.has_edge(v, w) {
            return Err(PlaneGraphError::NotAnEdge(v, w));
        }
        let n = self.rotation.len();
        let mut rot = self.rotation.clone();

        let wset: HashSet<VertexId> = rot[w].iter().copied().collect();
        let common: Vec<VertexId> = rot[v]
            .iter()
            .copied()
            .filter(|&u| u != w && wset.contains(&u))
            .collect();
        for &u in &common {
            rot[v].retain(|&t| t != u);
            rot[u].retain(|&t| t != v);
        }

        let pv = rot[v].iter().position(|&t| t == w).unwrap();
        let seq: Vec<VertexId> = rot[v][pv + 1..]
            .iter()
            .chain(rot[v][..pv].iter())
            .copied()
            .collect();
        let pw = rot[w].iter().position(|&t| t == v).unwrap();
        rot[w].splice(pw..pw + 1, seq.iter().copied());
        for &u in &seq {
            let p = rot[u].iter().position(|&t| t == v).unwrap();
            rot[u][p] = w;
        }
        rot[v].clear();

        let last = n - 1;
        let mut mapping: Vec<Option<VertexId>> = (0..n).map(Some).collect();
        mapping[v] = None;
        if v != last {
            rot.swap(v, last);
            for r in rot.iter_mut() {
                for t in r.iter_mut() {
                    if *t == last {
                        *t = v;
                    }
                }
            }
            mapping[last] = Some(v);
        }
        rot.pop();

        let merged = mapping[w].unwrap();
        let g = PlaneGraph { rotation: rot };
        debug_assert!(g.validate().is_ok(), "contraction broke the embedding");
        Ok((g, mapping, merged))
    }

    /// Remove a vertex (with all incident edges), recycling its id by
    /// swapping in the last vertex.  Returns the new graph and the
    /// old-to-new id mapping.
    pub fn delete_vertex(
        &self,
        v: VertexId,
    ) -> Result<(PlaneGraph, Vec<Option<VertexId>>), PlaneGraphError> {
        self.check_vertex(v)?;
        let n = self.rotation.len();
        let mut rot = self.rotation.clone();
        for &u in &self.rotation[v] {
            rot[u].retain(|&t| t != v);
        }
        rot[v].clear();
        let last = n - 1;
        let mut mapping: Vec<Option<VertexId>> = (0..n).map(Some).collect();
        mapping[v] = None;
        if v != last {
            rot.swap(v, last);
            for r in rot.iter_mut() {
                for t in r.iter_mut() {
                    if *t == last {
                        *t = v;
                    }
                }
            }
            mapping[last] = Some(v);
        }
        rot.pop();
        let g = PlaneGraph { rotation: rot };
        debug_assert!(g.validate().is_ok());
        Ok((g, mapping))
    }

    /// True iff a and b lie in distinct connected components of G - V(C).
    pub fn cycle_separates(
        &self,
        cycle: &CycleSpec,
        a: VertexId,
        b: VertexId,
    ) -> Result<bool, PlaneGraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        for &v in &[a, b] {
            if cycle.contains(v) {
                return Err(PlaneGraphError::VertexOnCycle(v));
            }
        }
        if a == b {
            return Ok(false);
        }
        let mut blocked = vec![false; self.rotation.len()];
        for &v in cycle.vertices() {
            blocked[v] = true;
        }
        let mut seen = vec![false; self.rotation.len()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.rotation[v] {
                if !blocked[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        Ok(!seen[b])
    }

    /// Given two cycles that each separate a from b, return a common
    /// neighbor of a and b (which then necessarily lies on both cycles), or
    /// None when dist(a, b) >= 3.  The smallest qualifying id is returned.
    pub fn common_neighbor_on_separating_cycles(
        &self,
        c1: &CycleSpec,
        c2: &CycleSpec,
        a: VertexId,
        b: VertexId,
    ) -> Result<Option<VertexId>, PlaneGraphError> {
        for (i, c) in [c1, c2].into_iter().enumerate() {
            let sep = match self.cycle_separates(c, a, b) {
                Ok(s) => s,
                Err(PlaneGraphError::VertexOnCycle(v)) => {
                    return Err(PlaneGraphError::PreconditionViolated(format!(
                        "vertex {v} lies on cycle {}",
                        i + 1
                    )))
                }
                Err(e) => return Err(e),
            };
            if !sep {
                return Err(PlaneGraphError::PreconditionViolated(format!(
                    "cycle {} does not separate {a} from {b}",
                    i + 1
                )));
            }
        }
        let na: HashSet<VertexId> = self.rotation[a].iter().copied().collect();
        let mut common: Vec<VertexId> = self.rotation[b]
            .iter()
            .copied()
            .filter(|u| na.contains(u))
            .collect();
        if common.is_empty() {
            // a, b separated and without common neighbors: dist >= 3.
            return Ok(None);
        }
        common.sort_unstable();
        // Separation forces every common neighbor onto both cycles.
        debug_assert!(common.iter().all(|&z| c1.contains(z) && c2.contains(z)));
        Ok(Some(common[0]))
    }

    /// Add chords until no vertex of degree at most 10 lies on a face of
    /// length at least 4 that still admits a new chord at it.  Faces are
    /// processed in ascending (lowest vertex id, length) order; within a
    /// face the chord goes from the first eligible vertex to the nearest
    /// vertex ahead on the walk that is not already adjacent to it.  The
    /// input is a subgraph of the output and the output is again plane.
    pub fn diagonalize(&self) -> PlaneGraph {
        let mut rot = self.rotation.clone();
        let mut work: BTreeSet<FaceKey> = BTreeSet::new();
        for walk in self.faces() {
            if walk.len() >= 4 {
                work.insert(face_key(walk.edges));
            }
        }
        while let Some((_, _, walk)) = work.pop_first() {
            let Some((i, j)) = find_chord(&rot, &walk) else {
                // Ineligibility is monotone under chord addition, so this
                // face can be dropped for good.
                continue;
            };
            let l = walk.len();
            let w = walk[i].0;
            let u = walk[j].0;
            let a = walk[(i + l - 1) % l].0;
            let c = walk[(j + l - 1) % l].0;
            let pa = rot[w].iter().position(|&t| t == a).unwrap();
            rot[w].insert(pa + 1, u);
            let pc = rot[u].iter().position(|&t| t == c).unwrap();
            rot[u].insert(pc + 1, w);
            // The chord splits the face into [e_j .. e_{i-1}, w->u] and
            // [e_i .. e_{j-1}, u->w].
            let mut f1 = Vec::new();
            let mut t = j;
            while t != i {
                f1.push(walk[t]);
                t = (t + 1) % l;
            }
            f1.push((w, u));
            let mut f2 = Vec::new();
            t = i;
            while t != j {
                f2.push(walk[t]);
                t = (t + 1) % l;
            }
            f2.push((u, w));
            for f in [f1, f2] {
                if f.len() >= 4 {
                    work.insert(face_key(rotate_to_min(f)));
                }
            }
        }
        let g = PlaneGraph { rotation: rot };
        debug_assert!(g.validate().is_ok(), "diagonalize broke the embedding");
        g
    }

    /// Single-source BFS distances (None where unreachable).
    pub fn bfs_distances(&self, src: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.rotation.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &u in &self.rotation[v] {
                if dist[u].is_none() {
                    dist[u] = Some(dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Canonical encoding of a connected plane graph, invariant under
    /// relabeling and reflection.  Two connected plane graphs are isomorphic
    /// as embedded graphs (up to mirror image) iff their codes are equal.
    pub fn canonical_code(&self) -> Vec<usize> {
        assert!(
            self.component_labels().iter().all(|&c| c == 0),
            "canonical_code requires a connected graph"
        );
        let mirrored = PlaneGraph {
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
        };
        let mut best: Option<Vec<usize>> = None;
        for g in [self, &mirrored] {
            for v in 0..g.rotation.len() {
                for &u in &g.rotation[v] {
                    let code = g.code_from((v, u));
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }

    fn code_from(&self, start: (VertexId, VertexId)) -> Vec<usize> {
        let n = self.rotation.len();
        let mut label = vec![usize::MAX; n];
        let mut entry = vec![usize::MAX; n]; // neighbor through which a vertex was first reached
        let mut order = Vec::with_capacity(n);
        label[start.0] = 0;
        entry[start.0] = start.1;
        order.push(start.0);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let rot = &self.rotation[v];
            let e = rot.iter().position(|&t| t == entry[v]).unwrap();
            for k in 0..rot.len() {
                let u = rot[(e + k) % rot.len()];
                if label[u] == usize::MAX {
                    label[u] = order.len();
                    entry[u] = v;
                    order.push(u);
                }
            }
        }
        let mut code = Vec::new();
        for &v in &order {
            let rot = &self.rotation[v];
            let e = rot.iter().position(|&t| t == entry[v]).unwrap();
            for k in 0..rot.len() {
                code.push(label[rot[(e + k) % rot.len()]]);
            }
            code.push(usize::MAX);
        }
        code
    }
}

/// Worklist ordering for `diagonalize`: (lowest vertex id, length, walk).
type FaceKey = (VertexId, usize, Vec<(VertexId, VertexId)>);

fn face_key(walk: Vec<(VertexId, VertexId)>) -> FaceKey {
    (walk[0].0, walk.len(), walk)
}

fn rotate_to_min(walk: Vec<(VertexId, VertexId)>) -> Vec<(VertexId, VertexId)> {
    let k = walk
        .iter()
        .enumerate()
        .min_by_key(|(_, e)| *e)
        .map(|(i, _)| i)
        .unwrap();
    let mut out = Vec::with_capacity(walk.len());
    out.extend_from_slice(&walk[k..]);
    out.extend_from_slice(&walk[..k]);
    out
}

fn find_chord(rot: &[Vec<VertexId>], walk: &[(VertexId, VertexId)]) -> Option<(usize, usize)> {
    let l = walk.len();
    for i in 0..l {
        let w = walk[i].0;
        if rot[w].len() > 10 {
            continue;
        }
        for off in 2..=l - 2 {
            let j = (i + off) % l;
            let u = walk[j].0;
            if u == w || rot[w].contains(&u) {
                continue;
            }
            return Some((i, j));
        }
    }
    None
}

/// Build a plane graph from a coherently oriented list of face cycles: each
/// directed edge must appear in exactly one face cycle.  Convenient for
/// writing down fixed embeddings (platonic solids and the like) in tests
/// and generators.
pub fn from_directed_faces(n: usize, faces: &[&[VertexId]]) -> Result<PlaneGraph, PlaneGraphError> {
    let mut succ: Vec<HashMap<VertexId, VertexId>> = vec![HashMap::new(); n];
    for face in faces {
        let k = face.len();
        for t in 0..k {
            let u = face[t];
            let v = face[(t + 1) % k];
            let w = face[(t + 2) % k];
            if v >= n {
                return Err(PlaneGraphError::VertexOutOfRange(v, n));
            }
            if succ[v].insert(u, w).is_some() {
                return Err(PlaneGraphError::PreconditionViolated(format!(
                    "face list not coherent at vertex {v}"
                )));
            }
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (v, vsucc) in succ.iter().enumerate() {
        let mut rot = Vec::with_capacity(vsucc.len());
        if let Some((&first, _)) = vsucc.iter().min_by_key(|(&u, _)| u) {
            let mut cur = first;
            loop {
                rot.push(cur);
                cur = *vsucc.get(&cur).ok_or_else(|| {
                    PlaneGraphError::PreconditionViolated(format!(
                        "face list not coherent at vertex {v}"
                    ))
                })?;
                if cur == first {
                    break;
                }
                if rot.len() > vsucc.len() {
                    return Err(PlaneGraphError::PreconditionViolated(format!(
                        "rotation at vertex {v} is not a single cycle"
                    )));
                }
            }
        }
        if rot.len() != vsucc.len() {
            return Err(PlaneGraphError::PreconditionViolated(format!(
                "rotation at vertex {v} is not a single cycle"
            )));
        }
        rotation.push(rot);
    }
    PlaneGraph::from_rotations(rotation)
}
