//! Extremal constructions and randomized plane test instances, plus the
//! rotation-format parser and serializer.
//!
//! All randomized generators are deterministic functions of their seed.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::plane_graph::{PlaneGraph, PlaneGraphError, VertexId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] PlaneGraphError),
    #[error("no attachment site with degree below the maximum")]
    CannotPreserveMaxDegree,
}

/// Seeded size parameters for the randomized generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSeed {
    pub seed: u64,
    pub n: usize,
}

/// Neighbors sorted clockwise by angle around each vertex of a straight-line
/// drawing.  The drawings used below are crossing-free by construction, and
/// the Euler check at build time certifies that.
fn plane_from_drawing(points: &[(f64, f64)], edges: &[(usize, usize)]) -> PlaneGraph {
    let n = points.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for (v, list) in nbrs.iter_mut().enumerate() {
        let (px, py) = points[v];
        list.sort_by(|&p, &q| {
            let ap = (points[p].1 - py).atan2(points[p].0 - px);
            let aq = (points[q].1 - py).atan2(points[q].0 - px);
            aq.partial_cmp(&ap).unwrap()
        });
    }
    PlaneGraph::from_rotations(nbrs).expect("drawing is a plane embedding")
}

/// Extremal plane graph of even maximum degree 2s whose square is complete:
/// vertices x, y, z joined by bundles of common neighbors, with x adjacent
/// to y and z directly.  Returns the graph and the defining triple
/// (x, y, z) = (0, 1, 2).
///
/// Order 3s+1, maximum degree exactly 2s at x, y, z, diameter 2.
pub fn wegner_even(s: usize) -> (PlaneGraph, (VertexId, VertexId, VertexId)) {
    assert!(s >= 1, "s must be positive");
    let sf = s as f64;
    let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0), (10.0, 10.0), (10.0, -10.0)];
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2)];
    // s-1 further common neighbors of x and y, fanned below the xy edge.
    for i in 2..=s {
        let t = 4.0 * (i as f64 - 1.0) / sf;
        let id = pts.len();
        pts.push((5.0 + t, 5.0 - t));
        edges.push((0, id));
        edges.push((1, id));
    }
    // s-1 further common neighbors of x and z, mirrored above the xz edge.
    for i in 2..=s {
        let t = 4.0 * (i as f64 - 1.0) / sf;
        let id = pts.len();
        pts.push((5.0 + t, -5.0 + t));
        edges.push((0, id));
        edges.push((2, id));
    }
    // s common neighbors of y and z, nested to the right.
    for i in 1..=s {
        let u = 6.0 * i as f64 / sf;
        let id = pts.len();
        pts.push((10.0 + u, 0.0));
        edges.push((1, id));
        edges.push((2, id));
    }
    (plane_from_drawing(&pts, &edges), (0, 1, 2))
}

/// Odd-degree counterpart: maximum degree D (odd), order floor(3D/2)+1,
/// diameter 2, complete square.  Realized as a path y-x-z with common
/// neighbor classes of sizes s, s, s-1 where D = 2s+1.
pub fn wegner_odd(d: usize) -> (PlaneGraph, (VertexId, VertexId, VertexId)) {
    assert!(d >= 3 && d % 2 == 1, "D must be odd and at least 3");
    let s = (d - 1) / 2;
    let sf = s as f64;
    let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0), (0.0, 10.0), (0.0, -10.0)];
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2)];
    // s common neighbors of y and z, to the right of the path.
    for i in 1..=s {
        let id = pts.len();
        pts.push((6.0 + 4.0 * i as f64 / sf, 0.0));
        edges.push((1, id));
        edges.push((2, id));
    }
    // s common neighbors of x and z, lower left.
    for i in 1..=s {
        let id = pts.len();
        pts.push((-1.0 - 4.0 * i as f64 / sf, -5.0));
        edges.push((0, id));
        edges.push((2, id));
    }
    // s-1 common neighbors of x and y, upper left.
    for i in 1..s {
        let id = pts.len();
        pts.push((-1.0 - 4.0 * i as f64 / sf, 5.0));
        edges.push((0, id));
        edges.push((1, id));
    }
    (plane_from_drawing(&pts, &edges), (0, 1, 2))
}

fn insert_after(list: &mut Vec<usize>, anchor: usize, item: usize) {
    let p = list.iter().position(|&t| t == anchor).unwrap();
    list.insert(p + 1, item);
}

fn grow_triangulation(n: usize, rng: &mut ChaCha8Rng, hub: Option<(usize, usize)>) -> PlaneGraph {
    assert!(n >= 3);
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let fidx = match hub {
            Some((center, count)) if v - 3 < count => {
                let incident: Vec<usize> = (0..faces.len())
                    .filter(|&i| faces[i].contains(&center))
                    .collect();
                incident[rng.gen_range(0..incident.len())]
            }
            _ => rng.gen_range(0..faces.len()),
        };
        let [a, b, c] = faces[fidx];
        insert_after(&mut rot[a], c, v);
        insert_after(&mut rot[b], a, v);
        insert_after(&mut rot[c], b, v);
        rot.push(vec![a, c, b]);
        faces[fidx] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    PlaneGraph::from_rotations(rot).expect("face splitting keeps the embedding valid")
}

/// Random maximal plane graph: n vertices, 3n-6 edges, all faces triangles.
/// Grown from a triangle by inserting each new vertex into a uniformly
/// random triangular face.
pub fn random_triangulation(spec: GenSeed) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    grow_triangulation(spec.n, &mut rng, None)
}

/// Random triangulation whose vertex 0 is forced up to degree `hub_degree`
/// by directing the first insertions into faces incident to it.  Supplies
/// the high-maximum-degree instances the clique-bound checks need.
pub fn hub_triangulation(n: usize, hub_degree: usize, seed: u64) -> PlaneGraph {
    assert!(hub_degree >= 2 && n >= 3 + (hub_degree - 2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grow_triangulation(n, &mut rng, Some((0, hub_degree - 2)))
}

/// Delete each edge independently with probability 1 - keep_prob, keeping
/// the rotation order of the survivors.
pub fn sparsify(g: &PlaneGraph, keep_prob: f64, seed: u64) -> PlaneGraph {
    assert!((0.0..=1.0).contains(&keep_prob));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: HashSet<(usize, usize)> = HashSet::new();
    for (u, v) in g.edges() {
        if rng.gen_bool(keep_prob) {
            kept.insert((u, v));
        }
    }
    let rot = (0..g.vertex_count())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| kept.contains(&(v.min(u), v.max(u))))
                .collect()
        })
        .collect();
    PlaneGraph::from_rotations(rot).expect("edge deletion keeps the embedding valid")
}

/// wegner_even(s) with extra degree-1 vertices attached to vertices whose
/// degree is still below 2s, each embedded in a face at its host.  The
/// maximum degree stays 2s and the original 3s+1 vertices keep pairwise
/// distance at most 2.
pub fn wegner_perturbed(
    s: usize,
    pendants: usize,
    seed: u64,
) -> Result<(PlaneGraph, (VertexId, VertexId, VertexId)), GeneratorError> {
    assert!(s >= 19, "the big clique needs s >= 19 to survive");
    let (g, triple) = wegner_even(s);
    let mut rot: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| g.neighbors(v).to_vec())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pendants {
        let hosts: Vec<usize> = (0..rot.len()).filter(|&v| rot[v].len() < 2 * s).collect();
        if hosts.is_empty() {
            return Err(GeneratorError::CannotPreserveMaxDegree);
        }
        let host = hosts[rng.gen_range(0..hosts.len())];
        let slot = rng.gen_range(0..rot[host].len());
        let p = rot.len();
        rot[host].insert(slot, p);
        rot.push(vec![host]);
    }
    Ok((PlaneGraph::from_rotations(rot)?, triple))
}

/// Canonical text form: "n m" header, then one "v: u1 u2 ... uk" line per
/// vertex giving the clockwise rotation.  Comments start with '#'.
pub fn serialize_rotation(g: &PlaneGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for v in 0..g.vertex_count() {
        out.push_str(&format!("{v}:"));
        for &u in g.neighbors(v) {
            out.push_str(&format!(" {u}"));
        }
        out.push('\n');
    }
    out
}

pub fn parse_rotation(text: &str) -> Result<PlaneGraph, GeneratorError> {
    let syntax = |line: usize, msg: &str| GeneratorError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut rot: Vec<Option<Vec<usize>>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match header {
            None => {
                let toks: Vec<&str> = content.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(syntax(line, "expected header \"n m\""));
                }
                let n: usize = toks[0]
                    .parse()
                    .map_err(|_| syntax(line, "bad vertex count"))?;
                let m: usize = toks[1]
                    .parse()
                    .map_err(|_| syntax(line, "bad edge count"))?;
                header = Some((n, m));
                rot = vec![None; n];
            }
            Some((n, _)) => {
                let Some((head, rest)) = content.split_once(':') else {
                    return Err(syntax(line, "expected \"v: u1 u2 ...\""));
                };
                let v: usize = head
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, "bad vertex id"))?;
                if v >= n {
                    return Err(syntax(line, "vertex id out of range"));
                }
                if rot[v].is_some() {
                    return Err(syntax(line, "duplicate vertex line"));
                }
                let mut nbrs = Vec::new();
                for tok in rest.split_whitespace() {
                    let u: usize = tok.parse().map_err(|_| syntax(line, "bad neighbor id"))?;
                    if u >= n {
                        return Err(syntax(line, "neighbor id out of range"));
                    }
                    nbrs.push(u);
                }
                rot[v] = Some(nbrs);
            }
        }
    }
    let (n, m) = header.ok_or_else(|| syntax(0, "empty input"))?;
    let mut rotations = Vec::with_capacity(n);
    for (v, r) in rot.into_iter().enumerate() {
        rotations.push(r.ok_or_else(|| syntax(0, &format!("missing line for vertex {v}")))?);
    }
    let degree_sum: usize = rotations.iter().map(Vec::len).sum();
    if degree_sum != 2 * m {
        return Err(syntax(
            0,
            &format!("header claims {m} edges, found {}", degree_sum / 2),
        ));
    }
    Ok(PlaneGraph::from_rotations(rotations)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square_ops::SimpleGraph;

    #[test]
    fn wegner_even_small_cases() {
        for s in [1usize, 2, 3, 5] {
            let (g, (x, y, z)) = wegner_even(s);
            assert_eq!(g.vertex_count(), 3 * s + 1);
            assert_eq!(g.max_degree(), 2 * s);
            assert_eq!(g.degree(x), 2 * s);
            assert_eq!(g.degree(y), 2 * s);
            assert_eq!(g.degree(z), 2 * s);
            let simple = SimpleGraph::from_plane(&g);
            assert_eq!(simple.diameter(), Some(2));
            assert!(simple.square().is_complete());
        }
    }

    #[test]
    fn wegner_even_smallest_big_instance() {
        let (g, _) = wegner_even(19);
        assert_eq!(g.vertex_count(), 58);
        assert_eq!(g.max_degree(), 38);
        assert_eq!(g.vertex_count(), g.max_degree() + 20);
    }

    #[test]
    fn wegner_even_class_vertices_stay_small() {
        let (g, _) = wegner_even(7);
        for v in 3..g.vertex_count() {
            assert!(g.degree(v) <= 4);
        }
    }

    #[test]
    fn wegner_odd_cases() {
        for d in [3usize, 5, 9, 37] {
            let (g, _) = wegner_odd(d);
            assert_eq!(g.vertex_count(), 3 * d / 2 + 1);
            assert_eq!(g.max_degree(), d);
            let simple = SimpleGraph::from_plane(&g);
            assert_eq!(simple.diameter(), Some(2));
            assert!(simple.square().is_complete());
        }
        let (g, _) = wegner_odd(5);
        assert_eq!(g.vertex_count(), 8);
        let (g, _) = wegner_odd(37);
        assert_eq!(g.vertex_count(), 56);
    }

    #[test]
    fn triangulation_counts_and_determinism() {
        let g = random_triangulation(GenSeed { seed: 11, n: 4 });
        assert_eq!(g.edge_count(), 6); // K4 regardless of seed
        let g = random_triangulation(GenSeed { seed: 5, n: 50 });
        assert_eq!(g.edge_count(), 144);
        assert!(g.faces().iter().all(|w| w.len() == 3));
        let h = random_triangulation(GenSeed { seed: 5, n: 50 });
        assert_eq!(serialize_rotation(&g), serialize_rotation(&h));
    }

    #[test]
    fn hub_triangulation_reaches_target_degree() {
        let g = hub_triangulation(80, 40, 3);
        assert!(g.degree(0) >= 40);
        assert_eq!(g.edge_count(), 3 * 80 - 6);
    }

    #[test]
    fn sparsify_extremes() {
        let g = random_triangulation(GenSeed { seed: 2, n: 30 });
        assert_eq!(sparsify(&g, 1.0, 9), g);
        let empty = sparsify(&g, 0.0, 9);
        assert_eq!(empty.vertex_count(), 30);
        assert_eq!(empty.edge_count(), 0);
        let half = sparsify(&g, 0.5, 9);
        for (u, v) in half.edges() {
            assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn perturbed_attaches_pendants_without_raising_degree() {
        let (g0, _) = wegner_even(19);
        let (g, _) = wegner_perturbed(19, 0, 4).unwrap();
        assert_eq!(g, g0);
        let (g, _) = wegner_perturbed(19, 5, 4).unwrap();
        assert_eq!(g.vertex_count(), 63);
        assert_eq!(g.max_degree(), 38);
    }

    #[test]
    fn rotation_round_trip() {
        let (g, _) = wegner_even(3);
        let text = serialize_rotation(&g);
        assert_eq!(parse_rotation(&text).unwrap(), g);
    }

    #[test]
    fn rotation_parser_reports_line_numbers() {
        let err = parse_rotation("3 3\n0 1 2\n").unwrap_err();
        match err {
            GeneratorError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
