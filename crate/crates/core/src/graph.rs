//! Plane graph data model: rotation systems, face tracing, short-cycle
//! detection, and triangle enumeration.
//!
//! A graph is given as a *rotation system*: for every vertex, its neighbors
//! listed in clockwise order around the vertex. Faces are recovered by the
//! next-edge rule: after arriving at `v` along the directed edge `(u, v)`,
//! the walk departs toward the neighbor that follows `u` in `v`'s rotation.
//! For a connected plane graph, the traced faces satisfy Euler's formula
//! `V - E + F = 2`; that identity is what `build` uses to reject rotation
//! systems that do not describe a plane embedding.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index: `0 <= v < n` for the owning graph.
pub type VertexId = usize;

// ---------------------------------------------------------------------------
// Adjacency
// ---------------------------------------------------------------------------

/// Plain adjacency structure (sorted neighbor lists), independent of any
/// embedding. Cycle detection and the exact coloring search operate on this,
/// so they also apply to graphs that have no plane embedding at all
/// (useful for oracle test fixtures).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    n: usize,
    lists: Vec<Vec<VertexId>>,
}

impl Adjacency {
    /// Builds from per-vertex neighbor lists in arbitrary order.
    /// Does not validate symmetry; `PlanarGraph::build` does that first.
    pub fn from_rotation(rotation: &[Vec<VertexId>]) -> Adjacency {
        let lists = rotation
            .iter()
            .map(|r| {
                let mut l = r.clone();
                l.sort_unstable();
                l
            })
            .collect();
        Adjacency { n: rotation.len(), lists }
    }

    /// Builds from an undirected edge list.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Adjacency {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            lists[u].push(v);
            lists[v].push(u);
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Adjacency { n, lists }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.lists[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.lists[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.lists[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.lists.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted list of common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let (a, b) = (&self.lists[u], &self.lists[v]);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.lists[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &self.lists[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {v} lists out-of-range neighbor {u}")]
    VertexOutOfRange { v: VertexId, u: VertexId },
    #[error("vertex {v} lists itself as a neighbor")]
    SelfLoop { v: VertexId },
    #[error("vertex {v} lists neighbor {u} more than once")]
    DuplicateNeighbor { v: VertexId, u: VertexId },
    #[error("asymmetric adjacency: {u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: VertexId, v: VertexId },
    #[error("graph is not connected")]
    Disconnected,
    #[error("Euler check failed: V={v} E={e} F={f}, V-E+F={chi} != 2 (rotation system is not a plane embedding)")]
    EulerCheckFailed { v: usize, e: usize, f: usize, chi: i64 },
    #[error("outer_face is not one of the faces traced from the rotation system")]
    OuterFaceNotTraced,
}

// ---------------------------------------------------------------------------
// Face tracing
// ---------------------------------------------------------------------------

/// Traces all faces of a rotation system using the next-edge rule.
///
/// Every directed edge lies on exactly one face walk. A face is reported as
/// the cyclic list of source vertices of its directed edges, starting from
/// the smallest untraced directed edge in `(vertex, rotation position)`
/// order, so the output is deterministic.
///
/// Precondition: the rotation system is simple and symmetric (checked by
/// `PlanarGraph::build` before calling this).
pub fn trace_faces(rotation: &[Vec<VertexId>]) -> Vec<Vec<VertexId>> {
    let n = rotation.len();
    // Position of u within rotation[v], for O(1) successor lookups.
    let pos: Vec<Vec<(VertexId, usize)>> = rotation
        .iter()
        .map(|r| {
            let mut p: Vec<(VertexId, usize)> = r.iter().copied().zip(0..).collect();
            p.sort_unstable();
            p
        })
        .collect();
    let pos_of = |v: VertexId, u: VertexId| -> usize {
        let p = &pos[v];
        p[p.binary_search_by_key(&u, |&(w, _)| w).expect("symmetric rotation")].1
    };

    let mut visited: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for v0 in 0..n {
        for k0 in 0..rotation[v0].len() {
            if visited[v0][k0] {
                continue;
            }
            // Walk the face containing directed edge (v0, rotation[v0][k0]).
            let mut face = Vec::new();
            let (mut v, mut k) = (v0, k0);
            loop {
                visited[v][k] = true;
                face.push(v);
                let w = rotation[v][k];
                // Arrived at w along (v, w): depart toward the successor of v
                // in w's rotation.
                let p = pos_of(w, v);
                let next_k = (p + 1) % rotation[w].len();
                v = w;
                k = next_k;
                if v == v0 && k == k0 {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

/// Canonical form of a directed cyclic walk: the lexicographically smallest
/// rotation (direction preserved — a face walk and its reverse are distinct).
pub fn canonical_face(walk: &[VertexId]) -> Vec<VertexId> {
    if walk.is_empty() {
        return Vec::new();
    }
    let min = *walk.iter().min().unwrap();
    let mut best: Option<Vec<VertexId>> = None;
    for (i, &w) in walk.iter().enumerate() {
        if w != min {
            continue;
        }
        let rot: Vec<VertexId> = walk[i..].iter().chain(walk[..i].iter()).copied().collect();
        if best.as_ref().map_or(true, |b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// Canonical form of an undirected simple cycle: the lexicographically
/// smallest sequence over all rotations and both directions.
pub fn canonical_cycle(cycle: &[VertexId]) -> Vec<VertexId> {
    let forward = canonical_face(cycle);
    let reversed: Vec<VertexId> = cycle.iter().rev().copied().collect();
    let backward = canonical_face(&reversed);
    forward.min(backward)
}

// ---------------------------------------------------------------------------
// PlanarGraph
// ---------------------------------------------------------------------------

/// Serialized form: keys exactly `n`, `rotation`, `outer_face`, in that order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub rotation: Vec<Vec<VertexId>>,
    pub outer_face: Vec<VertexId>,
}

/// A connected simple plane graph: rotation system plus a designated outer
/// face. Immutable after `build`; all derived structure (faces, adjacency)
/// is computed once and cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph {
    n: usize,
    rotation: Vec<Vec<VertexId>>,
    outer_face: Vec<VertexId>,
    faces: Vec<Vec<VertexId>>,
    outer_face_index: usize,
    adjacency: Adjacency,
    /// Per vertex: (neighbor, position in rotation), sorted by neighbor.
    rot_pos: Vec<Vec<(VertexId, usize)>>,
}

impl PlanarGraph {
    /// Validates and assembles a plane graph.
    ///
    /// Checks, in order: non-empty; neighbor ids in range, no self-loops, no
    /// duplicate neighbors; symmetry; connectivity; face trace + Euler's
    /// formula; `outer_face` equals one traced face (as a directed cyclic
    /// sequence, up to rotation).
    pub fn build(
        n: usize,
        rotation: Vec<Vec<VertexId>>,
        outer_face: Vec<VertexId>,
    ) -> Result<PlanarGraph, GraphError> {
        if n == 0 || rotation.len() != n {
            return Err(GraphError::Empty);
        }
        for (v, list) in rotation.iter().enumerate() {
            let mut seen = Vec::with_capacity(list.len());
            for &u in list {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange { v, u });
                }
                if u == v {
                    return Err(GraphError::SelfLoop { v });
                }
                if seen.contains(&u) {
                    return Err(GraphError::DuplicateNeighbor { v, u });
                }
                seen.push(u);
            }
        }
        let adjacency = Adjacency::from_rotation(&rotation);
        for (v, list) in rotation.iter().enumerate() {
            for &u in list {
                if !adjacency.has_edge(u, v) {
                    return Err(GraphError::Asymmetric { u: v, v: u });
                }
            }
        }
        if !adjacency.is_connected() {
            return Err(GraphError::Disconnected);
        }

        let (faces, outer_face_index) = if n == 1 {
            // A single vertex has one (unbounded) face containing it.
            if outer_face != vec![0] {
                return Err(GraphError::OuterFaceNotTraced);
            }
            (vec![vec![0]], 0)
        } else {
            let faces = trace_faces(&rotation);
            let e = adjacency.edge_count();
            let f = faces.len();
            let chi = n as i64 - e as i64 + f as i64;
            if chi != 2 {
                return Err(GraphError::EulerCheckFailed { v: n, e, f, chi });
            }
            if outer_face.is_empty() {
                return Err(GraphError::OuterFaceNotTraced);
            }
            let target = canonical_face(&outer_face);
            let idx = faces
                .iter()
                .position(|f| f.len() == outer_face.len() && canonical_face(f) == target)
                .ok_or(GraphError::OuterFaceNotTraced)?;
            (faces, idx)
        };

        let rot_pos = rotation
            .iter()
            .map(|r| {
                let mut p: Vec<(VertexId, usize)> = r.iter().copied().zip(0..).collect();
                p.sort_unstable();
                p
            })
            .collect();

        Ok(PlanarGraph { n, rotation, outer_face, faces, outer_face_index, adjacency, rot_pos })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rotation(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    pub fn rotation_of(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    /// The outer face walk exactly as supplied to `build`.
    pub fn outer_face(&self) -> &[VertexId] {
        &self.outer_face
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn outer_face_index(&self) -> usize {
        self.outer_face_index
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adjacency.neighbors(v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency.degree(v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency.has_edge(u, v)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.edge_count()
    }

    /// Position of neighbor `u` within `v`'s rotation, if adjacent.
    pub fn position_in_rotation(&self, v: VertexId, u: VertexId) -> Option<usize> {
        let p = &self.rot_pos[v];
        p.binary_search_by_key(&u, |&(w, _)| w).ok().map(|i| p[i].1)
    }

    /// True if `v` appears on the outer face walk.
    pub fn on_outer_face(&self, v: VertexId) -> bool {
        self.outer_face.contains(&v)
    }

    /// Canonical compact JSON (`n`, `rotation`, `outer_face` in that order).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            rotation: self.rotation.clone(),
            outer_face: self.outer_face.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_graph_json(gj: GraphJson) -> Result<PlanarGraph, GraphError> {
        PlanarGraph::build(gj.n, gj.rotation, gj.outer_face)
    }
}

// ---------------------------------------------------------------------------
// Triangles
// ---------------------------------------------------------------------------

/// A triangle in canonical (sorted) vertex order: `a < b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
}

impl Triangle {
    pub fn new(x: VertexId, y: VertexId, z: VertexId) -> Triangle {
        let mut t = [x, y, z];
        t.sort_unstable();
        Triangle { a: t[0], b: t[1], c: t[2] }
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        [self.a, self.b, self.c]
    }

    pub fn edges(&self) -> [(VertexId, VertexId); 3] {
        [(self.a, self.b), (self.a, self.c), (self.b, self.c)]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    /// The vertex of the triangle other than the two given endpoints.
    pub fn apex(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        let vs = self.vertices();
        if !vs.contains(&u) || !vs.contains(&v) || u == v {
            return None;
        }
        vs.iter().copied().find(|&w| w != u && w != v)
    }
}

/// All triangles of the graph, each once, in ascending canonical order.
pub fn triangles_in(adj: &Adjacency) -> Vec<Triangle> {
    let mut out = Vec::new();
    for v in 0..adj.n() {
        let nb = adj.neighbors(v);
        for (i, &x) in nb.iter().enumerate() {
            if x <= v {
                continue;
            }
            for &y in &nb[i + 1..] {
                if adj.has_edge(x, y) {
                    out.push(Triangle::new(v, x, y));
                }
            }
        }
    }
    out
}

pub fn triangles_of(g: &PlanarGraph) -> Vec<Triangle> {
    triangles_in(g.adjacency())
}

/// Triangles containing the edge `(u, v)`, ascending by apex.
pub fn triangles_on_edge(adj: &Adjacency, u: VertexId, v: VertexId) -> Vec<Triangle> {
    adj.common_neighbors(u, v).into_iter().map(|w| Triangle::new(u, v, w)).collect()
}

/// All pairs of distinct triangles sharing an edge (two triangles can share
/// at most one edge), each pair once with the smaller triangle first.
pub fn adjacent_triangle_pairs_in(adj: &Adjacency) -> Vec<(Triangle, Triangle)> {
    let mut by_edge: std::collections::BTreeMap<(VertexId, VertexId), Vec<Triangle>> =
        std::collections::BTreeMap::new();
    for t in triangles_in(adj) {
        for e in t.edges() {
            by_edge.entry(e).or_default().push(t);
        }
    }
    let mut out = Vec::new();
    for (_, ts) in by_edge {
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                out.push((ts[i], ts[j]));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn adjacent_triangle_pairs(g: &PlanarGraph) -> Vec<(Triangle, Triangle)> {
    adjacent_triangle_pairs_in(g.adjacency())
}

// ---------------------------------------------------------------------------
// Short cycles
// ---------------------------------------------------------------------------

/// Report of forbidden short cycles. An empty report certifies that the
/// graph belongs to the working class (no 4-cycles, no 5-cycles; in strict
/// mode 6-cycles are also excluded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    /// One canonical representative per cycle vertex set, sorted.
    pub cycles: Vec<Vec<VertexId>>,
}

impl CycleReport {
    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// Finds every cycle of length 4 or 5 (and 6 when `include_six`), reported
/// as one canonical representative per vertex set, in ascending order.
///
/// Enumeration: for each vertex `s`, DFS over simple paths whose interior
/// vertices all exceed `s`, closing back to `s`. Depth is bounded by the
/// largest target length, so the cost is O(V * Delta^4) (Delta^5 with six).
pub fn short_cycles_in(adj: &Adjacency, include_six: bool) -> CycleReport {
    let max_len = if include_six { 6 } else { 5 };
    let mut found: std::collections::BTreeMap<Vec<VertexId>, Vec<VertexId>> =
        std::collections::BTreeMap::new();
    let mut path: Vec<VertexId> = Vec::with_capacity(max_len);
    let mut on_path = vec![false; adj.n()];

    fn dfs(
        adj: &Adjacency,
        s: VertexId,
        path: &mut Vec<VertexId>,
        on_path: &mut [bool],
        max_len: usize,
        found: &mut std::collections::BTreeMap<Vec<VertexId>, Vec<VertexId>>,
    ) {
        let v = *path.last().unwrap();
        if path.len() >= 4 && adj.has_edge(v, s) {
            let mut key = path.clone();
            key.sort_unstable();
            let canon = canonical_cycle(path);
            found
                .entry(key)
                .and_modify(|c| {
                    if canon < *c {
                        *c = canon.clone();
                    }
                })
                .or_insert(canon);
        }
        if path.len() == max_len {
            return;
        }
        for &w in adj.neighbors(v) {
            if w > s && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                dfs(adj, s, path, on_path, max_len, found);
                on_path[w] = false;
                path.pop();
            }
        }
    }

    for s in 0..adj.n() {
        path.clear();
        path.push(s);
        on_path[s] = true;
        dfs(adj, s, &mut path, &mut on_path, max_len, &mut found);
        on_path[s] = false;
    }

    CycleReport { cycles: found.into_values().collect() }
}

/// 4-/5-cycle report for an embedded graph (see `short_cycles_in`).
pub fn find_short_cycles(g: &PlanarGraph) -> CycleReport {
    short_cycles_in(g.adjacency(), false)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
