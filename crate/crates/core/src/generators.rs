//! Instance builders: fixed worst-case gadgets and a seeded random generator
//! for embedded planar graphs with no 4- or 5-cycles.
//!
//! The random generator grows a graph inside its own embedding: starting
//! from a hexagon, each step either attaches a triangle apex over a face
//! edge or threads a path of two to four new vertices between two face
//! vertices. A mutation is accepted only if every cycle it creates has
//! length 3 or at least 6, which reduces to local distance conditions on
//! the touched vertices; rotation lists and the face inventory are updated
//! in place, so the result carries a valid embedding by construction and is
//! never re-tested for planarity.

use crate::graph::{trace_faces, Adjacency, GraphJson, PlanarGraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

// ---------------------------------------------------------------------------
// Instance envelope
// ---------------------------------------------------------------------------

/// Where an instance came from: a numeric RNG seed or a named gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seed {
    Value(u64),
    Gadget(String),
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Seed::Value(v) => s.serialize_u64(*v),
            Seed::Gadget(name) => s.serialize_str(&format!("gadget:{name}")),
        }
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Seed;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an unsigned integer or a \"gadget:<name>\" string")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Seed, E> {
                Ok(Seed::Value(v))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Seed, E> {
                v.strip_prefix("gadget:")
                    .map(|name| Seed::Gadget(name.to_owned()))
                    .ok_or_else(|| E::custom("seed string must start with \"gadget:\""))
            }
        }
        d.deserialize_any(V)
    }
}

/// Generator name and parameters, enough to rebuild the instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: serde_json::Map<String, serde_json::Value>,
}

/// A generated graph with its reproduction recipe.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: PlanarGraph,
    pub seed: Seed,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    rotation: Vec<Vec<VertexId>>,
    outer_face: Vec<VertexId>,
    seed: Seed,
    provenance: Provenance,
}

impl Instance {
    pub fn to_json(&self) -> String {
        let j = InstanceJson {
            n: self.graph.n(),
            rotation: self.graph.rotation().to_vec(),
            outer_face: self.graph.outer_face().to_vec(),
            seed: self.seed.clone(),
            provenance: self.provenance.clone(),
        };
        serde_json::to_string(&j).expect("instance serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Instance, GenError> {
        let j: InstanceJson =
            serde_json::from_str(s).map_err(|e| GenError::Malformed(e.to_string()))?;
        let graph = PlanarGraph::from_graph_json(GraphJson {
            n: j.n,
            rotation: j.rotation,
            outer_face: j.outer_face,
        })
        .map_err(|e| GenError::Malformed(e.to_string()))?;
        Ok(Instance { graph, seed: j.seed, provenance: j.provenance })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("cannot generate a graph on {0} vertices; at least 3 are required")]
    TooFewVertices(usize),
    #[error("the hexagon gadget supports at most 6 attached triangles, got {0}")]
    TooManyTriangles(usize),
    #[error("generation stuck: no admissible mutation reaches {n} vertices after {attempts} restarts")]
    Stuck { n: usize, attempts: u32 },
    #[error("generated graph failed validation: {0}")]
    Internal(String),
    #[error("malformed instance: {0}")]
    Malformed(String),
}

// ---------------------------------------------------------------------------
// Gadgets
// ---------------------------------------------------------------------------

fn instance_from_rotation(
    rotation: Vec<Vec<VertexId>>,
    name: &str,
    params: serde_json::Map<String, serde_json::Value>,
) -> Instance {
    let outer = pick_outer_face(&rotation);
    let graph = PlanarGraph::build(rotation.len(), rotation, outer)
        .expect("gadget construction is valid by design");
    Instance {
        graph,
        seed: Seed::Gadget(name.to_owned()),
        provenance: Provenance { generator: name.to_owned(), params },
    }
}

/// The unbounded face of a fixed construction: the longest traced face,
/// ties broken by smallest canonical form.
fn pick_outer_face(rotation: &[Vec<VertexId>]) -> Vec<VertexId> {
    let faces = trace_faces(rotation);
    faces
        .into_iter()
        .max_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| crate::graph::canonical_face(b).cmp(&crate::graph::canonical_face(a)))
        })
        .expect("a valid rotation system traces at least one face")
}

/// Hexagon 0..5 with `t` triangle apexes attached outside, apex `6+i` over
/// hexagon edge (i, i+1). `t = 6` is the worst case forcing red on every
/// apex; smaller `t` gives the family obtained by removing apexes.
pub fn hexagon_triangles(t: usize) -> Result<Instance, GenError> {
    if t > 6 {
        return Err(GenError::TooManyTriangles(t));
    }
    let mut rotation: Vec<Vec<VertexId>> = Vec::with_capacity(6 + t);
    for i in 0..6 {
        let mut r = Vec::new();
        let apex_before = (i + 5) % 6; // apex over edge (i-1, i), if present
        if apex_before < t {
            r.push(6 + apex_before);
        }
        if i < t {
            r.push(6 + i);
        }
        r.push((i + 1) % 6);
        r.push((i + 5) % 6);
        rotation.push(r);
    }
    for a in 0..t {
        rotation.push(vec![a, (a + 1) % 6]);
    }
    let name =
        if t == 6 { "hexagon_triangles".to_owned() } else { format!("hexagon_triangles_t{t}") };
    let mut params = serde_json::Map::new();
    params.insert("t".to_owned(), t.into());
    Ok(instance_from_rotation(rotation, &name, params))
}

/// The full six-triangle hexagon gadget.
pub fn gadget_hexagon_triangles() -> Instance {
    hexagon_triangles(6).expect("t = 6 is in range")
}

/// Hub vertex 0 joined to one vertex of each of three disjoint triangles
/// {1,2,3}, {4,5,6}, {7,8,9} (joined at 3, 6, 9). Exercises the forcing
/// argument that pushes one color onto all three joined vertices.
pub fn gadget_three_triangles_hub() -> Instance {
    let rotation: Vec<Vec<VertexId>> = vec![
        vec![3, 6, 9],
        vec![2, 3],
        vec![3, 1],
        vec![1, 2, 0],
        vec![5, 6],
        vec![6, 4],
        vec![4, 5, 0],
        vec![8, 9],
        vec![9, 7],
        vec![7, 8, 0],
    ];
    instance_from_rotation(rotation, "three_triangles_hub", serde_json::Map::new())
}

/// Looks up a gadget by the name used in seeds and provenance.
pub fn gadget_by_name(name: &str) -> Option<Instance> {
    match name {
        "hexagon_triangles" => Some(gadget_hexagon_triangles()),
        "three_triangles_hub" => Some(gadget_three_triangles_hub()),
        _ => {
            let t: usize = name.strip_prefix("hexagon_triangles_t")?.parse().ok()?;
            if t < 6 {
                hexagon_triangles(t).ok()
            } else {
                None
            }
        }
    }
}

pub fn gadget_names() -> Vec<String> {
    let mut names = vec!["hexagon_triangles".to_owned(), "three_triangles_hub".to_owned()];
    for t in 0..6 {
        names.push(format!("hexagon_triangles_t{t}"));
    }
    names
}

// ---------------------------------------------------------------------------
// Random growth
// ---------------------------------------------------------------------------

/// Graph under construction: rotation lists, neighbor sets, and the live
/// face inventory (index `outer_idx` is the unbounded face).
struct Growth {
    rotation: Vec<Vec<VertexId>>,
    adj: Vec<BTreeSet<VertexId>>,
    faces: Vec<Vec<VertexId>>,
    outer_idx: usize,
}

impl Growth {
    fn hexagon() -> Growth {
        let rotation: Vec<Vec<VertexId>> =
            (0..6).map(|i| vec![(i + 1) % 6, (i + 5) % 6]).collect();
        let adj = rotation.iter().map(|r| r.iter().copied().collect()).collect();
        Growth {
            rotation,
            adj,
            faces: vec![vec![0, 1, 2, 3, 4, 5], vec![0, 5, 4, 3, 2, 1]],
            outer_idx: 0,
        }
    }

    fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].contains(&v)
    }

    fn have_common_neighbor(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].intersection(&self.adj[v]).next().is_some()
    }

    /// Is there a path u-x-y-v on four distinct vertices?
    fn joined_by_three_edge_path(&self, u: VertexId, v: VertexId) -> bool {
        for &x in &self.adj[u] {
            if x == v {
                continue;
            }
            for &y in &self.adj[x] {
                if y != u && y != v && self.adj[v].contains(&y) {
                    return true;
                }
            }
        }
        false
    }

    /// Attaches a new apex over the directed face step `k` of face `f`,
    /// inside that face. Cycles created run through the apex and an
    /// existing u-v path of length L, giving length L + 2; L = 1 makes the
    /// intended triangle, L ∈ {2, 3} would make a 4- or 5-cycle, so those
    /// are the rejection conditions.
    fn try_attach_apex(&mut self, f: usize, k: usize) -> bool {
        let walk = &self.faces[f];
        let u = walk[k];
        let v = walk[(k + 1) % walk.len()];
        if self.have_common_neighbor(u, v) || self.joined_by_three_edge_path(u, v) {
            return false;
        }
        let w = self.vertex_count();
        self.rotation.push(vec![v, u]);
        self.adj.push(BTreeSet::from([u, v]));
        let pu = self.rotation[u].iter().position(|&x| x == v).expect("face step is an edge");
        self.rotation[u].insert(pu, w);
        let pv = self.rotation[v].iter().position(|&x| x == u).expect("face step is an edge");
        self.rotation[v].insert(pv + 1, w);
        self.adj[u].insert(w);
        self.adj[v].insert(w);
        self.faces[f].insert(k + 1, w);
        self.faces.push(vec![u, v, w]);
        true
    }

    /// Threads a path of `m` new vertices between walk positions `i` and
    /// `j` of face `f`, splitting it in two. Cycles created consist of the
    /// new path (m + 1 edges) plus an existing s-t path of length L, giving
    /// m + 1 + L: for m = 2 lengths 4 and 5 arise from L ∈ {1, 2}, for
    /// m = 3 from L = 1, and for m = 4 never.
    fn try_insert_path(&mut self, f: usize, i: usize, j: usize, m: usize) -> bool {
        debug_assert!((2..=4).contains(&m));
        if i == j {
            return false;
        }
        let walk = &self.faces[f];
        let len = walk.len();
        let (s, t) = (walk[i], walk[j]);
        if s == t {
            return false;
        }
        match m {
            2 if self.adjacent(s, t) || self.have_common_neighbor(s, t) => return false,
            3 if self.adjacent(s, t) => return false,
            _ => {}
        }

        let base = self.vertex_count();
        let walk = self.faces[f].clone();
        for k in 0..m {
            let prev = if k == 0 { s } else { base + k - 1 };
            let next = if k == m - 1 { t } else { base + k + 1 };
            self.rotation.push(vec![prev, next]);
            self.adj.push(BTreeSet::from([prev, next]));
        }
        let s_next = walk[(i + 1) % len];
        let si = self.rotation[s].iter().position(|&x| x == s_next).expect("walk step is an edge");
        self.rotation[s].insert(si, base);
        self.adj[s].insert(base);
        let t_next = walk[(j + 1) % len];
        let ti = self.rotation[t].iter().position(|&x| x == t_next).expect("walk step is an edge");
        self.rotation[t].insert(ti, base + m - 1);
        self.adj[t].insert(base + m - 1);

        // Side A: s, the new path, then the old walk from j around to i-1.
        let mut face_a = vec![s];
        face_a.extend(base..base + m);
        let mut pos = j;
        loop {
            face_a.push(walk[pos]);
            if pos == (i + len - 1) % len {
                break;
            }
            pos = (pos + 1) % len;
        }
        // Side B: the old walk from i to j, then the new path reversed.
        let mut face_b = Vec::new();
        let mut pos = i;
        loop {
            face_b.push(walk[pos]);
            if pos == j {
                break;
            }
            pos = (pos + 1) % len;
        }
        face_b.extend((base..base + m).rev());

        let b_longer = face_b.len() > face_a.len();
        self.faces[f] = face_a;
        self.faces.push(face_b);
        if f == self.outer_idx && b_longer {
            self.outer_idx = self.faces.len() - 1;
        }
        true
    }

    fn random_attach(&mut self, rng: &mut ChaCha8Rng) -> bool {
        for _ in 0..32 {
            let f = rng.gen_range(0..self.faces.len());
            let k = rng.gen_range(0..self.faces[f].len());
            if self.try_attach_apex(f, k) {
                return true;
            }
        }
        false
    }

    fn scan_attach(&mut self) -> bool {
        for f in 0..self.faces.len() {
            for k in 0..self.faces[f].len() {
                if self.try_attach_apex(f, k) {
                    return true;
                }
            }
        }
        false
    }

    /// Path lengths that fit the remaining vertex budget without stranding
    /// exactly one vertex, which only an apex could ever add.
    fn allowed_path_lengths(remaining: usize) -> Vec<usize> {
        (2..=remaining.min(4)).filter(|m| remaining - m != 1).collect()
    }

    fn random_insert(&mut self, rng: &mut ChaCha8Rng, remaining: usize) -> bool {
        let lengths = Growth::allowed_path_lengths(remaining);
        if lengths.is_empty() {
            return false;
        }
        for _ in 0..32 {
            let f = rng.gen_range(0..self.faces.len());
            let len = self.faces[f].len();
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            let m = lengths[rng.gen_range(0..lengths.len())];
            if self.try_insert_path(f, i, j, m) {
                return true;
            }
        }
        false
    }

    fn scan_insert(&mut self, remaining: usize) -> bool {
        let lengths = Growth::allowed_path_lengths(remaining);
        if lengths.is_empty() {
            return false;
        }
        for f in 0..self.faces.len() {
            let len = self.faces[f].len();
            for i in 0..len {
                for j in 0..len {
                    for &m in lengths.iter().rev() {
                        if self.try_insert_path(f, i, j, m) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[cfg(debug_assertions)]
    fn assert_no_short_cycles(&self) {
        if self.vertex_count() <= 500 {
            let adj = Adjacency::from_rotation(&self.rotation);
            let report = crate::graph::short_cycles_in(&adj, false);
            assert!(report.is_empty(), "mutation introduced short cycles: {:?}", report.cycles);
        }
    }
}

fn grow(n: usize, attach_probability: f64, rng: &mut ChaCha8Rng) -> Option<Growth> {
    let mut growth = Growth::hexagon();
    while growth.vertex_count() < n {
        let remaining = n - growth.vertex_count();
        // An apex that leaves exactly one vertex to place can dead-end the
        // run (apex spots are consumable), so it is barred at remaining 2;
        // remaining 1 occurs only as the initial state, where the bare
        // hexagon always admits an apex.
        let advanced = if remaining == 1 {
            growth.random_attach(rng) || growth.scan_attach()
        } else if remaining == 2 {
            growth.random_insert(rng, remaining) || growth.scan_insert(remaining)
        } else if rng.gen::<f64>() < attach_probability {
            growth.random_attach(rng)
                || growth.scan_attach()
                || growth.random_insert(rng, remaining)
                || growth.scan_insert(remaining)
        } else {
            growth.random_insert(rng, remaining)
                || growth.scan_insert(remaining)
                || growth.random_attach(rng)
                || growth.scan_attach()
        };
        if !advanced {
            return None;
        }
        #[cfg(debug_assertions)]
        growth.assert_no_short_cycles();
    }
    Some(growth)
}

fn random_provenance(n: usize, attach_probability: f64, seed: u64) -> Provenance {
    let mut params = serde_json::Map::new();
    params.insert(
        "attach_probability".to_owned(),
        serde_json::Number::from_f64(attach_probability)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null),
    );
    params.insert("n".to_owned(), n.into());
    params.insert("seed".to_owned(), seed.into());
    Provenance { generator: "random_g6".to_owned(), params }
}

/// Path 0-1-...-(n-1); the fallback for orders 4 and 5, which no graph
/// grown from a hexagon or triangle can hit without a 4- or 5-cycle.
fn path_rotation(n: usize) -> Vec<Vec<VertexId>> {
    (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i > 0 {
                r.push(i - 1);
            }
            if i + 1 < n {
                r.push(i + 1);
            }
            r
        })
        .collect()
}

/// Generates a connected embedded graph on exactly `n` vertices with no
/// 4- or 5-cycles, deterministically from `seed`. `attach_probability`
/// biases growth toward triangle apexes (1.0) or long paths (0.0).
pub fn gen_random_g6(n: usize, attach_probability: f64, seed: u64) -> Result<Instance, GenError> {
    if n < 3 {
        return Err(GenError::TooFewVertices(n));
    }
    let provenance = random_provenance(n, attach_probability, seed);
    let rotation = match n {
        3 => vec![vec![1, 2], vec![2, 0], vec![0, 1]],
        4 | 5 => path_rotation(n),
        _ => {
            let mut grown = None;
            let mut attempts = 0u32;
            while attempts < 64 {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    seed ^ u64::from(attempts).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                );
                if let Some(g) = grow(n, attach_probability, &mut rng) {
                    grown = Some(g);
                    break;
                }
                attempts += 1;
            }
            let growth = grown.ok_or(GenError::Stuck { n, attempts })?;
            let outer = growth.faces[growth.outer_idx].clone();
            let graph = PlanarGraph::build(growth.rotation.len(), growth.rotation, outer)
                .map_err(|e| GenError::Internal(e.to_string()))?;
            return finish_random(graph, provenance, seed);
        }
    };
    let outer = pick_outer_face(&rotation);
    let graph = PlanarGraph::build(rotation.len(), rotation, outer)
        .map_err(|e| GenError::Internal(e.to_string()))?;
    finish_random(graph, provenance, seed)
}

fn finish_random(
    graph: PlanarGraph,
    provenance: Provenance,
    seed: u64,
) -> Result<Instance, GenError> {
    let report = crate::graph::find_short_cycles(&graph);
    if !report.is_empty() {
        return Err(GenError::Internal(format!(
            "short cycles slipped through generation: {:?}",
            report.cycles
        )));
    }
    Ok(Instance { graph, seed: Seed::Value(seed), provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{color, verify, ColoringOutcome};
    use crate::graph::{
        adjacent_triangle_pairs, find_short_cycles, short_cycles_in, triangles_of,
    };
    use crate::spiral::{decompose, default_start, validate_decomposition, Orientation};
    use proptest::prelude::*;

    #[test]
    fn hexagon_gadget_structure() {
        let inst = gadget_hexagon_triangles();
        let g = &inst.graph;
        assert_eq!(g.n(), 12);
        assert_eq!(g.edge_count(), 18);
        let mut lens: Vec<usize> = g.faces().iter().map(|f| f.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![3, 3, 3, 3, 3, 3, 6, 12]);
        assert_eq!(g.outer_face(), &[0, 6, 1, 7, 2, 8, 3, 9, 4, 10, 5, 11]);
        assert_eq!(triangles_of(g).len(), 6);
        assert!(adjacent_triangle_pairs(g).is_empty());
        assert!(find_short_cycles(g).is_empty());
        // The inner hexagon is a 6-cycle, so the strict class excludes it.
        assert!(!short_cycles_in(g.adjacency(), true).is_empty());
    }

    #[test]
    fn hexagon_gadget_golden_json() {
        let inst = gadget_hexagon_triangles();
        assert_eq!(
            inst.to_json(),
            concat!(
                "{\"n\":12,",
                "\"rotation\":[[11,6,1,5],[6,7,2,0],[7,8,3,1],[8,9,4,2],[9,10,5,3],[10,11,0,4],",
                "[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]],",
                "\"outer_face\":[0,6,1,7,2,8,3,9,4,10,5,11],",
                "\"seed\":\"gadget:hexagon_triangles\",",
                "\"provenance\":{\"generator\":\"hexagon_triangles\",\"params\":{\"t\":6}}}"
            )
        );
    }

    #[test]
    fn hexagon_family_counts() {
        for t in 0..=6 {
            let inst = hexagon_triangles(t).unwrap();
            let g = &inst.graph;
            assert_eq!(g.n(), 6 + t, "t={t}");
            assert_eq!(g.edge_count(), 6 + 2 * t, "t={t}");
            assert_eq!(triangles_of(g).len(), t, "t={t}");
            assert!(find_short_cycles(g).is_empty(), "t={t}");
        }
        assert_eq!(hexagon_triangles(7), Err(GenError::TooManyTriangles(7)));
    }

    #[test]
    fn hub_gadget_structure() {
        let inst = gadget_three_triangles_hub();
        let g = &inst.graph;
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(triangles_of(g).len(), 3);
        assert_eq!(g.degree(0), 3);
        for z in [3, 6, 9] {
            assert!(g.has_edge(0, z));
        }
        assert!(find_short_cycles(g).is_empty());
        assert_eq!(g.outer_face().len(), 15);
        assert_eq!(inst.seed, Seed::Gadget("three_triangles_hub".to_owned()));
    }

    #[test]
    fn gadget_lookup_by_name() {
        for name in gadget_names() {
            let inst = gadget_by_name(&name).expect("listed gadget exists");
            assert_eq!(inst.provenance.generator, name);
        }
        assert!(gadget_by_name("hexagon_triangles_t6").is_none());
        assert!(gadget_by_name("nonsense").is_none());
    }

    #[test]
    fn smallest_orders_take_fixed_shapes() {
        let tri = gen_random_g6(3, 0.5, 1).unwrap();
        assert_eq!(tri.graph.rotation(), &[vec![1, 2], vec![2, 0], vec![0, 1]]);
        for n in [4, 5] {
            let inst = gen_random_g6(n, 0.5, 1).unwrap();
            assert_eq!(inst.graph.n(), n);
            assert_eq!(inst.graph.edge_count(), n - 1);
            assert_eq!(inst.graph.degree(0), 1);
            assert_eq!(inst.graph.degree(n - 1), 1);
        }
        assert_eq!(gen_random_g6(2, 0.5, 1), Err(GenError::TooFewVertices(2)));
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let a = gen_random_g6(40, 0.3, 12345).unwrap();
        let b = gen_random_g6(40, 0.3, 12345).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = gen_random_g6(40, 0.3, 12346).unwrap();
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn hits_exact_vertex_counts_across_the_grid() {
        for &n in &[6, 7, 8, 9, 10, 11, 12, 13, 17, 20, 31, 40] {
            for &p in &[0.0, 0.3, 0.7, 1.0] {
                let inst = gen_random_g6(n, p, 7)
                    .unwrap_or_else(|e| panic!("n={n} p={p}: {e}"));
                let g = &inst.graph;
                assert_eq!(g.n(), n, "n={n} p={p}");
                assert!(find_short_cycles(g).is_empty(), "n={n} p={p}");
                let total: usize = g.faces().iter().map(|f| f.len()).sum();
                assert_eq!(total, 2 * g.edge_count(), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn instance_json_round_trip() {
        for inst in [gadget_hexagon_triangles(), gen_random_g6(25, 0.4, 99).unwrap()] {
            let s = inst.to_json();
            let back = Instance::from_json(&s).unwrap();
            assert_eq!(back, inst);
            assert_eq!(back.to_json(), s);
        }
        assert!(matches!(Instance::from_json("{"), Err(GenError::Malformed(_))));
    }

    #[test]
    fn seed_serialization_forms() {
        assert_eq!(serde_json::to_string(&Seed::Value(5)).unwrap(), "5");
        assert_eq!(
            serde_json::to_string(&Seed::Gadget("x".to_owned())).unwrap(),
            "\"gadget:x\""
        );
        assert_eq!(serde_json::from_str::<Seed>("5").unwrap(), Seed::Value(5));
        assert_eq!(
            serde_json::from_str::<Seed>("\"gadget:x\"").unwrap(),
            Seed::Gadget("x".to_owned())
        );
        assert!(serde_json::from_str::<Seed>("\"plain\"").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_instances_are_sound(n in 3usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let inst = gen_random_g6(n, p, seed).unwrap();
            let g = &inst.graph;
            prop_assert_eq!(g.n(), n);
            prop_assert!(find_short_cycles(g).is_empty());
            let d = decompose(g, default_start(g), Orientation::Clockwise).unwrap();
            prop_assert!(validate_decomposition(g, &d).is_ok());
            if let ColoringOutcome::Success { colors, .. } = color(g, &d).unwrap() {
                let full: Vec<_> = colors.into_iter().map(Some).collect();
                prop_assert!(verify(g, &full).unwrap().is_empty());
            }
        }
    }
}
