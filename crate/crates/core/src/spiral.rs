//! Spiral-chain decomposition of an embedded plane graph.
//!
//! Starting from a vertex on the outer face, the scan walks the embedding
//! keeping the already-scanned territory on one side: arriving at `v` along
//! the edge `(u, v)`, the next vertex is found by scanning `v`'s rotation
//! from `u`'s position — backward for the clockwise orientation, forward for
//! counterclockwise — taking the first neighbor not yet scanned (`u`'s own
//! slot is the last candidate considered). When no unscanned neighbor
//! remains the chain ends; the next chain restarts at the unscanned vertex
//! closest to the last scanned one (BFS distance, ties by smallest id),
//! arriving along the final edge of the BFS path so the turn rule stays
//! well-defined.
//!
//! The very first step has no arrival edge; it borrows one from the outer
//! face walk: the anchor is the predecessor of `start` on the stored outer
//! walk for clockwise runs, the successor for counterclockwise.

use crate::graph::{PlanarGraph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "ccw")]
    Counterclockwise,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Clockwise, Orientation::Counterclockwise];

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Clockwise => "cw",
            Orientation::Counterclockwise => "ccw",
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cw" => Ok(Orientation::Clockwise),
            "ccw" => Ok(Orientation::Counterclockwise),
            other => Err(format!("unknown orientation {other:?}; expected \"cw\" or \"ccw\"")),
        }
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One chain of the decomposition: an ordered vertex sequence in which
/// consecutive vertices are adjacent and no vertex repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiralChain {
    /// 1-based; chain 1 is the outermost (first scanned).
    pub index: usize,
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiralDecomposition {
    pub chains: Vec<SpiralChain>,
    pub start: VertexId,
    pub orientation: Orientation,
}

/// Serialized form: `{"start":..,"orientation":"cw"|"ccw","chains":[[..],..]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionJson {
    pub start: VertexId,
    pub orientation: Orientation,
    pub chains: Vec<Vec<VertexId>>,
}

impl SpiralDecomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecompositionJson {
            start: self.start,
            orientation: self.orientation,
            chains: self.chains.iter().map(|c| c.vertices.clone()).collect(),
        })
        .expect("decomposition serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<SpiralDecomposition, serde_json::Error> {
        let dj: DecompositionJson = serde_json::from_str(s)?;
        Ok(SpiralDecomposition {
            chains: dj
                .chains
                .into_iter()
                .zip(1..)
                .map(|(vertices, index)| SpiralChain { index, vertices })
                .collect(),
            start: dj.start,
            orientation: dj.orientation,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.chains.iter().map(|c| c.vertices.len()).sum()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpiralError {
    #[error("start vertex {start} does not lie on the outer face")]
    StartNotOnOuterFace { start: VertexId },
    #[error("all vertices are already scanned")]
    AllScanned,
}

/// Default start vertex: the smallest id on the outer face.
pub fn default_start(g: &PlanarGraph) -> VertexId {
    *g.outer_face().iter().min().expect("outer face is non-empty")
}

/// The next vertex of the current chain: scan `v`'s rotation from the
/// arrival anchor `u` (backward for cw, forward for ccw), returning the
/// first unscanned neighbor. `u` must be adjacent to `v`.
fn next_unscanned(
    g: &PlanarGraph,
    v: VertexId,
    u: VertexId,
    orientation: Orientation,
    scanned: &[bool],
) -> Option<VertexId> {
    let rot = g.rotation_of(v);
    let d = rot.len();
    if d == 0 {
        return None;
    }
    let p = g.position_in_rotation(v, u).expect("anchor must be adjacent");
    for j in 1..=d {
        let idx = match orientation {
            Orientation::Clockwise => (p + d - j) % d,
            Orientation::Counterclockwise => (p + j) % d,
        };
        let w = rot[idx];
        if !scanned[w] {
            return Some(w);
        }
    }
    None
}

/// The start of the next chain: the unscanned vertex at minimum BFS distance
/// from `last` (ties broken by smallest id). Also returns the BFS parent of
/// that vertex — a scanned neighbor which serves as the arrival anchor.
///
/// BFS expands vertices in FIFO order with neighbors visited in ascending
/// id order, so the choice is deterministic.
fn restart_with_anchor(
    g: &PlanarGraph,
    scanned: &[bool],
    last: VertexId,
) -> Option<(VertexId, VertexId)> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    dist[last] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(last);
    let mut best: Option<(usize, VertexId)> = None; // (distance, vertex)
    while let Some(v) = queue.pop_front() {
        if let Some((bd, _)) = best {
            if dist[v] >= bd {
                // Everything at this distance onward is farther than the
                // best target's layer; the layer containing it is complete.
                break;
            }
        }
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
                if !scanned[w] {
                    match best {
                        Some((bd, bv)) if (dist[w], w) >= (bd, bv) => {}
                        _ => best = Some((dist[w], w)),
                    }
                }
            }
        }
    }
    best.map(|(_, v)| (v, parent[v]))
}

/// The unscanned vertex nearest to `last` (BFS distance in the whole graph,
/// ties by smallest id) — where the next chain begins.
pub fn chain_restart_target(
    g: &PlanarGraph,
    scanned: &[bool],
    last: VertexId,
) -> Result<VertexId, SpiralError> {
    restart_with_anchor(g, scanned, last).map(|(v, _)| v).ok_or(SpiralError::AllScanned)
}

/// Decomposes `g` into spiral chains from `start` (which must lie on the
/// outer face). The result covers every vertex exactly once; consecutive
/// chain vertices are adjacent. Pure function: identical inputs give
/// identical outputs.
pub fn decompose(
    g: &PlanarGraph,
    start: VertexId,
    orientation: Orientation,
) -> Result<SpiralDecomposition, SpiralError> {
    if start >= g.n() || !g.on_outer_face(start) {
        return Err(SpiralError::StartNotOnOuterFace { start });
    }

    let outer = g.outer_face();
    let len = outer.len();
    let i = outer.iter().position(|&v| v == start).expect("checked membership");
    // Borrowed arrival edge for the very first step.
    let first_anchor = match orientation {
        Orientation::Clockwise => outer[(i + len - 1) % len],
        Orientation::Counterclockwise => outer[(i + 1) % len],
    };

    let mut scanned = vec![false; g.n()];
    let mut chains: Vec<SpiralChain> = Vec::new();
    let mut current = start;
    let mut anchor = first_anchor;

    loop {
        let mut vertices = vec![current];
        scanned[current] = true;
        while let Some(next) = next_unscanned(g, current, anchor, orientation, &scanned) {
            scanned[next] = true;
            anchor = current;
            current = next;
            vertices.push(next);
        }
        chains.push(SpiralChain { index: chains.len() + 1, vertices });
        match restart_with_anchor(g, &scanned, current) {
            None => break,
            Some((target, parent)) => {
                anchor = parent;
                current = target;
            }
        }
    }

    Ok(SpiralDecomposition { chains, start, orientation })
}

/// Checks that `d` is a decomposition of `g`: chains cover every vertex
/// exactly once, consecutive chain vertices are adjacent, and indices run
/// 1..=k. Returns a human-readable description of the first violation.
pub fn validate_decomposition(g: &PlanarGraph, d: &SpiralDecomposition) -> Result<(), String> {
    let mut seen = vec![false; g.n()];
    for (k, chain) in d.chains.iter().enumerate() {
        if chain.index != k + 1 {
            return Err(format!("chain {} has index {}", k + 1, chain.index));
        }
        if chain.vertices.is_empty() {
            return Err(format!("chain {} is empty", chain.index));
        }
        for &v in &chain.vertices {
            if v >= g.n() {
                return Err(format!("chain {} lists out-of-range vertex {v}", chain.index));
            }
            if seen[v] {
                return Err(format!("vertex {v} appears twice"));
            }
            seen[v] = true;
        }
        for w in chain.vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(format!(
                    "chain {} contains non-edge ({}, {})",
                    chain.index, w[0], w[1]
                ));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(format!("vertex {v} is not covered"));
    }
    Ok(())
}
