//! Priority-greedy 3-coloring driven by a spiral-chain decomposition.
//!
//! Chains are processed in order, vertices within a chain in scan order.
//! Each uncolored vertex takes the smallest-rank color absent from its
//! already-colored neighborhood. Whenever processing completes a chain edge
//! `(a, b)` whose endpoints hold {green, yellow}, every triangle sitting on
//! that edge has its third vertex forced to red immediately, ahead of its
//! own turn (vertices forced this way are skipped, not recolored, when
//! their turn comes). If a forced vertex already sees a red neighbor, or a
//! greedy vertex sees all three colors, the run stops with a certificate
//! naming the blocked vertex — a recorded impasse, never a silent retry.
//! Every step is traced so outcomes can be replayed and audited.

use crate::graph::{triangles_on_edge, PlanarGraph, VertexId};
use crate::spiral::{validate_decomposition, SpiralDecomposition};
use serde::{Deserialize, Serialize};
use thiserror::Error;

// ---------------------------------------------------------------------------
// Colors
// ---------------------------------------------------------------------------

/// The three colors, ordered by priority rank: green (1) < yellow (2) < red (3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Green,
    Yellow,
    Red,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Green, Color::Yellow, Color::Red];

    pub fn rank(self) -> u8 {
        match self {
            Color::Green => 1,
            Color::Yellow => 2,
            Color::Red => 3,
        }
    }

    pub fn from_rank(rank: u8) -> Option<Color> {
        match rank {
            1 => Some(Color::Green),
            2 => Some(Color::Yellow),
            3 => Some(Color::Red),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Green => "green",
            Color::Yellow => "yellow",
            Color::Red => "red",
        }
    }
}

/// Colors serialize as their rank (1, 2, 3) so wire formats carry plain ints.
impl Serialize for Color {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.rank())
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rank = u8::deserialize(d)?;
        Color::from_rank(rank)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid color rank {rank}")))
    }
}

/// Partial vertex coloring: `None` = not yet colored.
pub type Coloring = Vec<Option<Color>>;

// ---------------------------------------------------------------------------
// Trace and outcomes
// ---------------------------------------------------------------------------

/// One processing step; the full list replays the run exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    /// Normal turn: smallest rank absent from colored neighbors.
    Greedy { vertex: VertexId, color: Color },
    /// Third vertex of a triangle forced to red by a {green, yellow} chain edge.
    TriangleForce { vertex: VertexId, color: Color, edge: [VertexId; 2] },
    /// Vertex already colored (by an earlier force) when its turn arrived.
    Skipped { vertex: VertexId, color: Color },
    /// Conflict repair: endpoint of a chain edge re-greedied.
    Reassign { vertex: VertexId, from: Color, to: Color, edge: [VertexId; 2] },
}

/// A recorded impasse: `blocked` could not take any color because its
/// already-colored neighborhood spans all three ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureCertificate {
    pub blocked: VertexId,
    /// Colored neighbors of `blocked` at the moment of the impasse,
    /// ascending by vertex.
    pub neighbor_colors: Vec<(VertexId, Color)>,
    /// Number of trace steps executed before the impasse.
    pub trace_position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringOutcome {
    Success {
        colors: Vec<Color>,
        /// Usage counts for ranks 1, 2, 3.
        counts: [usize; 3],
        trace: Vec<TraceStep>,
    },
    Failure {
        certificate: FailureCertificate,
        partial: Coloring,
        counts: [usize; 3],
        trace: Vec<TraceStep>,
    },
}

impl ColoringOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, ColoringOutcome::Success { .. })
    }

    pub fn counts(&self) -> [usize; 3] {
        match self {
            ColoringOutcome::Success { counts, .. } => *counts,
            ColoringOutcome::Failure { counts, .. } => *counts,
        }
    }

    pub fn trace(&self) -> &[TraceStep] {
        match self {
            ColoringOutcome::Success { trace, .. } => trace,
            ColoringOutcome::Failure { trace, .. } => trace,
        }
    }

    /// Canonical JSON: status, colors, counts, certificate, then (only when
    /// requested) the full trace.
    pub fn to_json(&self, include_trace: bool) -> String {
        #[derive(Serialize)]
        struct OutcomeJson<'a> {
            status: &'static str,
            colors: Option<Vec<u8>>,
            counts: [usize; 3],
            certificate: Option<&'a FailureCertificate>,
            #[serde(skip_serializing_if = "Option::is_none")]
            trace: Option<&'a [TraceStep]>,
        }
        let j = match self {
            ColoringOutcome::Success { colors, counts, trace } => OutcomeJson {
                status: "success",
                colors: Some(colors.iter().map(|c| c.rank()).collect()),
                counts: *counts,
                certificate: None,
                trace: include_trace.then_some(trace.as_slice()),
            },
            ColoringOutcome::Failure { certificate, counts, trace, .. } => OutcomeJson {
                status: "failure",
                colors: None,
                counts: *counts,
                certificate: Some(certificate),
                trace: include_trace.then_some(trace.as_slice()),
            },
        };
        serde_json::to_string(&j).expect("outcome serialization cannot fail")
    }
}

/// Per-color usage counts of a successful run.
pub fn color_stats(outcome: &ColoringOutcome) -> Option<[usize; 3]> {
    match outcome {
        ColoringOutcome::Success { counts, .. } => Some(*counts),
        ColoringOutcome::Failure { .. } => None,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("decomposition does not match graph: {0}")]
    DecompositionMismatch(String),
}

// ---------------------------------------------------------------------------
// The algorithm
// ---------------------------------------------------------------------------

/// Mutable run state; exposed so the triangle rule can be driven directly
/// against handcrafted positions in tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorState {
    pub colors: Coloring,
    pub trace: Vec<TraceStep>,
}

impl ColorState {
    pub fn new(n: usize) -> ColorState {
        ColorState { colors: vec![None; n], trace: Vec::new() }
    }
}

fn counts_of(colors: &Coloring) -> [usize; 3] {
    let mut counts = [0usize; 3];
    for c in colors.iter().flatten() {
        counts[(c.rank() - 1) as usize] += 1;
    }
    counts
}

/// Colored neighbors of `v`, ascending by vertex id.
fn colored_neighborhood(g: &PlanarGraph, colors: &Coloring, v: VertexId) -> Vec<(VertexId, Color)> {
    g.neighbors(v).iter().filter_map(|&u| colors[u].map(|c| (u, c))).collect()
}

/// Smallest-rank color absent from `v`'s colored neighborhood.
fn greedy_color(g: &PlanarGraph, colors: &Coloring, v: VertexId) -> Option<Color> {
    let mut present = [false; 3];
    for &u in g.neighbors(v) {
        if let Some(c) = colors[u] {
            present[(c.rank() - 1) as usize] = true;
        }
    }
    Color::ALL.into_iter().find(|c| !present[(c.rank() - 1) as usize])
}

fn certificate(g: &PlanarGraph, state: &ColorState, blocked: VertexId) -> FailureCertificate {
    FailureCertificate {
        blocked,
        neighbor_colors: colored_neighborhood(g, &state.colors, blocked),
        trace_position: state.trace.len(),
    }
}

/// Applies the triangle rule for the chain edge `(a, b)`: for every triangle
/// on that edge (ascending by third vertex), if the edge holds {green,
/// yellow} then the third vertex is forced to red — or, when the third
/// vertex already holds green or yellow (an improper position reachable only
/// from handcrafted states), the edge endpoints are re-greedied in order.
///
/// Returns the certificate of the impasse if the rule cannot be applied
/// properly. No-ops when either endpoint is uncolored.
pub fn apply_triangle_rule(
    g: &PlanarGraph,
    state: &mut ColorState,
    edge: (VertexId, VertexId),
) -> Result<(), FailureCertificate> {
    let (a, b) = edge;
    let is_green_yellow = |colors: &Coloring| {
        matches!(
            (colors[a], colors[b]),
            (Some(Color::Green), Some(Color::Yellow)) | (Some(Color::Yellow), Some(Color::Green))
        )
    };
    if !is_green_yellow(&state.colors) {
        return Ok(());
    }
    for t in triangles_on_edge(g.adjacency(), a, b) {
        // A repair on an earlier triangle may have destroyed the pattern.
        if !is_green_yellow(&state.colors) {
            break;
        }
        let w = t.apex(a, b).expect("triangle contains the edge");
        match state.colors[w] {
            None => {
                // Red must be free on w: its colored neighbors already
                // include green and yellow via a and b.
                let sees_red = g
                    .neighbors(w)
                    .iter()
                    .any(|&u| state.colors[u] == Some(Color::Red));
                if sees_red {
                    return Err(certificate(g, state, w));
                }
                state.colors[w] = Some(Color::Red);
                state.trace.push(TraceStep::TriangleForce {
                    vertex: w,
                    color: Color::Red,
                    edge: [a, b],
                });
            }
            Some(Color::Red) => {}
            Some(_) => {
                // Conflict repair: re-greedy a, then b, against current
                // neighborhoods; record an impasse if either is blocked.
                for v in [a, b] {
                    let old = state.colors[v].expect("endpoint colored");
                    state.colors[v] = None;
                    let fresh = match greedy_color(g, &state.colors, v) {
                        Some(c) => c,
                        None => {
                            state.colors[v] = Some(old);
                            return Err(certificate(g, state, v));
                        }
                    };
                    state.colors[v] = Some(fresh);
                    if fresh != old {
                        state.trace.push(TraceStep::Reassign {
                            vertex: v,
                            from: old,
                            to: fresh,
                            edge: [a, b],
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Runs the full coloring over a decomposition of `g`.
pub fn color(g: &PlanarGraph, d: &SpiralDecomposition) -> Result<ColoringOutcome, ColoringError> {
    validate_decomposition(g, d).map_err(ColoringError::DecompositionMismatch)?;

    let mut state = ColorState::new(g.n());
    for chain in &d.chains {
        for (idx, &v) in chain.vertices.iter().enumerate() {
            match state.colors[v] {
                None => match greedy_color(g, &state.colors, v) {
                    Some(c) => {
                        state.colors[v] = Some(c);
                        state.trace.push(TraceStep::Greedy { vertex: v, color: c });
                    }
                    None => {
                        let certificate = certificate(g, &state, v);
                        let counts = counts_of(&state.colors);
                        return Ok(ColoringOutcome::Failure {
                            certificate,
                            partial: state.colors,
                            counts,
                            trace: state.trace,
                        });
                    }
                },
                Some(c) => {
                    state.trace.push(TraceStep::Skipped { vertex: v, color: c });
                }
            }
            if idx > 0 {
                let a = chain.vertices[idx - 1];
                if let Err(certificate) = apply_triangle_rule(g, &mut state, (a, v)) {
                    let counts = counts_of(&state.colors);
                    return Ok(ColoringOutcome::Failure {
                        certificate,
                        partial: state.colors,
                        counts,
                        trace: state.trace,
                    });
                }
            }
        }
    }

    let colors: Vec<Color> =
        state.colors.iter().map(|c| c.expect("decomposition covers all vertices")).collect();
    let counts = counts_of(&state.colors);
    debug_assert!(verify(g, &state.colors).map_or(false, |v| v.is_empty()));
    Ok(ColoringOutcome::Success { colors, counts, trace: state.trace })
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("coloring is partial: vertex {0} is uncolored")]
    PartialColoring(VertexId),
    #[error("coloring has wrong length: {got} entries for {expected} vertices")]
    WrongLength { got: usize, expected: usize },
}

/// Lists the edges with equal endpoint colors (empty = proper). The coloring
/// must be total.
pub fn verify(
    g: &PlanarGraph,
    colors: &Coloring,
) -> Result<Vec<(VertexId, VertexId)>, VerifyError> {
    if colors.len() != g.n() {
        return Err(VerifyError::WrongLength { got: colors.len(), expected: g.n() });
    }
    if let Some(v) = colors.iter().position(|c| c.is_none()) {
        return Err(VerifyError::PartialColoring(v));
    }
    let mut violated = Vec::new();
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            if u < v && colors[u] == colors[v] {
                violated.push((u, v));
            }
        }
    }
    Ok(violated)
}

/// Convenience for total colorings.
pub fn verify_total(
    g: &PlanarGraph,
    colors: &[Color],
) -> Result<Vec<(VertexId, VertexId)>, VerifyError> {
    let partial: Coloring = colors.iter().copied().map(Some).collect();
    verify(g, &partial)
}
