//! Spiral-chain decomposition and 3-coloring of plane graphs without 4- or 5-cycles.
//!
//! The library is organized around one pipeline:
//!
//! 1. [`graph`] — combinatorial embeddings (rotation systems), face tracing,
//!    short-cycle detection, triangle enumeration.
//! 2. [`spiral`] — decomposing an embedded graph into spiral chains.
//! 3. [`coloring`] — the priority-greedy 3-coloring driven by the chain order,
//!    with the triangle forcing rule, plus verification.
//! 4. [`oracle`] — an exact backtracking 3-colorability decider used to
//!    classify heuristic failures.
//! 5. [`generators`] — fixed gadget instances and a seeded random generator
//!    for graphs in the family (no 4-cycles, no 5-cycles).

pub mod coloring;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod spiral;

pub use coloring::{color, color_stats, verify, Color, Coloring, ColoringOutcome};
pub use graph::{Adjacency, PlanarGraph, VertexId};
pub use oracle::{cross_check, exact_3color, CrossCheck, OracleOutcome, Verdict};
pub use spiral::{decompose, Orientation, SpiralChain, SpiralDecomposition};
