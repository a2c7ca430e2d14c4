//! Exact 3-colorability decision procedure and heuristic/exact cross-checking.
//!
//! The solver is a plain backtracker over 3-bit color domains with forward
//! checking: most-constrained vertex first (fewest remaining colors, then
//! highest degree, then smallest id), colors tried in rank order. Two
//! symmetry breaks cut the search sixfold without losing completeness: the
//! first branched vertex takes green only, and the second is barred from
//! red (justified by globally permuting colors). `NotColorable` is returned
//! only after the whole tree is exhausted; running out of node budget is a
//! distinct verdict, never silently conflated with either answer.

use crate::coloring::{Color, ColoringOutcome};
use crate::graph::{find_short_cycles, Adjacency, PlanarGraph, VertexId};
use serde::Serialize;
use thiserror::Error;

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A verified proper 3-coloring exists; `witness` is one.
    Colorable { witness: Vec<Color> },
    /// The full search tree was exhausted without finding one.
    NotColorable,
    /// The node budget ran out before the search resolved.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub verdict: Verdict,
    /// Color assignments attempted during the search.
    pub nodes_explored: u64,
}

impl OracleOutcome {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct VerdictJson {
            status: &'static str,
            colors: Option<Vec<u8>>,
            counts: Option<[usize; 3]>,
            nodes_explored: u64,
        }
        let j = match &self.verdict {
            Verdict::Colorable { witness } => {
                let mut counts = [0usize; 3];
                for c in witness {
                    counts[(c.rank() - 1) as usize] += 1;
                }
                VerdictJson {
                    status: "colorable",
                    colors: Some(witness.iter().map(|c| c.rank()).collect()),
                    counts: Some(counts),
                    nodes_explored: self.nodes_explored,
                }
            }
            Verdict::NotColorable => VerdictJson {
                status: "not_colorable",
                colors: None,
                counts: None,
                nodes_explored: self.nodes_explored,
            },
            Verdict::BudgetExhausted => VerdictJson {
                status: "budget_exhausted",
                colors: None,
                counts: None,
                nodes_explored: self.nodes_explored,
            },
        };
        serde_json::to_string(&j).expect("verdict serialization cannot fail")
    }
}

/// Default search budget: generous for graphs up to a few dozen vertices.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// The backtracking search
// ---------------------------------------------------------------------------

struct Search<'a> {
    adj: &'a Adjacency,
    /// Bitmask of still-allowed colors per vertex (bit k = rank k+1).
    domains: Vec<u8>,
    assigned: Vec<Option<u8>>,
    assigned_count: usize,
    nodes: u64,
    budget: u64,
}

enum SearchResult {
    Solved,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    /// Most-constrained vertex: fewest remaining colors, then highest
    /// degree, then smallest id.
    fn pick_vertex(&self) -> VertexId {
        let mut best: Option<(u32, usize, VertexId)> = None;
        for v in 0..self.adj.n() {
            if self.assigned[v].is_some() {
                continue;
            }
            let key = (self.domains[v].count_ones(), usize::MAX - self.adj.degree(v), v);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        best.expect("an unassigned vertex exists").2
    }

    fn solve(&mut self) -> SearchResult {
        if self.assigned_count == self.adj.n() {
            return SearchResult::Solved;
        }
        let v = self.pick_vertex();
        let mut candidates = self.domains[v];
        // Symmetry breaking: permuting the three colors maps solutions to
        // solutions, so the first branched vertex may be pinned to green and
        // the second barred from red.
        if self.assigned_count == 0 {
            candidates &= 0b001;
        } else if self.assigned_count == 1 {
            candidates &= 0b011;
        }
        for bit in 0..3u8 {
            let mask = 1u8 << bit;
            if candidates & mask == 0 {
                continue;
            }
            if self.nodes >= self.budget {
                return SearchResult::OutOfBudget;
            }
            self.nodes += 1;
            let mut trail: Vec<(VertexId, u8)> = Vec::new();
            if self.propagate(v, mask, &mut trail) {
                self.assigned[v] = Some(bit);
                self.assigned_count += 1;
                match self.solve() {
                    SearchResult::Solved => return SearchResult::Solved,
                    SearchResult::OutOfBudget => return SearchResult::OutOfBudget,
                    SearchResult::Exhausted => {}
                }
                self.assigned_count -= 1;
                self.assigned[v] = None;
            }
            for (u, old) in trail.into_iter().rev() {
                self.domains[u] = old;
            }
        }
        SearchResult::Exhausted
    }

    /// Forward checking: remove `mask` from unassigned neighbors of `v`,
    /// recording old domains on the trail; false on a wipe-out.
    fn propagate(&mut self, v: VertexId, mask: u8, trail: &mut Vec<(VertexId, u8)>) -> bool {
        for &u in self.adj.neighbors(v) {
            if self.assigned[u].is_some() {
                continue;
            }
            let old = self.domains[u];
            if old & mask != 0 {
                trail.push((u, old));
                self.domains[u] = old & !mask;
                if self.domains[u] == 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Decides 3-colorability of the graph behind `adj` by exhaustive
/// backtracking, spending at most `node_budget` color assignments.
pub fn exact_3color(adj: &Adjacency, node_budget: u64) -> OracleOutcome {
    let n = adj.n();
    if n == 0 {
        return OracleOutcome { verdict: Verdict::Colorable { witness: Vec::new() }, nodes_explored: 0 };
    }
    let mut search = Search {
        adj,
        domains: vec![0b111; n],
        assigned: vec![None; n],
        assigned_count: 0,
        nodes: 0,
        budget: node_budget,
    };
    let verdict = match search.solve() {
        SearchResult::Solved => {
            let witness: Vec<Color> = search
                .assigned
                .iter()
                .map(|b| Color::from_rank(b.expect("solved") + 1).expect("bit in 0..3"))
                .collect();
            for u in 0..n {
                for &v in adj.neighbors(u) {
                    assert!(witness[u] != witness[v], "solver produced an improper witness");
                }
            }
            Verdict::Colorable { witness }
        }
        SearchResult::Exhausted => Verdict::NotColorable,
        SearchResult::OutOfBudget => Verdict::BudgetExhausted,
    };
    OracleOutcome { verdict, nodes_explored: search.nodes }
}

// ---------------------------------------------------------------------------
// Fingerprinting and cross-checking
// ---------------------------------------------------------------------------

/// 64-bit FNV-1a over the canonical graph JSON; ties results to the exact
/// graph they were computed on.
pub fn fingerprint(g: &PlanarGraph) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in g.to_json().as_bytes() {
        h ^= u64::from(*byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Joint classification of a heuristic run and an exact verdict on one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossCheck {
    /// Heuristic succeeded (oracle agreement implied or confirmed).
    ConsistentSuccess,
    /// Heuristic failed but the graph is colorable: the heuristic is
    /// incomplete on this instance.
    HeuristicIncomplete,
    /// The graph has no proper 3-coloring despite having no short cycles —
    /// the central claim would be falsified if this verifies.
    CounterexampleCandidate,
    /// The exact search ran out of budget; nothing can be concluded.
    Inconclusive,
}

impl CrossCheck {
    pub fn as_str(self) -> &'static str {
        match self {
            CrossCheck::ConsistentSuccess => "consistent_success",
            CrossCheck::HeuristicIncomplete => "heuristic_incomplete",
            CrossCheck::CounterexampleCandidate => "counterexample_candidate",
            CrossCheck::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrossCheckError {
    #[error("{which} result was computed on a different graph: fingerprint {got:#018x}, expected {expected:#018x}")]
    FingerprintMismatch { which: &'static str, got: u64, expected: u64 },
    #[error("graph has {count} short cycle(s); a not-colorable verdict on it is out of scope")]
    NotShortCycleFree { count: usize },
    #[error("heuristic produced a verified coloring but the exact search found none")]
    ContradictoryResults,
}

/// Classifies a (heuristic, oracle) result pair for `g`. Both results carry
/// the fingerprint of the graph they were computed on; a mismatch is an
/// error, as is a logically impossible combination.
pub fn cross_check(
    g: &PlanarGraph,
    heuristic: &ColoringOutcome,
    heuristic_fingerprint: u64,
    oracle: &OracleOutcome,
    oracle_fingerprint: u64,
) -> Result<CrossCheck, CrossCheckError> {
    let expected = fingerprint(g);
    if heuristic_fingerprint != expected {
        return Err(CrossCheckError::FingerprintMismatch {
            which: "heuristic",
            got: heuristic_fingerprint,
            expected,
        });
    }
    if oracle_fingerprint != expected {
        return Err(CrossCheckError::FingerprintMismatch {
            which: "oracle",
            got: oracle_fingerprint,
            expected,
        });
    }
    match (&heuristic, &oracle.verdict) {
        (_, Verdict::BudgetExhausted) => Ok(CrossCheck::Inconclusive),
        (ColoringOutcome::Success { .. }, Verdict::Colorable { .. }) => {
            Ok(CrossCheck::ConsistentSuccess)
        }
        (ColoringOutcome::Failure { .. }, Verdict::Colorable { .. }) => {
            Ok(CrossCheck::HeuristicIncomplete)
        }
        (ColoringOutcome::Failure { .. }, Verdict::NotColorable) => {
            let report = find_short_cycles(g);
            if report.cycles.is_empty() {
                Ok(CrossCheck::CounterexampleCandidate)
            } else {
                Err(CrossCheckError::NotShortCycleFree { count: report.cycles.len() })
            }
        }
        (ColoringOutcome::Success { .. }, Verdict::NotColorable) => {
            Err(CrossCheckError::ContradictoryResults)
        }
    }
}
