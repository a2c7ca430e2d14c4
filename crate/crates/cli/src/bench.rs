//! Wall-time scaling measurement for decompose + color.

use std::time::Instant;

use serde::Serialize;

use spiralcolor::coloring::color;
use spiralcolor::generators::gen_random_g6;
use spiralcolor::spiral::{decompose, default_start, Orientation};

/// Timing for one instance size. `seconds` is the fastest of the repeated
/// runs (least noise); `max_seconds` shows the observed spread. The heuristic
/// is incomplete, so a run may terminate in an impasse; either way it ran to
/// completion and the time counts. `status` records which it was.
#[derive(Debug, Clone, Serialize)]
pub struct BenchPoint {
    pub n: usize,
    pub seconds: f64,
    pub status: &'static str,
    #[serde(skip_serializing)]
    pub max_seconds: f64,
}

/// Full measurement: one point per requested size plus the least-squares
/// slope of log(seconds) against log(n) (`None` with fewer than two points).
#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub points: Vec<BenchPoint>,
    pub exponent: Option<f64>,
}

#[derive(Debug)]
pub enum BenchError {
    /// Nothing to measure (exit class: malformed request).
    EmptyCorpus,
    /// An instance could not be generated at the requested size.
    Generation { n: usize, message: String },
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::EmptyCorpus => write!(f, "benchmark corpus is empty: no sizes given"),
            BenchError::Generation { n, message } => {
                write!(f, "could not generate a {n}-vertex instance: {message}")
            }
        }
    }
}

/// Least-squares slope of y against x. Caller guarantees `xs.len() >= 2`.
fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Generates one instance per size and times `decompose` + `color` over
/// `reps` repetitions each. Every timed run must succeed end to end.
pub fn run_bench(
    sizes: &[usize],
    reps: usize,
    seed: u64,
    attach_probability: f64,
) -> Result<BenchReport, BenchError> {
    if sizes.is_empty() {
        return Err(BenchError::EmptyCorpus);
    }
    let reps = reps.max(1);
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let inst = gen_random_g6(n, attach_probability, seed)
            .map_err(|e| BenchError::Generation { n, message: e.to_string() })?;
        let g = &inst.graph;
        let mut best = f64::INFINITY;
        let mut worst = 0.0f64;
        let mut status = "success";
        for _ in 0..reps {
            let t0 = Instant::now();
            let d = decompose(g, default_start(g), Orientation::Clockwise)
                .expect("default start lies on the outer face");
            let outcome = color(g, &d).expect("freshly built decomposition is valid");
            let dt = t0.elapsed().as_secs_f64();
            if !outcome.is_success() {
                status = "failure";
            }
            best = best.min(dt);
            worst = worst.max(dt);
        }
        points.push(BenchPoint { n: g.n(), seconds: best, status, max_seconds: worst });
    }
    let exponent = if points.len() >= 2 {
        let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.seconds.max(1e-9).ln()).collect();
        Some(slope(&xs, &ys))
    } else {
        None
    };
    Ok(BenchReport { points, exponent })
}
