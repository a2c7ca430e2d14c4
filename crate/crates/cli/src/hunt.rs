//! Randomized falsification campaign: generate instances, run the heuristic
//! under a sweep of (start, orientation) choices, and classify every failure
//! against the exact search.
//!
//! Records are newline-delimited JSON, one line per run, emitted in seed
//! order regardless of worker count, so the record stream for a given
//! configuration is byte-identical whether it was produced by one thread or
//! many. Wall time appears only in the summary, never in records.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use spiralcolor::coloring::{color, ColoringOutcome, FailureCertificate};
use spiralcolor::generators::gen_random_g6;
use spiralcolor::oracle::{cross_check, exact_3color, fingerprint};
use spiralcolor::spiral::{decompose, default_start, Orientation};

#[derive(Debug, Clone)]
pub struct HuntConfig {
    /// Number of seeds to draw; seed values are `seed_start..seed_start + instances`.
    pub instances: u64,
    pub seed_start: u64,
    /// Vertex counts are drawn uniformly from `6..=n_max` per seed.
    pub n_max: usize,
    /// Sweep every distinct outer-face vertex as a start, not just the default.
    pub sweep_all_starts: bool,
    /// Orientations tried for each start, in this order.
    pub orientations: Vec<Orientation>,
    pub oracle_budget: u64,
    pub workers: usize,
}

impl Default for HuntConfig {
    fn default() -> Self {
        HuntConfig {
            instances: 100,
            seed_start: 0,
            n_max: 40,
            sweep_all_starts: false,
            orientations: Orientation::BOTH.to_vec(),
            oracle_budget: spiralcolor::oracle::DEFAULT_NODE_BUDGET,
            workers: 1,
        }
    }
}

/// One NDJSON line. `certificate` and `nodes_explored` appear only for runs
/// where the heuristic failed (and the exact search therefore ran); `error`
/// only for runs that could not be classified at all.
#[derive(Debug, Clone, Serialize)]
pub struct HuntRecord {
    pub seed: u64,
    pub n: usize,
    pub attach_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<&'static str>,
    pub classification: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FailureCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Aggregate counts over every emitted record. The four classification
/// counters plus `errors` always sum to `runs`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct HuntSummary {
    pub instances_tested: u64,
    pub runs: u64,
    pub consistent_successes: u64,
    pub heuristic_incomplete: u64,
    pub counterexample_candidates: u64,
    pub inconclusive: u64,
    pub errors: u64,
    pub wall_time: f64,
}

impl HuntSummary {
    fn tally(&mut self, rec: &HuntRecord) {
        self.runs += 1;
        match rec.classification.as_str() {
            "consistent_success" => self.consistent_successes += 1,
            "heuristic_incomplete" => self.heuristic_incomplete += 1,
            "counterexample_candidate" => self.counterexample_candidates += 1,
            "inconclusive" => self.inconclusive += 1,
            _ => self.errors += 1,
        }
    }
}

/// Derives the per-seed instance shape. Every consumer of a hunt record can
/// rebuild the exact instance with `gen --n <n> --attach-probability <p>
/// --seed <seed>`.
pub fn derive_params(seed: u64, n_max: usize) -> (usize, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(6..=n_max.max(6));
    let p: f64 = rng.gen();
    (n, p)
}

/// Generates the instance for `seed` and classifies every sweep run on it.
fn process_seed(seed: u64, cfg: &HuntConfig) -> Vec<HuntRecord> {
    let (n, p) = derive_params(seed, cfg.n_max);
    let inst = match gen_random_g6(n, p, seed) {
        Ok(inst) => inst,
        Err(e) => {
            return vec![HuntRecord {
                seed,
                n,
                attach_probability: p,
                start: None,
                orientation: None,
                classification: "generation_error".to_owned(),
                certificate: None,
                nodes_explored: None,
                error: Some(e.to_string()),
            }];
        }
    };
    let g = &inst.graph;
    let fp = fingerprint(g);
    let starts: Vec<usize> = if cfg.sweep_all_starts {
        let mut s = g.outer_face().to_vec();
        s.sort_unstable();
        s.dedup();
        s
    } else {
        vec![default_start(g)]
    };

    let mut records = Vec::with_capacity(starts.len() * cfg.orientations.len());
    for &start in &starts {
        for &orientation in &cfg.orientations {
            let d = decompose(g, start, orientation)
                .expect("sweep starts are taken from the outer face");
            let outcome = color(g, &d).expect("freshly built decomposition is valid");
            let mut rec = HuntRecord {
                seed,
                n: g.n(),
                attach_probability: p,
                start: Some(start),
                orientation: Some(orientation.as_str()),
                classification: String::new(),
                certificate: None,
                nodes_explored: None,
                error: None,
            };
            match &outcome {
                ColoringOutcome::Success { .. } => {
                    // A verified success needs no exact search: the instance
                    // is colorable and the heuristic agrees.
                    rec.classification = "consistent_success".to_owned();
                }
                ColoringOutcome::Failure { certificate, .. } => {
                    let oracle = exact_3color(g.adjacency(), cfg.oracle_budget);
                    rec.certificate = Some(certificate.clone());
                    rec.nodes_explored = Some(oracle.nodes_explored);
                    match cross_check(g, &outcome, fp, &oracle, fp) {
                        Ok(class) => rec.classification = class.as_str().to_owned(),
                        Err(e) => {
                            rec.classification = "cross_check_error".to_owned();
                            rec.error = Some(e.to_string());
                        }
                    }
                }
            }
            records.push(rec);
        }
    }
    records
}

/// Runs the full campaign, writing one NDJSON record per run to `out` in
/// ascending seed order (sweep order within a seed), and returns the summary.
pub fn run_hunt(cfg: &HuntConfig, out: &mut dyn Write) -> io::Result<HuntSummary> {
    let t0 = Instant::now();
    let mut summary = HuntSummary { instances_tested: cfg.instances, ..HuntSummary::default() };
    if cfg.instances > 0 {
        let workers = cfg.workers.max(1).min(cfg.instances as usize);
        let next = AtomicU64::new(0);
        let (tx, rx) = mpsc::channel::<(u64, Vec<HuntRecord>)>();
        std::thread::scope(|scope| -> io::Result<()> {
            for _ in 0..workers {
                let tx = tx.clone();
                let next = &next;
                scope.spawn(move || {
                    loop {
                        let idx = next.fetch_add(1, Ordering::Relaxed);
                        if idx >= cfg.instances {
                            break;
                        }
                        let records = process_seed(cfg.seed_start + idx, cfg);
                        if tx.send((idx, records)).is_err() {
                            break; // receiver gone: abort quietly
                        }
                    }
                });
            }
            drop(tx);

            // Hold-and-release: buffer out-of-order batches, emit in seed order.
            let mut pending: BTreeMap<u64, Vec<HuntRecord>> = BTreeMap::new();
            let mut next_to_emit = 0u64;
            for (idx, records) in rx {
                pending.insert(idx, records);
                while let Some(records) = pending.remove(&next_to_emit) {
                    for rec in &records {
                        summary.tally(rec);
                        serde_json::to_writer(&mut *out, rec)
                            .map_err(|e| io::Error::new(io::ErrorKind::Other, e))?;
                        out.write_all(b"\n")?;
                    }
                    next_to_emit += 1;
                }
            }
            assert_eq!(next_to_emit, cfg.instances, "every seed batch was emitted");
            Ok(())
        })?;
    }
    out.flush()?;
    summary.wall_time = t0.elapsed().as_secs_f64();
    Ok(summary)
}
