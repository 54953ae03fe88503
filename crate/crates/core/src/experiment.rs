//! Batch runs over generator families, one CSV row per graph.
//!
//! A plan is a text file with one generator spec per line (see
//! [`GenSpec`]), optionally followed by `trials=N` to run `N` consecutive
//! seeds of a random family. Blank lines and `#` comments are skipped.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::bounds;
use crate::construct;
use crate::error::{Error, Result};
use crate::exact::{self, ExactConfig};
use crate::gen::GenSpec;
use crate::graph::Graph;

const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct PlanEntry {
    pub spec: GenSpec,
    pub trials: u64,
}

/// Parses an experiment plan.
pub fn parse_plan(text: &str) -> Result<Vec<PlanEntry>> {
    let mut plan = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut trials = 1;
        let mut words = Vec::new();
        for w in body.split_whitespace() {
            match w.strip_prefix("trials=") {
                Some(t) => {
                    trials = t
                        .parse()
                        .ok()
                        .filter(|&t| t > 0)
                        .ok_or_else(|| Error::Parse { line, message: format!("bad trial count '{t}'") })?
                }
                None => words.push(w),
            }
        }
        let spec: GenSpec = words.join(" ").parse().map_err(|e: Error| Error::Parse { line, message: e.to_string() })?;
        if trials > 1 && spec.seed().is_none() {
            return Err(Error::Parse { line, message: format!("{} has no seed to vary", spec.family()) });
        }
        plan.push(PlanEntry { spec, trials });
    }
    Ok(plan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub exact: ExactConfig,
    pub workers: usize,
    /// Fill `runtime_ms`; off by default so reruns are byte-identical.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self { exact: ExactConfig::default(), workers: 1, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub family: &'static str,
    pub n: usize,
    /// Seed for random families, enumeration index or mask for enumerations.
    pub seed: u64,
    /// Length of the verified constructive schedule.
    pub k_constructed: usize,
    pub k_exact: Option<usize>,
    pub upper_bound: u64,
    pub runtime_ms: Option<u128>,
    /// Whether `b(G) ≤ ⌈√n⌉`; observational, only when the exact value is known.
    pub sqrt_bound_holds: Option<bool>,
}

fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r == n { r } else { r + 1 }
}

fn measure(family: &'static str, seed: u64, g: &Graph, cfg: &ExperimentConfig) -> Result<ExperimentRow> {
    let start = Instant::now();
    let n = g.order();
    let k_constructed = construct::burn_graph(g)?.schedule.len();
    let k_exact = if n <= cfg.exact.max_order.min(exact::MAX_BITGRAPH_ORDER) {
        Some(exact::burning_number_exact(g, &cfg.exact)?.value)
    } else {
        None
    };
    let upper_bound = bounds::burning_upper_bound(n as u64)?;
    if k_constructed as u64 > upper_bound {
        return Err(Error::InvalidParameter(format!("{family} seed {seed}: constructed {k_constructed} > {upper_bound}")));
    }
    Ok(ExperimentRow {
        family,
        n,
        seed,
        k_constructed,
        k_exact,
        upper_bound,
        runtime_ms: cfg.timing.then(|| start.elapsed().as_millis()),
        sqrt_bound_holds: k_exact.map(|b| b <= ceil_sqrt(n)),
    })
}

/// Runs every plan entry; rows come out in plan order regardless of worker count.
/// Disconnected graphs from enumerations are skipped.
pub fn run_experiment(plan: &[PlanEntry], cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let mut rows = Vec::new();
    for entry in plan {
        let family = entry.spec.family();
        let specs: Box<dyn Iterator<Item = GenSpec>> = match entry.spec.seed() {
            Some(s) => Box::new((0..entry.trials).map(move |t| entry.spec.with_seed(s.wrapping_add(t)))),
            None => Box::new(std::iter::once(entry.spec.clone())),
        };
        for spec in specs {
            let mut graphs = spec.graphs()?.filter(|(_, g)| g.is_connected());
            loop {
                let chunk: Vec<(u64, Graph)> = graphs.by_ref().take(CHUNK).collect();
                if chunk.is_empty() {
                    break;
                }
                let done: Vec<ExperimentRow> = pool.install(|| {
                    chunk.par_iter().map(|(seed, g)| measure(family, *seed, g, cfg)).collect::<Result<_>>()
                })?;
                rows.extend(done);
            }
        }
    }
    Ok(rows)
}

/// Writes rows with header
/// `family,n,seed,k_constructed,k_exact_or_blank,upper_bound,runtime_ms,sqrt_bound_holds`.
pub fn write_experiment_csv<W: Write>(out: W, rows: &[ExperimentRow]) -> Result<()> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "family",
        "n",
        "seed",
        "k_constructed",
        "k_exact_or_blank",
        "upper_bound",
        "runtime_ms",
        "sqrt_bound_holds",
    ])?;
    for r in rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.seed.to_string(),
            r.k_constructed.to_string(),
            opt(r.k_exact.map(|k| k.to_string())),
            r.upper_bound.to_string(),
            opt(r.runtime_ms.map(|t| t.to_string())),
            opt(r.sqrt_bound_holds.map(|c| c.to_string())),
        ])?;
    }
    w.flush()?;
    Ok(())
}
