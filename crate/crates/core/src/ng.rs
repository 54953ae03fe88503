//! Checks of the complement product bound `b(G)·b(Ḡ) ≤ n + 4` and of the
//! radius law behind it (radius ≥ 3 forces a connected complement of radius ≤ 2).

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds;
use crate::burn::{self, BurnCover, Strictness};
use crate::construct;
use crate::error::{Error, Result};
use crate::exact::{BitGraph, ExactConfig};
use crate::gen;
use crate::graph::{self, Graph};

/// Largest order [`ng_exhaustive`] accepts.
pub const MAX_EXHAUSTIVE_ORDER: usize = 7;
const SHARD: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusLaw {
    /// The graph has radius at most 2; nothing to check.
    NotApplicable,
    /// Radius ≥ 3 and the complement is connected with radius ≤ 2.
    Holds,
    /// Radius ≥ 3 but the complement is disconnected or has radius ≥ 3.
    Violated,
}

fn bit_radius(bg: &BitGraph) -> Option<usize> {
    let full = bg.full();
    let mut best: Option<usize> = None;
    for v in 0..bg.order() {
        let (mut seen, mut frontier, mut ecc) = (1u64 << v, 1u64 << v, 0);
        while seen != full && best.is_none_or(|b| ecc < b) {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                next |= bg.adjacency(f.trailing_zeros() as usize);
                f &= f - 1;
            }
            frontier = next & !seen;
            if frontier == 0 {
                return None;
            }
            seen |= frontier;
            ecc += 1;
        }
        if seen == full {
            best = Some(best.map_or(ecc, |b| b.min(ecc)));
        }
    }
    best
}

/// Radius of a connected graph; `None` when disconnected.
fn radius_of(g: &Graph) -> Option<usize> {
    match BitGraph::from_graph(g) {
        Ok(bg) => bit_radius(&bg),
        Err(_) => graph::metrics(g).ok().map(|m| m.radius),
    }
}

/// Checks that a connected graph of radius ≥ 3 has a connected complement of radius ≤ 2.
pub fn complement_radius_check(g: &Graph) -> Result<RadiusLaw> {
    let r = radius_of(g).ok_or(Error::NotConnected)?;
    if r <= 2 {
        return Ok(RadiusLaw::NotApplicable);
    }
    match radius_of(&graph::complement(g)) {
        Some(rc) if rc <= 2 => Ok(RadiusLaw::Holds),
        _ => Ok(RadiusLaw::Violated),
    }
}

/// One doubly connected graph of the exhaustive sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NgRecord {
    pub mask: u64,
    pub n: usize,
    pub b_g: usize,
    pub b_gbar: usize,
    pub product: usize,
    /// `(n + 4) − product`; negative only if the bound fails.
    pub slack: i64,
    pub equality: bool,
}

impl NgRecord {
    fn new(mask: u64, n: usize, b_g: usize, b_gbar: usize) -> Self {
        let product = b_g * b_gbar;
        let slack = (n + 4) as i64 - product as i64;
        Self { mask, n, b_g, b_gbar, product, slack, equality: slack == 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgReport {
    pub n: usize,
    pub graphs_examined: u64,
    /// Graphs with both `G` and `Ḡ` connected, in mask order.
    pub records: Vec<NgRecord>,
    pub max_product: usize,
    pub violations: usize,
    pub equality_masks: Vec<u64>,
    /// At `n = 5`: every equality case is a labeled 5-cycle and all 12 appear.
    pub equality_is_c5: Option<bool>,
    /// At `n = 5`: every equality case is 2-regular in `G` and in `Ḡ`.
    pub equality_degrees_two: Option<bool>,
    /// At `n = 4`: every doubly connected graph is a labeled `P_4`.
    pub only_p4: Option<bool>,
}

/// Brute-force isomorphism test over all vertex permutations (small `n` only).
pub fn isomorphic(a: &BitGraph, b: &BitGraph) -> bool {
    fn extend(p: &mut Vec<usize>, used: u64, a: &BitGraph, b: &BitGraph) -> bool {
        let k = p.len();
        if k == a.order() {
            return true;
        }
        for image in 0..b.order() {
            if used >> image & 1 == 1 || a.degree(k) != b.degree(image) {
                continue;
            }
            // edges between k and already placed vertices must map onto edges
            let consistent = (0..k).all(|u| (a.adjacency(k) >> u & 1) == (b.adjacency(image) >> p[u] & 1));
            if consistent {
                p.push(image);
                if extend(p, used | 1 << image, a, b) {
                    return true;
                }
                p.pop();
            }
        }
        false
    }
    a.order() == b.order() && extend(&mut Vec::with_capacity(a.order()), 0, a, b)
}

fn shard_records(n: usize, start: u64, end: u64) -> Vec<NgRecord> {
    (start..end)
        .filter_map(|mask| {
            let g = BitGraph::from_mask(n, mask);
            let gbar = g.complement();
            (g.is_connected() && gbar.is_connected())
                .then(|| NgRecord::new(mask, n, g.burning_number().0, gbar.burning_number().0))
        })
        .collect()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))
}

/// Every labeled graph on `n` vertices with `G` and `Ḡ` both connected, with
/// exact burning numbers of both. Mask shards run on `workers` threads and
/// are merged in mask order.
pub fn ng_exhaustive(n: usize, workers: usize) -> Result<NgReport> {
    if n == 0 || n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::TooLarge { order: n, cap: MAX_EXHAUSTIVE_ORDER });
    }
    let total = 1u64 << (n * (n - 1) / 2);
    let shards: Vec<(u64, u64)> = (0..total).step_by(SHARD as usize).map(|s| (s, (s + SHARD).min(total))).collect();
    let records: Vec<NgRecord> = pool(workers.max(1))?.install(|| {
        shards.par_iter().flat_map_iter(|&(s, e)| shard_records(n, s, e)).collect()
    });

    let max_product = records.iter().map(|r| r.product).max().unwrap_or(0);
    let violations = records.iter().filter(|r| r.slack < 0).count();
    let equality_masks: Vec<u64> = records.iter().filter(|r| r.equality).map(|r| r.mask).collect();

    let (mut equality_is_c5, mut equality_degrees_two, mut only_p4) = (None, None, None);
    if n == 5 {
        let c5 = BitGraph::from_graph(&gen::cycle(5)?)?;
        equality_is_c5 = Some(
            equality_masks.len() == 12 && equality_masks.iter().all(|&m| isomorphic(&BitGraph::from_mask(5, m), &c5)),
        );
        equality_degrees_two = Some(equality_masks.iter().all(|&m| {
            let g = BitGraph::from_mask(5, m);
            let gbar = g.complement();
            (0..5).all(|v| g.degree(v) == 2 && gbar.degree(v) == 2)
        }));
    }
    if n == 4 {
        let p4 = BitGraph::from_graph(&gen::path(4)?)?;
        only_p4 = Some(
            !records.is_empty()
                && records.iter().all(|r| r.product == 4 && isomorphic(&BitGraph::from_mask(4, r.mask), &p4)),
        );
    }
    Ok(NgReport {
        n,
        graphs_examined: total,
        records,
        max_product,
        violations,
        equality_masks,
        equality_is_c5,
        equality_degrees_two,
        only_p4,
    })
}

/// Writes records as CSV with header `mask,n,b_g,b_gbar,product,slack,equality`.
pub fn write_ng_csv<W: Write>(out: W, records: &[NgRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mask", "n", "b_g", "b_gbar", "product", "slack", "equality"])?;
    for r in records {
        w.write_record([
            r.mask.to_string(),
            r.n.to_string(),
            r.b_g.to_string(),
            r.b_gbar.to_string(),
            r.product.to_string(),
            r.slack.to_string(),
            r.equality.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest verified schedule among the constructive one and the single-ball
/// schedule from a center vertex (`radius + 1` rounds).
pub fn upper_burn(g: &Graph) -> Result<usize> {
    let constructed = construct::burn_graph(g)?.schedule.len();
    let m = graph::metrics(g)?;
    let cover = BurnCover::new(vec![(m.center[0], m.radius)]).complete_radii(m.radius + 1)?;
    let schedule = burn::cover_to_schedule(g, &cover)?;
    assert!(burn::simulate(g, &schedule, Strictness::Strict)?.all_burned());
    Ok(constructed.min(schedule.len()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgSample {
    pub n: usize,
    pub trials: usize,
    /// Product of [`upper_burn`] values per sampled pair, in sample order.
    pub upper_products: Vec<usize>,
    /// Exact products when `n` is within the exact solver's cap.
    pub exact_products: Option<Vec<usize>>,
    /// `3 · ⌈(−3 + √(24n + 33)) / 4⌉`.
    pub majorant: usize,
    /// Samples whose upper product exceeds the majorant.
    pub majorant_violations: usize,
    /// Samples whose exact product exceeds `n + 4`.
    pub exact_violations: usize,
}

impl NgSample {
    pub fn max_upper(&self) -> usize {
        self.upper_products.iter().copied().max().unwrap_or(0)
    }

    pub fn max_exact(&self) -> Option<usize> {
        self.exact_products.as_ref().and_then(|p| p.iter().copied().max())
    }
}

/// Random doubly connected graph of order `n` (edge probability 1/2).
pub fn random_doubly_connected(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("no doubly connected graphs of order {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..gen::CONNECT_ATTEMPTS {
        let g = gen::random_connected(n, 0.5, rng.gen())?;
        if graph::complement(&g).is_connected() {
            return Ok(g);
        }
    }
    Err(Error::ConnectivityRetries(gen::CONNECT_ATTEMPTS))
}

/// Samples `trials` doubly connected graphs and checks the product bound with
/// constructive upper bounds, plus exact values when `n ≤ config.max_order`.
pub fn ng_statistical(n: usize, trials: usize, seed: u64, config: &ExactConfig) -> Result<NgSample> {
    let majorant = 3 * bounds::burning_upper_bound(n as u64)? as usize;
    let exact = n <= config.max_order;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut upper_products = Vec::with_capacity(trials);
    let mut exact_products = exact.then(Vec::new);
    for _ in 0..trials {
        let g = random_doubly_connected(n, rng.gen())?;
        let gbar = graph::complement(&g);
        upper_products.push(upper_burn(&g)? * upper_burn(&gbar)?);
        if let Some(p) = exact_products.as_mut() {
            let bg = BitGraph::from_graph(&g)?;
            p.push(bg.burning_number().0 * bg.complement().burning_number().0);
        }
    }
    let majorant_violations = upper_products.iter().filter(|&&p| p > majorant).count();
    let exact_violations =
        exact_products.as_ref().map_or(0, |p| p.iter().filter(|&&x| x > n + 4).count());
    Ok(NgSample { n, trials, upper_products, exact_products, majorant, majorant_violations, exact_violations })
}
