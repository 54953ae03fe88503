//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.
//!
//! Every check here is exact (integer equality or zero failures); wall-clock
//! limits are pinned next to each criterion.

use std::time::{Duration, Instant};

use graphburn::bounds::{self, BudgetSet};
use graphburn::burn::{self, BurnCover, Strictness};
use graphburn::construct;
use graphburn::exact::{self, ExactConfig, SpanningTreeBurner};
use graphburn::gen;
use graphburn::graph::{bfs_distances, Graph};
use graphburn::ng::{self, RadiusLaw};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn ceil_sqrt(n: usize) -> usize {
    (1..).find(|r| r * r >= n).unwrap()
}

/// Coverage check straight from BFS distances, independent of the library's verifier.
fn balls_cover(g: &Graph, entries: &[(usize, usize)]) -> bool {
    let mut covered = vec![false; g.order()];
    for &(c, r) in entries {
        for (v, d) in bfs_distances(g, c).into_iter().enumerate() {
            covered[v] |= d <= r;
        }
    }
    covered.into_iter().all(|c| c)
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (t <= limit, format!("{:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

fn paths() -> Outcome {
    let start = Instant::now();
    let bad: Vec<usize> = (1..=25)
        .filter(|&n| {
            let b = exact::burning_number_exact(&gen::path(n).unwrap(), &ExactConfig::default()).unwrap().value;
            b != ceil_sqrt(n)
        })
        .collect();
    let (fast, time) = within(Duration::from_secs(10), start);
    outcome(bad.is_empty() && fast, format!("b(P_n) = ceil(sqrt n) for n=1..25, mismatches {bad:?} ({time})"))
}

fn named_values() -> Outcome {
    let cfg = ExactConfig::default();
    let b = |g: Graph| exact::burning_number_exact(&g, &cfg).unwrap().value;
    let complete: Vec<usize> = (2..=8).map(|n| b(gen::complete(n).unwrap())).collect();
    let p4 = b(gen::path(4).unwrap());
    let c5 = b(gen::cycle(5).unwrap());
    outcome(
        complete.iter().all(|&k| k == 2) && p4 == 2 && c5 == 3,
        format!("b(K_2..K_8) = {complete:?} (want all 2), b(P_4) = {p4} (want 2), b(C_5) = {c5} (want 3)"),
    )
}

/// Runs the distinct-budget construction with the capacity-derived `k` and checks the result.
fn tree_ok(t: &graphburn::RootedTree) -> bool {
    let n = t.order();
    let k = bounds::capacity_rounds(n as u64) as usize;
    if k as u64 > bounds::burning_upper_bound(n as u64).unwrap() {
        return false;
    }
    let Ok(c) = construct::burn_tree_distinct(t, &BudgetSet::first_k(k)) else { return false };
    let entries = c.cover.entries();
    let distinct_radii = entries.windows(2).all(|w| w[0].1 > w[1].1);
    distinct_radii && entries.iter().all(|&(_, r)| r < k) && balls_cover(t.graph(), entries)
}

fn tree_construction() -> Outcome {
    let start = Instant::now();
    let mut enumerated = 0usize;
    let mut failures = 0usize;
    for n in 1..=gen::MAX_ENUMERATED_TREE_ORDER {
        let trees: Vec<_> = gen::enumerate_trees(n).unwrap().collect();
        enumerated += trees.len();
        failures += trees.par_iter().filter(|t| !tree_ok(t)).count();
    }
    let random = 10_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee5);
    let jobs: Vec<(usize, u64)> = (0..random).map(|_| (rng.gen_range(1..=500u64) as usize, rng.gen())).collect();
    failures += jobs.par_iter().filter(|&&(n, seed)| !tree_ok(&gen::random_tree(n, seed).unwrap())).count();
    let (fast, time) = within(Duration::from_secs(300), start);
    outcome(
        failures == 0 && fast,
        format!("{enumerated} enumerated trees (n<=9) + {random} random trees (n<=500), {failures} failures ({time})"),
    )
}

fn spider_tightness() -> Outcome {
    let start = Instant::now();
    let cfg = ExactConfig::default();
    let mut notes = Vec::new();
    let mut pass = true;
    for (k, a) in [(2, 2), (2, 3), (3, 2)] {
        let spider = gen::spider(k, a).unwrap();
        let budgets = BudgetSet::repeated(a, k).unwrap();
        let full = exact::is_a_burnable(&spider, &budgets, &cfg).unwrap();
        // drop the far leaf of the last leg, which has the largest id
        let n = spider.order() - 1;
        let edges: Vec<_> = spider.edges().filter(|&(u, v)| u < n && v < n).collect();
        let trimmed = Graph::from_edges(n, &edges).unwrap();
        let cut = exact::is_a_burnable(&trimmed, &budgets, &cfg).unwrap();
        let cut_ok = cut.as_ref().is_some_and(|centers| {
            balls_cover(&trimmed, &centers.iter().map(|&c| (c, a - 1)).collect::<Vec<_>>())
        });
        pass &= full.is_none() && cut_ok;
        notes.push(format!("({k},{a}): full={} trimmed={}", full.is_some(), cut.is_some()));
    }
    let (fast, time) = within(Duration::from_secs(30), start);
    outcome(pass && fast, format!("{} (want full=false trimmed=true; {time})", notes.join(", ")))
}

fn identities() -> Outcome {
    let mut bad = Vec::new();
    let mut floor_sum = 0u64;
    for k in 1..=10_000u64 {
        floor_sum += (k - 1) / 3;
        if floor_sum != bounds::distinct_bonus(k) {
            bad.push(("floor-sum", k));
        }
        let lhs = k * (k + 1) / 2 + k - 1 + bounds::distinct_bonus(k);
        if lhs != bounds::capacity(k) {
            bad.push(("capacity", k));
        }
    }
    outcome(
        bad.is_empty(),
        format!("sum floor((i-1)/3) = floor((k^2-3k+2)/6) and k(k+1)/2+k-1+bonus = capacity for k<=10^4, {} mismatches", bad.len()),
    )
}

fn spanning_tree_reduction() -> Outcome {
    let start = Instant::now();
    let cfg = ExactConfig::default();
    let mut burner = SpanningTreeBurner::new();
    let (mut checked, mut mismatches) = (0usize, 0usize);
    for n in 1..=6 {
        for (_, g) in gen::enumerate_graphs(n).unwrap().filter(|(_, g)| g.is_connected()) {
            checked += 1;
            let direct = exact::burning_number_exact(&g, &cfg).unwrap().value;
            if direct != burner.min_burn(&g).unwrap() {
                mismatches += 1;
            }
        }
    }
    let (fast, time) = within(Duration::from_secs(600), start);
    outcome(
        mismatches == 0 && fast,
        format!("{checked} connected labeled graphs (n<=6): b(G) = min over spanning trees, {mismatches} mismatches ({time})"),
    )
}

fn complement_products() -> Outcome {
    let workers = 8;
    let mut pass = true;
    let mut notes = Vec::new();
    let mut n7_time = String::new();
    for n in 4..=7 {
        let start = Instant::now();
        let r = ng::ng_exhaustive(n, workers).unwrap();
        pass &= r.violations == 0 && r.max_product <= n + 4;
        match n {
            4 => pass &= r.only_p4 == Some(true),
            5 => pass &= r.equality_is_c5 == Some(true) && r.max_product == 9,
            7 => {
                let (fast, time) = within(Duration::from_secs(1800), start);
                pass &= fast;
                n7_time = time;
            }
            _ => {}
        }
        notes.push(format!(
            "n={n}: {} doubly connected, max product {}, {} violations, {} equality",
            r.records.len(),
            r.max_product,
            r.violations,
            r.equality_masks.len()
        ));
    }
    outcome(
        pass,
        format!("{}; n=4 only P_4, n=5 equality = 12 labeled C_5 (n=7 {n7_time}, {workers} workers)", notes.join("; ")),
    )
}

fn radius_law() -> Outcome {
    let samples = 100_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e44a);
    let jobs: Vec<(usize, u64, u64)> =
        (0..samples).map(|_| (rng.gen_range(4..=60u64) as usize, rng.gen(), rng.gen_range(0..4u64))).collect();
    let results: Vec<RadiusLaw> = jobs
        .par_iter()
        .map(|&(n, seed, kind)| {
            let g = if kind == 0 {
                gen::random_tree(n, seed).unwrap().graph().clone()
            } else {
                // sparse enough that radius >= 3 is common
                let p = (kind as f64 * 0.5 + 0.5) * (n as f64).ln() / n as f64;
                gen::random_connected(n, p.min(1.0), seed).unwrap()
            };
            ng::complement_radius_check(&g).unwrap()
        })
        .collect();
    let applicable = results.iter().filter(|&&r| r != RadiusLaw::NotApplicable).count();
    let violated = results.iter().filter(|&&r| r == RadiusLaw::Violated).count();
    outcome(
        violated == 0 && applicable > 0,
        format!("{samples} connected graphs (n in 4..60), {applicable} with radius>=3, {violated} complements not connected with radius<=2"),
    )
}

/// A canonical cover of a random tree: the constructive cover padded to all
/// radii, then randomly perturbed while it keeps covering.
fn random_canonical_cover(t: &graphburn::RootedTree, rng: &mut ChaCha8Rng) -> (usize, BurnCover) {
    let n = t.order();
    let k = bounds::capacity_rounds(n as u64) as usize + rng.gen_range(0..3u64) as usize;
    let c = construct::burn_tree_distinct(t, &BudgetSet::first_k(k)).unwrap().cover.complete_radii(k).unwrap();
    let mut entries = c.entries().to_vec();
    for _ in 0..3 * k {
        let i = rng.gen_range(0..entries.len() as u64) as usize;
        let old = entries[i].0;
        entries[i].0 = rng.gen_range(0..n as u64) as usize;
        if !balls_cover(t.graph(), &entries) {
            entries[i].0 = old;
        }
    }
    (k, BurnCover::new(entries))
}

fn repair_soundness() -> Outcome {
    let pairs = 10_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c4ed);
    let jobs: Vec<(usize, u64)> = (0..pairs).map(|_| (rng.gen_range(1..=200u64) as usize, rng.gen())).collect();
    let failures = jobs
        .par_iter()
        .filter(|&&(n, seed)| {
            let t = gen::random_tree(n, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (k, cover) = random_canonical_cover(&t, &mut rng);
            let ok = burn::cover_to_schedule(t.graph(), &cover).is_ok_and(|s| {
                s.len() <= k
                    && burn::simulate(t.graph(), &s, Strictness::Strict).is_ok_and(|tr| tr.all_burned() && tr.rounds <= k)
            });
            !ok
        })
        .count();
    outcome(failures == 0, format!("{pairs} (tree, canonical cover) pairs, {failures} schedules failing to burn within k rounds"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("path formula", paths),
        ("named values", named_values),
        ("tree construction within the upper bound", tree_construction),
        ("multiset threshold tightness on spiders", spider_tightness),
        ("floor-sum and capacity identities", identities),
        ("spanning-tree reduction", spanning_tree_reduction),
        ("exhaustive complement products", complement_products),
        ("complement radius law", radius_law),
        ("cover-to-schedule repair soundness", repair_soundness),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!("criterion {} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
