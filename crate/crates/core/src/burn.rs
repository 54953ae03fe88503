//! The burning process: round-by-round simulation, ball-cover checks, and the
//! repair that turns a ball cover into a legal burning sequence.

use std::collections::VecDeque;

use crate::bounds::BudgetSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Round marker for vertices that never burn.
pub const NEVER: usize = usize::MAX;

/// Balls `N_radius[center]` claimed to cover the vertex set, largest radius first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BurnCover {
    entries: Vec<(usize, usize)>,
}

impl BurnCover {
    /// Entries are `(center, radius)`; they are put in canonical order
    /// (radius descending, then center ascending).
    pub fn new(mut entries: Vec<(usize, usize)>) -> Self {
        entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        Self { entries }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when the radii are exactly `k − 1, k − 2, …, 0` for `k = len()`.
    pub fn is_canonical(&self) -> bool {
        let k = self.entries.len();
        self.entries.iter().enumerate().all(|(i, &(_, r))| r == k - 1 - i)
    }

    /// Pads a cover with pairwise distinct radii below `k` to the full radius set
    /// `{0, …, k − 1}`. Missing radii get a copy of the first center; the
    /// schedule repair replaces such repeats.
    pub fn complete_radii(&self, k: usize) -> Result<Self> {
        let mut present = vec![false; k];
        for &(_, r) in &self.entries {
            if r >= k || present[r] {
                return Err(Error::NotCanonicalCover);
            }
            present[r] = true;
        }
        let filler = self.entries.first().map_or(0, |e| e.0);
        let mut entries = self.entries.clone();
        entries.extend((0..k).filter(|&r| !present[r]).map(|r| (filler, r)));
        Ok(Self::new(entries))
    }
}

/// Ignition sources in round order: `sources[i]` ignites in round `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BurnSchedule {
    sources: Vec<usize>,
}

impl BurnSchedule {
    pub fn new(sources: Vec<usize>) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::EmptySchedule);
        }
        for (i, &v) in sources.iter().enumerate() {
            if sources[..i].contains(&v) {
                return Err(Error::AlreadyBurned { vertex: v, round: i + 1 });
            }
        }
        Ok(Self { sources })
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }
}

/// How strictly [`simulate`] treats a source that is already on fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Igniting a vertex already burned by spread is a harmless no-op.
    #[default]
    Lenient,
    /// Each source must be unburned at the start of its round, i.e.
    /// `d(x_i, x_j) ≥ j − i` for all `i < j`.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnTrace {
    /// Round in which each vertex caught fire, or [`NEVER`].
    pub burned_at: Vec<usize>,
    pub rounds: usize,
}

impl BurnTrace {
    pub fn all_burned(&self) -> bool {
        self.burned_at.iter().all(|&t| t <= self.rounds)
    }

    /// Vertices that caught fire in each round, index 0 = round 1.
    pub fn by_round(&self) -> Vec<Vec<usize>> {
        let mut rounds = vec![Vec::new(); self.rounds];
        for (v, &t) in self.burned_at.iter().enumerate() {
            if t != NEVER {
                rounds[t - 1].push(v);
            }
        }
        rounds
    }
}

/// Runs the burning process for exactly `s.len()` rounds. In round `i` every
/// burned vertex spreads to its neighbours and `sources[i − 1]` is ignited.
pub fn simulate(g: &Graph, s: &BurnSchedule, strictness: Strictness) -> Result<BurnTrace> {
    for &v in s.sources() {
        g.check_vertex(v)?;
    }
    let mut burned_at = vec![NEVER; g.order()];
    let mut frontier: Vec<usize> = Vec::new();
    for (i, &source) in s.sources().iter().enumerate() {
        let round = i + 1;
        if burned_at[source] != NEVER && strictness == Strictness::Strict {
            return Err(Error::AlreadyBurned { vertex: source, round });
        }
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u) {
                if burned_at[v] == NEVER {
                    burned_at[v] = round;
                    next.push(v);
                }
            }
        }
        if burned_at[source] == NEVER {
            burned_at[source] = round;
            next.push(source);
        }
        frontier = next;
    }
    Ok(BurnTrace { burned_at, rounds: s.len() })
}

/// For every vertex, the largest `radius − d(center, v)` over all balls, or
/// `None` when no ball reaches it.
fn coverage_slack(g: &Graph, balls: &[(usize, usize)]) -> Result<Vec<Option<usize>>> {
    let mut slack: Vec<Option<usize>> = vec![None; g.order()];
    let max_r = balls.iter().map(|b| b.1).max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_r + 1];
    for &(c, r) in balls {
        g.check_vertex(c)?;
        if slack[c].is_none_or(|s| s < r) {
            slack[c] = Some(r);
            buckets[r].push(c);
        }
    }
    for r in (0..=max_r).rev() {
        let mut queue: VecDeque<usize> = std::mem::take(&mut buckets[r]).into();
        while let Some(u) = queue.pop_front() {
            if slack[u] != Some(r) || r == 0 {
                continue;
            }
            for &v in g.neighbors(u) {
                if slack[v].is_none_or(|s| s < r - 1) {
                    slack[v] = Some(r - 1);
                    buckets[r - 1].push(v);
                }
            }
        }
    }
    Ok(slack)
}

/// True iff every vertex lies within `radius` of some entry's center.
pub fn verify_cover(g: &Graph, c: &BurnCover) -> Result<bool> {
    Ok(coverage_slack(g, c.entries())?.iter().all(Option::is_some))
}

/// True iff balls of radius `a_i − 1` around `centers[i]` cover the graph,
/// pairing centers with the budgets in ascending order.
pub fn verify_a_cover(g: &Graph, budgets: &BudgetSet, centers: &[usize]) -> Result<bool> {
    if budgets.len() != centers.len() {
        return Err(Error::BudgetCenterMismatch { budgets: budgets.len(), centers: centers.len() });
    }
    let balls: Vec<(usize, usize)> =
        centers.iter().zip(budgets.values()).map(|(&c, &a)| (c, a - 1)).collect();
    verify_cover(g, &BurnCover::new(balls))
}

/// Converts a canonical cover (radii exactly `k − 1, …, 0`) into a burning
/// sequence of at most `k` distinct sources.
///
/// Entries are taken by decreasing radius. In round `i` the entry's center is
/// ignited unless earlier sources already reach it by round `i`; in that case its
/// ball lies inside an earlier source's final ball, and the smallest-id vertex
/// still unburned at the start of the round is ignited instead. When nothing is
/// left unburned the schedule stops early.
pub fn cover_to_schedule(g: &Graph, c: &BurnCover) -> Result<BurnSchedule> {
    if c.is_empty() || !c.is_canonical() {
        return Err(Error::NotCanonicalCover);
    }
    if !verify_cover(g, c)? {
        return Err(Error::CoverIncomplete);
    }
    let n = g.order();
    // earliest round at which the sources chosen so far reach each vertex
    let mut reach = vec![NEVER; n];
    let mut sources = Vec::with_capacity(c.len());
    for (i, &(center, _)) in c.entries().iter().enumerate() {
        let round = i + 1;
        let pick = if reach[center] > round {
            Some(center)
        } else {
            (0..n).find(|&v| reach[v] >= round)
        };
        let Some(source) = pick else { break };
        sources.push(source);
        relax_from(g, source, round, &mut reach);
    }
    BurnSchedule::new(sources)
}

fn relax_from(g: &Graph, source: usize, round: usize, reach: &mut [usize]) {
    let mut queue = VecDeque::new();
    if reach[source] > round {
        reach[source] = round;
        queue.push_back(source);
    }
    while let Some(u) = queue.pop_front() {
        let t = reach[u] + 1;
        for &v in g.neighbors(u) {
            if reach[v] > t {
                reach[v] = t;
                queue.push_back(v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs_distances;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn spider_2_2() -> Graph {
        // hub 0, P_0 = 0-1, legs 2-3 and 4-5
        Graph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)]).unwrap()
    }

    fn sched(v: &[usize]) -> BurnSchedule {
        BurnSchedule::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schedule_rejects_duplicates() {
        assert_eq!(BurnSchedule::new(vec![]), Err(Error::EmptySchedule));
        assert_eq!(BurnSchedule::new(vec![1, 2, 1]), Err(Error::AlreadyBurned { vertex: 1, round: 3 }));
    }

    #[test]
    fn simulate_examples() {
        let k5 = simulate(&complete(5), &sched(&[0, 1]), Strictness::Strict).unwrap();
        assert!(k5.all_burned());
        assert_eq!(k5.burned_at, vec![1, 2, 2, 2, 2]);

        let p4 = simulate(&path(4), &sched(&[1, 3]), Strictness::Strict).unwrap();
        assert_eq!(p4.burned_at, vec![2, 1, 2, 2]);
        assert!(p4.all_burned());

        let one = simulate(&Graph::empty(1).unwrap(), &sched(&[0]), Strictness::Strict).unwrap();
        assert_eq!(one.burned_at, vec![1]);

        let partial = simulate(&path(4), &sched(&[0]), Strictness::Lenient).unwrap();
        assert_eq!(partial.burned_at, vec![1, NEVER, NEVER, NEVER]);
        assert!(!partial.all_burned());
    }

    #[test]
    fn strict_mode_rejects_burned_sources() {
        // vertex 1 is burned by spread at the end of round 2, so igniting it in round 3 is illegal
        let s = sched(&[0, 3, 1]);
        assert_eq!(
            simulate(&path(4), &s, Strictness::Strict),
            Err(Error::AlreadyBurned { vertex: 1, round: 3 })
        );
        assert!(simulate(&path(4), &s, Strictness::Lenient).unwrap().all_burned());
        // reached by spread in the same round is allowed
        assert!(simulate(&path(3), &sched(&[0, 1]), Strictness::Strict).is_ok());
        assert!(simulate(&path(3), &sched(&[0, 7]), Strictness::Strict).is_err());
    }

    #[test]
    fn verify_cover_examples() {
        assert_eq!(verify_cover(&cycle(5), &BurnCover::new(vec![(0, 2)])), Ok(true));
        assert_eq!(verify_cover(&path(9), &BurnCover::new(vec![(6, 2), (2, 1), (0, 0)])), Ok(true));
        // 4 ± 2, 0 ± 1 and 8 leave vertex 7 uncovered
        assert_eq!(verify_cover(&path(9), &BurnCover::new(vec![(4, 2), (0, 1), (8, 0)])), Ok(false));
        assert_eq!(verify_cover(&path(4), &BurnCover::new(vec![(0, 0)])), Ok(false));
        assert!(verify_cover(&path(4), &BurnCover::new(vec![(9, 0)])).is_err());
    }

    #[test]
    fn verify_a_cover_examples() {
        let p5 = path(5);
        let b = BudgetSet::new(vec![2, 3]).unwrap();
        assert_eq!(verify_a_cover(&p5, &b, &[0, 2]), Ok(true));
        assert_eq!(verify_a_cover(&p5, &BudgetSet::new(vec![3]).unwrap(), &[2]), Ok(true));
        assert!(verify_a_cover(&p5, &b, &[0]).is_err());

        let spider = spider_2_2();
        let two = BudgetSet::new(vec![2, 2]).unwrap();
        for a in 0..6 {
            for c in 0..6 {
                assert_eq!(verify_a_cover(&spider, &two, &[a, c]), Ok(false));
            }
        }
    }

    #[test]
    fn unit_budgets_cover_only_all_vertices() {
        let g = cycle(4);
        let ones = BudgetSet::new(vec![1; 4]).unwrap();
        assert_eq!(verify_a_cover(&g, &ones, &[3, 1, 0, 2]), Ok(true));
        assert_eq!(verify_a_cover(&g, &ones, &[3, 1, 0, 0]), Ok(false));
    }

    #[test]
    fn cover_to_schedule_examples() {
        let p9 = path(9);
        let s = cover_to_schedule(&p9, &BurnCover::new(vec![(6, 2), (2, 1), (0, 0)])).unwrap();
        assert_eq!(s.sources(), &[6, 2, 0]);
        assert!(simulate(&p9, &s, Strictness::Strict).unwrap().all_burned());

        let k2 = complete(2);
        let s = cover_to_schedule(&k2, &BurnCover::new(vec![(0, 1), (1, 0)])).unwrap();
        assert_eq!(s.sources(), &[0, 1]);
        assert!(simulate(&k2, &s, Strictness::Strict).unwrap().all_burned());

        let c5 = cycle(5);
        let s = cover_to_schedule(&c5, &BurnCover::new(vec![(0, 2), (2, 1), (3, 0)])).unwrap();
        let trace = simulate(&c5, &s, Strictness::Strict).unwrap();
        assert!(trace.all_burned() && s.len() <= 3);
    }

    #[test]
    fn cover_to_schedule_repairs_repeated_centers() {
        let p6 = path(6);
        let cover = BurnCover::new(vec![(2, 2), (2, 1), (5, 0)]);
        let s = cover_to_schedule(&p6, &cover).unwrap();
        assert_eq!(s.sources(), &[2, 0, 5]);
        assert!(simulate(&p6, &s, Strictness::Strict).unwrap().all_burned());
    }

    #[test]
    fn cover_to_schedule_errors() {
        let p4 = path(4);
        assert_eq!(cover_to_schedule(&p4, &BurnCover::new(vec![(1, 2), (3, 0)])), Err(Error::NotCanonicalCover));
        assert_eq!(cover_to_schedule(&p4, &BurnCover::new(vec![(0, 1), (1, 0)])), Err(Error::CoverIncomplete));
    }

    #[test]
    fn complete_radii_fills_gaps() {
        let c = BurnCover::new(vec![(3, 2)]).complete_radii(3).unwrap();
        assert_eq!(c.entries(), &[(3, 2), (3, 1), (3, 0)]);
        assert!(c.is_canonical());
        assert_eq!(BurnCover::new(vec![(3, 2), (1, 2)]).complete_radii(3), Err(Error::NotCanonicalCover));
    }

    #[test]
    fn slack_matches_bfs_oracle() {
        let g = cycle(7);
        let balls = [(0, 2), (3, 1)];
        let slack = coverage_slack(&g, &balls).unwrap();
        let d0 = bfs_distances(&g, 0);
        let d3 = bfs_distances(&g, 3);
        for v in 0..7 {
            let best = [2 - d0[v] as isize, 1 - d3[v] as isize].into_iter().max().unwrap();
            assert_eq!(slack[v], (best >= 0).then_some(best as usize));
        }
    }
}
