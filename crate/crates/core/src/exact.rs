//! Exact burning numbers by branch and bound over ball covers.
//!
//! Graphs are packed into 64-bit adjacency masks, so the solver handles at most
//! 64 vertices; the configured cap is usually far lower.

use std::collections::HashMap;

use crate::bounds::BudgetSet;
use crate::burn::{self, BurnCover, BurnSchedule};
use crate::error::{Error, Result};
use crate::gen;
use crate::graph::Graph;

/// Hard limit imposed by the bitmask representation.
pub const MAX_BITGRAPH_ORDER: usize = 64;
/// Largest order accepted by [`spanning_tree_min_burn`].
pub const MAX_SPANNING_TREE_ORDER: usize = 8;

/// Graph on at most 64 vertices as adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitGraph {
    n: usize,
    adj: Vec<u64>,
}

fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (set != 0).then(|| {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            v
        })
    })
}

impl BitGraph {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.order();
        if n > MAX_BITGRAPH_ORDER {
            return Err(Error::TooLarge { order: n, cap: MAX_BITGRAPH_ORDER });
        }
        let adj = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
        Ok(Self { n, adj })
    }

    /// Graph whose edges are the set bits of `mask` in [`gen::pairs`] order.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n >= 1 && n * (n - 1) / 2 <= 64, "mask graphs need 1 ≤ n ≤ 11");
        let mut adj = vec![0u64; n];
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        Self { n, adj }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 }
    }

    pub fn adjacency(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn complement(&self) -> Self {
        let full = self.full();
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect();
        Self { n: self.n, adj }
    }

    pub fn to_graph(&self) -> Graph {
        let edges: Vec<_> =
            (0..self.n).flat_map(|u| bits(self.adj[u]).filter(move |&v| v > u).map(move |v| (u, v))).collect();
        Graph::from_edges(self.n, &edges).expect("bit graph is simple")
    }

    fn expand(&self, set: u64) -> u64 {
        bits(set).fold(set, |acc, v| acc | self.adj[v])
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        loop {
            let next = self.expand(seen);
            if next == seen {
                return seen == self.full();
            }
            seen = next;
        }
    }

    /// `balls[r][v]` is the closed neighbourhood of radius `r` around `v`.
    pub fn balls(&self, max_radius: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(max_radius + 1);
        out.push((0..self.n).map(|v| 1u64 << v).collect::<Vec<_>>());
        for r in 1..=max_radius {
            let next = out[r - 1].iter().map(|&b| self.expand(b)).collect();
            out.push(next);
        }
        out
    }

    /// Eccentricity of `v`, or `None` when the graph is disconnected.
    pub fn eccentricity(&self, v: usize) -> Option<usize> {
        let mut seen = 1u64 << v;
        let mut e = 0;
        while seen != self.full() {
            let next = self.expand(seen);
            if next == seen {
                return None;
            }
            seen = next;
            e += 1;
        }
        Some(e)
    }

    pub fn radius(&self) -> Option<usize> {
        (0..self.n).map(|v| self.eccentricity(v)).min().flatten()
    }

    /// Exact burning number of a connected graph together with the centers
    /// of a covering `[k]`-ball system (center `i` carries radius `k − 1 − i`).
    pub fn burning_number(&self) -> (usize, Vec<usize>, u64) {
        let radius = self.radius().expect("graph must be connected");
        let balls = self.balls(radius);
        let mut nodes = 0;
        for k in 1..=radius + 1 {
            let radii: Vec<usize> = (0..k).rev().collect();
            let mut search = CoverSearch::new(&balls, &radii);
            let found = search.run(self.full());
            nodes += search.nodes;
            if let Some(centers) = found {
                return (k, centers, nodes);
            }
        }
        unreachable!("a center ball of the radius covers the graph")
    }
}

/// Depth-first search for centers of a fixed multiset of radii.
struct CoverSearch<'a> {
    balls: &'a [Vec<u64>],
    /// Remaining ball count per radius.
    counts: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    nodes: u64,
}

impl<'a> CoverSearch<'a> {
    fn new(balls: &'a [Vec<u64>], radii: &[usize]) -> Self {
        let max = radii.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; max + 1];
        for &r in radii {
            counts[r] += 1;
        }
        Self { balls, counts, chosen: Vec::new(), nodes: 0 }
    }

    /// Centers listed by radius descending; unused balls sit on the first center.
    fn run(&mut self, target: u64) -> Option<Vec<usize>> {
        let original = self.counts.clone();
        if !self.dfs(target) {
            return None;
        }
        let filler = self.chosen.first().map_or(0, |c| c.1);
        let mut per_radius: Vec<Vec<usize>> = vec![Vec::new(); original.len()];
        for &(r, c) in &self.chosen {
            per_radius[r].push(c);
        }
        let mut centers = Vec::new();
        for r in (0..original.len()).rev() {
            for i in 0..original[r] {
                centers.push(per_radius[r].get(i).copied().unwrap_or(filler));
            }
        }
        Some(centers)
    }

    fn dfs(&mut self, uncovered: u64) -> bool {
        self.nodes += 1;
        if uncovered == 0 {
            return true;
        }
        let Some(top) = self.counts.iter().rposition(|&c| c > 0) else {
            return false;
        };
        let n = self.balls[0].len();

        // the best each remaining ball could do must add up to the uncovered count
        let mut reachable = 0usize;
        for r in 0..=top {
            if self.counts[r] > 0 {
                let best = (0..n).map(|c| (self.balls[r][c] & uncovered).count_ones()).max().unwrap_or(0);
                reachable += best as usize * self.counts[r];
            }
        }
        if reachable < uncovered.count_ones() as usize {
            return false;
        }

        // branch on the uncovered vertex with the fewest centers able to reach it
        let x = bits(uncovered).min_by_key(|&v| (self.balls[top][v].count_ones(), v)).expect("non-empty");
        for r in (0..=top).rev() {
            if self.counts[r] == 0 {
                continue;
            }
            let ball = &self.balls[r];
            let candidates: Vec<(usize, u64)> = bits(ball[x]).map(|c| (c, ball[c] & uncovered)).collect();
            let mut kept: Vec<(usize, u64)> = candidates
                .iter()
                .copied()
                .filter(|&(c, eff)| {
                    !candidates.iter().any(|&(d, other)| {
                        d != c && eff & !other == 0 && (eff != other || d < c)
                    })
                })
                .collect();
            kept.sort_by_key(|&(c, eff)| (std::cmp::Reverse(eff.count_ones()), c));
            self.counts[r] -= 1;
            for (c, eff) in kept {
                self.chosen.push((r, c));
                if self.dfs(uncovered & !eff) {
                    self.counts[r] += 1;
                    return true;
                }
                self.chosen.pop();
            }
            self.counts[r] += 1;
        }
        false
    }
}

/// Configuration for the exact solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    /// Largest order the solver accepts (at most [`MAX_BITGRAPH_ORDER`]).
    pub max_order: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self { max_order: 40 }
    }
}

impl ExactConfig {
    fn admit(&self, g: &Graph) -> Result<()> {
        let cap = self.max_order.min(MAX_BITGRAPH_ORDER);
        if g.order() > cap {
            return Err(Error::TooLarge { order: g.order(), cap });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: BurnSchedule,
    pub nodes_explored: u64,
}

/// Whether balls of radius `a_i − 1` can cover `g`; on success the centers are
/// paired with the budgets in ascending order. Centers may repeat.
pub fn is_a_burnable(g: &Graph, budgets: &BudgetSet, config: &ExactConfig) -> Result<Option<Vec<usize>>> {
    config.admit(g)?;
    if budgets.is_empty() {
        return Ok(None);
    }
    let bg = BitGraph::from_graph(g)?;
    let max_r = budgets.max().expect("non-empty") - 1;
    let balls = bg.balls(max_r.min(g.order()));
    // radii past n − 1 behave like n − 1
    let radii: Vec<usize> = budgets.values().iter().rev().map(|&a| (a - 1).min(g.order())).collect();
    let mut search = CoverSearch::new(&balls, &radii);
    Ok(search.run(bg.full()).map(|mut centers| {
        centers.reverse();
        centers
    }))
}

/// Exact burning number with a witness schedule of that length.
pub fn burning_number_exact(g: &Graph, config: &ExactConfig) -> Result<SolveResult> {
    config.admit(g)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let bg = BitGraph::from_graph(g)?;
    let (k, centers, nodes_explored) = bg.burning_number();
    let cover = BurnCover::new(centers.iter().enumerate().map(|(i, &c)| (c, k - 1 - i)).collect());
    let witness = burn::cover_to_schedule(g, &cover)?;
    assert_eq!(witness.len(), k, "a shorter schedule would contradict minimality");
    Ok(SolveResult { value: k, witness, nodes_explored })
}

/// All spanning trees of a connected graph on at most
/// [`MAX_SPANNING_TREE_ORDER`] vertices, as edge masks in [`gen::pairs`] order.
pub fn spanning_trees(g: &Graph) -> Result<Vec<u64>> {
    let n = g.order();
    if n > MAX_SPANNING_TREE_ORDER {
        return Err(Error::TooLarge { order: n, cap: MAX_SPANNING_TREE_ORDER });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let edges: Vec<(usize, usize, u32)> = gen::pairs(n)
        .into_iter()
        .enumerate()
        .filter(|&(_, (u, v))| g.has_edge(u, v))
        .map(|(bit, (u, v))| (u, v, bit as u32))
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![0u64; n];
    grow_trees(&edges, 0, &mut chosen, 0, 0, n, &mut out);
    Ok(out)
}

fn reach(adj: &[u64], from: usize) -> u64 {
    let mut seen = 1u64 << from;
    loop {
        let next = bits(seen).fold(seen, |acc, v| acc | adj[v]);
        if next == seen {
            return seen;
        }
        seen = next;
    }
}

fn grow_trees(
    edges: &[(usize, usize, u32)],
    i: usize,
    chosen: &mut Vec<u64>,
    mask: u64,
    count: usize,
    n: usize,
    out: &mut Vec<u64>,
) {
    if count + 1 == n || n == 1 {
        out.push(mask);
        return;
    }
    if i == edges.len() {
        return;
    }
    let (u, v, bit) = edges[i];
    if reach(chosen, u) >> v & 1 == 0 {
        chosen[u] |= 1 << v;
        chosen[v] |= 1 << u;
        grow_trees(edges, i + 1, chosen, mask | 1 << bit, count + 1, n, out);
        chosen[u] &= !(1 << v);
        chosen[v] &= !(1 << u);
    }
    // skipping edge i must leave chosen ∪ later edges connected
    let mut rest = chosen.clone();
    for &(a, b, _) in &edges[i + 1..] {
        rest[a] |= 1 << b;
        rest[b] |= 1 << a;
    }
    if reach(&rest, 0).count_ones() as usize == n {
        grow_trees(edges, i + 1, chosen, mask, count, n, out);
    }
}

/// Minimum exact burning number over all spanning trees, with a memo keyed by
/// tree edge mask so repeated trees across many graphs are solved once.
#[derive(Debug, Default)]
pub struct SpanningTreeBurner {
    memo: HashMap<(usize, u64), usize>,
}

impl SpanningTreeBurner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn min_burn(&mut self, g: &Graph) -> Result<usize> {
        let n = g.order();
        let floor = if n == 1 { 1 } else { 2 };
        let mut best = usize::MAX;
        for mask in spanning_trees(g)? {
            let b = *self.memo.entry((n, mask)).or_insert_with(|| BitGraph::from_mask(n, mask).burning_number().0);
            best = best.min(b);
            if best == floor {
                break;
            }
        }
        Ok(best)
    }
}

/// `min{b(T) : T a spanning tree of g}` for connected `g` with `n ≤ 8`.
pub fn spanning_tree_min_burn(g: &Graph) -> Result<usize> {
    SpanningTreeBurner::new().min_burn(g)
}
