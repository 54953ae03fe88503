//! Constructive covers of trees by balls with prescribed budgets, and the
//! pipeline that burns any connected graph in `capacity_rounds(n)` rounds.
//!
//! Both tree procedures peel the tree from its deepest leaf `u`: they pick a
//! vertex on the path from `u` toward the root, spend one budget on a ball there,
//! cut the subtree hanging below it and recurse on what is left. The root never
//! moves, so depths stay valid as subtrees are cut away.

use std::collections::VecDeque;
use std::fmt;

use crate::bounds::{self, BudgetSet};
use crate::burn::{self, BurnCover, BurnSchedule, Strictness};
use crate::error::{Error, Result};
use crate::graph::{self, Graph, RootedTree, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Every remaining vertex is within the largest budget's radius of the root.
    HeightFitsRoot,
    /// One budget left: a ball at the center of what remains.
    SingleBall,
    /// Multiset procedure: smallest budget placed `a_min − 1` above the deepest leaf.
    PathPrune,
    /// Distinct procedure: the ball at `v_i` swallows the whole subtree at `t`.
    Swallow,
    /// Distinct procedure: a long side branch below `t` forces the second-largest
    /// budget, whose ball takes the subtree `a_{k−1} − 1` above the deepest leaf.
    LongBranch,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::HeightFitsRoot => "height-fits-root",
            CaseTag::SingleBall => "single-ball",
            CaseTag::PathPrune => "path-prune",
            CaseTag::Swallow => "swallow",
            CaseTag::LongBranch => "long-branch",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionStep {
    pub budget: usize,
    /// Center in the ids of the input tree.
    pub center: usize,
    pub case: CaseTag,
    /// Vertices removed from the working tree by this step.
    pub pruned: usize,
    /// For [`CaseTag::LongBranch`]: length of the side branch that triggered it.
    pub branch_length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub cover: BurnCover,
    pub steps: Vec<ConstructionStep>,
}

impl Construction {
    /// Budgets actually spent, ascending.
    pub fn used_budgets(&self) -> BudgetSet {
        BudgetSet::new(self.steps.iter().map(|s| s.budget).collect()).expect("budgets are positive")
    }

    /// One line per step: `step=<i> case=<tag> budget=<a> center=<v> pruned=<s>`.
    pub fn log_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step={} case={} budget={} center={} pruned={}",
                i + 1,
                s.case,
                s.budget,
                s.center,
                s.pruned
            ));
            if let Some(len) = s.branch_length {
                out.push_str(&format!(" branch={len}"));
            }
            out.push('\n');
        }
        out
    }
}

/// A rooted tree with vertices being cut away.
struct Peeler<'a> {
    tree: &'a RootedTree,
    alive: Vec<bool>,
    remaining: usize,
    preorder: Vec<usize>,
    enter: Vec<usize>,
    exit: Vec<usize>,
    steps: Vec<ConstructionStep>,
}

impl<'a> Peeler<'a> {
    fn new(tree: &'a RootedTree) -> Self {
        let n = tree.order();
        let mut preorder = Vec::with_capacity(n);
        let mut enter = vec![0; n];
        let mut exit = vec![0; n];
        let mut stack = vec![(tree.root(), false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                exit[v] = preorder.len();
                continue;
            }
            enter[v] = preorder.len();
            preorder.push(v);
            stack.push((v, true));
            stack.extend(tree.children(v).map(|c| (c, false)));
        }
        Self { tree, alive: vec![true; n], remaining: n, preorder, enter, exit, steps: Vec::new() }
    }

    fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.enter[a] <= self.enter[b] && self.enter[b] < self.exit[a]
    }

    /// Height of the remaining tree and its deepest vertex (smallest id on ties).
    fn deepest(&self) -> (usize, usize) {
        let mut best = (0, self.tree.root());
        for v in 0..self.tree.order() {
            if self.alive[v] {
                let d = self.tree.depth(v);
                if d > best.0 || (d == best.0 && v < best.1) {
                    best = (d, v);
                }
            }
        }
        best
    }

    fn ancestor(&self, mut v: usize, steps: usize) -> usize {
        for _ in 0..steps {
            v = self.tree.parent(v);
        }
        v
    }

    fn subtree(&self, v: usize) -> Vec<usize> {
        self.preorder[self.enter[v]..self.exit[v]].iter().copied().filter(|&x| self.alive[x]).collect()
    }

    fn cut(&mut self, vertices: &[usize]) {
        for &v in vertices {
            self.alive[v] = false;
        }
        self.remaining -= vertices.len();
    }

    /// BFS distances from `src` through vertices accepted by `allowed`.
    fn distances_within(&self, src: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
        let g = self.tree.graph();
        let mut dist = vec![UNREACHABLE; g.order()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if dist[y] == UNREACHABLE && allowed(y) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Farthest vertex from `src` within the remaining tree, smallest id on ties.
    fn farthest(&self, src: usize) -> (usize, usize, Vec<usize>) {
        let dist = self.distances_within(src, |y| self.alive[y]);
        let mut best = (0, src);
        for (v, &d) in dist.iter().enumerate() {
            if d != UNREACHABLE && d > best.0 {
                best = (d, v);
            }
        }
        (best.0, best.1, dist)
    }

    /// Radius and smallest-id center of the remaining tree via a diameter path.
    fn center(&self) -> (usize, usize) {
        let (_, a, _) = self.farthest(self.tree.root());
        let (diameter, b, dist) = self.farthest(a);
        // walk back from b to a along decreasing distance
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = *self
                .tree
                .graph()
                .neighbors(cur)
                .iter()
                .find(|&&y| dist[y] != UNREACHABLE && dist[y] + 1 == dist[cur])
                .expect("tree path exists");
            path.push(cur);
        }
        let mid = diameter / 2;
        let center = if diameter % 2 == 0 { path[mid] } else { path[mid].min(path[mid + 1]) };
        (diameter.div_ceil(2), center)
    }

    fn emit(&mut self, budget: usize, center: usize, case: CaseTag, pruned: usize, branch_length: Option<usize>) {
        self.steps.push(ConstructionStep { budget, center, case, pruned, branch_length });
    }

    /// Shared exits: root ball when the height fits, center ball for a lone budget.
    fn try_finish(&mut self, budgets: &BudgetSet) -> bool {
        let largest = budgets.max().expect("budgets remain while vertices remain");
        let (height, _) = self.deepest();
        if height < largest {
            let root = self.tree.root();
            let count = self.remaining;
            self.emit(largest, root, CaseTag::HeightFitsRoot, count, None);
            self.remaining = 0;
            return true;
        }
        if budgets.len() == 1 {
            let (radius, center) = self.center();
            assert!(radius < largest, "order bound violated: radius {radius} with budget {largest}");
            let count = self.remaining;
            self.emit(largest, center, CaseTag::SingleBall, count, None);
            self.remaining = 0;
            return true;
        }
        false
    }

    fn finish(self) -> Construction {
        let cover = BurnCover::new(self.steps.iter().map(|s| (s.center, s.budget - 1)).collect());
        Construction { cover, steps: self.steps }
    }
}

fn check_order(t: &RootedTree, budgets: &BudgetSet, threshold: usize) -> Result<()> {
    if budgets.is_empty() {
        return Err(Error::EmptyBudgets);
    }
    if t.order() > threshold {
        return Err(Error::OverThreshold { order: t.order(), threshold });
    }
    Ok(())
}

fn assert_covers(t: &RootedTree, c: &Construction) {
    let ok = burn::verify_a_cover(t.graph(), &c.used_budgets(), &{
        let mut steps = c.steps.clone();
        steps.sort_by_key(|s| s.budget);
        steps.iter().map(|s| s.center).collect::<Vec<_>>()
    });
    assert_eq!(ok, Ok(true), "constructed cover fails to cover the tree");
}

/// Covers a tree of order at most `Σa + max(a) − 1` with one ball of radius
/// `a − 1` per budget (multiset allowed). Unused budgets are dropped.
pub fn burn_tree_multiset(t: &RootedTree, budgets: &BudgetSet) -> Result<Construction> {
    if budgets.is_empty() {
        return Err(Error::EmptyBudgets);
    }
    check_order(t, budgets, bounds::multiset_threshold(budgets)?)?;
    let mut peeler = Peeler::new(t);
    let mut budgets = budgets.clone();
    while peeler.remaining > 0 && !peeler.try_finish(&budgets) {
        let smallest = budgets.min().expect("more than one budget");
        let (_, leaf) = peeler.deepest();
        let v = peeler.ancestor(leaf, smallest - 1);
        let cut = peeler.subtree(v);
        assert!(cut.len() >= smallest, "cut of {} vertices below budget {smallest}", cut.len());
        peeler.cut(&cut);
        peeler.emit(smallest, v, CaseTag::PathPrune, cut.len(), None);
        budgets = budgets.without(smallest);
    }
    let c = peeler.finish();
    assert_covers(t, &c);
    Ok(c)
}

/// Covers a tree of order at most `Σa + max(a) − 1 + ⌊(k² − 3k + 2)/6⌋` with
/// balls of radius `a_i − 1` for strictly increasing budgets `a_1 < … < a_k`.
pub fn burn_tree_distinct(t: &RootedTree, budgets: &BudgetSet) -> Result<Construction> {
    if budgets.is_empty() {
        return Err(Error::EmptyBudgets);
    }
    check_order(t, budgets, bounds::distinct_threshold(budgets)?)?;
    let mut peeler = Peeler::new(t);
    let mut budgets = budgets.clone();
    while peeler.remaining > 0 && !peeler.try_finish(&budgets) {
        let k = budgets.len();
        let lower = &budgets.values()[..k - 1];
        let j = (k - 1) / 3;
        let middle = lower[bounds::select_middle_budget(lower)];
        let second = lower[k - 2];

        let (_, leaf) = peeler.deepest();
        let vi = peeler.ancestor(leaf, middle - 1);
        let top = peeler.ancestor(vi, j);
        let below_top = peeler.subtree(top);
        let dist = peeler.distances_within(vi, |y| peeler.alive[y] && peeler.is_ancestor(top, y));
        let mut far = (0, vi);
        for &x in &below_top {
            if dist[x] > far.0 || (dist[x] == far.0 && x < far.1) {
                far = (dist[x], x);
            }
        }

        if far.0 < middle {
            assert!(below_top.len() >= middle + j, "swallowed {} < {}", below_top.len(), middle + j);
            peeler.cut(&below_top);
            peeler.emit(middle, vi, CaseTag::Swallow, below_top.len(), None);
            budgets = budgets.without(middle);
        } else {
            let z = far.1;
            let mut w = z;
            while !peeler.is_ancestor(w, leaf) {
                w = t.parent(w);
            }
            let branch = t.depth(z) - t.depth(w);
            assert!(branch >= j, "side branch {branch} shorter than {j}");
            let vk = peeler.ancestor(leaf, second - 1);
            let cut = peeler.subtree(vk);
            assert!(cut.len() >= second + branch, "cut {} < {} + {branch}", cut.len(), second);
            peeler.cut(&cut);
            peeler.emit(second, vk, CaseTag::LongBranch, cut.len(), Some(branch));
            budgets = budgets.without(second);
        }
    }
    let c = peeler.finish();
    assert_covers(t, &c);
    Ok(c)
}

/// Result of [`burn_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphBurning {
    pub rounds: usize,
    pub cover: BurnCover,
    pub schedule: BurnSchedule,
    pub construction: Construction,
}

/// Burns a connected graph in `k = min{k : capacity(k) ≥ n}` rounds: BFS tree
/// from a center vertex, distinct budgets `{1, …, k}`, then schedule repair.
pub fn burn_graph(g: &Graph) -> Result<GraphBurning> {
    let center = graph::metrics(g)?.center[0];
    let tree = graph::bfs_spanning_tree(g, center)?;
    let k = bounds::capacity_rounds(g.order() as u64) as usize;
    let construction = burn_tree_distinct(&tree, &BudgetSet::first_k(k))?;
    let cover = construction.cover.complete_radii(k)?;
    let schedule = burn::cover_to_schedule(g, &cover)?;
    let trace = burn::simulate(g, &schedule, Strictness::Strict)?;
    assert!(trace.all_burned(), "repaired schedule leaves vertices unburned");
    Ok(GraphBurning { rounds: k, cover, schedule, construction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn rooted(g: Graph, r: usize) -> RootedTree {
        RootedTree::new(g, r).unwrap()
    }

    fn set(v: &[usize]) -> BudgetSet {
        BudgetSet::new(v.to_vec()).unwrap()
    }

    /// Tree from a parent list: vertex `i + 1` hangs below `parents[i] % (i + 1)`.
    fn tree_from_parents(parents: &[usize]) -> Graph {
        let edges: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p % (i + 1), i + 1)).collect();
        Graph::from_edges(parents.len() + 1, &edges).unwrap()
    }

    #[test]
    fn multiset_examples() {
        let c = burn_tree_multiset(&rooted(path(3), 0), &set(&[2])).unwrap();
        assert_eq!(c.cover.entries(), &[(1, 1)]);

        // spider(3,2) without its last leaf: hub 0, P_0 = 0-1, legs 2-3, 4-5, 6
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (0, 6)]).unwrap();
        let b = set(&[2, 2, 2]);
        for root in 0..7 {
            let c = burn_tree_multiset(&rooted(g.clone(), root), &b).unwrap();
            assert!(burn::verify_cover(&g, &c.cover).unwrap());
        }

        let c = burn_tree_multiset(&rooted(path(8), 0), &set(&[1, 2, 3])).unwrap();
        let mut radii: Vec<usize> = c.cover.entries().iter().map(|e| e.1).collect();
        radii.sort_unstable();
        assert_eq!(radii, vec![0, 1, 2]);
        assert_eq!(c.steps.iter().map(|s| s.pruned).collect::<Vec<_>>(), vec![1, 2, 5]);
        assert!(burn::verify_cover(&path(8), &c.cover).unwrap());
    }

    #[test]
    fn multiset_errors() {
        let t = rooted(path(9), 0);
        assert_eq!(
            burn_tree_multiset(&t, &set(&[1, 2, 3])),
            Err(Error::OverThreshold { order: 9, threshold: 8 })
        );
        assert_eq!(burn_tree_multiset(&t, &set(&[])), Err(Error::EmptyBudgets));
    }

    #[test]
    fn distinct_examples() {
        for n in 1..=9 {
            let c = burn_tree_distinct(&rooted(path(n), 0), &set(&[5])).unwrap();
            assert_eq!(c.cover.len(), 1);
        }
        let c = burn_tree_distinct(&rooted(path(14), 0), &set(&[1, 2, 3, 4])).unwrap();
        assert!(burn::verify_cover(&path(14), &c.cover).unwrap());
        assert_eq!(
            burn_tree_distinct(&rooted(path(15), 0), &set(&[1, 2, 3, 4])),
            Err(Error::OverThreshold { order: 15, threshold: 14 })
        );
        assert_eq!(burn_tree_distinct(&rooted(path(3), 0), &set(&[2, 2])), Err(Error::BudgetsNotDistinct));
    }

    #[test]
    fn long_branch_case_fires() {
        // path 0..9 rooted at 0, plus branch 7-10-11 hanging off t = 7
        let mut edges: Vec<_> = (1..10).map(|i| (i - 1, i)).collect();
        edges.extend([(7, 10), (10, 11)]);
        let g = Graph::from_edges(12, &edges).unwrap();
        let c = burn_tree_distinct(&rooted(g.clone(), 0), &set(&[1, 2, 3, 4])).unwrap();
        let first = &c.steps[0];
        assert_eq!(first.case, CaseTag::LongBranch);
        assert_eq!((first.budget, first.center, first.pruned, first.branch_length), (3, 7, 5, Some(2)));
        assert!(burn::verify_cover(&g, &c.cover).unwrap());
        assert!(c.log_text().starts_with("step=1 case=long-branch budget=3 center=7 pruned=5 branch=2\n"));
    }

    #[test]
    fn burn_graph_examples() {
        let k5 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
            .unwrap();
        let r = burn_graph(&k5).unwrap();
        assert!(r.rounds <= 3 && r.schedule.len() <= r.rounds);

        let r = burn_graph(&path(9)).unwrap();
        assert_eq!(r.rounds, 4);
        assert!(burn::simulate(&path(9), &r.schedule, Strictness::Strict).unwrap().all_burned());

        let r = burn_graph(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!((r.rounds, r.schedule.sources()), (1, &[0][..]));

        assert_eq!(burn_graph(&Graph::empty(3).unwrap()).map(|r| r.rounds), Err(Error::NotConnected));
    }

    proptest! {
        #[test]
        fn distinct_construction_is_sound(parents in proptest::collection::vec(0usize..1000, 0..120), root_seed in 0usize..1000) {
            let g = tree_from_parents(&parents);
            let n = g.order();
            let t = rooted(g.clone(), root_seed % n);
            let k = bounds::capacity_rounds(n as u64) as usize;
            let c = burn_tree_distinct(&t, &BudgetSet::first_k(k)).unwrap();
            prop_assert!(burn::verify_cover(&g, &c.cover).unwrap());
            let mut used: Vec<usize> = c.steps.iter().map(|s| s.budget).collect();
            used.sort_unstable();
            used.dedup();
            prop_assert_eq!(used.len(), c.steps.len());
            prop_assert_eq!(c.steps.iter().map(|s| s.pruned).sum::<usize>(), n);
        }

        #[test]
        fn multiset_construction_is_sound(parents in proptest::collection::vec(0usize..1000, 0..60), a in 1usize..6, extra in 0usize..4) {
            let g = tree_from_parents(&parents);
            let n = g.order();
            // enough copies of `a` for the threshold, plus spare budgets
            let copies = (n + 1).div_ceil(a).max(1) + extra;
            let b = BudgetSet::repeated(a, copies).unwrap();
            prop_assume!(n <= bounds::multiset_threshold(&b).unwrap());
            let c = burn_tree_multiset(&rooted(g.clone(), 0), &b).unwrap();
            prop_assert!(burn::verify_cover(&g, &c.cover).unwrap());
            prop_assert!(c.steps.len() <= copies);
        }
    }
}
