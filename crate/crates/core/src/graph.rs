//! Undirected simple graphs, rooted trees and the distance machinery built on BFS.
//!
//! Vertices are dense ids `0..n`. Every type here is immutable once built.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Distance value for vertices that BFS never reaches.
pub const UNREACHABLE: usize = usize::MAX;

/// Undirected simple graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n ≥ 1` vertices. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self { adjacency })
    }

    /// Edgeless graph on `n ≥ 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, &[])
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order() })
        }
    }

    pub fn is_connected(&self) -> bool {
        bfs_distances(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.order() && self.is_connected()
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }
}

/// Shortest-path distances from `src`; unreachable vertices carry [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.order()];
    let mut queue = VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMetrics {
    pub eccentricity: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
    /// Vertices of minimum eccentricity, ascending.
    pub center: Vec<usize>,
}

/// Eccentricities, radius, diameter and center by all-sources BFS.
pub fn metrics(g: &Graph) -> Result<DistanceMetrics> {
    g.require_connected()?;
    let eccentricity: Vec<usize> = (0..g.order())
        .map(|v| bfs_distances(g, v).into_iter().max().unwrap_or(0))
        .collect();
    let radius = *eccentricity.iter().min().expect("graph is non-empty");
    let diameter = *eccentricity.iter().max().expect("graph is non-empty");
    let center = (0..g.order()).filter(|&v| eccentricity[v] == radius).collect();
    Ok(DistanceMetrics { eccentricity, radius, diameter, center })
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let adjacency = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && !g.has_edge(u, v)).collect())
        .collect();
    Graph { adjacency }
}

/// A tree with a designated root and cached parent/depth arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<usize>,
    depth: Vec<usize>,
    height: usize,
}

impl RootedTree {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        graph.check_vertex(root)?;
        if !graph.is_tree() {
            return Err(Error::NotATree);
        }
        let n = graph.order();
        let mut parent = vec![root; n];
        let mut depth = vec![UNREACHABLE; n];
        let mut queue = VecDeque::from([root]);
        depth[root] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if depth[v] == UNREACHABLE {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let height = depth.iter().copied().max().unwrap_or(0);
        Ok(Self { graph, root, parent, depth, height })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent of `v`; the root maps to itself.
    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(v).iter().copied().filter(move |&c| c != self.root && self.parent[c] == v)
    }

    /// `v` and all of its descendants, in BFS order from `v`.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            out.extend(self.children(u));
            i += 1;
        }
        out
    }

    /// The same tree re-rooted at `root`.
    pub fn reroot(&self, root: usize) -> Result<Self> {
        Self::new(self.graph.clone(), root)
    }
}

/// BFS tree of a connected graph; depths equal graph distances from `root`.
pub fn bfs_spanning_tree(g: &Graph, root: usize) -> Result<RootedTree> {
    g.check_vertex(root)?;
    g.require_connected()?;
    let n = g.order();
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                edges.push((u, v));
                queue.push_back(v);
            }
        }
    }
    RootedTree::new(Graph::from_edges(n, &edges)?, root)
}

/// A tree carved out of a larger one, with its compacted ids mapped back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePart {
    pub tree: RootedTree,
    /// `original_ids[new_id]` is the id in the tree the part was cut from.
    pub original_ids: Vec<usize>,
}

/// Result of cutting the subtree rooted at some vertex out of a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    pub subtree: TreePart,
    /// `None` when the cut vertex was the root.
    pub remainder: Option<TreePart>,
}

fn induced_part(t: &RootedTree, keep: &[bool], root: usize) -> Result<TreePart> {
    let original_ids: Vec<usize> = (0..t.order()).filter(|&v| keep[v]).collect();
    let mut new_id = vec![UNREACHABLE; t.order()];
    for (i, &v) in original_ids.iter().enumerate() {
        new_id[v] = i;
    }
    let edges: Vec<(usize, usize)> = t
        .graph
        .edges()
        .filter(|&(u, v)| keep[u] && keep[v])
        .map(|(u, v)| (new_id[u], new_id[v]))
        .collect();
    let tree = RootedTree::new(Graph::from_edges(original_ids.len(), &edges)?, new_id[root])?;
    Ok(TreePart { tree, original_ids })
}

/// Splits `t` into the subtree rooted at `v` and whatever remains.
pub fn prune_subtree(t: &RootedTree, v: usize) -> Result<Pruned> {
    t.graph.check_vertex(v)?;
    let mut inside = vec![false; t.order()];
    for u in t.subtree_vertices(v) {
        inside[u] = true;
    }
    let subtree = induced_part(t, &inside, v)?;
    let remainder = if v == t.root {
        None
    } else {
        let outside: Vec<bool> = inside.iter().map(|b| !b).collect();
        Some(induced_part(t, &outside, t.root)?)
    };
    Ok(Pruned { subtree, remainder })
}

/// Deepest vertex of the tree, smallest id among ties.
pub fn deepest_leaf(t: &RootedTree) -> usize {
    (0..t.order())
        .find(|&v| t.depth[v] == t.height)
        .expect("some vertex attains the height")
}
