//! Graph families, seeded random trees and graphs, and exhaustive enumerators.
//!
//! Random families use ChaCha8 seeded through `seed_from_u64`, sampling only
//! 64-bit integers and `f64`s so streams match across platforms.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree};

/// Largest order accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATED_GRAPH_ORDER: usize = 7;
/// Largest order accepted by [`enumerate_trees`].
pub const MAX_ENUMERATED_TREE_ORDER: usize = 9;
/// Sampling attempts before [`random_connected`] gives up.
pub const CONNECT_ATTEMPTS: usize = 10_000;

/// Vertex pairs in graph6 bit order: `(0,1), (0,2), (1,2), (0,3), …`.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Graph whose edges are the set bits of `mask` in [`pairs`] order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<_> =
        pairs(n).into_iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, e)| e).collect();
    Graph::from_edges(n, &edges).expect("mask edges are simple")
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges)
}

/// `k + 1` paths of `a` vertices each; one end of each of the `k` legs is joined
/// to vertex 0, the hub end of the first path. Path `p` occupies ids
/// `p·a .. (p+1)·a`, starting at its attached end.
pub fn spider(k: usize, a: usize) -> Result<Graph> {
    if k == 0 || a == 0 {
        return Err(Error::InvalidParameter(format!("spider needs k ≥ 1 and a ≥ 1, got ({k}, {a})")));
    }
    let n = (k + 1) * a;
    let mut edges = Vec::with_capacity(n - 1);
    for p in 0..=k {
        let start = p * a;
        edges.extend((start + 1..start + a).map(|v| (v - 1, v)));
        if p > 0 {
            edges.push((0, start));
        }
    }
    Graph::from_edges(n, &edges)
}

/// All `2^(n(n−1)/2)` labeled graphs on `n` vertices as `(mask, graph)`, in
/// increasing mask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = (u64, Graph)>> {
    if n == 0 || n > MAX_ENUMERATED_GRAPH_ORDER {
        return Err(Error::TooLarge { order: n, cap: MAX_ENUMERATED_GRAPH_ORDER });
    }
    let bits = n * (n - 1) / 2;
    Ok((0..1u64 << bits).map(move |mask| (mask, graph_from_mask(n, mask))))
}

/// Labeled tree encoded by a Prüfer sequence of length `n − 2` over `0..n`.
pub fn prufer_decode(code: &[usize], n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n == 1 {
        return Graph::empty(1);
    }
    if code.len() != n - 2 {
        return Err(Error::InvalidParameter(format!("Prüfer code of length {} for n = {n}", code.len())));
    }
    if let Some(&bad) = code.iter().find(|&&x| x >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, order: n });
    }
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut ptr = degree.iter().position(|&d| d == 1).expect("some leaf exists");
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(n - 1);
    for &x in code {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_edges(n, &edges)
}

/// Every labeled tree on `n` vertices, decoded from all Prüfer sequences in
/// lexicographic order and rooted at vertex 0.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = RootedTree>> {
    if n == 0 || n > MAX_ENUMERATED_TREE_ORDER {
        return Err(Error::TooLarge { order: n, cap: MAX_ENUMERATED_TREE_ORDER });
    }
    let len = n.saturating_sub(2);
    let total = if n == 1 { 1 } else { (n as u64).pow(len as u32) };
    Ok((0..total).map(move |mut index| {
        let mut code = vec![0; len];
        for slot in code.iter_mut().rev() {
            *slot = (index % n as u64) as usize;
            index /= n as u64;
        }
        RootedTree::new(prufer_decode(&code, n).expect("valid code"), 0).expect("decoded tree")
    }))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform labeled tree on `n` vertices rooted at 0.
pub fn random_tree(n: usize, seed: u64) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = rng(seed);
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n as u64) as usize).collect();
    RootedTree::new(prufer_decode(&code, n)?, 0)
}

/// `G(n, p)` resampled until connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("edge probability must lie in (0, 1], got {p}")));
    }
    let mut rng = rng(seed);
    let all = pairs(n);
    for _ in 0..CONNECT_ATTEMPTS {
        let edges: Vec<_> = all.iter().copied().filter(|_| rng.gen::<f64>() < p).collect();
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::ConnectivityRetries(CONNECT_ATTEMPTS))
}

/// A generator family with its parameters, parsed from text such as
/// `path 9`, `spider 3 2`, `random_tree 50 7` or `random_connected 20 0.3 7`.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Spider { legs: usize, len: usize },
    RandomTree { n: usize, seed: u64 },
    RandomConnected { n: usize, p: f64, seed: u64 },
    EnumerateGraphs { n: usize },
    EnumerateTrees { n: usize },
}

impl GenSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::Path { .. } => "path",
            GenSpec::Cycle { .. } => "cycle",
            GenSpec::Complete { .. } => "complete",
            GenSpec::Spider { .. } => "spider",
            GenSpec::RandomTree { .. } => "random_tree",
            GenSpec::RandomConnected { .. } => "random_connected",
            GenSpec::EnumerateGraphs { .. } => "enumerate_graphs",
            GenSpec::EnumerateTrees { .. } => "enumerate_trees",
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            GenSpec::Path { n }
            | GenSpec::Cycle { n }
            | GenSpec::Complete { n }
            | GenSpec::RandomTree { n, .. }
            | GenSpec::RandomConnected { n, .. }
            | GenSpec::EnumerateGraphs { n }
            | GenSpec::EnumerateTrees { n } => n,
            GenSpec::Spider { legs, len } => (legs + 1) * len,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            GenSpec::RandomTree { seed, .. } | GenSpec::RandomConnected { seed, .. } => Some(seed),
            _ => None,
        }
    }

    /// Same spec with the seed replaced (no-op for deterministic families).
    pub fn with_seed(&self, new: u64) -> Self {
        let mut out = self.clone();
        match &mut out {
            GenSpec::RandomTree { seed, .. } | GenSpec::RandomConnected { seed, .. } => *seed = new,
            _ => {}
        }
        out
    }

    pub fn is_enumeration(&self) -> bool {
        matches!(self, GenSpec::EnumerateGraphs { .. } | GenSpec::EnumerateTrees { .. })
    }

    /// The one graph a non-enumerating family describes.
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GenSpec::Path { n } => path(n),
            GenSpec::Cycle { n } => cycle(n),
            GenSpec::Complete { n } => complete(n),
            GenSpec::Spider { legs, len } => spider(legs, len),
            GenSpec::RandomTree { n, seed } => Ok(random_tree(n, seed)?.graph().clone()),
            GenSpec::RandomConnected { n, p, seed } => random_connected(n, p, seed),
            GenSpec::EnumerateGraphs { .. } | GenSpec::EnumerateTrees { .. } => Err(Error::InvalidParameter(
                format!("{} describes many graphs, not one", self.family()),
            )),
        }
    }

    /// All graphs of the family tagged with an id: the seed for random
    /// families, the enumeration index for enumerations, 0 otherwise.
    pub fn graphs(&self) -> Result<Box<dyn Iterator<Item = (u64, Graph)> + Send>> {
        match *self {
            GenSpec::EnumerateGraphs { n } => Ok(Box::new(enumerate_graphs(n)?)),
            GenSpec::EnumerateTrees { n } => {
                Ok(Box::new(enumerate_trees(n)?.enumerate().map(|(i, t)| (i as u64, t.graph().clone()))))
            }
            _ => Ok(Box::new(std::iter::once((self.seed().unwrap_or(0), self.generate()?)))),
        }
    }
}

fn parse_arg<T: FromStr>(tokens: &[&str], i: usize, what: &str) -> Result<T> {
    let raw = tokens
        .get(i)
        .ok_or_else(|| Error::InvalidParameter(format!("{}: missing {what}", tokens[0])))?;
    raw.parse().map_err(|_| Error::InvalidParameter(format!("{}: bad {what} '{raw}'", tokens[0])))
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let Some(&family) = tokens.first() else {
            return Err(Error::InvalidParameter("empty generator spec".into()));
        };
        let optional_seed = |i: usize| -> Result<u64> {
            if tokens.len() > i { parse_arg(&tokens, i, "seed") } else { Ok(0) }
        };
        let (spec, arity) = match family {
            "path" => (GenSpec::Path { n: parse_arg(&tokens, 1, "n")? }, 2),
            "cycle" => (GenSpec::Cycle { n: parse_arg(&tokens, 1, "n")? }, 2),
            "complete" => (GenSpec::Complete { n: parse_arg(&tokens, 1, "n")? }, 2),
            "spider" => (
                GenSpec::Spider { legs: parse_arg(&tokens, 1, "k")?, len: parse_arg(&tokens, 2, "a")? },
                3,
            ),
            "random_tree" => (GenSpec::RandomTree { n: parse_arg(&tokens, 1, "n")?, seed: optional_seed(2)? }, 3),
            "random_connected" => (
                GenSpec::RandomConnected {
                    n: parse_arg(&tokens, 1, "n")?,
                    p: parse_arg(&tokens, 2, "p")?,
                    seed: optional_seed(3)?,
                },
                4,
            ),
            "enumerate_graphs" => (GenSpec::EnumerateGraphs { n: parse_arg(&tokens, 1, "n")? }, 2),
            "enumerate_trees" => (GenSpec::EnumerateTrees { n: parse_arg(&tokens, 1, "n")? }, 2),
            other => return Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        };
        if tokens.len() > arity {
            return Err(Error::InvalidParameter(format!("{family}: too many parameters")));
        }
        match spec {
            GenSpec::Spider { legs, len } if legs == 0 || len == 0 => {
                Err(Error::InvalidParameter("spider needs k ≥ 1 and a ≥ 1".into()))
            }
            GenSpec::RandomConnected { p, .. } if !(p > 0.0 && p <= 1.0) => {
                Err(Error::InvalidParameter(format!("edge probability must lie in (0, 1], got {p}")))
            }
            ref s if s.order() == 0 => Err(Error::InvalidParameter(format!("{family}: n must be positive"))),
            s => Ok(s),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenSpec::Spider { legs, len } => write!(f, "spider {legs} {len}"),
            GenSpec::RandomTree { n, seed } => write!(f, "random_tree {n} {seed}"),
            GenSpec::RandomConnected { n, p, seed } => write!(f, "random_connected {n} {p} {seed}"),
            _ => write!(f, "{} {}", self.family(), self.order()),
        }
    }
}
