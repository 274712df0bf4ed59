//! The graph of a domain under Kemeny betweenness, the adjacent-swap graph, and a
//! median-graph check.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::order::LinearOrder;

/// Largest domain `build_betweenness_graph` accepts.
pub const BETWEENNESS_LIMIT: usize = 10_000;
/// Largest graph `is_median_graph` accepts.
pub const MEDIAN_LIMIT: usize = 5_000;

/// A simple undirected graph whose vertices are the orders of a domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainGraph {
    vertices: Vec<LinearOrder>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl DomainGraph {
    /// Builds a graph from vertex orders and index pairs. Loops and duplicates are dropped.
    pub fn from_edges(vertices: Vec<LinearOrder>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(Error::InvalidArgument(format!("edge ({a},{b}) outside {} vertices", vertices.len())));
            }
            if a != b {
                list.push((a.min(b), a.max(b)));
            }
        }
        list.sort_unstable();
        list.dedup();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(a, b) in &list {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Self { vertices, edges: list, adjacency })
    }

    pub fn vertices(&self) -> &[LinearOrder] {
        &self.vertices
    }

    /// Edges as sorted index pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as pairs of order strings, each pair and the list sorted.
    pub fn edge_labels(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.vertices[a].to_string(), self.vertices[b].to_string());
                if x <= y { (x, y) } else { (y, x) }
            })
            .collect();
        out.sort();
        out
    }

    /// Breadth-first distances from `source`; `u32::MAX` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertices.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.distances_from(0).iter().all(|&d| d != u32::MAX)
    }
}

/// For every pair `a < b` of alternatives, whether `a` comes first. One bit per pair.
fn pair_signs(order: &LinearOrder, alts: &[usize], words: usize) -> Vec<u64> {
    let mut bits = vec![0u64; words];
    let mut idx = 0;
    for (x, &a) in alts.iter().enumerate() {
        for &b in &alts[x + 1..] {
            if order.prefers(a, b) {
                bits[idx / 64] |= 1 << (idx % 64);
            }
            idx += 1;
        }
    }
    bits
}

fn kendall(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// `x` agrees with every comparison on which `u` and `w` agree.
fn is_between(u: &[u64], x: &[u64], w: &[u64]) -> bool {
    u.iter().zip(x).zip(w).all(|((&u, &x), &w)| (x ^ u) & !(u ^ w) == 0)
}

/// Kendall-tau distance between two orders over the same alternatives.
pub fn kendall_distance(a: &LinearOrder, b: &LinearOrder) -> usize {
    let r = a.ranking();
    let mut d = 0;
    for x in 0..r.len() {
        for y in x + 1..r.len() {
            if b.prefers(r[y] as usize, r[x] as usize) {
                d += 1;
            }
        }
    }
    d
}

/// `u` and `w` are adjacent when no other order of the domain lies between them.
///
/// For each `u` the others are visited by increasing Kendall distance: the nearest order
/// inside any interval `[u, w]` is itself a neighbour of `u`, so it is enough to test `w`
/// against the neighbours already found.
pub fn build_betweenness_graph(domain: &Domain) -> Result<DomainGraph> {
    let size = domain.len();
    if size > BETWEENNESS_LIMIT {
        return Err(Error::TooLarge { what: "betweenness graph", n: size, limit: BETWEENNESS_LIMIT });
    }
    let alts = domain.alternatives().to_vec();
    let pairs = alts.len() * alts.len().saturating_sub(1) / 2;
    let words = pairs.div_ceil(64).max(1);
    let signs: Vec<Vec<u64>> = domain.orders().par_iter().map(|o| pair_signs(o, &alts, words)).collect();
    let edges: Vec<(usize, usize)> = (0..size)
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut others: Vec<(u32, usize)> =
                (0..size).filter(|&w| w != u).map(|w| (kendall(&signs[u], &signs[w]), w)).collect();
            others.sort_unstable();
            let mut found: Vec<usize> = Vec::new();
            for (_, w) in others {
                if !found.iter().any(|&x| is_between(&signs[u], &signs[x], &signs[w])) {
                    found.push(w);
                }
            }
            found.into_iter().filter(move |&w| w > u).map(move |w| (u, w))
        })
        .collect();
    DomainGraph::from_edges(domain.orders().to_vec(), edges)
}

/// Orders are adjacent when they differ by one swap of neighbouring alternatives.
pub fn build_swap_graph(domain: &Domain) -> DomainGraph {
    let orders = domain.orders();
    let edges: Vec<(usize, usize)> = (0..orders.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            let ranking = orders[u].ranking().to_vec();
            (0..ranking.len().saturating_sub(1)).filter_map(move |p| {
                let mut r = ranking.clone();
                r.swap(p, p + 1);
                let w = orders.binary_search(&LinearOrder::new(&r).ok()?).ok()?;
                (w > u).then_some((u, w))
            })
        })
        .collect();
    DomainGraph::from_edges(orders.to_vec(), edges).expect("indices come from the domain")
}

/// Outcome of the median-graph check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MedianVerdict {
    Median,
    Disconnected,
    /// A triple of vertex indices with no median or several.
    NoUniqueMedian { triple: (usize, usize, usize), medians: usize },
}

impl MedianVerdict {
    pub fn is_median(&self) -> bool {
        matches!(self, MedianVerdict::Median)
    }

    pub fn reason(&self, graph: &DomainGraph) -> Option<String> {
        match self {
            MedianVerdict::Median => None,
            MedianVerdict::Disconnected => Some("graph is disconnected".into()),
            MedianVerdict::NoUniqueMedian { triple: (a, b, c), medians } => {
                let v = graph.vertices();
                Some(format!("triple {} {} {} has {medians} medians", v[*a], v[*b], v[*c]))
            }
        }
    }
}

/// Checks that every vertex triple has exactly one vertex on geodesics between each pair.
///
/// All-pairs distances are cached. For a triple `a, b, c` a median must sit at distance
/// `(d(a,b) + d(a,c) - d(b,c)) / 2` from `a` inside both intervals `I(a,b)` and `I(a,c)`,
/// and such a vertex is automatically in `I(b,c)`. Intervals and distance layers around `a`
/// are bitsets, so each triple costs a few word operations.
pub fn median_check(graph: &DomainGraph) -> Result<MedianVerdict> {
    let v = graph.vertex_count();
    if v > MEDIAN_LIMIT {
        return Err(Error::TooLarge { what: "median check", n: v, limit: MEDIAN_LIMIT });
    }
    if !graph.is_connected() {
        return Ok(MedianVerdict::Disconnected);
    }
    let dist: Vec<Vec<u32>> = (0..v).into_par_iter().map(|s| graph.distances_from(s)).collect();
    let words = v.div_ceil(64).max(1);
    let failure = (0..v).into_par_iter().find_map_first(|a| {
        let da = &dist[a];
        let max_d = da.iter().copied().max().unwrap_or(0) as usize;
        let mut layers = vec![vec![0u64; words]; max_d + 1];
        for (x, &d) in da.iter().enumerate() {
            layers[d as usize][x / 64] |= 1 << (x % 64);
        }
        // interval[b] = vertices on a geodesic from a to b
        let interval: Vec<Vec<u64>> = (0..v)
            .map(|b| {
                let mut bits = vec![0u64; words];
                if b > a {
                    for x in 0..v {
                        if da[x] + dist[x][b] == da[b] {
                            bits[x / 64] |= 1 << (x % 64);
                        }
                    }
                }
                bits
            })
            .collect();
        for b in a + 1..v {
            for c in b + 1..v {
                let twice = da[b] + da[c];
                let k = (twice >= dist[b][c] && (twice - dist[b][c]) % 2 == 0)
                    .then(|| ((twice - dist[b][c]) / 2) as usize)
                    .filter(|&k| k <= max_d);
                let medians = match k {
                    None => 0,
                    Some(k) => (0..words)
                        .map(|i| (interval[b][i] & interval[c][i] & layers[k][i]).count_ones() as usize)
                        .sum(),
                };
                if medians != 1 {
                    return Some(MedianVerdict::NoUniqueMedian { triple: (a, b, c), medians });
                }
            }
        }
        None
    });
    Ok(failure.unwrap_or(MedianVerdict::Median))
}

pub fn is_median_graph(graph: &DomainGraph) -> Result<bool> {
    Ok(median_check(graph)?.is_median())
}

/// DOT text with vertices labelled by their order strings, in domain order.
pub fn export_dot(graph: &DomainGraph) -> String {
    let mut out = String::from("graph domain {\n");
    for v in graph.vertices() {
        writeln!(out, "  \"{v}\";").unwrap();
    }
    for &(a, b) in graph.edges() {
        writeln!(out, "  \"{}\" -- \"{}\";", graph.vertices()[a], graph.vertices()[b]).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edge list `u,v` with a header line.
pub fn export_edge_csv(graph: &DomainGraph) -> String {
    let mut out = String::from("u,v\n");
    for &(a, b) in graph.edges() {
        writeln!(out, "{},{}", graph.vertices()[a], graph.vertices()[b]).unwrap();
    }
    out
}
