use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{DegreeBounds, Multigraph};

/// Largest vertex count for which [`all_multigraphs`] removes isomorphic copies.
const CANONICAL_MAX_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedKind {
    /// `C_3 ..= C_N`.
    Cycles,
    /// Paths on `2 ..= N` vertices.
    Paths,
    /// `K_2 ..= K_N`.
    Complete,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// Every multigraph (loops and parallel edges allowed) with
    /// `1 ≤ n ≤ max_n` and `m ≤ max_m`.
    AllMultigraphs { max_n: usize, max_m: usize },
    /// `count` graphs with `n` vertices and `m` edges; `simple` forbids loops
    /// and parallel edges.
    Random { n: usize, m: usize, count: usize, seed: u64, #[serde(default)] simple: bool },
    Named { named: NamedKind, max_size: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum BoundPolicy {
    /// Every per-vertex choice `f(v) ≤ g(v) ≤ deg(G, v)`.
    All,
    /// Constant `f ≤ g ≤ Δ` with both lowered to each degree, duplicates removed.
    Constant,
    /// `per_graph` uniformly random per-vertex choices.
    Sampled { per_graph: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub generator: Generator,
    pub bounds: BoundPolicy,
}

impl FamilySpec {
    pub fn graphs(&self) -> Result<Vec<Multigraph>> {
        match &self.generator {
            Generator::AllMultigraphs { max_n, max_m } => Ok(all_multigraphs(*max_n, *max_m)),
            Generator::Random { n, m, count, seed, simple } => random_multigraphs(*n, *m, *count, *seed, *simple),
            Generator::Named { named, max_size } => Ok(named_graphs(*named, *max_size)),
        }
    }

    /// Every `(graph, bounds)` pair in serial order.
    pub fn instances(&self) -> Result<Vec<(Multigraph, Vec<DegreeBounds>)>> {
        self.graphs()?
            .into_iter()
            .enumerate()
            .map(|(i, g)| {
                let b = bound_choices(&g, &self.bounds, i as u64)?;
                Ok((g, b))
            })
            .collect()
    }
}

/// Smallest sorted edge list over all vertex relabellings.
pub fn canonical_form(graph: &Multigraph) -> Vec<(usize, usize)> {
    let n = graph.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = graph.edge_multiset();
    for_each_permutation(&mut perm, 0, &mut |p| {
        let candidate = graph.permuted(p).edge_multiset();
        if candidate < best {
            best = candidate;
        }
    });
    best
}

fn for_each_permutation(perm: &mut [usize], start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == perm.len() {
        visit(perm);
        return;
    }
    for i in start..perm.len() {
        perm.swap(start, i);
        for_each_permutation(perm, start + 1, visit);
        perm.swap(start, i);
    }
}

fn degree_key(graph: &Multigraph) -> Vec<usize> {
    let mut d = graph.degree_vector();
    d.sort_unstable();
    d
}

/// All multigraphs with `1 ≤ n ≤ max_n`, `0 ≤ m ≤ max_m`, ordered by `(n, m)`
/// then lexicographically by edge list. Isomorphic copies are dropped for
/// `n ≤ 3` only.
pub fn all_multigraphs(max_n: usize, max_m: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        for m in 0..=max_m {
            let mut seen = BTreeSet::new();
            let mut chosen = Vec::with_capacity(m);
            multisets(pairs.len(), m, 0, &mut chosen, &mut |idx| {
                let edges: Vec<_> = idx.iter().map(|&i| pairs[i]).collect();
                let g = Multigraph::from_edges(n, &edges).expect("pairs in range");
                if n <= CANONICAL_MAX_N && !seen.insert((degree_key(&g), canonical_form(&g))) {
                    return;
                }
                out.push(g);
            });
        }
    }
    out
}

/// Nondecreasing index sequences of length `k` from `0..len`.
fn multisets(len: usize, k: usize, from: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    for i in from..len {
        chosen.push(i);
        multisets(len, k, i, chosen, visit);
        chosen.pop();
    }
}

pub fn random_multigraph(n: usize, m: usize, simple: bool, rng: &mut impl Rng) -> Result<Multigraph> {
    if n == 0 && m > 0 {
        return Err(Error::InvalidInput("edges need at least one vertex".into()));
    }
    if simple {
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        if m > pairs.len() {
            return Err(Error::InvalidInput(format!("a simple graph on {n} vertices has at most {} edges", pairs.len())));
        }
        pairs.shuffle(rng);
        pairs.truncate(m);
        pairs.sort_unstable();
        return Multigraph::from_edges(n, &pairs);
    }
    let edges: Vec<_> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    Multigraph::from_edges(n, &edges)
}

pub fn random_multigraphs(n: usize, m: usize, count: usize, seed: u64, simple: bool) -> Result<Vec<Multigraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_multigraph(n, m, simple, &mut rng)).collect()
}

pub fn named_graphs(kind: NamedKind, max_size: usize) -> Vec<Multigraph> {
    let build = |n: usize, edges: Vec<(usize, usize)>| Multigraph::from_edges(n, &edges).expect("edges in range");
    match kind {
        NamedKind::Cycles => (3..=max_size).map(|n| build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())).collect(),
        NamedKind::Paths => (2..=max_size).map(|n| build(n, (0..n - 1).map(|i| (i, i + 1)).collect())).collect(),
        NamedKind::Complete => (2..=max_size)
            .map(|n| build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()))
            .collect(),
    }
}

/// Bound vectors for one graph; `stream` separates the random streams of
/// different graphs under [`BoundPolicy::Sampled`].
pub fn bound_choices(graph: &Multigraph, policy: &BoundPolicy, stream: u64) -> Result<Vec<DegreeBounds>> {
    let deg = graph.degree_vector();
    match policy {
        BoundPolicy::All => {
            let per_vertex: Vec<Vec<(usize, usize)>> =
                deg.iter().map(|&d| (0..=d).flat_map(|f| (f..=d).map(move |g| (f, g))).collect()).collect();
            let mut out = Vec::new();
            let mut idx = vec![0usize; deg.len()];
            loop {
                let (f, g) = idx.iter().zip(&per_vertex).map(|(&i, c)| c[i]).unzip();
                out.push(DegreeBounds::new(f, g)?);
                let Some(v) = (0..idx.len()).rev().find(|&v| idx[v] + 1 < per_vertex[v].len()) else {
                    return Ok(out);
                };
                idx[v] += 1;
                idx[v + 1..].iter_mut().for_each(|i| *i = 0);
            }
        }
        BoundPolicy::Constant => {
            let top = graph.max_degree();
            let mut out: Vec<DegreeBounds> = Vec::new();
            for f in 0..=top {
                for g in f..=top {
                    let upper: Vec<usize> = deg.iter().map(|&d| d.min(g)).collect();
                    let b = DegreeBounds::new(upper.iter().map(|&gv| gv.min(f)).collect(), upper)?;
                    if !out.contains(&b) {
                        out.push(b);
                    }
                }
            }
            Ok(out)
        }
        BoundPolicy::Sampled { per_graph, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            rng.set_stream(stream);
            (0..*per_graph)
                .map(|_| {
                    let (f, g) = deg
                        .iter()
                        .map(|&d| {
                            let a = rng.gen_range(0..=d);
                            let b = rng.gen_range(0..=d);
                            (a.min(b), a.max(b))
                        })
                        .unzip();
                    DegreeBounds::new(f, g)
                })
                .collect()
        }
    }
}
