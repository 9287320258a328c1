//! Finite undirected multigraphs with positive rational edge weights.
//!
//! Vertices are the dense indices `0..n` internally and `1..=n` in the text
//! format. A loop adds 2 to the degree of its vertex.
//!
//! Text format:
//!
//! ```text
//! # comment
//! p <n> <m>
//! e <u> <v> [lambda]
//! ```
//!
//! `lambda` is a decimal or `a/b` and defaults to 1. Vertex tokens are either
//! all integers in `1..=n` or all names; names are numbered in order of first
//! appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::parse_rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    #[serde(with = "crate::scalar::rational_string")]
    pub weight: BigRational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    /// Unit-weight multigraph from 0-based endpoint pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, BigRational::one())?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: BigRational) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({}, {}) out of range for {} vertices",
                u + 1,
                v + 1,
                self.n
            )));
        }
        if !weight.is_positive() {
            return Err(Error::InvalidInput(format!("edge weight {weight} is not positive")));
        }
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_unit_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Same graph with every λ reset to 1.
    pub fn unweighted(&self) -> Multigraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { u: e.u, v: e.v, weight: BigRational::one() })
            .collect();
        Multigraph { n: self.n, edges }
    }

    /// `deg(G, v)` for every vertex, loops counted twice.
    pub fn degree_vector(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degree_vector().into_iter().max().unwrap_or(0)
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { u: perm[e.u], v: perm[e.v], weight: e.weight.clone() })
            .collect();
        Multigraph { n: self.n, edges }
    }

    /// Graph in the text format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            if e.weight.is_one() {
                writeln!(out, "e {} {}", e.u + 1, e.v + 1).unwrap();
            } else {
                writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.weight).unwrap();
            }
        }
        out
    }

    /// Edge list as sorted 0-based `(min, max)` pairs, ignoring weights.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        pairs.sort_unstable();
        pairs
    }
}

/// Lower/upper degree bounds `f ≤ g`, one entry per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBounds {
    f: Vec<usize>,
    g: Vec<usize>,
}

impl DegreeBounds {
    pub fn new(f: Vec<usize>, g: Vec<usize>) -> Result<Self> {
        if f.len() != g.len() {
            return Err(Error::InvalidInput("f and g have different lengths".into()));
        }
        if let Some(v) = (0..f.len()).find(|&v| f[v] > g[v]) {
            return Err(Error::InvalidInput(format!(
                "f({}) = {} exceeds g({}) = {}",
                v + 1,
                f[v],
                v + 1,
                g[v]
            )));
        }
        Ok(DegreeBounds { f, g })
    }

    pub fn constant(n: usize, f: usize, g: usize) -> Result<Self> {
        Self::new(vec![f; n], vec![g; n])
    }

    /// Constant bounds with `g(v)` lowered to `deg(G, v)`, which leaves every
    /// count unchanged. Fails when `f` exceeds some degree.
    pub fn clamped(graph: &Multigraph, f: usize, g: usize) -> Result<Self> {
        if f > g {
            return Err(Error::InvalidInput(format!("f = {f} exceeds g = {g}")));
        }
        let deg = graph.degree_vector();
        if let Some(v) = deg.iter().position(|&d| d < f) {
            return Err(Error::InvalidInput(format!("f = {f} exceeds deg(G, {}) = {}", v + 1, deg[v])));
        }
        Self::new(vec![f; deg.len()], deg.iter().map(|&d| d.min(g)).collect())
    }

    pub fn lower(&self) -> &[usize] {
        &self.f
    }

    pub fn upper(&self) -> &[usize] {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }
}

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut raw_edges: Vec<(usize, String, String, BigRational)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate header".into()));
                }
                if tokens.len() != 3 {
                    return Err(err(line, "header must be `p <n> <m>`".into()));
                }
                let n = tokens[1].parse().map_err(|_| err(line, format!("bad vertex count {:?}", tokens[1])))?;
                let m = tokens[2].parse().map_err(|_| err(line, format!("bad edge count {:?}", tokens[2])))?;
                header = Some((n, m, line));
            }
            "e" => {
                if header.is_none() {
                    return Err(err(line, "edge line before `p` header".into()));
                }
                if !(3..=4).contains(&tokens.len()) {
                    return Err(err(line, "edge must be `e <u> <v> [lambda]`".into()));
                }
                let weight = match tokens.get(3) {
                    Some(t) => parse_rational(t).map_err(|m| err(line, m))?,
                    None => BigRational::one(),
                };
                if !weight.is_positive() {
                    return Err(err(line, format!("edge weight {weight} is not positive")));
                }
                raw_edges.push((line, tokens[1].to_string(), tokens[2].to_string(), weight));
            }
            other => return Err(err(line, format!("unknown line type {other:?}"))),
        }
    }

    let (n, m, header_line) = header.ok_or_else(|| err(0, "missing `p <n> <m>` header".into()))?;
    if raw_edges.len() != m {
        return Err(err(header_line, format!("header declares {m} edges, found {}", raw_edges.len())));
    }

    let numeric = raw_edges.iter().all(|(_, a, b, _)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut resolve = |line: usize, token: &str| -> Result<usize> {
        if numeric {
            let v: usize = token.parse().expect("checked numeric");
            if v == 0 || v > n {
                return Err(err(line, format!("vertex {v} out of range 1..={n}")));
            }
            Ok(v - 1)
        } else {
            if token.parse::<usize>().is_ok() {
                return Err(err(line, "cannot mix numeric and named vertices".into()));
            }
            let next = names.len();
            let idx = *names.entry(token.to_string()).or_insert(next);
            if idx >= n {
                return Err(err(line, format!("more than {n} distinct vertex names")));
            }
            Ok(idx)
        }
    };

    let mut g = Multigraph::new(n);
    for (line, a, b, weight) in raw_edges {
        let u = resolve(line, &a)?;
        let v = resolve(line, &b)?;
        g.edges.push(Edge { u, v, weight });
    }
    Ok(g)
}
