//! Fugacity sequences, their binomial generating functions
//! `Γ(D, u, y) = Σ_k C(D,k) u_k y^k`, and the named constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{DegreeBounds, Multigraph};
use crate::polynomials::UniPoly;
use crate::scalar::{binomial, factorial, int, rat, Surd};

/// Per-vertex fugacities: vertex `v` carries the degree cap `D(v)` and the
/// sequence `u^(v)_0, ..., u^(v)_{D(v)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FugacitySpec {
    caps: Vec<usize>,
    sequences: Vec<Vec<Surd>>,
}

impl FugacitySpec {
    /// Sequences shorter than `D(v) + 1` are padded with zeros; entries past
    /// `D(v)` are dropped.
    pub fn new(caps: Vec<usize>, sequences: Vec<Vec<Surd>>) -> Result<Self> {
        if caps.len() != sequences.len() {
            return Err(Error::InvalidInput("caps and sequences differ in length".into()));
        }
        let mut radicands = BTreeSet::new();
        let mut fixed = Vec::with_capacity(sequences.len());
        for (v, (mut seq, &cap)) in sequences.into_iter().zip(&caps).enumerate() {
            if let Some(k) = seq.iter().position(Surd::is_negative) {
                return Err(Error::InvalidInput(format!("u^({})_{k} = {} is negative", v + 1, seq[k])));
            }
            seq.resize(cap + 1, Surd::zero());
            radicands.extend(seq.iter().map(Surd::radicand).filter(|&m| m != 1));
            fixed.push(seq);
        }
        if radicands.len() > 1 {
            return Err(Error::InvalidInput(format!(
                "fugacities mix quadratic fields {radicands:?}; use one radicand per spec"
            )));
        }
        Ok(FugacitySpec { caps, sequences: fixed })
    }

    /// Same sequence at every vertex, with `D(v) = deg(G, v)`.
    pub fn isotropic(graph: &Multigraph, seq: &[Surd]) -> Result<Self> {
        let caps = graph.degree_vector();
        Self::new(caps.clone(), caps.iter().map(|_| seq.to_vec()).collect())
    }

    /// Built per vertex from `(v, deg(G, v)) -> (D(v), sequence)`.
    pub fn per_vertex(
        graph: &Multigraph,
        mut build: impl FnMut(usize, usize) -> Result<(usize, Vec<Surd>)>,
    ) -> Result<Self> {
        let (caps, seqs) = graph
            .degree_vector()
            .into_iter()
            .enumerate()
            .map(|(v, d)| build(v, d))
            .collect::<Result<(Vec<_>, Vec<_>)>>()?;
        Self::new(caps, seqs)
    }

    /// Zero-one indicator of `f(v) ≤ k ≤ g(v)`, with `D = deg(G)`.
    pub fn from_bounds(graph: &Multigraph, bounds: &DegreeBounds) -> Result<Self> {
        if bounds.len() != graph.vertex_count() {
            return Err(Error::InvalidInput("degree bounds do not match the vertex count".into()));
        }
        Self::per_vertex(graph, |v, d| {
            let (f, g) = (bounds.lower()[v], bounds.upper()[v]);
            Ok((d, indicator(f, g.min(d), d)))
        })
    }

    pub fn len(&self) -> usize {
        self.caps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.caps.is_empty()
    }

    pub fn cap(&self, v: usize) -> usize {
        self.caps[v]
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn sequence(&self, v: usize) -> &[Surd] {
        &self.sequences[v]
    }

    /// `u^(v)_k`, zero past the cap.
    pub fn weight(&self, v: usize, k: usize) -> Surd {
        self.sequences[v].get(k).cloned().unwrap_or_else(Surd::zero)
    }

    pub fn gamma(&self, v: usize) -> UniPoly {
        gamma_poly(self.caps[v], &self.sequences[v]).expect("validated nonnegative")
    }

    /// Highest index with a nonzero entry, per vertex.
    pub fn support_top(&self, v: usize) -> Option<usize> {
        self.sequences[v].iter().rposition(|u| !u.is_zero())
    }

    pub fn support_bottom(&self, v: usize) -> Option<usize> {
        self.sequences[v].iter().position(|u| !u.is_zero())
    }

    pub fn check_against(&self, graph: &Multigraph) -> Result<()> {
        if self.len() != graph.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "fugacity spec has {} vertices, graph has {}",
                self.len(),
                graph.vertex_count()
            )));
        }
        for (v, d) in graph.degree_vector().into_iter().enumerate() {
            if self.caps[v] < d {
                return Err(Error::InvalidInput(format!(
                    "D({}) = {} is below deg(G, {}) = {d}",
                    v + 1,
                    self.caps[v],
                    v + 1
                )));
            }
        }
        Ok(())
    }

    /// Entries rounded to `f64`, for sampling.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.sequences.iter().map(|s| s.iter().map(Surd::to_f64).collect()).collect()
    }
}

pub fn gamma_poly(d: usize, u: &[Surd]) -> Result<UniPoly> {
    if let Some(k) = u.iter().position(Surd::is_negative) {
        return Err(Error::InvalidInput(format!("fugacity u_{k} = {} is negative", u[k])));
    }
    Ok(UniPoly::new(
        (0..=d)
            .map(|k| {
                let uk = u.get(k).cloned().unwrap_or_else(Surd::zero);
                uk * Surd::from(binomial(d as u64, k as u64))
            })
            .collect(),
    ))
}

fn indicator(f: usize, g: usize, d: usize) -> Vec<Surd> {
    (0..=d).map(|k| if (f..=g).contains(&k) { Surd::one() } else { Surd::zero() }).collect()
}

pub fn interval_fugacities(f: usize, g: usize, d: usize) -> Result<Vec<Surd>> {
    if f > g || g > d {
        return Err(Error::InvalidInput(format!("need f <= g <= D, got f={f} g={g} D={d}")));
    }
    Ok(indicator(f, g, d))
}

pub fn set_fugacities(set: &BTreeSet<usize>, d: usize) -> Result<Vec<Surd>> {
    if let Some(&k) = set.iter().find(|&&k| k > d) {
        return Err(Error::InvalidInput(format!("set element {k} exceeds D = {d}")));
    }
    Ok((0..=d).map(|k| if set.contains(&k) { Surd::one() } else { Surd::zero() }).collect())
}

/// `(1, √(2 − 2/Δ), 1)`.
pub fn ruelle_fugacities(max_degree: usize) -> Result<Vec<Surd>> {
    if max_degree == 0 {
        return Err(Error::InvalidInput("Ruelle fugacities need max degree >= 1".into()));
    }
    let delta = max_degree as i64;
    let middle = Surd::sqrt_of(&(int(2) - rat(2, delta)))?;
    Ok(vec![Surd::one(), middle, Surd::one()])
}

/// The quadratic `1 + c·y + y²` used to build Theorem-26 style fugacities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadratic {
    /// `c = √3`: zeros at `e^{±5πi/6}`, conclusion `S[2π/3]`.
    Sqrt3,
    /// `c = √2`: zeros at `e^{±3πi/4}`, conclusion half-plane.
    Sqrt2,
    /// `c = 2`: `(1 + y)²`, conclusion real zeros.
    Two,
}

impl Quadratic {
    pub fn middle(self) -> Surd {
        match self {
            Quadratic::Sqrt3 => Surd::new(int(0), int(1), 3),
            Quadratic::Sqrt2 => Surd::new(int(0), int(1), 2),
            Quadratic::Two => Surd::from_int(2),
        }
    }

    /// Angle of the quadratic's zeros from the positive axis.
    pub fn zero_angle(self) -> f64 {
        match self {
            Quadratic::Sqrt3 => 5.0 * PI / 6.0,
            Quadratic::Sqrt2 => 3.0 * PI / 4.0,
            Quadratic::Two => PI,
        }
    }

    /// Sector the univariate count polynomial is guaranteed to avoid.
    pub fn conclusion_sector(self) -> f64 {
        2.0 * self.zero_angle() - PI
    }
}

impl std::str::FromStr for Quadratic {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sqrt3" => Ok(Quadratic::Sqrt3),
            "sqrt2" => Ok(Quadratic::Sqrt2),
            "two" | "2" => Ok(Quadratic::Two),
            other => Err(format!("unknown quadratic {other:?} (sqrt3|sqrt2|two)")),
        }
    }
}

/// `u_k = [y^k] y^f (1+y)^b (1 + c y + y²)^a` where `g − f = 2a + b`, so that
/// `Γ(D, u, y)` is the coefficientwise product of `(1+y)^D` and that polynomial.
pub fn thm26_fugacities(f: usize, g: usize, d: usize, quad: Quadratic) -> Result<Vec<Surd>> {
    if f > g || g > d {
        return Err(Error::InvalidInput(format!("need f <= g <= D, got f={f} g={g} D={d}")));
    }
    let (a, b) = ((g - f) / 2, (g - f) % 2);
    let linear = UniPoly::from_ints(&[1, 1]);
    let quadratic = UniPoly::new(vec![Surd::one(), quad.middle(), Surd::one()]);
    let mut q = UniPoly::monomial(Surd::one(), f);
    for _ in 0..b {
        q = &q * &linear;
    }
    for _ in 0..a {
        q = &q * &quadratic;
    }
    let mut u = q.coeffs().to_vec();
    u.resize(d + 1, Surd::zero());
    Ok(u)
}

/// `u_i = 1 / C(D, i)`, so `Γ = 1 + y + ... + y^D`.
pub fn binomial_reciprocal_fugacities(d: usize) -> Vec<Surd> {
    (0..=d)
        .map(|i| Surd::from(BigRational::new(BigInt::one(), binomial(d as u64, i as u64))))
        .collect()
}

/// `Σ a_k b_k y^k`.
pub fn hadamard_a(p: &UniPoly, q: &UniPoly) -> UniPoly {
    hadamard_weighted(p, q, |_| Surd::one())
}

/// `Σ k! a_k b_k y^k`.
pub fn hadamard_b(p: &UniPoly, q: &UniPoly) -> UniPoly {
    hadamard_weighted(p, q, |k| Surd::from(factorial(k as u64)))
}

/// `Σ k! (n − k)! a_k b_k y^k`; `n` must bound both degrees.
pub fn hadamard_c(p: &UniPoly, q: &UniPoly, n: usize) -> Result<UniPoly> {
    let top = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
    if n < top {
        return Err(Error::InvalidInput(format!("n = {n} is below the degree {top}")));
    }
    Ok(hadamard_weighted(p, q, |k| Surd::from(factorial(k as u64) * factorial((n - k) as u64))))
}

fn hadamard_weighted(p: &UniPoly, q: &UniPoly, weight: impl Fn(usize) -> Surd) -> UniPoly {
    let n = p.coeffs().len().min(q.coeffs().len());
    UniPoly::new((0..n).map(|k| &(&p.coeffs()[k] * &q.coeffs()[k]) * &weight(k)).collect())
}

/// `Q(u, y) = Σ u_k y^k / k!`.
pub fn exponential_poly(u: &[Surd]) -> UniPoly {
    UniPoly::new(
        u.iter()
            .enumerate()
            .map(|(k, uk)| uk * &Surd::from(BigRational::new(BigInt::one(), factorial(k as u64))))
            .collect(),
    )
}

/// The three- and four-term generating functions whose zero sectors are known
/// in closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum LemmaFamily {
    /// `C(D,k−1) y^{k−1} + β C(D,k) y^k + C(D,k+1) y^{k+1}`, `1 ≤ k ≤ D−1`.
    ThreeTerm { d: usize, k: usize, beta: Surd },
    /// `C(D,k−1) y^{k−1} + μ C(D,k) y^k + μ C(D,k+1) y^{k+1} + C(D,k+2) y^{k+2}`, `1 ≤ k ≤ D−2`.
    FourTerm { d: usize, k: usize, mu: Surd },
    /// The four-term family at `D = 2p + 1`, `k = p`.
    FourTermOdd { p: usize, mu: Surd },
}

/// Which conclusion: `S[3π/4]`, `S[5π/6]` or `S[π]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaCase {
    A,
    B,
    C,
}

impl LemmaCase {
    pub fn sector(self) -> f64 {
        match self {
            LemmaCase::A => 3.0 * PI / 4.0,
            LemmaCase::B => 5.0 * PI / 6.0,
            LemmaCase::C => PI,
        }
    }

    pub const ALL: [LemmaCase; 3] = [LemmaCase::A, LemmaCase::B, LemmaCase::C];
}

impl LemmaFamily {
    fn check(&self) -> Result<()> {
        match self {
            LemmaFamily::ThreeTerm { d, k, .. } if !(1 <= *k && k < d) => {
                Err(Error::InvalidInput(format!("three-term family needs 1 <= k <= D-1, got k={k} D={d}")))
            }
            LemmaFamily::FourTerm { d, k, .. } if !(1 <= *k && k + 2 <= *d) => {
                Err(Error::InvalidInput(format!("four-term family needs 1 <= k <= D-2, got k={k} D={d}")))
            }
            LemmaFamily::FourTermOdd { p, .. } if *p < 1 => {
                Err(Error::InvalidInput("odd four-term family needs p >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// `(D, k)` with the lowest term at `y^{k−1}`.
    pub fn shape(&self) -> (usize, usize) {
        match self {
            LemmaFamily::ThreeTerm { d, k, .. } | LemmaFamily::FourTerm { d, k, .. } => (*d, *k),
            LemmaFamily::FourTermOdd { p, .. } => (2 * p + 1, *p),
        }
    }

    /// The parameter compared against [`lemma_threshold`].
    pub fn parameter(&self) -> &Surd {
        match self {
            LemmaFamily::ThreeTerm { beta, .. } => beta,
            LemmaFamily::FourTerm { mu, .. } | LemmaFamily::FourTermOdd { mu, .. } => mu,
        }
    }

    /// Fugacity sequence realizing this generating function at degree cap `D`.
    pub fn fugacities(&self) -> Vec<Surd> {
        let (d, k) = self.shape();
        let mut u = vec![Surd::zero(); d + 1];
        u[k - 1] = Surd::one();
        match self {
            LemmaFamily::ThreeTerm { beta, .. } => {
                u[k] = beta.clone();
                u[k + 1] = Surd::one();
            }
            LemmaFamily::FourTerm { mu, .. } | LemmaFamily::FourTermOdd { mu, .. } => {
                u[k] = mu.clone();
                u[k + 1] = mu.clone();
                u[k + 2] = Surd::one();
            }
        }
        u
    }
}

pub fn lemma_gamma(family: &LemmaFamily) -> Result<UniPoly> {
    family.check()?;
    if family.parameter().is_negative() {
        return Err(Error::InvalidInput("lemma parameter must be nonnegative".into()));
    }
    let (d, _) = family.shape();
    gamma_poly(d, &family.fugacities())
}

/// `k(D − k) / ((k + 1)(D − k + 1))`.
pub fn three_term_ratio(d: usize, k: usize) -> BigRational {
    let (d, k) = (d as i64, k as i64);
    rat(k * (d - k), (k + 1) * (d - k + 1))
}

/// Lower bound on `β` (three-term) or `μ` (four-term) for the given case.
pub fn lemma_threshold(family: &LemmaFamily, case: LemmaCase) -> Result<Surd> {
    family.check()?;
    let sqrt = |n: i64| Surd::new(int(0), int(1), n as u64);
    Ok(match family {
        LemmaFamily::ThreeTerm { d, k, .. } => {
            let r = three_term_ratio(*d, *k);
            match case {
                LemmaCase::A => Surd::sqrt_of(&(int(2) * r))?,
                LemmaCase::B => Surd::sqrt_of(&(int(3) * r))?,
                LemmaCase::C => Surd::from_int(2) * Surd::sqrt_of(&r)?,
            }
        }
        LemmaFamily::FourTerm { .. } => match case {
            LemmaCase::A => Surd::one() + sqrt(2),
            LemmaCase::B => Surd::one() + sqrt(3),
            LemmaCase::C => Surd::from_int(3),
        },
        LemmaFamily::FourTermOdd { p, .. } => {
            let factor = Surd::from(rat(*p as i64, *p as i64 + 2));
            match case {
                LemmaCase::A => (Surd::one() + sqrt(2)) * factor,
                LemmaCase::B => (Surd::one() + sqrt(3)) * factor,
                LemmaCase::C => Surd::from_int(3) * factor,
            }
        }
    })
}

/// One per-vertex entry of a fugacity configuration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FugacityEntry {
    #[serde(flatten)]
    pub kind: EntryKind,
    /// Degree cap; defaults to `deg(G, v)`.
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryKind {
    Preset(Preset),
    Explicit { u: Vec<Surd> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "lowercase")]
pub enum Preset {
    Interval { f: usize, g: usize },
    Set { s: BTreeSet<usize> },
    /// `delta` defaults to the maximum degree of the graph.
    Ruelle { delta: Option<usize> },
    Thm26 { f: usize, g: usize, #[serde(default = "default_quad")] quad: Quadratic },
    Binrec,
}

fn default_quad() -> Quadratic {
    Quadratic::Sqrt3
}

/// Fugacity configuration: keys are 1-based vertex numbers or `"default"`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FugacityConfig(pub BTreeMap<String, FugacityEntry>);

impl FugacityConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn uniform(kind: EntryKind) -> Self {
        let mut map = BTreeMap::new();
        map.insert("default".to_string(), FugacityEntry { kind, cap: None });
        FugacityConfig(map)
    }

    pub fn resolve(&self, graph: &Multigraph) -> Result<FugacitySpec> {
        for key in self.0.keys() {
            if key != "default" {
                let v: usize = key
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad vertex key {key:?}")))?;
                if v == 0 || v > graph.vertex_count() {
                    return Err(Error::InvalidInput(format!("vertex key {v} out of range")));
                }
            }
        }
        let max_degree = graph.max_degree();
        let spec = FugacitySpec::per_vertex(graph, |v, deg| {
            let entry = self
                .0
                .get(&(v + 1).to_string())
                .or_else(|| self.0.get("default"))
                .ok_or_else(|| Error::InvalidInput(format!("no fugacity entry for vertex {}", v + 1)))?;
            let cap = entry.cap.unwrap_or(deg);
            let seq = match &entry.kind {
                EntryKind::Explicit { u } => u.clone(),
                EntryKind::Preset(Preset::Interval { f, g }) => interval_fugacities(*f, *g, cap)?,
                EntryKind::Preset(Preset::Set { s }) => set_fugacities(s, cap)?,
                EntryKind::Preset(Preset::Ruelle { delta }) => ruelle_fugacities(delta.unwrap_or(max_degree).max(1))?,
                EntryKind::Preset(Preset::Thm26 { f, g, quad }) => thm26_fugacities(*f, *g, cap, *quad)?,
                EntryKind::Preset(Preset::Binrec) => {
                    if cap != deg {
                        return Err(Error::InvalidInput(format!(
                            "binomial-reciprocal fugacities need D({}) = deg(G, {}) = {deg}",
                            v + 1,
                            v + 1
                        )));
                    }
                    binomial_reciprocal_fugacities(cap)
                }
            };
            Ok((cap, seq))
        })?;
        spec.check_against(graph)?;
        Ok(spec)
    }
}
