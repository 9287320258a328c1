//! Exact edge-count distributions of weighted spanning subgraphs.
//!
//! `N(G; {u^(v)}, j) = Σ_{H ⊆ E, |H| = j} λ_H · Π_v u^(v)_{deg(H, v)}` is
//! computed two independent ways: [`brute_counts`] walks all `2^|E|` subsets,
//! [`dp_counts`] runs a frontier dynamic program over an edge elimination
//! order. They must agree exactly.

mod brute;
mod dp;
mod eval;
mod profile;

use std::fmt;
use std::ops::AddAssign;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fugacities::FugacitySpec;
use crate::multigraph::{DegreeBounds, Multigraph};
use crate::polynomials::UniPoly;
use crate::scalar::Surd;

pub use brute::{brute_counts, brute_counts_with_cap, DEFAULT_BRUTE_CAP};
pub use dp::{dp_counts, dp_counts_with, elimination_order, DpOptions, DEFAULT_STATE_CAP};
pub use eval::{evaluate_f, evaluate_weighted, sample_nonvanishing, SampleWeights, SAMPLE_MONOMIAL_CAP};
pub use profile::{DegreeProfile, PROFILE_EDGE_CAP};

/// `values[j]` is the total weight of subgraphs with `j` edges; always
/// `|E| + 1` entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoeffSeq {
    values: Vec<Surd>,
}

impl CoeffSeq {
    pub fn new(values: Vec<Surd>) -> Self {
        CoeffSeq { values }
    }

    pub fn values(&self) -> &[Surd] {
        &self.values
    }

    pub fn get(&self, j: usize) -> Surd {
        self.values.get(j).cloned().unwrap_or_else(Surd::zero)
    }

    /// Sum of all entries, i.e. the multivariate polynomial at `z ≡ 1`.
    pub fn total(&self) -> Surd {
        self.values.iter().cloned().sum()
    }

    /// `Σ_j values[j] t^j` with trailing zeros trimmed.
    pub fn poly(&self) -> UniPoly {
        UniPoly::new(self.values.clone())
    }

    /// Entries up to the last nonzero one.
    pub fn trimmed(&self) -> Vec<Surd> {
        self.poly().coeffs().to_vec()
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }
}

impl fmt::Debug for CoeffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

impl fmt::Display for CoeffSeq {
    /// Space separated, trailing zeros trimmed (`"1 3"` for matchings of C3).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.trimmed().iter().map(ToString::to_string).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Exact semiring values the enumerators can accumulate.
pub trait Weight: Clone + Zero + One + for<'a> AddAssign<&'a Self> {
    fn times(&self, other: &Self) -> Self;
}

impl Weight for Surd {
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Weight for u128 {
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("count overflow")
    }
}

/// `N_f^g(G; j)`: the number of `(f, g)`-factors with `j` edges (edge weights ignored).
pub fn factor_counts(graph: &Multigraph, bounds: &DegreeBounds) -> Result<CoeffSeq> {
    factor_counts_with(graph, bounds, &DpOptions::default())
}

pub fn factor_counts_with(graph: &Multigraph, bounds: &DegreeBounds, opts: &DpOptions) -> Result<CoeffSeq> {
    let spec = FugacitySpec::from_bounds(graph, bounds)?;
    if graph.edge_count() < 128 {
        // subset counts fit in u128; integer arithmetic is much faster than rationals
        let fug: Vec<Vec<u128>> = (0..spec.len())
            .map(|v| spec.sequence(v).iter().map(|u| if u.is_zero() { 0 } else { 1 }).collect())
            .collect();
        let unit = vec![1u128; graph.edge_count()];
        let counts = dp::run(graph, &fug, &unit, opts)?;
        Ok(CoeffSeq::new(counts.into_iter().map(|c| Surd::from(num_bigint::BigInt::from(c))).collect()))
    } else {
        dp_counts_with(&graph.unweighted(), &spec, opts)
    }
}
