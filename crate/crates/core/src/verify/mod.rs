//! Theorem harness: one check per zero-location or inequality result, plus
//! the log-concavity scanner over graph families.
//!
//! A check recomputes the relevant polynomial exactly, locates its zeros and
//! reports `Confirmed`, `Falsified` with a reproducible witness, or
//! `Inapplicable` when the instance misses a hypothesis.

mod checks;
mod family;
mod scan;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::enumeration::DpOptions;
use crate::fugacities::FugacitySpec;
use crate::inequalities::DEFAULT_MAX_MINOR_ORDER;
use crate::multigraph::{DegreeBounds, Multigraph};
use crate::polynomials::Tolerances;
use crate::scalar::Surd;

pub use checks::{
    check_cor19, check_cor20, check_heilmann_lieb, check_prop24, check_prop25, check_prop6, check_ruelle_bound,
    check_ruelle_fugacity, check_thm26, check_thm27, check_thm3, lemma_form, sector_alpha, LemmaForm, Prop25Part,
};
pub use family::{
    all_multigraphs, bound_choices, canonical_form, named_graphs, random_multigraph, random_multigraphs, BoundPolicy,
    FamilySpec, Generator, NamedKind,
};
pub use scan::{scan_conjecture1, ConjectureWitness, ScanReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    /// Matching polynomials are real-rooted.
    Hl,
    /// `f ≤ g ≤ f + 1` factor polynomials are real-rooted.
    Thm3,
    /// Real parts of `N_0^2` zeros are at most `−2 / (Δ(Δ−1)²)`.
    Thm4,
    /// Fugacities `(1, √(2 − 2/Δ), 1)` give real negative zeros.
    Thm5,
    /// Real-rooted `Γ` at every vertex gives real nonpositive zeros.
    Prop6,
    /// `Γ_v` avoiding `S[π − α]` forces the count polynomial to avoid `S[π − 2α]`.
    Cor19,
    /// The same with `Q(u, y) = Σ u_k y^k / k!` in place of `Γ`.
    Cor20,
    /// Three- and four-term `Γ` above the lemma thresholds.
    Prop24,
    /// `f ≤ g ≤ f + 2` factor polynomials avoid `S[π/3]`.
    Prop25a,
    /// ... and avoid the right half-plane under the per-vertex side condition.
    Prop25b,
    /// Quadratic-factor fugacities give log-concave weighted counts.
    Thm26,
    /// Binomial-reciprocal fugacities put every zero on the unit circle.
    Thm27,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Hl,
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::Thm5,
        TheoremId::Prop6,
        TheoremId::Cor19,
        TheoremId::Cor20,
        TheoremId::Prop24,
        TheoremId::Prop25a,
        TheoremId::Prop25b,
        TheoremId::Thm26,
        TheoremId::Thm27,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Hl => "hl",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm4 => "thm4",
            TheoremId::Thm5 => "thm5",
            TheoremId::Prop6 => "prop6",
            TheoremId::Cor19 => "cor19",
            TheoremId::Cor20 => "cor20",
            TheoremId::Prop24 => "prop24",
            TheoremId::Prop25a => "prop25a",
            TheoremId::Prop25b => "prop25b",
            TheoremId::Thm26 => "thm26",
            TheoremId::Thm27 => "thm27",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

/// The offending root or coefficient index of a falsified check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Falsified { witness: Witness },
    Inapplicable { reason: String },
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified { .. })
    }

    pub(crate) fn inapplicable(reason: impl Into<String>) -> Self {
        Verdict::Inapplicable { reason: reason.into() }
    }
}

/// Everything needed to rerun a check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    /// The graph in the text file format.
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<DegreeBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fugacities: Option<FugacitySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

impl Instance {
    pub fn new(graph: &Multigraph) -> Self {
        Instance { graph: graph.to_text(), bounds: None, fugacities: None, parameters: BTreeMap::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub theorem: TheoremId,
    pub instance: Instance,
    pub verdict: Verdict,
    /// The exact polynomial the verdict is about, when one was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Surd>>,
    /// Signed slack of each inequality the check relies on; negative beyond
    /// tolerance means violated.
    pub margins: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremCheck {
    pub(crate) fn new(theorem: TheoremId, instance: Instance) -> Self {
        TheoremCheck {
            theorem,
            instance,
            verdict: Verdict::Confirmed,
            coefficients: None,
            margins: BTreeMap::new(),
            notes: Vec::new(),
        }
    }
}

/// Tolerances and caps shared by all checks.
#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub tol: Tolerances,
    pub dp: DpOptions,
    pub max_minor_order: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { tol: Tolerances::default(), dp: DpOptions::default(), max_minor_order: DEFAULT_MAX_MINOR_ORDER }
    }
}
