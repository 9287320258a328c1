use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{find_roots, RootSet, Tolerances, UniPoly};
use crate::error::{Error, Result};

/// Open subsets of ℂ the zero-location statements refer to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum Region {
    /// `{z ≠ 0 : |arg z| < θ}` with `0 < θ ≤ π`.
    Sector(f64),
    /// `{|z| < κ}`.
    Disc(f64),
    /// `{|z| > κ}`.
    DiscExterior(f64),
}

impl Region {
    pub fn half_plane() -> Region {
        Region::Sector(PI / 2.0)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Region::Sector(theta) if !(theta > 0.0 && theta <= PI) => {
                Err(Error::InvalidInput(format!("sector angle {theta} outside (0, pi]")))
            }
            Region::Disc(k) | Region::DiscExterior(k) if !(k > 0.0 && k.is_finite()) => {
                Err(Error::InvalidInput(format!("disc radius {k} must be positive")))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.interior_margin(z) > 0.0
    }

    /// Relative distance from `z` to the boundary, positive inside and
    /// nonpositive outside. Sectors measure `dist / |z|` (scale invariant),
    /// discs measure `dist / κ`.
    pub fn interior_margin(&self, z: Complex64) -> f64 {
        match *self {
            Region::Sector(theta) => {
                if z.norm() == 0.0 {
                    return 0.0;
                }
                let gap = theta - z.arg().abs();
                if gap <= 0.0 {
                    gap.max(-1.0)
                } else {
                    gap.min(PI / 2.0).sin()
                }
            }
            Region::Disc(k) => (k - z.norm()) / k,
            Region::DiscExterior(k) => (z.norm() - k) / k,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Sector(t) => write!(f, "S[{:.6}pi]", t / PI),
            Region::Disc(k) => write!(f, "{k}D"),
            Region::DiscExterior(k) => write!(f, "{k}E"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    IdenticallyZero,
    Nonvanishing,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub outcome: Outcome,
    /// A root strictly inside the region, for counterexamples.
    pub witness: Option<Complex64>,
    /// Some root lies within the boundary tolerance of the region's edge.
    pub on_boundary: bool,
    /// Largest interior margin over all roots; nonpositive when no root is inside.
    pub deepest_margin: Option<f64>,
    /// `false` when the verdict comes from random sampling instead of roots.
    pub exhaustive: bool,
    /// Per-vertex point where a sampled multivariate polynomial vanished.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_point: Option<Vec<Complex64>>,
}

impl RegionVerdict {
    pub fn is_nonvanishing(&self) -> bool {
        self.outcome != Outcome::Counterexample
    }

    pub(crate) fn identically_zero() -> Self {
        RegionVerdict { outcome: Outcome::IdenticallyZero, witness: None, on_boundary: false, deepest_margin: None, exhaustive: true, sample_point: None }
    }
}

/// Region verdict given an already computed root set.
pub fn verdict_from_roots(roots: &RootSet, region: &Region, tol: &Tolerances) -> RegionVerdict {
    let mut witness: Option<(Complex64, f64)> = None;
    let mut on_boundary = false;
    let mut deepest: Option<f64> = None;
    for z in roots.all_roots() {
        let margin = region.interior_margin(z);
        deepest = Some(deepest.map_or(margin, |d: f64| d.max(margin)));
        if margin > tol.boundary {
            if witness.is_none_or(|(_, m)| margin > m) {
                witness = Some((z, margin));
            }
        } else if margin > -tol.boundary {
            on_boundary = true;
        }
    }
    RegionVerdict {
        outcome: if witness.is_some() { Outcome::Counterexample } else { Outcome::Nonvanishing },
        witness: witness.map(|(z, _)| z),
        on_boundary,
        deepest_margin: deepest,
        exhaustive: true,
        sample_point: None,
    }
}

pub fn nonvanishing_in(p: &UniPoly, region: &Region, tol: &Tolerances) -> Result<RegionVerdict> {
    region.validate()?;
    if p.is_zero() {
        return Ok(RegionVerdict::identically_zero());
    }
    let roots = find_roots(p, tol)?;
    Ok(verdict_from_roots(&roots, region, tol))
}

/// Summary of where the zeros of a real polynomial sit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub real_rooted_nonpositive: bool,
    pub hurwitz_strict: bool,
    pub hurwitz_quasi: bool,
    /// Over all roots including those at 0; `-inf` for constants.
    pub max_real_part: f64,
    /// `min |arg z|` over nonzero roots; a polynomial is `S[θ]`-nonvanishing
    /// exactly when this is at least `θ`. `None` without nonzero roots.
    pub min_abs_arg: Option<f64>,
    pub min_modulus: Option<f64>,
    pub max_modulus: Option<f64>,
    pub roots: RootSet,
}

pub fn classify(p: &UniPoly, tol: &Tolerances) -> Result<Classification> {
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot classify the zero polynomial".into()));
    }
    let roots = find_roots(p, tol)?;
    Ok(classify_roots(roots, tol))
}

pub(crate) fn classify_roots(roots: RootSet, tol: &Tolerances) -> Classification {
    let real_rooted_nonpositive = verdict_from_roots(&roots, &Region::Sector(PI), tol).is_nonvanishing();
    let hurwitz_quasi = verdict_from_roots(&roots, &Region::half_plane(), tol).is_nonvanishing();
    let hurwitz_strict = roots.origin_multiplicity == 0
        && roots.roots.iter().all(|z| z.re < -tol.boundary * z.norm());
    let all: Vec<Complex64> = roots.all_roots().collect();
    let max_real_part = all.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let min_abs_arg = roots.roots.iter().map(|z| z.arg().abs()).reduce(f64::min);
    let min_modulus = all.iter().map(|z| z.norm()).reduce(f64::min);
    let max_modulus = all.iter().map(|z| z.norm()).reduce(f64::max);
    Classification {
        real_rooted_nonpositive,
        hurwitz_strict,
        hurwitz_quasi,
        max_real_part,
        min_abs_arg,
        min_modulus,
        max_modulus,
        roots,
    }
}
