use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{HarnessConfig, Instance, TheoremCheck, TheoremId, Verdict, Witness};
use crate::enumeration::{dp_counts_with, factor_counts_with, CoeffSeq};
use crate::error::{Error, Result};
use crate::fugacities::{
    binomial_reciprocal_fugacities, exponential_poly, lemma_threshold, ruelle_fugacities, thm26_fugacities,
    FugacitySpec, LemmaCase, LemmaFamily, Quadratic,
};
use crate::inequalities::{
    hurwitz_consequences_check, log_concavity_check, newton_check, toeplitz_minors_check, IneqReport,
};
use crate::multigraph::{DegreeBounds, Multigraph};
use crate::polynomials::{find_roots, verdict_from_roots, Outcome, Region, RootSet, Tolerances, UniPoly};
use num_traits::Zero;

use crate::scalar::{int, Surd};

/// Widening applied to a measured `α` so the derived open sector stays
/// strictly inside what the hypothesis guarantees.
const ALPHA_WIDENING: f64 = 1e-8;

fn roots_or_reason(p: &UniPoly, tol: &Tolerances) -> std::result::Result<RootSet, String> {
    find_roots(p, tol).map_err(|e| format!("root finder failed: {e}"))
}

/// `max(0, π − min |arg ζ|)` over the nonzero zeros `ζ` of `p`, snapped to 0
/// within the boundary tolerance and widened otherwise. Also returns the root
/// attaining it.
pub fn sector_alpha(p: &UniPoly, tol: &Tolerances) -> std::result::Result<(f64, Option<num_complex::Complex64>), String> {
    if p.is_zero() {
        return Ok((0.0, None));
    }
    let roots = roots_or_reason(p, tol)?;
    let Some(worst) = roots.roots.iter().copied().min_by(|a, b| a.arg().abs().total_cmp(&b.arg().abs())) else {
        return Ok((0.0, None));
    };
    let raw = PI - worst.arg().abs();
    if raw <= tol.boundary {
        Ok((0.0, Some(worst)))
    } else {
        Ok((raw + ALPHA_WIDENING, Some(worst)))
    }
}

/// Applies a sector conclusion to a count polynomial, recording the slack
/// `min |arg ζ| − θ`.
fn conclude_sector(check: &mut TheoremCheck, counts: &CoeffSeq, theta: f64, tol: &Tolerances) {
    let p = counts.poly();
    check.coefficients = Some(p.coeffs().to_vec());
    check.margins.insert("sector".into(), theta);
    if p.is_zero() {
        check.notes.push("polynomial is identically zero".into());
        return;
    }
    let roots = match roots_or_reason(&p, tol) {
        Ok(r) => r,
        Err(reason) => {
            check.verdict = Verdict::inapplicable(reason);
            return;
        }
    };
    if let Some(min_arg) = roots.roots.iter().map(|z| z.arg().abs()).reduce(f64::min) {
        check.margins.insert("sector_slack".into(), min_arg - theta);
    }
    let verdict = verdict_from_roots(&roots, &Region::Sector(theta), tol);
    if verdict.on_boundary {
        check.notes.push("a zero lies on the sector boundary".into());
    }
    if verdict.outcome == Outcome::Counterexample {
        check.verdict = Verdict::Falsified {
            witness: Witness {
                root: verdict.witness,
                index: None,
                detail: format!("zero strictly inside S[{:.12}]", theta),
            },
        };
    }
}

/// Folds an inequality report into the check; a failure falsifies it.
fn conclude_inequality(check: &mut TheoremCheck, report: IneqReport) {
    if report.holds || check.verdict.is_falsified() {
        return;
    }
    let v = report.violation.expect("failed report carries a violation");
    check.verdict = Verdict::Falsified {
        witness: Witness {
            root: None,
            index: Some(v.j),
            detail: format!("{} fails at {}: {} < {}", report.name, v.j, v.lhs, v.rhs),
        },
    };
}

/// Strictly negative zeros: the sector verdict plus a nonzero constant term.
fn require_no_origin_zero(check: &mut TheoremCheck, counts: &CoeffSeq) {
    if !check.verdict.is_falsified() && !counts.poly().is_zero() && counts.get(0).is_zero() {
        check.verdict = Verdict::Falsified {
            witness: Witness { root: Some(num_complex::Complex64::new(0.0, 0.0)), index: Some(0), detail: "zero at the origin".into() },
        };
    }
}

fn real_root_margins(check: &mut TheoremCheck, counts: &CoeffSeq, tol: &Tolerances) {
    if let Ok(roots) = find_roots(&counts.poly(), tol) {
        let scale = roots.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale > 0.0 {
            let imag = roots.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            check.margins.insert("max_abs_imag_over_modulus".into(), imag / scale);
            check.margins.insert("max_real_part".into(), roots.roots.iter().map(|z| z.re).fold(f64::MIN, f64::max));
        }
    }
}

fn with_bounds(graph: &Multigraph, bounds: &DegreeBounds) -> Instance {
    Instance { bounds: Some(bounds.clone()), ..Instance::new(graph) }
}

fn with_spec(graph: &Multigraph, spec: &FugacitySpec) -> Instance {
    Instance { fugacities: Some(spec.clone()), ..Instance::new(graph) }
}

fn bounds_fit(graph: &Multigraph, bounds: &DegreeBounds) -> Result<()> {
    if bounds.len() != graph.vertex_count() {
        return Err(Error::InvalidInput("degree bounds do not match the vertex count".into()));
    }
    Ok(())
}

/// Matching polynomial: zeros real and strictly negative.
pub fn check_heilmann_lieb(graph: &Multigraph, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let bounds = DegreeBounds::constant(graph.vertex_count(), 0, 1)?;
    let mut check = TheoremCheck::new(TheoremId::Hl, with_bounds(graph, &bounds));
    let counts = factor_counts_with(graph, &bounds, &cfg.dp)?;
    conclude_sector(&mut check, &counts, PI, &cfg.tol);
    require_no_origin_zero(&mut check, &counts);
    real_root_margins(&mut check, &counts, &cfg.tol);
    Ok(check)
}

/// `f ≤ g ≤ f + 1`: zeros real and nonpositive.
pub fn check_thm3(graph: &Multigraph, bounds: &DegreeBounds, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    bounds_fit(graph, bounds)?;
    let mut check = TheoremCheck::new(TheoremId::Thm3, with_bounds(graph, bounds));
    if let Some(v) = (0..bounds.len()).find(|&v| bounds.upper()[v] > bounds.lower()[v] + 1) {
        check.verdict = Verdict::inapplicable(format!("g({}) > f({}) + 1", v + 1, v + 1));
        return Ok(check);
    }
    let counts = factor_counts_with(graph, bounds, &cfg.dp)?;
    conclude_sector(&mut check, &counts, PI, &cfg.tol);
    real_root_margins(&mut check, &counts, &cfg.tol);
    Ok(check)
}

/// Zeros of `Σ N_0^2(G; j) t^j` have real part at most `−2 / (Δ(Δ−1)²)`.
pub fn check_ruelle_bound(graph: &Multigraph, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let bounds = DegreeBounds::constant(graph.vertex_count(), 0, 2)?;
    let mut check = TheoremCheck::new(TheoremId::Thm4, with_bounds(graph, &bounds));
    let delta = graph.max_degree();
    if delta < 2 {
        check.verdict = Verdict::inapplicable(format!("maximum degree {delta} is below 2"));
        return Ok(check);
    }
    let counts = factor_counts_with(graph, &bounds, &cfg.dp)?;
    let p = counts.poly();
    check.coefficients = Some(p.coeffs().to_vec());
    let bound = -2.0 / (delta as f64 * ((delta - 1) as f64).powi(2));
    check.margins.insert("bound".into(), bound);
    let roots = match roots_or_reason(&p, &cfg.tol) {
        Ok(r) => r,
        Err(reason) => {
            check.verdict = Verdict::inapplicable(reason);
            return Ok(check);
        }
    };
    let Some(worst) = roots.all_roots().max_by(|a, b| a.re.total_cmp(&b.re)) else {
        return Ok(check);
    };
    let slack = bound - worst.re;
    check.margins.insert("max_real_part".into(), worst.re);
    check.margins.insert("bound_slack".into(), slack);
    if slack < -cfg.tol.boundary {
        check.verdict = Verdict::Falsified {
            witness: Witness {
                root: Some(worst),
                index: None,
                detail: format!("real part {} exceeds {}", worst.re, bound),
            },
        };
    }
    Ok(check)
}

/// Fugacities `(1, u₁, 1)` with `u₁ ≥ √(2 − 2/Δ)` (the bound itself by
/// default): zeros real and negative.
pub fn check_ruelle_fugacity(graph: &Multigraph, u1: Option<Surd>, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let delta = graph.max_degree();
    let mut check = TheoremCheck::new(TheoremId::Thm5, Instance::new(graph));
    if delta < 1 {
        check.verdict = Verdict::inapplicable("graph has no edges");
        return Ok(check);
    }
    let mut u = ruelle_fugacities(delta)?;
    let threshold = u[1].clone();
    let mut strict = false;
    if let Some(u1) = u1 {
        if !at_least(&u1, &threshold) {
            check.verdict = Verdict::inapplicable(format!("u1 = {u1} is below sqrt(2 - 2/{delta})"));
            return Ok(check);
        }
        strict = u1 != threshold;
        if !strict {
            check.notes.push("u1 at the threshold: nonpositive zeros accepted".into());
        }
        u[1] = u1;
    } else {
        check.notes.push("u1 at the threshold: nonpositive zeros accepted".into());
    }
    let spec = FugacitySpec::isotropic(graph, &u)?;
    check.instance.fugacities = Some(spec.clone());
    let counts = dp_counts_with(graph, &spec, &cfg.dp)?;
    conclude_sector(&mut check, &counts, PI, &cfg.tol);
    if strict {
        require_no_origin_zero(&mut check, &counts);
    }
    real_root_margins(&mut check, &counts, &cfg.tol);
    Ok(check)
}

/// Names the first vertex whose generating function misses the sector
/// hypothesis `S[π − α_max)`, or returns the largest `α` over all vertices.
fn gamma_alpha(
    spec: &FugacitySpec,
    poly_of: impl Fn(usize) -> UniPoly,
    alpha_max: f64,
    tol: &Tolerances,
) -> std::result::Result<f64, String> {
    let mut alpha: f64 = 0.0;
    for v in 0..spec.len() {
        let (a, root) = sector_alpha(&poly_of(v), tol)?;
        if a >= alpha_max {
            let root = root.map(|z| format!("{z}")).unwrap_or_default();
            return Err(format!("vertex {}: zero {root} gives alpha = {a:.12}", v + 1));
        }
        alpha = alpha.max(a);
    }
    Ok(alpha)
}

fn spec_fits(check: &mut TheoremCheck, graph: &Multigraph, spec: &FugacitySpec) -> bool {
    if let Err(e) = spec.check_against(graph) {
        check.verdict = Verdict::inapplicable(e.to_string());
        return false;
    }
    true
}

/// Every `Γ_v` real-rooted: count polynomial real-rooted.
pub fn check_prop6(graph: &Multigraph, spec: &FugacitySpec, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let mut check = TheoremCheck::new(TheoremId::Prop6, with_spec(graph, spec));
    if !spec_fits(&mut check, graph, spec) {
        return Ok(check);
    }
    for v in 0..spec.len() {
        match sector_alpha(&spec.gamma(v), &cfg.tol) {
            Ok((0.0, _)) => {}
            Ok((_, root)) => {
                let root = root.map(|z| format!("{z}")).unwrap_or_default();
                check.verdict = Verdict::inapplicable(format!("Gamma at vertex {} has the zero {root} off the negative axis", v + 1));
                return Ok(check);
            }
            Err(reason) => {
                check.verdict = Verdict::inapplicable(reason);
                return Ok(check);
            }
        }
    }
    let counts = dp_counts_with(graph, spec, &cfg.dp)?;
    conclude_sector(&mut check, &counts, PI, &cfg.tol);
    Ok(check)
}

fn alpha_conclusion(
    mut check: TheoremCheck,
    graph: &Multigraph,
    spec: &FugacitySpec,
    poly_of: impl Fn(usize) -> UniPoly,
    cfg: &HarnessConfig,
) -> Result<TheoremCheck> {
    if !spec_fits(&mut check, graph, spec) {
        return Ok(check);
    }
    let alpha = match gamma_alpha(spec, poly_of, PI / 2.0, &cfg.tol) {
        Ok(a) => a,
        Err(reason) => {
            check.verdict = Verdict::inapplicable(format!("alpha >= pi/2: {reason}"));
            return Ok(check);
        }
    };
    check.margins.insert("alpha".into(), alpha);
    let counts = dp_counts_with(graph, spec, &cfg.dp)?;
    conclude_sector(&mut check, &counts, PI - 2.0 * alpha, &cfg.tol);
    Ok(check)
}

/// `Γ_v` avoiding `S[π − α]`: count polynomial avoids `S[π − 2α]`.
pub fn check_cor19(graph: &Multigraph, spec: &FugacitySpec, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let check = TheoremCheck::new(TheoremId::Cor19, with_spec(graph, spec));
    alpha_conclusion(check, graph, spec, |v| spec.gamma(v), cfg)
}

/// As [`check_cor19`] with `α` measured on `Q(u, y) = Σ u_k y^k / k!`.
pub fn check_cor20(graph: &Multigraph, spec: &FugacitySpec, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let mut check = TheoremCheck::new(TheoremId::Cor20, with_spec(graph, spec));
    check.notes.push("conclusion read as S[pi - 2 alpha]-nonvanishing".into());
    alpha_conclusion(check, graph, spec, |v| exponential_poly(spec.sequence(v)), cfg)
}

/// `x ≥ a + b√m` where `x` may live in a different quadratic field.
fn at_least(x: &Surd, threshold: &Surd) -> bool {
    if x.radicand() == threshold.radicand() || x.is_rational() || threshold.is_rational() {
        return x >= threshold;
    }
    let a = Surd::from(threshold.rational_part().clone());
    let b = threshold.irrational_part().clone();
    let m = Surd::from_int(threshold.radicand() as i64);
    let d = x - &a;
    let d2 = &d * &d;
    let b2m = Surd::from(&b * &b) * m;
    if b >= int(0) {
        !d.is_negative() && d2 >= b2m
    } else {
        !d.is_negative() || d2 <= b2m
    }
}

/// A per-vertex `Γ` in one of the shapes the threshold lemmas cover, after
/// rescaling `y ↦ s·y` and dividing by a positive constant (both preserve
/// every sector).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum LemmaForm {
    /// At most two nonzero terms, consecutive: a monomial or one negative zero.
    Short,
    /// Nonzero `u_{k−1}, u_k, u_{k+1}`; `beta_squared = u_k² / (u_{k−1} u_{k+1})`.
    ThreeTerm { k: usize, beta_squared: Surd },
    /// Nonzero `u_{k−1..=k+2}` with `u_k³ u_{k+2} = u_{k+1}³ u_{k−1}`;
    /// `mu = u_k² / (u_{k−1} u_{k+1})`.
    FourTerm { k: usize, mu: Surd },
}

/// Classifies `u` (cap `D`) against the lemma shapes.
pub fn lemma_form(u: &[Surd]) -> std::result::Result<LemmaForm, String> {
    let nz: Vec<usize> = (0..u.len()).filter(|&i| !u[i].is_zero()).collect();
    if nz.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(format!("nonzero terms at degrees {nz:?} are not consecutive"));
    }
    match nz.len() {
        0..=2 => Ok(LemmaForm::Short),
        3 => {
            let k = nz[1];
            let beta_squared = u[k].pow(2) / (&u[k - 1] * &u[k + 1]);
            Ok(LemmaForm::ThreeTerm { k, beta_squared })
        }
        4 => {
            let k = nz[1];
            let (a, b, c, e) = (&u[k - 1], &u[k], &u[k + 1], &u[k + 2]);
            if b.pow(3) * e.clone() != c.pow(3) * a.clone() {
                return Err(format!("four terms at degree {} do not rescale to the symmetric form", k - 1));
            }
            Ok(LemmaForm::FourTerm { k, mu: b.pow(2) / (a * c) })
        }
        r => Err(format!("{r} nonzero terms")),
    }
}

/// Whether vertex data meets the lemma hypothesis for `case`.
fn lemma_hypothesis(d: usize, u: &[Surd], case: LemmaCase) -> std::result::Result<(), String> {
    match lemma_form(u)? {
        LemmaForm::Short => Ok(()),
        LemmaForm::ThreeTerm { k, beta_squared } => {
            let family = LemmaFamily::ThreeTerm { d, k, beta: Surd::from_int(0) };
            let threshold = lemma_threshold(&family, case).map_err(|e| e.to_string())?;
            if beta_squared >= threshold.pow(2) {
                Ok(())
            } else {
                Err(format!("three-term beta^2 = {beta_squared} is below {}", threshold.pow(2)))
            }
        }
        LemmaForm::FourTerm { k, mu } => {
            let family = if d == 2 * k + 1 {
                LemmaFamily::FourTermOdd { p: k, mu: Surd::from_int(0) }
            } else {
                LemmaFamily::FourTerm { d, k, mu: Surd::from_int(0) }
            };
            let threshold = lemma_threshold(&family, case).map_err(|e| e.to_string())?;
            if at_least(&mu, &threshold) {
                Ok(())
            } else {
                Err(format!("four-term mu = {mu} is below {threshold}"))
            }
        }
    }
}

/// Generating functions with at most four consecutive terms above the
/// thresholds of `case`: the count polynomial avoids the matching sector and
/// satisfies the matching inequalities.
pub fn check_prop24(graph: &Multigraph, spec: &FugacitySpec, case: LemmaCase, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let mut check = TheoremCheck::new(TheoremId::Prop24, with_spec(graph, spec));
    check.instance.parameters.insert("case".into(), format!("{case:?}").to_lowercase());
    if !spec_fits(&mut check, graph, spec) {
        return Ok(check);
    }
    for v in 0..spec.len() {
        if let Err(reason) = lemma_hypothesis(spec.cap(v), spec.sequence(v), case) {
            check.verdict = Verdict::inapplicable(format!("vertex {}: {reason}", v + 1));
            return Ok(check);
        }
    }
    let counts = dp_counts_with(graph, spec, &cfg.dp)?;
    let theta = 2.0 * case.sector() - PI;
    conclude_sector(&mut check, &counts, theta, &cfg.tol);
    let n = counts.trimmed();
    match case {
        LemmaCase::A => conclude_inequality(&mut check, hurwitz_consequences_check(&n)),
        LemmaCase::B => conclude_inequality(&mut check, log_concavity_check(&n)),
        LemmaCase::C => {
            let d = n.len().saturating_sub(1);
            conclude_inequality(&mut check, newton_check(&n, d)?);
            conclude_inequality(&mut check, toeplitz_minors_check(&n, cfg.max_minor_order)?);
        }
    }
    Ok(check)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Prop25Part {
    /// Conclusion `S[π/3]`.
    A,
    /// Conclusion: the open right half-plane.
    B,
}

/// `f ≤ g ≤ f + 2`, `g ≤ deg(G)`: factor polynomial avoids `S[π/3]`, and the
/// half-plane when every vertex has `g ≤ f + 1`, `f = 0`, `g = deg` or `deg ≤ 5`.
pub fn check_prop25(graph: &Multigraph, bounds: &DegreeBounds, part: Prop25Part, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    bounds_fit(graph, bounds)?;
    let id = match part {
        Prop25Part::A => TheoremId::Prop25a,
        Prop25Part::B => TheoremId::Prop25b,
    };
    let mut check = TheoremCheck::new(id, with_bounds(graph, bounds));
    let deg = graph.degree_vector();
    for (v, &d) in deg.iter().enumerate() {
        let (f, g) = (bounds.lower()[v], bounds.upper()[v]);
        if g > f + 2 || g > d {
            check.verdict = Verdict::inapplicable(format!("vertex {}: need g <= f + 2 and g <= deg", v + 1));
            return Ok(check);
        }
        if part == Prop25Part::B && !(g <= f + 1 || f == 0 || g == d || d <= 5) {
            check.verdict = Verdict::inapplicable(format!("vertex {}: side condition fails", v + 1));
            return Ok(check);
        }
    }
    let counts = factor_counts_with(graph, bounds, &cfg.dp)?;
    match part {
        Prop25Part::A => conclude_sector(&mut check, &counts, PI / 3.0, &cfg.tol),
        Prop25Part::B => {
            conclude_sector(&mut check, &counts, PI / 2.0, &cfg.tol);
            conclude_inequality(&mut check, hurwitz_consequences_check(&counts.trimmed()));
        }
    }
    Ok(check)
}

/// Fugacities `u_k = [y^k] y^f (1+y)^b (1 + c y + y²)^a`: the weighted count
/// polynomial avoids `S[2·angle − π]` and its coefficients satisfy the
/// inequality that sector implies.
pub fn check_thm26(graph: &Multigraph, bounds: &DegreeBounds, quad: Quadratic, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    bounds_fit(graph, bounds)?;
    let mut check = TheoremCheck::new(TheoremId::Thm26, with_bounds(graph, bounds));
    check.instance.parameters.insert("quad".into(), format!("{quad:?}").to_lowercase());
    let deg = graph.degree_vector();
    if let Some(v) = (0..deg.len()).find(|&v| bounds.upper()[v] > deg[v]) {
        check.verdict = Verdict::inapplicable(format!("g({}) exceeds deg(G, {})", v + 1, v + 1));
        return Ok(check);
    }
    let spec = FugacitySpec::per_vertex(graph, |v, d| {
        Ok((d, thm26_fugacities(bounds.lower()[v], bounds.upper()[v], d, quad)?))
    })?;
    check.instance.fugacities = Some(spec.clone());
    let counts = dp_counts_with(graph, &spec, &cfg.dp)?;
    conclude_sector(&mut check, &counts, quad.conclusion_sector(), &cfg.tol);
    let n = counts.trimmed();
    match quad {
        Quadratic::Sqrt3 => conclude_inequality(&mut check, log_concavity_check(&n)),
        Quadratic::Sqrt2 => conclude_inequality(&mut check, hurwitz_consequences_check(&n)),
        Quadratic::Two => conclude_inequality(&mut check, newton_check(&n, n.len().saturating_sub(1))?),
    }
    Ok(check)
}

/// Binomial-reciprocal fugacities with `D = deg(G)`: all zeros on the unit circle.
pub fn check_thm27(graph: &Multigraph, cfg: &HarnessConfig) -> Result<TheoremCheck> {
    let spec = FugacitySpec::per_vertex(graph, |_, d| Ok((d, binomial_reciprocal_fugacities(d))))?;
    let mut check = TheoremCheck::new(TheoremId::Thm27, with_spec(graph, &spec));
    let counts = dp_counts_with(graph, &spec, &cfg.dp)?;
    let p = counts.poly();
    check.coefficients = Some(p.coeffs().to_vec());
    let roots = match roots_or_reason(&p, &cfg.tol) {
        Ok(r) => r,
        Err(reason) => {
            check.verdict = Verdict::inapplicable(reason);
            return Ok(check);
        }
    };
    let worst = roots.all_roots().max_by(|a, b| (a.norm() - 1.0).abs().total_cmp(&(b.norm() - 1.0).abs()));
    if let Some(z) = worst {
        let deviation = (z.norm() - 1.0).abs();
        check.margins.insert("max_modulus_deviation".into(), deviation);
        if deviation > cfg.tol.boundary {
            check.verdict = Verdict::Falsified {
                witness: Witness { root: Some(z), index: None, detail: format!("|zero| = {}", z.norm()) },
            };
        }
    }
    Ok(check)
}
