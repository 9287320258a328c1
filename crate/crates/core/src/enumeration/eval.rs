use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fugacities::FugacitySpec;
use crate::multigraph::Multigraph;
use crate::polynomials::{Outcome, Region, RegionVerdict};
use crate::scalar::rational_to_f64;

/// Largest number of distinct degree monomials collected for fugacity sampling.
pub const SAMPLE_MONOMIAL_CAP: usize = 1 << 18;

const BOUNDARY_GAP: f64 = 1e-3;
const ZERO_THRESHOLD: f64 = 1e-12;

/// `F(G; λ, z) = Π_{e = vw} (1 + λ_e z_v z_w)`.
pub fn evaluate_f(graph: &Multigraph, z: &[Complex64]) -> Complex64 {
    graph.edges().iter().fold(Complex64::new(1.0, 0.0), |value, e| {
        value * (1.0 + z[e.u] * z[e.v] * rational_to_f64(&e.weight))
    })
}

/// Smallest `|1 + λ z_v z_w| / (1 + |λ z_v z_w|)` over the edges. The product
/// vanishes exactly when one factor does, so this is the zero test for the
/// product form; a power of a merely small factor is not a zero.
fn smallest_factor(graph: &Multigraph, z: &[Complex64]) -> f64 {
    graph
        .edges()
        .iter()
        .map(|e| {
            let term = z[e.u] * z[e.v] * rational_to_f64(&e.weight);
            (1.0 + term).norm() / (1.0 + term.norm())
        })
        .fold(f64::INFINITY, f64::min)
}

/// Collected form of `Σ_H λ_H u_{deg(H)} z^{deg(H)}`.
struct Monomials {
    terms: Vec<(Vec<u16>, f64)>,
}

impl Monomials {
    fn build(graph: &Multigraph, spec: &FugacitySpec) -> Result<Self> {
        spec.check_against(graph)?;
        let n = graph.vertex_count();
        let mut states: HashMap<Vec<u16>, f64> = HashMap::from([(vec![0u16; n], 1.0)]);
        for e in graph.edges() {
            let lambda = rational_to_f64(&e.weight);
            let mut next = states.clone();
            for (key, w) in &states {
                let mut k = key.clone();
                k[e.u] += 1;
                k[e.v] += 1;
                *next.entry(k).or_insert(0.0) += w * lambda;
            }
            if next.len() > SAMPLE_MONOMIAL_CAP {
                return Err(Error::CapExceeded {
                    what: "sampling monomial",
                    actual: next.len() as u128,
                    cap: SAMPLE_MONOMIAL_CAP as u128,
                    hint: "sample a smaller graph".into(),
                });
            }
            states = next;
        }
        let u = spec.to_f64();
        let mut terms: Vec<(Vec<u16>, f64)> = states
            .into_iter()
            .map(|(key, w)| {
                let fug: f64 = key.iter().enumerate().map(|(v, &d)| u[v].get(d as usize).copied().unwrap_or(0.0)).product();
                (key, w * fug)
            })
            .filter(|(_, c)| *c != 0.0)
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Monomials { terms })
    }

    fn eval(&self, z: &[Complex64]) -> (Complex64, f64) {
        let max_deg = self.terms.iter().flat_map(|(k, _)| k.iter()).copied().max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Complex64>> = z
            .iter()
            .map(|&zv| {
                std::iter::successors(Some(Complex64::new(1.0, 0.0)), |p| Some(p * zv)).take(max_deg + 1).collect()
            })
            .collect();
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (key, c) in &self.terms {
            let term = key.iter().enumerate().fold(Complex64::new(*c, 0.0), |acc, (v, &d)| acc * powers[v][d as usize]);
            value += term;
            scale += term.norm();
        }
        (value, scale)
    }
}

/// `Σ_H λ_H Π_v u^(v)_{deg(H,v)} z_v^{deg(H,v)}`.
pub fn evaluate_weighted(graph: &Multigraph, spec: &FugacitySpec, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != graph.vertex_count() {
        return Err(Error::InvalidInput("one value per vertex required".into()));
    }
    Ok(Monomials::build(graph, spec)?.eval(z).0)
}

/// What multiplies the monomials of the sampled polynomial.
#[derive(Clone, Debug)]
pub enum SampleWeights<'a> {
    /// The product form `F(G; λ, z)` with the graph's edge weights.
    Lambda,
    Fugacity(&'a FugacitySpec),
}

fn sample_point(rng: &mut ChaCha8Rng, region: &Region) -> Complex64 {
    match *region {
        Region::Sector(theta) => {
            let r = 10f64.powf(rng.gen_range(-2.0..2.0));
            let half = (theta - BOUNDARY_GAP).max(0.0);
            let phi = if half > 0.0 { rng.gen_range(-half..half) } else { 0.0 };
            Complex64::from_polar(r, phi)
        }
        Region::Disc(k) => {
            let r = k * (1.0 - BOUNDARY_GAP) * rng.gen::<f64>().sqrt();
            Complex64::from_polar(r, rng.gen_range(-PI..PI))
        }
        Region::DiscExterior(k) => {
            let r = k * (1.0 + BOUNDARY_GAP) / (1.0 - rng.gen::<f64>()).sqrt();
            Complex64::from_polar(r, rng.gen_range(-PI..PI))
        }
    }
}

/// Draws `z_v` independently from the interior of `region` and reports a
/// counterexample at the first point where `|F(z)| < 1e-12 · scale`. A
/// nonvanishing answer is probabilistic (`exhaustive = false`).
pub fn sample_nonvanishing(
    graph: &Multigraph,
    weights: SampleWeights<'_>,
    region: &Region,
    samples: usize,
    seed: u64,
) -> Result<RegionVerdict> {
    region.validate()?;
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample required".into()));
    }
    let monomials = match weights {
        SampleWeights::Lambda => None,
        SampleWeights::Fugacity(spec) => Some(Monomials::build(graph, spec)?),
    };
    if monomials.as_ref().is_some_and(|m| m.terms.is_empty()) {
        return Ok(RegionVerdict { exhaustive: false, ..RegionVerdict::identically_zero() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = vec![Complex64::new(0.0, 0.0); graph.vertex_count()];
    for _ in 0..samples {
        z.iter_mut().for_each(|zv| *zv = sample_point(&mut rng, region));
        let (value, vanishes) = match &monomials {
            None => (evaluate_f(graph, &z), smallest_factor(graph, &z) < ZERO_THRESHOLD),
            Some(m) => {
                let (value, scale) = m.eval(&z);
                (value, value.norm() < ZERO_THRESHOLD * scale)
            }
        };
        if vanishes {
            return Ok(RegionVerdict {
                outcome: Outcome::Counterexample,
                witness: Some(value),
                on_boundary: false,
                deepest_margin: None,
                exhaustive: false,
                sample_point: Some(z),
            });
        }
    }
    Ok(RegionVerdict {
        outcome: Outcome::Nonvanishing,
        witness: None,
        on_boundary: false,
        deepest_margin: None,
        exhaustive: false,
        sample_point: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fugacities::interval_fugacities;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_form_examples() {
        let edge = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(evaluate_f(&edge, &[c(1.0, 0.0), c(1.0, 0.0)]), c(2.0, 0.0));
        assert!(evaluate_f(&edge, &[c(0.0, 1.0), c(0.0, 1.0)]).norm() < 1e-15);
        let c3 = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(evaluate_f(&c3, &[c(1.0, 0.0); 3]), c(8.0, 0.0));
        let lp = Multigraph::from_edges(1, &[(0, 0)]).unwrap();
        assert!((evaluate_f(&lp, &[c(2.0, 0.0)]) - c(5.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn weighted_evaluation_matches_product_at_full_fugacity() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2), (1, 1)]).unwrap();
        let spec = FugacitySpec::per_vertex(&g, |_, d| Ok((d, interval_fugacities(0, d, d)?))).unwrap();
        let z = [c(0.3, 0.2), c(-0.7, 1.1), c(0.5, -0.4)];
        let a = evaluate_weighted(&g, &spec, &z).unwrap();
        let b = evaluate_f(&g, &z);
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn sampling_examples() {
        let edge = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        let v = sample_nonvanishing(&edge, SampleWeights::Lambda, &Region::half_plane(), 1000, 1).unwrap();
        assert_eq!(v.outcome, Outcome::Nonvanishing);
        assert!(!v.exhaustive);

        let c3 = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let spec = FugacitySpec::isotropic(&c3, &interval_fugacities(0, 1, 2).unwrap()).unwrap();
        let v = sample_nonvanishing(&c3, SampleWeights::Fugacity(&spec), &Region::half_plane(), 1000, 2).unwrap();
        assert_eq!(v.outcome, Outcome::Nonvanishing);
        let v = sample_nonvanishing(&c3, SampleWeights::Lambda, &Region::Disc(1.0), 1000, 3).unwrap();
        assert_eq!(v.outcome, Outcome::Nonvanishing);
    }

    #[test]
    fn all_zero_fugacities_are_identically_zero() {
        let edge = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        let zero = FugacitySpec::isotropic(&edge, &[]).unwrap();
        let v = sample_nonvanishing(&edge, SampleWeights::Fugacity(&zero), &Region::Disc(1.0), 10, 4).unwrap();
        assert_eq!(v.outcome, Outcome::IdenticallyZero);
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let a = sample_nonvanishing(&g, SampleWeights::Lambda, &Region::DiscExterior(1.0), 100, 9).unwrap();
        let b = sample_nonvanishing(&g, SampleWeights::Lambda, &Region::DiscExterior(1.0), 100, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn points_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for region in [Region::Sector(0.5), Region::Disc(2.0), Region::DiscExterior(0.5)] {
            for _ in 0..1000 {
                assert!(region.interior_margin(sample_point(&mut rng, &region)) > 0.0);
            }
        }
    }
}
