//! Simultaneous (Aberth–Ehrlich) root iteration on exact polynomials.
//!
//! The exact polynomial is first split by Yun's squarefree decomposition, so
//! the floating-point iteration only ever sees simple roots; repeated roots
//! come back with their exact multiplicity instead of as a smeared cluster.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::polish::{eval_with_derivative, polish};
use super::{horner, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Largest accepted `|p(root)| / Σ|a_k||root|^k`.
    pub residual: f64,
    /// Relative distance below which a root counts as lying on a region boundary.
    pub boundary: f64,
    pub max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual: 1e-10, boundary: 1e-8, max_sweeps: 1000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    /// Nonzero roots, repeated by multiplicity.
    pub roots: Vec<Complex64>,
    /// Relative residual of each root against the deflated polynomial.
    pub residuals: Vec<f64>,
    /// Multiplicity of the root at 0, removed exactly before iterating.
    pub origin_multiplicity: usize,
}

impl RootSet {
    /// Nonzero roots followed by `origin_multiplicity` zeros.
    pub fn all_roots(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots
            .iter()
            .copied()
            .chain(std::iter::repeat_n(Complex64::new(0.0, 0.0), self.origin_multiplicity))
    }

    pub fn len(&self) -> usize {
        self.roots.len() + self.origin_multiplicity
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn find_roots(p: &UniPoly, tol: &Tolerances) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot find roots of the zero polynomial".into()));
    }
    let origin = p.origin_multiplicity();
    let deflated = p.deflate_origin(origin);
    let reference = deflated.normalized_f64();

    let mut roots = Vec::new();
    for (factor, multiplicity) in deflated.squarefree_decomposition() {
        let coeffs = factor.normalized_double_f64();
        let simple = aberth(&coeffs, tol.max_sweeps);
        let mut simple = match simple {
            Ok(r) => r,
            Err((iterations, best)) => {
                let residuals: Vec<f64> = best.iter().map(|&z| relative_residual(&reference, z)).collect();
                let worst = residuals.iter().cloned().fold(0.0, f64::max);
                return Err(Error::NoConvergence { iterations, worst, residuals });
            }
        };
        polish(&coeffs, &mut simple);
        for z in simple {
            roots.extend(std::iter::repeat_n(z, multiplicity));
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let residuals: Vec<f64> = roots.iter().map(|&z| relative_residual(&reference, z)).collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if worst.is_nan() || worst > tol.residual {
        return Err(Error::NoConvergence { iterations: tol.max_sweeps, worst, residuals });
    }
    Ok(RootSet { roots, residuals, origin_multiplicity: origin })
}

/// `|p(z)|` relative to the magnitude of the terms summed to produce it.
fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let value = horner(coeffs, z).norm();
    let r = z.norm();
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    if scale == 0.0 {
        value
    } else {
        value / scale
    }
}

/// Roots of a polynomial with simple roots and nonzero constant term.
///
/// Returns the final iterates on non-convergence.
fn aberth(exact: &[(f64, f64)], max_sweeps: usize) -> std::result::Result<Vec<Complex64>, (usize, Vec<Complex64>)> {
    let coeffs: Vec<f64> = exact.iter().map(|&(hi, lo)| hi + lo).collect();
    let n = coeffs.len() - 1;
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)]),
        _ => {}
    }

    // start on a circle of the geometric-mean root modulus, rotated off the real axis
    let radius = (coeffs[0].abs() / coeffs[n].abs()).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();

    let mut settled = 0;
    for _ in 0..max_sweeps {
        let mut biggest_step: f64 = 0.0;
        for k in 0..n {
            let zk = z[k];
            let (value, slope) = eval_with_derivative(exact, zk);
            if value.norm() == 0.0 {
                continue;
            }
            let ratio = value / slope;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (zk - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] = zk - step;
                biggest_step = biggest_step.max(step.norm() / zk.norm().max(f64::MIN_POSITIVE));
            }
        }
        if biggest_step <= 4.0 * f64::EPSILON {
            settled += 1;
            if settled >= 2 {
                return Ok(z);
            }
        } else {
            settled = 0;
        }
    }
    // the iteration may stall at rounding level without meeting the step test
    let stalled = z.iter().all(|&zk| relative_residual(&coeffs, zk) <= 1e-13);
    if stalled {
        Ok(z)
    } else {
        Err((max_sweeps, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Surd;

    fn roots_of(c: &[i64]) -> RootSet {
        find_roots(&UniPoly::from_ints(c), &Tolerances::default()).unwrap()
    }

    #[test]
    fn linear() {
        let r = roots_of(&[1, 1]);
        assert_eq!(r.roots, vec![Complex64::new(-1.0, 0.0)]);
        assert_eq!(r.residuals, vec![0.0]);
    }

    #[test]
    fn repeated_root_is_exact() {
        let r = roots_of(&[1, 3, 3, 1]);
        assert_eq!(r.roots.len(), 3);
        for z in r.roots {
            assert!((z - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn conjugate_pair_matches_quadratic_formula() {
        // 1 + 2t + 2t^2: t = (-2 ± sqrt(4 - 8)) / 4 = (-1 ± i)/2
        let r = roots_of(&[1, 2, 2]);
        let expected = [Complex64::new(-0.5, -0.5), Complex64::new(-0.5, 0.5)];
        for (z, e) in r.roots.iter().zip(expected) {
            assert!((z - e).norm() < 1e-14, "{z} vs {e}");
        }
    }

    #[test]
    fn origin_roots_are_deflated() {
        let r = roots_of(&[0, 0, 3]);
        assert!(r.roots.is_empty());
        assert_eq!(r.origin_multiplicity, 2);
        let r = roots_of(&[0, 2, 2]);
        assert_eq!(r.origin_multiplicity, 1);
        assert_eq!(r.roots, vec![Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(find_roots(&UniPoly::zero(), &Tolerances::default()).is_err());
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(roots_of(&[5]).is_empty());
    }

    #[test]
    fn unit_circle_cubic() {
        // 1 + 3/4 t + 3/4 t^2 + t^3 = (1 + t)(t^2 - t/4 + 1)
        let p = UniPoly::new(vec![
            Surd::from_int(1),
            Surd::from_ratio(3, 4),
            Surd::from_ratio(3, 4),
            Surd::from_int(1),
        ]);
        let r = find_roots(&p, &Tolerances::default()).unwrap();
        for z in &r.roots {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }
}
