//! Exact univariate polynomials over `ℚ(√m)`, a certified complex root
//! finder, and region verdicts.

mod polish;
mod region;
mod roots;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Surd;

pub use region::{classify, nonvanishing_in, verdict_from_roots, Classification, Outcome, Region, RegionVerdict};
pub use roots::{find_roots, RootSet, Tolerances};

/// Coefficient `j` multiplies `t^j`; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Surd>", into = "Vec<Surd>")]
pub struct UniPoly {
    coeffs: Vec<Surd>,
}

impl From<Vec<Surd>> for UniPoly {
    fn from(coeffs: Vec<Surd>) -> Self {
        UniPoly::new(coeffs)
    }
}

impl From<UniPoly> for Vec<Surd> {
    fn from(p: UniPoly) -> Self {
        p.coeffs
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Surd>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Surd::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Surd::one()] }
    }

    /// `c · t^k`.
    pub fn monomial(c: Surd, k: usize) -> Self {
        let mut coeffs = vec![Surd::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Surd] {
        &self.coeffs
    }

    /// Coefficient of `t^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Surd {
        self.coeffs.get(j).cloned().unwrap_or_else(Surd::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Surd> {
        self.coeffs.last()
    }

    /// Multiplicity of 0 as a root (number of leading zero coefficients).
    pub fn origin_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide out `t^k` exactly; `k` must not exceed the origin multiplicity.
    pub fn deflate_origin(&self, k: usize) -> UniPoly {
        debug_assert!(k <= self.origin_multiplicity());
        UniPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn scale(&self, c: &Surd) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * &Surd::from_int(j as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Surd) -> Surd {
        self.coeffs.iter().rev().fold(Surd::zero(), |acc, c| acc * x + c)
    }

    /// Sum of all coefficients.
    pub fn eval_one(&self) -> Surd {
        self.coeffs.iter().cloned().sum()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip().expect("nonzero leading coefficient")),
            None => UniPoly::zero(),
        }
    }

    /// Euclidean division in the coefficient field.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if nd < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Surd::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: `self = c · ∏ f_i^i` with each `f_i`
    /// monic, squarefree and pairwise coprime. Factors of degree 0 are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let b_next = b.div_rem(&a).0;
            let c_next = d.div_rem(&a).0;
            d = &c_next - &b_next.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            b = b_next;
            i += 1;
        }
        out
    }

    /// Coefficients divided exactly by the coefficient of largest magnitude,
    /// then rounded to `f64`.
    pub fn normalized_f64(&self) -> Vec<f64> {
        let Some(biggest) = self.coeffs.iter().map(Surd::abs).max() else {
            return Vec::new();
        };
        let inv = biggest.recip().expect("nonzero polynomial");
        self.coeffs.iter().map(|c| (c * &inv).to_f64()).collect()
    }

    /// [`Self::normalized_f64`] with each coefficient split as `hi + lo`,
    /// carrying about twice the precision.
    pub(crate) fn normalized_double_f64(&self) -> Vec<(f64, f64)> {
        let Some(biggest) = self.coeffs.iter().map(Surd::abs).max() else {
            return Vec::new();
        };
        let inv = biggest.recip().expect("nonzero polynomial");
        self.coeffs
            .iter()
            .map(|c| {
                let exact = c * &inv;
                let hi = exact.to_f64();
                let lo = match BigRational::from_float(hi) {
                    Some(h) => (exact - Surd::from(h)).to_f64(),
                    None => 0.0,
                };
                (hi, lo)
            })
            .collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs.iter().map(Surd::to_f64).collect::<Vec<_>>(), z)
    }
}

pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Surd::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl fmt::Display for UniPoly {
    /// Space-separated coefficients, lowest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 3, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[0, 0, 3]).origin_multiplicity(), 2);
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[1, 3, 3, 1]);
        let b = p(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 0, 1])), p(&[1, 1]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (1+t)^3 (2+t) t^0 (1 + t^2)^2
        let f1 = p(&[1, 1]);
        let f2 = p(&[2, 1]);
        let f3 = p(&[1, 0, 1]);
        let f = &(&(&(&f1 * &f1) * &f1) * &f2) * &(&f3 * &f3);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(f2, 1), (f3, 2), (f1, 3)]);
    }

    #[test]
    fn yun_over_quadratic_field() {
        // (y^2 + sqrt3 y + 1)^2
        let r3 = Surd::new(crate::scalar::int(0), crate::scalar::int(1), 3);
        let q = UniPoly::new(vec![Surd::one(), r3, Surd::one()]);
        let dec = (&q * &q).squarefree_decomposition();
        assert_eq!(dec, vec![(q, 2)]);
    }

    #[test]
    fn normalization_divides_by_largest() {
        assert_eq!(p(&[1, -4, 2]).normalized_f64(), vec![0.25, -1.0, 0.5]);
    }
}
