//! Newton refinement of simple roots with polynomial values computed in
//! double-double arithmetic, so that ill-conditioned clusters still reach
//! close to full double precision.

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi) / 2`.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    fn new(hi: f64, lo: f64) -> Dd {
        quick_two_sum(hi, lo)
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Debug)]
struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    fn from(z: Complex64) -> CDd {
        CDd { re: Dd::new(z.re, 0.0), im: Dd::new(z.im, 0.0) }
    }

    fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    fn sub_complex(self, step: Complex64) -> CDd {
        CDd { re: self.re.add(Dd::new(-step.re, 0.0)), im: self.im.add(Dd::new(-step.im, 0.0)) }
    }
}

/// `(p(z), p'(z))` by Horner in double-double, rounded at the end.
pub(super) fn eval_with_derivative(coeffs: &[(f64, f64)], z: Complex64) -> (Complex64, Complex64) {
    let z = CDd::from(z);
    let zero = Dd::new(0.0, 0.0);
    let mut p = CDd { re: zero, im: zero };
    let mut d = CDd { re: zero, im: zero };
    for &(hi, lo) in coeffs.iter().rev() {
        let dz = d.mul(z);
        d = CDd { re: dz.re.add(p.re), im: dz.im.add(p.im) };
        let pz = p.mul(z);
        p = CDd { re: pz.re.add(Dd::new(hi, lo)), im: pz.im };
    }
    (p.to_complex(), d.to_complex())
}

/// Refines each root by Newton steps on the double-double coefficients.
/// A step that would move a root more than half way to its nearest neighbour
/// is rejected, which keeps clustered roots from collapsing onto each other.
pub(super) fn polish(coeffs: &[(f64, f64)], roots: &mut [Complex64]) {
    if coeffs.len() < 2 {
        return;
    }
    let original = roots.to_vec();
    for k in 0..roots.len() {
        let gap = original
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, w)| (w - original[k]).norm())
            .fold(f64::INFINITY, f64::min);
        let mut z = CDd::from(roots[k]);
        for _ in 0..4 {
            let zc = z.to_complex();
            let (value, d) = eval_with_derivative(coeffs, zc);
            if d.norm() == 0.0 {
                break;
            }
            let step = value / d;
            if !step.is_finite() {
                break;
            }
            z = z.sub_complex(step);
            if step.norm() <= f64::EPSILON * f64::EPSILON * zc.norm() {
                break;
            }
        }
        let candidate = z.to_complex();
        if candidate.is_finite() && (candidate - original[k]).norm() < gap / 2.0 {
            roots[k] = candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_double_product_is_exact_past_f64() {
        let a = Dd::new(1.0 + f64::EPSILON, 0.0);
        let p = a.mul(a);
        // (1 + ε)² = 1 + 2ε + ε², and ε² survives in the low word
        assert_eq!(p.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(p.lo, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn polishing_sharpens_a_perturbed_root() {
        // (t + 1)(t + 2) = t² + 3t + 2
        let coeffs = [(2.0, 0.0), (3.0, 0.0), (1.0, 0.0)];
        let mut roots = [Complex64::new(-1.0 + 1e-7, 0.0), Complex64::new(-2.0, 1e-9)];
        polish(&coeffs, &mut roots);
        assert!((roots[0] + 1.0).norm() < 1e-15);
        assert!((roots[1] + 2.0).norm() < 1e-15);
    }
}
