//! Exact coefficient inequalities implied by zero locations: Newton's
//! inequalities, log-concavity, and nonnegativity of Toeplitz and Hurwitz
//! minors.
//!
//! Sequences are read as `N(0), N(1), ...` with everything past the end equal
//! to zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Surd};

/// Minor enumeration stops raising the order once this many determinants
/// would be evaluated in total; the reached order is recorded in the report.
pub const MINOR_BUDGET: u64 = 4_000_000;

pub const DEFAULT_MAX_MINOR_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Index `j` of the failing inequality, or the order of a failing minor.
    pub j: usize,
    pub lhs: Surd,
    pub rhs: Surd,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IneqReport {
    pub name: String,
    pub holds: bool,
    /// First failure found, with `lhs < rhs` (or `lhs <= rhs` for strict checks).
    pub violation: Option<Violation>,
    /// Largest minor order fully enumerated, for the minor checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
}

impl IneqReport {
    fn from_violation(name: &str, violation: Option<Violation>) -> Self {
        IneqReport { name: name.to_string(), holds: violation.is_none(), violation, max_order: None }
    }
}

fn at(n: &[Surd], j: i64) -> Surd {
    if j < 0 {
        Surd::zero()
    } else {
        n.get(j as usize).cloned().unwrap_or_else(Surd::zero)
    }
}

/// Index of the last nonzero entry (0 for the zero sequence).
fn degree(n: &[Surd]) -> usize {
    n.iter().rposition(|x| !x.is_zero()).unwrap_or(0)
}

fn scalar_violation(j: usize, lhs: Surd, rhs: Surd) -> Violation {
    Violation { j, lhs, rhs, rows: None, cols: None }
}

/// `N(j)² / C(d,j)² ≥ N(j−1) N(j+1) / (C(d,j−1) C(d,j+1))` for `1 ≤ j ≤ d−1`.
pub fn newton_check(n: &[Surd], d: usize) -> Result<IneqReport> {
    if d < degree(n) {
        return Err(Error::InvalidInput(format!("d = {d} is below the degree {}", degree(n))));
    }
    let normalized = |j: usize| at(n, j as i64) / Surd::from(binomial(d as u64, j as u64));
    let violation = (1..d).find_map(|j| {
        let lhs = normalized(j).pow(2);
        let rhs = normalized(j - 1) * normalized(j + 1);
        (lhs < rhs).then(|| scalar_violation(j, lhs, rhs))
    });
    Ok(IneqReport::from_violation("newton", violation))
}

/// `N(j)² ≥ N(j−1) N(j+1)` for every interior `j`.
pub fn log_concavity_check(n: &[Surd]) -> IneqReport {
    let violation = (1..degree(n)).find_map(|j| {
        let lhs = at(n, j as i64).pow(2);
        let rhs = at(n, j as i64 - 1) * at(n, j as i64 + 1);
        (lhs < rhs).then(|| scalar_violation(j, lhs, rhs))
    });
    IneqReport::from_violation("log_concavity", violation)
}

/// `N(j)² > N(j−1) N(j+1)` for every interior `j` with `N(j) > 0`.
pub fn log_concavity_strict_check(n: &[Surd]) -> IneqReport {
    let violation = (1..degree(n)).filter(|&j| !at(n, j as i64).is_zero()).find_map(|j| {
        let lhs = at(n, j as i64).pow(2);
        let rhs = at(n, j as i64 - 1) * at(n, j as i64 + 1);
        (lhs <= rhs).then(|| scalar_violation(j, lhs, rhs))
    });
    IneqReport::from_violation("log_concavity_strict", violation)
}

/// `N(j) N(j+1) ≥ N(j−1) N(j+2)` for `1 ≤ j ≤ d−2` and `N(j)² ≥ N(j−2) N(j+2)`
/// for `2 ≤ j ≤ d−2`.
pub fn hurwitz_consequences_check(n: &[Surd]) -> IneqReport {
    let d = degree(n) as i64;
    let first = (1..=d - 2).find_map(|j| {
        let lhs = at(n, j) * at(n, j + 1);
        let rhs = at(n, j - 1) * at(n, j + 2);
        (lhs < rhs).then(|| scalar_violation(j as usize, lhs, rhs))
    });
    let violation = first.or_else(|| {
        (2..=d - 2).find_map(|j| {
            let lhs = at(n, j).pow(2);
            let rhs = at(n, j - 2) * at(n, j + 2);
            (lhs < rhs).then(|| scalar_violation(j as usize, lhs, rhs))
        })
    });
    IneqReport::from_violation("hurwitz_consequences", violation)
}

/// Shape of a structured matrix whose entries are `N(index(i, j))`.
trait MinorLayout {
    fn dim(&self) -> usize;
    /// Coefficient index at `(i, j)`, possibly out of range (then zero).
    fn index(&self, i: usize, j: usize) -> i64;
    /// Row sets are only enumerated from these smallest rows; the rest repeat
    /// an earlier minor by shift invariance or contain a zero column.
    fn first_rows(&self) -> usize;
    /// `false` when pairing row `i_s` with column `j_s` on the diagonal of a
    /// sorted minor forces a zero block, making the minor vanish.
    fn diagonal_ok(&self, i: usize, j: usize, d: usize) -> bool {
        let k = self.index(i, j);
        0 <= k && k as usize <= d
    }
}

/// `T[i][j] = N(j − i)`, `(d+1) × (d+1)`.
struct Toeplitz {
    d: usize,
}

impl MinorLayout for Toeplitz {
    fn dim(&self) -> usize {
        self.d + 1
    }
    fn index(&self, i: usize, j: usize) -> i64 {
        j as i64 - i as i64
    }
    fn first_rows(&self) -> usize {
        1
    }
}

/// `H[i][j] = N(2j − i + 1)`, `d × d`.
struct Hurwitz {
    d: usize,
}

impl MinorLayout for Hurwitz {
    fn dim(&self) -> usize {
        self.d
    }
    fn index(&self, i: usize, j: usize) -> i64 {
        2 * j as i64 - i as i64 + 1
    }
    fn first_rows(&self) -> usize {
        2
    }
}

/// Matrix entries as machine integers when every coefficient is an integer
/// small enough for the fraction-free `i128` determinant.
fn small_integers(n: &[Surd]) -> Option<Vec<i64>> {
    n.iter()
        .map(|x| {
            let r = x.as_rational()?;
            if !r.denom().is_one() {
                return None;
            }
            r.numer().to_i64().filter(|v| v.abs() < 1 << 20)
        })
        .collect()
}

/// A rational sequence as integers `L·N(j)` together with the common
/// denominator `L`.
fn scaled_integers(n: &[Surd]) -> Option<(Vec<BigInt>, BigInt)> {
    let rats: Vec<&BigRational> = n.iter().map(Surd::as_rational).collect::<Option<_>>()?;
    let l = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints = rats.iter().map(|r| r.numer() * (&l / r.denom())).collect();
    Some((ints, l))
}

/// Bareiss elimination over arbitrary-precision integers.
fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for c in 0..k {
        if m[c][c].is_zero() {
            match (c + 1..k).find(|&r| !m[r][c].is_zero()) {
                Some(r) => {
                    m.swap(c, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for r in c + 1..k {
            for cc in c + 1..k {
                let v = &m[r][cc] * &m[c][c] - &m[r][c] * &m[c][cc];
                m[r][cc] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    let det = m[k - 1][k - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Bareiss elimination; `None` on overflow.
fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let k = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..k {
        if m[c][c] == 0 {
            match (c + 1..k).find(|&r| m[r][c] != 0) {
                Some(r) => {
                    m.swap(c, r);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for r in c + 1..k {
            for cc in c + 1..k {
                let v = m[r][cc].checked_mul(m[c][c])?.checked_sub(m[r][c].checked_mul(m[c][cc])?)?;
                m[r][cc] = v / prev;
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    Some(sign * m[k - 1][k - 1])
}

fn det_exact(mut m: Vec<Vec<Surd>>) -> Surd {
    let k = m.len();
    let mut det = Surd::from_int(1);
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return Surd::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot_inv = m[c][c].recip().expect("nonzero pivot");
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] * &pivot_inv;
            let (upper, lower) = m.split_at_mut(r);
            for (x, p) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *x = &*x - &(&factor * p);
            }
        }
        det = det * m[c][c].clone();
    }
    det
}

struct MinorSearch<'a, L: MinorLayout> {
    layout: L,
    n: &'a [Surd],
    ints: Option<Vec<i64>>,
    scaled: Option<(Vec<BigInt>, BigInt)>,
    d: usize,
}

impl<'a, L: MinorLayout> MinorSearch<'a, L> {
    fn new(layout: L, n: &'a [Surd], d: usize) -> Self {
        MinorSearch { layout, n, ints: small_integers(n), scaled: scaled_integers(n), d }
    }
}

impl<L: MinorLayout> MinorSearch<'_, L> {
    fn det(&self, rows: &[usize], cols: &[usize]) -> Surd {
        if let Some(ints) = &self.ints {
            let m = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| {
                            let k = self.layout.index(i, j);
                            if k < 0 { 0 } else { ints.get(k as usize).copied().unwrap_or(0) as i128 }
                        })
                        .collect()
                })
                .collect();
            if let Some(v) = det_i128(m) {
                return Surd::from(BigInt::from(v));
            }
        }
        if let Some((ints, l)) = &self.scaled {
            let m = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| {
                            let k = self.layout.index(i, j);
                            if k < 0 { BigInt::zero() } else { ints.get(k as usize).cloned().unwrap_or_default() }
                        })
                        .collect()
                })
                .collect();
            let det = det_bigint(m);
            return Surd::from(BigRational::new(det, l.pow(rows.len() as u32)));
        }
        let m = rows.iter().map(|&i| cols.iter().map(|&j| at(self.n, self.layout.index(i, j))).collect()).collect();
        det_exact(m)
    }

    /// Every `k`-subset of `0..dim` in lexicographic order, optionally
    /// starting below `first`.
    fn subsets(dim: usize, k: usize, first: Option<usize>) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, dim: usize, k: usize, first: Option<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            let end = match (cur.is_empty(), first) {
                (true, Some(f)) => f.min(dim),
                _ => dim,
            };
            for x in start..end {
                cur.push(x);
                rec(x + 1, dim, k, first, cur, out);
                cur.pop();
            }
        }
        rec(0, dim, k, first, &mut cur, &mut out);
        out
    }

    /// Column sets compatible with `rows` on the diagonal, fed to `visit`
    /// until it returns `false`.
    fn columns_for(&self, rows: &[usize], visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        fn rec<L: MinorLayout>(
            s: &MinorSearch<'_, L>,
            rows: &[usize],
            start: usize,
            cur: &mut Vec<usize>,
            visit: &mut impl FnMut(&[usize]) -> bool,
        ) -> bool {
            if cur.len() == rows.len() {
                return visit(cur);
            }
            for j in start..s.layout.dim() {
                if !s.layout.diagonal_ok(rows[cur.len()], j, s.d) {
                    continue;
                }
                cur.push(j);
                let go_on = rec(s, rows, j + 1, cur, visit);
                cur.pop();
                if !go_on {
                    return false;
                }
            }
            true
        }
        rec(self, rows, 0, &mut Vec::with_capacity(rows.len()), visit)
    }

    fn run(&self, name: &str, max_order: usize) -> IneqReport {
        let dim = self.layout.dim();
        let mut spent = 0u64;
        let mut reached = 0;
        for k in 1..=max_order.min(dim) {
            let row_sets = Self::subsets(dim, k, Some(self.layout.first_rows()));
            let estimate = row_sets.len() as u64 * binomial(dim as u64, k as u64).to_u64().unwrap_or(u64::MAX);
            if k > 1 && spent.saturating_add(estimate) > MINOR_BUDGET {
                break;
            }
            spent += estimate;
            let mut violation = None;
            for rows in &row_sets {
                self.columns_for(rows, &mut |cols| {
                    let det = self.det(rows, cols);
                    if det.is_negative() {
                        violation = Some(Violation {
                            j: k,
                            lhs: det,
                            rhs: Surd::zero(),
                            rows: Some(rows.clone()),
                            cols: Some(cols.to_vec()),
                        });
                        return false;
                    }
                    true
                });
                if violation.is_some() {
                    let mut report = IneqReport::from_violation(name, violation);
                    report.max_order = Some(k);
                    return report;
                }
            }
            reached = k;
        }
        IneqReport { name: name.to_string(), holds: true, violation: None, max_order: Some(reached) }
    }
}

/// Nonnegativity of every minor of order `≤ max_order` of the upper
/// triangular Toeplitz matrix `T[i][j] = N(j − i)`, truncated to
/// `(d+1) × (d+1)`.
pub fn toeplitz_minors_check(n: &[Surd], max_order: usize) -> Result<IneqReport> {
    if max_order == 0 {
        return Err(Error::InvalidInput("minor order must be at least 1".into()));
    }
    let d = degree(n);
    let search = MinorSearch::new(Toeplitz { d }, n, d);
    Ok(search.run("toeplitz_minors", max_order))
}

/// Nonnegativity of every minor of order `≤ max_order` of the `d × d`
/// Hurwitz matrix `H[i][j] = N(2j − i + 1)`.
pub fn hurwitz_minors_check(n: &[Surd], max_order: usize) -> Result<IneqReport> {
    if max_order == 0 {
        return Err(Error::InvalidInput("minor order must be at least 1".into()));
    }
    if let Some(j) = n.iter().position(Surd::is_negative) {
        return Err(Error::InvalidInput(format!("coefficient {j} is negative")));
    }
    let d = degree(n);
    let search = MinorSearch::new(Hurwitz { d }, n, d);
    Ok(search.run("hurwitz_minors", max_order))
}

/// All checks with default orders, for reporting.
pub fn all_checks(n: &[Surd], max_order: usize) -> Result<Vec<IneqReport>> {
    let d = degree(n);
    let mut out = vec![newton_check(n, d)?, log_concavity_check(n), log_concavity_strict_check(n)];
    out.push(toeplitz_minors_check(n, max_order)?);
    if n.iter().all(|x| !x.is_negative()) {
        out.push(hurwitz_minors_check(n, max_order)?);
    }
    out.push(hurwitz_consequences_check(n));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> Vec<Surd> {
        v.iter().map(|&x| Surd::from_int(x)).collect()
    }

    #[test]
    fn newton_examples() {
        assert!(newton_check(&seq(&[1, 3, 3, 1]), 3).unwrap().holds);
        let r = newton_check(&seq(&[1, 2, 2]), 2).unwrap();
        assert!(!r.holds);
        let v = r.violation.unwrap();
        assert_eq!((v.j, v.lhs, v.rhs), (1, Surd::from_int(1), Surd::from_int(2)));
        assert!(newton_check(&seq(&[1, 3]), 1).unwrap().holds);
        assert!(newton_check(&seq(&[1, 3, 3, 1]), 2).is_err());
    }

    #[test]
    fn log_concavity_examples() {
        assert!(log_concavity_check(&seq(&[1, 3, 3, 1])).holds);
        assert!(log_concavity_strict_check(&seq(&[1, 3, 3, 1])).holds);
        let r = log_concavity_check(&seq(&[1, 1, 2]));
        assert_eq!(r.violation.unwrap().j, 1);
        assert!(log_concavity_check(&seq(&[0, 0, 3])).holds);
        assert!(log_concavity_strict_check(&seq(&[0, 0, 3])).holds);
        assert!(!log_concavity_strict_check(&seq(&[1, 1, 1])).holds);
    }

    #[test]
    fn toeplitz_examples() {
        let r = toeplitz_minors_check(&seq(&[1, 2, 1]), 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.max_order, Some(3));
        let r = toeplitz_minors_check(&seq(&[1, 0, 1]), 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violation.unwrap().lhs, Surd::from_int(-1));
        assert!(toeplitz_minors_check(&seq(&[1]), 3).unwrap().holds);
    }

    #[test]
    fn hurwitz_examples() {
        assert!(hurwitz_minors_check(&seq(&[1, 2, 2, 1]), 3).unwrap().holds);
        assert!(hurwitz_consequences_check(&seq(&[1, 2, 2, 1])).holds);
        assert!(hurwitz_minors_check(&seq(&[1, 0, 1]), 2).unwrap().holds);
        assert!(hurwitz_consequences_check(&seq(&[1, 0, 1])).holds);
        let r = hurwitz_consequences_check(&seq(&[1, 0, 0, 1]));
        let v = r.violation.unwrap();
        assert_eq!((v.j, v.lhs, v.rhs), (1, Surd::zero(), Surd::from_int(1)));
        assert!(!hurwitz_minors_check(&seq(&[1, 0, 0, 1]), 3).unwrap().holds);
    }

    #[test]
    fn bigint_determinant_matches_exact_elimination() {
        let rows = [[3, -7, 2, 11], [5, 0, -4, 9], [8, 6, 1, -2], [-3, 12, 7, 4]];
        let big = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let exact = rows.iter().map(|r| r.iter().map(|&x| Surd::from_int(x)).collect()).collect();
        assert_eq!(Surd::from(det_bigint(big)), det_exact(exact));
        let swapped = vec![vec![BigInt::zero(), BigInt::one()], vec![BigInt::one(), BigInt::zero()]];
        assert_eq!(det_bigint(swapped), BigInt::from(-1));
    }

    #[test]
    fn rational_minors_are_rescaled() {
        let half = Surd::from(BigRational::new(BigInt::one(), BigInt::from(2)));
        let n = vec![Surd::from_int(1), half.clone(), Surd::from_int(3)];
        let (ints, l) = scaled_integers(&n).unwrap();
        assert_eq!(l, BigInt::from(2));
        assert_eq!(ints, vec![BigInt::from(2), BigInt::one(), BigInt::from(6)]);
        let search = MinorSearch::new(Toeplitz { d: 2 }, &n, 2);
        let direct = MinorSearch { scaled: None, ..MinorSearch::new(Toeplitz { d: 2 }, &n, 2) };
        for rows in [vec![0, 1], vec![0, 2], vec![1, 2]] {
            for cols in [vec![0, 1], vec![1, 2], vec![0, 2]] {
                assert_eq!(search.det(&rows, &cols), direct.det(&rows, &cols));
            }
        }
    }

    #[test]
    fn determinants_agree() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det_i128(m.clone()), Some(4));
        let s = m.iter().map(|r| r.iter().map(|&x| Surd::from_int(x as i64)).collect()).collect();
        assert_eq!(det_exact(s), Surd::from_int(4));
        assert_eq!(det_i128(vec![vec![0, 1], vec![1, 0]]), Some(-1));
    }

    /// Every minor, without any pruning or shift normalization.
    fn naive_min_minor(entry: impl Fn(usize, usize) -> i64, dim: usize, order: usize) -> i128 {
        let mut best = i128::MAX;
        for k in 1..=order {
            let sets = MinorSearch::<Toeplitz>::subsets(dim, k, None);
            for r in &sets {
                for c in &sets {
                    let m = r.iter().map(|&i| c.iter().map(|&j| entry(i, j) as i128).collect()).collect();
                    best = best.min(det_i128(m).unwrap());
                }
            }
        }
        best
    }

    #[test]
    fn pruning_matches_naive_enumeration() {
        for coeffs in [vec![1, 0, 1], vec![1, 1, 2, 1], vec![1, 3, 3, 1], vec![2, 1, 0, 1, 3], vec![1, 0, 0, 1]] {
            let n = seq(&coeffs);
            let get = |k: i64| if k < 0 { 0 } else { coeffs.get(k as usize).copied().unwrap_or(0) };
            let d = coeffs.len() - 1;
            let naive_t = naive_min_minor(|i, j| get(j as i64 - i as i64), d + 1, 4);
            assert_eq!(toeplitz_minors_check(&n, 4).unwrap().holds, naive_t >= 0, "{coeffs:?}");
            let naive_h = naive_min_minor(|i, j| get(2 * j as i64 - i as i64 + 1), d, 4);
            assert_eq!(hurwitz_minors_check(&n, 4).unwrap().holds, naive_h >= 0, "{coeffs:?}");
        }
    }

    #[test]
    fn budget_caps_order() {
        let n = seq(&[1; 31]);
        let r = toeplitz_minors_check(&n, 6).unwrap();
        assert!(r.max_order.unwrap() < 6);
    }
}
