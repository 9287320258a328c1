//! Graph and polynomial fixtures shared by the benchmarks.

use factorpoly::enumeration::CoeffSeq;
use factorpoly::{Multigraph, Surd, UniPoly};

pub fn cycle(n: usize) -> Multigraph {
    Multigraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).expect("valid cycle")
}

pub fn complete(n: usize) -> Multigraph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Multigraph::from_edges(n, &edges).expect("valid complete graph")
}

/// `rows × cols` grid.
pub fn grid(rows: usize, cols: usize) -> Multigraph {
    let at = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Multigraph::from_edges(rows * cols, &edges).expect("valid grid")
}

/// `∏_{j=1..d} (t + j)`, a real-rooted polynomial with widely spread coefficients.
pub fn shifted_factorial(d: usize) -> UniPoly {
    (1..=d as i64).fold(UniPoly::one(), |p, j| &p * &UniPoly::from_ints(&[j, 1]))
}

/// Coefficients of a count sequence as a polynomial.
pub fn as_poly(c: &CoeffSeq) -> UniPoly {
    UniPoly::new(c.values().to_vec())
}

pub fn ones(d: usize) -> Vec<Surd> {
    vec![Surd::from_int(1); d + 1]
}
