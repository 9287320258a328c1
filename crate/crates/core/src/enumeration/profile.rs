use std::collections::HashMap;

use num_bigint::BigInt;

use super::CoeffSeq;
use crate::error::{Error, Result};
use crate::multigraph::{DegreeBounds, Multigraph};
use crate::scalar::Surd;

/// Largest edge count a profile is built for.
pub const PROFILE_EDGE_CAP: usize = 24;

/// Subsets of `E` grouped by degree vector, with per-size multiplicities.
///
/// Built once per graph, it answers `N_f^g(G; ·)` for any bounds by summing
/// over the distinct degree vectors, which is how exhaustive bound sweeps stay
/// cheap. Edge weights are ignored.
#[derive(Clone, Debug)]
pub struct DegreeProfile {
    edges: usize,
    classes: Vec<(Vec<u16>, Vec<u64>)>,
}

impl DegreeProfile {
    pub fn new(graph: &Multigraph) -> Result<Self> {
        let m = graph.edge_count();
        if m > PROFILE_EDGE_CAP {
            return Err(Error::CapExceeded {
                what: "degree profile edge",
                actual: m as u128,
                cap: PROFILE_EDGE_CAP as u128,
                hint: "use factor_counts".into(),
            });
        }
        let mut map: HashMap<Vec<u16>, Vec<u64>> = HashMap::new();
        let mut deg = vec![0u16; graph.vertex_count()];
        for mask in 0u64..1 << m {
            deg.iter_mut().for_each(|d| *d = 0);
            for (i, e) in graph.edges().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[e.u] += 1;
                    deg[e.v] += 1;
                }
            }
            map.entry(deg.clone()).or_insert_with(|| vec![0; m + 1])[mask.count_ones() as usize] += 1;
        }
        let mut classes: Vec<_> = map.into_iter().collect();
        classes.sort();
        Ok(DegreeProfile { edges: m, classes })
    }

    /// `N_f^g(G; j)` for `j = 0..=|E|`.
    pub fn counts_raw(&self, f: &[usize], g: &[usize]) -> Vec<u64> {
        let mut out = vec![0u64; self.edges + 1];
        for (deg, by_size) in &self.classes {
            let ok = deg.iter().enumerate().all(|(v, &d)| f[v] <= d as usize && d as usize <= g[v]);
            if ok {
                for (o, c) in out.iter_mut().zip(by_size) {
                    *o += c;
                }
            }
        }
        out
    }

    pub fn counts(&self, bounds: &DegreeBounds) -> CoeffSeq {
        let raw = self.counts_raw(bounds.lower(), bounds.upper());
        CoeffSeq::new(raw.into_iter().map(|c| Surd::from(BigInt::from(c))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::factor_counts;

    #[test]
    fn agrees_with_factor_counts() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]).unwrap();
        let profile = DegreeProfile::new(&g).unwrap();
        let deg = g.degree_vector();
        for f in 0..=2 {
            for top in f..=3 {
                let b = DegreeBounds::new(vec![f; 4], deg.iter().map(|&d| top.min(d).max(f)).collect()).unwrap();
                assert_eq!(profile.counts(&b), factor_counts(&g, &b).unwrap());
            }
        }
    }
}
