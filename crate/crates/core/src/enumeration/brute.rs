use num_traits::Zero;
use rayon::prelude::*;

use super::CoeffSeq;
use crate::error::{Error, Result};
use crate::fugacities::FugacitySpec;
use crate::multigraph::Multigraph;
use crate::scalar::Surd;

pub const DEFAULT_BRUTE_CAP: usize = 30;

/// Subsets per parallel work unit.
const CHUNK: u64 = 1 << 12;

pub fn brute_counts(graph: &Multigraph, spec: &FugacitySpec) -> Result<CoeffSeq> {
    brute_counts_with_cap(graph, spec, DEFAULT_BRUTE_CAP)
}

/// Sums `λ_H Π_v u^(v)_{deg(H,v)}` over every `H ⊆ E`, bucketed by `|H|`.
pub fn brute_counts_with_cap(graph: &Multigraph, spec: &FugacitySpec, edge_cap: usize) -> Result<CoeffSeq> {
    spec.check_against(graph)?;
    let m = graph.edge_count();
    if m > edge_cap.min(63) {
        return Err(Error::CapExceeded {
            what: "brute-force edge",
            actual: m as u128,
            cap: edge_cap.min(63) as u128,
            hint: "use the dynamic program".into(),
        });
    }
    let lambda: Vec<Surd> = graph.edges().iter().map(|e| Surd::from(e.weight.clone())).collect();
    let unit = graph.has_unit_weights();
    let total: u64 = 1 << m;

    let chunk_sums = (0..total.div_ceil(CHUNK)).into_par_iter().map(|c| {
        let mut acc = vec![Surd::zero(); m + 1];
        let mut deg = vec![0usize; graph.vertex_count()];
        for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
            deg.iter_mut().for_each(|d| *d = 0);
            for (i, e) in graph.edges().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[e.u] += 1;
                    deg[e.v] += 1;
                }
            }
            let mut weight = Surd::from_int(1);
            for (v, &d) in deg.iter().enumerate() {
                let u = spec.weight(v, d);
                if u.is_zero() {
                    weight = Surd::zero();
                    break;
                }
                weight = weight * u;
            }
            if weight.is_zero() {
                continue;
            }
            if !unit {
                for (i, l) in lambda.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        weight *= l;
                    }
                }
            }
            acc[mask.count_ones() as usize] += &weight;
        }
        acc
    });
    let values = chunk_sums.reduce(
        || vec![Surd::zero(); m + 1],
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(&b) {
                *x += y;
            }
            a
        },
    );
    Ok(CoeffSeq::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fugacities::interval_fugacities;

    #[test]
    fn cap_enforced() {
        let edges: Vec<(usize, usize)> = (0..5).map(|_| (0, 1)).collect();
        let g = Multigraph::from_edges(2, &edges).unwrap();
        let spec = FugacitySpec::isotropic(&g, &interval_fugacities(0, 1, 5).unwrap()).unwrap();
        assert!(matches!(brute_counts_with_cap(&g, &spec, 4), Err(Error::CapExceeded { .. })));
        assert!(brute_counts_with_cap(&g, &spec, 5).is_ok());
    }

    #[test]
    fn spec_must_cover_degrees() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let spec = FugacitySpec::new(vec![1, 1], vec![vec![Surd::from_int(1)]; 2]).unwrap();
        assert!(brute_counts(&g, &spec).is_err());
    }
}
