//! Frontier dynamic program.
//!
//! Edges are processed in an elimination order. A state is the partial degree
//! of every vertex that has seen some but not all of its edges, and carries a
//! polynomial in the edge count. When a vertex sees its last edge its final
//! degree is known and `u^(v)_{deg}` is folded in. Degrees past the last
//! nonzero fugacity, or too low to reach the first nonzero one, are dropped
//! immediately since they can only contribute zero.

use std::collections::HashMap;


use super::{CoeffSeq, Weight};
use crate::error::{Error, Result};
use crate::fugacities::FugacitySpec;
use crate::multigraph::Multigraph;
use crate::scalar::Surd;

pub const DEFAULT_STATE_CAP: u128 = 1 << 22;

#[derive(Clone, Debug)]
pub struct DpOptions {
    /// Refuse to run when the predicted frontier state count exceeds this.
    pub state_cap: u128,
    /// Explicit edge permutation; greedy min-degree when `None`.
    pub order: Option<Vec<usize>>,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { state_cap: DEFAULT_STATE_CAP, order: None }
    }
}

pub fn dp_counts(graph: &Multigraph, spec: &FugacitySpec) -> Result<CoeffSeq> {
    dp_counts_with(graph, spec, &DpOptions::default())
}

pub fn dp_counts_with(graph: &Multigraph, spec: &FugacitySpec, opts: &DpOptions) -> Result<CoeffSeq> {
    spec.check_against(graph)?;
    let fug: Vec<Vec<Surd>> = (0..spec.len()).map(|v| spec.sequence(v).to_vec()).collect();
    let lambda: Vec<Surd> = graph.edges().iter().map(|e| Surd::from(e.weight.clone())).collect();
    Ok(CoeffSeq::new(run(graph, &fug, &lambda, opts)?))
}

/// Greedy min-degree elimination: repeatedly pick the frontier vertex with
/// the fewest unprocessed edges (any vertex when the frontier is empty) and
/// emit all of its remaining edges in input order.
pub fn elimination_order(graph: &Multigraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in graph.edges().iter().enumerate() {
        incident[e.u].push(i);
        if !e.is_loop() {
            incident[e.v].push(i);
        }
    }
    let mut remaining: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut done = vec![false; graph.edge_count()];
    let mut in_frontier = vec![false; n];
    let mut order = Vec::with_capacity(graph.edge_count());

    while order.len() < graph.edge_count() {
        let pick = |frontier_only: bool| {
            (0..n)
                .filter(|&v| remaining[v] > 0 && (!frontier_only || in_frontier[v]))
                .min_by_key(|&v| (remaining[v], v))
        };
        let v = pick(true).or_else(|| pick(false)).expect("edges remain");
        for &i in &incident[v] {
            if done[i] {
                continue;
            }
            done[i] = true;
            order.push(i);
            let e = &graph.edges()[i];
            remaining[e.u] -= 1;
            if !e.is_loop() {
                remaining[e.v] -= 1;
            }
            in_frontier[e.u] = true;
            in_frontier[e.v] = true;
        }
    }
    order
}

fn validate_order(order: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if order.len() != m {
        return Err(Error::InvalidInput(format!("edge order has {} entries, graph has {m} edges", order.len())));
    }
    for &i in order {
        if i >= m || seen[i] {
            return Err(Error::InvalidInput(format!("edge order is not a permutation (entry {i})")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Largest number of frontier states the order can produce, given per-vertex
/// count of reachable degree values.
fn predicted_states(graph: &Multigraph, order: &[usize], levels: &[u128]) -> u128 {
    let n = graph.vertex_count();
    let mut left = vec![0usize; n];
    for e in graph.edges() {
        left[e.u] += 1;
        if !e.is_loop() {
            left[e.v] += 1;
        }
    }
    let mut active = vec![false; n];
    let mut current: u128 = 1;
    let mut worst: u128 = 1;
    for &i in order {
        let e = &graph.edges()[i];
        for w in [e.u, e.v] {
            if !active[w] {
                active[w] = true;
                current = current.saturating_mul(levels[w]);
            }
        }
        worst = worst.max(current);
        left[e.u] -= 1;
        if !e.is_loop() {
            left[e.v] -= 1;
        }
        for w in [e.u, e.v] {
            if active[w] && left[w] == 0 {
                active[w] = false;
                current /= levels[w].max(1);
            }
        }
    }
    worst
}

pub(crate) fn run<W: Weight>(
    graph: &Multigraph,
    fug: &[Vec<W>],
    lambda: &[W],
    opts: &DpOptions,
) -> Result<Vec<W>> {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let edges = graph.edges();
    let degree = graph.degree_vector();
    let mut result = vec![W::zero(); m + 1];

    let top: Vec<Option<usize>> = fug.iter().map(|s| s.iter().rposition(|u| !u.is_zero())).collect();
    let bottom: Vec<usize> = fug.iter().map(|s| s.iter().position(|u| !u.is_zero()).unwrap_or(0)).collect();
    if top.iter().any(Option::is_none) {
        return Ok(result);
    }
    let top: Vec<usize> = top.into_iter().map(|t| t.expect("checked")).collect();

    let order = match &opts.order {
        Some(order) => {
            validate_order(order, m)?;
            order.clone()
        }
        None => elimination_order(graph),
    };
    let levels: Vec<u128> = (0..n).map(|v| degree[v].min(top[v]) as u128 + 1).collect();
    let predicted = predicted_states(graph, &order, &levels);
    if predicted > opts.state_cap {
        return Err(Error::CapExceeded {
            what: "frontier state",
            actual: predicted,
            cap: opts.state_cap,
            hint: "use brute force or supply a narrower --order".into(),
        });
    }

    // isolated vertices contribute u_0 once
    let mut constant = W::one();
    for v in (0..n).filter(|&v| degree[v] == 0) {
        constant = constant.times(&fug[v][0]);
    }
    if constant.is_zero() {
        return Ok(result);
    }

    // degree still obtainable from unprocessed edges
    let mut potential = degree.clone();
    let mut left = vec![0usize; n];
    for e in edges {
        left[e.u] += 1;
        if !e.is_loop() {
            left[e.v] += 1;
        }
    }

    let mut initial = vec![W::zero(); m + 1];
    initial[0] = constant;
    let mut states: HashMap<Vec<u16>, Vec<W>> = HashMap::new();
    states.insert(vec![0u16; n], initial);

    for (step, &i) in order.iter().enumerate() {
        let e = &edges[i];
        let (a, b) = (e.u, e.v);
        if e.is_loop() {
            potential[a] -= 2;
            left[a] -= 1;
        } else {
            potential[a] -= 1;
            potential[b] -= 1;
            left[a] -= 1;
            left[b] -= 1;
        }
        let retiring: Vec<usize> = if e.is_loop() { vec![a] } else { vec![a, b] }
            .into_iter()
            .filter(|&w| left[w] == 0)
            .collect();

        let reachable = |key: &[u16]| {
            (key[a] as usize + potential[a] >= bottom[a]) && (key[b] as usize + potential[b] >= bottom[b])
        };

        let mut next: HashMap<Vec<u16>, Vec<W>> = HashMap::with_capacity(states.len() * 2);
        let mut deposit = |mut key: Vec<u16>, poly: Vec<W>, shift: bool, weight: &W| {
            let mut poly = poly;
            for &w in &retiring {
                let u = &fug[w][key[w] as usize];
                if u.is_zero() {
                    return;
                }
                for c in poly.iter_mut() {
                    if !c.is_zero() {
                        *c = c.times(u);
                    }
                }
                key[w] = 0;
            }
            let slot = next.entry(key).or_insert_with(|| vec![W::zero(); m + 1]);
            if shift {
                for j in 0..=step {
                    if !poly[j].is_zero() {
                        slot[j + 1] += &poly[j].times(weight);
                    }
                }
            } else {
                for j in 0..=step {
                    slot[j] += &poly[j];
                }
            }
        };

        for (key, poly) in states {
            let mut with = key.clone();
            if e.is_loop() {
                with[a] += 2;
            } else {
                with[a] += 1;
                with[b] += 1;
            }
            let fits = with[a] as usize <= top[a] && with[b] as usize <= top[b];
            if fits && reachable(&with) {
                deposit(with, poly.clone(), true, &lambda[i]);
            }
            if reachable(&key) {
                deposit(key, poly, false, &lambda[i]);
            }
        }
        states = next;
    }

    for (_, poly) in states {
        for (slot, c) in result.iter_mut().zip(&poly) {
            *slot += c;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::brute_counts;
    use crate::fugacities::{interval_fugacities, ruelle_fugacities};
    use crate::scalar::rat;

    #[test]
    fn order_is_a_permutation() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]).unwrap();
        let mut order = elimination_order(&g);
        order.sort();
        assert_eq!(order, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn explicit_order_gives_same_counts() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let spec = FugacitySpec::isotropic(&g, &ruelle_fugacities(3).unwrap()).unwrap();
        let reference = dp_counts(&g, &spec).unwrap();
        let opts = DpOptions { order: Some(vec![4, 3, 2, 1, 0]), ..Default::default() };
        assert_eq!(dp_counts_with(&g, &spec, &opts).unwrap(), reference);
        assert_eq!(reference, brute_counts(&g, &spec).unwrap());
    }

    #[test]
    fn bad_orders_rejected() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let spec = FugacitySpec::isotropic(&g, &interval_fugacities(0, 1, 2).unwrap()).unwrap();
        for order in [vec![0], vec![0, 0], vec![0, 2]] {
            let opts = DpOptions { order: Some(order), ..Default::default() };
            assert!(dp_counts_with(&g, &spec, &opts).is_err());
        }
    }

    #[test]
    fn state_cap_refuses() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let spec = FugacitySpec::isotropic(&g, &interval_fugacities(0, 2, 2).unwrap()).unwrap();
        let opts = DpOptions { state_cap: 2, order: None };
        assert!(matches!(dp_counts_with(&g, &spec, &opts), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn weighted_edges() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, rat(1, 2)).unwrap();
        g.add_edge(0, 0, rat(3, 1)).unwrap();
        let spec = FugacitySpec::isotropic(&g, &interval_fugacities(0, 3, 3).unwrap()).unwrap();
        let counts = dp_counts(&g, &spec).unwrap();
        assert_eq!(counts.values(), &[Surd::from_int(1), Surd::from_ratio(7, 2), Surd::from_ratio(3, 2)]);
        assert_eq!(counts, brute_counts(&g, &spec).unwrap());
    }

    #[test]
    fn lower_bound_pruning_keeps_exact_counts() {
        // perfect matchings of C6: 2
        let g = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let spec = FugacitySpec::isotropic(&g, &interval_fugacities(1, 1, 2).unwrap()).unwrap();
        let counts = dp_counts(&g, &spec).unwrap();
        assert_eq!(counts.get(3), Surd::from_int(2));
        assert_eq!(counts.total(), Surd::from_int(2));
    }
}
