//! Nominal solvers `opt(c)` and feasible-set enumeration for the
//! unconstrained problem and the shortest path problem.
//!
//! Shortest-path ties within `1e−9 · (1 + |opt|)` are broken toward the
//! lexicographically smallest incidence vector, so repeated solves on
//! identical data always return the same argmin.

use crate::model::{BinaryVector, CombinatorialProblem, Graph, ProblemStructure};
use crate::Error;

/// Optimal nominal value together with a minimizer.
#[derive(Clone, Debug)]
pub struct Nominal {
    pub value: f64,
    pub argmin: BinaryVector,
}

/// `min { cᵀy : y feasible }`.
///
/// Unconstrained: signwise, `yᵢ = 1` iff `cᵢ < 0` (ties at zero stay 0).
/// Shortest path: label-setting search for nonnegative costs, topological
/// relaxation on acyclic graphs otherwise.
pub fn nominal_opt(problem: &CombinatorialProblem, c: &[f64]) -> Result<Nominal, Error> {
    if c.len() != problem.dimension() {
        return Err(Error::InvalidInput(format!(
            "cost vector has length {}, problem dimension is {}",
            c.len(),
            problem.dimension()
        )));
    }
    match problem.structure() {
        ProblemStructure::Unconstrained => {
            let mut bits = vec![0u8; c.len()];
            let mut value = 0.0;
            for (i, &ci) in c.iter().enumerate() {
                if ci < 0.0 {
                    bits[i] = 1;
                    value += ci;
                }
            }
            Ok(Nominal { value, argmin: BinaryVector::new(bits).unwrap() })
        }
        ProblemStructure::ShortestPath(g) => shortest_path(g, c),
    }
}

fn shortest_path(g: &Graph, c: &[f64]) -> Result<Nominal, Error> {
    let has_negative = c.iter().any(|&v| v < 0.0);
    if has_negative && !g.is_acyclic() {
        return Err(Error::Unsupported(
            "negative arc costs require an acyclic graph".into(),
        ));
    }
    let ds = dist_from_source(g, c, &[]);
    let opt = ds[g.sink()];
    if !opt.is_finite() {
        return Err(Error::Infeasible("no s-t path".into()));
    }
    let dt = dist_to_sink(g, c, &[]);
    let tol = 1e-9 * (1.0 + opt.abs());

    // bit vector of arcs excluded so far (lexicographic sweep)
    let mut removed = vec![false; g.arc_count()];
    let mut ambiguous = false;
    for a in 0..g.arc_count() {
        let (u, v) = g.arc(a);
        if ds[u] + c[a] + dt[v] > opt + tol {
            removed[a] = true; // not on any near-optimal path
        } else if node_has_single_tight_arc(g, c, &ds, &dt, opt, tol, u) {
            // unique continuation through u; arc must stay iff it is that one
        } else {
            ambiguous = true;
        }
    }

    if ambiguous {
        // Lexicographic minimization: drop each candidate arc in index
        // order whenever a near-optimal path without it still exists.
        for a in 0..g.arc_count() {
            if removed[a] {
                continue;
            }
            removed[a] = true;
            let d = dist_from_source(g, c, &removed);
            if d[g.sink()] > opt + tol {
                removed[a] = false; // arc is forced onto the path
            }
        }
    }

    // Extract the unique remaining near-optimal path.
    let ds2 = dist_from_source(g, c, &removed);
    let dt2 = dist_to_sink(g, c, &removed);
    let opt2 = ds2[g.sink()];
    debug_assert!(opt2 <= opt + tol);
    let tol2 = 1e-9 * (1.0 + opt2.abs());
    let mut bits = vec![0u8; g.arc_count()];
    let mut u = g.source();
    let mut visited = vec![false; g.node_count()];
    visited[u] = true;
    let mut value = 0.0;
    while u != g.sink() {
        let mut next = None;
        for &a in g.out_arcs(u) {
            if removed[a] {
                continue;
            }
            let v = g.arc(a).1;
            if ds2[u] + c[a] + dt2[v] <= opt2 + tol2 && !visited[v] {
                next = Some((a, v));
                break; // lowest arc index
            }
        }
        let (a, v) = next.ok_or_else(|| Error::Infeasible("path extraction failed".into()))?;
        bits[a] = 1;
        value += c[a];
        visited[v] = true;
        u = v;
    }
    Ok(Nominal { value, argmin: BinaryVector::new(bits).unwrap() })
}

fn node_has_single_tight_arc(
    g: &Graph,
    c: &[f64],
    ds: &[f64],
    dt: &[f64],
    opt: f64,
    tol: f64,
    u: usize,
) -> bool {
    let mut count = 0;
    for &a in g.out_arcs(u) {
        let v = g.arc(a).1;
        if ds[u] + c[a] + dt[v] <= opt + tol {
            count += 1;
            if count > 1 {
                return false;
            }
        }
    }
    count == 1
}

fn dist_from_source(g: &Graph, c: &[f64], removed: &[bool]) -> Vec<f64> {
    run_dists(g, c, removed, false)
}

fn dist_to_sink(g: &Graph, c: &[f64], removed: &[bool]) -> Vec<f64> {
    run_dists(g, c, removed, true)
}

/// Distances from the source (or to the sink when `reverse`). Uses a
/// topological sweep on acyclic graphs and an O(V²) label-setting scan
/// otherwise; both are deterministic.
fn run_dists(g: &Graph, c: &[f64], removed: &[bool], reverse: bool) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let start = if reverse { g.sink() } else { g.source() };
    dist[start] = 0.0;
    let arc_allowed = |a: usize| removed.is_empty() || !removed[a];

    if let Some(topo) = g.topo_order() {
        let order: Vec<usize> =
            if reverse { topo.iter().rev().copied().collect() } else { topo.to_vec() };
        for &u in &order {
            if !dist[u].is_finite() {
                continue;
            }
            let arcs = if reverse { g.in_arcs(u) } else { g.out_arcs(u) };
            for &a in arcs {
                if !arc_allowed(a) {
                    continue;
                }
                let w = if reverse { g.arc(a).0 } else { g.arc(a).1 };
                let nd = dist[u] + c[a];
                if nd < dist[w] {
                    dist[w] = nd;
                }
            }
        }
    } else {
        // nonnegative costs guaranteed by the caller
        let mut done = vec![false; n];
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for i in 0..n {
                if !done[i] && dist[i] < best {
                    best = dist[i];
                    u = i;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            let arcs = if reverse { g.in_arcs(u) } else { g.out_arcs(u) };
            for &a in arcs {
                if !arc_allowed(a) {
                    continue;
                }
                let w = if reverse { g.arc(a).0 } else { g.arc(a).1 };
                let nd = dist[u] + c[a];
                if nd < dist[w] {
                    dist[w] = nd;
                }
            }
        }
    }
    dist
}

/// Number of feasible solutions: `2ⁿ` for the unconstrained problem, the
/// number of simple s-t paths otherwise. Counting stops at `cap`.
pub fn count_feasible(problem: &CombinatorialProblem, cap: u128) -> u128 {
    match problem.structure() {
        ProblemStructure::Unconstrained => {
            let n = problem.dimension() as u32;
            if n >= 127 {
                cap
            } else {
                (1u128 << n).min(cap)
            }
        }
        ProblemStructure::ShortestPath(g) => {
            if let Some(topo) = g.topo_order() {
                let mut count = vec![0u128; g.node_count()];
                count[g.source()] = 1;
                for &u in topo {
                    if count[u] == 0 {
                        continue;
                    }
                    for &a in g.out_arcs(u) {
                        let v = g.arc(a).1;
                        count[v] = count[v].saturating_add(count[u]).min(cap);
                    }
                }
                count[g.sink()]
            } else {
                let mut count = 0u128;
                let mut visited = vec![false; g.node_count()];
                count_paths_dfs(g, g.source(), &mut visited, &mut count, cap);
                count
            }
        }
    }
}

fn count_paths_dfs(g: &Graph, u: usize, visited: &mut [bool], count: &mut u128, cap: u128) {
    if *count >= cap {
        return;
    }
    if u == g.sink() {
        *count += 1;
        return;
    }
    visited[u] = true;
    for &a in g.out_arcs(u) {
        let v = g.arc(a).1;
        if !visited[v] {
            count_paths_dfs(g, v, visited, count, cap);
        }
    }
    visited[u] = false;
}

/// All feasible solutions, each exactly once. Unconstrained problems
/// enumerate bitmasks in counting order; shortest path problems run a
/// depth-first search over simple s-t paths in ascending arc order.
pub fn enumerate_feasible(
    problem: &CombinatorialProblem,
    limit: usize,
) -> Result<Vec<BinaryVector>, Error> {
    let count = count_feasible(problem, limit as u128 + 1);
    if count > limit as u128 {
        return Err(Error::EnumerationOverflow { count, limit: limit as u128 });
    }
    match problem.structure() {
        ProblemStructure::Unconstrained => {
            let n = problem.dimension();
            Ok((0..(1u64 << n)).map(|m| BinaryVector::from_mask(m, n)).collect())
        }
        ProblemStructure::ShortestPath(g) => {
            let mut out = Vec::with_capacity(count as usize);
            let mut visited = vec![false; g.node_count()];
            let mut arcs_on_path = Vec::new();
            visited[g.source()] = true;
            enumerate_paths_dfs(g, g.source(), &mut visited, &mut arcs_on_path, &mut out);
            Ok(out)
        }
    }
}

fn enumerate_paths_dfs(
    g: &Graph,
    u: usize,
    visited: &mut [bool],
    arcs_on_path: &mut Vec<usize>,
    out: &mut Vec<BinaryVector>,
) {
    if u == g.sink() {
        out.push(BinaryVector::from_indices(g.arc_count(), arcs_on_path));
        return;
    }
    for &a in g.out_arcs(u) {
        let v = g.arc(a).1;
        if visited[v] {
            continue;
        }
        visited[v] = true;
        arcs_on_path.push(a);
        enumerate_paths_dfs(g, v, visited, arcs_on_path, out);
        arcs_on_path.pop();
        visited[v] = false;
    }
}

/// Layered graph with `layers` layers of `width` nodes, a source, a sink,
/// and all forward arcs between consecutive layers.
pub fn layered_graph(layers: usize, width: usize) -> Graph {
    assert!(layers >= 1 && width >= 1);
    let node_count = 2 + layers * width;
    let source = 0;
    let sink = node_count - 1;
    let node = |layer: usize, slot: usize| 1 + layer * width + slot;
    let mut arcs = Vec::new();
    for slot in 0..width {
        arcs.push((source, node(0, slot)));
    }
    for layer in 0..layers - 1 {
        for a in 0..width {
            for b in 0..width {
                arcs.push((node(layer, a), node(layer + 1, b)));
            }
        }
    }
    for slot in 0..width {
        arcs.push((node(layers - 1, slot), sink));
    }
    Graph::new(node_count, source, sink, arcs).expect("layered graph is always connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unconstrained_signwise_minimum() {
        let p = CombinatorialProblem::unconstrained(3);
        let sol = nominal_opt(&p, &[3.0, -2.0, 0.0]).unwrap();
        assert_eq!(sol.value, -2.0);
        assert_eq!(sol.argmin.bits(), &[0, 1, 0]);
    }

    #[test]
    fn unconstrained_zero_costs() {
        let p = CombinatorialProblem::unconstrained(4);
        let sol = nominal_opt(&p, &[0.0; 4]).unwrap();
        assert_eq!(sol.value, 0.0);
        assert_eq!(sol.argmin, BinaryVector::zeros(4));
    }

    #[test]
    fn layered_graph_counts() {
        let g = layered_graph(2, 4);
        assert_eq!(g.arc_count(), 24);
        let p = CombinatorialProblem::shortest_path(g);
        assert_eq!(count_feasible(&p, u128::MAX), 16);
        assert_eq!(enumerate_feasible(&p, 100).unwrap().len(), 16);
    }

    #[test]
    fn layered_path_count_formula() {
        for layers in 1..=4 {
            let g = layered_graph(layers, 4);
            let p = CombinatorialProblem::shortest_path(g);
            let expected = 4u128.pow(layers as u32);
            assert_eq!(count_feasible(&p, u128::MAX), expected);
            assert_eq!(enumerate_feasible(&p, 2000).unwrap().len() as u128, expected);
        }
    }

    #[test]
    fn enumeration_overflow_is_reported() {
        let p = CombinatorialProblem::unconstrained(10);
        match enumerate_feasible(&p, 100) {
            Err(Error::EnumerationOverflow { count, limit }) => {
                assert!(count > 100);
                assert_eq!(limit, 100);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn shortest_path_matches_enumeration_on_random_layered_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let layers = rng.gen_range(1..4);
            let g = layered_graph(layers, 4);
            let p = CombinatorialProblem::shortest_path(g);
            let c: Vec<f64> =
                (0..p.dimension()).map(|_| f64::from(rng.gen_range(0..100))).collect();
            let sol = nominal_opt(&p, &c).unwrap();
            assert!(p.is_feasible(&sol.argmin));
            let best = enumerate_feasible(&p, 10_000)
                .unwrap()
                .iter()
                .map(|y| y.dot(&c))
                .fold(f64::INFINITY, f64::min);
            assert!((sol.value - best).abs() < 1e-9);
            assert!((sol.argmin.dot(&c) - sol.value).abs() < 1e-9);
        }
    }

    #[test]
    fn shortest_path_with_negative_costs_on_dag() {
        let g = layered_graph(2, 2);
        let p = CombinatorialProblem::shortest_path(g);
        let c: Vec<f64> = vec![-1.0, 2.0, -3.0, 1.0, 0.5, -2.0, 4.0, 1.0];
        let sol = nominal_opt(&p, &c).unwrap();
        let best = enumerate_feasible(&p, 100)
            .unwrap()
            .iter()
            .map(|y| y.dot(&c))
            .fold(f64::INFINITY, f64::min);
        assert!((sol.value - best).abs() < 1e-9);
    }

    #[test]
    fn negative_cost_on_cyclic_graph_is_unsupported() {
        let g = Graph::new(3, 0, 2, vec![(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(!g.is_acyclic());
        let p = CombinatorialProblem::shortest_path(g);
        match nominal_opt(&p, &[1.0, -1.0, 1.0]) {
            Err(Error::Unsupported(_)) => {}
            other => panic!("expected unsupported, got {other:?}"),
        }
        // nonnegative costs on the same graph are fine
        assert!(nominal_opt(&p, &[1.0, 1.0, 1.0]).is_ok());
    }

    #[test]
    fn tie_breaking_prefers_lexicographically_smallest_path() {
        // two parallel 2-arc routes with identical costs
        let g = Graph::new(4, 0, 3, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let p = CombinatorialProblem::shortest_path(g);
        let sol = nominal_opt(&p, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        // candidates: {arc0, arc2} = 0101 reversed order bits (1,0,1,0)
        // and {arc1, arc3} = (0,1,0,1); the latter is lex-smaller
        assert_eq!(sol.argmin.bits(), &[0, 1, 0, 1]);
        assert_eq!(sol.value, 2.0);
    }

    #[test]
    fn unconstrained_argmin_unique_without_zero_costs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = CombinatorialProblem::unconstrained(8);
        for _ in 0..50 {
            let c: Vec<f64> = (0..8)
                .map(|_| {
                    let v: f64 = rng.gen_range(1.0..10.0);
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect();
            let sol = nominal_opt(&p, &c).unwrap();
            let mut better = 0;
            for y in enumerate_feasible(&p, 1 << 8).unwrap() {
                if y.dot(&c) <= sol.value - 1e-12 {
                    better += 1;
                }
                if y != sol.argmin && (y.dot(&c) - sol.value).abs() < 1e-12 {
                    better += 1;
                }
            }
            assert_eq!(better, 0, "argmin not unique minimizer");
        }
    }
}
