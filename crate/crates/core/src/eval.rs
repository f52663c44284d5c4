//! Regret evaluation for each uncertainty class, plus exhaustive oracles
//! over enumerable feasible sets.

use crate::model::{
    BinaryVector, CombinatorialProblem, FiniteSet, GeneralEllipsoid, IntervalSet,
    ProblemStructure, UncertaintySet,
};
use crate::nominal;
use crate::subproblem::{self, SubproblemEngine};
use crate::support;
use crate::{par, Error};

fn require_feasible(problem: &CombinatorialProblem, x: &BinaryVector) -> Result<(), Error> {
    if !problem.is_feasible(x) {
        return Err(Error::InvalidInput("regret of an infeasible solution is undefined".into()));
    }
    Ok(())
}

/// Regret-maximizing scenario of an interval set at `x`:
/// `c*(x)ᵢ = ĉᵢ + (2xᵢ − 1) dᵢ`.
pub fn interval_worst_scenario(set: &IntervalSet, x: &BinaryVector) -> Vec<f64> {
    (0..set.dimension())
        .map(|i| set.center()[i] + (2.0 * f64::from(x.bit(i)) - 1.0) * set.halfwidth()[i])
        .collect()
}

/// Interval regret. Unconstrained problems use the closed O(n) form;
/// everything else pays one nominal solve at the worst-case scenario.
pub fn eval_interval(
    problem: &CombinatorialProblem,
    set: &IntervalSet,
    x: &BinaryVector,
) -> Result<f64, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    require_feasible(problem, x)?;
    let worst = interval_worst_scenario(set, x);
    match problem.structure() {
        ProblemStructure::Unconstrained => {
            let mut regret = 0.0;
            for (i, &c) in worst.iter().enumerate() {
                if x.is_set(i) {
                    regret += c;
                }
                regret -= c.min(0.0);
            }
            Ok(regret)
        }
        ProblemStructure::ShortestPath(_) => {
            let nominal = nominal::nominal_opt(problem, &worst)?;
            Ok(x.dot(&worst) - nominal.value)
        }
    }
}

/// Finite-set regret: maximum of `cʲᵀx − opt(cʲ)` over the scenarios.
pub fn eval_finite(
    problem: &CombinatorialProblem,
    set: &FiniteSet,
    x: &BinaryVector,
) -> Result<f64, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    require_feasible(problem, x)?;
    let mut best = f64::NEG_INFINITY;
    for j in 0..set.count() {
        let c = set.scenario(j);
        let nominal = nominal::nominal_opt(problem, c)?;
        best = best.max(x.dot(c) - nominal.value);
    }
    Ok(best)
}

/// Ellipsoidal regret via the configured subproblem engine.
pub fn eval_ellipsoid(
    problem: &CombinatorialProblem,
    set: &GeneralEllipsoid,
    x: &BinaryVector,
    engine: &mut SubproblemEngine,
) -> Result<f64, Error> {
    Ok(subproblem::solve_sub(engine, problem, set, x)?.value)
}

/// Regret under any set class, choosing the matching evaluator.
pub fn eval_any(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
    x: &BinaryVector,
    engine: &mut SubproblemEngine,
) -> Result<f64, Error> {
    match set {
        UncertaintySet::Interval(s) => eval_interval(problem, s, x),
        UncertaintySet::Finite(s) => eval_finite(problem, s, x),
        UncertaintySet::AxisParallel(s) => {
            eval_ellipsoid(problem, &s.as_general_ellipsoid(), x, engine)
        }
        UncertaintySet::Ellipsoid(s) => eval_ellipsoid(problem, s, x, engine),
    }
}

/// Independent oracle: maximizes the support function of `x − y` over all
/// feasible `y`. Exact for every set class (the inner objective is linear
/// in the scenario for fixed `y`).
pub fn eval_bruteforce(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
    x: &BinaryVector,
) -> Result<f64, Error> {
    eval_bruteforce_limited(problem, set, x, 1 << 22)
}

pub fn eval_bruteforce_limited(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
    x: &BinaryVector,
    limit: usize,
) -> Result<f64, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    require_feasible(problem, x)?;
    let candidates = nominal::enumerate_feasible(problem, limit)?;
    let tables = SupportTables::build(set, &candidates);
    let xs = tables.x_side(set, x);
    let (_, value) = par::argmax_by(
        candidates.len(),
        |i| tables.pair_value(set, &xs, i, x, &candidates[i]),
        |i| i,
    )
    .expect("feasible set is nonempty");
    Ok(value)
}

/// Exhaustive minimum regret over the feasible set, ties broken toward
/// the lexicographically smallest solution.
pub fn solve_bruteforce(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
) -> Result<(f64, BinaryVector), Error> {
    solve_bruteforce_limited(problem, set, 1 << 22)
}

pub fn solve_bruteforce_limited(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
    limit: usize,
) -> Result<(f64, BinaryVector), Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    let candidates = nominal::enumerate_feasible(problem, limit)?;
    let tables = SupportTables::build(set, &candidates);
    let (best_idx, value) = par::argmin_by(
        candidates.len(),
        |xi| {
            let x = &candidates[xi];
            let xs = tables.x_side(set, x);
            let mut worst = f64::NEG_INFINITY;
            for (yi, y) in candidates.iter().enumerate() {
                worst = worst.max(tables.pair_value(set, &xs, yi, x, y));
            }
            worst
        },
        |xi| candidates[xi].clone(),
    )
    .expect("feasible set is nonempty");
    Ok((value, candidates[best_idx].clone()))
}

/// Per-candidate precomputation so each regret pair costs O(n).
struct SupportTables {
    center_dot: Vec<f64>,
    transformed: Vec<Vec<f64>>,
    finite_dots: Vec<Vec<f64>>,
}

struct XSide {
    center_dot: f64,
    ct: Vec<f64>,
    finite_dots: Vec<f64>,
}

impl SupportTables {
    fn build(set: &UncertaintySet, candidates: &[BinaryVector]) -> SupportTables {
        let mut tables =
            SupportTables { center_dot: Vec::new(), transformed: Vec::new(), finite_dots: Vec::new() };
        match set {
            UncertaintySet::Interval(s) => {
                tables.center_dot = candidates.iter().map(|y| y.dot(s.center())).collect();
            }
            UncertaintySet::AxisParallel(s) => {
                tables.center_dot = candidates.iter().map(|y| y.dot(s.center())).collect();
                let radii: Vec<f64> =
                    (0..s.dimension()).map(|i| s.inv_diag(i).sqrt()).collect();
                tables.transformed = candidates
                    .iter()
                    .map(|y| (0..y.len()).map(|i| radii[i] * f64::from(y.bit(i))).collect())
                    .collect();
            }
            UncertaintySet::Ellipsoid(s) => {
                tables.center_dot = candidates.iter().map(|y| y.dot(s.center())).collect();
                tables.transformed =
                    candidates.iter().map(|y| s.shape_t_vec(&y.as_f64())).collect();
            }
            UncertaintySet::Finite(s) => {
                tables.finite_dots = s
                    .scenarios()
                    .iter()
                    .map(|c| candidates.iter().map(|y| y.dot(c)).collect())
                    .collect();
            }
        }
        tables
    }

    fn x_side(&self, set: &UncertaintySet, x: &BinaryVector) -> XSide {
        match set {
            UncertaintySet::Interval(s) => {
                XSide { center_dot: x.dot(s.center()), ct: Vec::new(), finite_dots: Vec::new() }
            }
            UncertaintySet::AxisParallel(s) => XSide {
                center_dot: x.dot(s.center()),
                ct: (0..x.len())
                    .map(|i| s.inv_diag(i).sqrt() * f64::from(x.bit(i)))
                    .collect(),
                finite_dots: Vec::new(),
            },
            UncertaintySet::Ellipsoid(s) => XSide {
                center_dot: x.dot(s.center()),
                ct: s.shape_t_vec(&x.as_f64()),
                finite_dots: Vec::new(),
            },
            UncertaintySet::Finite(s) => XSide {
                center_dot: 0.0,
                ct: Vec::new(),
                finite_dots: s.scenarios().iter().map(|c| x.dot(c)).collect(),
            },
        }
    }

    /// `max_{c∈𝒰} cᵀ(x − y)` from the precomputed tables.
    fn pair_value(
        &self,
        set: &UncertaintySet,
        xs: &XSide,
        yi: usize,
        x: &BinaryVector,
        y: &BinaryVector,
    ) -> f64 {
        match set {
            UncertaintySet::Interval(s) => {
                let mut v = xs.center_dot - self.center_dot[yi];
                for i in 0..x.len() {
                    if x.bit(i) != y.bit(i) {
                        v += s.halfwidth()[i];
                    }
                }
                v
            }
            UncertaintySet::AxisParallel(_) | UncertaintySet::Ellipsoid(_) => {
                let linear = xs.center_dot - self.center_dot[yi];
                let norm_sq: f64 = xs
                    .ct
                    .iter()
                    .zip(&self.transformed[yi])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                linear + norm_sq.sqrt()
            }
            UncertaintySet::Finite(_) => {
                let mut best = f64::NEG_INFINITY;
                for (j, xd) in xs.finite_dots.iter().enumerate() {
                    best = best.max(xd - self.finite_dots[j][yi]);
                }
                best
            }
        }
    }
}

/// Sequential reference implementation of [`eval_bruteforce`], kept for
/// benchmarking the parallel path against a like-for-like baseline.
pub fn eval_bruteforce_seq(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
    x: &BinaryVector,
) -> Result<f64, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    require_feasible(problem, x)?;
    let candidates = nominal::enumerate_feasible(problem, 1 << 22)?;
    let mut worst = f64::NEG_INFINITY;
    for y in &candidates {
        let wc = support::support(set, &x.minus(y))?;
        worst = worst.max(wc.value);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AxisParallelEllipsoid;
    use crate::subproblem::SubEngineMode;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interval_unconstrained_example() {
        let p = CombinatorialProblem::unconstrained(2);
        let set = IntervalSet::new(vec![1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let x = BinaryVector::from_bitstring("10").unwrap();
        assert_eq!(eval_interval(&p, &set, &x).unwrap(), 4.0);
    }

    #[test]
    fn zero_halfwidth_at_nominal_argmin_has_zero_regret() {
        let p = CombinatorialProblem::unconstrained(3);
        let c = vec![2.0, -3.0, 1.0];
        let set = IntervalSet::new(c.clone(), vec![0.0; 3]).unwrap();
        let x = nominal::nominal_opt(&p, &c).unwrap().argmin;
        assert!(eval_interval(&p, &set, &x).unwrap().abs() < 1e-12);
    }

    #[test]
    fn finite_two_scenario_gadget() {
        // a = (1,2,3): scenarios ±a, x = {3} has regret 3 = A/2
        let p = CombinatorialProblem::unconstrained(3);
        let set =
            FiniteSet::new(vec![vec![1.0, 2.0, 3.0], vec![-1.0, -2.0, -3.0]]).unwrap();
        let x = BinaryVector::from_bitstring("001").unwrap();
        assert_eq!(eval_finite(&p, &set, &x).unwrap(), 3.0);
    }

    #[test]
    fn singleton_finite_set_regret() {
        let p = CombinatorialProblem::unconstrained(3);
        let c = vec![1.0, -2.0, 3.0];
        let set = FiniteSet::new(vec![c.clone()]).unwrap();
        let argmin = nominal::nominal_opt(&p, &c).unwrap().argmin;
        assert!(eval_finite(&p, &set, &argmin).unwrap().abs() < 1e-12);
        let other = BinaryVector::from_bitstring("101").unwrap();
        assert!((eval_finite(&p, &set, &other).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_solution_is_rejected() {
        let g = nominal::layered_graph(1, 2);
        let p = CombinatorialProblem::shortest_path(g);
        let set = IntervalSet::new(vec![1.0; 4], vec![0.5; 4]).unwrap();
        let not_a_path = BinaryVector::from_bitstring("1111").unwrap();
        assert!(eval_interval(&p, &set, &not_a_path).is_err());
    }

    #[test]
    fn interval_eval_matches_bruteforce_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let n = rng.gen_range(1..=9);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-10..=10))).collect();
            let half: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=8))).collect();
            let set = IntervalSet::new(center, half).unwrap();
            let x = BinaryVector::from_mask(rng.gen_range(0..(1u64 << n)), n);
            let fast = eval_interval(&p, &set, &x).unwrap();
            let brute = eval_bruteforce(&p, &UncertaintySet::Interval(set.clone()), &x).unwrap();
            assert!((fast - brute).abs() < 1e-6 * (1.0 + brute.abs()));
        }
    }

    #[test]
    fn interval_eval_matches_bruteforce_on_layered_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let g = nominal::layered_graph(2, 4);
            let p = CombinatorialProblem::shortest_path(g);
            let n = p.dimension();
            let center: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=20))).collect();
            let half: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=6))).collect();
            let set = IntervalSet::new(center, half).unwrap();
            let paths = nominal::enumerate_feasible(&p, 100).unwrap();
            let x = paths[rng.gen_range(0..paths.len())].clone();
            let fast = eval_interval(&p, &set, &x).unwrap();
            let brute = eval_bruteforce(&p, &UncertaintySet::Interval(set.clone()), &x).unwrap();
            assert!((fast - brute).abs() < 1e-6 * (1.0 + brute.abs()));
        }
    }

    #[test]
    fn finite_eval_matches_bruteforce_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..60 {
            let n = rng.gen_range(1..=9);
            let k = rng.gen_range(1..=4);
            let p = CombinatorialProblem::unconstrained(n);
            let scenarios: Vec<Vec<f64>> = (0..k)
                .map(|_| (0..n).map(|_| f64::from(rng.gen_range(-10..=10))).collect())
                .collect();
            let set = FiniteSet::new(scenarios).unwrap();
            let x = BinaryVector::from_mask(rng.gen_range(0..(1u64 << n)), n);
            let fast = eval_finite(&p, &set, &x).unwrap();
            let brute = eval_bruteforce(&p, &UncertaintySet::Finite(set.clone()), &x).unwrap();
            assert!((fast - brute).abs() < 1e-6 * (1.0 + brute.abs()));
        }
    }

    #[test]
    fn ellipsoid_engines_match_bruteforce_eval() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..15 {
            let n = rng.gen_range(2..=7);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-50..=50))).collect();
            let mut rows = vec![vec![0.0; n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    if i == j {
                        *v = f64::from(rng.gen_range(50..=150));
                    } else if rng.gen_bool(0.3) {
                        *v = f64::from(rng.gen_range(1..=50));
                    }
                }
            }
            let set = GeneralEllipsoid::from_rows(center, rows).unwrap();
            let x = BinaryVector::from_mask(rng.gen_range(0..(1u64 << n)), n);
            let brute = eval_bruteforce(&p, &UncertaintySet::Ellipsoid(set.clone()), &x).unwrap();
            for mode in [SubEngineMode::LinearizationA, SubEngineMode::LinearizationB] {
                let mut engine = SubproblemEngine::new(mode);
                let v = eval_ellipsoid(&p, &set, &x, &mut engine).unwrap();
                assert!((v - brute).abs() < 1e-6 * (1.0 + brute.abs()));
            }
        }
    }

    #[test]
    fn regret_is_nonnegative_and_monotone_in_set_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..40 {
            let n = rng.gen_range(1..=8);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-10..=10))).collect();
            let half: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=8))).collect();
            let x = BinaryVector::from_mask(rng.gen_range(0..(1u64 << n)), n);
            let big = IntervalSet::new(center.clone(), half.clone()).unwrap();
            let small =
                IntervalSet::new(center.clone(), half.iter().map(|d| d * 0.5).collect())
                    .unwrap();
            let rb = eval_interval(&p, &big, &x).unwrap();
            let rs = eval_interval(&p, &small, &x).unwrap();
            assert!(rb >= -1e-12);
            assert!(rs <= rb + 1e-9, "shrinking the set increased regret");
        }
    }

    #[test]
    fn scaling_ellipsoid_shape_never_increases_regret() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..15 {
            let n = rng.gen_range(2..=6);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-10..=10))).collect();
            let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..4.0)).collect();
            let axis = AxisParallelEllipsoid::new(center.clone(), diag.clone()).unwrap();
            let set = axis.as_general_ellipsoid();
            let alpha: f64 = rng.gen_range(0.1..0.9);
            let mut rows = vec![vec![0.0; n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = alpha * set.shape().get(i, i);
            }
            let shrunk = GeneralEllipsoid::from_rows(center, rows).unwrap();
            let x = BinaryVector::from_mask(rng.gen_range(0..(1u64 << n)), n);
            let r1 = eval_bruteforce(&p, &UncertaintySet::Ellipsoid(set), &x).unwrap();
            let r2 = eval_bruteforce(&p, &UncertaintySet::Ellipsoid(shrunk), &x).unwrap();
            assert!(r2 <= r1 + 1e-9);
        }
    }

    #[test]
    fn parallel_and_sequential_bruteforce_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let n = 8;
        let p = CombinatorialProblem::unconstrained(n);
        let center: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(-10..=10))).collect();
        let half: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=8))).collect();
        let set = UncertaintySet::Interval(IntervalSet::new(center, half).unwrap());
        for _ in 0..10 {
            let x = BinaryVector::from_mask(rng.gen_range(0..(1u64 << n)), n);
            let a = eval_bruteforce(&p, &set, &x).unwrap();
            let b = eval_bruteforce_seq(&p, &set, &x).unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }
}
