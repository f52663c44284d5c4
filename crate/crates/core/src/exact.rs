//! Polynomial special cases: the midpoint solution, its exactness for
//! axis-symmetric sets on the unconstrained problem, and its factor-2
//! guarantee for ellipsoids.

use crate::eval;
use crate::model::{
    BinaryVector, CombinatorialProblem, GeneralEllipsoid, ProblemStructure, UncertaintySet,
};
use crate::nominal;
use crate::subproblem::{SubEngineMode, SubproblemEngine};
use crate::support;
use crate::Error;

/// Center used by the midpoint heuristic. Finite sets with several
/// scenarios use the componentwise mean, which is a symmetry point only
/// for symmetric lists; it carries no optimality claim there.
pub fn midpoint_center(set: &UncertaintySet) -> Vec<f64> {
    if let Some(c) = set.center() {
        return c;
    }
    match set {
        UncertaintySet::Finite(s) => {
            let n = s.dimension();
            let k = s.count() as f64;
            let mut mean = vec![0.0; n];
            for j in 0..s.count() {
                for (m, v) in mean.iter_mut().zip(s.scenario(j)) {
                    *m += v / k;
                }
            }
            mean
        }
        _ => unreachable!("all non-finite sets define a center"),
    }
}

/// Nominal minimizer at the set's center. On the unconstrained problem
/// the tie rule is `x̂ᵢ = 1  iff  ĉᵢ ≤ 0` (zeros go to 1).
pub fn midpoint_solution(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
) -> Result<BinaryVector, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    let center = midpoint_center(set);
    match problem.structure() {
        ProblemStructure::Unconstrained => Ok(BinaryVector::from_bools(
            &center.iter().map(|&c| c <= 0.0).collect::<Vec<_>>(),
        )),
        ProblemStructure::ShortestPath(_) => Ok(nominal::nominal_opt(problem, &center)?.argmin),
    }
}

/// Exact solve of the unconstrained problem for axis-symmetric sets: the
/// midpoint solution is optimal; its regret still comes from the matching
/// evaluator (closed form for intervals, the subproblem oracle for
/// ellipsoids — evaluation stays hard even when solving is easy).
pub fn solve_up_axis_symmetric(set: &UncertaintySet) -> Result<(BinaryVector, f64), Error> {
    if !support::is_axis_symmetric(set) {
        return Err(Error::InvalidInput(
            "midpoint exactness requires an axis-symmetric set".into(),
        ));
    }
    let n = set.dimension();
    let problem = CombinatorialProblem::unconstrained(n);
    let x = midpoint_solution(&problem, set)?;
    let regret = match set {
        UncertaintySet::Interval(s) => eval::eval_interval(&problem, s, &x)?,
        UncertaintySet::Finite(s) => eval::eval_finite(&problem, s, &x)?,
        UncertaintySet::AxisParallel(_) | UncertaintySet::Ellipsoid(_) => {
            let general = match set {
                UncertaintySet::AxisParallel(s) => s.as_general_ellipsoid(),
                UncertaintySet::Ellipsoid(s) => s.clone(),
                _ => unreachable!(),
            };
            let mode =
                if n <= 22 { SubEngineMode::BruteForce } else { SubEngineMode::LinearizationB };
            let mut engine = SubproblemEngine::new(mode);
            eval::eval_ellipsoid(&problem, &general, &x, &mut engine)?
        }
    };
    Ok((x, regret))
}

#[derive(Clone, Debug)]
pub struct MidpointBound {
    pub solution: BinaryVector,
    pub upper: f64,
    /// Approximation guarantee: regret of the midpoint solution is at
    /// most this factor times the optimum.
    pub guarantee: f64,
}

/// Midpoint solution with its evaluated regret; a 2-approximation for
/// ellipsoidal min-max regret.
pub fn midpoint_bound(
    problem: &CombinatorialProblem,
    set: &GeneralEllipsoid,
    engine: &mut SubproblemEngine,
) -> Result<MidpointBound, Error> {
    let x = midpoint_solution(problem, &UncertaintySet::Ellipsoid(set.clone()))?;
    let upper = eval::eval_ellipsoid(problem, set, &x, engine)?;
    Ok(MidpointBound { solution: x, upper, guarantee: 2.0 })
}
