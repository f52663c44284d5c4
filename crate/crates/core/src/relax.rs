//! Scenario relaxation: iteratively tightens a master problem with
//! generated cuts until the bound gap closes.
//!
//! A type-1 cut fixes a scenario `c` and adds the linear row
//! `z ≥ cᵀx − opt(c)`. A type-2 cut fixes a rival solution `y` and adds
//! `z ≥ max_{c∈𝒰} cᵀ(x−y)`, which is linear for interval sets and
//! carries a conic norm term for ellipsoids. Both families come from the
//! same separation computation: the closed interval formula, or the
//! ellipsoidal subproblem.

use crate::bip::{self, BinaryProgram, BipStatus, FeasibilityHook, NormTerm, ObjRow, Objective};
use crate::eval;
use crate::model::{
    BinaryVector, CombinatorialProblem, Cut, CutKind, FiniteSet, GeneralEllipsoid, IntervalSet,
    IterationRecord, ProblemStructure, SeparationRecord, SolveReport, SolveStatus,
    UncertaintySet,
};
use crate::nominal;
use crate::subproblem::{self, SubEngineMode, SubproblemEngine};
use crate::{par, Error};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutType {
    Type1,
    Type2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasterMode {
    Enumeration,
    BranchAndBound,
}

#[derive(Clone, Debug)]
pub struct RelaxConfig {
    pub cut_type: CutType,
    pub sub_mode: SubEngineMode,
    pub master_mode: MasterMode,
    /// Terminate once `upper − lower ≤ gap_tol`.
    pub gap_tol: f64,
    pub time_limit: Option<Duration>,
    /// Enumeration cap for brute-force components.
    pub enum_limit: usize,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        RelaxConfig {
            cut_type: CutType::Type2,
            sub_mode: SubEngineMode::LinearizationB,
            master_mode: MasterMode::BranchAndBound,
            gap_tol: 1e-6,
            time_limit: Some(Duration::from_secs(900)),
            enum_limit: 1 << 22,
        }
    }
}

impl RelaxConfig {
    /// Parses the benchmark method grid: C1-A, C1-B, C2-A, C2-B.
    pub fn from_method_name(name: &str) -> Option<RelaxConfig> {
        let (cut, sub) = match name {
            "C1-A" => (CutType::Type1, SubEngineMode::LinearizationA),
            "C1-B" => (CutType::Type1, SubEngineMode::LinearizationB),
            "C2-A" => (CutType::Type2, SubEngineMode::LinearizationA),
            "C2-B" => (CutType::Type2, SubEngineMode::LinearizationB),
            _ => return None,
        };
        Some(RelaxConfig { cut_type: cut, sub_mode: sub, ..RelaxConfig::default() })
    }

    pub fn method_name(&self) -> String {
        let cut = match self.cut_type {
            CutType::Type1 => "C1",
            CutType::Type2 => "C2",
        };
        format!("{cut}-{}", self.sub_mode.name())
    }
}

enum RelaxSet<'a> {
    Interval(&'a IntervalSet),
    Ellipsoid(GeneralEllipsoid),
}

impl RelaxSet<'_> {
    fn center(&self) -> &[f64] {
        match self {
            RelaxSet::Interval(s) => s.center(),
            RelaxSet::Ellipsoid(s) => s.center(),
        }
    }
}

fn as_relax_set<'a>(set: &'a UncertaintySet) -> Result<RelaxSet<'a>, Error> {
    match set {
        UncertaintySet::Interval(s) => Ok(RelaxSet::Interval(s)),
        UncertaintySet::AxisParallel(s) => Ok(RelaxSet::Ellipsoid(s.as_general_ellipsoid())),
        UncertaintySet::Ellipsoid(s) => Ok(RelaxSet::Ellipsoid(s.clone())),
        UncertaintySet::Finite(_) => Err(Error::Unsupported(
            "finite sets are solved directly; use solve_finite".into(),
        )),
    }
}

/// Solves the min-max regret problem by scenario relaxation. Interval and
/// ellipsoidal sets only; finite sets have the direct [`solve_finite`].
///
/// The loop seeds with the midpoint solution, keeps
/// `master value ≤ optimum ≤ best evaluated regret` invariant each
/// iteration, and stops when the two sides meet within `gap_tol`.
pub fn solve_regret(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
    cfg: &RelaxConfig,
) -> Result<SolveReport, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    let relax_set = as_relax_set(set)?;
    if let (ProblemStructure::ShortestPath(_), RelaxSet::Ellipsoid(e)) =
        (problem.structure(), &relax_set)
    {
        if e.center().iter().any(|&c| c < 0.0) {
            return Err(Error::InvalidInput(
                "shortest path instances require a nonnegative cost center".into(),
            ));
        }
    }

    let start = Instant::now();
    let deadline = cfg.time_limit.map(|d| start + d);
    let mut engine = SubproblemEngine::new(cfg.sub_mode);
    engine.enum_limit = cfg.enum_limit;

    let mut master_time = Duration::ZERO;
    let mut sub_time = Duration::ZERO;
    let mut trace = Vec::new();
    let mut separations = Vec::new();
    let mut cuts: Vec<Cut> = Vec::new();

    // Seed: evaluate the midpoint solution for a strong initial upper
    // bound. Its cut stays out of the master so the generated-cut count
    // reflects the separations alone; the master starts from the valid
    // baseline row z ≥ 0 instead.
    let seed = nominal::nominal_opt(problem, relax_set.center())?.argmin;
    let t0 = Instant::now();
    let sep = separate_at(problem, &relax_set, &seed, cfg.cut_type, &mut engine, deadline)?;
    sub_time += t0.elapsed();
    // Inexact separations still return proven upper bounds, so a closed
    // gap always certifies the incumbent.
    let mut upper = sep.value;
    let mut incumbent = seed;
    separations.push(sep.record);
    trace.push(IterationRecord {
        iteration: 0,
        lower: f64::NEG_INFINITY,
        upper,
        cut_kind: "seed",
        master_time: Duration::ZERO,
        sub_time,
    });

    let mut lower = f64::NEG_INFINITY;
    let mut iterations = 0usize;
    let status = loop {
        if past_deadline(deadline) {
            break SolveStatus::TimeLimit;
        }
        iterations += 1;
        let t0 = Instant::now();
        let master = run_master(
            problem,
            &cuts,
            &relax_set,
            cfg.master_mode,
            remaining(deadline),
            cfg.enum_limit,
            true,
        )?;
        let master_elapsed = t0.elapsed();
        master_time += master_elapsed;
        lower = lower.max(master.lower);

        if upper - lower <= cfg.gap_tol {
            break SolveStatus::Optimal;
        }
        let candidate = match master.candidate {
            Some(x) if !master.timed_out => x,
            _ => break SolveStatus::TimeLimit,
        };

        let t0 = Instant::now();
        let sep =
            separate_at(problem, &relax_set, &candidate, cfg.cut_type, &mut engine, deadline)?;
        let sub_elapsed = t0.elapsed();
        sub_time += sub_elapsed;
        let candidate_regret = sep.value;
        if candidate_regret < upper {
            upper = candidate_regret;
            incumbent = candidate;
        }
        separations.push(sep.record);
        let converged = candidate_regret - master.lower <= cfg.gap_tol;
        if !converged {
            // only violated cuts enter the master
            cuts.push(Cut { kind: sep.cut, creation_iteration: iterations });
        }
        trace.push(IterationRecord {
            iteration: iterations,
            lower,
            upper,
            cut_kind: if converged { "none" } else { cut_kind_name(cfg.cut_type) },
            master_time: master_elapsed,
            sub_time: sub_elapsed,
        });
        if converged {
            break SolveStatus::Optimal;
        }
    };

    Ok(SolveReport {
        status,
        regret: upper,
        incumbent,
        lower_bound: lower,
        cuts,
        iterations,
        master_time,
        sub_time,
        trace,
        separations,
        stability_incidents: engine.stability_incidents,
    })
}

fn cut_kind_name(cut_type: CutType) -> &'static str {
    match cut_type {
        CutType::Type1 => "type1",
        CutType::Type2 => "type2",
    }
}

fn past_deadline(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

fn remaining(deadline: Option<Instant>) -> Option<Duration> {
    deadline.map(|d| d.saturating_duration_since(Instant::now()))
}

struct Separation {
    value: f64,
    cut: CutKind,
    record: SeparationRecord,
    exact: bool,
}

/// Generates the cut at `x̂` and reports `Reg(x̂)`. Both cut types come
/// from the same worst-case computation; the record keeps the full
/// `(scenario, rival)` pair either way.
fn separate_at(
    problem: &CombinatorialProblem,
    set: &RelaxSet<'_>,
    at: &BinaryVector,
    cut_type: CutType,
    engine: &mut SubproblemEngine,
    deadline: Option<Instant>,
) -> Result<Separation, Error> {
    match set {
        RelaxSet::Interval(s) => {
            let scenario = eval::interval_worst_scenario(s, at);
            let nominal = nominal::nominal_opt(problem, &scenario)?;
            let value = at.dot(&scenario) - nominal.value;
            let record = SeparationRecord {
                at: at.clone(),
                scenario: scenario.clone(),
                rival: nominal.argmin.clone(),
                scenario_nominal_opt: nominal.value,
            };
            let cut = match cut_type {
                CutType::Type1 => CutKind::Type1 { scenario, nominal_opt: nominal.value },
                CutType::Type2 => CutKind::Type2 { rival: nominal.argmin },
            };
            Ok(Separation { value, cut, record, exact: true })
        }
        RelaxSet::Ellipsoid(s) => {
            engine.budget = remaining(deadline);
            let sol = subproblem::solve_sub(engine, problem, s, at)?;
            let nominal = nominal::nominal_opt(problem, &sol.scenario)?;
            let record = SeparationRecord {
                at: at.clone(),
                scenario: sol.scenario.clone(),
                rival: sol.rival.clone(),
                scenario_nominal_opt: nominal.value,
            };
            let cut = match cut_type {
                CutType::Type1 => {
                    CutKind::Type1 { scenario: sol.scenario, nominal_opt: nominal.value }
                }
                CutType::Type2 => CutKind::Type2 { rival: sol.rival },
            };
            Ok(Separation { value: sol.value, cut, record, exact: sol.exact })
        }
    }
}

/// Public separation entry point; returns the cut and `Reg(x̂)`.
pub fn separate(
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
    at: &BinaryVector,
    cut_type: CutType,
    engine: &mut SubproblemEngine,
) -> Result<(Cut, f64), Error> {
    let relax_set = as_relax_set(set)?;
    let sep = separate_at(problem, &relax_set, at, cut_type, engine, None)?;
    Ok((Cut { kind: sep.cut, creation_iteration: 0 }, sep.value))
}

struct MasterResult {
    lower: f64,
    candidate: Option<BinaryVector>,
    timed_out: bool,
}

/// One objective row per cut.
fn master_rows(cuts: &[Cut], set: &RelaxSet<'_>, n: usize) -> Vec<ObjRow> {
    cuts.iter()
        .map(|cut| match &cut.kind {
            CutKind::Type1 { scenario, nominal_opt } => {
                ObjRow { constant: -nominal_opt, linear: scenario.clone(), norm: None }
            }
            CutKind::Type2 { rival } => match set {
                RelaxSet::Interval(s) => {
                    // max_c cᵀ(x−y) = Σ ĉᵢ(xᵢ−yᵢ) + dᵢ|xᵢ−yᵢ|, affine in x
                    let mut constant = 0.0;
                    let mut linear = vec![0.0; n];
                    for i in 0..n {
                        let y = f64::from(rival.bit(i));
                        constant += (-s.center()[i] + s.halfwidth()[i]) * y;
                        linear[i] = s.center()[i] + s.halfwidth()[i] * (1.0 - 2.0 * y);
                    }
                    ObjRow { constant, linear, norm: None }
                }
                RelaxSet::Ellipsoid(s) => {
                    let ct_y = s.shape_t_vec(&rival.as_f64());
                    let mut rows = Vec::with_capacity(n);
                    for k in 0..n {
                        rows.push((0..n).map(|j| s.shape().get(j, k)).collect());
                    }
                    ObjRow {
                        constant: -rival.dot(s.center()),
                        linear: s.center().to_vec(),
                        norm: Some(NormTerm { offset: ct_y.iter().map(|v| -v).collect(), rows }),
                    }
                }
            },
        })
        .collect()
}

fn master_program(
    problem: &CombinatorialProblem,
    cuts: &[Cut],
    set: &RelaxSet<'_>,
    with_baseline: bool,
) -> BinaryProgram {
    let n = problem.dimension();
    let mut rows = master_rows(cuts, set, n);
    if with_baseline {
        // regret is nonnegative (the rival y = x is always feasible), so
        // z ≥ 0 is a valid row even before any cut exists
        rows.push(ObjRow { constant: 0.0, linear: vec![0.0; n], norm: None });
    }
    BinaryProgram {
        n_vars: n,
        objective: Objective::MinOfRowMax(rows),
        constraints: Vec::new(),
        hook: match problem.structure() {
            ProblemStructure::Unconstrained => FeasibilityHook::Free,
            ProblemStructure::ShortestPath(g) => FeasibilityHook::Path(g.clone()),
        },
    }
}

fn run_master(
    problem: &CombinatorialProblem,
    cuts: &[Cut],
    set: &RelaxSet<'_>,
    mode: MasterMode,
    budget: Option<Duration>,
    enum_limit: usize,
    with_baseline: bool,
) -> Result<MasterResult, Error> {
    let prog = master_program(problem, cuts, set, with_baseline);
    match mode {
        MasterMode::Enumeration => {
            let candidates = nominal::enumerate_feasible(problem, enum_limit)?;
            let (idx, value) = par::argmin_by(
                candidates.len(),
                |i| prog.objective_value(&candidates[i]),
                |i| candidates[i].clone(),
            )
            .expect("feasible set is nonempty");
            Ok(MasterResult {
                lower: value,
                candidate: Some(candidates[idx].clone()),
                timed_out: false,
            })
        }
        MasterMode::BranchAndBound => {
            let sol = bip::solve(&prog, budget)?;
            match sol.status {
                BipStatus::Optimal => {
                    Ok(MasterResult { lower: sol.value, candidate: sol.assignment, timed_out: false })
                }
                BipStatus::TimeLimit => {
                    Ok(MasterResult { lower: sol.bound, candidate: sol.assignment, timed_out: true })
                }
                BipStatus::Infeasible => {
                    Err(Error::Infeasible("master problem has no feasible solution".into()))
                }
            }
        }
    }
}

/// Public master entry: minimizes the pointwise max of the cut rows.
pub fn master_solve(
    problem: &CombinatorialProblem,
    cuts: &[Cut],
    set: &UncertaintySet,
    mode: MasterMode,
) -> Result<(f64, BinaryVector), Error> {
    if cuts.is_empty() {
        return Err(Error::InvalidInput("master needs at least one cut".into()));
    }
    let relax_set = as_relax_set(set)?;
    let result = run_master(problem, cuts, &relax_set, mode, None, 1 << 22, false)?;
    match result.candidate {
        Some(x) => Ok((result.lower, x)),
        None => Err(Error::Infeasible("master produced no candidate".into())),
    }
}

/// Finite uncertainty: one linear row per scenario, solved in a single
/// master (the scenario list is already the whole cut set).
pub fn solve_finite(
    problem: &CombinatorialProblem,
    set: &FiniteSet,
) -> Result<SolveReport, Error> {
    solve_finite_with(problem, set, MasterMode::BranchAndBound, None)
}

pub fn solve_finite_with(
    problem: &CombinatorialProblem,
    set: &FiniteSet,
    mode: MasterMode,
    time_limit: Option<Duration>,
) -> Result<SolveReport, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    let t_sub = Instant::now();
    let mut rows = Vec::with_capacity(set.count());
    let mut cuts = Vec::with_capacity(set.count());
    for j in 0..set.count() {
        let c = set.scenario(j).to_vec();
        let nominal = nominal::nominal_opt(problem, &c)?;
        rows.push(ObjRow { constant: -nominal.value, linear: c.clone(), norm: None });
        cuts.push(Cut {
            kind: CutKind::Type1 { scenario: c, nominal_opt: nominal.value },
            creation_iteration: 0,
        });
    }
    let sub_time = t_sub.elapsed();

    let prog = BinaryProgram {
        n_vars: problem.dimension(),
        objective: Objective::MinOfRowMax(rows),
        constraints: Vec::new(),
        hook: match problem.structure() {
            ProblemStructure::Unconstrained => FeasibilityHook::Free,
            ProblemStructure::ShortestPath(g) => FeasibilityHook::Path(g.clone()),
        },
    };
    let t_master = Instant::now();
    let (status, regret, incumbent, lower) = match mode {
        MasterMode::Enumeration => {
            let candidates = nominal::enumerate_feasible(problem, 1 << 22)?;
            let (idx, value) = par::argmin_by(
                candidates.len(),
                |i| prog.objective_value(&candidates[i]),
                |i| candidates[i].clone(),
            )
            .expect("feasible set is nonempty");
            (SolveStatus::Optimal, value, candidates[idx].clone(), value)
        }
        MasterMode::BranchAndBound => {
            let sol = bip::solve(&prog, time_limit)?;
            match sol.status {
                BipStatus::Optimal => {
                    (SolveStatus::Optimal, sol.value, sol.assignment.unwrap(), sol.value)
                }
                BipStatus::TimeLimit => match sol.assignment {
                    Some(x) => (SolveStatus::TimeLimit, sol.value, x, sol.bound),
                    None => {
                        return Err(Error::Unsupported(
                            "time limit hit before any feasible master solution".into(),
                        ))
                    }
                },
                BipStatus::Infeasible => {
                    return Err(Error::Infeasible("no feasible solution".into()))
                }
            }
        }
    };
    let master_time = t_master.elapsed();
    Ok(SolveReport {
        status,
        regret,
        incumbent,
        lower_bound: lower,
        cuts,
        iterations: 1,
        master_time,
        sub_time,
        trace: Vec::new(),
        separations: Vec::new(),
        stability_incidents: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::EPS_OPT;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_methods() -> Vec<RelaxConfig> {
        ["C1-A", "C1-B", "C2-A", "C2-B"]
            .iter()
            .map(|m| RelaxConfig::from_method_name(m).unwrap())
            .collect()
    }

    #[test]
    fn zero_shape_singleton_converges_in_one_iteration() {
        let n = 4;
        let p = CombinatorialProblem::unconstrained(n);
        let center = vec![3.0, -2.0, 0.0, 1.5];
        let set =
            UncertaintySet::Ellipsoid(GeneralEllipsoid::new(center, Mat::zeros(n, n)).unwrap());
        for cfg in all_methods() {
            let report = solve_regret(&p, &set, &cfg).unwrap();
            assert_eq!(report.status, SolveStatus::Optimal);
            assert!(report.regret.abs() < 1e-9);
            assert_eq!(report.iterations, 1);
            assert!(report.cuts.is_empty(), "seed bound should close the gap alone");
        }
    }

    #[test]
    fn interval_separation_at_extremes() {
        let n = 3;
        let p = CombinatorialProblem::unconstrained(n);
        let s = IntervalSet::new(vec![1.0, 2.0, 3.0], vec![0.5, 1.0, 1.5]).unwrap();
        let set = UncertaintySet::Interval(s.clone());
        let mut engine = SubproblemEngine::new(SubEngineMode::LinearizationB);
        let (cut, _) =
            separate(&p, &set, &BinaryVector::zeros(n), CutType::Type1, &mut engine).unwrap();
        match cut.kind {
            CutKind::Type1 { scenario, .. } => {
                for i in 0..n {
                    assert_eq!(scenario[i], s.lower(i));
                }
            }
            _ => panic!("expected a type-1 cut"),
        }
        let (cut, _) =
            separate(&p, &set, &BinaryVector::ones(n), CutType::Type1, &mut engine).unwrap();
        match cut.kind {
            CutKind::Type1 { scenario, .. } => {
                for i in 0..n {
                    assert_eq!(scenario[i], s.upper(i));
                }
            }
            _ => panic!("expected a type-1 cut"),
        }
    }

    #[test]
    fn single_type1_cut_master_value_is_zero() {
        let n = 4;
        let p = CombinatorialProblem::unconstrained(n);
        let c = vec![2.0, -1.0, 3.0, -0.5];
        let opt = nominal::nominal_opt(&p, &c).unwrap().value;
        let cuts = vec![Cut {
            kind: CutKind::Type1 { scenario: c.clone(), nominal_opt: opt },
            creation_iteration: 0,
        }];
        let set =
            UncertaintySet::Interval(IntervalSet::new(vec![0.0; n], vec![1.0; n]).unwrap());
        let (z, xhat) = master_solve(&p, &cuts, &set, MasterMode::Enumeration).unwrap();
        assert!(z.abs() < 1e-12);
        assert!((xhat.dot(&c) - opt).abs() < 1e-12);
    }

    #[test]
    fn master_modes_agree_with_type2_cuts() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..10 {
            let n = rng.gen_range(2..=7);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-50..=50))).collect();
            let mut rows = vec![vec![0.0; n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    if i == j {
                        *v = f64::from(rng.gen_range(50..=150));
                    } else if rng.gen_bool(0.25) {
                        *v = f64::from(rng.gen_range(50..=200));
                    }
                }
            }
            let set =
                UncertaintySet::Ellipsoid(GeneralEllipsoid::from_rows(center, rows).unwrap());
            let cuts = vec![
                Cut { kind: CutKind::Type2 { rival: BinaryVector::zeros(n) }, creation_iteration: 0 },
                Cut { kind: CutKind::Type2 { rival: BinaryVector::ones(n) }, creation_iteration: 1 },
            ];
            let (z_enum, _) = master_solve(&p, &cuts, &set, MasterMode::Enumeration).unwrap();
            let (z_bnb, _) = master_solve(&p, &cuts, &set, MasterMode::BranchAndBound).unwrap();
            assert!((z_enum - z_bnb).abs() < 1e-6 * (1.0 + z_enum.abs()));
        }
    }

    #[test]
    fn all_methods_match_bruteforce_on_random_unconstrained() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..8 {
            let n = rng.gen_range(2..=7);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-100..=100))).collect();
            let mut rows = vec![vec![0.0; n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    if i == j {
                        *v = f64::from(rng.gen_range(50..=150));
                    } else if rng.gen_bool(0.25) {
                        *v = f64::from(rng.gen_range(1..=50));
                    }
                }
            }
            let ell = GeneralEllipsoid::from_rows(center, rows).unwrap();
            let set = UncertaintySet::Ellipsoid(ell);
            let (opt, _) = eval::solve_bruteforce(&p, &set).unwrap();
            for cfg in all_methods() {
                let report = solve_regret(&p, &set, &cfg).unwrap();
                assert_eq!(report.status, SolveStatus::Optimal, "{}", cfg.method_name());
                assert!(
                    (report.regret - opt).abs() < 1e-6 * (1.0 + opt.abs()),
                    "{}: {} vs {}",
                    cfg.method_name(),
                    report.regret,
                    opt
                );
                assert!(report.lower_bound <= report.regret + 1e-9);
            }
        }
    }

    #[test]
    fn interval_relaxation_matches_bruteforce() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..15 {
            let n = rng.gen_range(2..=8);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-10..=10))).collect();
            let half: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=8))).collect();
            let set = UncertaintySet::Interval(IntervalSet::new(center, half).unwrap());
            let (opt, _) = eval::solve_bruteforce(&p, &set).unwrap();
            for cut_type in [CutType::Type1, CutType::Type2] {
                let cfg = RelaxConfig { cut_type, ..RelaxConfig::default() };
                let report = solve_regret(&p, &set, &cfg).unwrap();
                assert_eq!(report.status, SolveStatus::Optimal);
                assert!((report.regret - opt).abs() < 1e-6 * (1.0 + opt.abs()));
            }
        }
    }

    #[test]
    fn lower_bound_is_monotone_across_iterations() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let n = 7;
        let p = CombinatorialProblem::unconstrained(n);
        let center: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(-100..=100))).collect();
        let mut rows = vec![vec![0.0; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = f64::from(rng.gen_range(50..=150));
        }
        let set = UncertaintySet::Ellipsoid(GeneralEllipsoid::from_rows(center, rows).unwrap());
        let cfg = RelaxConfig::from_method_name("C1-B").unwrap();
        let report = solve_regret(&p, &set, &cfg).unwrap();
        let lowers: Vec<f64> = report.trace.iter().skip(1).map(|r| r.lower).collect();
        for w in lowers.windows(2) {
            assert!(w[0] <= w[1] + 1e-9);
        }
        for rec in report.trace.iter().skip(1) {
            assert!(rec.upper >= report.regret - 1e-9);
        }
    }

    #[test]
    fn cut_tightness_type2_dominates_type1() {
        // for every separation pair (c, y) generated at x̂:
        // cᵀx̂ − opt(c) ≤ ĉᵀ(x̂−y) + ‖Cᵀ(x̂−y)‖₂
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..6 {
            let n = rng.gen_range(3..=7);
            let p = CombinatorialProblem::unconstrained(n);
            let center: Vec<f64> =
                (0..n).map(|_| f64::from(rng.gen_range(-100..=100))).collect();
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
            let ell = GeneralEllipsoid::from_rows(center, rows).unwrap();
            let set = UncertaintySet::Ellipsoid(ell.clone());
            for cfg in all_methods() {
                let report = solve_regret(&p, &set, &cfg).unwrap();
                for sep in &report.separations {
                    let type1 = sep.at.dot(&sep.scenario) - sep.scenario_nominal_opt;
                    let type2 = subproblem::sub_objective(&ell, &sep.at, &sep.rival);
                    assert!(
                        type1 <= type2 + 1e-9,
                        "type-1 row {type1} exceeds type-2 row {type2}"
                    );
                }
            }
        }
    }

    #[test]
    fn finite_solve_two_scenario_gadget() {
        // a = (1,2,3): min regret A/2 = 3
        let p = CombinatorialProblem::unconstrained(3);
        let set = FiniteSet::new(vec![vec![1.0, 2.0, 3.0], vec![-1.0, -2.0, -3.0]]).unwrap();
        let report = solve_finite(&p, &set).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        assert!((report.regret - 3.0).abs() < 1e-9);
        let check = eval::eval_finite(&p, &set, &report.incumbent).unwrap();
        assert!((check - report.regret).abs() < EPS_OPT);
    }

    #[test]
    fn finite_singleton_has_zero_regret() {
        let p = CombinatorialProblem::unconstrained(4);
        let set = FiniteSet::new(vec![vec![1.0, -2.0, 0.0, 3.0]]).unwrap();
        let report = solve_finite(&p, &set).unwrap();
        assert!(report.regret.abs() < 1e-12);
    }

    #[test]
    fn relaxation_works_on_layered_shortest_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..4 {
            let g = nominal::layered_graph(2, 3);
            let p = CombinatorialProblem::shortest_path(g);
            let n = p.dimension();
            let center: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=100))).collect();
            let mut rows = vec![vec![0.0; n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    if i == j {
                        *v = f64::from(rng.gen_range(50..=150));
                    } else if rng.gen_bool(0.15) {
                        *v = f64::from(rng.gen_range(1..=50));
                    }
                }
            }
            let set =
                UncertaintySet::Ellipsoid(GeneralEllipsoid::from_rows(center, rows).unwrap());
            let (opt, _) = eval::solve_bruteforce(&p, &set).unwrap();
            for cfg in all_methods() {
                let report = solve_regret(&p, &set, &cfg).unwrap();
                assert_eq!(report.status, SolveStatus::Optimal);
                assert!(
                    (report.regret - opt).abs() < 1e-6 * (1.0 + opt.abs()),
                    "{}: {} vs {}",
                    cfg.method_name(),
                    report.regret,
                    opt
                );
                assert!(p.is_feasible(&report.incumbent));
            }
        }
    }
}
