//! The cut-generation problem: maximize `ĉᵀ(x−y) + ‖Cᵀ(x−y)‖₂` over the
//! feasible set, which equals the regret of `x` under a general
//! ellipsoid. Three engines: exhaustive enumeration, a quadratic-size
//! linearization with pairwise product variables, and a linear-size
//! linearization with big-M envelope variables.

use crate::bip::{
    self, BinaryProgram, BipStatus, Composite, ConeTerm, Envelope, FeasibilityHook,
    LinearConstraint, NormTerm, Objective, Relation, Sense,
};
use crate::linalg::{dot, norm2};
use crate::model::{BinaryVector, CombinatorialProblem, GeneralEllipsoid, ProblemStructure};
use crate::nominal;
use crate::support;
use crate::{par, Error};
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubEngineMode {
    BruteForce,
    LinearizationA,
    LinearizationB,
}

impl SubEngineMode {
    pub fn name(self) -> &'static str {
        match self {
            SubEngineMode::BruteForce => "brute",
            SubEngineMode::LinearizationA => "A",
            SubEngineMode::LinearizationB => "B",
        }
    }
}

/// One engine instance per caller; instances hold incident counters and
/// must not be shared across concurrent solves.
#[derive(Clone, Debug)]
pub struct SubproblemEngine {
    pub mode: SubEngineMode,
    pub budget: Option<Duration>,
    /// Candidate cap for enumeration (brute force and stability fallback).
    pub enum_limit: usize,
    /// Number of big-M envelope mismatches detected and repaired.
    pub stability_incidents: u32,
}

impl SubproblemEngine {
    pub fn new(mode: SubEngineMode) -> Self {
        SubproblemEngine { mode, budget: None, enum_limit: 1 << 22, stability_incidents: 0 }
    }

    pub fn with_budget(mode: SubEngineMode, budget: Option<Duration>) -> Self {
        SubproblemEngine { budget, ..SubproblemEngine::new(mode) }
    }
}

#[derive(Clone, Debug)]
pub struct SubSolution {
    /// `Reg(x, 𝒰)` when `exact`, otherwise a proven upper bound on it.
    pub value: f64,
    pub rival: BinaryVector,
    pub scenario: Vec<f64>,
    pub exact: bool,
}

/// Objective of (SUB) at a fixed rival `y`.
pub fn sub_objective(set: &GeneralEllipsoid, x: &BinaryVector, y: &BinaryVector) -> f64 {
    let v = x.minus(y);
    dot(set.center(), &v) + norm2(&set.shape_t_vec(&v))
}

/// Solves the separation problem at `x`, returning its value, the
/// maximizing rival, and the recovered worst-case scenario.
pub fn solve_sub(
    engine: &mut SubproblemEngine,
    problem: &CombinatorialProblem,
    set: &GeneralEllipsoid,
    x: &BinaryVector,
) -> Result<SubSolution, Error> {
    if set.dimension() != problem.dimension() {
        return Err(Error::InvalidInput("set/problem dimension mismatch".into()));
    }
    if !problem.is_feasible(x) {
        return Err(Error::InvalidInput("subproblem called at an infeasible point".into()));
    }
    match engine.mode {
        SubEngineMode::BruteForce => brute_force(engine, problem, set, x),
        SubEngineMode::LinearizationA => {
            let prog = build_linearization_a(problem, set, x);
            solve_linearized(engine, problem, set, x, &prog, false)
        }
        SubEngineMode::LinearizationB => {
            let prog = build_linearization_b(problem, set, x);
            solve_linearized(engine, problem, set, x, &prog, true)
        }
    }
}

fn brute_force(
    engine: &SubproblemEngine,
    problem: &CombinatorialProblem,
    set: &GeneralEllipsoid,
    x: &BinaryVector,
) -> Result<SubSolution, Error> {
    let candidates = nominal::enumerate_feasible(problem, engine.enum_limit)?;
    let (best, _) = par::argmax_by(
        candidates.len(),
        |i| sub_objective(set, x, &candidates[i]),
        |i| i,
    )
    .expect("feasible set is nonempty");
    let rival = candidates[best].clone();
    let wc = support::ellipsoid_worst_case(set, &x.minus(&rival));
    Ok(SubSolution { value: wc.value, rival, scenario: wc.scenario, exact: true })
}

fn solve_linearized(
    engine: &mut SubproblemEngine,
    problem: &CombinatorialProblem,
    set: &GeneralEllipsoid,
    x: &BinaryVector,
    prog: &BinaryProgram,
    check_envelopes: bool,
) -> Result<SubSolution, Error> {
    let n = problem.dimension();
    let sol = bip::solve(prog, engine.budget)?;
    match sol.status {
        BipStatus::Optimal => {
            let assignment = sol.assignment.expect("optimal solve carries an assignment");
            let rival = BinaryVector::new(assignment.bits()[..n].to_vec()).unwrap();
            let wc = support::ellipsoid_worst_case(set, &x.minus(&rival));
            if check_envelopes {
                // The big-M envelope must reproduce ‖Cᵀ(x−y*)‖² at the
                // optimum; a mismatch marks numerical trouble and the
                // solve is repeated by enumeration when possible.
                let env_sum = envelope_sum(prog, &assignment);
                let ct = set.shape_t_vec(&x.minus(&rival));
                let norm_sq = dot(&ct, &ct);
                let tol = 1e-5 * (1.0 + norm_sq.abs());
                if (env_sum - norm_sq).abs() > tol {
                    engine.stability_incidents += 1;
                    if nominal::count_feasible(problem, engine.enum_limit as u128 + 1)
                        <= engine.enum_limit as u128
                    {
                        return brute_force(engine, problem, set, x);
                    }
                }
            }
            Ok(SubSolution { value: wc.value, rival, scenario: wc.scenario, exact: true })
        }
        BipStatus::TimeLimit => {
            let rival = match sol.assignment {
                Some(a) => BinaryVector::new(a.bits()[..n].to_vec()).unwrap(),
                None => x.clone(),
            };
            let wc = support::ellipsoid_worst_case(set, &x.minus(&rival));
            // `sol.bound` is a proven upper bound on the subproblem optimum
            Ok(SubSolution {
                value: sol.bound.max(wc.value),
                rival,
                scenario: wc.scenario,
                exact: false,
            })
        }
        BipStatus::Infeasible => {
            Err(Error::Infeasible("subproblem has no feasible rival".into()))
        }
    }
}

fn envelope_sum(prog: &BinaryProgram, assignment: &BinaryVector) -> f64 {
    if let Objective::Composite(c) = &prog.objective {
        for cone in &c.cones {
            if let ConeTerm::SqrtEnvelopeSum { envelopes, .. } = cone {
                return envelopes.iter().map(|e| e.value(assignment)).sum();
            }
        }
    }
    0.0
}

fn hook_for(problem: &CombinatorialProblem) -> FeasibilityHook {
    match problem.structure() {
        ProblemStructure::Unconstrained => FeasibilityHook::Free,
        ProblemStructure::ShortestPath(g) => FeasibilityHook::Path(g.clone()),
    }
}

/// Norm form of `‖Cᵀ(x−y)‖₂` as a function of `y` (appended variables get
/// zero columns); shared by both linearizations as a bounding hint.
fn norm_over_rivals(set: &GeneralEllipsoid, x: &BinaryVector, n_vars: usize) -> NormTerm {
    let n = set.dimension();
    let ct_x = set.shape_t_vec(&x.as_f64());
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = vec![0.0; n_vars];
        for (j, r) in row.iter_mut().take(n).enumerate() {
            *r = -set.shape().get(j, k);
        }
        rows.push(row);
    }
    NormTerm { offset: ct_x, rows }
}

/// Quadratic-size linearization: binary pair variables `α_jk = y_j y_k`
/// (k < j) linearize the squared norm expansion
/// `ΣᵢΣⱼ C²ⱼᵢ(xⱼ − 2xⱼyⱼ + yⱼ) + Σ 2CⱼᵢCₖᵢ(xⱼ−yⱼ)(xₖ−yₖ)`.
pub fn build_linearization_a(
    problem: &CombinatorialProblem,
    set: &GeneralEllipsoid,
    x: &BinaryVector,
) -> BinaryProgram {
    let n = problem.dimension();
    let q = set.gram();
    let pairs: Vec<(usize, usize)> =
        (1..n).flat_map(|j| (0..j).map(move |k| (j, k))).collect();
    let n_vars = n + pairs.len();

    // objective: ĉᵀ(x−y) + √S(y, α)
    let mut linear = vec![0.0; n_vars];
    for j in 0..n {
        linear[j] = -set.center()[j];
    }
    let constant = x.dot(set.center());

    let mut s_const = 0.0;
    let mut s_lin = vec![0.0; n_vars];
    for j in 0..n {
        let xj = f64::from(x.bit(j));
        s_const += q.get(j, j) * xj;
        s_lin[j] += q.get(j, j) * (1.0 - 2.0 * xj);
    }
    for (p, &(j, k)) in pairs.iter().enumerate() {
        let qjk = q.get(j, k);
        let xj = f64::from(x.bit(j));
        let xk = f64::from(x.bit(k));
        s_const += 2.0 * qjk * xj * xk;
        s_lin[k] += -2.0 * qjk * xj;
        s_lin[j] += -2.0 * qjk * xk;
        s_lin[n + p] = 2.0 * qjk;
    }

    let mut constraints = Vec::with_capacity(2 * pairs.len());
    for (p, &(j, k)) in pairs.iter().enumerate() {
        // y_j + y_k ≤ 1 + α_jk
        constraints.push(LinearConstraint {
            terms: vec![(j, 1.0), (k, 1.0), (n + p, -1.0)],
            relation: Relation::Le,
            rhs: 1.0,
        });
        // 2 α_jk ≤ y_j + y_k
        constraints.push(LinearConstraint {
            terms: vec![(n + p, 2.0), (j, -1.0), (k, -1.0)],
            relation: Relation::Le,
            rhs: 0.0,
        });
    }

    BinaryProgram {
        n_vars,
        objective: Objective::Composite(Composite {
            sense: Sense::Maximize,
            constant,
            linear,
            cones: vec![ConeTerm::SqrtAffine {
                constant: s_const,
                linear: s_lin,
                norm_hint: Some(norm_over_rivals(set, x, n_vars)),
            }],
        }),
        constraints,
        hook: hook_for(problem),
    }
}

/// Linear-size linearization: continuous `h_j = v_j (Qv)_j` with the
/// tightest big-M envelopes `M⁺_j = Σᵢ q_jᵢ xᵢ`, `M⁻_j = Σᵢ q_jᵢ (1−xᵢ)`.
pub fn build_linearization_b(
    problem: &CombinatorialProblem,
    set: &GeneralEllipsoid,
    x: &BinaryVector,
) -> BinaryProgram {
    let n = problem.dimension();
    let q = set.gram();
    let mut m_plus = vec![0.0; n];
    let mut m_minus = vec![0.0; n];
    for j in 0..n {
        for i in 0..n {
            let qji = q.get(j, i);
            if x.is_set(i) {
                m_plus[j] += qji;
            } else {
                m_minus[j] += qji;
            }
        }
    }

    let mut envelopes = Vec::with_capacity(n);
    for j in 0..n {
        let mut bound1 = vec![0.0; n];
        let mut bound2 = vec![0.0; n];
        let (c1, c2);
        if x.is_set(j) {
            // v_j ∈ {0,1}: h_j ≤ Σ q_ji v_i + M⁻_j (1−v_j), h_j ≤ M⁺_j v_j
            for i in 0..n {
                bound1[i] = -q.get(j, i);
            }
            bound1[j] += m_minus[j];
            c1 = m_plus[j];
            bound2[j] = -m_plus[j];
            c2 = m_plus[j];
        } else {
            // v_j ∈ {−1,0}: h_j ≤ −Σ q_ji v_i + M⁺_j (1+v_j), h_j ≤ −M⁻_j v_j
            for i in 0..n {
                bound1[i] = q.get(j, i);
            }
            bound1[j] -= m_plus[j];
            c1 = 0.0;
            bound2[j] = m_minus[j];
            c2 = 0.0;
        }
        envelopes.push(Envelope { upper_bounds: vec![(c1, bound1), (c2, bound2)] });
    }

    let mut linear = vec![0.0; n];
    for j in 0..n {
        linear[j] = -set.center()[j];
    }

    BinaryProgram {
        n_vars: n,
        objective: Objective::Composite(Composite {
            sense: Sense::Maximize,
            constant: x.dot(set.center()),
            linear,
            cones: vec![ConeTerm::SqrtEnvelopeSum {
                envelopes,
                norm_hint: Some(norm_over_rivals(set, x, n)),
            }],
        }),
        constraints: Vec::new(),
        hook: hook_for(problem),
    }
}
